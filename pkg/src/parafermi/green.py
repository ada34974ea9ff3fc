"""Green's representation of the parafermi operator b and its identities."""

from fractions import Fraction

from .exact_core import (OperatorMatrix, ExactScalar, F1, anticommutator, check_paraorder,
                         commutator, normalize_sqrt, spin_diagonal, tensor_extend)
from .report import Report, matrix_diff


def green_coefficients(p):
    """B_beta = sqrt(beta*(p - beta + 1)) for beta = 1..p."""
    p = check_paraorder(p)
    return [normalize_sqrt(beta * (p - beta + 1)) for beta in range(1, p + 1)]


def build_green(p):
    """The (p+1)x(p+1) matrix of b with B_beta on the subdiagonal."""
    coeffs = green_coefficients(p)
    n = p + 1
    rows = [[ExactScalar() for _ in range(n)] for _ in range(n)]
    for beta, c in enumerate(coeffs, start=1):
        rows[beta][beta - 1] = c
    return OperatorMatrix.from_entries(rows)


def verify_spin(p):
    """Check 1/2 [b+, b] = diag(p/2, ..., -p/2)."""
    b = build_green(p)
    rep = Report(f"spin p={p}")
    half = commutator(b.T, b).scale(Fraction(1, 2))
    matrix_diff(rep, half, spin_diagonal(p), "1/2[b+,b]")
    rep.details["diagonal"] = [str(half[i, i]) for i in range(p + 1)]
    return rep


def verify_trilinear(p):
    """Check [[b+, b], b] = -2b and [[b+, b], b+] = 2b+."""
    b = build_green(p)
    bt = b.T
    d = commutator(bt, b)
    rep = Report(f"trilinear p={p}")
    matrix_diff(rep, commutator(d, b), b.scale(-2), "[[b+,b],b]")
    matrix_diff(rep, commutator(d, bt), bt.scale(2), "[[b+,b],b+]")
    return rep


def verify_nilpotent_b(p):
    """b^(p+1) = (b+)^(p+1) = 0 while b^p != 0."""
    b = build_green(p)
    rep = Report(f"nilpotency b p={p}")
    rep.check(b.power(p + 1).is_zero(), "b^(p+1) != 0")
    rep.check(b.T.power(p + 1).is_zero(), "(b+)^(p+1) != 0")
    rep.check(not b.power(p).is_zero(), "b^p vanishes already")
    return rep


def interordinal_b_lhs(p):
    """1/2 {b^(p'), diag(1,...,1) ⊗ b^(1)} for p' = 2p + 1."""
    pp = 2 * check_paraorder(p) + 1
    big = build_green(pp)
    ones = OperatorMatrix.identity(p + 1).kron(F1)
    return anticommutator(big, ones).scale(Fraction(1, 2))


def verify_interordinal_b(p):
    """Check 1/2 {b^(p'), 1 ⊗ b^(1)} = b^(p) ⊗ 1."""
    rep = Report(f"interordinal b p={p}->{2 * p + 1}")
    matrix_diff(rep, interordinal_b_lhs(p), tensor_extend(build_green(p)), "1/2{b',1⊗b1}")
    return rep


def green_doubling(p):
    """Every second coefficient of order p' doubles the order-p coefficient."""
    p = check_paraorder(p)
    small = green_coefficients(p)
    big = green_coefficients(2 * p + 1)
    rep = Report(f"green doubling p={p}")
    for beta in range(1, p + 1):
        got, want = big[2 * beta - 1], small[beta - 1] * 2
        rep.check(got == want, f"B_{2 * beta}^({2 * p + 1}) = {got} != 2*B_{beta}^({p}) = {want}")
    return rep


def verify_green_suite(p):
    rep = Report(f"green p={p}")
    for sub in (verify_spin(p), verify_trilinear(p), verify_nilpotent_b(p),
                verify_interordinal_b(p), green_doubling(p)):
        rep.merge(sub)
    return rep
