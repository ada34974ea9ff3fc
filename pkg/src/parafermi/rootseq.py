"""Root-f, root-d and root-h sequences: nilpotent square roots of x ⊗ 1.

A member of order p' = 2p + 1 has the form

    x' = diag(1, ..., 1) ⊗ f1 + X ⊗ B,

with B = c3 (F), f1^T (D) or c2 (H).  Because f1 B + B f1 = 1 and
B^2 = mu * 1 with mu = -1, 0, +1, squaring gives (X + mu X^2) ⊗ 1, so the
unknown coefficient triangle X solves X + mu X^2 = x as a plain
(p+1)x(p+1) integer matrix.  Row by row, and within a row from the column
next to the diagonal down to the first one, every unknown appears with a
unit pivot, so the solve is a forward substitution over the integers.
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact_core import C2, C3, F1, OperatorMatrix, check_paraorder, tensor_extend
from .report import Report, matrix_diff

KINDS = ("F", "D", "H")
LTM_BLOCK = {"F": C3, "D": F1.T, "H": C2}
MU = {"F": -1, "D": 0, "H": 1}


def _kind(kind):
    k = str(kind).upper()
    if k not in KINDS:
        raise ValueError(f"unknown root kind {kind!r}; expected one of F, D, H")
    return k


@dataclass
class CoeffTriangle:
    """Strictly lower triangular block coefficients (G, E or J) of one member.

    ``coeff`` is a half x half integer object array, with half = (p+1)/2.
    Indexing through ``at`` is 1-based like G_{51}.
    """

    kind: str
    p: int
    coeff: np.ndarray

    @property
    def half(self):
        return (self.p + 1) // 2

    def at(self, mu, nu):
        if not (1 <= nu < mu <= self.half):
            raise IndexError(f"(mu, nu) = ({mu}, {nu}) outside the strict lower triangle")
        return self.coeff[mu - 1, nu - 1]

    def row(self, mu):
        """Coefficients G_{mu,1..mu-1}."""
        return [int(x) for x in self.coeff[mu - 1, :mu - 1]]

    def square(self):
        """The triangle as a square integer array (zeros on and above the diagonal)."""
        return self.coeff.copy()

    def rows(self):
        return [self.row(m) for m in range(2, self.half + 1)]

    def max(self):
        return max((abs(int(x)) for x in self.coeff.flat), default=0)

    def to_csv_rows(self):
        out = []
        for m in range(2, self.half + 1):
            for n in range(1, m):
                out.append((m, n, int(self.coeff[m - 1, n - 1])))
        return out


def initial_operator():
    """f^(1) = 1/2 (c2 - c3) = [[0, 0], [1, 0]]."""
    return (C2 - C3).scale(Fraction(1, 2))


def assemble(kind, tri):
    """Full matrix diag(1,...,1) ⊗ f1 + T ⊗ B from a coefficient triangle."""
    kind = _kind(kind)
    n = tri.shape[0]
    b = LTM_BLOCK[kind].int_array()
    full = np.empty((2 * n, 2 * n), dtype=object)
    full[...] = 0
    for m in range(n):
        full[2 * m + 1, 2 * m] = 1
    for m in range(n):
        for v in range(m):
            c = tri[m, v]
            if c:
                full[2 * m:2 * m + 2, 2 * v:2 * v + 2] = b * c
    return OperatorMatrix({1: full})


def solve_triangle(kind, x):
    """Solve X + mu X^2 = x for strictly lower triangular integer X."""
    mu = MU[_kind(kind)]
    n = x.shape[0]
    X = np.empty((n, n), dtype=object)
    X[...] = 0
    for i in range(n):
        for j in range(i - 1, -1, -1):
            s = x[i, j]
            if mu and i - j > 1:
                s -= mu * X[i, j + 1:i].dot(X[j + 1:i, j])
            X[i, j] = s
    # entries of x on/above the diagonal must vanish for a consistent solve
    if any(x[i, j] for i in range(n) for j in range(i, n)):
        raise ArithmeticError("input is not strictly lower triangular; ansatz broken")
    return X


def sqrt_step(kind, x):
    """Extract the next root: returns (x', triangle) with (x')^2 = x ⊗ 1."""
    kind = _kind(kind)
    if not x.is_integer():
        raise ValueError("root-sequence members are integer matrices")
    p = x.paraorder
    X = solve_triangle(kind, x.int_array())
    xp = assemble(kind, X)
    return xp, CoeffTriangle(kind, 2 * p + 1, X)


def build_sequence(kind, p_target):
    """All members (matrix, triangle) from p = 1 up to p_target."""
    kind = _kind(kind)
    p_target = check_paraorder(p_target)
    x = initial_operator()
    z = np.empty((1, 1), dtype=object)
    z[0, 0] = 0
    seq = {1: (x, CoeffTriangle(kind, 1, z))}
    p = 1
    while p < p_target:
        x, tri = sqrt_step(kind, x)
        p = 2 * p + 1
        seq[p] = (x, tri)
    return seq


_CACHE = {}


def member(kind, p):
    """Cached (matrix, triangle) of the given kind and order."""
    kind = _kind(kind)
    p = check_paraorder(p)
    key = (kind, p)
    if key not in _CACHE:
        if p == 1:
            _CACHE[key] = build_sequence(kind, 1)[1]
        else:
            prev, _ = member(kind, (p - 1) // 2)
            _CACHE[key] = sqrt_step(kind, prev)
    return _CACHE[key]


def triangle(kind, p):
    return member(kind, p)[1]


def verify_square(kind, p):
    """(x^(p))^2 = x^((p-1)/2) ⊗ 1 exactly."""
    rep = Report(f"square {kind} p={p}")
    x, _ = member(kind, p)
    if p == 1:
        rep.check(( x @ x).is_zero(), "f1^2 != 0")
        return rep
    low, _ = member(kind, (p - 1) // 2)
    matrix_diff(rep, x @ x, tensor_extend(low), f"({kind.lower()}^({p}))^2")
    return rep


def verify_nilpotency(x):
    """x^(p+1) = 0 and x^p != 0 for a member x of paraorder p."""
    p = x.paraorder
    rep = Report(f"nilpotency p={p}")
    xp = x.power(p)
    rep.check(not xp.is_zero(), f"x^{p} already vanishes")
    rep.check((xp @ x).is_zero(), f"x^{p + 1} != 0")
    rep.details["order"] = p + 1
    return rep


def verify_kind_invariants(kind, p):
    """Oddness of G, the fixed E pattern, or the alternating J columns."""
    kind = _kind(kind)
    t = triangle(kind, p)
    rep = Report(f"invariants {kind} p={p}")
    n = t.half
    for m in range(2, n + 1):
        for v in range(1, m):
            c = int(t.at(m, v))
            if kind == "F":
                rep.check(c > 0 and c % 2 == 1, f"G_{m},{v} = {c} not odd positive")
            elif kind == "D":
                rep.check(c == (1 if m == v + 1 else 0), f"E_{m},{v} = {c} != delta")
            else:
                sign = 1 if (m - v - 1) % 2 == 0 else -1
                rep.check(c != 0 and (c > 0) == (sign > 0),
                          f"J_{m},{v} = {c} breaks the alternating column signs")
    return rep
