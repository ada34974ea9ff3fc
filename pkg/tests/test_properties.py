"""Property-based checks of exact identities."""

from fractions import Fraction

import mpmath
from hypothesis import given, settings, strategies as st

from parafermi.blockstruct import check_secondary_symmetry, count_formula
from parafermi.cardioid import contfrac_expand
from parafermi.exact_core import ExactScalar, catalan, commutator, diag, normalize_sqrt
from parafermi.green import build_green
from parafermi.primesfact import catalan_half_index
from parafermi.rootseq import KINDS, triangle, verify_square

orders = st.sampled_from([1, 3, 7, 15, 31])
radicands = st.integers(0, 500)
rationals = st.fractions(min_value=-50, max_value=50, max_denominator=50)
scalars = st.builds(lambda d, q: ExactScalar({d: q}) if d else ExactScalar(), radicands, rationals)


@given(scalars, scalars, scalars)
def test_scalar_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert a - a == ExactScalar()


@given(st.integers(0, 10 ** 4))
def test_sqrt_squares_back(n):
    s = normalize_sqrt(n)
    assert s * s == ExactScalar.rational(n)


@given(orders)
@settings(max_examples=10)
def test_green_spin_diagonal(p):
    b = build_green(p)
    half = commutator(b.T, b).scale(Fraction(1, 2))
    assert half == diag([Fraction(p, 2) - k for k in range(p + 1)])


@given(st.sampled_from(KINDS), st.sampled_from([3, 7, 15, 31, 63]))
@settings(max_examples=20)
def test_square_identity(kind, p):
    assert verify_square(kind, p).ok


@given(st.sampled_from([15, 31, 63, 127]), st.integers(1, 3))
@settings(max_examples=12)
def test_secondary_symmetry_any_depth(p, depth):
    assert check_secondary_symmetry(triangle("F", p).square(), depth).ok


@given(st.integers(1, 12))
def test_catalan_half_even(k):
    assert catalan_half_index(2 * k) == (Fraction(catalan(k)), 0)


@given(st.integers(-10 ** 6, 10 ** 6), st.integers(0, 40))
def test_contfrac_dyadic_exact(m, e):
    x = Fraction(m, 2 ** e)
    cf = contfrac_expand(lambda: mpmath.mpf(m) / 2 ** e, 200, digits=40)
    val = Fraction(cf.quotients[-1])
    for q in reversed(cf.quotients[:-1]):
        val = q + 1 / val
    assert val == x


def test_count_formula_increasing():
    ps = [2 ** n - 1 for n in range(4, 12)]
    vals = [count_formula(p) for p in ps]
    assert vals == sorted(vals) and vals[:2] == [6, 18]
