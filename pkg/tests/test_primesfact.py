import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from parafermi.primesfact import (PrimeIndexer, catalan_half_index, catalan_half_value, catalan_scpf,
                                  classify_representatives, factorize, order_comparison_table,
                                  prime_interpolate, scpf_count_oracle, table5, verify_scpf)
from reference import C_HALF, CLASSES_15, CLASSES_31, INTERPOLATIONS, SCPF_S


def test_indexer():
    ix = PrimeIndexer()
    assert ix.nth(1) == 2 and ix.nth(8) == 19
    assert ix.count(100) == 25
    assert ix.is_prime(15299) and not ix.is_prime(15297)
    assert ix.primes_between(10, 20) == [11, 13, 17, 19]


@pytest.mark.parametrize("v", sorted(INTERPOLATIONS))
def test_interpolations(v):
    rank, off, up = INTERPOLATIONS[v]
    it = prime_interpolate(v)
    assert (it.rank, it.offset, it.upper_offset) == (rank, off, up)


@settings(deadline=None)
@given(st.integers(2, 10 ** 12))
def test_factorize_roundtrip(n):
    f = factorize(n)
    assert f.product() == n
    assert all(sympy.isprime(p) for p, _ in f.factors)


def test_factor_classes():
    assert factorize(19).tag == "prime"
    assert factorize(2 ** 5).tag == "exponentiated"
    assert factorize(5 * 7).tag == "two primes"
    c15, c31 = classify_representatives(15), classify_representatives(31)
    assert {k: v for k, v in c15.items() if v} == CLASSES_15
    assert {k: v for k, v in c31.items() if v} == CLASSES_31
    cols, rows = table5()
    assert cols[0] and len(rows) >= 5


def test_scpf():
    qs = [2 ** k - 1 for k in range(2, 13)]
    assert [catalan_scpf(q)[1] for q in qs] == SCPF_S
    assert [scpf_count_oracle(q) for q in qs] == SCPF_S
    assert verify_scpf().ok


def test_catalan_half():
    assert catalan_half_index(4) == (Fraction(2), 0)
    r, e = catalan_half_index(3)
    assert e == -1 and r == Fraction(64, 15)
    for i, want in zip(range(4, 15), C_HALF):
        assert abs(float(catalan_half_value(i)) - want) <= 0.01
    with pytest.raises(ValueError):
        catalan_half_index(0)


def test_order_table():
    cols, rows = order_comparison_table()
    assert cols == ["q", "estimate", "S_p", "C_i/2", "L_i-4"]
    assert [r[2] for r in rows] == SCPF_S
