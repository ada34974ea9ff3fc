from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from parafermi.exact_core import (C1, C2, C3, F1, ExactScalar, OperatorMatrix, anticommutator,
                                  catalan, check_paraorder, commutator, is_paraorder,
                                  normalize_sqrt, solve_linear, tensor_extend)


def test_normalize_sqrt():
    assert normalize_sqrt(12) == ExactScalar({3: 2})
    assert normalize_sqrt(16) == ExactScalar.rational(4)
    assert normalize_sqrt(0).is_zero()
    with pytest.raises(ValueError):
        normalize_sqrt(-1)


def test_scalar_arithmetic():
    r2 = normalize_sqrt(2)
    assert (r2 * r2) == ExactScalar.rational(2)
    assert (normalize_sqrt(6) * normalize_sqrt(3)) == normalize_sqrt(18)
    assert (r2 + r2 - r2) == r2
    assert (ExactScalar.rational(3) / 2).to_fraction() == Fraction(3, 2)


@given(st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
def test_sqrt_product(a, b):
    assert normalize_sqrt(a) * normalize_sqrt(b) == normalize_sqrt(a * b)


def test_pauli_like_relations():
    i2 = OperatorMatrix.identity(2)
    assert C1 @ C1 == i2
    assert C2 @ C2 == i2
    assert C3 @ C3 == -i2
    assert anticommutator(F1, F1.T) == i2
    assert (F1 @ F1).is_zero()
    assert commutator(C1, C1).is_zero()


def test_tensor_extend_preserves_products():
    a = tensor_extend(F1)
    assert a.dim == 4
    assert (a @ a).is_zero()


def test_json_roundtrip():
    m = OperatorMatrix.from_entries([[normalize_sqrt(2), 1], [Fraction(1, 3), 0]])
    assert OperatorMatrix.from_json(m.to_json()) == m


def test_paraorders():
    assert [p for p in range(40) if is_paraorder(p)] == [1, 3, 7, 15, 31]
    assert check_paraorder(63) == 63
    for bad in (0, 2, 5, 64, -1):
        with pytest.raises(ValueError):
            check_paraorder(bad)


def test_catalan():
    assert [catalan(k) for k in range(8)] == [1, 1, 2, 5, 14, 42, 132, 429]


def test_solve_linear():
    part, basis, free = solve_linear([[1, 1], [1, -1]], [3, 1], 2)
    assert part == [2, 1] and not basis
    assert solve_linear([[1, 1], [1, 1]], [1, 2], 2) is None
    part, basis, free = solve_linear([[1, 1]], [1], 2)
    assert len(basis) == 1
