import numpy as np
import pytest

from parafermi.exact_core import tensor_extend
from parafermi.rootseq import (KINDS, CoeffTriangle, assemble, member, triangle, verify_kind_invariants,
                               verify_nilpotency, verify_square)
from reference import F15_ROWS, H15_ROWS


def test_f15_and_h15():
    assert triangle("F", 15).rows() == F15_ROWS
    assert triangle("H", 15).rows() == H15_ROWS


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("p", [3, 7, 15, 31, 63])
def test_square(kind, p):
    assert verify_square(kind, p).ok


@pytest.mark.parametrize("kind", KINDS)
def test_invariants(kind):
    assert verify_kind_invariants(kind, 31).ok


def test_square_is_independent_of_construction():
    # squaring the assembled matrix by plain multiplication recovers the lower member
    x = assemble("F", triangle("F", 15).square())
    assert x @ x == tensor_extend(member("F", 7)[0])


def test_nilpotency():
    assert verify_nilpotency(member("F", 15)[0]).ok


def test_triangle_indexing():
    t = triangle("F", 15)
    assert t.at(5, 1) == 5
    with pytest.raises(IndexError):
        t.at(1, 1)
    assert t.max() == 113


def test_unknown_kind():
    with pytest.raises(ValueError):
        triangle("Q", 7)
