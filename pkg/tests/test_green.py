import pytest

from parafermi.exact_core import normalize_sqrt
from parafermi.green import (build_green, green_coefficients, green_doubling, verify_green_suite,
                             verify_nilpotent_b, verify_spin, verify_trilinear)


def test_coefficients_p3():
    assert green_coefficients(3) == [normalize_sqrt(3), normalize_sqrt(4), normalize_sqrt(3)]


def test_matrix_shape_and_nilpotency_index():
    b = build_green(7)
    assert b.dim == 8
    assert not b.power(7).is_zero()
    assert b.power(8).is_zero()


@pytest.mark.parametrize("p", [1, 3, 7, 15, 31])
def test_suite(p):
    rep = verify_green_suite(p)
    assert rep.ok, rep.violations


def test_components():
    assert verify_spin(7).ok and verify_trilinear(7).ok and verify_nilpotent_b(7).ok
    assert green_doubling(15).ok


def test_rejects_bad_order():
    with pytest.raises(ValueError):
        build_green(6)
