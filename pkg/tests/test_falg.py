from fractions import Fraction

import pytest

from parafermi.falg import (solve_heterotic, verify_f_algebra, verify_heterotic, verify_mod8_algebra,
                            verify_mod8_heterotic)
from reference import FACTORS_7, G3, G7


@pytest.mark.parametrize("p", [3, 7])
def test_exact_algebra(p):
    assert verify_f_algebra(p, mod8=False).ok


@pytest.mark.parametrize("p", [15, 31])
def test_mod8_algebra(p):
    assert verify_mod8_algebra(p).ok


def test_exact_algebra_fails_at_15():
    assert not verify_f_algebra(15, mod8=False).ok


def test_g3():
    g, fac, _ = solve_heterotic(3)
    assert g.at().tolist() == G3
    assert verify_heterotic(3).ok


def test_g7_s1():
    g, fac, _ = solve_heterotic(7, "S1")
    assert g.at().tolist() == G7["S1"]
    assert verify_heterotic(7, "S1").ok


def test_g7_s2_at_printed_parameter():
    g, fac, _ = solve_heterotic(7, "S2")
    assert g.params == ["K44"]
    assert g.at({"K44": Fraction(-11, 24)}).tolist() == G7["S2"]


def test_g7_s3_single_entry_differs():
    g, fac, _ = solve_heterotic(7, "S3")
    got = g.at().tolist()
    diffs = [(i, j) for i in range(8) for j in range(8) if got[i][j] != G7["S3"][i][j]]
    assert diffs == [(5, 2)]
    assert got[5][2] == Fraction(-21, 100)
    assert verify_heterotic(7, "S3").ok


@pytest.mark.parametrize("sym", ["S1", "S2", "S3"])
def test_factors_7(sym):
    _, fac, _ = solve_heterotic(7, sym)
    norm = {k: (c, {r: x for r, x in d.items() if x}) for k, (c, d) in fac.values.items()}
    assert norm == FACTORS_7[sym]


def test_mod8_heterotic_has_no_factor_set():
    # unique g exists for the residue form, but no normalizing factors do
    rep = verify_mod8_heterotic(15)
    assert rep.details["standard_factors"] == "inconsistent"
    assert not rep.ok
