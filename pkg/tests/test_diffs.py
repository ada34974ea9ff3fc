import pytest

from parafermi.diffs import (ThetaTerm, allocation_solve, carry_bit_expr, kissing, kissing_representations,
                             lookup, merged_window, search_parafermial, sequence, synoptical_check,
                             verify_gmax_decomposition)
from reference import (KISSING_THETA, MERGED_HEAD, MERGED_LAST, NAIVE_G15, NAIVE_G31, NAIVE_J7, NAIVE_J15,
                       OBLIQUE_G15, OBLIQUE_J15, OBLIQUE_J31)


@pytest.mark.parametrize("name,p,want", [("dG", 15, NAIVE_G15), ("dG", 31, NAIVE_G31), ("oG", 15, OBLIQUE_G15),
                                         ("dJ", 7, NAIVE_J7), ("dJ", 15, NAIVE_J15), ("oJ", 15, OBLIQUE_J15),
                                         ("oJ", 31, OBLIQUE_J31)])
def test_sequences(name, p, want):
    assert sequence(name, p) == want


def test_oblique_g31_differs_in_one_place():
    got = sequence("oG", 31)
    assert got[10] == 53876 and got[:10] == [136, 386, 1160, 1440, 1478, 4390, 4476, 13792, 14022, 16994]


def test_naive_j31_length():
    # all distinct values are kept, giving 17 differences (15 are printed)
    assert len(sequence("dJ", 31)) == 17


def test_lookup_bounds():
    assert lookup("dG", 15, 5) == 72
    with pytest.raises(IndexError):
        lookup("dG", 15, 6)
    with pytest.raises(ValueError):
        sequence("xG", 15)


def test_merged_window():
    mw = merged_window(15, 31)
    assert mw[:6] == MERGED_HEAD and mw[-1] == MERGED_LAST


def test_theta():
    for n, want in KISSING_THETA.items():
        assert kissing(n) == want
    assert ThetaTerm(1, 3, 7).value == 4
    with pytest.raises(ValueError):
        ThetaTerm(1, 7, 3)
    with pytest.raises(ValueError):
        ThetaTerm(1, 4, 7)


def test_gmax_and_kissing():
    assert verify_gmax_decomposition().ok
    assert kissing_representations().ok
    assert carry_bit_expr([(1, 3), (2, 7)]) == 4 + 16


def test_synoptical_partial():
    rep = synoptical_check()
    failing = {v.split(":")[0] for v in rep.violations}
    assert failing == {"L_3", "L_5", "L_7"}


def test_search_finds_and_exhausts():
    expr, rep = search_parafermial(24, n=4)
    assert expr is not None and expr.value == 24
    expr, rep = search_parafermial(10 ** 9 + 7, n=16, max_terms=4, budget=100)
    assert expr is None and rep.details.get("budget_exhausted")


def test_allocation():
    assert allocation_solve(3, [1, 2, 3, 2]) == ((9, 11, 14, 16), 1)
    with pytest.raises(ValueError):
        allocation_solve(3, [1, 2])
