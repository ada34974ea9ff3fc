"""Negative controls: perturbed inputs must be rejected."""

from fractions import Fraction

import pytest

from parafermi.blockstruct import catalan_traces, check_secondary_symmetry
from parafermi.exact_core import ExactScalar, OperatorMatrix, commutator, diag, tensor_extend
from parafermi.green import build_green
from parafermi.rootseq import CoeffTriangle, assemble, member, triangle

BASE15 = triangle("F", 15).square()
LOW7 = tensor_extend(member("F", 7)[0])
CELLS = [(m, v) for m in range(1, 8) for v in range(m)]


def detectors(tri):
    x = assemble("F", tri)
    return {"square": (x @ x) != LOW7,
            "catalan": not catalan_traces(CoeffTriangle("F", 15, tri)).ok,
            "symmetry": not check_secondary_symmetry(tri, 3).ok}


def test_unperturbed_passes():
    assert not any(detectors(BASE15).values())


@pytest.mark.parametrize("delta", [1, -1, 2])
@pytest.mark.parametrize("cell", CELLS)
def test_single_mutation_detected(cell, delta):
    tri = BASE15.copy()
    tri[cell] += delta
    assert any(detectors(tri).values())


def test_square_alone_catches_every_mutation():
    missed = []
    for cell in CELLS:
        tri = BASE15.copy()
        tri[cell] += 1
        if not detectors(tri)["square"]:
            missed.append(cell)
    assert missed == []


@pytest.mark.parametrize("beta", [1, 4, 7])
def test_green_mutation_breaks_spin(beta):
    b = build_green(7).entries()
    b[beta][beta - 1] = b[beta][beta - 1] + ExactScalar.rational(1)
    m = OperatorMatrix.from_entries(b)
    half = commutator(m.T, m).scale(Fraction(1, 2))
    assert half != diag([Fraction(7, 2) - k for k in range(8)])
