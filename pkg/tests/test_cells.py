"""Cell complexes, the freeness hypotheses and free point-cohomology modules."""

import json

import pytest

from cpmackey.cells import Cell, CellComplex, check_freeness, free_module_degree, omega, schubert_cells, summand_labels
from cpmackey.grading import ROGElement, dims
from cpmackey.mackey import bracket, burnside, iso, twisted
from cpmackey.rings import GroundRing
from cpmackey.verify import ordering_violation

Z = GroundRing.integers()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_schubert_cells_are_free(p):
    assert check_freeness(schubert_cells(p, 3 * p)).ok


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_omega_dims(p):
    # [DERIVED] one fixed complex line for every p-th Schubert cell
    for N in range(3 * p):
        assert dims(omega(p, N)) == (2 * (N // p), 2 * N)


def test_omega_examples():
    assert dims(omega(3, 3)) == (2, 6)
    assert omega(3, 0) == ROGElement.zero(3)
    assert omega(3, 1) == ROGElement.lam(3, 1)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_ordering_violation_is_named(p):
    rep = check_freeness(ordering_violation(p))
    assert not rep.ok and rep.violated == "dimension-ordering"


def test_other_violations():
    odd = CellComplex(Z, 3, [Cell(V=ROGElement.trivial(3, 1))])
    assert check_freeness(odd).violated == "even-cells"
    virtual = CellComplex(Z, 3, [Cell(V=-ROGElement.lam(3, 1))])
    assert check_freeness(virtual).violated == "even-cells"
    drop = CellComplex(Z, 3, [Cell(V=ROGElement.zero(3), filtration=2), Cell(V=ROGElement.zero(3), filtration=1)])
    assert check_freeness(drop).violated == "finite-filtrations"
    assert check_freeness(CellComplex(Z, 3, [Cell(free_dim=0)])).ok
    assert check_freeness(CellComplex(Z, 3, [Cell(free_dim=3)])).violated == "even-cells"


def test_cell_json_roundtrip(tmp_path):
    X = schubert_cells(3, 4) + CellComplex(Z, 3, [Cell(free_dim=2, filtration=4)])
    path = tmp_path / "cells.json"
    path.write_text(json.dumps(X.to_json()))
    Y = CellComplex.from_json(json.loads(path.read_text()))
    assert Y.cells == X.cells and Y.p == 3


def test_free_module_degree_examples():
    X = schubert_cells(3, 9)
    a = ROGElement.trivial(3, -1)
    assert dims(a) == (-1, -1)
    assert free_module_degree(X, a).is_zero()
    single = CellComplex(Z, 3, [Cell(V=ROGElement.lam(3, 1))])
    assert iso(free_module_degree(single, ROGElement.lam(3, 1)), twisted(Z, 3, 1)).found
    # [DERIVED] degree 0: A from the bottom cell, <k> from the cells in dims (0,2) and (0,4)
    got = free_module_degree(X, ROGElement.zero(3))
    want = burnside(Z, 3).direct_sum(bracket(Z, 3)).direct_sum(bracket(Z, 3))
    assert iso(got, want).found
    assert summand_labels(X, ROGElement.zero(3)) == ["A_twisted(1)", "Bracket(k)", "Bracket(k)"]


def test_free_module_degree_rejects_non_free():
    with pytest.raises(ValueError):
        free_module_degree(ordering_violation(3), ROGElement.zero(3))
