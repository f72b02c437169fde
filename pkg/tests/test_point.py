"""Cohomology of a point as a graded Green functor."""

import json
from pathlib import Path

import pytest

from cpmackey.grading import ROGElement, dims
from cpmackey.mackey import iso
from cpmackey.point import BOTTOM, PointRing, grid_ascii, point_grid, region_label
from cpmackey.rings import GroundRing
from cpmackey.verify import point_axioms

Z = GroundRing.integers()
GOLDEN = Path(__file__).parent / "golden"


def E(p, *c):
    return ROGElement(p, tuple(c))


@pytest.mark.parametrize("p", [2, 5])
def test_grid_matches_golden(p):
    # [PAPER] golden grids transcribed from the published case lists (tests/golden/transcribe.py)
    golden = json.loads((GOLDEN / f"point_grid_p{p}.json").read_text())
    assert point_grid(p, 10) == golden


def test_grid_p3_single_cell():
    g = point_grid(3, 0)
    assert g["rows"] == [{"total": 0, "cells": ["A_twisted(1)"]}]
    assert "A<d>" in grid_ascii(g)


def test_region_parity_for_odd_p():
    # odd fixed dimension with positive total dimension carries nothing for odd p
    assert region_label(5, -1, 1) == "Zero"
    assert region_label(5, -2, 2) == "Bracket(k/p)"
    assert region_label(5, 3, -1) == "Bracket(k/p)"
    assert region_label(5, 1, 0) == "NotARepresentation"


def test_additive_examples():
    P2, P3 = PointRing(2, Z), PointRing(3, Z)
    d = P2.additive(E(2, 0, -1))
    assert d.label == "Bracket(k)" and d.top_basis == ("eps^-1kappa",)
    d = P3.additive(ROGElement.lam(3, 1) - ROGElement.trivial(3, 2))
    assert d.label == "R" and d.top_basis == ("xi",)
    assert P2.additive(E(2, 0, 0)).label == "A"
    assert P3.additive(E(3, 0, 0)).label == "A_twisted(1)"


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("ring", [Z, GroundRing.field(7)], ids=str)
def test_each_degree_is_its_standard_functor(p, ring):
    P = PointRing(p, ring)
    for a in P.degrees(4, spread=1 if p > 2 else 0):
        assert iso(P.mackey_functor(a), P.standard_functor(a)).found, a


def test_p2_relations():
    P = PointRing(2, Z)
    kappa = P.element(E(2, 0, 0), "kappa")
    assert P.multiply(kappa, kappa) == P.scale(2, kappa)
    assert P.multiply(P.element(E(2, 0, 1), "eps^1"), P.element(E(2, 0, -1), "eps^-1kappa")) == kappa
    assert P.restrict(P.element(E(2, -2, 2), "xi^1")) == P.iota(E(2, -2, 2))
    assert P.restrict(kappa).is_zero()
    t = P.transfer(P.iota(E(2, 2, -2)))
    assert t == P.element(E(2, 2, -2), "t(iota^2)")


def test_xi_shifts_transfer_classes():
    # [PAPER] xi (eps^-m t(iota^(2n+1))) = eps^-m t(iota^(2n-1)) for n >= 2; lands in a zero group for n = 1
    P = PointRing(2, Z)
    xi = P.element(E(2, -2, 2), "xi^1")
    five = P.element(E(2, 5, -6), "eps^-1t(iota^5)")
    assert P.multiply(xi, five) == P.element(E(2, 3, -4), "eps^-1t(iota^3)")
    three = P.element(E(2, 3, -4), "eps^-1t(iota^3)")
    assert P.multiply(xi, three).is_zero()


def test_mu_error_term_p5():
    # [DERIVED] d-values 2 and 3, d(0) = 1: coefficient (2*3 - 1)/5 = 1
    P = PointRing(5, Z)
    a = ROGElement.lam(5, 2) - ROGElement.lam(5, 1)
    got = P.multiply(P.element(a, "mu"), P.element(-a, "mu"))
    z = P.zero_degree()
    assert got == P.add(P.element(z, "mu"), P.element(z, "t(iota)"))


def test_bottom_level_is_laurent():
    P = PointRing(3, Z)
    a, b = ROGElement.lam(3, 1) - ROGElement.trivial(3, 2), ROGElement.trivial(3, 2) - ROGElement.lam(3, 1)
    prod = P.multiply(P.iota(a), P.iota(b))
    assert prod.level == BOTTOM and prod == P.iota(P.zero_degree())


@pytest.mark.parametrize("p", [2, 3, 5])
def test_axioms_small_window(p):
    fails = point_axioms(PointRing(p, Z), bound=4, triple_bound=2)
    assert all(not v for v in fails.values()), {k: v[:2] for k, v in fails.items() if v}


def test_unsupported_rings():
    with pytest.raises(ValueError):
        PointRing(3, GroundRing.field(3))
    with pytest.raises(ValueError):
        PointRing(3, GroundRing.mod(4))


def test_degree_enumeration_dims():
    P = PointRing(5, Z)
    for a in P.degrees(3):
        f, n = dims(a)
        assert abs(f) <= 3 and abs(n) <= 3
