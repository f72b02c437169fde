"""Mackey functors for C_p: the standard zoo, box products, isomorphisms."""

import pytest

from cpmackey import linalg as la
from cpmackey.mackey import (L, R, R_minus, box, bracket, burnside, dress_check, free_orbit, iso, is_morphism,
                             multiplication_table, shift, stabilized_witness, twisted, twisted_iso,
                             twisted_plus_bracket, unit_pairing, validate, zero_functor, MackeyFunctor)
from cpmackey.modules import FGModule
from cpmackey.rings import GroundRing

Z = GroundRing.integers()
F7 = GroundRing.field(7)


def test_twisted_orientation():
    # [PAPER] restriction carries (d p), transfer is (0 1)^T, so r t is multiplication by p
    A = twisted(Z, 5, 3)
    assert la.equal(A.r, la.mat([[3, 5]]))
    assert la.equal(A.t, la.mat([[0], [1]]))
    assert validate(A) == []


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("ring", [Z, F7], ids=str)
def test_standard_functors_validate(p, ring):
    zoo = [burnside(ring, p), twisted(ring, p, 1), bracket(ring, p), L(ring, p), R(ring, p), free_orbit(ring, p),
           shift(burnside(ring, p)), zero_functor(ring, p)]
    if p == 2:
        zoo.append(R_minus(ring, p))
    for M in zoo:
        assert validate(M) == [], M


def test_validate_reports_trace_failure():
    M = L(Z, 3)
    broken = MackeyFunctor(Z, 3, M.top, M.bottom, la.identity(1), M.t, M.sigma)
    assert "trace relation" in validate(broken)


def test_bracket_of_zero_is_zero():
    assert bracket(Z, 3, FGModule.zero(Z)).is_zero()


def test_box_examples():
    # [PAPER] <k> box R = <k/p>, R_- box R_- = L, A<2> box A<3> = A<6>
    got = box(bracket(Z, 3), R(Z, 3))
    assert iso(got, bracket(Z, 3, FGModule.cyclic(Z, 3))).found
    assert iso(box(R_minus(Z, 2), R_minus(Z, 2)), L(Z, 2)).found
    assert iso(box(twisted(F7, 5, 2), twisted(F7, 5, 3)), twisted(F7, 5, 6)).found


@pytest.mark.parametrize("make", [burnside, lambda r, p: twisted(r, p, 2), bracket, L, R, free_orbit])
def test_burnside_is_unit(make):
    M = make(Z, 5)
    assert iso(box(burnside(Z, 5), M), M).found


def test_iso_examples():
    M = R(Z, 3)
    assert iso(M, M).found
    assert iso(bracket(Z, 3), L(Z, 3)).status == "none"


def test_twisted_iso_examples():
    w = twisted_iso(1, 4, Z, 3)
    # [PAPER] 1 = 1*4 + 3*(-1)
    assert (w.unit, w.x) == (1, -1)
    assert twisted_iso(7, 7, Z, 5).witness == [[1, 0], [0, 1]]
    # [DERIVED] 1 = +-2 mod 5 fails
    assert twisted_iso(1, 2, Z, 5) is None


def test_stabilized_witness_small():
    W = stabilized_witness(1, 2, 5)
    assert la.det(W) == 1
    assert is_morphism(twisted_plus_bracket(Z, 5, 1), twisted_plus_bracket(Z, 5, 2), W, la.identity(1))
    with pytest.raises(ValueError):
        stabilized_witness(5, 1, 5)


def test_dress_unit_pairing_and_perturbation():
    A = burnside(Z, 3)
    Tt, Tb = unit_pairing(A)
    assert dress_check(A, A, A, Tt, Tb).ok
    zero = (0 * Tt, 0 * Tb)
    assert dress_check(A, A, A, *zero).ok
    bad_t = Tt.copy()
    bad_t[:, 1, 0] = -bad_t[:, 1, 0]
    rep = dress_check(A, A, A, bad_t, Tb)
    assert not rep.ok and "Frobenius t-left" in rep.violated


def test_multiplication_table_p3_f7():
    cells = multiplication_table(F7, 3)
    assert all(c.passed for c in cells)
    assert {c.status for c in cells} <= {"iso", "n/a"}
