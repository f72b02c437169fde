"""Degrees in RO(C_p), the twist d and the commutativity units."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cpmackey.grading import BurnsideUnit, ROGElement, b_coeff, comm_unit, d_in_ring, d_lift, d_modp, dims, inv_mod
from cpmackey.rings import GroundRing


def test_dims_examples():
    # [PAPER] rotations have dimension (0, 2) and 1 - sign has dimension (1, 0)
    assert dims(ROGElement.lam(3, 1)) == (0, 2)
    assert dims(ROGElement.zero(5)) == (0, 0)
    assert dims(ROGElement(2, (1, -1))) == (1, 0)


def test_lambda_folding():
    assert ROGElement.lam(5, 3) == ROGElement.lam(5, 2)
    assert ROGElement.lam(7, 6) == ROGElement.lam(7, 1)
    assert ROGElement.lam(5, 5) == ROGElement.trivial(5, 2)


def test_twist_examples():
    lam = ROGElement.lam
    # [PAPER] the twist of lambda_2 for p=5 is the class of 2
    assert d_modp(lam(5, 2)) == 2
    assert d_modp(ROGElement.zero(5)) == 1
    # [DERIVED] 1^-1 * 2 = 2 in F5^x/{+-1}
    assert d_modp(lam(5, 2) - lam(5, 1)) == 2
    # [PAPER] inv(2) = 3 mod 5, so the lift of -lambda_2 is 3
    assert d_lift(-lam(5, 2)) == 3
    assert d_lift(ROGElement.zero(5)) == 1
    assert d_lift(lam(5, 2) - lam(5, 1)) == 2


def test_b_coeff_examples():
    lam = ROGElement.lam
    assert b_coeff(ROGElement.zero(5)) == 0
    # [DERIVED] (1 - 3*2)/5 = -1
    assert b_coeff(lam(5, 2) - lam(5, 1)) == -1
    assert b_coeff(lam(3, 1) - lam(3, 1)) == 0


def test_comm_unit_examples():
    # [PAPER] sign times sign picks up (1 - tau); two trivial summands give -1
    s = ROGElement.sign()
    assert comm_unit(s, s) == BurnsideUnit(1, 1)
    assert comm_unit(ROGElement.zero(3), ROGElement.lam(3, 1)) == BurnsideUnit(1, 0)
    one = ROGElement.trivial(3)
    assert comm_unit(one, one) == BurnsideUnit(-1, 0)


def test_burnside_units():
    u = BurnsideUnit(1, 1)
    assert u * u == BurnsideUnit(1, 0)
    assert u.restriction() == -1
    assert u.as_burnside() == (1, -1)
    with pytest.raises(ValueError):
        BurnsideUnit(2, 0)


odd_primes = st.sampled_from([3, 5, 7, 11])


@given(odd_primes, st.data())
def test_twist_is_multiplicative_mod_p(p, data):
    h = (p - 1) // 2
    a = ROGElement(p, (0,) + tuple(data.draw(st.lists(st.integers(-3, 3), min_size=h, max_size=h))))
    b = ROGElement(p, (0,) + tuple(data.draw(st.lists(st.integers(-3, 3), min_size=h, max_size=h))))
    prod = d_lift(a) * d_lift(b) - d_lift(a + b)
    assert prod % p == 0
    assert d_modp(a + b) == min(d_lift(a + b) % p, p - d_lift(a + b) % p)


@given(odd_primes, st.integers(1, 10))
def test_inv_mod(p, j):
    if j % p:
        assert (j * inv_mod(j, p)) % p == 1 and 0 < inv_mod(j, p) < p


def test_twist_in_field_uses_field_inverse():
    # 2 is a unit in F7, so the negative power uses 2^-1 = 4 there
    a = -ROGElement.lam(5, 2)
    assert d_in_ring(a, GroundRing.field(7)) == 4
    assert d_in_ring(a, GroundRing.integers()) == 3


def test_invalid_degrees():
    with pytest.raises(ValueError):
        ROGElement(4, (0, 0))
    with pytest.raises(ValueError):
        ROGElement(5, (0, 1))
    with pytest.raises(ValueError):
        d_modp(ROGElement.sign())
