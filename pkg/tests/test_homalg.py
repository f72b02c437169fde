"""Group-ring homological algebra, the Ext ring and the collapse analysis."""

import pytest
from hypothesis import given, strategies as st

from cpmackey.homalg import (FiniteGroup, GroupRingModule, bo2_field, bo2_integral, diagonal, ext,
                             ext_ring, monomial_class, predicted_bo2_group, projective_resolution,
                             rel_injective_resolution, semisimple, sign_polynomial_algebra,
                             tensor_of_resolutions)
from cpmackey.rings import GroundRing

Z, F2, F3 = GroundRing.integers(), GroundRing.field(2), GroundRing.field(3)
C2 = FiniteGroup.cyclic(2)


@pytest.fixture(scope="module")
def bo2():
    return bo2_integral(8, 8)


def test_groups():
    assert C2.check() and C2.product(FiniteGroup.cyclic(3)).check()
    assert C2.product(FiniteGroup.cyclic(3)).order == 6
    assert not C2.product(C2).is_cyclic()


def test_modules_are_modules():
    for M in (GroupRingModule.trivial(Z, C2), GroupRingModule.scalar(Z, C2, -1), GroupRingModule.regular(Z, C2, 2)):
        assert M.check() == []
        assert M.dual().check() == []


def test_fixed_points():
    # [TRIVIAL] the regular module has rank-one invariants spanned by the norm
    assert GroupRingModule.regular(Z, C2).fixed_points().shape[1] == 1
    assert GroupRingModule.scalar(Z, C2, -1).fixed_points().shape[1] == 0


@given(st.integers(2, 5), st.integers(0, 6))
def test_cyclic_group_cohomology(n, s):
    # [DERIVED] H^s(Z/n; Z) = Z, 0, Z/n, 0, Z/n, ...
    G = FiniteGroup.cyclic(n)
    k = GroupRingModule.trivial(Z, G)
    want = (0,) if s == 0 else ((n,) if s % 2 == 0 else ())
    assert ext(k, k, s).orders() == want


@pytest.mark.parametrize("s", range(5))
def test_sign_twisted_cohomology(s):
    # [DERIVED] H^s(Z/2; Z_-) = 0, Z/2, 0, Z/2, ...
    k, sgn = GroupRingModule.trivial(Z, C2), GroupRingModule.scalar(Z, C2, -1)
    assert ext(k, sgn, s).orders() == ((2,) if s % 2 else ())


@pytest.mark.parametrize("s", range(4))
def test_methods_agree(s):
    k, sgn = GroupRingModule.trivial(Z, C2), GroupRingModule.scalar(Z, C2, -1)
    for N in (k, sgn):
        assert ext(k, N, s).orders() == ext(k, N, s, method="projective").orders()


@pytest.mark.parametrize("s", range(4))
def test_klein_four_mod_two(s):
    # [DERIVED] Kunneth: dim H^s((Z/2)^2; F2) = s + 1
    V = C2.product(C2)
    k = GroupRingModule.trivial(F2, V)
    assert len(ext(k, k, s, method="projective").orders()) == s + 1
    assert len(ext(k, k, s).orders()) == s + 1


def test_semisimple_case():
    k = GroupRingModule.trivial(F3, C2)
    assert semisimple(F3, C2) and not semisimple(F2, C2)
    assert rel_injective_resolution(k, 3).length == 0
    assert [ext(k, k, s).orders() for s in range(3)] == [(0,), (), ()]


def test_coinduced_is_acyclic():
    R = GroupRingModule.regular(Z, C2)
    k = GroupRingModule.trivial(Z, C2)
    assert [ext(k, R, s).orders() for s in range(4)] == [(0,), (), (), ()]


def test_resolutions_check():
    k = GroupRingModule.trivial(Z, C2)
    assert projective_resolution(k, 4).check() == []
    I = rel_injective_resolution(k, 4)
    assert I.check() == []
    T = diagonal(tensor_of_resolutions(I, I), C2)
    assert T.check() == []


def test_ext_grid_matches_prediction(bo2):
    # [PAPER] the integral Ext grid for the sign polynomial algebra
    page = bo2["page"]
    for s in range(9):
        for t in range(9):
            assert page.group(s, t).orders() == predicted_bo2_group(s, t), (s, t)


def test_ring_relations(bo2):
    R = bo2["ring"]
    g = bo2["generators"]
    assert R.multiply(g["alpha"], (0, 0, (2,))) == (0,)
    assert R.multiply(g["beta"], (0, 0, (2,))) == (0,)
    assert bo2["beta_squared"] == bo2["p1_alpha"] != (0,)


def test_monomials_fill_the_grid(bo2):
    # [DERIVED] p1^a alpha^b beta^c generates each nonzero group
    R = bo2["ring"]
    for a in range(3):
        for b in range(4):
            for c in range(2):
                got = monomial_class(R, a, b, c)
                if got is None:
                    continue
                s, t, coords = got
                o = predicted_bo2_group(s, t)[0]
                assert coords and (o == 0 and abs(coords[0]) == 1 or o and coords[0] % o)


def test_pivot_order_does_not_change_products():
    a, b = bo2_integral(4, 4), bo2_integral(4, 4, reverse=True)
    assert a["beta_squared"] == b["beta_squared"]
    assert a["p1_alpha"] == b["p1_alpha"]


def test_integral_collapse_needs_one_certificate(bo2):
    rep = bo2["collapse"]
    assert [tuple(x) for x in rep.residual] == [(3, "beta")]
    assert rep.collapses


def test_field_collapse():
    for q in (3, 5):
        out = bo2_field(q, 20)
        assert out["concentrated"] and out["collapse"].collapses
        assert out["totals"] == {n: int(n % 4 == 0) for n in range(21)}


def test_sign_algebra_pieces():
    N = sign_polynomial_algebra(Z)
    assert N.piece(1).rank == 0
    assert N.piece(2).rep(1)[0, 0] == -1 and N.piece(4).rep(1)[0, 0] == 1


def test_ext_ring_over_field_is_invariants():
    R = ext_ring(sign_polynomial_algebra(F3), 2, 8)
    assert sorted(R.page().entries) == [(0, 0), (0, 4), (0, 8)]
