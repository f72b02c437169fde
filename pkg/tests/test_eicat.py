"""The fundamental EI-category of the orbit space and coefficient systems over it."""

import pytest

from cpmackey import linalg as la
from cpmackey.eicat import (BULLET, FREE, build_pi_bz2, coefficient_system_h, constant_functor,
                            fixed_point_basis, functor_hom, parity_span, representable, same_span,
                            split_representable)
from cpmackey.grading import ROGElement
from cpmackey.projective import ProjectiveSpace
from cpmackey.rings import GroundRing

F7 = GroundRing.field(7)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_category_is_ei(p):
    C = build_pi_bz2(p)
    assert C.check() == []
    # [DERIVED] |End(bullet)| = 2, |Hom(free, bullet)| = 2, |End(free)| = 2p
    assert len(C.hom(BULLET, BULLET)) == 2
    assert len(C.hom(FREE, BULLET)) == 2
    assert len(C.hom(FREE, FREE)) == 2 * p
    assert C.hom(BULLET, FREE) == []


def test_category_needs_odd_p():
    with pytest.raises(ValueError):
        build_pi_bz2(2)


def test_kappa_swaps_the_two_restrictions():
    C = build_pi_bz2(3)
    (kappa,) = [m for m in C.hom(BULLET, BULLET) if m != C.identity(BULLET)]
    r0, r1 = sorted(C.hom(FREE, BULLET), key=lambda m: m.label)
    assert C.compose(kappa, r0) == r1 and C.compose(kappa, r1) == r0
    assert C.compose(kappa, kappa) == C.identity(BULLET)
    with pytest.raises(ValueError):
        C.compose(r0, kappa)


def test_functors_check():
    C = build_pi_bz2(3)
    assert constant_functor(C, F7).check() == []
    assert representable(C, F7, BULLET).check() == []


def test_yoneda():
    # [TRIVIAL] Hom(k Pi(-, x), F) = F(x)
    C = build_pi_bz2(3)
    k = constant_functor(C, F7)
    for x in C.objects:
        assert len(functor_hom(representable(C, F7, x), k).gens) == 1
    rep = representable(C, F7, BULLET)
    assert len(functor_hom(rep, rep).gens) == 2


@pytest.mark.parametrize("q", [3, 5, 7])
def test_constant_functor_splits_off_representable(q):
    s = split_representable(q, 3)
    assert s.constant.check() == [] and s.sign.check() == []
    ring = GroundRing.field(q)
    E = s.idempotent[BULLET]
    assert (la.reduce(E @ E, ring) == E).all()
    assert len(functor_hom(constant_functor(s.constant.category, ring), s.constant).gens) == 1


def test_split_needs_odd_q():
    with pytest.raises(ValueError):
        split_representable(2, 3)


@pytest.mark.parametrize("coeffs", [(0, 1), (2, 3), (0, 4), (-2, 2), (4, 4)])
def test_fixed_points_are_parity_span(coeffs):
    # [DERIVED] cross-check against the projective-space parity rule
    X = ProjectiveSpace(3, F7)
    cs = coefficient_system_h(X, ROGElement(3, coeffs))
    assert cs.functor.check() == []
    _, vecs = fixed_point_basis(cs)
    assert same_span(vecs, parity_span(cs), len(cs.top_basis), F7)


def test_coefficient_system_rejects_bad_rings():
    with pytest.raises(ValueError):
        coefficient_system_h(ProjectiveSpace(3, GroundRing.field(3)), ROGElement.zero(3))
    with pytest.raises(ValueError):
        coefficient_system_h(ProjectiveSpace(2, F7), ROGElement.zero(2))
