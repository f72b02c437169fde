"""Products in the cohomology of equivariant complex projective space."""

from itertools import product as iproduct

import pytest
from hypothesis import given, strategies as st

from cpmackey.grading import ROGElement, dims
from cpmackey.projective import ProjectiveSpace, bo2_member
from cpmackey.rings import GroundRing

F3, F7 = GroundRing.field(3), GroundRing.field(7)


@pytest.fixture(scope="module")
def cp2():
    return ProjectiveSpace(2, F3)


@pytest.fixture(scope="module")
def cp3():
    return ProjectiveSpace(3, F7)


def test_p2_square_of_d1(cp2):
    # [PAPER] D1^2 = eps^2 D1 + xi C
    pt = cp2.point
    want = cp2.add(cp2.monomial(1, 0, pt.element(ROGElement(2, (0, 2)), "eps^2")),
                   cp2.monomial(0, 1, pt.element(ROGElement(2, (-2, 2)), "xi^1")))
    assert cp2.product(cp2.D(1), cp2.D(1)) == want


def test_monomial_degrees(cp3):
    # [DERIVED] D_j has fixed dim 0 for j < p, C has fixed dim 2
    assert dims(cp3.monomial_degree(1, 0)) == (0, 2)
    assert dims(cp3.monomial_degree(2, 0)) == (0, 4)
    assert dims(cp3.monomial_degree(0, 1)) == (2, 6)
    assert dims(cp3.monomial_degree(1, 2)) == (4, 14)


def test_unit(cp3):
    for j, n in iproduct(range(3), range(3)):
        x = cp3.monomial(j, n)
        assert cp3.product(cp3.one(), x) == x


def test_products_are_commutative_and_match_images(cp3):
    for j, k in iproduct(range(3), repeat=2):
        for n, m in [(0, 0), (0, 1), (1, 1)]:
            x, y = cp3.monomial(j, n), cp3.monomial(k, m)
            z = cp3.product(x, y)
            assert z == cp3.product(y, x)
            assert cp3.images(z) == cp3.image_product(cp3.images(x), cp3.images(y))


def test_c_powers(cp3):
    # [TRIVIAL] C^n is a monomial, so C * C^n = C^(n+1)
    for n in range(3):
        assert cp3.product(cp3.C(1), cp3.C(n)) == cp3.C(n + 1)


def test_restriction_is_underlying_polynomial_ring(cp3):
    # [DERIVED] D_j C^n restricts to z^(j + pn)
    for j, n in iproduct(range(3), range(3)):
        assert cp3.rho_star(cp3.monomial(j, n)) == {j + 3 * n: 1}


@given(st.integers(0, 2), st.integers(0, 1), st.integers(0, 2), st.integers(0, 1), st.integers(0, 2), st.integers(0, 1))
def test_associativity(a, n, b, m, c, r):
    X = _shared()
    x, y, z = X.monomial(a, n), X.monomial(b, m), X.monomial(c, r)
    assert X.product(X.product(x, y), z) == X.product(x, X.product(y, z))


_cache: dict = {}


def _shared():
    if "X" not in _cache:
        _cache["X"] = ProjectiveSpace(3, F7)
    return _cache["X"]


def test_bo2_generators(cp3):
    gens = dict(cp3.bo2_generators())
    assert sorted(gens) == ["C^2", "D1C", "D2"]
    assert all(bo2_member(x) for x in gens.values())


def _even_monomials(p, nmax=2):
    return [(j, n) for j in range(p) for n in range(nmax + 1) if (j + n) % 2 == 0]


@pytest.mark.xfail(strict=True, reason="D2 * D1C picks up 2*eps*D2C; see the decisions ledger")
def test_bo2_closure_by_monomial_parity(cp3):
    for a, b in iproduct(_even_monomials(3), repeat=2):
        assert bo2_member(cp3.product(cp3.monomial(*a), cp3.monomial(*b)))


def _eps_power(coeff):
    powers = {sum(t["alpha"][1:]) if t["gen"] == "eps" else 0 for t in coeff.to_json()["terms"]}
    assert len(powers) == 1
    return powers.pop()


@pytest.mark.parametrize("p,q", [(3, 7), (5, 11)])
def test_bo2_closure_up_to_euler_class_sign(p, q):
    # [DERIVED] every odd monomial in a product of even ones carries an odd power of eps
    X = ProjectiveSpace(p, GroundRing.field(q))
    for a, b in iproduct(_even_monomials(p), repeat=2):
        z = X.product(X.monomial(*a), X.monomial(*b))
        for (j, n), c in z.terms.items():
            assert (j + n + _eps_power(c)) % 2 == 0, (a, b, (j, n), str(c))


def test_products_need_good_field():
    with pytest.raises(ValueError):
        ProjectiveSpace(3, GroundRing.field(3)).product(ProjectiveSpace(3, F7).D(1), ProjectiveSpace(3, F7).D(1))
    with pytest.raises(ValueError):
        ProjectiveSpace(3, F7).monomial(3, 0)


def test_folded_convention_is_available():
    X = ProjectiveSpace(5, GroundRing.field(11), convention="folded")
    z = X.product(X.D(1), X.D(2))
    assert X.images(z) == X.image_product(X.images(X.D(1)), X.images(X.D(2)))
