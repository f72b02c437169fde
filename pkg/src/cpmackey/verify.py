"""Named verification suites. Each returns a list of claims with pass/fail flags.

A claim records what was checked, which theorem it instantiates and whether it
held. The CLI's ``verify`` command and the acceptance tests both use these.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from itertools import product as iproduct

from . import linalg as la
from .cells import Cell, CellComplex, check_freeness, omega, schubert_cells
from .grading import ROGElement, dims
from .mackey import is_morphism, iso, multiplication_table, stabilized_witness, twisted_iso, twisted_plus_bracket
from .point import BOTTOM, PointRing
from .rings import GroundRing

SUITES = ("mackey-table", "point-ring", "freeness", "cpv", "bo2", "ext")

TAGS = {
    "table": "box products of the standard Mackey functors",
    "twisted": "classification of twisted Burnside functors",
    "stable": "twisted Burnside functors agree after adding a bracket summand",
    "point-additive": "additive structure of the cohomology of a point",
    "point-ring": "Green functor structure of the cohomology of a point",
    "freeness": "even-cell freeness theorem",
    "schubert": "Schubert cell structure of complex projective space",
    "cpv-products": "products in complex projective space are detected by restriction and fixed points",
    "cpv-support": "D_j D_k only involves D_i C^s with i <= j+k",
    "bo2": "cohomology of B_{C_p}O(2) is the subalgebra on D_j C^n with j+n even",
    "ext": "Ext over Z[Z/2] with twisted polynomial coefficients",
    "bo2-nonequivariant": "cohomology of BO(2) from its Serre spectral sequence",
}


@dataclass
class Claim:
    claim: str
    tag: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"claim": self.claim, "theorem": TAGS[self.tag], "pass": self.passed, "detail": self.detail}


def seed() -> int:
    """Seed for sampled checks, from MACKEY_SEED (default 0)."""
    return int(os.environ.get("MACKEY_SEED", "0"))


# ---------------------------------------------------------------------------
# Mackey functors


def twisted_criterion(d1: int, d2: int, p: int) -> bool:
    """d1 = u*d2 + p*x for a unit u in {1, -1}."""
    return (d1 - d2) % p == 0 or (d1 + d2) % p == 0


def mackey_table_suite(p: int, ring: GroundRing, dmax: int = 20) -> list[Claim]:
    claims = []
    for cell in multiplication_table(ring, p):
        name = f"{cell.row} box {cell.col} (c={cell.c}, d={cell.d}) = {cell.expected}"
        claims.append(Claim(name, "table", cell.passed, {"status": cell.status, "note": cell.note}))
    if ring.kind == "Z" and p > 2:
        claims += twisted_suite(p, dmax)
    return claims


def twisted_suite(p: int, dmax: int = 20) -> list[Claim]:
    """Twisted Burnside isomorphism classes and the stabilized witnesses over Z."""
    ring = GroundRing.integers()
    wrong = [(d1, d2) for d1 in range(1, dmax + 1) for d2 in range(1, dmax + 1)
             if (twisted_iso(d1, d2, ring, p) is not None) != twisted_criterion(d1, d2, p)]
    claims = [Claim(f"twisted_iso matches d1 = +-d2 mod {p} for d1, d2 <= {dmax}", "twisted",
                    not wrong, {"mismatches": wrong[:10]})]
    bad = []
    for d1, d2 in iproduct(range(1, dmax + 1), repeat=2):
        if d1 % p == 0 or d2 % p == 0:
            continue
        W = stabilized_witness(d1, d2, p)
        M, N = twisted_plus_bracket(ring, p, d1), twisted_plus_bracket(ring, p, d2)
        if la.det(W) != 1 or not is_morphism(M, N, W, la.identity(M.bottom.ngens)):
            bad.append((d1, d2))
    claims.append(Claim(f"stabilized witnesses have determinant 1 and commute, d1, d2 <= {dmax}", "stable",
                        not bad, {"failures": bad[:10]}))
    return claims


# ---------------------------------------------------------------------------
# Point cohomology


def point_identities(P: PointRing) -> list[tuple[str, bool]]:
    """The named identities that apply to P.p."""
    out = []
    E = lambda *c: ROGElement(P.p, tuple(c))  # noqa: E731
    if P.p == 2:
        z = E(0, 0)
        kappa = P.element(z, "kappa")
        out.append(("kappa^2 = 2 kappa", P.multiply(kappa, kappa) == P.scale(2, kappa)))
        eps = P.element(E(0, 1), "eps^1")
        eps_inv_kappa = P.element(E(0, -1), "eps^-1kappa")
        out.append(("eps * (eps^-1 kappa) = kappa", P.multiply(eps, eps_inv_kappa) == kappa))
        out.append(("iota * iota^-1 = r(1)",
                    P.multiply(P.iota(E(1, -1)), P.iota(E(-1, 1))) == P.restrict(P.one())))
        xi = P.element(E(-2, 2), "xi^1")
        out.append(("r(xi) = iota^-2", P.restrict(xi) == P.iota(E(-2, 2))))
    elif P.p >= 5:
        from .grading import d_in_ring
        a = ROGElement.lam(P.p, 2) - ROGElement.lam(P.p, 1)
        prod = P.multiply(P.element(a, "mu"), P.element(-a, "mu"))
        # twists read in the ground ring, matching how mu is normalized there
        num = d_in_ring(a, P.ring) * d_in_ring(-a, P.ring) - d_in_ring(P.zero_degree(), P.ring)
        coeff = num // P.p if P.ring.kind == "Z" else P.ring.reduce(num * P.ring.inverse(P.p))
        zero = P.zero_degree()
        want = P.add(P.element(zero, "mu"), P.element(zero, "t(iota)", coeff))
        out.append((f"mu * mu = mu + {coeff} t(iota) in degree 0 (coefficient (d(a)d(b)-d(a+b))/p)", prod == want))
    return out


def point_axioms(P: PointRing, bound: int = 8, triple_bound: int = 4) -> dict:
    """Failures of the Green functor axioms; pairs up to ``bound``, triples up to ``triple_bound``."""
    dim_of: dict = {}

    def in_window(*classes) -> bool:
        f = n = 0
        for c in classes:
            d = dim_of.get(id(c))
            if d is None:
                (deg,) = c.degrees() or {P.zero_degree()}
                d = dim_of[id(c)] = dims(deg)
            f, n = f + d[0], n + d[1]
        return abs(f) <= bound and abs(n) <= bound

    els = [x for a in P.degrees(bound) for x in P.basis_elements(a)]
    bots = [x for a in P.degrees(bound) for x in P.basis_elements(a, BOTTOM)]
    small = [x for a in P.degrees(triple_bound) for x in P.basis_elements(a)]
    one = P.one()
    fails: dict = {"unit": [], "commutativity": [], "frobenius": [], "restriction": [], "associativity": []}
    for x in els:
        if P.multiply(one, x) != x or P.multiply(x, one) != x:
            fails["unit"].append(str(x))
    for x, y in iproduct(els, repeat=2):
        if not in_window(x, y):
            continue
        if not P.commutativity_holds(x, y):
            fails["commutativity"].append((str(x), str(y)))
        if P.restrict(P.multiply(x, y)) != P.multiply(P.restrict(x), P.restrict(y)):
            fails["restriction"].append((str(x), str(y)))
    for w, x in iproduct(bots, els):
        if not in_window(w, x):
            continue
        if P.multiply(P.transfer(w), x) != P.transfer(P.multiply(w, P.restrict(x))):
            fails["frobenius"].append((str(w), str(x)))
    for x, y, z in iproduct(small, repeat=3):
        if not in_window(x, y, z):
            continue
        if P.multiply(P.multiply(x, y), z) != P.multiply(x, P.multiply(y, z)):
            fails["associativity"].append((str(x), str(y), str(z)))
    return fails


def point_additive(P: PointRing, bound: int) -> list:
    """Degrees where the computed Mackey functor is not isomorphic to the standard one."""
    bad = []
    for a in P.degrees(bound, spread=1 if P.p > 2 else 0):
        if not iso(P.mackey_functor(a), P.standard_functor(a)).found:
            bad.append(str(a))
    return bad


def point_ring_suite(p: int, ring: GroundRing, bound: int = 8, triple_bound: int = 4) -> list[Claim]:
    P = PointRing(p, ring)
    claims = []
    bad = point_additive(P, min(bound, 6))
    claims.append(Claim(f"each degree with |dims| <= {min(bound, 6)} is the standard functor of its region",
                        "point-additive", not bad, {"failures": bad[:10]}))
    fails = point_axioms(P, bound, triple_bound)
    for axiom, items in fails.items():
        window = triple_bound if axiom == "associativity" else bound
        claims.append(Claim(f"{axiom} on basis classes with |dims| <= {window}", "point-ring",
                            not items, {"failures": [str(i) for i in items[:5]]}))
    for name, ok in point_identities(P):
        claims.append(Claim(name, "point-ring", ok))
    return claims


# ---------------------------------------------------------------------------
# Freeness


def ordering_violation(p: int) -> CellComplex:
    """A cell of total dimension 4 with no fixed part attached after a 2-dimensional fixed cell."""
    big = ROGElement.lam(p, 1) * 2 if p > 2 else ROGElement(2, (0, 4))
    small = ROGElement.trivial(p, 2)
    return CellComplex(GroundRing.integers(), p, [Cell(V=ROGElement.zero(p), filtration=0),
                                                   Cell(V=small, filtration=1), Cell(V=big, filtration=2)])


def freeness_suite(p: int) -> list[Claim]:
    claims = []
    rep = check_freeness(schubert_cells(p, 3 * p))
    claims.append(Claim(f"schubert_cells({p}, {3 * p}) satisfies the freeness hypotheses", "freeness",
                        rep.ok, rep.to_json()))
    rep = check_freeness(ordering_violation(p))
    claims.append(Claim("a cell with larger dimension but smaller fixed dimension is rejected", "freeness",
                        not rep.ok and rep.violated == "dimension-ordering", rep.to_json()))
    wrong = [N for N in range(3 * p) if dims(omega(p, N)) != (2 * (N // p), 2 * N)]
    claims.append(Claim(f"dims(omega_N) = (2 floor(N/p), 2N) for N < {3 * p}", "schubert", not wrong,
                        {"failures": wrong}))
    return claims


# ---------------------------------------------------------------------------
# Projective space


def cpv_suite(p: int, q: int, max_degree: int = 3) -> list[Claim]:
    from .projective import InconsistentProduct, ProjectiveSpace, UnderdeterminedProduct

    X = ProjectiveSpace(p, GroundRing.field(q))
    claims = []
    if p == 2:
        pt = X.point
        got = X.product(X.D(1), X.D(1))
        want = X.add(X.monomial(1, 0, pt.element(ROGElement(2, (0, 2)), "eps^2")),
                     X.monomial(0, 1, pt.element(ROGElement(2, (-2, 2)), "xi^1")))
        claims.append(Claim("D1 * D1 = eps^2 D1 + xi C", "cpv-products", got == want, {"product": str(got)}))
    oracle_bad, unsolved, support_bad = [], [], []
    for j, k in iproduct(range(p), repeat=2):
        for n, m in iproduct(range(max_degree + 1), repeat=2):
            if n + m > max_degree:
                continue
            x, y = X.monomial(j, n), X.monomial(k, m)
            try:
                z = X.product(x, y)
            except (UnderdeterminedProduct, InconsistentProduct) as exc:
                unsolved.append(str(exc))
                continue
            if X.images(z) != X.image_product(X.images(x), X.images(y)):
                oracle_bad.append((j, n, k, m))
            if any(i + p * s > j + k + p * (n + m) for i, s in z.terms):
                support_bad.append((j, n, k, m))
    claims.append(Claim(f"every product D_jC^n * D_kC^m with n+m <= {max_degree} is uniquely solvable",
                        "cpv-products", not unsolved, {"failures": unsolved[:5]}))
    claims.append(Claim("restriction and fixed-point images of each product equal the products of images",
                        "cpv-products", not oracle_bad, {"failures": oracle_bad[:5]}))
    claims.append(Claim("products stay within monomials D_iC^s with i + ps <= j + k + p(n+m)", "cpv-support",
                        not support_bad, {"failures": support_bad[:5]}))
    return claims


# ---------------------------------------------------------------------------
# B_{C_p}O(2)


def bo2_factorization(X, j: int, n: int):
    """D_j C^n (j+n even) as a product of subalgebra generators: (factor names, product)."""
    gens = dict(X.bo2_generators())
    if j == 0:
        names = ["C^2"] * (n // 2)
    elif j % 2 == 0:
        names = [f"D{j}"] + ["C^2"] * (n // 2)
    else:
        names = [f"D{j}C"] + ["C^2"] * ((n - 1) // 2)
    out = X.one()
    for name in names:
        out = X.product(out, gens[name])
    return names, out


def bo2_degree_report(X, alpha: ROGElement) -> dict:
    from .eicat import coefficient_system_h, fixed_point_basis, parity_span, same_span

    cs = coefficient_system_h(X, alpha)
    problems = cs.functor.check()
    H, vecs = fixed_point_basis(cs)
    expected = parity_span(cs)
    ok = not problems and same_span(vecs, expected, len(cs.top_basis), X.ring)
    basis = [f"{name}*D{j}C^{n}" for (j, n, name) in cs.top_basis if (j + n) % 2 == 0]
    return {"degree": str(alpha), "dims": list(dims(alpha)), "fixed_rank": len(vecs), "basis": basis,
            "matches_subalgebra": ok, "functor_problems": problems}


def bo2_suite(p: int, q: int, max_degree: int = 12) -> list[Claim]:
    from .projective import ProjectiveSpace

    if p == q:
        raise ValueError("q must differ from p")
    X = ProjectiveSpace(p, GroundRing.field(q))
    bad, count = [], 0
    monomials = set()
    for alpha in X.point.degrees(max_degree):
        rep = bo2_degree_report(X, alpha)
        count += 1
        if not rep["matches_subalgebra"]:
            bad.append(rep["degree"])
        for j, n in X.monomials_in_degree(alpha):
            if (j + n) % 2 == 0 and dims(X.monomial_degree(j, n))[1] <= max_degree:
                monomials.add((j, n))
    claims = [Claim(f"fixed points equal the span of D_jC^n with j+n even, {count} degrees with |dims| <= {max_degree}",
                    "bo2", not bad, {"failures": bad[:10]})]
    gens = [name for name, _ in X.bo2_generators()]
    unfactored = []
    for j, n in sorted(monomials):
        names, prod = bo2_factorization(X, j, n)
        if prod != X.monomial(j, n):
            unfactored.append(f"D{j}C^{n}")
    claims.append(Claim(f"each D_jC^n with j+n even factors over {gens}", "bo2", not unfactored,
                        {"monomials": len(monomials), "failures": unfactored[:10]}))
    return claims


# ---------------------------------------------------------------------------
# Ext


def ext_suite(ring: GroundRing, smax: int = 10, tmax: int = 10, nmax: int = 20) -> list[Claim]:
    from .homalg import bo2_field, bo2_integral, ext_ring, predicted_bo2_group, sign_polynomial_algebra

    claims = []
    if ring.kind == "Z":
        data = bo2_integral(smax, tmax)
        page = data["page"]
        wrong = [(s, t) for s in range(smax + 1) for t in range(tmax + 1)
                 if tuple(page.group(s, t).orders()) != predicted_bo2_group(s, t)]
        claims.append(Claim(f"Ext^s(Z, Z[x]^t) for s, t <= {smax}, {tmax}: Z at (0,4k), Z/2 at s>0 even with 4|t "
                            "and at s odd with t = 2 mod 4", "ext", not wrong, {"failures": wrong[:10]}))
        R = data["ring"]
        gens = data["generators"]
        for name in ("alpha", "beta"):
            s, t, c = gens[name]
            order = R.group(s, t).orders[0]
            claims.append(Claim(f"2 {name} = 0", "ext", order == 2 and (2 * c[0]) % order == 0))
        claims.append(Claim("beta^2 = p1 alpha", "ext", data["beta_squared"] == data["p1_alpha"] != (),
                            {"beta^2": list(data["beta_squared"]), "p1*alpha": list(data["p1_alpha"])}))
        Rr = ext_ring(sign_polynomial_algebra(ring), smax, tmax, reverse=True)
        b = Rr.generator(1, 2)
        same = Rr.multiply(b, b) == Rr.multiply(Rr.generator(0, 4), Rr.generator(2, 0)) == data["beta_squared"]
        claims.append(Claim("products agree under the reversed pivot order", "ext", same))
        rep = data["collapse"]
        claims.append(Claim("only d3(beta) survives the bidegree and Leibniz arguments; the certificate "
                            "H3(BO(2);Z) != 0 removes it", "bo2-nonequivariant",
                            rep.residual == [(3, "beta")] and rep.collapses, rep.to_json()))
    else:
        data = bo2_field(ring.characteristic, nmax)
        wrong = [n for n, d in data["totals"].items() if d != (1 if n % 4 == 0 else 0)]
        claims.append(Claim(f"H^n(BO(2); {ring.name}) = {ring.name} exactly when 4 | n, n <= {nmax}",
                            "bo2-nonequivariant", not wrong and data["collapse"].collapses,
                            {"totals": {str(k): v for k, v in data["totals"].items()}}))
    return claims


# ---------------------------------------------------------------------------
# Sampled oracles for the linear algebra


def random_systems(rng: random.Random, count: int, box: int = 4, maxdim: int = 3):
    for _ in range(count):
        m, n = rng.randint(1, maxdim), rng.randint(1, maxdim)
        A = [[rng.randint(-box, box) for _ in range(n)] for _ in range(m)]
        x = [rng.randint(-box, box) for _ in range(n)]
        if rng.random() < 0.5:
            b = [sum(A[i][j] * x[j] for j in range(n)) for i in range(m)]
        else:
            b = [rng.randint(-box, box) for _ in range(m)]
        yield A, b
