"""Finite EI-categories, coefficient systems over them, and natural transformations.

The main instance is the fundamental category of B_{C_p}Z/2 (trivial action):
two objects, the fixed orbit ``bullet`` and the free orbit ``free``, with

* End(bullet) = {id, kappa}, kappa^2 = id;
* Hom(free, bullet) = {rho0, rho1}, kappa . rho_i = rho_{1-i};
* End(free) = C_p x Z/2, and rho_i . (g^a, e) = rho_{i+e mod 2}.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from . import linalg as la
from .grading import ROGElement, dims
from .modules import Constraint, FGModule, HomSpace, solve_hom_system
from .projective import ProjectiveSpace
from .rings import GroundRing

BULLET, FREE = "bullet", "free"


@dataclass(frozen=True)
class Morphism:
    source: str
    target: str
    label: tuple


@dataclass
class FiniteEICategory:
    objects: list
    morphisms: list
    table: dict  # (f, g) -> f . g  (apply g first)

    def hom(self, x: str, y: str) -> list:
        return [m for m in self.morphisms if m.source == x and m.target == y]

    def identity(self, x: str) -> Morphism:
        for m in self.hom(x, x):
            if all(self.table[(m, g)] == g for g in self.morphisms if g.target == x):
                return m
        raise LookupError(f"no identity on {x}")

    def compose(self, f: Morphism, g: Morphism) -> Morphism:
        if g.target != f.source:
            raise ValueError("morphisms are not composable")
        return self.table[(f, g)]

    def check(self) -> list[str]:
        """Associativity, unitality and the EI property, checked on the table."""
        problems = []
        for f, g, h in iproduct(self.morphisms, repeat=3):
            if g.target == f.source and h.target == g.source:
                if self.compose(self.compose(f, g), h) != self.compose(f, self.compose(g, h)):
                    problems.append(f"associativity fails at {f.label},{g.label},{h.label}")
        for x in self.objects:
            try:
                e = self.identity(x)
            except LookupError as exc:
                problems.append(str(exc))
                continue
            for m in self.hom(x, x):
                if not any(self.compose(m, n) == e and self.compose(n, m) == e for n in self.hom(x, x)):
                    problems.append(f"endomorphism {m.label} of {x} is not invertible")
        return problems


def build_pi_bz2(p: int) -> FiniteEICategory:
    if p == 2 or p < 2:
        raise ValueError("the fundamental category is built for odd p")
    ids = Morphism(BULLET, BULLET, ("id",))
    kap = Morphism(BULLET, BULLET, ("kappa",))
    rhos = [Morphism(FREE, BULLET, ("rho", i)) for i in range(2)]
    ends = {(a, e): Morphism(FREE, FREE, ("g", a, e)) for a in range(p) for e in range(2)}
    table: dict = {}
    bul = {0: ids, 1: kap}
    for i, j in iproduct(range(2), repeat=2):
        table[(bul[i], bul[j])] = bul[(i + j) % 2]
    for i, r in enumerate(range(2)):
        for k in range(2):
            table[(bul[k], rhos[i])] = rhos[(i + k) % 2]
    for i in range(2):
        for (a, e), g in ends.items():
            table[(rhos[i], g)] = rhos[(i + e) % 2]
    for (a, e), g in ends.items():
        for (b, f), h in ends.items():
            table[(g, h)] = ends[((a + b) % p, (e + f) % 2)]
    morphisms = [ids, kap] + rhos + list(ends.values())
    return FiniteEICategory([BULLET, FREE], morphisms, table)


@dataclass
class EIFunctor:
    """A contravariant functor: f: X -> Y acts as a matrix F(Y) -> F(X)."""

    category: FiniteEICategory
    ring: GroundRing
    values: dict  # object -> FGModule
    action: dict  # morphism -> matrix
    name: str = ""
    labels: dict = field(default_factory=dict)  # object -> basis labels

    def check(self) -> list[str]:
        problems = []
        C = self.category
        for f in C.morphisms:
            M = self.action[f]
            if M.shape != (self.values[f.source].ngens, self.values[f.target].ngens):
                problems.append(f"wrong shape for {f.label}")
        for f, g in iproduct(C.morphisms, repeat=2):
            if g.target == f.source:
                lhs = self.action[C.compose(f, g)]
                rhs = self.action[g] @ self.action[f]
                if not la.equal(lhs, rhs, self.ring):
                    problems.append(f"functoriality fails at {f.label} . {g.label}")
        for x in C.objects:
            if not la.equal(self.action[C.identity(x)], la.identity(self.values[x].ngens), self.ring):
                problems.append(f"identity on {x} does not act trivially")
        return problems


def constant_functor(C: FiniteEICategory, ring: GroundRing) -> EIFunctor:
    one = FGModule.free(ring, 1)
    return EIFunctor(C, ring, {x: one for x in C.objects},
                     {f: la.identity(1) for f in C.morphisms}, "constant")


def representable(C: FiniteEICategory, ring: GroundRing, obj: str) -> EIFunctor:
    """X -> k[C(X, obj)], acting by precomposition."""
    bases = {x: C.hom(x, obj) for x in C.objects}
    action = {}
    for f in C.morphisms:
        src, tgt = bases[f.target], bases[f.source]
        M = la.zeros(len(tgt), len(src))
        for j, h in enumerate(src):
            M[tgt.index(C.compose(h, f)), j] = 1
        action[f] = M
    values = {x: FGModule.free(ring, len(b)) for x, b in bases.items()}
    labels = {x: [m.label for m in b] for x, b in bases.items()}
    return EIFunctor(C, ring, values, action, f"representable({obj})", labels)


def functor_hom(F: EIFunctor, G: EIFunctor) -> HomSpace:
    """Natural transformations F -> G as the solution space of the naturality equations."""
    C = F.category
    objs = list(C.objects)
    blocks = [(F.values[x], G.values[x]) for x in objs]
    cons = []
    for f in C.morphisms:
        a, b = objs.index(f.source), objs.index(f.target)
        # eta_X . F(f) = G(f) . eta_Y
        n = G.values[f.source].ngens
        cons.append(Constraint(G.values[f.source], [
            (a, la.identity(n), F.action[f]),
            (b, -G.action[f], la.identity(F.values[f.target].ngens)),
        ]))
    return solve_hom_system(blocks, cons)


@dataclass
class Splitting:
    change_of_basis: np.ndarray
    constant: EIFunctor
    sign: EIFunctor
    idempotent: dict  # object -> projection onto the constant summand
    representable: EIFunctor


def split_representable(q: int, p: int) -> Splitting:
    """Split k Pi(-, bullet) into the constant functor and a sign functor."""
    if q == 2:
        raise ValueError("the splitting needs q != 2 (it inverts 2)")
    ring = GroundRing.field(q)
    C = build_pi_bz2(p)
    Rep = representable(C, ring, BULLET)
    P = la.mat([[1, 1], [1, -1]])
    Pinv = la.inverse(P, ring)
    const_action, sign_action = {}, {}
    for f in C.morphisms:
        M = la.reduce(Pinv @ Rep.action[f] @ P, ring)
        if M[0, 1] or M[1, 0]:
            raise ArithmeticError(f"change of basis does not split {f.label}")
        const_action[f] = M[:1, :1]
        sign_action[f] = M[1:, 1:]
    one = FGModule.free(ring, 1)
    const = EIFunctor(C, ring, {x: one for x in C.objects}, const_action, "constant summand")
    sign = EIFunctor(C, ring, {x: one for x in C.objects}, sign_action, "sign summand")
    E = la.reduce(P @ la.mat([[1, 0], [0, 0]]) @ Pinv, ring)
    return Splitting(P, const, sign, {x: E for x in C.objects}, Rep)


@dataclass
class CoefficientSystem:
    functor: EIFunctor
    degree: ROGElement
    top_basis: list  # (j, n, point basis name)
    bottom_basis: list  # (j, n)


def coefficient_system_h(X: ProjectiveSpace, alpha: ROGElement) -> CoefficientSystem:
    """The local system alpha -> H^alpha of the fibre CP(U), over the fundamental category.

    Bullet gets the top level of the free module on D_j C^n, the free orbit
    the bottom level. kappa acts on D_j C^n by (-1)^(j+n), the Z/2 factor
    at the free orbit by (-1)^m on z^m, and rho0 is restriction.
    """
    p, ring, pt = X.p, X.ring, X.point
    if p == 2 or ring.characteristic in (2, p) or not ring.is_field:
        raise ValueError("needs odd primes p != q")
    C = build_pi_bz2(p)
    top, bottom = [], []
    for j, n in X.monomials_in_degree(alpha):
        beta = X.coefficient_degree(alpha, j, n)
        for name in pt.top_basis(beta):
            top.append((j, n, name))
        if pt.bottom_basis(beta):
            bottom.append((j, n))
    nt, nb = len(top), len(bottom)
    r = la.zeros(nb, nt)
    for col, (j, n, name) in enumerate(top):
        beta = X.coefficient_degree(alpha, j, n)
        val = pt.restriction_value(pt.element(beta, name)).get(beta, 0)
        if val:
            r[bottom.index((j, n)), col] = val
    kappa_top = la.mat(np.diag([(-1) ** (j + n) for j, n, _ in top]).tolist(), (nt, nt)) if nt else la.zeros(0, 0)
    flip_bottom = la.mat(np.diag([(-1) ** (j + p * n) for j, n in bottom]).tolist(), (nb, nb)) if nb else la.zeros(0, 0)
    action = {}
    for f in C.morphisms:
        kind = f.label[0]
        if kind == "id":
            action[f] = la.identity(nt)
        elif kind == "kappa":
            action[f] = kappa_top
        elif kind == "rho":
            action[f] = r if f.label[1] == 0 else la.reduce(r @ kappa_top, ring)
        else:
            _, a, e = f.label
            action[f] = flip_bottom if e else la.identity(nb)
    values = {BULLET: FGModule.free(ring, nt), FREE: FGModule.free(ring, nb)}
    labels = {BULLET: top, FREE: bottom}
    F = EIFunctor(C, ring, values, {f: la.reduce(M, ring) for f, M in action.items()},
                  f"H^{alpha}", labels)
    return CoefficientSystem(F, alpha, top, bottom)


def fixed_point_basis(cs: CoefficientSystem) -> tuple[HomSpace, list]:
    """Natural transformations from the constant functor, and their values at bullet."""
    F = cs.functor
    H = functor_hom(constant_functor(F.category, F.ring), F)
    objs = F.category.objects
    vecs = [g[objs.index(BULLET)][:, 0].tolist() for g in H.gens]
    return H, vecs


def parity_span(cs: CoefficientSystem) -> list:
    """Unit vectors on the top basis elements c D_j C^n with j + n even."""
    n = len(cs.top_basis)
    out = []
    for i, (j, k, _) in enumerate(cs.top_basis):
        if (j + k) % 2 == 0:
            v = [0] * n
            v[i] = 1
            out.append(v)
    return out


def same_span(a: list, b: list, n: int, ring: GroundRing) -> bool:
    if not n:
        return True
    A = la.mat(a, (len(a), n)) if a else la.zeros(0, n)
    B = la.mat(b, (len(b), n)) if b else la.zeros(0, n)
    ra, rb = la.rank(A.T, ring) if len(a) else 0, la.rank(B.T, ring) if len(b) else 0
    if ra != rb:
        return False
    if not ra:
        return True
    both = np.concatenate([A, B], axis=0)
    return la.rank(both.T, ring) == ra
