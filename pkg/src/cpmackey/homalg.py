"""Homological algebra over group rings k[pi] for small finite groups.

Modules are free k-modules with matrices for the group action (column
vectors, left action). Maps of group-ring modules are matrices commuting with
the actions. The ground ring is Z or a prime field.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct
from typing import Callable

import numpy as np

from . import linalg as la
from .modules import FGModule
from .rings import GroundRing


# ---------------------------------------------------------------------------
# Groups


@dataclass(frozen=True)
class FiniteGroup:
    """Elements 0..n-1 with 0 the identity; ``table[a][b]`` is a*b."""

    table: tuple
    generators: tuple
    name: str = ""

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return next(b for b in range(self.order) if self.table[a][b] == 0)

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
        return FiniteGroup(table, (1,) if n > 1 else (), f"C{n}")

    def product(self, other: "FiniteGroup") -> "FiniteGroup":
        m = other.order
        n = self.order * m
        table = tuple(tuple(self.mul(a // m, b // m) * m + other.mul(a % m, b % m) for b in range(n))
                      for a in range(n))
        gens = tuple(g * m for g in self.generators) + tuple(h for h in other.generators)
        return FiniteGroup(table, gens, f"{self.name}x{other.name}")

    def is_cyclic(self) -> bool:
        return len(self.generators) <= 1

    def check(self) -> bool:
        n = self.order
        return all(self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                   for a, b, c in iproduct(range(n), repeat=3)) and all(self.mul(0, a) == a == self.mul(a, 0)
                                                                          for a in range(n))


# ---------------------------------------------------------------------------
# Modules


@dataclass
class GroupRingModule:
    ring: GroundRing
    group: FiniteGroup
    rank: int
    action: dict  # generator -> matrix
    free_rank: int | None = None  # set when the module is k[pi]^m in the standard basis
    name: str = ""
    _rep_cache: dict = field(default_factory=dict, repr=False)

    def rep(self, g: int) -> np.ndarray:
        """Matrix of an arbitrary group element, built from the generators."""
        if not self._rep_cache:
            cache = {0: la.identity(self.rank)}
            frontier = [0]
            while frontier:
                nxt = []
                for h in frontier:
                    for s in self.group.generators:
                        k = self.group.mul(s, h)
                        if k not in cache:
                            cache[k] = la.reduce(self.action[s] @ cache[h], self.ring)
                            nxt.append(k)
                frontier = nxt
            self._rep_cache.update(cache)
        return self._rep_cache[g]

    def check(self) -> list[str]:
        problems = []
        for g in range(self.group.order):
            for h in range(self.group.order):
                if not la.equal(la.reduce(self.rep(g) @ self.rep(h), self.ring), self.rep(self.group.mul(g, h)), self.ring):
                    problems.append(f"action fails the table at ({g},{h})")
                    return problems
        return problems

    def fixed_points(self) -> np.ndarray:
        if not self.rank:
            return la.zeros(0, 0)
        A = la.vstack([s_m - la.identity(self.rank) for s_m in (self.action[s] for s in self.group.generators)],
                      self.rank) if self.group.generators else la.zeros(0, self.rank)
        return la.kernel(A, self.ring)

    def dual(self) -> "GroupRingModule":
        act = {s: la.reduce(self.rep(self.group.inverse(s)).T, self.ring) for s in self.group.generators}
        return GroupRingModule(self.ring, self.group, self.rank, act, self.free_rank, f"dual({self.name})")

    def tensor(self, other: "GroupRingModule") -> "GroupRingModule":
        """External tensor product over the product group."""
        G = self.group.product(other.group)
        act = {}
        m = other.group.order
        for s in self.group.generators:
            act[s * m] = la.kron(self.action[s], la.identity(other.rank))
        for h in other.group.generators:
            act[h] = la.kron(la.identity(self.rank), other.action[h])
        fr = None
        if self.free_rank is not None and other.free_rank is not None:
            fr = self.free_rank * other.free_rank
        return GroupRingModule(self.ring, G, self.rank * other.rank, act, fr, f"{self.name}(x){other.name}")

    def restrict(self, group: FiniteGroup, hom: Callable[[int], int]) -> "GroupRingModule":
        act = {s: self.rep(hom(s)) for s in group.generators}
        return GroupRingModule(self.ring, group, self.rank, act, None, self.name)

    @staticmethod
    def scalar(ring: GroundRing, group: FiniteGroup, eps: int = 1, name: str = "") -> "GroupRingModule":
        """Rank one, every generator acting by eps."""
        act = {s: la.mat([[ring.reduce(eps)]]) for s in group.generators}
        return GroupRingModule(ring, group, 1, act, None, name or ("k" if eps == 1 else f"k_{eps}"))

    @staticmethod
    def trivial(ring: GroundRing, group: FiniteGroup) -> "GroupRingModule":
        return GroupRingModule.scalar(ring, group, 1, "k")

    @staticmethod
    def zero(ring: GroundRing, group: FiniteGroup) -> "GroupRingModule":
        return GroupRingModule(ring, group, 0, {s: la.zeros(0, 0) for s in group.generators}, 0, "0")

    @staticmethod
    def regular(ring: GroundRing, group: FiniteGroup, m: int = 1) -> "GroupRingModule":
        """k[pi]^m with basis (copy, group element) and left multiplication."""
        n = group.order
        act = {}
        for s in group.generators:
            P = la.zeros(n, n)
            for h in range(n):
                P[group.mul(s, h), h] = 1
            act[s] = la.block_diag(*([P] * m)) if m else la.zeros(0, 0)
        return GroupRingModule(ring, group, n * m, act, m, f"k[{group.name}]^{m}")


def right_mult(ring: GroundRing, group: FiniteGroup, x: dict) -> np.ndarray:
    """Right multiplication by sum x[g] g on k[pi], a module endomorphism."""
    n = group.order
    M = la.zeros(n, n)
    for h in range(n):
        for g, c in x.items():
            M[group.mul(h, g), h] += c
    return la.reduce(M, ring)


def equivariant(A: GroupRingModule, B: GroupRingModule, F: np.ndarray) -> bool:
    ring = A.ring
    return all(la.equal(la.reduce(B.action[s] @ F, ring), la.reduce(F @ A.action[s], ring), ring)
               for s in A.group.generators)


def hom_basis(A: GroupRingModule, B: GroupRingModule) -> list:
    """A basis of Hom_{k[pi]}(A, B) as matrices (a saturated lattice over Z)."""
    ring = A.ring
    m, n = B.rank, A.rank
    if not m or not n:
        return []
    rows = []
    for s in A.group.generators:
        # B_s F - F A_s = 0, with F flattened row-major
        E = la.kron(B.action[s], la.identity(n)) - la.kron(la.identity(m), A.action[s].T)
        rows.append(E)
    if rows:
        K = la.kernel(la.vstack(rows, m * n), ring)
    else:
        K = la.identity(m * n)
    return [la.mat(list(K[:, k]), None).reshape(m, n) for k in range(K.shape[1])]


# ---------------------------------------------------------------------------
# Resolutions


class ResolutionError(ValueError):
    pass


@dataclass
class Resolution:
    """``projective``: P_0 <- P_1 <- ... with maps[s]: P_s -> P_{s-1} (maps[0] the augmentation).
    ``relatively-injective``: I^0 -> I^1 -> ... with maps[s]: I^s -> I^{s+1} and coaugmentation."""

    kind: str
    module: GroupRingModule
    terms: list
    maps: list
    augmentation: np.ndarray

    @property
    def length(self) -> int:
        return len(self.terms) - 1

    def check(self) -> list[str]:
        ring = self.module.ring
        problems = []
        if self.kind == "projective":
            chain = [self.augmentation] + self.maps[1:]
            spaces = [self.module] + self.terms
        else:
            chain = [self.augmentation] + self.maps
            spaces = [self.module] + self.terms
        # chain[i]: between spaces[i] and spaces[i+1] (direction depends on kind)
        for i, f in enumerate(chain):
            a, b = (spaces[i + 1], spaces[i]) if self.kind == "projective" else (spaces[i], spaces[i + 1])
            if f.shape != (b.rank, a.rank):
                problems.append(f"map {i} has shape {f.shape}, expected {(b.rank, a.rank)}")
                return problems
            if not equivariant(a, b, f):
                problems.append(f"map {i} is not equivariant")
        for i in range(len(chain) - 1):
            if self.kind == "projective":
                comp = la.reduce(chain[i] @ chain[i + 1], ring)
            else:
                comp = la.reduce(chain[i + 1] @ chain[i], ring)
            if not la.is_zero(comp, ring):
                problems.append(f"d^2 != 0 at {i}")
        if self.kind == "projective":
            if la.rank(self.augmentation, ring) < self.module.rank or not _surjective(self.augmentation, ring):
                problems.append("augmentation is not onto")
            for i in range(len(chain) - 1):
                if not _exact(chain[i], chain[i + 1], ring):
                    problems.append(f"not exact at P_{i}")
        else:
            if self.module.rank and la.kernel(self.augmentation, ring).shape[1]:
                problems.append("coaugmentation is not injective")
            for i in range(len(chain) - 1):
                if not _exact(chain[i + 1], chain[i], ring):
                    problems.append(f"not exact at I^{i}")
        return problems


def _surjective(f: np.ndarray, ring: GroundRing) -> bool:
    if f.shape[0] == 0:
        return True
    if ring.kind == "F":
        return la.rank(f, ring) == f.shape[0]
    D = la.snf_diagonal(f)
    return len(D) >= f.shape[0] and all(abs(d) == 1 for d in D[: f.shape[0]])


def _exact(out_map: np.ndarray, in_map: np.ndarray, ring: GroundRing) -> bool:
    """ker(out_map) == im(in_map) as sublattices (or subspaces)."""
    n = out_map.shape[1]
    if n == 0:
        return True
    K = la.kernel(out_map, ring) if out_map.shape[0] else la.identity(n)
    if K.shape[1] == 0:
        return la.is_zero(in_map, ring)
    if in_map.shape[1] == 0:
        return False
    for k in range(in_map.shape[1]):
        if la.solve_linear(K, list(in_map[:, k]), ring) is None:
            return False
    # every kernel vector must be a boundary
    for k in range(K.shape[1]):
        if la.solve_linear(in_map, list(K[:, k]), ring) is None:
            return False
    return True


def _scalar_of(M: GroupRingModule) -> int | None:
    if M.rank != 1:
        return None
    vals = {int(M.action[s][0, 0]) for s in M.group.generators}
    return vals.pop() if len(vals) == 1 else None


def projective_resolution(M: GroupRingModule, length: int) -> Resolution:
    """A resolution by free k[pi]-modules.

    Cyclic groups acting on a rank one module by a scalar use the periodic
    resolution (1 - e^{-1} s), N_e; free modules resolve themselves; anything
    else falls back to a kernel-by-kernel construction (sizes grow quickly).
    """
    ring, G = M.ring, M.group
    if M.free_rank is not None:
        return Resolution("projective", M, [M], [la.zeros(0, 0)], la.identity(M.rank))
    eps = _scalar_of(M)
    if G.is_cyclic() and G.order > 1 and eps is not None:
        n = G.order
        s = G.generators[0]
        e = ring.reduce(eps)
        if ring.reduce(e ** n - 1) != 0:
            raise ResolutionError("scalar action is not a representation of the group")
        einv = ring.inverse(e) if ring.kind != "Z" else e
        P = GroupRingModule.regular(ring, G)
        aug = la.mat([[ring.reduce(e ** k) for k in range(n)]])  # g^k -> e^k
        first = right_mult(ring, G, {0: 1, s: -einv})
        norm = right_mult(ring, G, {k: ring.reduce(einv ** k) for k in range(n)})
        maps = [aug] + [first if i % 2 == 1 else norm for i in range(1, length + 1)]
        return Resolution("projective", M, [P] * (length + 1), maps, aug)
    return _generic_projective(M, length)


def _generic_projective(M: GroupRingModule, length: int) -> Resolution:
    ring, G = M.ring, M.group
    n = G.order

    def cover(target: GroupRingModule, vectors: np.ndarray) -> tuple:
        m = vectors.shape[1]
        P = GroupRingModule.regular(ring, G, m)
        F = la.zeros(target.rank, n * m)
        for i in range(m):
            for g in range(n):
                F[:, i * n + g] = (target.rep(g) @ vectors[:, i : i + 1])[:, 0]
        return P, la.reduce(F, ring)

    P0, aug = cover(M, la.identity(M.rank))
    terms, maps = [P0], [aug]
    prev_map, prev = aug, P0
    for _ in range(length):
        K = la.kernel(prev_map, ring)
        if K.shape[1] == 0:
            break
        P, F = cover(prev, K)
        terms.append(P)
        maps.append(F)
        prev_map, prev = F, P
    return Resolution("projective", M, terms, maps, aug)


def semisimple(ring: GroundRing, group: FiniteGroup) -> bool:
    return ring.is_field and group.order % ring.characteristic != 0


def rel_injective_resolution(M: GroupRingModule, length: int) -> Resolution:
    """Dual of a projective resolution of the dual module; length 0 when k[pi] is semisimple."""
    ring = M.ring
    if ring.kind == "Zn":
        raise ResolutionError("the underlying module must be projective over a ring without zero divisors")
    if semisimple(ring, M.group):
        return Resolution("relatively-injective", M, [M], [], la.identity(M.rank))
    P = projective_resolution(M.dual(), length)
    terms = [t.dual() for t in P.terms]
    maps = [la.reduce(P.maps[s + 1].T, ring) for s in range(len(P.terms) - 1)]
    return Resolution("relatively-injective", M, terms, maps, la.reduce(P.augmentation.T, ring))


def tensor_of_resolutions(I1: Resolution, I2: Resolution) -> Resolution:
    """Total complex of I1 (x) I2 over the product group, differential d1 (x) 1 + (-1)^a 1 (x) d2."""
    if I1.kind != "relatively-injective" or I2.kind != "relatively-injective":
        raise ResolutionError("tensor_of_resolutions expects relatively injective resolutions")
    ring = I1.module.ring
    L = min(I1.length, I2.length)
    mods = {(a, b): I1.terms[a].tensor(I2.terms[b]) for a in range(L + 1) for b in range(L + 1 - a)}
    terms, offsets = [], []
    for n in range(L + 1):
        parts = [mods[(a, n - a)] for a in range(n + 1)]
        offs, tot = [], 0
        for pmod in parts:
            offs.append(tot)
            tot += pmod.rank
        offsets.append(offs)
        G = parts[0].group
        act = {s: la.block_diag(*[pm.action[s] for pm in parts]) for s in G.generators}
        terms.append(GroupRingModule(ring, G, tot, act, None, f"Tot^{n}"))
    maps = []
    for n in range(L):
        D = la.zeros(terms[n + 1].rank, terms[n].rank)
        for a in range(n + 1):
            b = n - a
            src = offsets[n][a]
            r1, r2 = I1.terms[a].rank, I2.terms[b].rank
            if a < I1.length:
                blk = la.kron(I1.maps[a], la.identity(r2))
                dst = offsets[n + 1][a + 1]
                D[dst: dst + blk.shape[0], src: src + r1 * r2] += blk
            if b < I2.length:
                blk = la.kron(la.identity(r1), I2.maps[b]) * (-1) ** a
                dst = offsets[n + 1][a]
                D[dst: dst + blk.shape[0], src: src + r1 * r2] += blk
        maps.append(la.reduce(D, ring))
    aug = la.kron(I1.augmentation, I2.augmentation)
    return Resolution("relatively-injective", I1.module.tensor(I2.module), terms, maps, la.reduce(aug, ring))


def diagonal(res: Resolution, group: FiniteGroup) -> Resolution:
    """Restrict a resolution over pi x pi to the diagonal copy of pi."""
    m = group.order

    def hom(g: int) -> int:
        return g * m + g

    terms = [t.restrict(group, hom) for t in res.terms]
    return Resolution(res.kind, res.module.restrict(group, hom), terms, res.maps, res.augmentation)


# ---------------------------------------------------------------------------
# Cohomology of cochain complexes of lattices


@dataclass
class Cohomology:
    """H = Z / B for lattices in a free coordinate space, with coordinates."""

    ring: GroundRing
    module: FGModule
    reps: np.ndarray  # columns: cocycle representatives of the generators
    _Zbasis: np.ndarray
    _U: np.ndarray
    orders: tuple

    def classify(self, v) -> tuple:
        v = list(v)
        if not self.orders:
            return ()
        y0 = la.solve_linear(self._Zbasis, v, self.ring)
        if y0 is None:
            raise ValueError("vector is not a cocycle")
        y = la.reduce(self._U @ la.col(y0), self.ring)[:, 0]
        out = []
        for c, o in zip(y[-len(self.orders):], self.orders):
            out.append(int(c) % o if o else int(c))
        return tuple(out)


def cohomology(d_in: np.ndarray, d_out: np.ndarray, dim: int, ring: GroundRing) -> Cohomology:
    """ker(d_out) / im(d_in) on a space of rank ``dim``."""
    if dim == 0:
        return Cohomology(ring, FGModule.zero(ring), la.zeros(0, 0), la.zeros(0, 0), la.zeros(0, 0), ())
    Zb = la.kernel(d_out, ring) if d_out.shape[0] else la.identity(dim)
    k = Zb.shape[1]
    if k == 0:
        return Cohomology(ring, FGModule.zero(ring), la.zeros(dim, 0), Zb, la.zeros(0, 0), ())
    # boundaries in cocycle coordinates
    cols = []
    for j in range(d_in.shape[1]):
        x = la.solve_linear(Zb, list(d_in[:, j]), ring)
        if x is None:
            raise ValueError("boundary is not a cocycle (d^2 != 0)")
        cols.append(la.col(x))
    X = la.hstack(cols, k) if cols else la.zeros(k, 0)
    if ring.kind == "F":
        X = la.reduce(X, ring)
        # complete a basis of im X to a basis of k-space
        r = la.rank(X, ring) if X.shape[1] else 0
        # independent boundary columns first, then unit vectors
        chosen = []
        for j in range(X.shape[1]):
            trial = chosen + [list(X[:, j])]
            if la.rank(la.mat(trial, (len(trial), k)).T, ring) == len(trial):
                chosen.append(list(X[:, j]))
        for i in range(k):
            e = [0] * k
            e[i] = 1
            trial = chosen + [e]
            if la.rank(la.mat(trial, (len(trial), k)).T, ring) == len(trial):
                chosen.append(e)
        Bmat = la.mat(chosen, (k, k)).T
        U = la.inverse(Bmat, ring)
        nfree = k - r
        orders = (0,) * nfree
        reps = la.reduce(Zb @ Bmat[:, r:], ring)
        return Cohomology(ring, FGModule.free(ring, nfree), reps, Zb, U, orders)
    D, U, V, Ui = la.smith_normal_form(X, with_inverse=True)
    diag = [D[i, i] if i < min(D.shape) else 0 for i in range(k)]
    keep = [i for i in range(k) if abs(diag[i]) != 1]
    orders = tuple(abs(int(diag[i])) for i in keep)
    # coordinates y = U y0; keep only non-unit positions, placed last
    perm = [i for i in range(k) if i not in keep] + keep
    Up = U[perm, :]
    reps = Zb @ Ui[:, keep] if keep else la.zeros(dim, 0)
    mod = FGModule.from_orders(ring, list(orders))
    return Cohomology(ring, mod, reps, Zb, Up, orders)


# ---------------------------------------------------------------------------
# Ext


@dataclass
class ExtComplex:
    """Hom_{k[pi]}(M, I^*) in coordinates."""

    resolution: Resolution
    source: GroupRingModule
    bases: list  # per degree: list of basis matrices
    coords: list  # per degree: matrix whose columns are flattened basis matrices
    deltas: list  # per degree s: matrix C^s -> C^{s+1}
    groups: dict = field(default_factory=dict)

    def group(self, s: int) -> Cohomology:
        if s not in self.groups:
            ring = self.source.ring
            dim = len(self.bases[s])
            d_out = self.deltas[s] if s < len(self.deltas) else la.zeros(0, dim)
            d_in = self.deltas[s - 1] if s > 0 else la.zeros(dim, 0)
            if s >= len(self.deltas) and s < self.resolution.length:
                raise ValueError("degree beyond computed range")
            self.groups[s] = cohomology(d_in, d_out, dim, ring)
        return self.groups[s]

    def vector_of(self, s: int, F: np.ndarray) -> list:
        """Coordinates of an equivariant map M -> I^s in the Hom basis."""
        v = list(la.mat(F).reshape(-1))
        x = la.solve_linear(self.coords[s], v, self.source.ring)
        if x is None:
            raise ValueError("map is not equivariant")
        return x

    def map_of(self, s: int, coords) -> np.ndarray:
        out = la.zeros(self.resolution.terms[s].rank, self.source.rank)
        for c, B in zip(coords, self.bases[s]):
            if c:
                out = out + c * B
        return la.reduce(out, self.source.ring)


def ext_complex(M: GroupRingModule, I: Resolution) -> ExtComplex:
    ring = M.ring
    bases, coords = [], []
    for T in I.terms:
        B = hom_basis(M, T)
        bases.append(B)
        n = T.rank * M.rank
        coords.append(la.hstack([la.col(list(b.reshape(-1))) for b in B], n) if B else la.zeros(n, 0))
    deltas = []
    for s, d in enumerate(I.maps):
        cols = []
        for B in bases[s]:
            img = la.reduce(d @ B, ring)
            x = la.solve_linear(coords[s + 1], list(img.reshape(-1)), ring) if bases[s + 1] else []
            if x is None:
                raise ValueError("differential leaves the equivariant maps")
            cols.append(la.col(x) if bases[s + 1] else la.zeros(0, 1))
        deltas.append(la.hstack(cols, len(bases[s + 1])) if cols else la.zeros(len(bases[s + 1]), 0))
    return ExtComplex(I, M, bases, coords, deltas)


def ext(M: GroupRingModule, N: GroupRingModule, s: int, method: str = "injective") -> FGModule:
    """Ext^s_{k[pi]}(M, N)."""
    if method == "injective":
        I = rel_injective_resolution(N, s + 1)
        if s > I.length:
            return FGModule.zero(M.ring)
        return ext_complex(M, I).group(s).module
    P = projective_resolution(M, s + 1)
    if s > P.length:
        return FGModule.zero(M.ring)
    ring = M.ring
    bases = []
    for T in P.terms:
        B = hom_basis(T, N)
        bases.append(B)
    coords = [la.hstack([la.col(list(b.reshape(-1))) for b in B], N.rank * T.rank) if B else la.zeros(N.rank * T.rank, 0)
              for B, T in zip(bases, P.terms)]

    def delta(k: int) -> np.ndarray:
        # C^k = Hom(P_k, N) -> C^{k+1}: F -> F d_{k+1}
        cols = []
        for B in bases[k]:
            img = la.reduce(B @ P.maps[k + 1], ring)
            x = la.solve_linear(coords[k + 1], list(img.reshape(-1)), ring) if bases[k + 1] else []
            cols.append(la.col(x) if bases[k + 1] else la.zeros(0, 1))
        return la.hstack(cols, len(bases[k + 1])) if cols else la.zeros(len(bases[k + 1]), 0)

    dim = len(bases[s])
    d_out = delta(s) if s + 1 < len(P.terms) else la.zeros(0, dim)
    d_in = delta(s - 1) if s > 0 else la.zeros(dim, 0)
    return cohomology(d_in, d_out, dim, ring).module


# ---------------------------------------------------------------------------
# Graded coefficient algebras and the E2 page


@dataclass
class GradedAlgebraModule:
    """A graded k[pi]-algebra: N^t for t >= 0 with products N^a (x) N^b -> N^{a+b}."""

    ring: GroundRing
    group: FiniteGroup
    piece: Callable[[int], GroupRingModule]
    mult: Callable[[int, int], np.ndarray]
    name: str = ""


def sign_polynomial_algebra(ring: GroundRing) -> GradedAlgebraModule:
    """k[x] with |x| = 2 and the generator of Z/2 acting by x -> -x."""
    G = FiniteGroup.cyclic(2)

    def piece(t: int) -> GroupRingModule:
        if t % 2:
            return GroupRingModule.zero(ring, G)
        return GroupRingModule.scalar(ring, G, (-1) ** (t // 2), "k" if t % 4 == 0 else "k_-")

    def mult(a: int, b: int) -> np.ndarray:
        ra, rb = piece(a).rank, piece(b).rank
        rc = piece(a + b).rank
        return la.identity(1) if ra and rb and rc else la.zeros(rc, ra * rb)

    return GradedAlgebraModule(ring, G, piece, mult, "k[x], x -> -x")


@dataclass
class BigradedPage:
    """E2 entries keyed (s, t), optional product structure."""

    ring: GroundRing
    entries: dict
    smax: int
    tmax: int
    product: Callable | None = None  # ((s1,t1,c1),(s2,t2,c2)) -> coords in (s1+s2, t1+t2)
    complexes: dict = field(default_factory=dict)

    def group(self, s: int, t: int) -> FGModule:
        return self.entries.get((s, t), FGModule.zero(self.ring))

    def nonzero(self, s: int, t: int) -> bool:
        return not self.group(s, t).is_zero()

    def to_json(self) -> dict:
        return {"ring": self.ring.name, "smax": self.smax, "tmax": self.tmax,
                "entries": [{"s": s, "t": t, "orders": list(m.orders())}
                            for (s, t), m in sorted(self.entries.items()) if not m.is_zero()]}


def eilenberg_E2(Hstar: dict, N: GradedAlgebraModule, umax: int, tmax: int) -> dict:
    """E2^{t,u,v} = Ext^u(H_v, N^t) keyed (t, u, v)."""
    out = {}
    for v, H in sorted(Hstar.items()):
        for t in range(tmax + 1):
            Nt = N.piece(t)
            if Nt.rank == 0 or H.rank == 0:
                continue
            I = rel_injective_resolution(Nt, umax + 1)
            C = ext_complex(H, I)
            for u in range(min(umax, I.length) + 1):
                g = C.group(u).module
                if not g.is_zero():
                    out[(t, u, v)] = g
    return out


class LiftingError(ArithmeticError):
    """No chain map exists: the resolution is not admissible."""


def lift_chain_map(T: Resolution, I: Resolution, base: np.ndarray, degree: int, reverse: bool = False) -> list:
    """Chain maps phi^n: T^n -> I^n over base: T.module -> I.module, for n <= degree."""
    ring = I.module.ring
    G = I.module.group
    phis = []
    for n in range(degree + 1):
        m, k = I.terms[n].rank, T.terms[n].rank
        eqs, rhs = [], []
        for s in G.generators:
            E = la.kron(I.terms[n].action[s], la.identity(k)) - la.kron(la.identity(m), T.terms[n].action[s].T)
            eqs.append(E)
            rhs.extend([0] * E.shape[0])
        if n == 0:
            # phi^0 . eta_T = eta_I . base
            A = T.augmentation
            target = la.reduce(I.augmentation @ base, ring)
        else:
            A = T.maps[n - 1]
            target = la.reduce(I.maps[n - 1] @ phis[n - 1], ring)
        # (phi A)[u, v] = sum_j phi[u, j] A[j, v]
        E = la.kron(la.identity(m), A.T)
        eqs.append(E)
        rhs.extend(list(target.reshape(-1)))
        Msys = la.vstack(eqs, m * k)
        if reverse:
            perm = list(range(m * k))[::-1]
            sol = la.solve_linear(Msys[:, perm], rhs, ring)
            if sol is not None:
                inv = [0] * len(perm)
                for i, pidx in enumerate(perm):
                    inv[pidx] = sol[i]
                sol = inv
        else:
            sol = la.solve_linear(Msys, rhs, ring)
        if sol is None:
            raise LiftingError(f"no equivariant lift in degree {n}")
        phis.append(la.reduce(la.mat(sol, None).reshape(m, k), ring))
    return phis


@dataclass
class ExtRing:
    """Ext^s_{k[pi]}(k, N^t) with products from lifted chain maps."""

    N: GradedAlgebraModule
    smax: int
    tmax: int
    reverse: bool = False
    _res: dict = field(default_factory=dict)
    _cx: dict = field(default_factory=dict)
    _lifts: dict = field(default_factory=dict)

    def resolution(self, t: int) -> Resolution:
        if t not in self._res:
            self._res[t] = rel_injective_resolution(self.N.piece(t), self.smax + 1)
        return self._res[t]

    def complex(self, t: int) -> ExtComplex:
        if t not in self._cx:
            k = GroupRingModule.trivial(self.N.ring, self.N.group)
            self._cx[t] = ext_complex(k, self.resolution(t))
        return self._cx[t]

    def group(self, s: int, t: int) -> Cohomology:
        if self.N.piece(t).rank == 0:
            return cohomology(la.zeros(0, 0), la.zeros(0, 0), 0, self.N.ring)
        cx = self.complex(t)
        if s > self.resolution(t).length:
            return cohomology(la.zeros(0, 0), la.zeros(0, 0), 0, self.N.ring)
        return cx.group(s)

    def page(self) -> BigradedPage:
        entries = {}
        for s in range(self.smax + 1):
            for t in range(self.tmax + 1):
                g = self.group(s, t).module
                if not g.is_zero():
                    entries[(s, t)] = g
        return BigradedPage(self.N.ring, entries, self.smax, self.tmax, self.multiply)

    def _lift(self, t1: int, t2: int, degree: int) -> list:
        key = (t1, t2)
        have = self._lifts.get(key)
        if have is None or len(have) <= degree:
            I1, I2, I3 = self.resolution(t1), self.resolution(t2), self.resolution(t1 + t2)
            T = diagonal(tensor_of_resolutions(I1, I2), self.N.group)
            self._lifts[key] = lift_chain_map(T, I3, self.N.mult(t1, t2), min(degree, T.length, I3.length),
                                              reverse=self.reverse)
        return self._lifts[key]

    def representative(self, s: int, t: int, coords) -> np.ndarray:
        """A fixed vector in I^{t,s} representing the class with the given coordinates."""
        g = self.group(s, t)
        v = la.zeros(g.reps.shape[0], 1)
        for c, j in zip(coords, range(g.reps.shape[1])):
            v = v + c * g.reps[:, j : j + 1]
        F = self.complex(t).map_of(s, list(v[:, 0]))
        return F

    def multiply(self, a: tuple, b: tuple) -> tuple:
        """Product of (s1, t1, coords1) and (s2, t2, coords2) as coordinates in (s1+s2, t1+t2)."""
        s1, t1, c1 = a
        s2, t2, c2 = b
        s, t = s1 + s2, t1 + t2
        target = self.group(s, t)
        if not target.orders:
            return ()
        x = self.representative(s1, t1, c1)
        y = self.representative(s2, t2, c2)
        phis = self._lift(t1, t2, s)
        I1, I2 = self.resolution(t1), self.resolution(t2)
        # x (x) y sits in the (s1, s2) summand of Tot^s
        offset = sum(I1.terms[a_].rank * I2.terms[s - a_].rank for a_ in range(s1))
        tot_rank = phis[s].shape[1]
        xy = la.zeros(tot_rank, 1)
        blk = la.kron(x, y)
        xy[offset: offset + blk.shape[0], :] = blk
        img = la.reduce(phis[s] @ xy, self.N.ring)
        vec = self.complex(t).vector_of(s, img)
        return target.classify(vec)

    def generator(self, s: int, t: int, i: int = 0) -> tuple:
        g = self.group(s, t)
        coords = [0] * len(g.orders)
        coords[i] = 1
        return (s, t, tuple(coords))


def ext_ring(N: GradedAlgebraModule, smax: int, tmax: int, reverse: bool = False) -> ExtRing:
    return ExtRing(N, smax, tmax, reverse)


# ---------------------------------------------------------------------------
# Collapse analysis for a Serre-type spectral sequence


@dataclass
class CollapseReport:
    candidates: list  # (r, name, source, target) before exclusions
    excluded: dict  # (r, name) -> reason
    remaining: list
    certified: list
    residual: list  # survivors before certificates were applied
    collapses: bool

    def to_json(self) -> dict:
        return {"candidates": [{"r": r, "generator": g, "source": list(s), "target": list(t)}
                               for r, g, s, t in self.candidates],
                "excluded": [{"r": r, "generator": g, "reason": why} for (r, g), why in sorted(self.excluded.items())],
                "residual": [{"r": r, "generator": g} for r, g in self.residual],
                "remaining": [{"r": r, "generator": g} for r, g in self.remaining],
                "certified": list(self.certified), "collapses": self.collapses}


@dataclass
class Relation:
    """lhs == rhs where each side is a pair of generator names (a product of two)."""

    lhs: tuple
    rhs: tuple


def collapse_report(page: BigradedPage, generators: dict, relations: list | None = None,
                    multiplication_injective: Callable | None = None, certificates: dict | None = None,
                    rmax: int | None = None) -> CollapseReport:
    """Which differentials d_r (s,t) -> (s+r, t-r+1) on algebra generators survive the arguments.

    ``generators`` maps a name to its bidegree. Exclusions, applied until stable:
    a zero target; the Leibniz rule on a relation g*g = h*k, where d(g*g) = 0
    for g of odd total degree or 2-torsion targets, forcing d(h)*k = 0 when
    d(k) = 0, hence d(h) = 0 when multiplication by k is injective on the
    target of d(h). ``certificates`` maps a (r, name) to the external fact
    that kills it.
    """
    relations = relations or []
    certificates = certificates or {}
    rmax = rmax if rmax is not None else page.smax + 1
    cands, status = [], {}
    for name, (s, t) in sorted(generators.items()):
        for r in range(2, rmax + 1):
            tgt = (s + r, t - r + 1)
            if tgt[1] < 0 or tgt[0] > page.smax:
                continue
            cands.append((r, name, (s, t), tgt))
            status[(r, name)] = None if page.nonzero(*tgt) else "target group is zero"
    changed = True
    while changed:
        changed = False
        for rel in relations:
            g1, g2 = rel.lhs
            h, k = rel.rhs
            for r in range(2, rmax + 1):
                if (r, h) not in status or status[(r, h)] is not None:
                    continue
                s, t = generators[g1]
                tgt = (s + r, t - r + 1)
                lhs_zero = False
                if g1 == g2 and (s + t) % 2 == 1:
                    lhs_zero = True
                elif g1 == g2 and page.nonzero(*tgt) and all(o == 2 for o in page.group(*tgt).orders()):
                    lhs_zero = True
                elif status.get((r, g1)) is not None and status.get((r, g2)) is not None:
                    lhs_zero = True
                if not lhs_zero:
                    continue
                if status.get((r, k)) is None and (r, k) in status:
                    continue
                hs, ht = generators[h]
                if multiplication_injective and multiplication_injective(k, (hs + r, ht - r + 1)):
                    status[(r, h)] = f"Leibniz on {g1}*{g2} = {h}*{k} with d_{r}{k} = 0 and {k}-multiplication injective"
                    changed = True
    residual = [(r, g) for (r, g), why in sorted(status.items()) if why is None]
    certified = []
    for key, why in certificates.items():
        if key in status and status[key] is None:
            status[key] = f"certificate: {why}"
            certified.append(why)
    remaining = [(r, g) for (r, g), why in sorted(status.items()) if why is None]
    excluded = {k: v for k, v in status.items() if v is not None}
    return CollapseReport(cands, excluded, remaining, certified, residual, not remaining)


# ---------------------------------------------------------------------------
# The BO(2) computations


def bo2_integral(smax: int = 10, tmax: int = 10, reverse: bool = False) -> dict:
    """Ext page, generators, relations and collapse analysis for BO(2) over Z."""
    Z = GroundRing.integers()
    R = ext_ring(sign_polynomial_algebra(Z), smax, tmax, reverse)
    page = R.page()
    p1, alpha, beta = R.generator(0, 4), R.generator(2, 0), R.generator(1, 2)
    gens = {"p1": (0, 4), "alpha": (2, 0), "beta": (1, 2)}
    elems = {"p1": p1, "alpha": alpha, "beta": beta}
    beta_sq = R.multiply(beta, beta)
    p1_alpha = R.multiply(p1, alpha)
    relations = []
    if beta_sq == p1_alpha:
        relations.append(Relation(("beta", "beta"), ("p1", "alpha")))

    def mult_injective(name: str, deg: tuple) -> bool:
        s, t = deg
        src = R.group(s, t)
        if not src.orders:
            return True
        gs, gt = gens[name]
        tgt = R.group(s + gs, t + gt)
        if len(src.orders) != 1 or len(tgt.orders) != 1:
            return False
        img = R.multiply((s, t, (1,)), elems[name])
        o = src.orders[0]
        return o != 0 and tgt.orders[0] == o and img and _order_in(img[0], o) == o

    report = collapse_report(page, gens, relations, mult_injective,
                             {(3, "beta"): "H3(BO(2);Z) != 0"}, rmax=smax + 1)
    return {"ring": R, "page": page, "generators": elems, "beta_squared": beta_sq,
            "p1_alpha": p1_alpha, "relations": relations, "collapse": report}


def _order_in(c: int, o: int) -> int:
    from math import gcd
    return o // gcd(c % o, o) if o else 0


def predicted_bo2_group(s: int, t: int) -> tuple:
    """Orders of Z[p1, alpha, beta]/(2 alpha, 2 beta, beta^2 - p1 alpha) in bidegree (s, t)."""
    c = s % 2
    b = (s - c) // 2
    if (t - 2 * c) % 4 or t - 2 * c < 0:
        return ()
    return (0,) if b == 0 and c == 0 else (2,)


def monomial_class(R: ExtRing, a: int, b: int, c: int) -> tuple | None:
    """p1^a alpha^b beta^c computed with the lifted products; None if out of range."""
    s, t = 2 * b + c, 4 * a + 2 * c
    if s > R.smax or t > R.tmax:
        return None
    cur = (0, 0, (1,))
    for gen, times in ((R.generator(0, 4), a), (R.generator(2, 0), b), (R.generator(1, 2), c)):
        for _ in range(times):
            coords = R.multiply(cur, gen)
            cur = (cur[0] + gen[0], cur[1] + gen[1], coords)
    return cur


def bo2_field(q: int, nmax: int = 20) -> dict:
    """Over F_q (q odd) the page sits in s = 0: H^n = F_q exactly when 4 | n."""
    F = GroundRing.field(q)
    R = ext_ring(sign_polynomial_algebra(F), 2, nmax)
    page = R.page()
    gens = {}
    report = collapse_report(page, gens)
    totals = {}
    for n in range(nmax + 1):
        dim = sum(len(page.group(s, n - s).orders()) for s in range(0, min(n, page.smax) + 1) if n - s >= 0)
        totals[n] = dim
    return {"ring": R, "page": page, "totals": totals, "collapse": report,
            "concentrated": all(s == 0 for (s, t) in page.entries)}
