"""Finitely presented modules, maps between them and spaces of homomorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import linalg as la
from .rings import GroundRing


class FGModule:
    """The module ``R^g / (column span of relations)``.

    Over Z/n the relations ``n * e_i`` are implicit; over F_q entries are
    read mod q. Instances are treated as immutable.
    """

    __slots__ = ("ring", "ngens", "relations")

    def __init__(self, ring: GroundRing, ngens: int, relations=None):
        self.ring = ring
        self.ngens = int(ngens)
        rel = la.zeros(self.ngens, 0) if relations is None else la.mat(relations)
        if rel.size == 0 and rel.shape[0] != self.ngens:
            rel = la.zeros(self.ngens, 0)
        if rel.shape[0] != self.ngens:
            raise ValueError(f"relation matrix has {rel.shape[0]} rows for {self.ngens} generators")
        self.relations = la.reduce(rel, ring)

    # constructors
    @staticmethod
    def free(ring: GroundRing, n: int) -> "FGModule":
        return FGModule(ring, n)

    @staticmethod
    def zero(ring: GroundRing) -> "FGModule":
        return FGModule(ring, 0)

    @staticmethod
    def cyclic(ring: GroundRing, order: int) -> "FGModule":
        """``R / order``; ``order == 0`` gives the free module of rank one."""
        return FGModule(ring, 1, la.mat([[order]]) if order else None)

    @staticmethod
    def from_orders(ring: GroundRing, orders: Sequence[int]) -> "FGModule":
        n = len(orders)
        cols = [i for i, o in enumerate(orders) if o]
        rel = la.zeros(n, len(cols))
        for k, i in enumerate(cols):
            rel[i, k] = orders[i]
        return FGModule(ring, n, rel)

    def effective_relations(self) -> np.ndarray:
        if self.ring.kind == "Zn":
            return np.concatenate([self.relations, self.ring.modulus * la.identity(self.ngens)], axis=1)
        return self.relations

    # membership
    def contains(self, v) -> bool:
        """Whether the column vector v lies in the relation span (is zero in M)."""
        v = la.col(list(v)) if not isinstance(v, np.ndarray) else v
        R = self.effective_relations()
        ring = GroundRing.integers() if self.ring.kind == "Zn" else self.ring
        if la.is_zero(v, self.ring):
            return True
        return la.solve_linear(R, v, ring) is not None

    def columns_vanish(self, A: np.ndarray) -> bool:
        return all(self.contains(A[:, [j]]) for j in range(A.shape[1]))

    def equal_elements(self, u, v) -> bool:
        return self.contains(la.col(list(u)) - la.col(list(v)))

    # canonical forms
    def minimal(self) -> tuple["FGModule", np.ndarray, np.ndarray]:
        """A minimal presentation ``(N, P, S)``.

        ``P`` maps M to N and ``S`` maps N to M; they are mutually inverse
        isomorphisms. N carries diagonal relations.
        """
        g = self.ngens
        if self.ring.kind == "F":
            q = self.ring.modulus
            R, pivots, _ = la.rref_mod(self.relations.T, q)
            keep = [j for j in range(g) if j not in pivots]
            P = la.zeros(len(keep), g)
            S = la.zeros(g, len(keep))
            pos = {j: k for k, j in enumerate(keep)}
            for j in keep:
                P[pos[j], j] = 1
                S[j, pos[j]] = 1
            for r, c in enumerate(pivots):
                for j in keep:
                    P[pos[j], c] = (-R[r, j]) % q
            return FGModule(self.ring, len(keep)), P, S
        R = self.effective_relations()
        D, U, _, Ui = la.smith_normal_form(R, with_inverse=True)
        k = R.shape[1]
        diag = [D[i, i] if i < k else 0 for i in range(g)]
        keep = [i for i in range(g) if diag[i] != 1]
        if self.ring.kind == "Zn":
            orders = [0 if diag[i] == self.ring.modulus else diag[i] for i in keep]
        else:
            orders = [diag[i] for i in keep]
        P = la.reduce(U[keep, :], self.ring)
        S = la.reduce(Ui[:, keep], self.ring)
        return FGModule.from_orders(self.ring, orders), P, S

    def orders(self) -> tuple[int, ...]:
        """Orders of the cyclic summands of a minimal presentation, 0 for free."""
        N, _, _ = self.minimal()
        out = []
        for i in range(N.ngens):
            o = 0
            for j in range(N.relations.shape[1]):
                if N.relations[i, j]:
                    o = int(N.relations[i, j])
            out.append(o)
        return tuple(sorted(o for o in out if o) + [0] * out.count(0))

    def invariants(self) -> tuple:
        """Canonical invariants: torsion orders and free rank."""
        o = self.orders()
        return (self.ring.name, tuple(x for x in o if x), o.count(0))

    def is_zero(self) -> bool:
        return len(self.orders()) == 0

    def rank(self) -> int:
        return self.orders().count(0)

    def cardinality(self) -> int | None:
        """Number of elements, or None when infinite."""
        total = 1
        for o in self.orders():
            if o == 0:
                if self.ring.kind == "Z":
                    return None
                o = self.ring.modulus
            total *= o
        return total

    def isomorphic(self, other: "FGModule") -> bool:
        return self.invariants() == other.invariants()

    def direct_sum(self, other: "FGModule") -> "FGModule":
        return FGModule(self.ring, self.ngens + other.ngens,
                        la.block_diag(self.relations, other.relations))

    def tensor(self, other: "FGModule") -> "FGModule":
        """Tensor product presented on the Kronecker generator basis."""
        a, b = self.ngens, other.ngens
        rels = [la.kron(self.relations, la.identity(b)), la.kron(la.identity(a), other.relations)]
        return FGModule(self.ring, a * b, la.hstack(rels, a * b))

    def quotient(self, extra: np.ndarray) -> "FGModule":
        return FGModule(self.ring, self.ngens, np.concatenate([self.relations, la.mat(extra)], axis=1))

    def to_json(self) -> dict:
        return {"gens": self.ngens, "rels": [[int(x) for x in r] for r in self.relations.T.tolist()]}

    def __repr__(self) -> str:
        return f"FGModule({self.ring.name}, orders={self.orders()})"


def well_defined(F: np.ndarray, source: FGModule, target: FGModule) -> bool:
    """Whether the matrix F sends the relations of source into those of target."""
    if F.shape != (target.ngens, source.ngens):
        return False
    return target.columns_vanish(F @ source.relations)


def cokernel(F: np.ndarray, source: FGModule, target: FGModule) -> FGModule:
    return FGModule(target.ring, target.ngens, np.concatenate([target.relations, F], axis=1))


def _work_ring(ring: GroundRing) -> GroundRing:
    return GroundRing.integers() if ring.kind == "Zn" else ring


def span_basis(G: np.ndarray, ring: GroundRing) -> np.ndarray:
    """Columns forming a basis of the span of G (over Z for Z and Z/n)."""
    if ring.kind == "F":
        R, pivots, _ = la.rref_mod(G.T, ring.modulus)
        return R[: len(pivots), :].T.copy()
    return la.image_basis(G)


def lattice_quotient(G: np.ndarray, Z: np.ndarray, ring: GroundRing):
    """Present span(G)/span(Z), assuming span(Z) lies in span(G).

    Returns ``(generators, module)``: generator columns in the ambient space
    and an FGModule whose i-th generator is the i-th column.
    """
    B = span_basis(G, ring)
    r = B.shape[1]
    wr = _work_ring(ring)
    coords = []
    for j in range(Z.shape[1]):
        c = la.solve_linear(B, Z[:, [j]], wr)
        if c is None:
            raise ArithmeticError("sub-span is not contained in the span")
        coords.append(c)
    Q = FGModule(wr if ring.kind != "F" else ring, r, la.hstack(coords, r))
    Qmin, _, S = Q.minimal()
    gens = la.reduce(B @ S, ring)
    return gens, FGModule(ring, Qmin.ngens, Qmin.relations)


def kernel_module(F: np.ndarray, source: FGModule, target: FGModule):
    """Kernel of F as ``(K, inclusion)`` with inclusion a map K -> source."""
    ring = source.ring
    wr = _work_ring(ring)
    Rt = target.effective_relations()
    g = source.ngens
    E = np.concatenate([F, -Rt], axis=1)
    Kfull = la.kernel(E, wr)
    G = Kfull[:g, :]
    Rs = source.effective_relations()
    G = np.concatenate([G, Rs], axis=1)
    gens, mod = lattice_quotient(G, Rs, ring)
    return mod, gens


# --------------------------------------------------------------------------
# Spaces of homomorphisms subject to linear constraints


@dataclass
class Constraint:
    """``sum(A @ F[block] @ B for block, A, B in terms)`` must vanish in target."""

    target: FGModule
    terms: list  # list of (block index, left matrix, right matrix)


@dataclass
class HomSpace:
    blocks: list  # list of (source, target)
    gens: list  # list of tuples of matrices
    module: FGModule
    orders: tuple = field(default_factory=tuple)

    def combine(self, coeffs: Sequence[int]) -> tuple:
        ring = self.module.ring
        out = []
        for b, (s, t) in enumerate(self.blocks):
            M = la.zeros(t.ngens, s.ngens)
            for c, g in zip(coeffs, self.gens):
                if c:
                    M = M + c * g[b]
            out.append(la.reduce(M, ring))
        return tuple(out)

    @property
    def size(self) -> int:
        return len(self.gens)


def solve_hom_system(blocks: list, constraints: list[Constraint]) -> HomSpace:
    """Tuples of maps (one per block) satisfying the constraints, modulo zero maps.

    Well-definedness of every block is imposed automatically.
    """
    ring = blocks[0][0].ring
    wr = _work_ring(ring)
    cons = list(constraints)
    for b, (s, t) in enumerate(blocks):
        cons.append(Constraint(t, [(b, la.identity(t.ngens), s.relations)]))
    offsets, nF = [], 0
    for s, t in blocks:
        offsets.append(nF)
        nF += t.ngens * s.ngens
    slack_sizes = []
    for c in cons:
        ncols = c.terms[0][2].shape[1]
        slack_sizes.append(c.target.effective_relations().shape[1] * ncols)
    nY = sum(slack_sizes)
    rows = []
    yoff = nF
    for c, ysz in zip(cons, slack_sizes):
        tg = c.target.ngens
        ncols = c.terms[0][2].shape[1]
        block = la.zeros(tg * ncols, nF + nY)
        for b, A, B in c.terms:
            s, t = blocks[b]
            ns = s.ngens
            # entry (u, v) of A F B is sum_{i,j} A[u,i] F[i,j] B[j,v]
            for u in range(tg):
                for v in range(ncols):
                    r = u * ncols + v
                    for i in range(t.ngens):
                        a = A[u, i]
                        if a == 0:
                            continue
                        for j in range(ns):
                            bb = B[j, v]
                            if bb:
                                block[r, offsets[b] + i * ns + j] += a * bb
        Reff = c.target.effective_relations()
        k = Reff.shape[1]
        for u in range(tg):
            for v in range(ncols):
                for w in range(k):
                    if Reff[u, w]:
                        block[u * ncols + v, yoff + w * ncols + v] -= Reff[u, w]
        yoff += ysz
        rows.append(block)
    E = la.vstack(rows, nF + nY)
    K = la.kernel(E, wr)
    G = K[:nF, :]
    zero_cols = []
    for b, (s, t) in enumerate(blocks):
        Reff = t.effective_relations()
        for j in range(s.ngens):
            for w in range(Reff.shape[1]):
                z = la.zeros(nF, 1)
                for i in range(t.ngens):
                    z[offsets[b] + i * s.ngens + j, 0] = Reff[i, w]
                zero_cols.append(z)
    Z = la.hstack(zero_cols, nF)
    G = np.concatenate([G, Z], axis=1)
    gens_cols, mod = lattice_quotient(G, Z, ring)
    gens = []
    for k in range(gens_cols.shape[1]):
        tup = []
        for b, (s, t) in enumerate(blocks):
            v = gens_cols[offsets[b]: offsets[b] + t.ngens * s.ngens, k]
            tup.append(la.mat(list(v), shape=None).reshape(t.ngens, s.ngens) if v.size else la.zeros(t.ngens, s.ngens))
        gens.append(tuple(tup))
    orders = []
    for i in range(mod.ngens):
        o = 0
        for j in range(mod.relations.shape[1]):
            if mod.relations[i, j]:
                o = int(mod.relations[i, j])
        orders.append(o)
    return HomSpace(list(blocks), gens, mod, tuple(orders))


def hom_space(M: FGModule, N: FGModule) -> HomSpace:
    """Hom(M, N) with generating maps; ``.module`` presents it."""
    if M.ring != N.ring:
        raise ValueError("modules over different rings")
    return solve_hom_system([(M, N)], [])
