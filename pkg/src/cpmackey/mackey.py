"""Mackey functors for C_p as explicit two-level diagrams.

All maps are matrices acting on column vectors of generator coordinates:
``r`` is ``bottom x top``, ``t`` is ``top x bottom`` and ``sigma`` (the
action of a fixed generator g of C_p) is ``bottom x bottom``.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import linalg as la
from .modules import (
    Constraint,
    FGModule,
    HomSpace,
    cokernel,
    kernel_module,
    solve_hom_system,
    well_defined,
)
from .rings import GroundRing


@dataclass(frozen=True, eq=False)
class MackeyFunctor:
    ring: GroundRing
    p: int
    top: FGModule
    bottom: FGModule
    r: np.ndarray
    t: np.ndarray
    sigma: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        nt, nb = self.top.ngens, self.bottom.ngens
        object.__setattr__(self, "r", la.reduce(la.mat(self.r, shape=(nb, nt)), self.ring))
        object.__setattr__(self, "t", la.reduce(la.mat(self.t, shape=(nt, nb)), self.ring))
        object.__setattr__(self, "sigma", la.reduce(la.mat(self.sigma, shape=(nb, nb)), self.ring))

    def trace_matrix(self) -> np.ndarray:
        out = la.zeros(self.bottom.ngens, self.bottom.ngens)
        power = la.identity(self.bottom.ngens)
        for _ in range(self.p):
            out = out + power
            power = la.reduce(power @ self.sigma, self.ring)
        return la.reduce(out, self.ring)

    def is_zero(self) -> bool:
        return self.top.is_zero() and self.bottom.is_zero()

    def minimal(self) -> "MackeyFunctor":
        """The same functor on minimal presentations of both levels."""
        T, Pt, St = self.top.minimal()
        B, Pb, Sb = self.bottom.minimal()
        return MackeyFunctor(self.ring, self.p, T, B, Pb @ self.r @ St, Pt @ self.t @ Sb,
                             Pb @ self.sigma @ Sb, self.name)

    def direct_sum(self, other: "MackeyFunctor") -> "MackeyFunctor":
        _same(self, other)
        return MackeyFunctor(
            self.ring, self.p, self.top.direct_sum(other.top), self.bottom.direct_sum(other.bottom),
            la.block_diag(self.r, other.r), la.block_diag(self.t, other.t),
            la.block_diag(self.sigma, other.sigma),
            f"{self.name} + {other.name}" if self.name and other.name else "",
        )

    def to_json(self) -> dict:
        def m(a: np.ndarray) -> list:
            return [[int(x) for x in row] for row in a.tolist()]

        return {
            "ring": self.ring.name, "p": self.p,
            "top": self.top.to_json(), "bottom": self.bottom.to_json(),
            "r": m(self.r), "t": m(self.t), "sigma": m(self.sigma),
        }

    @staticmethod
    def from_json(data: dict) -> "MackeyFunctor":
        ring = GroundRing.parse(data["ring"])

        def mod(d: dict) -> FGModule:
            g = int(d["gens"])
            rels = d.get("rels", [])
            return FGModule(ring, g, la.mat(rels, shape=(len(rels), g)).T if rels else None)

        top, bottom = mod(data["top"]), mod(data["bottom"])
        nt, nb = top.ngens, bottom.ngens
        return MackeyFunctor(ring, int(data["p"]), top, bottom,
                             la.mat(data["r"], shape=(nb, nt)), la.mat(data["t"], shape=(nt, nb)),
                             la.mat(data["sigma"], shape=(nb, nb)))

    def __repr__(self) -> str:
        return (f"MackeyFunctor({self.name or '?'}, p={self.p}, {self.ring.name}, "
                f"top={self.top.orders()}, bottom={self.bottom.orders()})")


def _same(M: MackeyFunctor, N: MackeyFunctor) -> None:
    if M.ring != N.ring or M.p != N.p:
        raise ValueError("Mackey functors over different rings or primes")


def validate(M: MackeyFunctor) -> list[str]:
    """Names of the violated axioms; the empty list means M is a Mackey functor."""
    bad = []
    if not well_defined(M.r, M.top, M.bottom):
        bad.append("r well-defined")
    if not well_defined(M.t, M.bottom, M.top):
        bad.append("t well-defined")
    if not well_defined(M.sigma, M.bottom, M.bottom):
        bad.append("sigma well-defined")
    nb = M.bottom.ngens
    if not M.bottom.columns_vanish(la.mat_pow(M.sigma, M.p, M.ring) - la.identity(nb)):
        bad.append("sigma order")
    if not M.bottom.columns_vanish(M.sigma @ M.r - M.r):
        bad.append("sigma r = r")
    if not M.top.columns_vanish(M.t @ M.sigma - M.t):
        bad.append("t sigma = t")
    if not M.bottom.columns_vanish(M.r @ M.t - M.trace_matrix()):
        bad.append("trace relation")
    return bad


# --------------------------------------------------------------------------
# The standard zoo


def burnside(ring: GroundRing, p: int) -> MackeyFunctor:
    """A: top basis (mu, tau), bottom basis iota."""
    return twisted(ring, p, 1, name="A")


def twisted(ring: GroundRing, p: int, d: int, name: str | None = None) -> MackeyFunctor:
    """A_<d>: r(mu) = d*iota, r(tau) = p*iota, t(iota) = tau."""
    return MackeyFunctor(ring, p, FGModule.free(ring, 2), FGModule.free(ring, 1),
                         [[d, p]], [[0], [1]], [[1]], name or f"A<{d}>")


def bracket(ring: GroundRing, p: int, C: FGModule | None = None, name: str | None = None) -> MackeyFunctor:
    """<C>: C at the top, zero at the bottom."""
    C = C if C is not None else FGModule.free(ring, 1)
    return MackeyFunctor(ring, p, C, FGModule.zero(ring), la.zeros(0, C.ngens),
                         la.zeros(C.ngens, 0), la.zeros(0, 0), name or "<C>")


def _module_with_action(ring: GroundRing, B: FGModule | None, action) -> tuple[FGModule, np.ndarray]:
    B = B if B is not None else FGModule.free(ring, 1)
    s = la.identity(B.ngens) if action is None else la.mat(action, shape=(B.ngens, B.ngens))
    return B, s


def L(ring: GroundRing, p: int, B: FGModule | None = None, action=None, name: str | None = None) -> MackeyFunctor:
    """L(B): coinvariants B/(g-1)B over B, t the projection, r the trace."""
    B, s = _module_with_action(ring, B, action)
    top = cokernel(s - la.identity(B.ngens), B, B)
    tr = la.zeros(B.ngens, B.ngens)
    power = la.identity(B.ngens)
    for _ in range(p):
        tr = tr + power
        power = power @ s
    return MackeyFunctor(ring, p, top, B, tr, la.identity(B.ngens), s, name or "L")


def R(ring: GroundRing, p: int, B: FGModule | None = None, action=None, name: str | None = None) -> MackeyFunctor:
    """R(B): invariants B^G over B, t the trace, r the inclusion."""
    B, s = _module_with_action(ring, B, action)
    top, incl = kernel_module(s - la.identity(B.ngens), B, B)
    tr = la.zeros(B.ngens, B.ngens)
    power = la.identity(B.ngens)
    for _ in range(p):
        tr = tr + power
        power = power @ s
    wr = GroundRing.integers() if ring.kind == "Zn" else ring
    aug = np.concatenate([incl, B.effective_relations()], axis=1)
    cols = []
    for j in range(B.ngens):
        x = la.solve_linear(aug, tr[:, [j]], wr)
        if x is None:
            raise ArithmeticError("trace does not land in the invariants")
        cols.append(x[: incl.shape[1], :])
    t = la.hstack(cols, incl.shape[1])
    return MackeyFunctor(ring, p, top, B, incl, t, s, name or "R")


def L_minus(ring: GroundRing, p: int) -> MackeyFunctor:
    """k/2 over the sign representation k_-, t the projection, r = 0."""
    if p != 2:
        raise ValueError("L_minus exists only for p = 2")
    return MackeyFunctor(ring, 2, FGModule.cyclic(ring, 2), FGModule.free(ring, 1),
                         [[0]], [[1]], [[-1]], "L-")


def R_minus(ring: GroundRing, p: int) -> MackeyFunctor:
    """0 over the sign representation k_-."""
    if p != 2:
        raise ValueError("R_minus exists only for p = 2")
    return MackeyFunctor(ring, 2, FGModule.zero(ring), FGModule.free(ring, 1),
                         la.zeros(1, 0), la.zeros(0, 1), [[-1]], "R-")


def shift(M: MackeyFunctor) -> MackeyFunctor:
    """M_o: M(o) at the top and p copies of M(o) at the bottom.

    r(x) = (g^i x)_i, t(y) = sum_i g^{-i} y_i and g(y)_i = g y_{i-1}; for
    a trivial action these are the diagonal, fold and cyclic permutation.
    """
    p, ring, B = M.p, M.ring, M.bottom
    n = B.ngens
    s = M.sigma
    powers = [la.identity(n)]
    for _ in range(p - 1):
        powers.append(la.reduce(powers[-1] @ s, ring))
    inv_powers = [powers[(-i) % p] for i in range(p)]
    bottom = FGModule(ring, n * p, la.block_diag(*([B.relations] * p)))
    r = la.vstack(powers, n)
    t = la.hstack(inv_powers, n)
    sig = la.zeros(n * p, n * p)
    for i in range(p):
        j = (i - 1) % p
        sig[i * n:(i + 1) * n, j * n:(j + 1) * n] = s
    return MackeyFunctor(ring, p, B, bottom, r, t, sig, f"({M.name})_o" if M.name else "shift")


def free_orbit(ring: GroundRing, p: int) -> MackeyFunctor:
    """A_o, the functor represented by the free orbit."""
    out = shift(burnside(ring, p))
    return MackeyFunctor(ring, p, out.top, out.bottom, out.r, out.t, out.sigma, "A_o")


def permutation_module(ring: GroundRing, p: int) -> tuple[FGModule, np.ndarray]:
    """k[C_p] with g acting by the cyclic shift."""
    s = la.zeros(p, p)
    for i in range(p):
        s[(i + 1) % p, i] = 1
    return FGModule.free(ring, p), s


def zero_functor(ring: GroundRing, p: int) -> MackeyFunctor:
    return bracket(ring, p, FGModule.zero(ring), name="0")


STANDARD_NAMES = ("A", "A_twisted", "Bracket", "L", "R", "L_minus", "R_minus", "FreeOnOrbit", "Shift")


def standard(name: str, ring: GroundRing, p: int, **params) -> MackeyFunctor:
    """Build a standard functor by name; see ``STANDARD_NAMES``."""
    if name == "A":
        return burnside(ring, p)
    if name == "A_twisted":
        return twisted(ring, p, int(params.get("d", 1)))
    if name == "Bracket":
        return bracket(ring, p, params.get("C"))
    if name == "L":
        return L(ring, p, params.get("B"), params.get("action"))
    if name == "R":
        return R(ring, p, params.get("B"), params.get("action"))
    if name == "L_minus":
        return L_minus(ring, p)
    if name == "R_minus":
        return R_minus(ring, p)
    if name == "FreeOnOrbit":
        return free_orbit(ring, p)
    if name == "Shift":
        return shift(params["M"])
    raise ValueError(f"unknown standard functor {name!r}")


# --------------------------------------------------------------------------
# Box product


def box(M: MackeyFunctor, N: MackeyFunctor) -> MackeyFunctor:
    """The box product, presented as an explicit quotient and then minimized."""
    _same(M, N)
    ring, p = M.ring, M.p
    a, b = M.top.ngens, M.bottom.ngens
    c, e = N.top.ngens, N.bottom.ngens
    bottom = M.bottom.tensor(N.bottom)
    sigma = la.kron(M.sigma, N.sigma)
    n1, n2 = a * c, b * e
    rels = []

    def place(v1: np.ndarray | None, v2: np.ndarray | None) -> np.ndarray:
        v = la.zeros(n1 + n2, 1)
        if v1 is not None:
            v[:n1, :] = v1
        if v2 is not None:
            v[n1:, :] = v2
        return v

    T1 = M.top.tensor(N.top).relations
    T2 = bottom.relations
    for j in range(T1.shape[1]):
        rels.append(place(T1[:, [j]], None))
    for j in range(T2.shape[1]):
        rels.append(place(None, T2[:, [j]]))
    Ia, Ib, Ic, Ie = (la.identity(k) for k in (a, b, c, e))
    for x in range(a):
        for y in range(e):
            rels.append(place(la.kron(Ia[:, [x]], N.t[:, [y]]), -la.kron(M.r[:, [x]], Ie[:, [y]])))
    for w in range(b):
        for z in range(c):
            rels.append(place(la.kron(M.t[:, [w]], Ic[:, [z]]), -la.kron(Ib[:, [w]], N.r[:, [z]])))
    gdiff = sigma - la.identity(n2)
    for j in range(n2):
        rels.append(place(None, gdiff[:, [j]]))
    top = FGModule(ring, n1 + n2, la.hstack(rels, n1 + n2))
    t = la.vstack([la.zeros(n1, n2), la.identity(n2)], n2)
    trace = la.zeros(n2, n2)
    power = la.identity(n2)
    for _ in range(p):
        trace = trace + power
        power = la.reduce(power @ sigma, ring)
    r = la.hstack([la.kron(M.r, N.r), trace], n2)
    name = f"{M.name} [] {N.name}" if M.name and N.name else ""
    return MackeyFunctor(ring, p, top, bottom, r, t, sigma, name).minimal()


# --------------------------------------------------------------------------
# Dress pairings


def _bilinear(T: np.ndarray, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Apply a tensor T[out, i, j] to column vectors x and y."""
    out = la.zeros(T.shape[0], 1)
    for i in range(T.shape[1]):
        if x[i, 0] == 0:
            continue
        for j in range(T.shape[2]):
            if y[j, 0]:
                out[:, 0] = out[:, 0] + T[:, i, j] * (x[i, 0] * y[j, 0])
    return out


def _as_tensor(data, shape: tuple[int, int, int]) -> np.ndarray:
    arr = np.zeros(shape, dtype=object)
    if arr.size:
        arr[...] = np.array(data, dtype=object).reshape(shape)
    return arr


@dataclass
class DressReport:
    ok: bool
    violated: list = field(default_factory=list)


def dress_check(M: MackeyFunctor, N: MackeyFunctor, P: MackeyFunctor, theta_top, theta_bottom) -> DressReport:
    """Check the four compatibility relations of a pairing M (x) N -> P.

    ``theta_top[out][i][j]`` is the top-level value on top generators i of M
    and j of N; ``theta_bottom`` likewise at the bottom level.
    """
    Tt = _as_tensor(theta_top, (P.top.ngens, M.top.ngens, N.top.ngens))
    Tb = _as_tensor(theta_bottom, (P.bottom.ngens, M.bottom.ngens, N.bottom.ngens))
    E = la.identity

    def basis(n: int) -> list:
        I = E(n)
        return [I[:, [i]] for i in range(n)]

    bad = []
    # well-definedness on relations
    ok = all(P.top.contains(_bilinear(Tt, M.top.relations[:, [k]], y)) for k in range(M.top.relations.shape[1]) for y in basis(N.top.ngens))
    ok = ok and all(P.top.contains(_bilinear(Tt, x, N.top.relations[:, [k]])) for k in range(N.top.relations.shape[1]) for x in basis(M.top.ngens))
    ok = ok and all(P.bottom.contains(_bilinear(Tb, M.bottom.relations[:, [k]], y)) for k in range(M.bottom.relations.shape[1]) for y in basis(N.bottom.ngens))
    ok = ok and all(P.bottom.contains(_bilinear(Tb, x, N.bottom.relations[:, [k]])) for k in range(N.bottom.relations.shape[1]) for x in basis(M.bottom.ngens))
    if not ok:
        bad.append("well-defined")
    if not all(P.bottom.contains(_bilinear(Tb, M.r @ x, N.r @ y) - P.r @ _bilinear(Tt, x, y))
               for x in basis(M.top.ngens) for y in basis(N.top.ngens)):
        bad.append("restriction")
    if not all(P.top.contains(_bilinear(Tt, M.t @ w, y) - P.t @ _bilinear(Tb, w, N.r @ y))
               for w in basis(M.bottom.ngens) for y in basis(N.top.ngens)):
        bad.append("Frobenius t-left")
    if not all(P.top.contains(_bilinear(Tt, x, N.t @ w) - P.t @ _bilinear(Tb, M.r @ x, w))
               for x in basis(M.top.ngens) for w in basis(N.bottom.ngens)):
        bad.append("Frobenius t-right")
    if not all(P.bottom.contains(_bilinear(Tb, M.sigma @ w, N.sigma @ y) - P.sigma @ _bilinear(Tb, w, y))
               for w in basis(M.bottom.ngens) for y in basis(N.bottom.ngens)):
        bad.append("equivariance")
    return DressReport(not bad, bad)


def unit_pairing(M: MackeyFunctor) -> tuple[np.ndarray, np.ndarray]:
    """The pairing A (x) M -> M: mu acts as 1, tau as t r, iota as 1."""
    nt, nb = M.top.ngens, M.bottom.ngens
    Tt = np.zeros((nt, 2, nt), dtype=object)
    tr = la.reduce(M.t @ M.r, M.ring)
    for j in range(nt):
        Tt[j, 0, j] = 1
        Tt[:, 1, j] = tr[:, j]
    Tb = np.zeros((nb, 1, nb), dtype=object)
    for j in range(nb):
        Tb[j, 0, j] = 1
    return Tt, Tb


# --------------------------------------------------------------------------
# Homomorphisms and isomorphisms


def mackey_hom(M: MackeyFunctor, N: MackeyFunctor) -> HomSpace:
    """Pairs (F_top, F_bottom) commuting with r, t and the action."""
    _same(M, N)
    It, Ib = la.identity, la.identity
    cons = [
        Constraint(N.bottom, [(0, N.r, It(M.top.ngens)), (1, -Ib(N.bottom.ngens), M.r)]),
        Constraint(N.top, [(1, N.t, Ib(M.bottom.ngens)), (0, -It(N.top.ngens), M.t)]),
        Constraint(N.bottom, [(1, N.sigma, Ib(M.bottom.ngens)), (1, -Ib(N.bottom.ngens), M.sigma)]),
    ]
    return solve_hom_system([(M.top, N.top), (M.bottom, N.bottom)], cons)


def is_morphism(M: MackeyFunctor, N: MackeyFunctor, Ft: np.ndarray, Fb: np.ndarray) -> bool:
    return (well_defined(Ft, M.top, N.top) and well_defined(Fb, M.bottom, N.bottom)
            and N.bottom.columns_vanish(N.r @ Ft - Fb @ M.r)
            and N.top.columns_vanish(N.t @ Fb - Ft @ M.t)
            and N.bottom.columns_vanish(N.sigma @ Fb - Fb @ M.sigma))


def invariants(M: MackeyFunctor) -> dict:
    """Isomorphism invariants: module types of both levels and of kernels and
    cokernels of r, t, g - 1 and the trace."""
    out = {"top": M.top.invariants(), "bottom": M.bottom.invariants()}
    maps = {
        "r": (M.r, M.top, M.bottom),
        "t": (M.t, M.bottom, M.top),
        "g-1": (M.sigma - la.identity(M.bottom.ngens), M.bottom, M.bottom),
        "trace": (M.trace_matrix(), M.bottom, M.bottom),
    }
    for key, (F, S, T) in maps.items():
        out[f"ker {key}"] = kernel_module(F, S, T)[0].invariants()
        out[f"coker {key}"] = cokernel(F, S, T).invariants()
    return out


def _level_iso(F: np.ndarray, S: FGModule, T: FGModule) -> bool:
    if S.relations.shape[1] == 0 and T.relations.shape[1] == 0 and S.ring.kind != "Zn":
        if F.shape[0] != F.shape[1]:
            return False
        d = la.det(F)
        return S.ring.is_unit(d) if S.ring.kind == "Z" else d % S.ring.modulus != 0
    return cokernel(F, S, T).is_zero()


@dataclass
class IsoResult:
    status: str  # "found", "none" or "inconclusive"
    top: np.ndarray | None = None
    bottom: np.ndarray | None = None
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.status == "found"


def _seed() -> int:
    return int(os.environ.get("MACKEY_SEED", "0"))


def _vectors_by_norm(h: int, bound: int) -> Iterator[tuple]:
    """Integer vectors with entries in [-bound, bound], ordered by L1 norm."""
    def rec(k: int, n: int) -> Iterator[tuple]:
        if k == 0:
            if n == 0:
                yield ()
            return
        for v in range(-min(bound, n), min(bound, n) + 1):
            for rest in rec(k - 1, n - abs(v)):
                yield (v,) + rest

    for n in range(1, h * bound + 1):
        yield from rec(h, n)


def _greedy(H: HomSpace, ring: GroundRing) -> tuple:
    """Add generators one by one whenever they raise the combined rank."""
    q = ring.modulus if ring.kind == "F" else (1 << 61) - 1
    coeffs = [0] * H.size

    def rank_of(cs: list) -> int:
        return sum(len(la.rref_mod(F, q)[1]) for F in H.combine(cs))

    best = 0
    for i in range(H.size):
        for c in (1, -1):
            trial = coeffs.copy()
            trial[i] = c
            rk = rank_of(trial)
            if rk > best:
                coeffs, best = trial, rk
                break
    return tuple(coeffs)


def _candidates(H: HomSpace, ring: GroundRing, budget: int) -> Iterator[tuple]:
    h = H.size
    if h == 0:
        yield ()
        return
    if h > 6:
        yield _greedy(H, ring)
    finite = [o if o else (ring.modulus if ring.modulus else 0) for o in H.orders]
    if all(finite):
        total = 1
        for o in finite:
            total *= o
        if total <= budget:
            for combo in itertools.product(*(range(o) for o in finite)):
                yield combo
            return
        rng = random.Random(_seed())
        for _ in range(budget):
            yield tuple(rng.randrange(o) for o in finite)
        return
    count = 0
    for v in _vectors_by_norm(h, 3):
        v = tuple(x % o if o else x for x, o in zip(v, H.orders))
        yield v
        count += 1
        if count >= budget:
            return


def iso(M: MackeyFunctor, N: MackeyFunctor, budget: int | None = None) -> IsoResult:
    """Search for an isomorphism M -> N (maps returned in the given presentations)."""
    _same(M, N)
    if invariants(M) != invariants(N):
        return IsoResult("none", reason="invariants differ")
    Tm, Ptm, Stm = M.top.minimal()
    Bm, Pbm, Sbm = M.bottom.minimal()
    Tn, Ptn, Stn = N.top.minimal()
    Bn, Pbn, Sbn = N.bottom.minimal()
    Mm = MackeyFunctor(M.ring, M.p, Tm, Bm, Pbm @ M.r @ Stm, Ptm @ M.t @ Sbm, Pbm @ M.sigma @ Sbm)
    Nm = MackeyFunctor(N.ring, N.p, Tn, Bn, Pbn @ N.r @ Stn, Ptn @ N.t @ Sbn, Pbn @ N.sigma @ Sbn)
    H = mackey_hom(Mm, Nm)
    if budget is None:
        budget = 3000 if M.ring.kind == "Z" else 20000
    for coeffs in _candidates(H, M.ring, budget):
        Ft, Fb = H.combine(coeffs)
        if _level_iso(Ft, Tm, Tn) and _level_iso(Fb, Bm, Bn):
            top = la.reduce(Stn @ Ft @ Ptm, M.ring)
            bottom = la.reduce(Sbn @ Fb @ Pbm, M.ring)
            return IsoResult("found", top, bottom)
    exhaustive = H.size == 0
    if M.ring.kind != "Z":
        total = 1
        for o in H.orders:
            total *= o if o else M.ring.modulus
        exhaustive = total <= budget
    if exhaustive:
        return IsoResult("none", reason="no invertible map in the hom space")
    return IsoResult("inconclusive", reason="invariants agree but the bounded search found no witness")


def isomorphic(M: MackeyFunctor, N: MackeyFunctor) -> bool:
    """True when an isomorphism was found, or over Z when only the search was
    inconclusive but every invariant agrees."""
    res = iso(M, N)
    return res.found or (res.status == "inconclusive" and M.ring.kind == "Z")


# --------------------------------------------------------------------------
# Twisted Burnside functors


@dataclass
class TwistedIso:
    unit: int
    x: int
    witness: list  # [[u, x], [0, 1]]
    top_map: np.ndarray  # column-convention top-level map A<d1> -> A<d2>


def twisted_iso(d1: int, d2: int, ring: GroundRing, p: int) -> TwistedIso | None:
    """Witness for A<d1> = A<d2>: a unit u and x with d1 = u*d2 + p*x."""
    for u in ring.units():
        x = la.solve_linear([[p]], [d1 - u * d2], ring)
        if x is not None:
            xv = x[0]
            W = [[u, xv], [0, 1]]
            return TwistedIso(u, xv, W, la.reduce(la.mat(W).T, ring))
    return None


def stabilized_witness(d1: int, d2: int, p: int) -> np.ndarray:
    """Top-level matrix (column convention) of A<d1>+<Z> -> A<d2>+<Z> over Z.

    Requires d1 and d2 prime to p; the bottom-level map is the identity. The
    columns are (a, b, c), e2 and (p, -d2, z) with d2*a + p*b = d1, so
    restriction is preserved, and a*z - p*c = 1, so the determinant is 1.
    """
    if d1 % p == 0 or d2 % p == 0:
        raise ValueError(f"{d1} and {d2} must be prime to {p}")
    a = d1 * pow(d2, -1, p) % p
    b = (d1 - d2 * a) // p
    _, z, t = _egcd(a, p)
    c = -t
    return la.mat([
        [a, 0, p],
        [b, 1, -d2],
        [c, 0, z],
    ])


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _egcd(b, a % b)
    return g, y, x - (a // b) * y


def twisted_plus_bracket(ring: GroundRing, p: int, d: int) -> MackeyFunctor:
    return twisted(ring, p, d).direct_sum(bracket(ring, p))


# --------------------------------------------------------------------------
# The multiplication table of the standard functors (with B = X = k)

TABLE_LABELS = ("A_o", "A<d>", "<X>", "L(B)", "R", "R_-")


def _zoo(ring: GroundRing, p: int, label: str, d: int) -> MackeyFunctor | None:
    if label == "A_o":
        return free_orbit(ring, p)
    if label == "A<d>":
        return twisted(ring, p, d)
    if label == "<X>":
        return bracket(ring, p)
    if label == "L(B)":
        return L(ring, p)
    if label == "R":
        return R(ring, p)
    if label == "R_-":
        return R_minus(ring, p) if p == 2 else None
    raise KeyError(label)


def expected_product(ring: GroundRing, p: int, row: str, col: str, c: int, d: int) -> tuple[str, MackeyFunctor]:
    """The table entry for row (parameter c) box column (parameter d)."""
    pair = {row, col}
    Ao = free_orbit(ring, p)
    perm, perm_action = permutation_module(ring, p)
    if "A_o" in pair:
        other = col if row == "A_o" else row
        if other == "A_o":
            out = Ao
            for _ in range(p - 1):
                out = out.direct_sum(free_orbit(ring, p))
            return "A_o^p", out
        if other == "<X>":
            return "0", zero_functor(ring, p)
        if other == "L(B)":
            return "L(B^p)", L(ring, p, perm, perm_action)
        return "A_o", Ao
    if row == "A<d>" and col == "A<d>":
        return f"A<{c * d}>", twisted(ring, p, c * d)
    if "A<d>" in pair:
        other = col if row == "A<d>" else row
        return other, _zoo(ring, p, other, 1)
    if pair == {"<X>"}:
        return "<X(x)X>", bracket(ring, p)
    if "<X>" in pair:
        other = col if row == "<X>" else row
        if other == "R":
            return "<X/p>", bracket(ring, p, FGModule.cyclic(ring, p))
        return "0", zero_functor(ring, p)
    if pair == {"L(B)"}:
        return "L(B(x)B)", L(ring, p)
    if pair == {"L(B)", "R"}:
        return "L(B)", L(ring, p)
    if pair == {"L(B)", "R_-"}:
        return "L(B(x)k_-)", L(ring, p, FGModule.free(ring, 1), [[-1]])
    if pair == {"R"}:
        return "R", R(ring, p)
    if pair == {"R", "R_-"}:
        return "R_-", R_minus(ring, p)
    if pair == {"R_-"}:
        return "L", L(ring, p)
    raise KeyError((row, col))


@dataclass
class TableCell:
    row: str
    col: str
    c: int
    d: int
    expected: str
    status: str  # "iso", "invariants", "fail" or "n/a"
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status in ("iso", "invariants", "n/a")

    def to_json(self) -> dict:
        return {"row": self.row, "col": self.col, "c": self.c, "d": self.d,
                "expected": self.expected, "status": self.status, "note": self.note}


def multiplication_table(ring: GroundRing, p: int, params: Sequence[int] = (1, 2)) -> list[TableCell]:
    """Check every cell of the table up to isomorphism.

    Over Z a cell whose witness search is inconclusive counts as passing when
    all invariants agree (status ``invariants``). Cells with R_- are skipped
    for odd p, and twisted parameters not prime to p are skipped.
    """
    cells = []
    for row in TABLE_LABELS:
        for col in TABLE_LABELS:
            cs = [c for c in params if c % p] if row == "A<d>" else [1]
            ds = [d for d in params if d % p] if col == "A<d>" else [1]
            for c in cs:
                for d in ds:
                    if "R_-" in (row, col) and p != 2:
                        cells.append(TableCell(row, col, c, d, "-", "n/a", "R_- needs p = 2"))
                        continue
                    M = _zoo(ring, p, row, c)
                    N = _zoo(ring, p, col, d)
                    label, want = expected_product(ring, p, row, col, c, d)
                    got = box(M, N)
                    bad = validate(got)
                    if bad:
                        cells.append(TableCell(row, col, c, d, label, "fail", "; ".join(bad)))
                        continue
                    res = iso(got, want)
                    if res.found:
                        status = "iso"
                    elif res.status == "inconclusive" and ring.kind == "Z":
                        status = "invariants"
                    else:
                        status = "fail"
                    cells.append(TableCell(row, col, c, d, label, status, res.reason))
    return cells
