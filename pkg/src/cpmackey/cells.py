"""Cell complexes for C_p, the freeness criterion, and free point-cohomology modules."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

from .grading import ROGElement, dims
from .mackey import MackeyFunctor, shift, zero_functor
from .point import PointRing
from .rings import GroundRing

BULLETS = ("finite-filtrations", "even-cells", "dimension-ordering", "finite-per-dimension")


@dataclass(frozen=True)
class Cell:
    """Either a fixed cell D(V) or a free cell C_p x D^n."""

    V: ROGElement | None = None
    free_dim: int | None = None
    filtration: int = 0

    def __post_init__(self) -> None:
        if (self.V is None) == (self.free_dim is None):
            raise ValueError("a cell is either fixed (V) or free (free_dim)")

    @property
    def is_free(self) -> bool:
        return self.V is None

    def to_json(self) -> dict:
        if self.is_free:
            return {"free": self.free_dim, "filtration": self.filtration}
        return {"V": list(self.V.coeffs), "filtration": self.filtration}

    @staticmethod
    def from_json(p: int, data: dict, default_filtration: int = 0) -> "Cell":
        filt = int(data.get("filtration", default_filtration))
        if "free" in data:
            return Cell(free_dim=int(data["free"]), filtration=filt)
        return Cell(V=ROGElement(p, tuple(data["V"])), filtration=filt)


@dataclass
class CellComplex:
    ring: GroundRing
    p: int
    cells: list = field(default_factory=list)

    def __add__(self, other: "CellComplex") -> "CellComplex":
        return CellComplex(self.ring, self.p, list(self.cells) + list(other.cells))

    def to_json(self) -> dict:
        return {"p": self.p, "ring": self.ring.name, "cells": [c.to_json() for c in self.cells]}

    @staticmethod
    def from_json(data: dict) -> "CellComplex":
        p = int(data["p"])
        ring = GroundRing.parse(str(data.get("ring", "Z")))
        cells = [Cell.from_json(p, c, i) for i, c in enumerate(data["cells"])]
        return CellComplex(ring, p, cells)


@dataclass(frozen=True)
class FreenessReport:
    ok: bool
    violated: str | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {"ok": self.ok, "violated": self.violated, "detail": self.detail}


def check_freeness(X: CellComplex) -> FreenessReport:
    """Check the four hypotheses of the freeness criterion, reporting the first failure."""
    filts = [c.filtration for c in X.cells]
    for i in range(1, len(filts)):
        if filts[i] < filts[i - 1]:
            return FreenessReport(False, "finite-filtrations", f"filtration drops at cell {i}")
    for i, c in enumerate(X.cells):
        if c.is_free:
            if c.free_dim < 0 or c.free_dim % 2:
                return FreenessReport(False, "even-cells", f"free cell {i} has dimension {c.free_dim}")
            continue
        if not c.V.is_actual():
            return FreenessReport(False, "even-cells", f"cell {i} is not an honest representation")
        f, n = dims(c.V)
        if f % 2 or n % 2:
            return FreenessReport(False, "even-cells", f"cell {i} has dimensions {(f, n)}")
    fixed = [(i, c) for i, c in enumerate(X.cells) if not c.is_free]
    for i, w in fixed:
        fw, nw = dims(w.V)
        for j, v in fixed:
            if v.filtration <= w.filtration:
                continue
            fv, nv = dims(v.V)
            if nv > nw and fv < fw:
                return FreenessReport(False, "dimension-ordering",
                                      f"cell {j} has |V|={nv}>{nw} but |V^G|={fv}<{fw} (cell {i})")
    # A finite cell list can only fail the last bullet through its representation;
    # it always holds here.
    return FreenessReport(True)


def _complex_power_real(p: int, k: int) -> ROGElement:
    """Real form of the complex character phi^k."""
    if p == 2:
        return ROGElement(2, (2, 0)) if k % 2 == 0 else ROGElement(2, (0, 2))
    return ROGElement.lam(p, k)


def omega(p: int, N: int) -> ROGElement:
    """Real form of phi^{-N}(1 + phi + ... + phi^{N-1}), a sum of phi^{-1}..phi^{-N}."""
    return reduce(lambda a, b: a + b, (_complex_power_real(p, -k) for k in range(1, N + 1)), ROGElement.zero(p))


def schubert_cells(p: int, count: int, ring: GroundRing | None = None) -> CellComplex:
    """The cells omega_0 .. omega_{count-1} of complex projective space on a complete universe."""
    if count < 1:
        raise ValueError("need at least one cell")
    ring = ring or GroundRing.integers()
    return CellComplex(ring, p, [Cell(V=omega(p, N), filtration=N) for N in range(count)])


def cell_summands(X: CellComplex, alpha: ROGElement, point: PointRing | None = None) -> list:
    """(cell index, label, functor) for every cell, before summing."""
    point = point or PointRing(X.p, X.ring)
    out = []
    for i, c in enumerate(X.cells):
        if c.is_free:
            M = point.mackey_functor(alpha - ROGElement.trivial(X.p, c.free_dim))
            label = "free-orbit(" + point.additive(alpha - ROGElement.trivial(X.p, c.free_dim)).label + ")"
            out.append((i, label, shift(M)))
        else:
            beta = alpha - c.V
            out.append((i, point.additive(beta).label, point.mackey_functor(beta)))
    return out


def free_module_degree(X: CellComplex, alpha: ROGElement) -> MackeyFunctor:
    """The degree-alpha Mackey functor of the free module on the cells of X."""
    report = check_freeness(X)
    if not report.ok:
        raise ValueError(f"freeness hypothesis violated: {report.violated} ({report.detail})")
    total = zero_functor(X.ring, X.p)
    for _, _, M in cell_summands(X, alpha):
        total = total.direct_sum(M)
    return total


def summand_labels(X: CellComplex, alpha: ROGElement) -> list:
    """Nonzero summand labels in cell order."""
    return [lab for _, lab, M in cell_summands(X, alpha) if not M.is_zero()]
