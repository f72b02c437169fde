"""The RO(C_p)-graded cohomology of a point with Burnside ring coefficients.

Additively each degree is one of the standard Mackey functors. Products are
computed through two multiplicative invariants of a top-level class x:

* its restriction ``r(x)``, a multiple of the bottom generator when the
  total dimension is zero;
* a fixed-point value ``phi(x)``: an element of k when the fixed dimension
  is 0, of k/p when it is negative, and 0 when it is positive.

Together these detect every top-level group of even fixed dimension, so a
product of such classes is found by solving for the unique target element
with the multiplied invariants. Classes of odd fixed dimension form a
torsion family on which an even class x acts through ``phi(x) mod p``.

Supported ground rings are Z and F_q with q != p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import linalg as la
from .grading import ROGElement, comm_unit, d_in_ring, d_lift, d_modp, dims, inv_mod
from .mackey import (
    MackeyFunctor,
    L,
    L_minus,
    R,
    R_minus,
    bracket,
    burnside,
    twisted,
    zero_functor,
)
from .modules import FGModule
from .rings import GroundRing

TOP, BOTTOM = "top", "bottom"


@dataclass(frozen=True)
class PointDegreeData:
    alpha: ROGElement
    label: str
    top_basis: tuple
    bottom_basis: tuple
    top_orders: tuple  # 0 for a free generator, else its additive order

    def to_json(self) -> dict:
        return {"alpha": self.alpha.to_json(), "dims": list(dims(self.alpha)), "label": self.label,
                "top": list(self.top_basis), "bottom": list(self.bottom_basis)}


def region_label(p: int, f: int, n: int) -> str:
    """Mackey functor type by dimensions (fixed f, total n), before twists."""
    if (f - n) % 2 and p != 2:
        return "NotARepresentation"
    if p == 2:
        if (f, n) == (0, 0):
            return "A"
        if n == 0:
            if f < 0:
                return "R" if f % 2 == 0 else "R_minus"
            if f == 1:
                return "R_minus"
            return "L" if f % 2 == 0 else "L_minus"
        if f == 0:
            return "Bracket(k)"
        if f < 0 and f % 2 == 0 and n > 0:
            return "Bracket(k/2)"
        if f >= 3 and f % 2 == 1 and n < 0:
            return "Bracket(k/2)"
        return "Zero"
    if (f, n) == (0, 0):
        return "A_twisted"
    if n == 0:
        return "R" if f < 0 else "L"
    if f == 0:
        return "Bracket(k)"
    if f < 0 and f % 2 == 0 and n > 0:
        return "Bracket(k/p)"
    if f >= 3 and f % 2 == 1 and n <= -1:
        return "Bracket(k/p)"
    return "Zero"


@dataclass
class GradedClass:
    """A finite sum of canonical basis elements, keyed by (degree, name)."""

    level: str
    terms: dict = field(default_factory=dict)

    def items(self) -> Iterator:
        return iter(sorted(self.terms.items(), key=lambda kv: (kv[0][0].coeffs, kv[0][1])))

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {a for a, _ in self.terms}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GradedClass) and self.level == other.level and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return f"0[{self.level}]"
        return " + ".join(f"{c}*{n}@{a}" for (a, n), c in self.items())

    def to_json(self) -> dict:
        return {"level": self.level,
                "terms": [{"alpha": list(a.coeffs), "gen": n, "coeff": c} for (a, n), c in self.items()]}


class PointRing:
    """The graded Green functor H^*(S^0) for C_p over Z or F_q (q != p)."""

    def __init__(self, p: int, ring: GroundRing):
        if ring.kind == "Zn" or (ring.kind == "F" and ring.modulus == p):
            raise ValueError("point cohomology is implemented over Z and over F_q with q != p")
        self.p = p
        self.ring = ring
        self.torsion_visible = ring.kind == "Z"
        self.h = ROGElement.length(p) - 1
        self._additive_cache: dict = {}
        self._product_cache: dict = {}

    # -- degrees ---------------------------------------------------------
    def lam1(self, n: int = 1) -> ROGElement:
        return ROGElement.lam(self.p, 1, n)

    def triv(self, n: int = 1) -> ROGElement:
        return ROGElement.trivial(self.p, n)

    def zero_degree(self) -> ROGElement:
        return ROGElement.zero(self.p)

    def d_modp_full(self, alpha: ROGElement) -> int:
        """The twist as a genuine element of F_p^x (no sign ambiguity)."""
        return d_lift(alpha) % self.p

    def _delta0(self, m: int) -> ROGElement:
        return self.lam1(m) - self.triv(2 * m)

    # -- additive structure ----------------------------------------------
    def additive(self, alpha: ROGElement) -> PointDegreeData:
        data = self._additive_cache.get(alpha)
        if data is None:
            data = self._additive_cache[alpha] = self._additive(alpha)
        return data

    def _additive(self, alpha: ROGElement) -> PointDegreeData:
        p = self.p
        f, n = dims(alpha)
        label = region_label(p, f, n)
        top: list = []
        orders: list = []
        tors = self.torsion_visible

        def add(name: str, order: int = 0) -> None:
            if order and not tors:
                return
            top.append(name)
            orders.append(order)

        if p == 2:
            if label == "A":
                add("1"), add("kappa")
            elif label == "R":
                add(f"xi^{-f // 2}")
            elif label == "L":
                add(f"t(iota^{f})")
            elif label == "L_minus":
                add(f"t(iota^{f})", 2)
            elif label == "Bracket(k)":
                add(f"eps^{n}" if n > 0 else f"eps^{n}kappa")
            elif label == "Bracket(k/2)":
                if f < 0:
                    add(f"xi^{-f // 2}eps^{n}", 2)
                else:
                    add(f"eps^{n}t(iota^{f})", 2)
        else:
            if label == "A_twisted":
                label = f"A_twisted({d_modp(alpha)})"
                add("mu"), add("t(iota)")
            elif label == "R":
                add("xi")
            elif label == "L":
                add("t(iota)")
            elif label == "Bracket(k)":
                add("eps" if n > 0 else "K")
            elif label == "Bracket(k/p)":
                add("xieps" if f < 0 else "nu", p)
        bottom = ("iota",) if n == 0 and label != "NotARepresentation" else ()
        return PointDegreeData(alpha, label, tuple(top), bottom, tuple(orders))

    def top_basis(self, alpha: ROGElement) -> tuple:
        return self.additive(alpha).top_basis

    def bottom_basis(self, alpha: ROGElement) -> tuple:
        return self.additive(alpha).bottom_basis

    def order_of(self, alpha: ROGElement, name: str) -> int:
        data = self.additive(alpha)
        return data.top_orders[data.top_basis.index(name)]

    # -- element construction --------------------------------------------
    def normalize(self, level: str, terms: Iterable) -> GradedClass:
        out: dict = {}
        for (alpha, name), c in terms:
            out[(alpha, name)] = out.get((alpha, name), 0) + c
        clean = {}
        for key, c in out.items():
            alpha, name = key
            if level == TOP:
                data = self.additive(alpha)
                if name not in data.top_basis:
                    raise KeyError(f"{name} is not a basis element in degree {alpha}")
                o = data.top_orders[data.top_basis.index(name)]
            else:
                if name not in self.bottom_basis(alpha):
                    raise KeyError(f"{name} is not a bottom basis element in degree {alpha}")
                o = 0
            c = self.ring.reduce(c)
            if o:
                c %= o
            if c:
                clean[key] = c
        return GradedClass(level, clean)

    def element(self, alpha: ROGElement, name: str, coeff: int = 1, level: str = TOP) -> GradedClass:
        return self.normalize(level, [((alpha, name), coeff)])

    def zero(self, level: str = TOP) -> GradedClass:
        return GradedClass(level, {})

    def one(self) -> GradedClass:
        return self.element(self.zero_degree(), "1" if self.p == 2 else "mu")

    def iota(self, alpha: ROGElement, coeff: int = 1) -> GradedClass:
        return self.element(alpha, "iota", coeff, BOTTOM)

    def add(self, x: GradedClass, y: GradedClass) -> GradedClass:
        if x.level != y.level:
            raise ValueError("cannot add classes at different levels")
        return self.normalize(x.level, list(x.terms.items()) + list(y.terms.items()))

    def scale(self, c: int, x: GradedClass) -> GradedClass:
        return self.normalize(x.level, [(k, c * v) for k, v in x.terms.items()])

    def sub(self, x: GradedClass, y: GradedClass) -> GradedClass:
        return self.add(x, self.scale(-1, y))

    def basis_elements(self, alpha: ROGElement, level: str = TOP) -> list:
        names = self.top_basis(alpha) if level == TOP else self.bottom_basis(alpha)
        return [self.element(alpha, nm, 1, level) for nm in names]

    # -- invariants of top-level basis elements --------------------------
    def is_odd_family(self, alpha: ROGElement) -> bool:
        f, n = dims(alpha)
        return f % 2 == 1 and f >= 3 and n <= (0 if self.p == 2 else -1)

    def _r_phi(self, alpha: ROGElement, name: str) -> tuple[int, int]:
        """Restriction coefficient and fixed-point value of a basis element."""
        p = self.p
        f, n = dims(alpha)
        if p == 2:
            if name == "1":
                return 1, 1
            if name == "kappa":
                return 0, 2
            if name.startswith("t(iota^"):
                return (2, 0) if f % 2 == 0 else (0, 0)
            if name.startswith("xi^") and "eps" not in name:
                return 1, 1
            if name.startswith("xi^"):
                return 0, 1
            if name.endswith("kappa"):
                return 0, 2
            if name.startswith("eps^") and "t(" not in name:
                return 0, 1
            return 0, 0
        if name == "mu":
            return d_in_ring(alpha, self.ring), 1
        if name == "t(iota)":
            return p, 0
        if name == "xi":
            m = -f // 2
            return 1, self.d_modp_full(self._delta0(m) - alpha)
        if name == "eps":
            return 0, 1
        if name == "K":
            return 0, p
        if name == "xieps":
            m, k = -f // 2, n // 2
            return 0, self.d_modp_full(self._delta0(m) - alpha + self.lam1(k))
        return 0, 0

    def restriction_value(self, x: GradedClass) -> dict:
        """Map degree -> coefficient of the bottom generator."""
        out: dict = {}
        for (alpha, name), c in x.terms.items():
            r, _ = self._r_phi(alpha, name)
            if r and dims(alpha)[1] == 0:
                out[alpha] = out.get(alpha, 0) + c * r
        return out

    def phi(self, alpha: ROGElement, x: GradedClass) -> int:
        """Fixed-point value of the degree-alpha part of x (reduced mod p when f < 0)."""
        f, _ = dims(alpha)
        if f > 0:
            return 0
        total = 0
        for (a, name), c in x.terms.items():
            if a == alpha:
                total += c * self._r_phi(a, name)[1]
        return total % self.p if f < 0 else total

    # -- restriction and transfer ----------------------------------------
    def restrict(self, x: GradedClass) -> GradedClass:
        if x.level != TOP:
            raise ValueError("restrict expects a top-level class")
        return self.normalize(BOTTOM, [((a, "iota"), c) for a, c in self.restriction_value(x).items()])

    def transfer(self, y: GradedClass) -> GradedClass:
        if y.level != BOTTOM:
            raise ValueError("transfer expects a bottom-level class")
        terms = []
        for (alpha, _), c in y.terms.items():
            terms.extend(self._transfer_generator(alpha, c))
        return self.normalize(TOP, terms)

    def _transfer_generator(self, alpha: ROGElement, c: int) -> list:
        p = self.p
        f, _ = dims(alpha)
        basis = self.top_basis(alpha)
        if p == 2:
            if f == 0:
                return [((alpha, "1"), 2 * c), ((alpha, "kappa"), -c)]
            if f < 0:
                return [((alpha, basis[0]), 2 * c)] if f % 2 == 0 else []
            return [((alpha, basis[0]), c)] if basis else []
        if f == 0:
            return [((alpha, "t(iota)"), c)]
        if f < 0:
            return [((alpha, "xi"), p * c)]
        return [((alpha, "t(iota)"), c)]

    def sigma(self, alpha: ROGElement) -> int:
        """Action of the generator on the bottom generator in degree alpha."""
        if self.p == 2 and dims(alpha)[0] % 2:
            return -1
        return 1

    # -- products ----------------------------------------------------------
    def multiply(self, x: GradedClass, y: GradedClass) -> GradedClass:
        if x.level != y.level:
            raise ValueError("multiply expects classes at the same level")
        terms: list = []
        if x.level == BOTTOM:
            for (a, _), c in x.terms.items():
                for (b, _), e in y.terms.items():
                    terms.append(((a + b, "iota"), c * e))
            return self.normalize(BOTTOM, terms)
        out = self.zero(TOP)
        for (a, n1), c in x.terms.items():
            for (b, n2), e in y.terms.items():
                key = (a, n1, b, n2)
                prod = self._product_cache.get(key)
                if prod is None:
                    prod = self._product_cache[key] = self._multiply_basis(a, n1, b, n2)
                out = self.add(out, self.scale(c * e, prod))
        return out

    def _multiply_basis(self, a: ROGElement, n1: str, b: ROGElement, n2: str) -> GradedClass:
        odd_a, odd_b = dims(a)[0] % 2 == 1, dims(b)[0] % 2 == 1
        target = a + b
        if odd_a and odd_b:
            return self.zero(TOP)
        if odd_a or odd_b:
            (ea, en), (oa, on) = ((b, n2), (a, n1)) if odd_a else ((a, n1), (b, n2))
            if not self.is_odd_family(target):
                return self.zero(TOP)
            coeff = self._r_phi(ea, en)[1] if dims(ea)[0] <= 0 else 0
            basis = self.top_basis(target)
            if not basis:
                return self.zero(TOP)
            return self.element(target, basis[0], coeff % self.p)
        ra, pa = self._r_phi(a, n1)
        rb, pb = self._r_phi(b, n2)
        if dims(a)[1] != 0:
            ra = 0
        if dims(b)[1] != 0:
            rb = 0
        fa, fb = dims(a)[0], dims(b)[0]
        if fa > 0 or fb > 0:
            ph = 0
        else:
            ph = pa * pb
        return self._solve(target, ra * rb, ph)

    def _solve(self, alpha: ROGElement, r: int, ph: int) -> GradedClass:
        """The unique top-level class in degree alpha with the given invariants."""
        p, ring = self.p, self.ring
        f, n = dims(alpha)
        if f < 0:
            ph %= p
        if f > 0:
            ph = 0
        data = self.additive(alpha)
        label = data.label

        def div(a: int, b: int) -> int:
            if ring.kind == "Z":
                if a % b:
                    raise ArithmeticError(f"{a} is not divisible by {b} in degree {alpha}")
                return a // b
            return ring.reduce(a * ring.inverse(b))

        def fail() -> None:
            raise ArithmeticError(f"product invariants (r={r}, phi={ph}) are inconsistent with degree {alpha} ({label})")

        if not data.top_basis:
            if ring.reduce(r) != 0 or (ph and (f == 0 or self.torsion_visible)):
                fail()
            return self.zero(TOP)
        if p == 2:
            if label == "A":
                return self.normalize(TOP, [((alpha, "1"), r), ((alpha, "kappa"), div(ph - r, 2))])
            if label == "R":
                if self.torsion_visible and (r - ph) % 2:
                    fail()
                return self.element(alpha, data.top_basis[0], r)
            if label == "L":
                return self.element(alpha, data.top_basis[0], div(r, 2))
            if label == "Bracket(k)":
                return self.element(alpha, data.top_basis[0], ph if n > 0 else div(ph, 2))
            if label == "Bracket(k/2)" and f < 0:
                return self.element(alpha, data.top_basis[0], ph % 2)
            fail()
        if label.startswith("A_twisted"):
            d = d_in_ring(alpha, ring)
            return self.normalize(TOP, [((alpha, "mu"), ph), ((alpha, "t(iota)"), div(r - d * ph, p))])
        if label == "R":
            _, base = self._r_phi(alpha, "xi")
            if self.torsion_visible and (r * base - ph) % p:
                fail()
            return self.element(alpha, "xi", r)
        if label == "L":
            return self.element(alpha, "t(iota)", div(r, p))
        if label == "Bracket(k)":
            return self.element(alpha, data.top_basis[0], ph if n > 0 else div(ph, p))
        if label == "Bracket(k/p)" and f < 0:
            _, base = self._r_phi(alpha, "xieps")
            return self.element(alpha, "xieps", ph * inv_mod(base, p) % p)
        fail()
        raise AssertionError

    # -- Burnside ring action --------------------------------------------
    def unit_action(self, u, z: GradedClass) -> GradedClass:
        """Action of a Burnside unit (sign, tau power) on a class."""
        if z.level == BOTTOM:
            return self.scale(u.restriction(), z)
        out = z
        if u.tau_power:
            out = self.sub(z, self.transfer(self.restrict(z)))
        return self.scale(u.sign, out)

    def commutativity_holds(self, x: GradedClass, y: GradedClass) -> bool:
        """Check y*x = u(alpha, beta) * (x*y) for homogeneous x, y."""
        (a,) = x.degrees() or {self.zero_degree()}
        (b,) = y.degrees() or {self.zero_degree()}
        u = comm_unit(a, b)
        return self.multiply(y, x) == self.unit_action(u, self.multiply(x, y))

    # -- whole degrees as Mackey functors ----------------------------------
    def mackey_functor(self, alpha: ROGElement) -> MackeyFunctor:
        """The degree-alpha functor assembled from the basis, r and t."""
        data = self.additive(alpha)
        ring, p = self.ring, self.p
        nt, nb = len(data.top_basis), len(data.bottom_basis)
        top = FGModule.from_orders(ring, list(data.top_orders))
        bottom = FGModule.free(ring, nb)
        r = la.zeros(nb, nt)
        t = la.zeros(nt, nb)
        for j, name in enumerate(data.top_basis):
            img = self.restrict(self.element(alpha, name))
            if nb and img.terms:
                r[0, j] = img.terms[(alpha, "iota")]
        if nb:
            img = self.transfer(self.iota(alpha))
            for i, name in enumerate(data.top_basis):
                t[i, 0] = img.terms.get((alpha, name), 0)
        sig = la.mat([[self.sigma(alpha)]]) if nb else la.zeros(0, 0)
        return MackeyFunctor(ring, p, top, bottom, r, t, sig, data.label)

    def standard_functor(self, alpha: ROGElement) -> MackeyFunctor:
        """The standard functor named by the additive label."""
        ring, p = self.ring, self.p
        label = self.additive(alpha).label
        if label == "A":
            return burnside(ring, p)
        if label.startswith("A_twisted"):
            return twisted(ring, p, d_lift(alpha))
        if label == "R":
            return R(ring, p)
        if label == "L":
            return L(ring, p)
        if label == "R_minus":
            return R_minus(ring, p)
        if label == "L_minus":
            return L_minus(ring, p)
        if label == "Bracket(k)":
            return bracket(ring, p)
        if label in ("Bracket(k/2)", "Bracket(k/p)"):
            return bracket(ring, p, FGModule.cyclic(ring, p))
        return zero_functor(ring, p)

    # -- degree enumeration --------------------------------------------------
    def representative(self, f: int, n: int) -> ROGElement | None:
        """A degree with dimensions (f, n): f trivial summands and the rest in lambda_1."""
        if self.p == 2:
            return ROGElement(2, (f, n - f))
        if (n - f) % 2:
            return None
        return self.triv(f) + self.lam1((n - f) // 2)

    def degrees(self, bound: int, spread: int = 0) -> list:
        """Degrees with |dims| <= bound; for odd p also shifted by small
        (0,0)-degrees of the form k*(lambda_j - lambda_1), |k| <= spread."""
        out = []
        for f in range(-bound, bound + 1):
            for n in range(-bound, bound + 1):
                base = self.representative(f, n)
                if base is None:
                    continue
                out.append(base)
                if self.p > 2 and spread:
                    for j in range(2, self.h + 1):
                        for k in range(-spread, spread + 1):
                            if k:
                                out.append(base + ROGElement.lam(self.p, j, k) - self.lam1(k))
        return out


def point_grid(p: int, bound: int) -> dict:
    """Labels by dimensions for |dims| <= bound, rows by total dimension (top first)."""
    rows = []
    for n in range(bound, -bound - 1, -1):
        row = []
        for f in range(-bound, bound + 1):
            label = region_label(p, f, n)
            if label == "A_twisted":
                classes = sorted({min(r, p - r) for r in range(1, p)})
                label = "A_twisted(" + "|".join(str(c) for c in classes) + ")"
            row.append(label)
        rows.append({"total": n, "cells": row})
    return {"p": p, "bound": bound, "fixed_dims": list(range(-bound, bound + 1)), "rows": rows}


ASCII_SYMBOLS = {
    "A": "A", "R": "R", "L": "L", "R_minus": "R-", "L_minus": "L-",
    "Bracket(k)": "<k>", "Bracket(k/2)": "<k/2>", "Bracket(k/p)": "<k/p>",
    "Zero": ".", "NotARepresentation": "",
}


def grid_ascii(grid: dict) -> str:
    def sym(label: str) -> str:
        if label.startswith("A_twisted"):
            return "A<d>"
        return ASCII_SYMBOLS[label]

    width = 6
    lines = []
    for row in grid["rows"]:
        cells = "".join(sym(c).center(width) for c in row["cells"])
        lines.append(f"{row['total']:>4} |{cells}")
    axis = "".join(str(f).center(width) for f in grid["fixed_dims"])
    lines.append("     +" + "-" * len(axis))
    lines.append("      " + axis)
    return "\n".join(lines)
