"""Cohomology of complex projective space on a complete C_p-universe.

As a module over the point ring it is free on monomials D_j C^n
(0 <= j < p, n >= 0) with D_j in degree omega_j and C in degree omega_p.
Products are found over F_q (q != p) by matching two kinds of images:

* ``rho_star``: restriction to the nonequivariant ring k[z], D_j C^n -> z^(j+pn);
* ``ihat_star(N)``: the fixed component CP((phi^N)^inf), reduced modulo
  transfers. There the bracket quotient of the point ring in a degree of
  fixed dimension 0 is k, detected by the fixed-point value phi, and vanishes
  otherwise, so each image is a polynomial in z_N over k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from . import linalg as la
from .cells import omega
from .grading import ROGElement, comm_unit, d_in_ring, dims, fold_index
from .point import TOP, GradedClass, PointRing
from .rings import GroundRing


class UnderdeterminedProduct(ArithmeticError):
    """The image equations do not pin down a product (an implementation bug)."""


class InconsistentProduct(ArithmeticError):
    """The image equations have no solution (an implementation bug)."""


@dataclass
class CPClass:
    """A homogeneous class: sum of point-ring coefficients times D_j C^n."""

    degree: ROGElement
    terms: dict = field(default_factory=dict)  # (j, n) -> GradedClass

    def monomials(self) -> list:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CPClass) and self.degree == other.degree and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({self.terms[k]})*D{k[0]}C^{k[1]}" for k in self.monomials())

    def to_json(self) -> dict:
        return {"degree": list(self.degree.coeffs),
                "terms": [{"j": j, "n": n, "coeff": self.terms[(j, n)].to_json()} for j, n in self.monomials()]}


@dataclass(frozen=True)
class FixedTargetClass:
    """An image in k[z_N] tensor (point ring mod transfers): exponent -> scalar.

    The scalar multiplies the bracket generator whose fixed-point value is 1.
    """

    N: int
    coeffs: tuple  # sorted (exponent, scalar) pairs with nonzero scalar

    def to_json(self) -> dict:
        return {"N": self.N, "coeffs": [list(c) for c in self.coeffs]}


class ProjectiveSpace:
    def __init__(self, p: int, ring: GroundRing, convention: str = "binomial"):
        if convention not in ("binomial", "folded"):
            raise ValueError("convention is 'binomial' or 'folded'")
        self.p = p
        self.ring = ring
        self.convention = convention
        self.point = PointRing(p, ring)
        self._products: dict = {}

    # -- degrees -----------------------------------------------------------
    def omega(self, N: int) -> ROGElement:
        return _omega_cached(self.p, N)

    def monomial_degree(self, j: int, n: int) -> ROGElement:
        return self.omega(j) + self.omega(self.p) * n

    def coefficient_degree(self, alpha: ROGElement, j: int, n: int) -> ROGElement:
        return alpha - self.monomial_degree(j, n)

    def monomials_in_degree(self, alpha: ROGElement) -> list:
        """(j, n) whose coefficient group in degree alpha is nonzero."""
        out = []
        f, tot = dims(alpha)
        nmax = max(0, tot) // (2 * self.p) + abs(f) + 2
        for n in range(0, nmax + 1):
            for j in range(self.p):
                beta = self.coefficient_degree(alpha, j, n)
                if self.point.top_basis(beta):
                    out.append((j, n))
        return out

    # -- construction --------------------------------------------------------
    def monomial(self, j: int, n: int = 0, coeff: GradedClass | None = None) -> CPClass:
        if not 0 <= j < self.p or n < 0:
            raise ValueError("monomials are D_j C^n with 0 <= j < p and n >= 0")
        coeff = coeff if coeff is not None else self.point.one()
        (beta,) = coeff.degrees() or {self.point.zero_degree()}
        cls = CPClass(beta + self.monomial_degree(j, n))
        if not coeff.is_zero():
            cls.terms[(j, n)] = coeff
        return cls

    def D(self, j: int) -> CPClass:
        return self.monomial(j, 0)

    def C(self, n: int = 1) -> CPClass:
        return self.monomial(0, n)

    def one(self) -> CPClass:
        return self.monomial(0, 0)

    def add(self, x: CPClass, y: CPClass) -> CPClass:
        if x.is_zero():
            return y
        if y.is_zero():
            return x
        if x.degree != y.degree:
            raise ValueError("classes in different degrees")
        terms = dict(x.terms)
        for k, c in y.terms.items():
            s = self.point.add(terms[k], c) if k in terms else c
            if s.is_zero():
                terms.pop(k, None)
            else:
                terms[k] = s
        return CPClass(x.degree, terms)

    def scale_by(self, c: GradedClass, x: CPClass) -> CPClass:
        """Left multiplication by a point class."""
        (beta,) = c.degrees() or {self.point.zero_degree()}
        terms = {}
        for k, a in x.terms.items():
            prod = self.point.multiply(c, a)
            if not prod.is_zero():
                terms[k] = prod
        return CPClass(beta + x.degree, terms)

    # -- comparison maps -----------------------------------------------------
    def rho_star(self, x: CPClass) -> dict:
        """Exponent of z -> coefficient of the matching bottom generator."""
        out: dict = {}
        for (j, n), c in x.terms.items():
            for beta, r in self.point.restriction_value(c).items():
                e = j + self.p * n
                out[e] = self.ring.reduce(out.get(e, 0) + r)
        return {e: v for e, v in sorted(out.items()) if v}

    def d_Nj(self, N: int, j: int) -> int:
        """Twist coefficient of the image of D_j on the N-th fixed component.

        The product of twists d(lambda_{N-i} - lambda_{j-i}) over i < j. With the
        ``binomial`` convention each factor is (N-i)/(j-i) read exactly, so the
        product is C(N, j); ``folded`` identifies lambda_k with lambda_{p-k}
        and uses the integer lifts of the twist instead.
        """
        if N < j:
            return 0
        if N == j or self.p == 2:
            return self.ring.reduce(1)
        if self.convention == "binomial":
            return self.ring.reduce(comb(N, j))
        out = 1
        for i in range(j):
            diff = ROGElement.lam(self.p, fold_index(N - i, self.p)) - ROGElement.lam(self.p, fold_index(j - i, self.p))
            out = self.ring.reduce(out * d_in_ring(diff, self.ring))
        return out

    def ihat_star(self, N: int, x: CPClass) -> FixedTargetClass:
        out: dict = {}
        for (j, n), c in x.terms.items():
            (beta,) = c.degrees()
            if dims(beta)[0] != 0:
                continue
            v = self.point.phi(beta, c)
            out[n] = self.ring.reduce(out.get(n, 0) + self.d_Nj(N, j) * v)
        return FixedTargetClass(N, tuple((n, v) for n, v in sorted(out.items()) if v))

    def images(self, x: CPClass) -> tuple:
        return (self.rho_star(x),) + tuple(self.ihat_star(N, x).coeffs for N in range(self.p))

    def image_product(self, a: tuple, b: tuple) -> tuple:
        """Products of image tuples: both targets are polynomial rings."""
        def mul(u: dict, v: dict) -> dict:
            out: dict = {}
            for e1, c1 in u.items():
                for e2, c2 in v.items():
                    out[e1 + e2] = self.ring.reduce(out.get(e1 + e2, 0) + c1 * c2)
            return {e: c for e, c in sorted(out.items()) if c}

        rho = mul(a[0], b[0])
        fixed = tuple(tuple(sorted(mul(dict(u), dict(v)).items())) for u, v in zip(a[1:], b[1:]))
        return (rho,) + fixed

    # -- products --------------------------------------------------------------
    def _require_field(self) -> None:
        if not self.ring.is_field or self.ring.characteristic == self.p:
            raise ValueError("products are computed over F_q with q != p")

    def monomial_product(self, j: int, n: int, k: int, m: int) -> CPClass:
        """D_j C^n * D_k C^m by solving the image equations."""
        self._require_field()
        key = (j, n, k, m) if (j, n) <= (k, m) else (k, m, j, n)
        if key in self._products:
            return self._products[key]
        alpha = self.monomial_degree(j, n) + self.monomial_degree(k, m)
        s = n + m
        slots = [(i, s) for i in range(self.p)] + [(i, s + 1) for i in range(j + k - self.p + 1)]
        unknowns = []
        for i, t in slots:
            beta = self.coefficient_degree(alpha, i, t)
            for name in self.point.top_basis(beta):
                unknowns.append((i, t, beta, name))
        rows = 1 + self.p
        A = la.zeros(rows, len(unknowns))
        e_target = dims(alpha)[1] // 2
        for col, (i, t, beta, name) in enumerate(unknowns):
            elt = self.point.element(beta, name)
            if i + self.p * t == e_target:
                A[0, col] = sum(self.point.restriction_value(elt).values())
            if dims(beta)[0] == 0:
                ph = self.point.phi(beta, elt)
                for N in range(self.p):
                    A[1 + N, col] = self.d_Nj(N, i) * ph
        A = la.reduce(A, self.ring)
        b = [1] + [self.ring.reduce(self.d_Nj(N, j) * self.d_Nj(N, k)) for N in range(self.p)]
        if la.rank(A, self.ring) < len(unknowns):
            raise UnderdeterminedProduct(f"D{j}C^{n} * D{k}C^{m}: {len(unknowns)} unknowns, rank {la.rank(A, self.ring)}")
        sol = la.solve_linear(A, b, self.ring)
        if sol is None:
            raise InconsistentProduct(f"D{j}C^{n} * D{k}C^{m}: image equations have no solution")
        result = CPClass(alpha, {})
        for (i, t, beta, name), v in zip(unknowns, sol):
            if self.ring.reduce(v):
                term = self.monomial(i, t, self.point.element(beta, name, v))
                result = self.add(result, term)
        self._products[key] = result
        return result

    def product(self, x: CPClass, y: CPClass) -> CPClass:
        self._require_field()
        out = CPClass(x.degree + y.degree, {})
        for (j, n), c1 in x.terms.items():
            for (k, m), c2 in y.terms.items():
                (b2,) = c2.degrees()
                u = comm_unit(self.monomial_degree(j, n), b2)
                assert u.sign == 1 and u.tau_power == 0, "monomials sit in even complex degrees"
                coeff = self.point.multiply(c1, c2)
                if coeff.is_zero():
                    continue
                out = self.add(out, self.scale_by(coeff, self.monomial_product(j, n, k, m)))
        return out

    def power(self, x: CPClass, k: int) -> CPClass:
        out = self.one()
        for _ in range(k):
            out = self.product(out, x)
        return out

    # -- the B_{C_p}O(2) subalgebra ---------------------------------------------
    def bo2_generators(self) -> list:
        """D_2, D_4, ..., D_{p-1}, then D_1 C, D_3 C, ..., D_{p-2} C, then C^2."""
        if self.p == 2:
            raise ValueError("the orthogonal subalgebra needs p odd")
        gens = [("D%d" % j, self.D(j)) for j in range(2, self.p, 2)]
        gens += [("D%dC" % j, self.monomial(j, 1)) for j in range(1, self.p - 1, 2)]
        gens.append(("C^2", self.C(2)))
        return gens


def bo2_member(x: CPClass) -> bool:
    """Every monomial D_j C^n in x has j + n even."""
    return all((j + n) % 2 == 0 for j, n in x.terms)


@lru_cache(maxsize=None)
def _omega_cached(p: int, N: int) -> ROGElement:
    return omega(p, N)
