"""Degrees in the real representation ring of C_p and the associated twists."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .rings import GroundRing


def _check_prime(p: int) -> None:
    if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")


def inv_mod(j: int, p: int) -> int:
    """Smallest positive integer i with i*j = 1 mod p."""
    return pow(j % p, -1, p)


def fold_index(k: int, p: int) -> int:
    """Index in 1..(p-1)/2 of the irreducible with the same underlying real form as phi^k."""
    k %= p
    if k == 0:
        raise ValueError("phi^0 is the trivial representation")
    return min(k, p - k)


@dataclass(frozen=True)
class ROGElement:
    """A virtual real representation of C_p.

    For p odd, ``coeffs = (a0, a1, ..., a_h)`` with h = (p-1)/2 counts the
    trivial summand and the rotations lambda_1..lambda_h. For p = 2,
    ``coeffs = (a0, a1)`` counts the trivial and sign representations.
    """

    p: int
    coeffs: tuple

    def __post_init__(self) -> None:
        _check_prime(self.p)
        c = tuple(int(x) for x in self.coeffs)
        object.__setattr__(self, "coeffs", c)
        if len(c) != self.length(self.p):
            raise ValueError(f"expected {self.length(self.p)} coefficients for p={self.p}, got {len(c)}")

    @staticmethod
    def length(p: int) -> int:
        return 2 if p == 2 else 1 + (p - 1) // 2

    @classmethod
    def zero(cls, p: int) -> "ROGElement":
        return cls(p, (0,) * cls.length(p))

    @classmethod
    def trivial(cls, p: int, n: int = 1) -> "ROGElement":
        return cls(p, (n,) + (0,) * (cls.length(p) - 1))

    @classmethod
    def lam(cls, p: int, k: int, n: int = 1) -> "ROGElement":
        """n copies of lambda_k, folded so that lambda_k = lambda_{p-k} (p odd),
        or n copies of the sign representation when p = 2."""
        if p == 2:
            return cls(2, (0, n))
        if k % p == 0:
            return cls.trivial(p, 2 * n)
        c = [0] * cls.length(p)
        c[fold_index(k, p)] = n
        return cls(p, tuple(c))

    @classmethod
    def sign(cls, n: int = 1) -> "ROGElement":
        return cls(2, (0, n))

    def __add__(self, other: "ROGElement") -> "ROGElement":
        self._same(other)
        return ROGElement(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "ROGElement") -> "ROGElement":
        self._same(other)
        return ROGElement(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "ROGElement":
        return ROGElement(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, n: int) -> "ROGElement":
        return ROGElement(self.p, tuple(n * a for a in self.coeffs))

    __rmul__ = __mul__

    def _same(self, other: "ROGElement") -> None:
        if self.p != other.p:
            raise ValueError("degrees for different primes")

    @property
    def a0(self) -> int:
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_actual(self) -> bool:
        return all(a >= 0 for a in self.coeffs)

    def to_json(self) -> dict:
        return {"p": self.p, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> "ROGElement":
        return cls(int(data["p"]), tuple(data["coeffs"]))

    def __str__(self) -> str:
        names = ["1"] + (["s"] if self.p == 2 else [f"L{j}" for j in range(1, len(self.coeffs))])
        parts = []
        for a, nm in zip(self.coeffs, names):
            if a:
                parts.append(f"{a}" if nm == "1" else (nm if a == 1 else f"-{nm}" if a == -1 else f"{a}{nm}"))
        return "+".join(parts).replace("+-", "-") or "0"


def dims(alpha: ROGElement) -> tuple[int, int]:
    """(fixed dimension, total dimension)."""
    c = alpha.coeffs
    if alpha.p == 2:
        return c[0], c[0] + c[1]
    return c[0], c[0] + 2 * sum(c[1:])


def d_modp(alpha: ROGElement) -> int:
    """The twist as the representative min(r, p - r) of its class in F_p^x / +-1."""
    p = alpha.p
    if p == 2:
        raise ValueError("the twist is only defined for odd p")
    r = 1
    for j, a in enumerate(alpha.coeffs[1:], start=1):
        r = r * pow(j, a, p) % p
    return min(r, p - r)


def d_lift(alpha: ROGElement) -> int:
    """Integer lift: j^a for a >= 0 and inv(j)^(-a) for a < 0."""
    p = alpha.p
    if p == 2:
        return 1
    out = 1
    for j, a in enumerate(alpha.coeffs[1:], start=1):
        out *= j ** a if a >= 0 else inv_mod(j, p) ** (-a)
    return out


def d_in_ring(alpha: ROGElement, ring: GroundRing) -> int:
    """The lift of the twist as an element of ``ring``.

    Negative exponents use the ring inverse of j when it exists and the
    integer inv(j) otherwise.
    """
    p = alpha.p
    if p == 2:
        return ring.reduce(1)
    out = 1
    for j, a in enumerate(alpha.coeffs[1:], start=1):
        if a >= 0:
            f = j ** a
        elif ring.kind != "Z" and ring.is_unit(j):
            f = ring.inverse(j) ** (-a)
        else:
            f = inv_mod(j, p) ** (-a)
        out = ring.reduce(out * f)
    return out


def b_coeff(alpha: ROGElement) -> int:
    if dims(alpha) != (0, 0):
        raise ValueError("b_coeff needs a degree of dimension (0, 0)")
    num = 1 - d_lift(-alpha) * d_lift(alpha)
    assert num % alpha.p == 0
    return num // alpha.p


@dataclass(frozen=True)
class BurnsideUnit:
    """A unit ``sign * (1 - tau)^tau_power`` of the Burnside ring of C_p."""

    sign: int = 1
    tau_power: int = 0

    def __post_init__(self) -> None:
        if self.sign not in (1, -1) or self.tau_power not in (0, 1):
            raise ValueError("invalid Burnside unit")

    def __mul__(self, other: "BurnsideUnit") -> "BurnsideUnit":
        return BurnsideUnit(self.sign * other.sign, self.tau_power ^ other.tau_power)

    def restriction(self) -> int:
        """Image in the units of the ground ring at the free orbit."""
        return self.sign * (-1 if self.tau_power else 1)

    def as_burnside(self) -> tuple[int, int]:
        """Coordinates (a, b) of a*1 + b*tau."""
        return (self.sign, -self.sign if self.tau_power else 0)

    def __str__(self) -> str:
        base = "(1-t)" if self.tau_power else "1"
        return ("" if self.sign == 1 else "-") + base


def comm_unit(alpha: ROGElement, beta: ROGElement) -> BurnsideUnit:
    """The unit relating y*x to x*y for x in degree alpha and y in degree beta."""
    alpha._same(beta)
    a, b = alpha.coeffs, beta.coeffs
    sign = -1 if (a[0] * b[0]) % 2 else 1
    if alpha.p == 2:
        return BurnsideUnit(sign, (a[1] * b[1]) % 2)
    return BurnsideUnit(sign, 0)


def as_rog(p: int, coeffs: Sequence[int]) -> ROGElement:
    return ROGElement(p, tuple(coeffs))
