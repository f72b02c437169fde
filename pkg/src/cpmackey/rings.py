"""Ground rings: the integers, prime fields and integers modulo n."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for k in range(2, math.isqrt(n) + 1):
        if n % k == 0:
            return False
    return True


@dataclass(frozen=True)
class GroundRing:
    """One of Z, F_q (q prime) or Z/n (n >= 2).

    ``kind`` is ``"Z"``, ``"F"`` or ``"Zn"``; ``modulus`` is 0 for Z.
    """

    kind: str
    modulus: int = 0

    def __post_init__(self) -> None:
        if self.kind == "Z":
            if self.modulus != 0:
                raise ValueError("the integers carry no modulus")
        elif self.kind == "F":
            if not _is_prime(self.modulus):
                raise ValueError(f"F_q needs q prime, got {self.modulus}")
        elif self.kind == "Zn":
            if self.modulus < 2:
                raise ValueError("Z/n needs n >= 2")
        else:
            raise ValueError(f"unknown ring kind {self.kind!r}")

    @staticmethod
    def integers() -> "GroundRing":
        return GroundRing("Z")

    @staticmethod
    def field(q: int) -> "GroundRing":
        return GroundRing("F", q)

    @staticmethod
    def mod(n: int) -> "GroundRing":
        return GroundRing("Zn", n)

    @staticmethod
    def parse(text: str) -> "GroundRing":
        """Accepts ``Z``, ``F7``, ``GF7``, ``Fq7``, ``Z/4`` and ``Zmod4``."""
        s = text.strip()
        if s in ("Z", "ZZ"):
            return GroundRing.integers()
        m = re.fullmatch(r"(?:GF|Fq|F)(\d+)", s)
        if m:
            return GroundRing.field(int(m.group(1)))
        m = re.fullmatch(r"Z(?:/|mod)(\d+)", s)
        if m:
            return GroundRing.mod(int(m.group(1)))
        raise ValueError(f"cannot parse ground ring {text!r}")

    @property
    def name(self) -> str:
        if self.kind == "Z":
            return "Z"
        if self.kind == "F":
            return f"F{self.modulus}"
        return f"Z/{self.modulus}"

    def __str__(self) -> str:
        return self.name

    @property
    def is_field(self) -> bool:
        return self.kind == "F"

    @property
    def characteristic(self) -> int:
        return self.modulus

    def reduce(self, x: int) -> int:
        return x % self.modulus if self.modulus else x

    def is_zero(self, x: int) -> bool:
        return self.reduce(x) == 0

    def is_unit(self, a: int) -> bool:
        if self.kind == "Z":
            return a in (1, -1)
        return math.gcd(a % self.modulus, self.modulus) == 1

    def inverse(self, a: int) -> int:
        if not self.is_unit(a):
            raise ZeroDivisionError(f"{a} is not a unit in {self.name}")
        if self.kind == "Z":
            return a
        return pow(a % self.modulus, -1, self.modulus)

    def units(self) -> list[int]:
        if self.kind == "Z":
            return [1, -1]
        return [a for a in range(1, self.modulus) if math.gcd(a, self.modulus) == 1]

    def p_invertible(self, p: int) -> bool:
        """Whether the integer p is a unit of the ring."""
        if self.kind == "Z":
            return p in (1, -1)
        return math.gcd(p, self.modulus) == 1

    def no_p_torsion(self, p: int) -> bool:
        """Whether the ring has no nonzero element of additive order p."""
        if self.kind == "Z":
            return True
        return self.modulus % p != 0

    def elements(self) -> list[int]:
        if self.kind == "Z":
            raise ValueError("the integers are infinite")
        return list(range(self.modulus))

    def to_json(self) -> str:
        return self.name


ZZ = GroundRing.integers()
