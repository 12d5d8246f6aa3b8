"""Exact torsion points of a torus: tuples in (Q/Z)^r, plus residue classes
standing in for a prime power that is not yet fixed."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .exactmat import IntMatrix
from .numutil import coprime_part


def _mod1(x: Fraction) -> Fraction:
    return Fraction(x.numerator % x.denominator, x.denominator)


@dataclass(frozen=True)
class TorsionVector:
    """Element of (Q/Z)^r, coordinates normalized to [0, 1)."""

    coords: tuple[Fraction, ...]

    @staticmethod
    def make(values: Iterable[Fraction | int | str]) -> TorsionVector:
        return TorsionVector(tuple(_mod1(Fraction(v)) for v in values))

    @staticmethod
    def zero(rank: int) -> TorsionVector:
        return TorsionVector((Fraction(0),) * rank)

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def order(self) -> int:
        return lcm(1, *(c.denominator for c in self.coords))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __add__(self, other: TorsionVector) -> TorsionVector:
        return TorsionVector(tuple(_mod1(a + b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: TorsionVector) -> TorsionVector:
        return TorsionVector(tuple(_mod1(a - b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> TorsionVector:
        return TorsionVector(tuple(_mod1(-a) for a in self.coords))

    def scale(self, k: int) -> TorsionVector:
        return TorsionVector(tuple(_mod1(k * a) for a in self.coords))

    def apply(self, m: IntMatrix) -> TorsionVector:
        """Row-vector image self @ m, reduced mod 1."""
        if self.rank != m.rows:
            raise ValueError("dimension mismatch")
        return TorsionVector(tuple(
            _mod1(sum((c * m.entries[i][j] for i, c in enumerate(self.coords)),
                      Fraction(0)))
            for j in range(m.cols)))

    def pair(self, x: Sequence[int]) -> Fraction:
        """Exact dot product with an integer vector, reduced mod 1."""
        if len(x) != self.rank:
            raise ValueError("length mismatch")
        return _mod1(sum((c * xi for c, xi in zip(self.coords, x)), Fraction(0)))

    def prime_to_part(self, p: int) -> TorsionVector:
        """Component of order coprime to p."""
        n = self.order
        nprime = coprime_part(n, p)
        ppart = n // nprime
        if nprime == 1:
            return TorsionVector.zero(self.rank)
        mult = ppart * pow(ppart, -1, nprime)
        return self.scale(mult)

    def head(self, n: int) -> tuple[Fraction, ...]:
        return self.coords[:n]

    def tail(self, n: int) -> tuple[Fraction, ...]:
        return self.coords[self.rank - n:] if n else ()

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class ResidueClass:
    """A prime power known only through its residue mod a fixed modulus."""

    residue: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1 or not 0 <= self.residue < self.modulus:
            raise ValueError("residue out of range")

    def __str__(self) -> str:
        return f"{self.residue} (mod {self.modulus})"
