"""Closed-form layer for simple groups: center generators per type, the
fixed-point case analysis per isogeny and twist, the explicit constraint
equations, and the closed-form semisimple class counts.

Everything here is independent of the general covering pipeline and serves
as its oracle; the two are compared in the acceptance suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .exactmat import IntMatrix, as_int_matrix, frac_mul, hermite_form_mod, perm_matrix, rational_inverse
from .numutil import divisors, euler_phi, is_prime_power
from .rootdata import RootDatum, ValidationError, quotient_datum, standard_datum
from .torsion import TorsionVector
from .torus import group_from_generators

__all__ = [
    "SimpleSpec", "SimpleParameterization", "center_order", "center_generators",
    "kernel_generators", "twist_permutation", "datum_for", "simple_parameterization",
    "table2_count", "lemma_divisor_count", "bruteforce_count", "euler_phi",
]

BRUTEFORCE_CAP = 10 ** 7

_ISOGENIES = {"sc", "adjoint", "so", "hspin", "intermediate"}


@dataclass(frozen=True)
class SimpleSpec:
    """A simple group given by family, rank, isogeny type, twist and q.

    For family A the isogeny is the index e of the root lattice in the
    character lattice (e = rank+1 simply connected, e = 1 adjoint); it is
    normalized into the ``e`` field.
    """

    family: str
    rank: int
    isogeny: str
    q: int
    epsilon: int = 1
    e: int | None = None

    def __post_init__(self) -> None:
        fam, l = self.family, self.rank
        if fam not in "ABCDEFG":
            raise ValidationError(f"unknown family {fam!r}")
        if self.isogeny not in _ISOGENIES:
            raise ValidationError(f"unknown isogeny {self.isogeny!r}")
        if is_prime_power(self.q) is None:
            raise ValidationError(f"{self.q} is not a prime power")
        # normalize the type-A lattice index
        if fam == "A":
            e = self.e
            if self.isogeny == "sc":
                e = l + 1
            elif self.isogeny == "adjoint":
                e = 1
            elif self.isogeny == "intermediate":
                if e is None:
                    raise ValidationError("intermediate type A needs the index e")
            else:
                raise ValidationError("type A has no SO or half-spin form")
            if not 1 <= e <= l + 1 or (l + 1) % e != 0:
                raise ValidationError(f"e = {e} does not divide {l + 1}")
            object.__setattr__(self, "e", e)
        elif self.isogeny == "intermediate":
            raise ValidationError("only type A has intermediate isogenies")
        if fam != "D" and self.isogeny in ("so", "hspin"):
            raise ValidationError("SO and half-spin forms exist only in type D")
        if fam == "D" and self.isogeny == "hspin" and l % 2 != 0:
            raise ValidationError("half-spin needs even rank")
        standard_datum(fam, l, "sc")  # validates (family, rank)
        eps = self.epsilon
        if eps not in (1, -1, 3):
            raise ValidationError("twist must be 1, -1 or 3")
        if eps == 3 and not (fam == "D" and l == 4 and self.isogeny in ("sc", "adjoint")):
            raise ValidationError("triality twist exists only for sc/adjoint D4")
        if eps == -1:
            if fam == "A" and l < 2:
                raise ValidationError("A1 has no nontrivial graph automorphism")
            if fam in ("B", "C", "F", "G"):
                raise ValidationError(f"type {fam} has no graph automorphism")
            if fam == "E" and l != 6:
                raise ValidationError("only E6 has a graph automorphism")
            if fam == "D" and self.isogeny == "hspin":
                raise ValidationError("half-spin groups only carry untwisted Frobenius maps")

    @property
    def p(self) -> int:
        return is_prime_power(self.q)[0]  # type: ignore[index]

    def label(self) -> str:
        iso = f"e={self.e}" if self.family == "A" and self.isogeny == "intermediate" else self.isogeny
        tw = {1: "", -1: " twisted", 3: " triality"}[self.epsilon]
        return f"{self.family}{self.rank} {iso}{tw} q={self.q}"


def center_order(family: str, l: int) -> int:
    """Order of the full center of the simply connected group."""
    if family == "A":
        return l + 1
    if family in ("B", "C"):
        return 2
    if family == "D":
        return 4
    if family == "E":
        return {6: 3, 7: 2, 8: 1}[l]
    return 1


def _frac_vec(pairs: list[tuple[int, int]]) -> TorsionVector:
    return TorsionVector.make(Fraction(a, b) for a, b in pairs)


def _full_center_generators(family: str, l: int) -> tuple[TorsionVector, ...]:
    """Tabulated generators of the full center, in coroot coordinates."""
    m = center_order(family, l)
    if m == 1:
        return ()
    if family == "A":
        return (_frac_vec([(i, m) for i in range(1, l + 1)]),)
    if family == "B":
        return (_frac_vec([(1, 2)] + [(0, 1)] * (l - 1)),)
    if family == "C":
        return (_frac_vec([(l + 1 - i, 2) for i in range(1, l + 1)]),)
    if family == "D":
        if l % 2 == 1:
            body = [(2, 4) if i % 2 == 1 else (0, 1) for i in range(3, l + 1)]
            return (_frac_vec([(1, 4), (3, 4)] + body),)
        z1 = _frac_vec([(1, 2), (0, 1)] + [(0, 1) if i % 2 == 1 else (1, 2)
                                           for i in range(3, l + 1)])
        z2 = _frac_vec([(0, 1), (1, 2)] + [(0, 1) if i % 2 == 1 else (1, 2)
                                           for i in range(3, l + 1)])
        return (z1, z2)
    if family == "E" and l == 6:
        return (_frac_vec([(1, 3), (0, 1), (2, 3), (0, 1), (1, 3), (2, 3)]),)
    if family == "E" and l == 7:
        return (_frac_vec([(0, 1), (1, 2), (0, 1), (0, 1), (1, 2), (0, 1), (1, 2)]),)
    raise AssertionError("unreachable")


def center_generators(family: str, l: int, p: int | None = None) -> tuple[TorsionVector, ...]:
    """Center generators; with p given, only the part of order prime to p."""
    standard_datum(family, l, "sc")
    gens = _full_center_generators(family, l)
    if p is None:
        return gens
    out = tuple(g.prime_to_part(p) for g in gens)
    return tuple(g for g in out if not g.is_zero)


def kernel_generators(spec: SimpleSpec) -> tuple[TorsionVector, ...]:
    """Generators of the central kernel defining the isogeny type.

    These are characteristic-free: the quotient lattice does not depend on
    p even when the kernel has no points of order coprime to p.
    """
    fam, l = spec.family, spec.rank
    gens = _full_center_generators(fam, l)
    if spec.isogeny == "sc" or not gens:
        return ()
    if fam == "A":
        g = gens[0].scale(spec.e)  # type: ignore[arg-type]
        return (g,) if not g.is_zero else ()
    if fam == "D":
        if spec.isogeny == "adjoint":
            return gens
        if l % 2 == 1:  # cyclic center: index-two subgroup
            return (gens[0].scale(2),)
        z1, z2 = gens
        return (z1 + z2,) if spec.isogeny == "so" else (z1,)
    return gens  # adjoint for B, C, E6, E7; trivial families never get here


def twist_permutation(family: str, l: int, epsilon: int) -> tuple[int, ...]:
    """Permutation of the simple roots induced by the graph automorphism."""
    if epsilon == 1:
        return tuple(range(l))
    if epsilon == 3:
        return (1, 3, 2, 0)  # order-3 symmetry of the rank-4 fork
    if family == "A":
        return tuple(l - 1 - i for i in range(l))
    if family == "D":
        return (1, 0) + tuple(range(2, l))
    if family == "E" and l == 6:
        return (5, 1, 4, 3, 2, 0)
    raise ValidationError(f"type {family}{l} has no order-2 graph automorphism")


def datum_for(spec: SimpleSpec) -> tuple[RootDatum, IntMatrix]:
    """Root datum of the spec's group and its Frobenius twist matrix."""
    sc = standard_datum(spec.family, spec.rank, "sc")
    twist_sc = perm_matrix(twist_permutation(spec.family, spec.rank, spec.epsilon))
    gens = kernel_generators(spec)
    if not gens:
        return sc, twist_sc
    datum = quotient_datum(sc, gens)
    basis = datum.simple_coroots.transpose()
    twist = as_int_matrix(
        frac_mul((basis @ twist_sc).entries, rational_inverse(basis)), spec.rank)
    return datum, twist


@dataclass(frozen=True)
class SimpleParameterization:
    """Fixed central subgroup and the matching weight congruence."""

    kf_factors: tuple[int, ...]
    constraint_rows: tuple[tuple[int, ...], ...]
    modulus: int

    @property
    def kf_order(self) -> int:
        out = 1
        for d in self.kf_factors:
            out *= d
        return out

    def describe(self) -> str:
        if not self.constraint_rows:
            return "no constraint"
        lines = []
        for row in self.constraint_rows:
            terms = [("a%d" % (i + 1)) if c == 1 else ("%d*a%d" % (c, i + 1))
                     for i, c in enumerate(row) if c]
            lines.append(" + ".join(terms) + f" = 0 (mod {self.modulus})")
        return "; ".join(lines)


def _package(gens: list[TorsionVector], l: int) -> SimpleParameterization:
    group = group_from_generators(gens, l)
    if group.is_trivial:
        return SimpleParameterization((), (), 1)
    m = group.exponent
    raw = IntMatrix.from_rows([[int(c * m) % m for c in g.coords] for g in group.generators], l)
    reduced = hermite_form_mod(raw, m)
    return SimpleParameterization(group.invariant_factors, reduced.entries, m)


def simple_parameterization(spec: SimpleSpec) -> SimpleParameterization:
    """Case analysis of the Frobenius-fixed central kernel per type.

    Returns its invariant factors together with the congruence the
    restricted weights must satisfy to be trivial on it.
    """
    fam, l, q, eps, p = spec.family, spec.rank, spec.q, spec.epsilon, spec.p
    trivial = SimpleParameterization((), (), 1)
    if spec.isogeny == "sc":
        return trivial
    if fam == "A":
        d = gcd((l + 1) // spec.e, q - eps)  # type: ignore[operator]
        if d == 1:
            return trivial
        z = _full_center_generators("A", l)[0]
        return _package([z.scale((l + 1) // d)], l)
    if fam in ("B", "C"):
        if p == 2:
            return trivial
        return _package(list(_full_center_generators(fam, l)), l)
    if fam == "D":
        if p == 2:
            return trivial
        gens = _full_center_generators("D", l)
        if l % 2 == 1:
            z = gens[0]
            if spec.isogeny == "so":
                return _package([z.scale(2)], l)
            if q % 4 == eps % 4:
                return _package([z], l)
            return _package([z.scale(2)], l)
        z1, z2 = gens
        if spec.isogeny == "so":
            return _package([z1 + z2], l)
        if spec.isogeny == "hspin":
            return _package([z1], l)
        if eps == 1:
            return _package([z1, z2], l)
        if eps == -1:
            return _package([z1 + z2], l)
        return trivial  # triality fixes no nonzero central element
    if fam == "E" and l == 6:
        if p == 3 or q % 3 != eps % 3:
            return trivial
        return _package([_full_center_generators("E", 6)[0]], l)
    if fam == "E" and l == 7:
        if p == 2:
            return trivial
        return _package([_full_center_generators("E", 7)[0]], l)
    return trivial  # G2, F4, E8


def table2_count(spec: SimpleSpec) -> int:
    """Closed-form number of semisimple classes of the finite group."""
    fam, l, q, eps, p = spec.family, spec.rank, spec.q, spec.epsilon, spec.p
    if spec.isogeny == "sc":
        return q ** l
    if fam == "A":
        d = gcd((l + 1) // spec.e, q - eps)  # type: ignore[operator]
        return sum(euler_phi(dd) * q ** ((l + 1) // dd - 1) for dd in divisors(d))
    if fam == "B":
        return q ** l + q ** (l - 1) if p != 2 else q ** l
    if fam == "C":
        return q ** l + q ** (l // 2) if p != 2 else q ** l
    if fam == "D":
        if p == 2:
            return q ** l
        if spec.isogeny == "so":
            return q ** l + q ** (l - 2)
        if spec.isogeny == "hspin":
            return q ** l + q ** (l // 2)
        if l % 2 == 0:
            if eps == 1:
                return q ** l + q ** (l - 2) + 2 * q ** (l // 2)
            if eps == -1:
                return q ** l + q ** (l - 2)
            return q ** l  # triality
        if q % 4 == eps % 4:
            return q ** l + q ** (l - 2) + 2 * q ** ((l - 3) // 2)
        return q ** l + q ** (l - 2)
    if fam == "E" and l == 6:
        if p != 3 and q % 3 == eps % 3:
            return q ** 6 + 2 * q ** 2
        return q ** 6
    if fam == "E" and l == 7:
        return q ** 7 + q ** 4 if p != 2 else q ** 7
    return q ** l  # G2, F4, E8


def lemma_divisor_count(n: int, m: int, q: int) -> int:
    """Totient-weighted divisor sum counting constrained tuples.

    Counts (a_0, ..., a_{n-1}) in [0, q)^n with sum i*a_i = 0 mod m, valid
    whenever m divides n and q-1 or q+1.
    """
    if n < 2 or m < 1 or n % m != 0:
        raise ValueError("need n >= 2 and m dividing n")
    if q < 1 or ((q - 1) % m != 0 and (q + 1) % m != 0):
        raise ValueError("need m dividing q-1 or q+1")
    total = sum(euler_phi(d) * q ** (n // d) for d in divisors(m))
    if total % m != 0:
        raise AssertionError("divisor sum failed to be divisible")
    return total // m


def bruteforce_count(coeffs: list[int], m: int, q: int, target: int = 0) -> int:
    """Exhaustive count of tuples in [0, q)^len with coeffs . a = target mod m.

    Literally enumerates every tuple (one array slot per tuple), vectorized
    for speed; refuses boxes above the cap.
    """
    if m < 1 or q < 1:
        raise ValueError("need m >= 1 and q >= 1")
    if q ** len(coeffs) > BRUTEFORCE_CAP:
        raise ValueError("enumeration too large")
    sums = np.zeros(1, dtype=np.int64)
    for c in coeffs:
        contrib = (np.arange(q, dtype=np.int64) * c) % m
        sums = (sums[:, None] + contrib[None, :]).ravel() % m
    return int(np.count_nonzero(sums == target % m))


def parity_count(n: int, q: int, nu: int) -> int:
    """Closed form (q^n + 1 - 2 nu) / 2 for the size of a parity class.

    Number of tuples in [0, q)^n, q odd, whose coordinate sum is nu mod 2.
    """
    if q % 2 == 0:
        raise ValueError("q must be odd")
    if nu not in (0, 1):
        raise ValueError("nu must be 0 or 1")
    total = q ** n + 1 - 2 * nu
    if total % 2 != 0:
        raise AssertionError("parity count failed to be divisible")
    return total // 2
