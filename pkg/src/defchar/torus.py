"""Finite subgroups of a torus over the algebraic closure: solving torsion
systems, characters, Frobenius action, fixed points and Lang images.

A torus of rank r is identified with r-tuples in Q/Z (restricted to the
part of order coprime to the characteristic once a prime is fixed).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd, lcm, prod
from typing import Iterator, Sequence

from .exactmat import IntMatrix, rational_rank, smith_normal_form, unimodular_inverse
from .numutil import coprime_part
from .rootdata import RootDatum
from .torsion import ResidueClass, TorsionVector

ENUMERATION_LIMIT = 10_000
_MEMBERSHIP_LIMIT = 10 ** 6


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Finite subgroup of (Q/Z)^r in invariant-factor form.

    ``generators[i]`` has order ``invariant_factors[i]`` and the group is
    their (inner) direct sum; factors satisfy d1 | d2 | ... with each > 1.
    """

    generators: tuple[TorsionVector, ...]
    invariant_factors: tuple[int, ...]
    ambient_rank: int

    @staticmethod
    def trivial(ambient_rank: int) -> FiniteAbelianGroup:
        return FiniteAbelianGroup((), (), ambient_rank)

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def elements(self) -> Iterator[TorsionVector]:
        zero = TorsionVector.zero(self.ambient_rank)
        for exps in itertools.product(*(range(d) for d in self.invariant_factors)):
            t = zero
            for e, g in zip(exps, self.generators):
                if e:
                    t = t + g.scale(e)
            yield t

    @cached_property
    def _element_set(self) -> frozenset[tuple[Fraction, ...]]:
        if self.order > _MEMBERSHIP_LIMIT:
            raise ValueError("group too large for membership by enumeration")
        return frozenset(t.coords for t in self.elements())

    def __contains__(self, t: TorsionVector) -> bool:
        return t.coords in self._element_set

    def describe(self) -> str:
        if self.is_trivial:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def group_from_generators(gens: Sequence[TorsionVector], ambient_rank: int,
                          p: int | None = None) -> FiniteAbelianGroup:
    """Canonical invariant-factor presentation of the subgroup generated by
    the given vectors (their prime-to-p parts when p is set)."""
    vecs = [g.prime_to_part(p) if p is not None else g for g in gens]
    vecs = [g for g in vecs if not g.is_zero]
    if not vecs:
        return FiniteAbelianGroup.trivial(ambient_rank)
    d = lcm(*(g.order for g in vecs))
    r = ambient_rank
    V = IntMatrix.from_rows([[int(c * d) for c in g.coords] for g in vecs], r)
    snf = smith_normal_form(IntMatrix.vstack(V, IntMatrix.identity(r).scale(d)))
    qinv = unimodular_inverse(snf.Q)
    out_gens: list[TorsionVector] = []
    out_factors: list[int] = []
    for i in reversed(range(r)):
        e = snf.D.entries[i][i]
        n = d // e
        if n > 1:
            out_gens.append(TorsionVector.make(Fraction(e * x, d) for x in qinv.row(i)))
            out_factors.append(n)
    return FiniteAbelianGroup(tuple(out_gens), tuple(out_factors), r)


def solve_torsion_system(M: IntMatrix, p: int | None = None) -> FiniteAbelianGroup:
    """All t in (Q/Z)^r with t @ M.transpose() = 0, via the Smith form.

    M must have full column rank (r = number of torus coordinates), else
    the solution set is infinite.  With p set, only solutions of order
    coprime to p are kept.
    """
    r = M.cols
    snf = smith_normal_form(M.transpose())
    if snf.rank < r:
        raise ValueError("solution set is infinite (matrix is not of full rank)")
    gens: list[TorsionVector] = []
    factors: list[int] = []
    for i in range(r):
        n = snf.D.entries[i][i]
        n_used = coprime_part(n, p) if p is not None else n
        if n_used > 1:
            gens.append(TorsionVector.make(Fraction(x, n_used) for x in snf.P.row(i)))
            factors.append(n_used)
    return FiniteAbelianGroup(tuple(gens), tuple(factors), r)


def evaluate_character(x: Sequence[int], t: TorsionVector) -> Fraction:
    """Value of the character with integer coordinate vector x at t, mod 1."""
    return t.pair(x)


def _multiplier(q: int | ResidueClass, group: FiniteAbelianGroup) -> int:
    if isinstance(q, ResidueClass):
        if q.modulus % group.exponent != 0:
            raise ValueError("concrete q required: residue modulus does not "
                             "determine the action on this group")
        return q.residue % group.exponent if group.exponent > 1 else 0
    return q


def frobenius_action(t: TorsionVector, q: int, twist: IntMatrix) -> TorsionVector:
    """Image q * t * twist^tr of a torus element under the Frobenius."""
    return t.apply(twist.transpose()).scale(q)


def _check_stable(group: FiniteAbelianGroup, twist: IntMatrix) -> None:
    tw = twist.transpose()
    for g in group.generators:
        if g.apply(tw) not in group:
            raise ValueError("twist does not stabilize the group")


def _fixed_by_enumeration(group: FiniteAbelianGroup, c: int,
                          twist: IntMatrix) -> list[TorsionVector]:
    tw = twist.transpose()
    return [t for t in group.elements() if t.apply(tw).scale(c) == t]


def _fixed_by_congruences(group: FiniteAbelianGroup, c: int,
                          twist: IntMatrix) -> list[TorsionVector]:
    """Solve for exponent vectors x with sum x_i * (F(g_i) - g_i) = 0."""
    if group.is_trivial:
        return [TorsionVector.zero(group.ambient_rank)]
    d = group.exponent
    r = group.ambient_rank
    tw = twist.transpose()
    rows = []
    for g in group.generators:
        diff = g.apply(tw).scale(c) - g
        rows.append([int(x * d) for x in diff.coords])
    W = IntMatrix.from_rows(rows, r)
    snf = smith_normal_form(W)
    k = len(group.generators)
    sols: list[TorsionVector] = []
    for i in range(k):
        dd = snf.D.entries[i][i] if i < min(snf.D.shape) else 0
        step = d // gcd(dd, d)
        x = snf.P.row(i)
        t = TorsionVector.zero(r)
        for xi, g in zip(x, group.generators):
            t = t + g.scale(step * xi)
        sols.append(t)
    return sols


def fixed_subgroup(group: FiniteAbelianGroup, q: int | ResidueClass,
                   twist: IntMatrix) -> FiniteAbelianGroup:
    """Subgroup fixed by t -> q * t * twist^tr.

    q may be a residue class mod a multiple of the group exponent, which is
    all the action needs.  Small groups are handled by enumeration, larger
    ones by congruence solving on exponent vectors.
    """
    _check_stable(group, twist)
    c = _multiplier(q, group)
    if group.order <= ENUMERATION_LIMIT:
        fixed = _fixed_by_enumeration(group, c, twist)
    else:
        fixed = _fixed_by_congruences(group, c, twist)
    return group_from_generators(fixed, group.ambient_rank)


def lang_image(group: FiniteAbelianGroup, q: int | ResidueClass,
               twist: IntMatrix) -> FiniteAbelianGroup:
    """Image of the endomorphism t -> F(t) - t of the group."""
    _check_stable(group, twist)
    c = _multiplier(q, group)
    tw = twist.transpose()
    images = [g.apply(tw).scale(c) - g for g in group.generators]
    return group_from_generators(images, group.ambient_rank)


@dataclass(frozen=True)
class CenterStructure:
    """Center of a reductive group: component group plus connected rank."""

    finite: FiniteAbelianGroup
    torus_rank: int


def center_of(d: RootDatum, p: int | None = None) -> CenterStructure:
    """Solutions of t @ A^tr = 0: finite when the datum is semisimple,
    otherwise a finite part together with a positive-dimensional torus."""
    r, l = d.rank, d.ss_rank
    snf = smith_normal_form(d.simple_roots.transpose())
    gens: list[TorsionVector] = []
    factors: list[int] = []
    for i in range(min(l, r)):
        n = snf.D.entries[i][i]
        n_used = coprime_part(n, p) if p is not None else n
        if n_used > 1:
            gens.append(TorsionVector.make(Fraction(x, n_used) for x in snf.P.row(i)))
            factors.append(n_used)
    finite = FiniteAbelianGroup(tuple(gens), tuple(factors), r)
    return CenterStructure(finite, r - l)


def fixed_torus_structure(twist: IntMatrix, q: int) -> FiniteAbelianGroup:
    """Structure of the q-power Frobenius fixed points of a torus.

    Invariant factors are the nontrivial Smith diagonal entries of
    (q * twist^tr - id); the order equals |det(q * twist^tr - id)|.
    """
    r = twist.rows
    if r == 0:
        return FiniteAbelianGroup.trivial(0)
    M = twist.scale(q) - IntMatrix.identity(r)
    if rational_rank(M) < r:
        raise ValueError("characteristic matrix is singular")
    return solve_torsion_system(M)
