"""Assembly of the three parameter sets for the irreducible representations
in the defining characteristic: congruence constraints on restricted
weights, their exact count, and the two finite parameter groups."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .covering import build_covering, derived_intersection_fixed, derived_split
from .exactmat import IntMatrix, hermite_form_mod
from .rootdata import FrobeniusDatum, RootDatum
from .torus import FiniteAbelianGroup, fixed_torus_structure


@dataclass(frozen=True)
class WeightConstraintSystem:
    """Congruences cutting the feasible restricted weights out of the box.

    The feasible set is the tuples (a_1, ..., a_l) with 0 <= a_i < q and
    rows @ a = 0 mod modulus; rows are kept in canonical reduced form.
    """

    rows: IntMatrix
    modulus: int
    length: int
    q: int

    @property
    def num_constraints(self) -> int:
        return self.rows.rows

    def describe(self) -> str:
        if self.num_constraints == 0:
            return "no constraint"
        lines = []
        for row in self.rows.entries:
            terms = [("a%d" % (i + 1)) if c == 1 else ("%d*a%d" % (c, i + 1))
                     for i, c in enumerate(row) if c]
            lines.append(" + ".join(terms) + f" = 0 (mod {self.modulus})")
        return "; ".join(lines)


def weight_constraints(kprime: FiniteAbelianGroup, l: int, q: int) -> WeightConstraintSystem:
    """Constraint system of the weights trivial on the given group.

    The group must be supported on the first l coordinates (the semisimple
    factor); one row per generator, scaled by the group exponent and
    canonically reduced.
    """
    for g in kprime.generators:
        if any(c != 0 for c in g.coords[l:]):
            raise ValueError("group is not supported on the first %d coordinates" % l)
    m = kprime.exponent
    raw = [[int(c * m) % m for c in g.coords[:l]] for g in kprime.generators]
    reduced = hermite_form_mod(IntMatrix.from_rows(raw, l), m)
    return WeightConstraintSystem(reduced, m, l, q)


def count_weights(sys: WeightConstraintSystem) -> int:
    """Exact number of feasible restricted weights.

    Works one coordinate at a time: the values 0..q-1 of a coordinate hit
    each residue mod the modulus a known number of times, and those counts
    are convolved over the constraint residues.
    """
    m, l, q = sys.modulus, sys.length, sys.q
    k = sys.num_constraints
    if k == 0 or m == 1:
        return q ** l
    c = q % m
    per_residue = [(q - c) // m + (1 if j < c else 0) for j in range(m)]
    zero = (0,) * k
    dist: dict[tuple[int, ...], int] = {zero: 1}
    for i in range(l):
        col = tuple(sys.rows.entries[row][i] % m for row in range(k))
        step: dict[tuple[int, ...], int] = {}
        for j in range(m):
            cnt = per_residue[j]
            if cnt:
                key = tuple(j * w % m for w in col)
                step[key] = step.get(key, 0) + cnt
        new: dict[tuple[int, ...], int] = {}
        for base, nb in dist.items():
            for add, na in step.items():
                key = tuple((a + b) % m for a, b in zip(base, add))
                new[key] = new.get(key, 0) + nb * na
        dist = new
    return dist.get(zero, 0)


def _feasible(sys: WeightConstraintSystem) -> Iterator[tuple[int, ...]]:
    m, l, q = sys.modulus, sys.length, sys.q
    k = sys.num_constraints
    if k == 0 or m == 1:
        yield from itertools.product(range(q), repeat=l)
        return
    cols = [tuple(sys.rows.entries[row][i] % m for row in range(k)) for i in range(l)]
    zero = (0,) * k
    if l == 0:
        yield ()
        return
    # final coordinate: values grouped by the residue tuple they contribute
    last_by_key: dict[tuple[int, ...], list[int]] = {}
    for v in range(q):
        last_by_key.setdefault(tuple(v * w % m for w in cols[-1]), []).append(v)

    def rec(i: int, acc: tuple[int, ...], prefix: list[int]) -> Iterator[tuple[int, ...]]:
        if i == l - 1:
            needed = tuple(-a % m for a in acc)
            for v in last_by_key.get(needed, ()):
                yield tuple(prefix) + (v,)
            return
        col = cols[i]
        for v in range(q):
            prefix.append(v)
            yield from rec(i + 1, tuple((a + v * w) % m for a, w in zip(acc, col)), prefix)
            prefix.pop()

    yield from rec(0, zero, [])


def enumerate_weights(sys: WeightConstraintSystem, limit: int) -> Iterator[tuple[int, ...]]:
    """Feasible weights in increasing lexicographic order, at most limit."""
    return itertools.islice(_feasible(sys), max(limit, 0))


@dataclass(frozen=True)
class ParamSummary:
    """The three parameter sets and the resulting total count."""

    constraints: WeightConstraintSystem
    weight_count: int
    group_b: FiniteAbelianGroup
    group_c: FiniteAbelianGroup
    total: int


def parameterize(d: RootDatum, f: FrobeniusDatum) -> ParamSummary:
    """Full parameterization of the irreducibles of the finite group.

    Pipeline: build the covering, take the Frobenius-fixed kernel inside
    the semisimple factor (group B), turn it into weight constraints and
    count the feasible restricted weights (set A), and compute the fixed
    points of the quotient torus (group C).
    """
    if f.q is None:
        raise ValueError("a concrete prime power q is required")
    cov = build_covering(d, f)
    group_b = derived_intersection_fixed(cov, f.q, f.p)
    sys = weight_constraints(group_b, d.ss_rank, f.q)
    count = count_weights(sys)
    if d.torus_rank > 0:
        split = derived_split(d, f)
        group_c = fixed_torus_structure(split.quotient_twist, f.q)
    else:
        group_c = FiniteAbelianGroup.trivial(0)
    total = count * group_b.order * group_c.order
    return ParamSummary(sys, count, group_b, group_c, total)


def semisimple_class_count(d: RootDatum, f: FrobeniusDatum) -> int:
    """Number of semisimple conjugacy classes of the finite group."""
    return parameterize(d, f).total
