"""Covering of a reductive group by a product of simply connected groups
and a torus, the kernel of that covering, and the derived-subgroup split.

The covering is described on cocharacter lattices by a full-rank integer
matrix whose transpose stacks the simple coroots over a basis of the
sublattice orthogonal to all roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .exactmat import (
    IntMatrix,
    as_int_matrix,
    frac_mul,
    integer_kernel_basis,
    matrix_order,
    rational_inverse,
    smith_normal_form,
)
from .numutil import factorize
from .rootdata import FrobeniusDatum, RootDatum, ValidationError, validate_root_datum
from .torsion import ResidueClass, TorsionVector
from .torus import (
    FiniteAbelianGroup,
    fixed_subgroup,
    group_from_generators,
    solve_torsion_system,
)


@dataclass(frozen=True)
class CoveringData:
    """Covering datum, lattice map and transported Frobenius twist.

    ``cochar_map_t`` is the r x r matrix whose rows are the simple coroots
    of the base datum followed by ``orth_basis``; the kernel of the covering
    is cut out by it.  ``modulus`` is its largest Smith invariant: every
    denominator in the kernel divides it.
    """

    datum: RootDatum
    base: RootDatum
    cochar_map_t: IntMatrix
    orth_basis: IntMatrix
    twist: IntMatrix
    modulus: int


def build_covering(d: RootDatum, f: FrobeniusDatum) -> CoveringData:
    """Construct the covering datum and the induced twist on it."""
    l, r = d.ss_rank, d.rank
    orth = integer_kernel_basis(d.simple_roots)
    map_t = IntMatrix.vstack(d.simple_coroots, orth)
    cover_roots = IntMatrix.hstack(d.cartan.transpose(), IntMatrix.zeros(l, r - l))
    cover_coroots = IntMatrix.hstack(IntMatrix.identity(l), IntMatrix.zeros(l, r - l))
    cover = validate_root_datum(cover_roots, cover_coroots)
    try:
        twist_t = as_int_matrix(
            frac_mul((map_t @ f.twist.transpose()).entries, rational_inverse(map_t)), r)
    except ValueError:
        raise ValidationError("twist does not lift to the covering "
                              "(conjugated matrix is not integral)") from None
    twist = twist_t.transpose()
    if matrix_order(twist, f.order) != f.order:
        raise AssertionError("covering twist changed order under conjugation")
    modulus = smith_normal_form(map_t).invariant_factors[-1]
    return CoveringData(cover, d, map_t, orth, twist, modulus)


def kernel_of_covering(cov: CoveringData, p: int | None = None) -> FiniteAbelianGroup:
    """Kernel of the covering as a finite subgroup of the covering torus."""
    return solve_torsion_system(cov.cochar_map_t.transpose(), p)


def derived_intersection_fixed(cov: CoveringData, q: int | ResidueClass,
                               p: int | None = None) -> FiniteAbelianGroup:
    """Frobenius-fixed kernel elements lying in the semisimple factor.

    Membership in the semisimple factor is the vanishing of the last
    (rank - semisimple rank) coordinates.
    """
    kernel = kernel_of_covering(cov, p)
    fixed = fixed_subgroup(kernel, q, cov.twist)
    tail = cov.base.torus_rank
    members = [t for t in fixed.elements() if all(c == 0 for c in t.tail(tail))]
    return group_from_generators(members, fixed.ambient_rank)


@dataclass(frozen=True)
class DerivedSplit:
    """Coordinate change separating the derived subgroup from the quotient
    torus, with the twist blocks acting on each part."""

    change: IntMatrix
    derived_datum: RootDatum
    derived_twist: IntMatrix
    quotient_twist: IntMatrix


def derived_split(d: RootDatum, f: FrobeniusDatum) -> DerivedSplit:
    """Change basis so the coroots span the first coordinates, then split."""
    l, r = d.ss_rank, d.rank
    change = smith_normal_form(d.simple_coroots).Q
    coroots_new = d.simple_coroots @ change
    if any(coroots_new.entries[i][j] != 0 for i in range(l) for j in range(l, r)):
        raise AssertionError("column transform failed to clear the torus block")
    roots_new = as_int_matrix(
        frac_mul(d.simple_roots.entries, rational_inverse(change.transpose())), r)
    twist_new = as_int_matrix(
        frac_mul(frac_mul(change.transpose().entries, f.twist.entries),
                 rational_inverse(change.transpose())), r)
    coupling = [(i, j) for i in range(l, r) for j in range(l)
                if twist_new.entries[i][j] != 0]
    if coupling:
        raise ValidationError("twist couples the quotient torus back into the "
                              "derived subgroup; coordinates are not split")
    derived = validate_root_datum(roots_new.submatrix(0, l, 0, l),
                                  coroots_new.submatrix(0, l, 0, l))
    if derived.cartan.entries != d.cartan.entries:
        raise AssertionError("derived subgroup changed the Cartan matrix")
    return DerivedSplit(change, derived,
                        twist_new.submatrix(0, l, 0, l),
                        twist_new.submatrix(l, r, l, r))


@dataclass(frozen=True)
class ResidueSummary:
    """Kernel data for one residue class of prime powers mod the modulus."""

    residue: int
    modulus: int
    prime: int | None
    skipped: bool
    reason: str | None
    kernel_order: int | None
    fixed_factors: tuple[int, ...] | None
    derived_factors: tuple[int, ...] | None


def residue_analysis(cov: CoveringData) -> tuple[ResidueSummary, ...]:
    """Kernel, fixed points and derived intersection per residue class.

    A class c mod m can contain a prime power only if gcd(c, m) is 1 or a
    prime power; in the latter case that prime is the characteristic.
    Classes failing this are reported as skipped.
    """
    m = cov.modulus
    out = []
    for c in range(m):
        g = gcd(c, m) if c else m
        if g == 1:
            p: int | None = None
        else:
            fac = factorize(g)
            if len(fac) != 1:
                out.append(ResidueSummary(c, m, None, True,
                                          "gcd with the modulus has two prime factors",
                                          None, None, None))
                continue
            p = next(iter(fac))
        kernel = kernel_of_covering(cov, p)
        residue = ResidueClass(c, m)
        fixed = fixed_subgroup(kernel, residue, cov.twist)
        derived = derived_intersection_fixed(cov, residue, p)
        out.append(ResidueSummary(c, m, p, False, None, kernel.order,
                                  fixed.invariant_factors, derived.invariant_factors))
    return tuple(out)
