"""Root data given by matrix pairs: validation, Cartan classification,
root enumeration, standard and quotient constructions, Frobenius twists."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .exactmat import (
    IntMatrix,
    as_int_matrix,
    frac_mul,
    hermite_normal_form,
    matrix_order,
    rational_inverse,
    rational_rank,
    smith_normal_form,
)
from .numutil import is_prime_power
from .torsion import TorsionVector

ROOT_CLOSURE_CAP = 2000

# rank ranges of the irreducible diagrams; nodes are numbered as in Chevie,
# which counts B/C/D from the opposite end than Bourbaki does
_RANK_RANGE = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


class ValidationError(ValueError):
    """Semantically invalid input data."""


def standard_cartan(letter: str, l: int) -> IntMatrix:
    """Cartan matrix of an irreducible diagram in the fixed node numbering."""
    lo, hi = _RANK_RANGE.get(letter, (None, None))
    if lo is None or l < lo or (hi is not None and l > hi):
        raise ValidationError(f"no diagram of type {letter}{l}")
    c = [[2 * int(i == j) for j in range(l)] for i in range(l)]

    def bond(i: int, j: int, cij: int = -1, cji: int = -1) -> None:
        c[i][j] = cij
        c[j][i] = cji

    if letter == "A":
        for i in range(l - 1):
            bond(i, i + 1)
    elif letter == "B":
        bond(0, 1, -2, -1)
        for i in range(1, l - 1):
            bond(i, i + 1)
    elif letter == "C":
        bond(0, 1, -1, -2)
        for i in range(1, l - 1):
            bond(i, i + 1)
    elif letter == "D":
        bond(0, 2)
        bond(1, 2)
        for i in range(2, l - 1):
            bond(i, i + 1)
    elif letter == "E":
        bond(0, 2)
        bond(1, 3)
        for i in range(2, l - 1):
            bond(i, i + 1)
    elif letter == "F":
        bond(0, 1)
        bond(1, 2, -1, -2)
        bond(2, 3)
    elif letter == "G":
        bond(0, 1, -1, -3)
    return IntMatrix.from_rows(c, l)


@dataclass(frozen=True)
class CartanComponent:
    """One connected component, with its nodes listed in diagram order."""

    letter: str
    rank: int
    nodes: tuple[int, ...]
    flipped: bool = False

    def label(self) -> str:
        return f"{self.letter}{self.rank}"


@dataclass(frozen=True)
class CartanClassification:
    components: tuple[CartanComponent, ...]

    def __str__(self) -> str:
        if not self.components:
            return "torus (no components)"
        return " + ".join(
            "{%s}:%s" % (",".join(str(n + 1) for n in comp.nodes), comp.label())
            for comp in self.components)


def _check_cartan_axioms(C: IntMatrix) -> None:
    if not C.is_square:
        raise ValidationError("Cartan matrix is not square")
    n = C.rows
    for i in range(n):
        if C.entries[i][i] != 2:
            raise ValidationError(f"Cartan diagonal entry {i + 1} is not 2")
        for j in range(n):
            if i == j:
                continue
            cij, cji = C.entries[i][j], C.entries[j][i]
            if cij > 0:
                raise ValidationError(f"positive off-diagonal Cartan entry at ({i + 1},{j + 1})")
            if (cij == 0) != (cji == 0):
                raise ValidationError(f"asymmetric zero pattern at ({i + 1},{j + 1})")
            if cij * cji > 3:
                raise ValidationError(f"bond multiplicity above 3 at ({i + 1},{j + 1})")


def _candidates(k: int) -> list[str]:
    out = []
    for letter, (lo, hi) in _RANK_RANGE.items():
        if k >= lo and (hi is None or k <= hi):
            out.append(letter)
    return out


def _match_component(C: IntMatrix, nodes: list[int], std: IntMatrix) -> tuple[int, ...] | None:
    """Bijection (as a node tuple in standard order) matching std, or None."""
    k = len(nodes)

    def extend(assigned: list[int], remaining: list[int]) -> tuple[int, ...] | None:
        pos = len(assigned)
        if pos == k:
            return tuple(assigned)
        for idx, cand in enumerate(remaining):
            ok = all(
                C.entries[prev][cand] == std.entries[i][pos]
                and C.entries[cand][prev] == std.entries[pos][i]
                for i, prev in enumerate(assigned))
            if ok:
                res = extend(assigned + [cand], remaining[:idx] + remaining[idx + 1:])
                if res is not None:
                    return res
        return None

    return extend([], sorted(nodes))


def classify_cartan(C: IntMatrix) -> CartanClassification:
    """Split the Dynkin graph into components and identify each diagram.

    Rank-2 double-bond components are always reported as B2; ``flipped``
    records whether the two nodes had to be swapped to match.
    """
    _check_cartan_axioms(C)
    n = C.rows
    seen = [False] * n
    comps: list[CartanComponent] = []
    for start in range(n):
        if seen[start]:
            continue
        todo, nodes = [start], []
        seen[start] = True
        while todo:
            i = todo.pop()
            nodes.append(i)
            for j in range(n):
                if not seen[j] and C.entries[i][j] != 0:
                    seen[j] = True
                    todo.append(j)
        nodes.sort()
        match = None
        for letter in _candidates(len(nodes)):
            mapping = _match_component(C, nodes, standard_cartan(letter, len(nodes)))
            if mapping is not None:
                flipped = letter == "B" and len(nodes) == 2 and mapping[0] > mapping[1]
                match = CartanComponent(letter, len(nodes), mapping, flipped)
                break
        if match is None:
            raise ValidationError(
                "component {%s} matches no irreducible diagram"
                % ",".join(str(i + 1) for i in nodes))
        comps.append(match)
    comps.sort(key=lambda c: c.nodes[0] if c.nodes else 0)
    return CartanClassification(tuple(comps))


@dataclass(frozen=True)
class RootDatum:
    """A pair of integer matrices whose rows are the simple roots in the
    character lattice and the simple coroots in the cocharacter lattice."""

    simple_roots: IntMatrix
    simple_coroots: IntMatrix
    cartan: IntMatrix
    classification: CartanClassification

    @property
    def rank(self) -> int:
        return self.simple_roots.cols

    @property
    def ss_rank(self) -> int:
        return self.simple_roots.rows

    @property
    def torus_rank(self) -> int:
        return self.rank - self.ss_rank


def validate_root_datum(A: IntMatrix, Acheck: IntMatrix) -> RootDatum:
    """Check the datum axioms and classify the Cartan matrix."""
    if A.shape != Acheck.shape:
        raise ValidationError("root and coroot matrices differ in shape")
    l, r = A.shape
    if l > r:
        raise ValidationError("more simple roots than the rank allows")
    if rational_rank(A) != l:
        raise ValidationError("simple roots are linearly dependent")
    if rational_rank(Acheck) != l:
        raise ValidationError("simple coroots are linearly dependent")
    cartan = Acheck @ A.transpose()
    classification = classify_cartan(cartan)
    return RootDatum(A, Acheck, cartan, classification)


def standard_datum(letter: str, l: int, isogeny: str) -> RootDatum:
    """Simply connected or adjoint datum of an irreducible type."""
    C = standard_cartan(letter, l)
    if isogeny == "sc":
        return validate_root_datum(C.transpose(), IntMatrix.identity(l))
    if isogeny == "adjoint":
        return validate_root_datum(IntMatrix.identity(l), C)
    raise ValidationError(f"unknown isogeny kind {isogeny!r}")


def direct_product(d1: RootDatum, d2: RootDatum) -> RootDatum:
    """Block-diagonal juxtaposition of two data."""

    def blocks(m1: IntMatrix, m2: IntMatrix) -> IntMatrix:
        top = IntMatrix.hstack(m1, IntMatrix.zeros(m1.rows, m2.cols))
        bottom = IntMatrix.hstack(IntMatrix.zeros(m2.rows, m1.cols), m2)
        return IntMatrix.vstack(top, bottom)

    return validate_root_datum(blocks(d1.simple_roots, d2.simple_roots),
                               blocks(d1.simple_coroots, d2.simple_coroots))


def enumerate_roots(d: RootDatum) -> tuple[tuple[tuple[int, ...], ...],
                                           tuple[tuple[int, ...], ...]]:
    """All roots and coroots, as the reflection closure of the simple ones.

    The root/coroot bijection is kept by reflecting both sides in step; the
    result is sorted for determinism.
    """
    A, Acheck = d.simple_roots, d.simple_coroots
    l = d.ss_rank
    pairs = {(A.row(i), Acheck.row(i)) for i in range(l)}
    todo = list(pairs)
    while todo:
        root, coroot = todo.pop()
        for i in range(l):
            n = sum(x * y for x, y in zip(root, Acheck.row(i)))
            m = sum(x * y for x, y in zip(A.row(i), coroot))
            new = (tuple(x - n * a for x, a in zip(root, A.row(i))),
                   tuple(y - m * b for y, b in zip(coroot, Acheck.row(i))))
            if new not in pairs:
                pairs.add(new)
                todo.append(new)
                if len(pairs) > ROOT_CLOSURE_CAP:
                    raise ValidationError("root closure exceeds the safety cap")
    ordered = sorted(pairs)
    return tuple(p[0] for p in ordered), tuple(p[1] for p in ordered)


def _coords(g: TorsionVector | Sequence) -> tuple[Fraction, ...]:
    if isinstance(g, TorsionVector):
        return g.coords
    return TorsionVector.make(g).coords


def quotient_datum(sc: RootDatum, kernel_gens: Sequence[TorsionVector | Sequence],
                   p: int | None = None) -> RootDatum:
    """Quotient of a simply connected datum by a finite central subgroup.

    The new character lattice is the sublattice of characters vanishing on
    every generator, rebased to its canonical Hermite basis.
    """
    l = sc.ss_rank
    if sc.rank != l or sc.simple_coroots.entries != IntMatrix.identity(l).entries:
        raise ValidationError("quotient base must be a simply connected datum")
    gens = [_coords(g) for g in kernel_gens]
    for g in gens:
        if len(g) != l:
            raise ValidationError("kernel generator has wrong length")
        for i in range(l):
            val = sum((c * x for c, x in zip(g, sc.simple_roots.row(i))), Fraction(0))
            if val.denominator != 1:
                raise ValidationError(f"kernel generator {TorsionVector.make(g)} is not central")
        if p is not None:
            denom_lcm = TorsionVector.make(g).order
            if denom_lcm % p == 0:
                raise ValidationError("kernel generator order is divisible by the characteristic")
    gens = [g for g in gens if any(c != 0 for c in g)]
    if not gens:
        return sc
    n = 1
    for g in gens:
        for c in g:
            n = lcm(n, c.denominator)
    G = IntMatrix.from_rows([[int(c * n) for c in g] for g in gens], l)
    snf = smith_normal_form(G)
    qinv = as_int_matrix(rational_inverse(snf.Q), l)
    diag = list(snf.diagonal) + [0] * (l - len(snf.diagonal))
    scales = [n // gcd(diag[i], n) if diag[i] else 1 for i in range(l)]
    basis = [[s * x for x in snf.Q.column(i)] for i, s in enumerate(scales)]
    T = hermite_normal_form(IntMatrix.from_rows(basis, l))
    if T.rows != l:
        raise ValidationError("character sublattice degenerated")
    A_new = as_int_matrix(frac_mul(sc.simple_roots.entries, rational_inverse(T)), l)
    Acheck_new = T.transpose()
    out = validate_root_datum(A_new, Acheck_new)
    if out.cartan.entries != sc.cartan.entries:
        raise AssertionError("quotient changed the Cartan matrix")
    return out


@dataclass(frozen=True)
class FrobeniusDatum:
    """Finite-order twist matrix with an optional concrete prime power."""

    twist: IntMatrix
    q: int | None
    p: int | None
    sigma: tuple[int, ...]
    order: int


def validate_frobenius(d: RootDatum, F0: IntMatrix, q: int | None = None) -> FrobeniusDatum:
    """Check that F0 is a finite-order automorphism of the datum.

    The induced permutation ``sigma`` of the simple roots is extracted from
    the row permutation of the simple-root matrix, and the dual condition
    on the coroots is enforced.
    """
    r = d.rank
    if F0.shape != (r, r):
        raise ValidationError("twist matrix has the wrong shape")
    order = matrix_order(F0, 24 * max(r, 1))
    rows = {d.simple_roots.row(i): i for i in range(d.ss_rank)}
    permuted = d.simple_roots @ F0
    sigma = []
    for i in range(d.ss_rank):
        j = rows.get(permuted.row(i))
        if j is None:
            raise ValidationError("twist does not permute the simple roots")
        sigma.append(j)
    if sorted(sigma) != list(range(d.ss_rank)):
        raise ValidationError("twist does not permute the simple roots bijectively")
    co_perm = d.simple_coroots @ F0.transpose()
    for i, si in enumerate(sigma):
        if co_perm.row(si) != d.simple_coroots.row(i):
            raise ValidationError("twist fails the dual condition on the coroots")
    p = None
    if q is not None:
        pk = is_prime_power(q)
        if pk is None:
            raise ValidationError(f"{q} is not a prime power")
        p = pk[0]
    return FrobeniusDatum(F0, q, p, tuple(sigma), order)


def _perm_order(perm: dict[int, int]) -> int:
    order = 1
    seen = set()
    for start in perm:
        if start in seen:
            continue
        length = 0
        i = start
        while True:
            seen.add(i)
            i = perm[i]
            length += 1
            if i == start:
                break
        order = lcm(order, length)
    return order


@dataclass(frozen=True)
class TwistedComponent:
    letter: str
    rank: int
    twist: int
    field_power: int

    def label(self) -> str:
        prefix = str(self.twist) if self.twist > 1 else ""
        power = f"q^{self.field_power}" if self.field_power > 1 else "q"
        return f"{prefix}{self.letter}{self.rank}({power})"


def twisted_components(d: RootDatum, f: FrobeniusDatum) -> tuple[tuple[TwistedComponent, ...], int]:
    """Orbits of the twist on the Cartan components, with their labels,
    plus the rank of the central torus."""
    comps = d.classification.components
    comp_of_node = {n: k for k, comp in enumerate(comps) for n in comp.nodes}
    image = {}
    for k, comp in enumerate(comps):
        targets = {comp_of_node[f.sigma[n]] for n in comp.nodes}
        if len(targets) != 1:
            raise ValidationError("twist tears a Cartan component apart")
        image[k] = targets.pop()
    out = []
    visited: set[int] = set()
    for k, comp in enumerate(comps):
        if k in visited:
            continue
        orbit = [k]
        j = image[k]
        while j != k:
            orbit.append(j)
            j = image[j]
        visited.update(orbit)
        size = len(orbit)
        node_perm = {n: n for n in comp.nodes}
        for _ in range(size):
            node_perm = {n: f.sigma[m] for n, m in node_perm.items()}
        out.append(TwistedComponent(comp.letter, comp.rank, _perm_order(node_perm), size))
    return tuple(out), d.torus_rank
