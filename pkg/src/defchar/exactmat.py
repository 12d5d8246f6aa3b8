"""Exact integer linear algebra: normal forms with transforms, kernels,
inverses, and modular row reduction.

Everything works on arbitrary-precision Python integers (Fractions where a
rational result is unavoidable).  Matrices are immutable values and every
function is pure, so the whole module is safe to use from multiple threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

FracRows = tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rectangular matrix of integers.

    ``cols`` is stored explicitly so zero-row matrices keep their width.
    """

    entries: tuple[tuple[int, ...], ...]
    cols: int

    def __post_init__(self) -> None:
        if self.cols < 0:
            raise ValueError("negative column count")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        tup = tuple(tuple(int(x) for x in row) for row in rows)
        if cols is None:
            if not tup:
                raise ValueError("cols is required for a matrix with no rows")
            cols = len(tup[0])
        return IntMatrix(tup, cols)

    @staticmethod
    def identity(n: int) -> IntMatrix:
        return IntMatrix(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @staticmethod
    def zeros(rows: int, cols: int) -> IntMatrix:
        return IntMatrix(tuple((0,) * cols for _ in range(rows)), cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(tuple(r[j] for r in self.entries) for j in range(self.cols)),
                         self.rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        bt = other.transpose().entries
        return IntMatrix(
            tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in bt)
                  for row in self.entries),
            other.cols)

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch in matrix sum")
        return IntMatrix(tuple(tuple(a + b for a, b in zip(r, s))
                               for r, s in zip(self.entries, other.entries)), self.cols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + other.scale(-1)

    def scale(self, k: int) -> IntMatrix:
        return IntMatrix(tuple(tuple(k * x for x in row) for row in self.entries), self.cols)

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> IntMatrix:
        return IntMatrix(tuple(tuple(row[c0:c1]) for row in self.entries[r0:r1]), c1 - c0)

    @staticmethod
    def vstack(*mats: IntMatrix) -> IntMatrix:
        cols = mats[0].cols
        if any(m.cols != cols for m in mats):
            raise ValueError("column mismatch in vstack")
        return IntMatrix(tuple(row for m in mats for row in m.entries), cols)

    @staticmethod
    def hstack(*mats: IntMatrix) -> IntMatrix:
        rows = mats[0].rows
        if any(m.rows != rows for m in mats):
            raise ValueError("row mismatch in hstack")
        return IntMatrix(tuple(tuple(x for m in mats for x in m.entries[i])
                               for i in range(rows)),
                         sum(m.cols for m in mats))

    def __str__(self) -> str:
        if self.rows == 0:
            return f"(no rows, {self.cols} columns)"
        widths = [max(len(str(r[j])) for r in self.entries) for j in range(self.cols)]
        return "\n".join(
            "[ " + "  ".join(str(x).rjust(w) for x, w in zip(row, widths)) + " ]"
            for row in self.entries)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def perm_matrix(sigma: Sequence[int]) -> IntMatrix:
    """Permutation matrix P with P[i][sigma[i]] = 1."""
    n = len(sigma)
    if sorted(sigma) != list(range(n)):
        raise ValueError("not a permutation")
    rows = [[0] * n for _ in range(n)]
    for i, j in enumerate(sigma):
        rows[i][j] = 1
    return IntMatrix.from_rows(rows, n)


@dataclass(frozen=True)
class SnfResult:
    """Smith normal form P @ M @ Q = D with unimodular P, Q.

    The diagonal of D is non-negative, forms a divisibility chain and has
    its zeros last.
    """

    P: IntMatrix
    D: IntMatrix
    Q: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D.entries[i][i] for i in range(n))

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d != 0)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def smith_normal_form(M: IntMatrix) -> SnfResult:
    """Diagonalize an integer matrix with unimodular row/column transforms.

    The elimination is deterministic: the pivot is always the nonzero entry
    of least absolute value in the working block, ties broken topmost then
    leftmost.  Transforms are verified against the input before returning.
    """
    nr, nc = M.rows, M.cols
    a = [list(row) for row in M.entries]
    p = [[int(i == j) for j in range(nr)] for i in range(nr)]
    q = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i: int, j: int) -> None:
        if i != j:
            a[i], a[j] = a[j], a[i]
            p[i], p[j] = p[j], p[i]

    def swap_cols(i: int, j: int) -> None:
        if i != j:
            for row in a:
                row[i], row[j] = row[j], row[i]
            for row in q:
                row[i], row[j] = row[j], row[i]

    def add_row(src: int, dst: int, k: int) -> None:
        asrc, adst = a[src], a[dst]
        for j in range(nc):
            adst[j] += k * asrc[j]
        psrc, pdst = p[src], p[dst]
        for j in range(nr):
            pdst[j] += k * psrc[j]

    def add_col(src: int, dst: int, k: int) -> None:
        for row in a:
            row[dst] += k * row[src]
        for row in q:
            row[dst] += k * row[src]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        p[i] = [-x for x in p[i]]

    t = 0
    while t < min(nr, nc):
        pivot = None
        key: tuple[int, int, int] | None = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = a[i][j]
                if v != 0:
                    cand = (abs(v), i, j)
                    if key is None or cand < key:
                        key, pivot = cand, (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        if a[t][t] < 0:
            negate_row(t)
        while True:
            for i in range(t + 1, nr):
                if a[i][t] != 0:
                    add_row(t, i, -(a[i][t] // a[t][t]))
            # leftover remainders are smaller than the pivot: promote the least
            best = None
            for i in range(t + 1, nr):
                if a[i][t] != 0 and (best is None or a[i][t] < a[best][t]):
                    best = i
            if best is not None:
                swap_rows(t, best)
                continue
            for j in range(t + 1, nc):
                if a[t][j] != 0:
                    add_col(t, j, -(a[t][j] // a[t][t]))
            best = None
            for j in range(t + 1, nc):
                if a[t][j] != 0 and (best is None or a[t][j] < a[t][best]):
                    best = j
            if best is not None:
                swap_cols(t, best)
                continue
            # pivot must divide the whole trailing block for the chain
            offender = None
            for i in range(t + 1, nr):
                if any(a[i][j] % a[t][t] != 0 for j in range(t + 1, nc)):
                    offender = i
                    break
            if offender is None:
                break
            add_row(offender, t, 1)
        t += 1

    P = IntMatrix.from_rows(p, nr)
    D = IntMatrix.from_rows(a, nc)
    Q = IntMatrix.from_rows(q, nc)
    if (P @ M @ Q).entries != D.entries:
        raise AssertionError("Smith normal form transform check failed")
    return SnfResult(P, D, Q)


def _unit_for(a: int, m: int) -> int:
    """A unit u mod m with u*a = gcd(a, m) mod m."""
    g = gcd(a % m, m)
    ahat, mhat = (a % m) // g, m // g
    u = pow(ahat, -1, mhat) if mhat > 1 else 1
    while gcd(u, m) != 1:
        u += mhat
    return u % m


def hermite_form_mod(M: IntMatrix, m: int) -> IntMatrix:
    """Canonical row reduction of M over Z/m (Howell form).

    The result spans the same row space mod m, has no zero rows, pivot
    entries dividing m, entries above each pivot reduced below it, and is
    the same for any generating set of the span.
    """
    if m < 1:
        raise ValueError("modulus must be >= 1")
    nc = M.cols
    if m == 1:
        return IntMatrix.from_rows([], nc)
    stack = [[x % m for x in row] for row in M.entries]
    pivots: dict[int, list[int]] = {}

    def leading(v: list[int]) -> int | None:
        for j, x in enumerate(v):
            if x != 0:
                return j
        return None

    while stack:
        v = stack.pop()
        c = leading(v)
        while c is not None:
            if c in pivots:
                w = pivots[c]
                aa, bb = w[c], v[c]
                if bb % aa == 0:
                    k = bb // aa
                    v = [(vi - k * wi) % m for vi, wi in zip(v, w)]
                else:
                    g, x, y = ext_gcd(aa, bb)
                    new_pivot = [(x * wi + y * vi) % m for vi, wi in zip(v, w)]
                    v = [((aa // g) * vi - (bb // g) * wi) % m for vi, wi in zip(v, w)]
                    pivots[c] = new_pivot
                    stack.append([(m // gcd(g, m)) * ui % m for ui in new_pivot])
                c = leading(v)
            else:
                g = gcd(v[c], m)
                u = _unit_for(v[c], m)
                piv = [(u * vi) % m for vi in v]
                pivots[c] = piv
                stack.append([(m // g) * xi % m for xi in piv])
                c = None

    cols_sorted = sorted(pivots)
    res = [list(pivots[c]) for c in cols_sorted]
    for i, c in enumerate(cols_sorted):
        h = res[i][c]
        for k in range(i):
            kq = res[k][c] // h
            if kq:
                res[k] = [(rk - kq * ri) % m for rk, ri in zip(res[k], res[i])]
    return IntMatrix.from_rows(res, nc)


def hermite_normal_form(M: IntMatrix) -> IntMatrix:
    """Canonical row Hermite form over Z, zero rows dropped.

    Pivots are positive and entries above a pivot lie in [0, pivot).
    """
    nc = M.cols
    work = [list(r) for r in M.entries]
    res: list[list[int]] = []
    for c in range(nc):
        rest: list[list[int]] = []
        pivot: list[int] | None = None
        for r in work:
            if r[c] == 0:
                rest.append(r)
                continue
            if pivot is None:
                pivot = r
                continue
            g, x, y = ext_gcd(pivot[c], r[c])
            u, v = pivot[c] // g, r[c] // g
            pivot, reduced = (
                [x * pi + y * ri for pi, ri in zip(pivot, r)],
                [u * ri - v * pi for pi, ri in zip(pivot, r)],
            )
            rest.append(reduced)
        if pivot is not None:
            if pivot[c] < 0:
                pivot = [-x for x in pivot]
            res.append(pivot)
        work = rest
    lead = [next(j for j, x in enumerate(r) if x != 0) for r in res]
    for i, c in enumerate(lead):
        for k in range(i):
            kq = res[k][c] // res[i][c]
            if kq:
                res[k] = [rk - kq * ri for rk, ri in zip(res[k], res[i])]
    return IntMatrix.from_rows(res, nc)


def integer_kernel_basis(M: IntMatrix) -> IntMatrix:
    """Z-basis (as rows) of the solutions y of y @ M.transpose() = 0.

    Taken from the trailing columns of the Smith transform, so the basis is
    primitive; rows are sign-normalized to a positive first entry.
    """
    snf = smith_normal_form(M)
    rank = snf.rank
    qt = snf.Q.transpose()
    rows = []
    for i in range(rank, M.cols):
        row = qt.entries[i]
        first = next((x for x in row if x != 0), 0)
        rows.append(tuple(-x for x in row) if first < 0 else row)
    return IntMatrix.from_rows(rows, M.cols)


def rational_inverse(M: IntMatrix) -> FracRows:
    """Exact inverse of a square matrix over Q, as rows of Fractions."""
    if not M.is_square:
        raise ValueError("not invertible: matrix is not square")
    n = M.rows
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M.entries)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            raise ValueError("not invertible")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def as_int_matrix(rows: FracRows, cols: int | None = None) -> IntMatrix:
    """Convert rows of Fractions to an IntMatrix; error if any entry is not integral."""
    out = []
    for row in rows:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix entries are not integral")
        out.append(tuple(int(x) for x in row))
    if cols is None:
        cols = len(out[0]) if out else 0
    return IntMatrix.from_rows(out, cols)


def frac_mul(a: Sequence[Sequence[Fraction | int]],
             b: Sequence[Sequence[Fraction | int]]) -> FracRows:
    """Product of two matrices given as nested sequences of numbers."""
    bt = list(zip(*b)) if b else []
    return tuple(tuple(sum(Fraction(x) * Fraction(y) for x, y in zip(row, col))
                       for col in bt)
                 for row in a)


def unimodular_inverse(U: IntMatrix) -> IntMatrix:
    """Exact integer inverse of a unimodular matrix."""
    inv = rational_inverse(U)
    try:
        return as_int_matrix(inv, U.cols)
    except ValueError:
        raise ValueError("not invertible over the integers") from None


def determinant(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if not M.is_square:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = [list(row) for row in M.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rational_rank(M: IntMatrix) -> int:
    """Rank of M over Q."""
    a = [[Fraction(x) for x in row] for row in M.entries]
    rank = 0
    for col in range(M.cols):
        piv = next((i for i in range(rank, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = 1 / a[rank][col]
        a[rank] = [x * inv for x in a[rank]]
        for i in range(len(a)):
            if i != rank and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


def matrix_order(M: IntMatrix, bound: int) -> int:
    """Least n <= bound with M**n the identity."""
    if not M.is_square:
        raise ValueError("order of a non-square matrix")
    ident = IntMatrix.identity(M.rows)
    acc = M
    for n in range(1, bound + 1):
        if acc.entries == ident.entries:
            return n
        acc = acc @ M
    raise ValueError(f"order exceeds bound {bound}")
