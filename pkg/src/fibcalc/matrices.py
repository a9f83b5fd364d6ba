"""Exact integer matrices: products, determinants, characteristic polynomials,
Smith normal form with unimodular witnesses, and integer linear solving.

Matrices in this package stay small (a genus-g surface contributes 2g rows),
so the algorithms favor exactness and auditability over asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MalformedInputError, RankMismatchError
from .laurent import LaurentPoly


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise MalformedInputError("negative matrix dimension")
        if len(self.entries) != self.rows:
            raise MalformedInputError("row count mismatch")
        fixed = []
        for row in self.entries:
            if len(row) != self.cols:
                raise MalformedInputError("ragged matrix rows")
            fixed.append(tuple(int(x) for x in row))
        object.__setattr__(self, "entries", tuple(fixed))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        return cls(len(data), ncols, data)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(tuple(self.entries[i][j] for i in range(self.rows))
                               for j in range(self.cols)))

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise RankMismatchError("matrix product dimension mismatch")
        out = [[0] * other.cols for _ in range(self.rows)]
        for i in range(self.rows):
            rowi = self.entries[i]
            for k in range(self.cols):
                a = rowi[k]
                if a:
                    rowk = other.entries[k]
                    for j in range(other.cols):
                        out[i][j] += a * rowk[j]
        return IntMatrix.from_rows(out) if out else IntMatrix.zeros(self.rows, other.cols)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return self.mul(other)

    def mul_vec(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise RankMismatchError("vector length mismatch")
        return tuple(sum(self.entries[i][j] * v[j] for j in range(self.cols))
                     for i in range(self.rows))

    def add(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise RankMismatchError("matrix sum dimension mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(a + b for a, b in zip(r1, r2))
                               for r1, r2 in zip(self.entries, other.entries)))

    def neg(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(-a for a in row) for row in self.entries))

    def sub(self, other: "IntMatrix") -> "IntMatrix":
        return self.add(other.neg())

    def power(self, n: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise RankMismatchError("power of a non-square matrix")
        if n < 0:
            inv = self.inverse_unimodular()
            return inv.power(-n)
        out = IntMatrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                out = out.mul(base)
            base = base.mul(base)
            n >>= 1
        return out

    def det(self) -> int:
        """Fraction-free (Bareiss) determinant."""
        if self.rows != self.cols:
            raise RankMismatchError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        m = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            prev = m[k][k]
        return sign * m[n - 1][n - 1]

    def inverse_unimodular(self) -> "IntMatrix":
        """Inverse of a matrix with determinant +-1 (adjugate divided by det)."""
        d = self.det()
        if d not in (1, -1):
            raise MalformedInputError("matrix is not unimodular")
        n = self.rows
        adj = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = [[self.entries[r][c] for c in range(n) if c != j]
                         for r in range(n) if r != i]
                cof = IntMatrix.from_rows(minor).det() if n > 1 else 1
                adj[j][i] = (-1) ** (i + j) * cof
        return IntMatrix.from_rows([[x // d for x in row] for row in adj]) if n else IntMatrix.identity(0)

    def is_identity(self) -> bool:
        return self == IntMatrix.identity(self.rows) if self.rows == self.cols else False


def block_diag(*blocks: IntMatrix) -> IntMatrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[0] * cols for _ in range(rows)]
    r0 = c0 = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[r0 + i][c0 + j] = b.entries[i][j]
        r0 += b.rows
        c0 += b.cols
    return IntMatrix(rows, cols, tuple(tuple(row) for row in out))


def laurent_det(grid: list[list[LaurentPoly]]) -> LaurentPoly:
    """Determinant of a square grid of Laurent polynomials.

    Cofactor expansion memoized on the set of live columns; exact and fine for
    the <= 12x12 matrices that arise here.
    """
    n = len(grid)
    for row in grid:
        if len(row) != n:
            raise RankMismatchError("determinant of a non-square grid")
    if n == 0:
        return LaurentPoly.one()
    full = (1 << n) - 1
    memo: dict[int, LaurentPoly] = {0: LaurentPoly.one()}

    def rec(mask: int) -> LaurentPoly:
        if mask in memo:
            return memo[mask]
        row = n - bin(mask).count("1")
        total = LaurentPoly.zero()
        sign = 1
        for j in range(n):
            if mask & (1 << j):
                entry = grid[row][j]
                if not entry.is_zero:
                    sub = rec(mask & ~(1 << j))
                    term = entry * sub
                    total = total + (term if sign > 0 else -term)
                sign = -sign
        memo[mask] = total
        return total

    return rec(full)


def char_poly(a: IntMatrix) -> LaurentPoly:
    """det(tI - A) with exact integer coefficients."""
    if a.rows != a.cols:
        raise RankMismatchError("characteristic polynomial of a non-square matrix")
    n = a.rows
    t = LaurentPoly.t()
    grid = [[(t - LaurentPoly.const(a.entries[i][j])) if i == j
             else LaurentPoly.const(-a.entries[i][j])
             for j in range(n)] for i in range(n)]
    return laurent_det(grid)


def smith_normal_form(a: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return (D, U, V) with U*A*V = D, D diagonal with d_i | d_{i+1} and
    d_i >= 0, and U, V unimodular."""
    rows, cols = a.rows, a.cols
    m = [list(r) for r in a.entries]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        m[i] = [x - q * y for x, y in zip(m[i], m[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in m:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    limit = min(rows, cols)
    k = 0
    while k < limit:
        # pivot of smallest absolute value in the remaining block
        pivot = None
        best = None
        for i in range(k, rows):
            for j in range(k, cols):
                x = m[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(k, pivot[0])
        swap_cols(k, pivot[1])
        # clear the pivot column first; afterwards clearing the pivot row by
        # column ops has no fill-in below row k.  Any nonzero remainder is
        # strictly smaller than the pivot, so restarting terminates.
        for i in range(k + 1, rows):
            if m[i][k]:
                row_op(i, k, m[i][k] // m[k][k])
        if any(m[i][k] for i in range(k + 1, rows)):
            continue
        for j in range(k + 1, cols):
            if m[k][j]:
                col_op(j, k, m[k][j] // m[k][k])
        if any(m[k][j] for j in range(k + 1, cols)):
            continue
        # make the pivot divide the whole remaining block, which yields the
        # divisibility chain d_k | d_{k+1} for free
        offender = None
        for i in range(k + 1, rows):
            for j in range(k + 1, cols):
                if m[i][j] % m[k][k] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(k, offender, -1)  # row_k += row_offender
            continue
        if m[k][k] < 0:
            negate_row(k)
        k += 1

    d = IntMatrix.from_rows(m) if rows else IntMatrix.zeros(rows, cols)
    return d, IntMatrix.from_rows(u) if rows else IntMatrix.identity(0), \
        IntMatrix.from_rows(v) if cols else IntMatrix.identity(0)


def smith_diagonal(a: IntMatrix) -> list[int]:
    d, _, _ = smith_normal_form(a)
    return [d.entries[i][i] for i in range(min(a.rows, a.cols))]


def solve_int(a: IntMatrix, b: Sequence[int]) -> tuple[int, ...] | None:
    """One integer solution x of A x = b, or None if none exists."""
    if len(b) != a.rows:
        raise RankMismatchError("right-hand side length mismatch")
    d, u, v = smith_normal_form(a)
    w = u.mul_vec(tuple(b))
    z = [0] * a.cols
    for i in range(a.rows):
        di = d.entries[i][i] if i < min(a.rows, a.cols) else 0
        if di == 0:
            if w[i] != 0:
                return None
        else:
            if w[i] % di != 0:
                return None
            z[i] = w[i] // di
    return v.mul_vec(tuple(z))


def in_row_span(basis: IntMatrix, vector: Sequence[int]) -> bool:
    """Whether the vector lies in the integer row span of `basis`."""
    if len(vector) != basis.cols:
        raise RankMismatchError("vector length mismatch")
    return solve_int(basis.transpose(), tuple(vector)) is not None
