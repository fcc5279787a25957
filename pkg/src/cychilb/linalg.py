"""Exact rational linear algebra.

Rational numbers are stdlib ``fractions.Fraction`` (always in lowest terms,
positive denominator, arbitrary-precision integers). ``RatMatrix`` is a dense
row-major carrier; ``determinant`` uses Bareiss fraction-free elimination on
the integer matrix obtained by clearing row denominators, and ``nullspace``
returns a deterministic reduced-echelon parametrization. No floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .errors import DimensionError

Rational = Fraction


def rational_str(q: Fraction) -> str:
    """Canonical "p/q" form, denominator always present ("1/1", "-2/5")."""
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of rational_str; also accepts a bare integer string."""
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


@dataclass(frozen=True)
class RatMatrix:
    """Dense matrix of Fractions, row-major."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows) -> "RatMatrix":
        row_list = [[Fraction(x) for x in row] for row in rows]
        n_rows = len(row_list)
        n_cols = len(row_list[0]) if row_list else 0
        if any(len(row) != n_cols for row in row_list):
            raise DimensionError("ragged rows")
        return cls(n_rows, n_cols, tuple(x for row in row_list for x in row))

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]


def determinant(m: RatMatrix) -> Fraction:
    """Exact determinant by integer Bareiss elimination.

    Each row is scaled by the lcm of its denominators; the integer
    determinant is rescaled by the product of the row factors at the end.
    Pivoting is deterministic: first nonzero entry in column order.
    """
    if m.rows != m.cols:
        raise DimensionError(f"determinant of a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return Fraction(1)
    scale = 1
    a = []
    for i in range(n):
        row = m.row(i)
        factor = lcm(*(x.denominator for x in row)) if row else 1
        scale *= factor
        a.append([int(x * factor) for x in row])

    sign = 1
    prev = 1
    for k in range(n - 1):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], scale)


def rref(rows):
    """Reduced row echelon form (in place on a copy) with pivot column list."""
    mat = [[Fraction(x) for x in row] for row in rows]
    n_rows = len(mat)
    n_cols = len(mat[0]) if n_rows else 0
    pivots = []
    rank = 0
    for col in range(n_cols):
        pivot_row = next((i for i in range(rank, n_rows) if mat[i][col] != 0), None)
        if pivot_row is None:
            continue
        mat[rank], mat[pivot_row] = mat[pivot_row], mat[rank]
        inv = Fraction(1) / mat[rank][col]
        mat[rank] = [x * inv for x in mat[rank]]
        for i in range(n_rows):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[rank])]
        pivots.append(col)
        rank += 1
    return mat, pivots


def nullspace(m: RatMatrix):
    """Rank and a deterministic basis of the right kernel.

    One basis vector per free column, in column order, derived from the
    reduced echelon form and sign-normalized so the first nonzero entry is
    positive. rank + len(basis) == cols.
    """
    mat, pivots = rref(m.to_rows())
    rank = len(pivots)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * m.cols
        vec[free] = Fraction(1)
        for row_idx, pivot_col in enumerate(pivots):
            vec[pivot_col] = -mat[row_idx][free]
        first = next((x for x in vec if x != 0), Fraction(1))
        if first < 0:
            vec = [-x for x in vec]
        basis.append(tuple(vec))
    return rank, basis


def rank(m: RatMatrix) -> int:
    return nullspace(m)[0]


def matrix_product(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    if a.cols != b.rows:
        raise DimensionError("incompatible shapes for product")
    rows = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            row.append(sum((a.entry(i, k) * b.entry(k, j) for k in range(a.cols)),
                           Fraction(0)))
        rows.append(row)
    return RatMatrix.from_rows(rows) if rows else RatMatrix(0, b.cols, ())


def solve_in_basis(basis_vectors, point):
    """Coordinates of point in the span of basis_vectors, or None.

    basis_vectors is a sequence of length-d vectors; returns the unique
    coefficient vector when the system is consistent and the basis is
    independent, None when inconsistent.
    """
    dim = len(point)
    cols = len(basis_vectors)
    aug = [[Fraction(basis_vectors[j][i]) for j in range(cols)] + [Fraction(point[i])]
           for i in range(dim)]
    mat, pivots = rref(aug)
    if cols in pivots:
        return None
    coeffs = [Fraction(0)] * cols
    for row_idx, pivot_col in enumerate(pivots):
        coeffs[pivot_col] = mat[row_idx][cols]
    return coeffs
