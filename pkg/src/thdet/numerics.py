"""Arbitrary-precision complex scalars, dense matrices, LU determinant and
linear solve — the substrate for every other module.

Scalars are `mpmath.mpc` values (aliased :data:`PrecComplex`); their precision
is whatever `mp.dps` is at creation time and is treated as immutable for the
duration of a run. Matrices are immutable row-major dataclasses. The solver
performs a single LU pass with partial pivoting by maximum modulus (ties
broken by lowest row index, so output is deterministic); no iterative
refinement is applied — at the high working precisions used here a single
pass is accurate far beyond the published tolerances for the matrix sizes in
scope (n <= 64).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from mpmath import mp, mpc, mpf

from .config import tol
from .errors import NonSquare, Singular

PrecComplex = mpc


def to_prec(value) -> mpc:
    """Coerce ints/floats/strings/complex/mpf/mpc to an mpc at current precision."""
    return mpc(value)


def pairwise_sum(values: Sequence) -> mpc:
    """Deterministic index-ascending pairwise summation.

    Reduces rounding accumulation versus a running sum and fixes the reduction
    tree so repeated runs produce byte-identical output.
    """
    n = len(values)
    if n == 0:
        return mpc(0)
    work = list(values)
    while len(work) > 1:
        nxt = []
        for i in range(0, len(work) - 1, 2):
            nxt.append(work[i] + work[i + 1])
        if len(work) % 2:
            nxt.append(work[-1])
        work = nxt
    return work[0]


@dataclass(frozen=True)
class PrecMatrix:
    """Dense complex matrix; `entries` is row-major and length rows*cols."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows * self.cols != len(self.entries):
            raise ValueError(
                f"entry count {len(self.entries)} != rows*cols = {self.rows * self.cols}"
            )

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "PrecMatrix":
        data = [tuple(to_prec(x) for x in row) for row in rows]
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        flat = tuple(x for row in data for x in row)
        return PrecMatrix(len(data), ncols, flat)

    @staticmethod
    def identity(n: int) -> "PrecMatrix":
        return PrecMatrix(
            n, n, tuple(mpc(1) if i == j else mpc(0) for i in range(n) for j in range(n))
        )

    @staticmethod
    def zeros(rows: int, cols: int) -> "PrecMatrix":
        return PrecMatrix(rows, cols, tuple(mpc(0) for _ in range(rows * cols)))

    def get(self, i: int, j: int) -> mpc:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def with_entry(self, i: int, j: int, value) -> "PrecMatrix":
        flat = list(self.entries)
        flat[i * self.cols + j] = to_prec(value)
        return PrecMatrix(self.rows, self.cols, tuple(flat))

    def transpose(self) -> "PrecMatrix":
        return PrecMatrix(
            self.cols,
            self.rows,
            tuple(self.get(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def matmul(self, other: "PrecMatrix") -> "PrecMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matmul")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(
                    pairwise_sum([ri[k] * other.get(k, j) for k in range(self.cols)])
                )
        return PrecMatrix(self.rows, other.cols, tuple(out))

    def add(self, other: "PrecMatrix") -> "PrecMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in add")
        return PrecMatrix(
            self.rows,
            self.cols,
            tuple(a + b for a, b in zip(self.entries, other.entries)),
        )

    def sub(self, other: "PrecMatrix") -> "PrecMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch in sub")
        return PrecMatrix(
            self.rows,
            self.cols,
            tuple(a - b for a, b in zip(self.entries, other.entries)),
        )

    def scale(self, factor) -> "PrecMatrix":
        f = to_prec(factor)
        return PrecMatrix(self.rows, self.cols, tuple(f * a for a in self.entries))

    def matvec(self, vec: Sequence) -> list:
        if self.cols != len(vec):
            raise ValueError("dimension mismatch in matvec")
        return [
            pairwise_sum([self.row(i)[k] * vec[k] for k in range(self.cols)])
            for i in range(self.rows)
        ]

    def inf_norm(self) -> mpf:
        """Maximum absolute row sum."""
        if self.rows == 0:
            return mpf(0)
        return max(
            mp.fsum(abs(x) for x in self.row(i)) for i in range(self.rows)
        )

    def max_abs(self) -> mpf:
        return max((abs(x) for x in self.entries), default=mpf(0))


def _lu_decompose(m: PrecMatrix, pivot_threshold=None):
    """In-place-style LU with partial pivoting on a copied entry list.

    Returns (lu, perm, sign, zero_column) where `lu` stores L (unit diagonal,
    below) and U (on/above), `perm` is the row permutation, `sign` the
    permutation sign, and `zero_column` is the pivot step at which the entire
    remaining column was exactly zero (or None).

    When `pivot_threshold` is a list of per-row scales, a pivot whose modulus
    is below tol(P,5) times the scale of the pivot row raises Singular.
    """
    n = m.rows
    a = [list(m.row(i)) for i in range(n)]
    perm = list(range(n))
    sign = 1
    threshold = tol(mp.dps, 5) if pivot_threshold is not None else None
    for k in range(n):
        pivot_row = -1
        pivot_mag = mpf(-1)
        for i in range(k, n):
            mag = abs(a[i][k])
            if mag > pivot_mag:
                pivot_mag = mag
                pivot_row = i
        if pivot_mag == 0:
            return a, perm, sign, k
        if pivot_threshold is not None:
            scale = pivot_threshold[perm[pivot_row]]
            if pivot_mag < threshold * scale:
                raise Singular(
                    f"pivot {pivot_mag} below {threshold} * row scale {scale} "
                    f"at step {k}"
                )
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            perm[k], perm[pivot_row] = perm[pivot_row], perm[k]
            sign = -sign
        inv_pivot = 1 / a[k][k]
        for i in range(k + 1, n):
            factor = a[i][k] * inv_pivot
            a[i][k] = factor
            if factor != 0:
                row_i = a[i]
                row_k = a[k]
                for j in range(k + 1, n):
                    row_i[j] -= factor * row_k[j]
    return a, perm, sign, None


def det_lu(m: PrecMatrix) -> mpc:
    """Determinant via LU with partial pivoting.

    Returns exact 0 when some pivot column is identically zero (the factor
    terminates early with a structurally singular matrix).
    """
    if m.rows != m.cols:
        raise NonSquare(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    if m.rows == 0:
        return mpc(1)
    a, _perm, sign, zero_column = _lu_decompose(m)
    if zero_column is not None:
        return mpc(0)
    det = mpc(sign)
    for k in range(m.rows):
        det *= a[k][k]
    return det


def solve_linear(a: PrecMatrix, b: Sequence) -> list:
    """Solve a x = b; raises Singular on a precision-scaled tiny pivot."""
    if a.rows != a.cols:
        raise NonSquare(f"solve needs a square matrix, got {a.rows}x{a.cols}")
    if a.rows != len(b):
        raise ValueError(f"rhs length {len(b)} != matrix size {a.rows}")
    n = a.rows
    if n == 0:
        return []
    scales = []
    for i in range(n):
        s = max((abs(x) for x in a.row(i)), default=mpf(0))
        scales.append(s if s > 0 else mpf(1))
    lu, perm, _sign, zero_column = _lu_decompose(a, pivot_threshold=scales)
    if zero_column is not None:
        raise Singular(f"column {zero_column} identically zero below the diagonal")
    rhs = [to_prec(b[perm[i]]) for i in range(n)]
    # forward substitution (L has unit diagonal)
    for i in range(n):
        acc = rhs[i]
        row = lu[i]
        for j in range(i):
            acc -= row[j] * rhs[j]
        rhs[i] = acc
    # back substitution
    for i in range(n - 1, -1, -1):
        acc = rhs[i]
        row = lu[i]
        for j in range(i + 1, n):
            acc -= row[j] * rhs[j]
        rhs[i] = acc / row[i]
    return rhs


def invert(m: PrecMatrix) -> PrecMatrix:
    """Matrix inverse column by column through :func:`solve_linear`."""
    if m.rows != m.cols:
        raise NonSquare("inverse needs a square matrix")
    n = m.rows
    cols = []
    for j in range(n):
        e = [mpc(1) if i == j else mpc(0) for i in range(n)]
        cols.append(solve_linear(m, e))
    return PrecMatrix(
        n, n, tuple(cols[j][i] for i in range(n) for j in range(n))
    )
