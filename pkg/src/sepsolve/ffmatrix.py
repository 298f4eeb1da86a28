"""Exact dense linear algebra over prime fields GF(p).

All matroid computations in this package reduce to rank and determinant
computations on small dense matrices with entries in [0, p).  Entries are
plain Python integers, so intermediate products never overflow.  Elimination
uses first-nonzero partial pivoting in a fixed column order, which keeps
every derived object (representative families, DP tables) reproducible.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from .errors import NonInvertible

#: Default modulus: large enough that random truncation maps succeed with
#: overwhelming probability at the instance sizes this package targets,
#: small enough for exact 64-bit-range arithmetic.
DEFAULT_PRIME = 1_000_000_007


def ff_inv(a: int, p: int) -> int:
    """Multiplicative inverse of ``a`` modulo the prime ``p``.

    Raises:
        NonInvertible: if ``a`` is zero mod p.
    """
    a %= p
    if a == 0:
        raise NonInvertible(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


class FFMatrix:
    """An immutable dense matrix over GF(p).

    Stored row-major as a tuple of row tuples with entries in [0, p).
    """

    __slots__ = ("p", "rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable[int]], p: int = DEFAULT_PRIME,
                 cols: int | None = None):
        self.p = p
        rows = tuple(tuple(int(x) % p for x in row) for row in data)
        self.data = rows
        self.rows = len(rows)
        if rows:
            self.cols = len(rows[0])
            if any(len(r) != self.cols for r in rows):
                raise ValueError("ragged rows")
        else:
            self.cols = 0 if cols is None else cols

    @classmethod
    def identity(cls, n: int, p: int = DEFAULT_PRIME) -> "FFMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int = DEFAULT_PRIME) -> "FFMatrix":
        return cls([[0] * cols for _ in range(rows)], p, cols=cols)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, FFMatrix) and self.p == other.p
                and self.rows == other.rows and self.cols == other.cols
                and self.data == other.data)

    def __hash__(self) -> int:
        return hash((self.p, self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        return f"FFMatrix({self.rows}x{self.cols} mod {self.p})"

    def transpose(self) -> "FFMatrix":
        return FFMatrix(zip(*self.data), self.p, cols=self.rows) if self.data \
            else FFMatrix([], self.p, cols=0)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.data)

    def select_columns(self, cols: Sequence[int]) -> "FFMatrix":
        return FFMatrix([[row[j] for j in cols] for row in self.data],
                        self.p, cols=len(cols))

    def hstack(self, other: "FFMatrix") -> "FFMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch")
        return FFMatrix([a + b for a, b in zip(self.data, other.data)], self.p,
                        cols=self.cols + other.cols)

    def matmul(self, other: "FFMatrix") -> "FFMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        p = self.p
        ot = list(zip(*other.data)) if other.data else [()] * other.cols
        out = []
        for row in self.data:
            out.append([sum(a * b for a, b in zip(row, col)) % p for col in ot])
        return FFMatrix(out, p, cols=other.cols)


def _eliminate(rows: list[list[int]], p: int) -> list[int]:
    """In-place row reduction; returns the list of pivot column indices."""
    if not rows:
        return []
    m, n = len(rows), len(rows[0])
    pivot_cols: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        # First nonzero entry at or below row r.
        found = -1
        for i in range(r, m):
            if rows[i][c] % p:
                found = i
                break
        if found < 0:
            continue
        rows[r], rows[found] = rows[found], rows[r]
        inv = ff_inv(rows[r][c], p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
    return pivot_cols


def rank(M: FFMatrix) -> int:
    """GF(p) rank of ``M``; the input is not modified."""
    work = [list(row) for row in M.data]
    return len(_eliminate(work, M.p))


def rref(M: FFMatrix) -> tuple[FFMatrix, list[int]]:
    """Reduced row-echelon form and pivot columns."""
    work = [list(row) for row in M.data]
    pivots = _eliminate(work, M.p)
    return FFMatrix(work, M.p, cols=M.cols), pivots


def columns_independent(M: FFMatrix, cols: Iterable[int]) -> bool:
    """True iff the selected columns are linearly independent over GF(p)."""
    cols = sorted(set(cols))
    if len(cols) > M.rows:
        return False
    return rank(M.select_columns(cols)) == len(cols)


def determinant(M: FFMatrix) -> int:
    """Determinant of a square matrix over GF(p)."""
    if M.rows != M.cols:
        raise ValueError("determinant of non-square matrix")
    p = M.p
    work = [list(row) for row in M.data]
    n = M.rows
    det = 1
    for c in range(n):
        found = -1
        for i in range(c, n):
            if work[i][c] % p:
                found = i
                break
        if found < 0:
            return 0
        if found != c:
            work[c], work[found] = work[found], work[c]
            det = (-det) % p
        det = (det * work[c][c]) % p
        inv = ff_inv(work[c][c], p)
        for i in range(c + 1, n):
            if work[i][c]:
                f = (work[i][c] * inv) % p
                work[i] = [(x - f * y) % p for x, y in zip(work[i], work[c])]
    return det % p


def random_matrix(rows: int, cols: int, p: int = DEFAULT_PRIME,
                  seed: int = 0) -> FFMatrix:
    """Seeded uniform random matrix over GF(p); same seed, same matrix."""
    rng = random.Random(seed)
    return FFMatrix([[rng.randrange(p) for _ in range(cols)]
                     for _ in range(rows)], p, cols=cols)
