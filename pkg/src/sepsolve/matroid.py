"""Matroids over labeled ground sets.

Provides linear matroids backed by a GF(p) representation, black-box oracle
matroids, and partition matroids, together with the transformations the
reduction pipeline needs: contraction, randomized truncation, zero-column
padding, and matroid intersection against a partition matroid.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Callable, Iterable, Sequence

from . import ffmatrix as ff
from .errors import (DuplicateLabel, NotIndependent, RankExceeded,
                     UnknownElement)


class LinearMatroid:
    """A matroid realized by columns of an r x n matrix over GF(p).

    A labeled set is independent iff its columns are linearly independent.
    Immutable; all transformations return new matroids.
    """

    def __init__(self, matrix: ff.FFMatrix, labels: Sequence[str]):
        if len(labels) != matrix.cols:
            raise ValueError("label count must equal column count")
        if len(set(labels)) != len(labels):
            raise DuplicateLabel("duplicate ground-set labels")
        self.matrix = matrix
        self.labels = tuple(str(x) for x in labels)
        self._index = {x: i for i, x in enumerate(self.labels)}
        self._rank: int | None = None

    @property
    def ground(self) -> frozenset[str]:
        return frozenset(self.labels)

    def rank(self) -> int:
        if self._rank is None:
            self._rank = ff.rank(self.matrix)
        return self._rank

    def _cols(self, S: Iterable[str]) -> list[int]:
        try:
            return [self._index[x] for x in S]
        except KeyError as exc:
            raise UnknownElement(f"unknown ground element {exc.args[0]!r}")

    def is_independent(self, S: Iterable[str]) -> bool:
        S = set(S)
        return ff.columns_independent(self.matrix, self._cols(S))

    def column_of(self, label: str) -> tuple[int, ...]:
        return self.matrix.column(self._cols([label])[0])

    def contract(self, S: Iterable[str]) -> "LinearMatroid":
        """Contract an independent set S.

        Row-reduces so the S-columns become distinct unit vectors, then
        deletes those rows and columns.  A set T is independent in the
        result iff T | S is independent here.
        """
        S = sorted(set(S))
        if not S:
            return self
        if not self.is_independent(S):
            raise NotIndependent(f"cannot contract dependent set {S}")
        idx = self._cols(S)
        p = self.matrix.p
        work = [list(row) for row in self.matrix.data]
        pivot_rows: list[int] = []
        used: set[int] = set()
        for c in idx:
            # Pivot on column c in some unused row.
            r = next(i for i in range(len(work))
                     if i not in used and work[i][c] % p)
            inv = ff.ff_inv(work[r][c], p)
            work[r] = [(x * inv) % p for x in work[r]]
            for i in range(len(work)):
                if i != r and work[i][c]:
                    f = work[i][c]
                    work[i] = [(x - f * y) % p
                               for x, y in zip(work[i], work[r])]
            used.add(r)
            pivot_rows.append(r)
        keep_rows = [i for i in range(len(work)) if i not in used]
        keep_cols = [j for j in range(self.matrix.cols) if j not in set(idx)]
        new_rows = [[work[i][j] for j in keep_cols] for i in keep_rows]
        new_labels = [self.labels[j] for j in keep_cols]
        return LinearMatroid(
            ff.FFMatrix(new_rows, p, cols=len(keep_cols)), new_labels)

    def truncate(self, k: int, seed: int = 0) -> "LinearMatroid":
        """Randomized truncation to rank k (left-multiply by a random map).

        Retries with fresh seeds up to 5 times if a verification probe
        fails; with the default modulus failures are vanishingly rare.
        """
        r = self.rank()
        if k > r:
            raise RankExceeded(f"truncation rank {k} exceeds matroid rank {r}")
        if k == r:
            return self
        for attempt in range(5):
            T = ff.random_matrix(k, self.matrix.rows, self.matrix.p,
                                 seed=hash((seed, attempt)) & 0x7FFFFFFF)
            cand = LinearMatroid(T.matmul(self.matrix), self.labels)
            if self._truncation_probe(cand, k):
                return cand
        raise ff.NonInvertible  # pragma: no cover - unreachable in practice

    def _truncation_probe(self, cand: "LinearMatroid", k: int) -> bool:
        """Desk-scale check that cand behaves as the rank-k truncation."""
        if cand.rank() != k:
            return False
        n = len(self.labels)
        if n <= 10:
            for size in range(1, k + 1):
                for S in itertools.combinations(self.labels, size):
                    if self.is_independent(S) != cand.is_independent(S):
                        return False
        return True

    def relabel(self, mapping: dict[str, str]) -> "LinearMatroid":
        """Rename ground elements; labels absent from the mapping stay."""
        return LinearMatroid(self.matrix,
                             [mapping.get(x, x) for x in self.labels])

    def zero_pad(self, new_labels: Sequence[str]) -> "LinearMatroid":
        """Extend the ground set by labels carrying all-zero columns."""
        new_labels = [str(x) for x in new_labels]
        if not new_labels:
            return self
        if set(new_labels) & set(self.labels) or \
                len(set(new_labels)) != len(new_labels):
            raise DuplicateLabel("zero_pad label collision")
        rows = self.matrix.rows
        pad = ff.FFMatrix.zeros(rows, len(new_labels), self.matrix.p)
        if rows == 0:
            # Keep at least one row so padded columns exist structurally.
            mat = ff.FFMatrix.zeros(0, self.matrix.cols + len(new_labels),
                                    self.matrix.p)
        else:
            mat = self.matrix.hstack(pad)
        return LinearMatroid(mat, list(self.labels) + new_labels)

    def restrict(self, keep: Iterable[str]) -> "LinearMatroid":
        """Delete all elements outside ``keep``."""
        keep = set(keep)
        cols = [j for j, x in enumerate(self.labels) if x in keep]
        return LinearMatroid(self.matrix.select_columns(cols),
                             [self.labels[j] for j in cols])


class OracleMatroid:
    """A matroid accessed only through an independence predicate."""

    def __init__(self, ground: Iterable[str],
                 query: Callable[[frozenset[str]], bool],
                 rank_bound: int):
        self.ground = frozenset(str(x) for x in ground)
        self.query = query
        self.rank_bound = rank_bound

    def rank(self) -> int:
        return self.rank_bound

    def is_independent(self, S: Iterable[str]) -> bool:
        S = frozenset(S)
        if not S <= self.ground:
            raise UnknownElement(f"unknown elements {sorted(S - self.ground)}")
        return bool(self.query(S))


class PartitionMatroid:
    """Independent sets pick at most one element per block."""

    def __init__(self, blocks: Sequence[Iterable[str]]):
        self.blocks = [frozenset(str(x) for x in b) for b in blocks]
        seen: set[str] = set()
        for b in self.blocks:
            if b & seen:
                raise DuplicateLabel("partition blocks must be disjoint")
            seen |= b
        self.ground = frozenset(seen)

    def is_independent(self, S: Iterable[str]) -> bool:
        S = set(S)
        return all(len(S & b) <= 1 for b in self.blocks)


def is_independent(M, S: Iterable[str]) -> bool:
    """Independence test dispatching on the matroid kind."""
    return M.is_independent(S)


def matroid_intersection(M1, M2: PartitionMatroid,
                         ground: Iterable[str] | None = None) -> set[str]:
    """Maximum common independent set of M1 and a partition matroid.

    Classic augmenting-path scheme on the exchange digraph.  The caller
    checks whether the result is a common base.
    """
    if ground is None:
        ground = M2.ground
    elems = sorted(set(ground))
    I: set[str] = set()

    def ind1(S: set[str]) -> bool:
        return M1.is_independent(S)

    def ind2(S: set[str]) -> bool:
        return M2.is_independent(S)

    while True:
        outside = [x for x in elems if x not in I]
        sources = [x for x in outside if ind1(I | {x})]
        sinks = {x for x in outside if ind2(I | {x})}
        # Immediate augmentation by a single element.
        direct = [x for x in sources if x in sinks]
        if direct:
            I.add(direct[0])
            continue
        # Exchange digraph BFS for a shortest augmenting path.
        adj: dict[str, list[str]] = {x: [] for x in elems}
        for y in sorted(I):
            without = I - {y}
            for x in outside:
                if ind1(without | {x}):
                    adj[y].append(x)
                if ind2(without | {x}):
                    adj[x].append(y)
        parent: dict[str, str | None] = {x: None for x in sources}
        queue = deque(sorted(sources))
        found: str | None = None
        while queue and found is None:
            u = queue.popleft()
            for v in adj[u]:
                if v not in parent:
                    parent[v] = u
                    if v in sinks:
                        found = v
                        break
                    queue.append(v)
        if found is None:
            return I
        path = []
        cur: str | None = found
        while cur is not None:
            path.append(cur)
            cur = parent[cur]
        I ^= set(path)
