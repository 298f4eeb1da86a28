"""Representative families over linear matroids.

A p-family A' q-represents a p-family A when for every q-set B: if some
member of A fits B (is disjoint from B with independent union), then some
member of A' fits B.  The computation truncates the matroid to rank p+q,
maps every member to its vector of p x p minors (exterior-power
coordinates), and greedily keeps a maximal linearly independent subset of
those vectors in input order, giving the C(p+q, p) size bound.
"""

from __future__ import annotations

import itertools
from typing import Iterable

from . import ffmatrix as ff
from .errors import NotIndependent, TooLargeForOracle
from .matroid import LinearMatroid

#: Exhaustive verification refuses ground sets larger than this.
ORACLE_GROUND_CAP = 24


class SetFamily:
    """A deduplicated family of equal-size ground-set subsets."""

    def __init__(self, member_size: int, sets: Iterable[Iterable[str]] = ()):
        self.member_size = member_size
        self.sets: list[frozenset[str]] = []
        seen: set[frozenset[str]] = set()
        for S in sets:
            S = frozenset(str(x) for x in S)
            if len(S) != member_size:
                raise ValueError(
                    f"member {sorted(S)} has size {len(S)}, "
                    f"expected {member_size}")
            if S not in seen:
                seen.add(S)
                self.sets.append(S)

    @classmethod
    def empty_member(cls) -> "SetFamily":
        """The 0-family {emptyset}: the identity of subset convolution."""
        return cls(0, [frozenset()])

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, S) -> bool:
        return frozenset(S) in set(self.sets)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, SetFamily)
                and self.member_size == other.member_size
                and set(self.sets) == set(other.sets))

    def __repr__(self) -> str:
        return f"SetFamily(p={self.member_size}, n={len(self.sets)})"

    def sorted_sets(self) -> list[frozenset[str]]:
        return sorted(self.sets, key=lambda S: sorted(S))


def fits(M, A: frozenset[str], B: frozenset[str]) -> bool:
    """A fits B: disjoint with independent union."""
    return not (A & B) and M.is_independent(A | B)


def rep_family(M: LinearMatroid, F: SetFamily, q: int,
               seed: int = 0) -> SetFamily:
    """Compute a q-representative subfamily of F over M.

    Members must be independent in M.  The output is a subfamily of F, in
    input order, of size at most C(p+q, p).
    """
    p = F.member_size
    if not F.sets:
        return SetFamily(p)
    if p == 0:
        # The only 0-set is the empty set; it represents itself.
        return SetFamily(0, [frozenset()])
    r = M.rank()
    if p > r:
        raise NotIndependent("members larger than the matroid rank")
    k = min(p + q, r)
    Mk = M.truncate(k, seed=seed) if k < r else M
    if p > k:
        # Every member is dependent after truncation; nothing can fit.
        raise NotIndependent("member size exceeds truncated rank")

    # Compress the representation to exactly rank-many rows so the minor
    # indexing below ranges over the row space only.
    R, piv = ff.rref(Mk.matrix)
    mat = ff.FFMatrix(R.data[:len(piv)], R.p, cols=R.cols)
    k = len(piv)

    # Exterior-power coordinates: all p x p minors of each member's
    # k x p column submatrix, row subsets in lexicographic order.
    row_subsets = list(itertools.combinations(range(k), p))
    prime = mat.p

    def coords(A: frozenset[str]) -> list[int]:
        cols = sorted(A)
        sub = mat.select_columns([Mk._cols([c])[0] for c in cols])
        vec = []
        for rows in row_subsets:
            minor = ff.FFMatrix([sub.data[i] for i in rows], prime,
                                cols=p)
            vec.append(ff.determinant(minor))
        return vec

    # Greedy maximal independent subset of the coordinate vectors,
    # maintained as an incrementally reduced basis.
    basis: list[list[int]] = []
    pivots: list[int] = []
    kept: list[frozenset[str]] = []
    for A in F.sets:
        if not M.is_independent(A):
            raise NotIndependent(f"family member {sorted(A)} is dependent")
        v = coords(A)
        for b, piv in zip(basis, pivots):
            if v[piv]:
                f = v[piv]
                v = [(x - f * y) % prime for x, y in zip(v, b)]
        nz = next((i for i, x in enumerate(v) if x), None)
        if nz is None:
            continue
        inv = ff.ff_inv(v[nz], prime)
        basis.append([(x * inv) % prime for x in v])
        pivots.append(nz)
        kept.append(A)
    return SetFamily(p, kept)


def convolve(P: SetFamily, Q: SetFamily, M) -> SetFamily:
    """Subset convolution: all disjoint independent unions P_i | Q_j."""
    out = []
    for A in P.sets:
        for B in Q.sets:
            if fits(M, A, B):
                out.append(A | B)
    return SetFamily(P.member_size + Q.member_size, out)


def verify_rep(M, sub: SetFamily, full: SetFamily, q: int) -> bool:
    """Exhaustively check that ``sub`` q-represents ``full`` over M.

    Enumerates every q-subset of the ground set; refuses grounds larger
    than ORACLE_GROUND_CAP.
    """
    ground = sorted(M.ground) if isinstance(M.ground, (set, frozenset)) \
        else sorted(M.ground)
    if len(ground) > ORACLE_GROUND_CAP:
        raise TooLargeForOracle(
            f"ground size {len(ground)} exceeds {ORACLE_GROUND_CAP}")
    sub_sets = set(sub.sets)
    if not sub_sets <= set(full.sets):
        return False
    for B in itertools.combinations(ground, q):
        B = frozenset(B)
        if any(fits(M, A, B) for A in full.sets):
            if not any(fits(M, A, B) for A in sub.sets):
                return False
    return True
