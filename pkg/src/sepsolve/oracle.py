"""Brute-force reference solvers, instance generators, and the adversarial
lower-bound family for the oracle access model.

Everything here is exhaustive and deliberately naive; the solvers are
validated against these functions, never the other way around.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable

from . import ffmatrix as ff
from .errors import TooLarge
from .graph import (MultiDiGraph, MultiGraph, is_minimal_cut, min_vertex_cut,
                    multiway_cut_check)
from .instances import HittingInstance, MwcInstance, StCutInstance
from .matroid import LinearMatroid, OracleMatroid
from .repfam import SetFamily

MAX_BRUTE_VERTICES = 14
MAX_BRUTE_BUDGET = 5


class ProblemKind(Enum):
    StCut = "stcut"
    MultiwayCut = "mwc"
    FVS = "fvs"
    OCT = "oct"


def _check_bounds(n: int, k: int) -> None:
    if n > MAX_BRUTE_VERTICES or k > MAX_BRUTE_BUDGET:
        raise TooLarge(f"brute force refuses n={n}, k={k}")


def brute_family(kind: ProblemKind, inst) -> SetFamily:
    """Exhaustive ground-truth family for the given problem.

    Cut problems enumerate minimal independent solutions of size exactly
    k; the cycle-hitting problems enumerate all independent solutions of
    size at most k (their contract is feasibility).
    """
    if kind is ProblemKind.StCut:
        return _brute_stcut(inst)
    if kind is ProblemKind.MultiwayCut:
        return _brute_mwc(inst)
    if kind is ProblemKind.FVS:
        return _brute_hitting(inst, odd_only=False)
    if kind is ProblemKind.OCT:
        return _brute_hitting(inst, odd_only=True)
    raise ValueError(kind)


def _brute_stcut(inst: StCutInstance) -> SetFamily:
    G = inst.graph
    _check_bounds(len(G.vertices), inst.k)
    candidates = sorted(G.vertices - inst.Q)
    out = []
    for Z in itertools.combinations(candidates, inst.k):
        Z = set(Z)
        if is_minimal_cut(G, inst.s, inst.t, Z) and \
                inst.matroid.is_independent(Z):
            out.append(Z)
    return SetFamily(inst.k, out)


def _brute_mwc(inst: MwcInstance) -> SetFamily:
    G = inst.graph
    _check_bounds(len(G.vertices), inst.k)
    candidates = sorted(G.vertices - inst.Q)
    out = []
    for Z in itertools.combinations(candidates, inst.k):
        Z = set(Z)
        if not multiway_cut_check(G, inst.T, Z):
            continue
        if any(multiway_cut_check(G, inst.T, Z - {z}) for z in Z):
            continue  # not minimal
        if inst.matroid.is_independent(Z):
            out.append(Z)
    return SetFamily(inst.k, out)


def _hitting_feasible(G: MultiGraph, Z: set[str], odd_only: bool) -> bool:
    H = G.remove_vertices(Z)
    return H.is_bipartite() if odd_only else H.is_acyclic()


def _brute_hitting(inst: HittingInstance, odd_only: bool) -> SetFamily:
    G = inst.graph
    _check_bounds(len(G.vertices), inst.k)
    out = []
    size = None
    for k in range(inst.k + 1):
        for Z in itertools.combinations(sorted(G.vertices), k):
            Z = set(Z)
            if _hitting_feasible(G, Z, odd_only) and \
                    inst.matroid.is_independent(Z):
                out.append(Z)
                size = k
        if out:
            break
    return SetFamily(size if size is not None else 0, out) if out \
        else SetFamily(inst.k)


def brute_hitting_feasible(inst: HittingInstance, odd_only: bool) -> bool:
    """True iff an independent FVS/OCT of size <= k exists."""
    G = inst.graph
    _check_bounds(len(G.vertices), inst.k)
    for k in range(inst.k + 1):
        for Z in itertools.combinations(sorted(G.vertices), k):
            Z = set(Z)
            if _hitting_feasible(G, Z, odd_only) and \
                    inst.matroid.is_independent(Z):
                return True
    return False


# --------------------------------------------------------------------------
# Lower-bound family
# --------------------------------------------------------------------------

@dataclass
class LowerBoundInstance:
    """The layered graph with a hidden independent minimum cut W.

    The oracle matroid answers independence queries about vertex sets; a
    size-2p set is independent only when it equals W or visibly violates
    the one-per-layer cut shape.  Every query increments ``queries``.
    """
    graph: MultiGraph
    p: int
    q: int
    hidden: tuple[int, ...]
    W: frozenset[str]
    matroid: OracleMatroid
    queries: int = 0


def _gpq_vertex(kind: str, i: int, j: int) -> str:
    return f"{kind}{i}_{j}"


def gen_gpq(p: int, q: int,
            hidden_indices: Iterable[int] | None = None) -> LowerBoundInstance:
    """Build the 2pq+2-vertex adversarial instance with hidden cut W.

    hidden_indices: per-block layer index in [1, q] selecting W; defaults
    to all ones.
    """
    if p < 1 or q < 1:
        raise ValueError("p, q must be positive")
    hidden = tuple(hidden_indices) if hidden_indices is not None \
        else tuple([1] * p)
    if len(hidden) != p or any(not 1 <= j <= q for j in hidden):
        raise ValueError("hidden indices must be p values in [1, q]")

    pairs: list[tuple[str, str]] = []
    verts = {"s", "t"}
    for i in range(1, p + 1):
        for j in range(1, q + 1):
            verts.add(_gpq_vertex("a", i, j))
            verts.add(_gpq_vertex("b", i, j))
        pairs.append(("s", _gpq_vertex("a", i, 1)))
        pairs.append(("s", _gpq_vertex("b", i, 1)))
        pairs.append((_gpq_vertex("a", i, q), "t"))
        pairs.append((_gpq_vertex("b", i, q), "t"))
        for j in range(1, q):
            for x in ("a", "b"):
                for y in ("a", "b"):
                    pairs.append((_gpq_vertex(x, i, j),
                                  _gpq_vertex(y, i, j + 1)))
    G = MultiGraph.from_pairs(pairs, verts)

    W = frozenset(_gpq_vertex(x, i, hidden[i - 1])
                  for i in range(1, p + 1) for x in ("a", "b"))
    k = 2 * p
    blocks_a = {i: frozenset(_gpq_vertex("a", i, j) for j in range(1, q + 1))
                for i in range(1, p + 1)}
    blocks_b = {i: frozenset(_gpq_vertex("b", i, j) for j in range(1, q + 1))
                for i in range(1, p + 1)}

    inst = LowerBoundInstance(G, p, q, hidden, W, None)  # type: ignore

    def query(X: frozenset[str]) -> bool:
        inst.queries += 1
        if "s" in X or "t" in X:
            return False
        if len(X) <= k - 1:
            return True
        if len(X) >= k + 1:
            return False
        if X == W:
            return True
        for i in range(1, p + 1):
            A, B = blocks_a[i] & X, blocks_b[i] & X
            if len(A) >= 2 or len(B) >= 2:
                return True
            # a^i_h with b^i_j for distinct layers h != j.
            layers_a = {int(v.split("_")[1]) for v in A}
            layers_b = {int(v.split("_")[1]) for v in B}
            if layers_a and layers_b and (layers_a != layers_b
                                          or len(layers_a) > 1):
                return True
        return False

    inst.matroid = OracleMatroid(G.vertices, query, rank_bound=k)
    return inst


def all_candidate_cuts(p: int, q: int) -> list[frozenset[str]]:
    """The q^p one-layer-per-block candidate minimum cuts of the family."""
    out = []
    for choice in itertools.product(range(1, q + 1), repeat=p):
        out.append(frozenset(_gpq_vertex(x, i, choice[i - 1])
                             for i in range(1, p + 1) for x in ("a", "b")))
    return out


def exhaustive_strategy(inst: LowerBoundInstance) -> frozenset[str] | None:
    """Reference solver: query every candidate cut until one is independent."""
    for X in all_candidate_cuts(inst.p, inst.q):
        if inst.matroid.is_independent(X):
            return X
    return None


def query_count_probe(strategy: Callable[[LowerBoundInstance],
                                         frozenset[str] | None],
                      p: int, q: int) -> int:
    """Worst-case oracle query count of a strategy over all hidden cuts.

    The strategy must return the hidden W; a wrong answer on any
    placement is reported as an assertion failure.
    """
    if q ** p > 10 ** 5:
        raise TooLarge(f"q^p = {q ** p} placements exceed the probe cap")
    worst = 0
    for choice in itertools.product(range(1, q + 1), repeat=p):
        inst = gen_gpq(p, q, choice)
        answer = strategy(inst)
        if answer != inst.W:
            raise AssertionError(
                f"strategy answered {answer} but hidden cut is {sorted(inst.W)}")
        worst = max(worst, inst.queries)
    return worst


# --------------------------------------------------------------------------
# Random instance generation
# --------------------------------------------------------------------------

def _random_graph(rng: random.Random, n: int, m: int,
                  connected: bool = True) -> MultiGraph:
    verts = [f"v{i}" for i in range(n)]
    pairs: list[tuple[str, str]] = []
    if connected and n > 1:
        order = verts[:]
        rng.shuffle(order)
        for a, b in zip(order, order[1:]):
            pairs.append((a, b))
    existing = {frozenset(e) for e in pairs}
    attempts = 0
    while len(pairs) < m and attempts < 20 * m:
        attempts += 1
        u, v = rng.sample(verts, 2)
        if frozenset((u, v)) in existing:
            continue
        existing.add(frozenset((u, v)))
        pairs.append((u, v))
    return MultiGraph.from_pairs(pairs, verts)


def _random_full_rank_matroid(rng: random.Random, r: int,
                              labels: list[str]) -> LinearMatroid:
    """Random matrix with full row rank r; rejection-sampled."""
    if not labels:
        return LinearMatroid(ff.FFMatrix.zeros(r, 0), [])
    while True:
        seed = rng.randrange(2 ** 31)
        mat = ff.random_matrix(r, len(labels), ff.DEFAULT_PRIME, seed=seed)
        M = LinearMatroid(mat, labels)
        if M.rank() == min(r, len(labels)):
            return M


def random_instance(kind: ProblemKind, seed: int, n: int = 7, m: int = 10,
                    r: int = 3, k: int = 2, n_terminals: int = 3):
    """Seeded reproducible random instance of the given problem kind."""
    rng = random.Random(f"{kind.value}:{seed}")
    G = _random_graph(rng, n, m)
    if kind is ProblemKind.StCut:
        s, t = "v0", f"v{n - 1}"
        Q = frozenset({s, t})
        labels = sorted(G.vertices - Q)
        M = _random_full_rank_matroid(rng, r, labels)
        return StCutInstance(G, M, s, t, Q, k, max(0, r - k))
    if kind is ProblemKind.MultiwayCut:
        T = frozenset(f"v{i}" for i in range(n_terminals))
        labels = sorted(G.vertices - T)
        M = _random_full_rank_matroid(rng, r, labels)
        return MwcInstance(G, M, T, T, k, max(0, r - k))
    labels = sorted(G.vertices)
    M = _random_full_rank_matroid(rng, r, labels)
    return HittingInstance(G, M, k)
