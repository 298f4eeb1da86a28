"""Independent feedback vertex set and odd cycle transversal solvers.

FVS: a polynomial kernel (degree rules plus representative trimming of
induced degree-2 paths) followed by iterative compression and a bounded
branching search over the special-edge graph; the leaves resolve the
accumulated per-path choices by matroid intersection with a partition
matroid.  OCT: iterative compression reducing each compression step to a
batch of independent (s,t)-cut instances over an auxiliary graph whose
two poles are attached to the guessed sides of the retained transversal.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .graph import MultiGraph
from .matroid import LinearMatroid, OracleMatroid, PartitionMatroid, \
    matroid_intersection
from .stcut import stcut_feasible

AUX_S = "aux_s"
AUX_T = "aux_t"


def _contract(M, Y):
    """Matroid contraction working for both representations."""
    Y = frozenset(Y)
    if not Y:
        return M
    if isinstance(M, LinearMatroid):
        return M.contract(Y)
    ground = M.ground - Y
    query = M.query

    def wrapped(S: frozenset[str]) -> bool:
        return query(frozenset(S) | Y)

    return OracleMatroid(ground, wrapped, max(0, M.rank() - len(Y)))


def path_representatives(path_vertices, M) -> list[str]:
    """Greedy maximal independent subset of a path, in path order.

    The singletons over the result (r-1)-represent the singletons over
    the whole path: any dropped vertex lies in the closure of the kept
    ones, so it can be exchanged for a kept vertex inside any basis.
    """
    kept: list[str] = []
    for v in path_vertices:
        v = str(v)
        if v in M.ground and M.is_independent(set(kept) | {v}):
            kept.append(v)
    return kept


@dataclass(frozen=True)
class FvsKernel:
    """Reduced special-edge graph plus the trimmed degree-2 paths.

    ``path_vertices`` maps each special edge id to the retained interior
    vertices in path order; ``forced_cycles`` lists the representative
    choices of components that were entirely degree-2 cycles (each needs
    exactly one chosen vertex).  ``feasible`` is False when such a cycle
    has no independent vertex at all.
    """
    graph: MultiGraph
    special_edges: frozenset[str]
    path_vertices: dict[str, tuple[str, ...]]
    forced_cycles: tuple[tuple[str, ...], ...]
    matroid: object
    feasible: bool


def fvs_kernelize(G: MultiGraph, M, k: int) -> FvsKernel:
    """Degree-0/1 exhaustion, then replace every maximal induced
    degree-2 path by a special edge carrying its trimmed vertex list."""
    work = G
    while True:
        drop = {v for v in work.vertices if work.degree(v) <= 1}
        if not drop:
            break
        work = work.remove_vertices(drop)

    deg2 = {v for v in work.vertices if work.degree(v) == 2}
    anchors = work.vertices - deg2
    adj = work.adj()

    edges: dict[str, tuple[str, str]] = {}
    special: set[str] = set()
    paths: dict[str, tuple[str, ...]] = {}
    next_id = itertools.count()
    visited_edges: set[str] = set()

    def walk(start_edge: str, start_vertex: str) -> tuple[str, list[str]]:
        """Follow a degree-2 chain from one end; return the far anchor
        and the interior vertices in order."""
        interior = []
        prev_edge, cur = start_edge, start_vertex
        while cur in deg2:
            interior.append(cur)
            nxt = next((eid, w) for eid, w in adj[cur] if eid != prev_edge)
            visited_edges.add(nxt[0])
            prev_edge, cur = nxt
        return cur, interior

    for a in sorted(anchors):
        for eid, x in adj[a]:
            if eid in visited_edges:
                continue
            visited_edges.add(eid)
            if x not in deg2:
                edges[f"k{next(next_id)}"] = (a, x)
                continue
            b, interior = walk(eid, x)
            reps = tuple(path_representatives(interior, M))
            kid = f"k{next(next_id)}"
            edges[kid] = (a, b)
            if reps:
                special.add(kid)
                paths[kid] = reps

    # Components that are entirely degree-2: pure cycles.
    forced: list[tuple[str, ...]] = []
    feasible = True
    seen: set[str] = set()
    for v in sorted(deg2):
        if v in seen:
            continue
        # Skip vertices consumed by an anchored walk.
        if any(eid in visited_edges for eid, _ in adj[v]):
            seen.add(v)
            continue
        # Walk the cycle.
        order = [v]
        seen.add(v)
        prev_edge = adj[v][0][0]
        visited_edges.add(prev_edge)
        cur = adj[v][0][1]
        while cur != v:
            order.append(cur)
            seen.add(cur)
            nxt = next((eid, w) for eid, w in adj[cur] if eid != prev_edge)
            visited_edges.add(nxt[0])
            prev_edge, cur = nxt
        reps = tuple(path_representatives(order, M))
        if not reps:
            feasible = False
        forced.append(reps)

    H = MultiGraph(anchors, edges)
    # Any graph with a feedback vertex set of size k reduces to at most
    # 20*k^3 vertices plus edges; a larger reduced graph proves
    # infeasibility, so the kernel collapses to a trivial no-instance.
    if len(H.vertices) + len(H.edges) > 20 * k ** 3:
        return FvsKernel(MultiGraph(), frozenset(), {}, (), M, False)
    return FvsKernel(H, frozenset(special), paths, tuple(forced), M,
                     feasible)


# --------------------------------------------------------------------------
# Cycle utilities on multigraphs
# --------------------------------------------------------------------------

def _cycle_edges(G: MultiGraph) -> list[str] | None:
    """Edge ids of some cycle (loop, parallel pair, or simple cycle)."""
    for eid in sorted(G.edges):
        u, v = G.edges[eid]
        if u == v:
            return [eid]
    seen_pairs: dict[frozenset[str], str] = {}
    for eid in sorted(G.edges):
        pair = frozenset(G.edges[eid])
        if pair in seen_pairs:
            return [seen_pairs[pair], eid]
        seen_pairs[pair] = eid
    adj = G.adj()
    color: dict[str, int] = {}
    parent: dict[str, tuple[str, str] | None] = {}
    for root in sorted(G.vertices):
        if root in color:
            continue
        color[root] = 0
        parent[root] = None
        stack = [root]
        while stack:
            u = stack[-1]
            advanced = False
            for eid, w in adj[u]:
                if parent[u] is not None and eid == parent[u][1]:
                    continue
                if w not in color:
                    color[w] = 0
                    parent[w] = (u, eid)
                    stack.append(w)
                    advanced = True
                    break
                if color[w] == 0:
                    # Back edge: w is on the stack, an ancestor of u.
                    cyc = [eid]
                    cur = u
                    while cur != w:
                        cyc.append(parent[cur][1])
                        cur = parent[cur][0]
                    return cyc
            if not advanced:
                color[u] = 1
                stack.pop()
    return None


def _forest_path_edges(G: MultiGraph, a: str, b: str) -> list[str]:
    """Edge ids of the unique a-b path in a forest (empty if a == b)."""
    if a == b:
        return []
    adj = G.adj()
    prev: dict[str, tuple[str, str]] = {}
    queue = deque([a])
    seen = {a}
    while queue:
        u = queue.popleft()
        for eid, w in adj[u]:
            if w not in seen:
                seen.add(w)
                prev[w] = (u, eid)
                if w == b:
                    queue.clear()
                    break
                queue.append(w)
    out = []
    cur = b
    while cur != a:
        u, eid = prev[cur]
        out.append(eid)
        cur = u
    return out


# --------------------------------------------------------------------------
# Disjoint independent FVS branching
# --------------------------------------------------------------------------

def disjoint_fvs(H: MultiGraph, M, W, N, special_edges: dict, t: int,
                 forced=(), stats: dict | None = None) -> frozenset[str] | None:
    """Independent hitting set disjoint from N.

    Finds taken vertices plus one interior vertex per deleted special
    edge (and per pre-seeded forced block), jointly independent in M,
    with at most t takes-plus-deletions, such that H minus the takes and
    deletions is acyclic.  Returns the union, or None.
    """
    blocks = [tuple(b) for b in forced]
    return _dfvs(H, M, frozenset(W), frozenset(N), dict(special_edges),
                 blocks, t, stats)


def _dfvs(H, M, W, N, special, blocks, t, stats):
    if stats is not None:
        stats["nodes"] = stats.get("nodes", 0) + 1

    # Reduction: vertices of degree <= 1 lie on no cycle.
    while True:
        drop = {v for v in H.vertices if H.degree(v) <= 1}
        if not drop:
            break
        H = H.remove_vertices(drop)
        W = W - drop
        N = N - drop

    # Cycles inside H[N] can only be broken by deleting one of their
    # special edges (the vertices are off-limits).
    cyc = _cycle_edges(H.induced(N))
    if cyc is not None:
        if t <= 0:
            return None
        for eid in sorted(e for e in cyc if e in special):
            res = _dfvs(H.remove_edges({eid}), M, W, N, special,
                        blocks + [tuple(special[eid])], t - 1, stats)
            if res is not None:
                return res
        return None

    if t == 0 or not W:
        if not H.is_acyclic():
            return None
        if not blocks:
            return frozenset()
        M1 = PartitionMatroid(blocks)
        I = matroid_intersection(M, M1, ground=M1.ground)
        return frozenset(I) if len(I) == len(blocks) else None

    # A W vertex with two edges into one component of H[N] closes a
    # cycle: branch on taking it or deleting a special edge of that
    # cycle (the two incident edges or any special edge on the unique
    # N-path between the far endpoints).
    HN = H.induced(N)
    comp_of: dict[str, int] = {}
    for i, c in enumerate(HN.components()):
        for x in c:
            comp_of[x] = i
    adj = H.adj()
    for v in sorted(W):
        into_n = [(eid, u) for eid, u in adj[v] if u in N]
        by_comp: dict[int, list[tuple[str, str]]] = {}
        for eid, u in into_n:
            by_comp.setdefault(comp_of[u], []).append((eid, u))
        hit = next((g for g in by_comp.values() if len(g) >= 2), None)
        if hit is None:
            continue
        (e1, u1), (e2, u2) = hit[0], hit[1]
        cycle = [e1, e2] + _forest_path_edges(HN, u1, u2)
        for eid in sorted(e for e in cycle if e in special):
            res = _dfvs(H.remove_edges({eid}), M, W, N, special,
                        blocks + [tuple(special[eid])], t - 1, stats)
            if res is not None:
                return res
        if v in M.ground and M.is_independent({v}):
            res = _dfvs(H.remove_vertices({v}), _contract(M, {v}),
                        W - {v}, N, special, blocks, t - 1, stats)
            if res is not None:
                return res | {v}
        return None

    # Standard leaf branching on H[W]: take the leaf, or move it to N.
    HW = H.induced(W)
    x = min(v for v in W if HW.degree(v) <= 1)
    if x in M.ground and M.is_independent({x}):
        res = _dfvs(H.remove_vertices({x}), _contract(M, {x}), W - {x}, N,
                    special, blocks, t - 1, stats)
        if res is not None:
            return res | {x}
    return _dfvs(H, M, W - {x}, N | {x}, special, blocks, t, stats)


# --------------------------------------------------------------------------
# Independent FVS via iterative compression
# --------------------------------------------------------------------------

def ifvs_solve(G: MultiGraph, M, k: int,
               stats: dict | None = None) -> frozenset[str] | None:
    """An independent feedback vertex set of size at most k, or None."""
    kern = fvs_kernelize(G, M, k)
    if not kern.feasible or len(kern.forced_cycles) > k:
        return None
    H = kern.graph
    X: set[str] = set()
    S: set[str] = set()
    for v in sorted(H.vertices):
        X.add(v)
        S.add(v)
        if len(S) <= k:
            continue
        res = _fvs_compress(H.induced(X), kern, M, S, k, stats)
        if res is None:
            return None
        S = _plain_fvs_from(res, H.induced(X), kern)
    res = _fvs_compress(H, kern, M, S, k, stats)
    if res is None:
        return None
    assert G.remove_vertices(res).is_acyclic()
    assert M.is_independent(res)
    return res


def _fvs_compress(HX: MultiGraph, kern: FvsKernel, M, S, k,
                  stats) -> frozenset[str] | None:
    special = {e: kern.path_vertices[e] for e in HX.edges
               if e in kern.special_edges}
    nf = len(kern.forced_cycles)
    for size in range(min(len(S), k) + 1):
        for Y in itertools.combinations(sorted(S), size):
            Y = frozenset(Y)
            if not Y <= M.ground or not M.is_independent(Y):
                continue
            t = k - size - nf
            if t < 0:
                continue
            res = disjoint_fvs(HX.remove_vertices(Y), _contract(M, Y),
                               HX.vertices - S, S - Y, special, t,
                               kern.forced_cycles, stats)
            if res is not None:
                return res | Y
    return None


def _plain_fvs_from(sol: frozenset[str], HX: MultiGraph,
                    kern: FvsKernel) -> set[str]:
    """Project an independent solution onto a plain FVS of the
    special-edge graph: keep its vertices, replace every chosen path
    vertex by an endpoint of its special edge."""
    out = set(sol & HX.vertices)
    for e in HX.edges:
        if e in kern.special_edges and set(kern.path_vertices[e]) & sol:
            out.add(min(HX.edges[e]))
    return out


# --------------------------------------------------------------------------
# Independent OCT via iterative compression
# --------------------------------------------------------------------------

def ioct_solve(G: MultiGraph, M: LinearMatroid, k: int,
               seed: int = 0) -> frozenset[str] | None:
    """An independent odd cycle transversal of size at most k, or None."""
    if not isinstance(M, LinearMatroid):
        raise ValueError("odd cycle transversal requires a represented "
                         "matroid")
    X: set[str] = set()
    S: set[str] = set()
    for v in sorted(G.vertices):
        X.add(v)
        S.add(v)
        if len(S) <= k:
            continue
        res = _oct_compress(G.induced(X), M, S, k, seed)
        if res is None:
            return None
        S = set(res)
    res = _oct_compress(G, M, S, k, seed)
    if res is None:
        return None
    assert G.remove_vertices(res).is_bipartite()
    assert M.is_independent(res)
    return res


def _oct_compress(GX: MultiGraph, M: LinearMatroid, S, k: int,
                  seed: int) -> frozenset[str] | None:
    for size in range(min(len(S), k) + 1):
        for Y in itertools.combinations(sorted(S), size):
            Y = frozenset(Y)
            if not Y <= M.ground or not M.is_independent(Y):
                continue
            res = _oct_disjoint(GX, M, Y, frozenset(S) - Y, k - size, seed)
            if res is not None:
                return res | Y
    return None


def _oct_disjoint(GX: MultiGraph, M: LinearMatroid, Y: frozenset[str],
                  N: frozenset[str], budget: int,
                  seed: int) -> frozenset[str] | None:
    """Independent deletion set of size <= budget, disjoint from N, that
    makes GX - Y bipartite with N split across the guessed sides."""
    G1 = GX.remove_vertices(Y)
    B = G1.remove_vertices(N)
    col = B.two_coloring()
    if col is None:
        return None  # N is not a transversal under this guess
    MY = _contract(M, Y)
    n_list = sorted(N)
    for mask in range(2 ** len(n_list)):
        side = {u: (mask >> i) & 1 for i, u in enumerate(n_list)}
        if any(u in side and v in side and side[u] == side[v]
               for u, v in G1.edges.values() if u in N and v in N):
            continue
        # Each boundary vertex pins the flip parity of its component.
        labels: dict[str, set[int]] = {}
        bad_guess = False
        for u, v in G1.edges.values():
            for a, b in ((u, v), (v, u)):
                if a in N and b not in N and b not in Y:
                    want = 1 - side[a]  # b must take the opposite side
                    labels.setdefault(b, set()).add(col[b] ^ want)
        attach_s = sorted(v for v, L in labels.items() if 0 in L)
        attach_t = sorted(v for v, L in labels.items() if 1 in L)
        aux = MultiGraph(
            set(B.vertices) | {AUX_S, AUX_T},
            dict(B.edges,
                 **{f"aux_e{i}": (AUX_S, v)
                    for i, v in enumerate(attach_s)},
                 **{f"aux_f{i}": (v, AUX_T)
                    for i, v in enumerate(attach_t)}))
        fam = stcut_feasible(aux, MY, AUX_S, AUX_T, {AUX_S, AUX_T},
                             budget, seed=seed)
        if fam is not None:
            return fam.sorted_sets()[0] if fam.member_size else frozenset()
    return None
