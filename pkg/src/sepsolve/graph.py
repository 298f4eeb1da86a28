"""Directed and undirected multigraphs with unit-capacity flow machinery.

Arcs and edges carry explicit identity labels so parallel copies are
distinct objects; this is what lets reduction phases attach one matroid
element or gadget vertex per arc.  All mutating helpers return new graphs.
Iteration is over sorted labels everywhere, so path and component
enumeration is deterministic.
"""

from __future__ import annotations

import itertools
from collections import deque
from typing import Iterable, Sequence

from .errors import NoFiniteCut

INF = 10 ** 9


class MultiDiGraph:
    """Directed multigraph: vertices plus labeled arcs (id -> (tail, head))."""

    def __init__(self, vertices: Iterable[str] = (),
                 arcs: dict[str, tuple[str, str]] | None = None):
        self.vertices: set[str] = {str(v) for v in vertices}
        self.arcs: dict[str, tuple[str, str]] = dict(arcs or {})
        for aid, (u, v) in self.arcs.items():
            self.vertices.add(u)
            self.vertices.add(v)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]],
                   vertices: Iterable[str] = ()) -> "MultiDiGraph":
        arcs = {}
        for i, (u, v) in enumerate(pairs):
            arcs[f"a{i}"] = (str(u), str(v))
        return cls(vertices, arcs)

    def copy(self) -> "MultiDiGraph":
        return MultiDiGraph(self.vertices, self.arcs)

    def out_adj(self) -> dict[str, list[tuple[str, str]]]:
        """Map vertex -> sorted list of (arc id, head)."""
        adj: dict[str, list[tuple[str, str]]] = {v: [] for v in self.vertices}
        for aid in sorted(self.arcs):
            u, v = self.arcs[aid]
            adj[u].append((aid, v))
        return adj

    def in_adj(self) -> dict[str, list[tuple[str, str]]]:
        adj: dict[str, list[tuple[str, str]]] = {v: [] for v in self.vertices}
        for aid in sorted(self.arcs):
            u, v = self.arcs[aid]
            adj[v].append((aid, u))
        return adj

    def has_arc(self, u: str, v: str) -> bool:
        return any(a == (u, v) for a in self.arcs.values())

    def remove_vertices(self, X: Iterable[str]) -> "MultiDiGraph":
        X = set(X)
        return MultiDiGraph(
            self.vertices - X,
            {aid: (u, v) for aid, (u, v) in self.arcs.items()
             if u not in X and v not in X})

    def remove_arcs(self, arc_ids: Iterable[str]) -> "MultiDiGraph":
        drop = set(arc_ids)
        return MultiDiGraph(
            self.vertices,
            {aid: a for aid, a in self.arcs.items() if aid not in drop})

    def add_arcs(self, new: dict[str, tuple[str, str]]) -> "MultiDiGraph":
        arcs = dict(self.arcs)
        for aid, a in new.items():
            if aid in arcs:
                raise ValueError(f"duplicate arc id {aid}")
            arcs[aid] = a
        return MultiDiGraph(self.vertices, arcs)

    def reachable(self, s: str) -> set[str]:
        adj = self.out_adj()
        seen = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for _, v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return seen


class MultiGraph:
    """Undirected multigraph: vertices plus labeled edges (id -> pair)."""

    def __init__(self, vertices: Iterable[str] = (),
                 edges: dict[str, tuple[str, str]] | None = None):
        self.vertices: set[str] = {str(v) for v in vertices}
        self.edges: dict[str, tuple[str, str]] = dict(edges or {})
        for eid, (u, v) in self.edges.items():
            self.vertices.add(u)
            self.vertices.add(v)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str]],
                   vertices: Iterable[str] = ()) -> "MultiGraph":
        edges = {}
        for i, (u, v) in enumerate(pairs):
            edges[f"e{i}"] = (str(u), str(v))
        return cls(vertices, edges)

    def copy(self) -> "MultiGraph":
        return MultiGraph(self.vertices, self.edges)

    def adj(self) -> dict[str, list[tuple[str, str]]]:
        """Map vertex -> sorted (edge id, other endpoint); loops appear once."""
        out: dict[str, list[tuple[str, str]]] = {v: [] for v in self.vertices}
        for eid in sorted(self.edges):
            u, v = self.edges[eid]
            out[u].append((eid, v))
            if u != v:
                out[v].append((eid, u))
        return out

    def degree(self, v: str) -> int:
        d = 0
        for u, w in self.edges.values():
            if u == v:
                d += 1
            if w == v:
                d += 1
        return d

    def has_edge(self, u: str, v: str) -> bool:
        return any(set(e) == {u, v} for e in self.edges.values())

    def neighbors(self, v: str) -> set[str]:
        out = set()
        for u, w in self.edges.values():
            if u == v and w != v:
                out.add(w)
            if w == v and u != v:
                out.add(u)
        return out

    def remove_vertices(self, X: Iterable[str]) -> "MultiGraph":
        X = set(X)
        return MultiGraph(
            self.vertices - X,
            {eid: (u, v) for eid, (u, v) in self.edges.items()
             if u not in X and v not in X})

    def remove_edges(self, edge_ids: Iterable[str]) -> "MultiGraph":
        drop = set(edge_ids)
        return MultiGraph(
            self.vertices,
            {eid: e for eid, e in self.edges.items() if eid not in drop})

    def induced(self, X: Iterable[str]) -> "MultiGraph":
        X = set(X)
        return MultiGraph(
            X & self.vertices,
            {eid: (u, v) for eid, (u, v) in self.edges.items()
             if u in X and v in X})

    def to_directed(self) -> MultiDiGraph:
        """Replace every edge by the two opposite arcs."""
        arcs = {}
        for eid in sorted(self.edges):
            u, v = self.edges[eid]
            arcs[f"{eid}+"] = (u, v)
            arcs[f"{eid}-"] = (v, u)
        return MultiDiGraph(self.vertices, arcs)

    def components(self) -> list[set[str]]:
        adj = self.adj()
        seen: set[str] = set()
        comps = []
        for v in sorted(self.vertices):
            if v in seen:
                continue
            comp = {v}
            queue = deque([v])
            seen.add(v)
            while queue:
                u = queue.popleft()
                for _, w in adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.add(w)
                        queue.append(w)
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_acyclic(self) -> bool:
        """Forest test; parallel edges and loops count as cycles."""
        if any(u == v for u, v in self.edges.values()):
            return False
        seen_pairs: set[frozenset[str]] = set()
        for u, v in self.edges.values():
            pair = frozenset((u, v))
            if pair in seen_pairs:
                return False
            seen_pairs.add(pair)
        return len(self.edges) == len(self.vertices) - len(self.components())

    def is_bipartite(self) -> bool:
        return self.two_coloring() is not None

    def two_coloring(self) -> dict[str, int] | None:
        """A proper 2-coloring, or None if an odd cycle exists."""
        if any(u == v for u, v in self.edges.values()):
            return None
        adj = self.adj()
        color: dict[str, int] = {}
        for start in sorted(self.vertices):
            if start in color:
                continue
            color[start] = 0
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for _, w in adj[u]:
                    if w not in color:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return None
        return color


def identify(G: MultiGraph, X: Iterable[str], new_label: str) -> MultiGraph:
    """Collapse the vertex set X into one new vertex; simple edges result."""
    X = set(X)
    if not X:
        raise ValueError("cannot identify the empty set")
    verts = (G.vertices - X) | {new_label}
    pairs: set[tuple[str, str]] = set()
    for u, v in G.edges.values():
        a = new_label if u in X else u
        b = new_label if v in X else v
        if a == b:
            continue
        pairs.add(tuple(sorted((a, b))))
    edges = {f"e{i}": pair for i, pair in enumerate(sorted(pairs))}
    return MultiGraph(verts, edges)


def _max_flow(n: int, arcs: list[tuple[int, int, int]], s: int, t: int,
              limit: int = INF) -> tuple[int, list[int]]:
    """Edmonds-Karp max flow.

    arcs: list of (tail, head, capacity).  Returns (value, flow per arc).
    Stops early once the flow reaches ``limit``.
    """
    m = len(arcs)
    head = [0] * (2 * m)
    cap = [0] * (2 * m)
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, (u, v, c) in enumerate(arcs):
        head[2 * i] = v
        cap[2 * i] = c
        head[2 * i + 1] = u
        cap[2 * i + 1] = 0
        adj[u].append(2 * i)
        adj[v].append(2 * i + 1)
    value = 0
    while value < limit:
        prev = [-1] * n
        prev[s] = -2
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if u == t:
                break
            for e in adj[u]:
                if cap[e] > 0 and prev[head[e]] == -1:
                    prev[head[e]] = e
                    queue.append(head[e])
        if prev[t] == -1:
            break
        # Trace the augmenting path; capacities are unit-scale so the
        # bottleneck is computed but normally 1.
        bottleneck = INF
        v = t
        while v != s:
            e = prev[v]
            bottleneck = min(bottleneck, cap[e])
            v = head[e ^ 1]
        v = t
        while v != s:
            e = prev[v]
            cap[e] -= bottleneck
            cap[e ^ 1] += bottleneck
            v = head[e ^ 1]
        value += bottleneck
    flow = [cap[2 * i + 1] for i in range(m)]
    return value, flow


def min_edge_cut(G: MultiDiGraph, s: str, t: str, limit: int = INF) -> int:
    """Minimum number of arcs (parallel copies counted) separating t from s."""
    index = {v: i for i, v in enumerate(sorted(G.vertices))}
    arcs = [(index[u], index[v], 1) for u, v in
            (G.arcs[a] for a in sorted(G.arcs))]
    value, _ = _max_flow(len(index), arcs, index[s], index[t], limit)
    return value


def min_vertex_cut(G: MultiDiGraph | MultiGraph, s: str, t: str,
                   limit: int = INF) -> tuple[int, list[list[str]]]:
    """Minimum internal-vertex (s,t)-cut with a Menger witness.

    Returns (value, paths): ``value`` internally vertex-disjoint s->t paths.
    Splits every vertex into in/out halves joined by a unit arc; s and t
    keep infinite internal capacity.

    Raises:
        NoFiniteCut: if an arc s->t is present.
    """
    D = G.to_directed() if isinstance(G, MultiGraph) else G
    if D.has_arc(s, t):
        raise NoFiniteCut(f"direct arc {s}->{t}")
    verts = sorted(D.vertices)
    index: dict[str, int] = {}
    for v in verts:
        index[v] = len(index) * 2
    n = 2 * len(verts)

    def vin(v: str) -> int:
        return index[v]

    def vout(v: str) -> int:
        return index[v] + 1

    arcs: list[tuple[int, int, int]] = []
    for v in verts:
        arcs.append((vin(v), vout(v), INF if v in (s, t) else 1))
    arc_heads: list[tuple[str, str]] = []
    for aid in sorted(D.arcs):
        u, v = D.arcs[aid]
        arcs.append((vout(u), vin(v), INF))
        arc_heads.append((u, v))
    value, flow = _max_flow(n, arcs, vout(s), vin(t), limit)
    if value >= limit:
        return value, []
    # Decompose the flow into vertex-disjoint paths.
    nv = len(verts)
    used_arc = [flow[nv + i] for i in range(len(arc_heads))]
    out_by_vertex: dict[str, list[int]] = {v: [] for v in verts}
    for i, (u, _) in enumerate(arc_heads):
        out_by_vertex[u].append(i)
    paths: list[list[str]] = []
    for _ in range(value):
        path = [s]
        cur = s
        while cur != t:
            nxt = None
            for i in out_by_vertex[cur]:
                if used_arc[i] > 0:
                    used_arc[i] -= 1
                    nxt = arc_heads[i][1]
                    break
            if nxt is None:  # pragma: no cover - flow conservation
                raise AssertionError("flow decomposition failed")
            path.append(nxt)
            cur = nxt
        paths.append(path)
    return value, paths


def is_vertex_cut(G: MultiDiGraph | MultiGraph, s: str, t: str,
                  Z: Iterable[str]) -> bool:
    Z = set(Z)
    if s in Z or t in Z:
        return False
    D = G.to_directed() if isinstance(G, MultiGraph) else G
    return t not in D.remove_vertices(Z).reachable(s)

def is_edge_cut(G: MultiDiGraph, s: str, t: str,
                arc_ids: Iterable[str]) -> bool:
    return t not in G.remove_arcs(arc_ids).reachable(s)


def is_minimal_cut(G: MultiDiGraph | MultiGraph, s: str, t: str,
                   Z: Iterable[str], kind: str = "vertex") -> bool:
    """True iff Z cuts t from s and no proper subset does.

    kind 'vertex': Z is a vertex set.  kind 'edge': Z is a set of arc ids
    of a directed G.
    """
    Z = set(Z)
    if kind == "vertex":
        if not is_vertex_cut(G, s, t, Z):
            return False
        return all(not is_vertex_cut(G, s, t, Z - {z}) for z in Z)
    if not isinstance(G, MultiDiGraph):
        raise ValueError("edge cuts require a directed graph")
    if not is_edge_cut(G, s, t, Z):
        return False
    return all(not is_edge_cut(G, s, t, Z - {z}) for z in Z)


def multiway_cut_check(G: MultiGraph, T: Iterable[str],
                       S: Iterable[str]) -> bool:
    """True iff every component of G - S contains at most one terminal."""
    T = set(T)
    S = set(S)
    if S & T:
        raise ValueError("separator may not contain terminals")
    for comp in G.remove_vertices(S).components():
        if len(comp & T) > 1:
            return False
    return True


def enumerate_minimal_edge_cuts(G: MultiDiGraph, s: str, t: str,
                                k: int) -> list[frozenset[str]]:
    """All minimal arc-id cuts of size <= k separating t from s.

    Recursive path branching: while t is reachable, pick a shortest s->t
    path and branch on which of its arcs joins the cut.  Results are
    deduplicated and filtered for minimality.
    """
    results: set[frozenset[str]] = set()
    seen: set[frozenset[str]] = set()
    out_adj = G.out_adj()

    def shortest_path_arcs(removed: frozenset[str]) -> list[str] | None:
        prev: dict[str, tuple[str, str]] = {}
        seen_v = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if u == t:
                break
            for aid, v in out_adj[u]:
                if aid in removed or v in seen_v:
                    continue
                seen_v.add(v)
                prev[v] = (u, aid)
                queue.append(v)
        if t not in seen_v:
            return None
        arcs = []
        cur = t
        while cur != s:
            u, aid = prev[cur]
            arcs.append(aid)
            cur = u
        return arcs[::-1]

    def recurse(Z: frozenset[str]) -> None:
        if Z in seen:
            return
        seen.add(Z)
        path = shortest_path_arcs(Z)
        if path is None:
            if is_minimal_cut(G, s, t, Z, kind="edge"):
                results.add(Z)
            return
        if len(Z) == k:
            return
        for aid in path:
            recurse(Z | {aid})

    recurse(frozenset())
    return sorted(results, key=lambda S: (len(S), sorted(S)))


def enumerate_minimal_vertex_cuts(G: MultiDiGraph | MultiGraph, s: str,
                                  t: str, k: int,
                                  forbidden: Iterable[str] = ()
                                  ) -> list[frozenset[str]]:
    """All minimal vertex cuts of size <= k avoiding s, t and ``forbidden``."""
    D = G.to_directed() if isinstance(G, MultiGraph) else G
    candidates = sorted(D.vertices - {s, t} - set(forbidden))
    results = []
    for size in range(min(k, len(candidates)) + 1):
        for Z in itertools.combinations(candidates, size):
            if is_minimal_cut(D, s, t, set(Z), kind="vertex"):
                results.append(frozenset(Z))
    return results
