"""Independent vertex (s,t)-cut solver.

The solver reduces an undirected instance through four phases (undirected
to directed, vertices to edges, flow augmentation, edges back to vertices)
and then runs a coloring dynamic program over a layer decomposition of the
critical vertices, trimming every table entry to a representative family.

The augmentation stage branches over complete bipartitions (R, V - R) of
the intermediate edge graph; adding k+1 parallel arcs from s into R and
from outside R into t makes the boundary of R the unique minimum cut of
the augmented graph, so every minimal cut of size k is the minimum cut of
exactly one surviving branch.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import (InstanceTooLarge, InternalInvariantViolation,
                     NotMinimumBudget)
from .graph import MultiDiGraph, MultiGraph, min_vertex_cut
from .instances import StCutInstance
from .matroid import LinearMatroid
from .repfam import SetFamily, rep_family

DEFAULT_AUGMENT_CAP = 20


@dataclass(frozen=True)
class EdgeCutInstance:
    """Directed edge (s,t)-cut instance: solutions are arc-id sets."""
    graph: MultiDiGraph
    matroid: LinearMatroid
    s: str
    t: str
    Q: frozenset[str]  # arc ids excluded from solutions
    k: int
    q: int


# --------------------------------------------------------------------------
# Phases I, II, IV
# --------------------------------------------------------------------------

def phase1(inst: StCutInstance) -> StCutInstance:
    """Undirected to directed: each edge becomes two opposite arcs."""
    if not isinstance(inst.graph, MultiGraph):
        raise ValueError("phase1 expects an undirected instance")
    return StCutInstance(inst.graph.to_directed(), inst.matroid, inst.s,
                         inst.t, inst.Q, inst.k, inst.q)


def _vedge(v: str) -> str:
    return f"v:{v}"


def _eedge(aid: str) -> str:
    return f"e:{aid}"


def phase2(inst: StCutInstance) -> EdgeCutInstance:
    """Directed vertex cut to directed edge cut.

    Every vertex v becomes the v-edge (v_in, v_out); every arc (u, v)
    becomes the e-edge (u_out, v_in).  The matroid keeps the original
    column on each v-edge and pads every e-edge with a zero column.
    """
    G1 = inst.graph
    if not isinstance(G1, MultiDiGraph):
        raise ValueError("phase2 expects a directed instance")
    arcs: dict[str, tuple[str, str]] = {}
    for v in sorted(G1.vertices):
        arcs[_vedge(v)] = (f"{v}#in", f"{v}#out")
    for aid in sorted(G1.arcs):
        u, v = G1.arcs[aid]
        arcs[_eedge(aid)] = (f"{u}#out", f"{v}#in")
    G2 = MultiDiGraph((), arcs)
    M2 = inst.matroid.relabel({x: _vedge(x) for x in inst.matroid.labels})
    M2 = M2.zero_pad([_eedge(aid) for aid in sorted(G1.arcs)])
    Q2 = frozenset(_vedge(v) for v in inst.Q)
    return EdgeCutInstance(G2, M2, f"{inst.s}#in", f"{inst.t}#out", Q2,
                           inst.k, inst.q)


def phase4(inst: EdgeCutInstance, k: int) -> StCutInstance:
    """Directed edge cut back to directed vertex cut.

    Each arc becomes an e-vertex named by its arc id; each vertex other
    than s and t becomes k+1 interchangeable copies so that no v-vertex
    is ever critical.  The matroid keeps arc columns on e-vertices and
    pads the v-vertex copies with zero columns.
    """
    G3 = inst.graph
    s, t = inst.s, inst.t

    def copies(u: str) -> list[str]:
        if u in (s, t):
            return [u]
        return [f"{u}@{i}" for i in range(1, k + 2)]

    arcs: dict[str, tuple[str, str]] = {}
    n = 0
    for aid in sorted(G3.arcs):
        u, v = G3.arcs[aid]
        for cu in copies(u):
            arcs[f"x{n}"] = (cu, aid)
            n += 1
        for cv in copies(v):
            arcs[f"x{n}"] = (aid, cv)
            n += 1
    verts = {c for u in G3.vertices for c in copies(u)} | set(G3.arcs)
    G4 = MultiDiGraph(verts, arcs)
    pad = [c for u in sorted(G3.vertices) for c in copies(u)
           if u not in (s, t)]
    M4 = inst.matroid.zero_pad(pad)
    Q4 = frozenset(inst.Q) | {s, t}
    return StCutInstance(G4, M4, s, t, Q4, inst.k, inst.q)


# --------------------------------------------------------------------------
# Phase III: flow augmentation
# --------------------------------------------------------------------------

def _augmenting_arcs(vertices: set[str], R: set[str], s: str, t: str,
                     k: int) -> dict[str, tuple[str, str]]:
    """A(R): k+1 parallel arcs s->x for x in R and y->t for y outside R."""
    arcs: dict[str, tuple[str, str]] = {}
    for x in sorted(R - {s}):
        for j in range(k + 1):
            arcs[f"aug:s>{x}:{j}"] = (s, x)
    for y in sorted(vertices - R - {t}):
        for j in range(k + 1):
            arcs[f"aug:{y}>t:{j}"] = (y, t)
    return arcs


def augment_family(G2: MultiDiGraph, s: str, t: str, k: int,
                   max_n: int = DEFAULT_AUGMENT_CAP
                   ) -> list[dict[str, tuple[str, str]]]:
    """The complete bipartition augmenter: one branch per R with s in R.

    For every minimal edge cut Z of size at most k, the branch taking R as
    the set of vertices reachable from s in G2 - Z makes Z the unique
    minimum cut of G2 + A(R).
    """
    n = len(G2.vertices)
    if n > max_n:
        raise InstanceTooLarge(f"{n} vertices exceed the augmenter cap "
                               f"{max_n}")
    free = sorted(G2.vertices - {s, t})
    out = []
    for bits in itertools.product((False, True), repeat=len(free)):
        R = {s} | {v for v, b in zip(free, bits) if b}
        out.append(_augmenting_arcs(G2.vertices, R, s, t, k))
    return out


def _minimal_cuts_via_bipartitions(G2: MultiDiGraph, s: str, t: str,
                                   k: int) -> list[frozenset[str]]:
    """Minimal edge cuts of size exactly k, found as bipartition boundaries.

    Enumerates all R (s in R, t not in R) with a vectorized boundary
    count; each boundary of size k whose arcs are all necessary is a
    minimal cut, and every minimal cut arises this way.
    """
    free = sorted(G2.vertices - {s, t})
    idx = {v: i for i, v in enumerate(free)}
    nfree = len(free)
    masks = np.arange(1 << nfree, dtype=np.int64)
    count = np.zeros(1 << nfree, dtype=np.int16)
    arc_ids = sorted(G2.arcs)
    arc_bits = []
    for aid in arc_ids:
        u, v = G2.arcs[aid]
        u_in = np.ones_like(masks, dtype=bool) if u == s else (
            np.zeros_like(masks, dtype=bool) if u == t
            else ((masks >> idx[u]) & 1).astype(bool))
        v_in = np.ones_like(masks, dtype=bool) if v == s else (
            np.zeros_like(masks, dtype=bool) if v == t
            else ((masks >> idx[v]) & 1).astype(bool))
        crossing = u_in & ~v_in
        count += crossing
        arc_bits.append((aid, u, v))
    hits = np.nonzero(count == k)[0]
    cuts: set[frozenset[str]] = set()
    for mask in hits:
        R = {s} | {v for v, i in idx.items() if (int(mask) >> i) & 1}
        Z = frozenset(aid for aid, u, v in arc_bits
                      if u in R and v not in R)
        if len(Z) != k or Z in cuts:
            continue
        # Minimality: every cut arc must be on some surviving s->t route.
        H = G2.remove_arcs(Z)
        fwd = H.reachable(s)
        back = _reaches(H, t)
        if all(G2.arcs[aid][0] in fwd and G2.arcs[aid][1] in back
               for aid in Z):
            cuts.add(Z)
    return sorted(cuts, key=lambda S: sorted(S))


def _reaches(G: MultiDiGraph, t: str) -> set[str]:
    """Vertices from which t is reachable."""
    radj: dict[str, list[str]] = {v: [] for v in G.vertices}
    for u, v in G.arcs.values():
        radj[v].append(u)
    seen = {t}
    queue = deque([t])
    while queue:
        x = queue.popleft()
        for y in radj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


# --------------------------------------------------------------------------
# Critical vertices, connectivity, decomposition
# --------------------------------------------------------------------------

def critical_vertices(G: MultiDiGraph, s: str, t: str, k: int) -> set[str]:
    """Vertices contained in some minimum vertex (s,t)-cut.

    Equivalent to { v : min_vertex_cut(G - v) = k - 1 }: removing v
    lowers the cut value exactly when v lies in a minimum cut.  Computed
    from one max-flow run: v is critical iff its split arc is saturated
    and its two halves lie in different strong components of the
    residual graph.
    """
    value, paths = min_vertex_cut(G, s, t)
    if value != k:
        raise NotMinimumBudget(f"minimum cut is {value}, not {k}")
    if k == 0:
        return set()
    # Rebuild the residual of the vertex-split network from the witness
    # paths: the split arc of every internal path vertex carries flow 1.
    on_path_flow: dict[tuple[str, str], int] = {}
    saturated: set[str] = set()
    for p in paths:
        for v in p[1:-1]:
            saturated.add(v)
        for u, v in zip(p, p[1:]):
            on_path_flow[(u, v)] = on_path_flow.get((u, v), 0) + 1
    # Residual adjacency over split nodes (v, 0)=in, (v, 1)=out.
    adj: dict[tuple[str, int], set[tuple[str, int]]] = {}

    def add(a, b):
        adj.setdefault(a, set()).add(b)

    for v in G.vertices:
        if v in (s, t) or v not in saturated:
            add((v, 0), (v, 1))
        if v in saturated:
            add((v, 1), (v, 0))
        if v in (s, t):
            add((v, 0), (v, 1))
            add((v, 1), (v, 0))
    arc_flow = dict(on_path_flow)
    for u, v in set(G.arcs.values()):
        f = arc_flow.get((u, v), 0)
        add((u, 1), (v, 0))  # infinite capacity, never saturated
        if f > 0:
            add((v, 0), (u, 1))
    comp = _scc(adj)
    out = set()
    for v in saturated:
        if v in (s, t):
            continue
        if comp[(v, 0)] != comp[(v, 1)]:
            out.add(v)
    return out


def _scc(adj: dict) -> dict:
    """Iterative Tarjan strongly connected components."""
    index: dict = {}
    low: dict = {}
    comp: dict = {}
    stack: list = []
    on_stack: set = set()
    counter = [0]
    ncomp = [0]
    for root in adj:
        if root in index:
            continue
        work = [(root, iter(sorted(adj.get(root, ()))))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for nxt in it:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter[0]
                    counter[0] += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(sorted(adj.get(nxt, ())))))
                    advanced = True
                    break
                elif nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp[w] = ncomp[0]
                    if w == node:
                        break
                ncomp[0] += 1
    return comp


def connection_map(G: MultiDiGraph,
                   blocking: set[str]) -> dict[str, set[str]]:
    """For each vertex u: all v with a u->v path whose internal vertices
    avoid ``blocking`` (the critical vertices plus s and t)."""
    adj = G.out_adj()
    out: dict[str, set[str]] = {}
    for u in sorted(G.vertices):
        seen: set[str] = set()
        queue = deque()
        for _, w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
        while queue:
            x = queue.popleft()
            if x in blocking:
                continue  # reachable, but blocks further expansion
            for _, w in adj[x]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        out[u] = seen
    return out


def connected_to(G: MultiDiGraph, critical: set[str], u: str,
                 v: str) -> bool:
    """True iff a directed u->v path exists with all internals
    non-critical."""
    return v in connection_map(G, set(critical))[u]


@dataclass
class _Layout:
    """Critical vertices organized along a fixed set of witness paths."""
    paths: list[list[str]]
    crit: list[list[str]]  # crit[i][j-1] = j-th critical vertex of path i
    z: list[int]
    conn: dict[str, set[str]]
    s: str
    t: str

    def vertex_at(self, i: int, j: int) -> str:
        """v_{i,j} with v_{i,0} = s and v_{i,z_i+1} = t."""
        if j == 0:
            return self.s
        if j == self.z[i] + 1:
            return self.t
        return self.crit[i][j - 1]


def _build_layout(G: MultiDiGraph, s: str, t: str, k: int) -> _Layout:
    value, paths = min_vertex_cut(G, s, t)
    if value != k:
        raise NotMinimumBudget(f"minimum cut is {value}, not {k}")
    critical = critical_vertices(G, s, t, k)
    crit: list[list[str]] = []
    placed: set[str] = set()
    for p in paths:
        row = [v for v in p[1:-1] if v in critical]
        crit.append(row)
        placed |= set(row)
    if placed != critical:
        raise InternalInvariantViolation(
            "critical vertices must lie on the witness paths")
    if any(not row for row in crit):
        raise InternalInvariantViolation(
            "every witness path must contain a critical vertex")
    conn = connection_map(G, critical | {s, t})
    return _Layout(paths, crit, [len(row) for row in crit], conn, s, t)


def decomposition_sequence(G: MultiDiGraph, s: str, t: str, k: int,
                           witness_paths=None) -> list[tuple[int, ...]]:
    """The unit-step prefix sequence from (1,...,1) to (z_1,...,z_k).

    At every step, increments a coordinate i whose second-to-last layer
    vertex has no connection to any critical vertex outside the prefix.
    """
    layout = _build_layout(G, s, t, k)
    return _decomposition(layout)


def _outside_criticals(layout: _Layout, a: tuple[int, ...]) -> list[str]:
    out = [layout.crit[i][j] for i in range(len(a))
           for j in range(a[i], layout.z[i])]
    out.append(layout.t)
    return out


def _decomposition(layout: _Layout) -> list[tuple[int, ...]]:
    k = len(layout.z)
    a = tuple([1] * k)
    seq = [a]
    target = tuple(layout.z)
    while a != target:
        outside = _outside_criticals(layout, a)
        chosen = None
        for i in range(k):
            if a[i] >= layout.z[i]:
                continue
            u = layout.vertex_at(i, a[i] - 1)
            if not any(z in layout.conn[u] for z in outside):
                chosen = i
                break
        if chosen is None:
            raise InternalInvariantViolation(
                "no admissible coordinate to extend the decomposition")
        a = tuple(x + 1 if i == chosen else x for i, x in enumerate(a))
        seq.append(a)
    return seq


def _assert_decomposition(layout: _Layout,
                          seq: list[tuple[int, ...]]) -> None:
    """Conditions (a), (b), (c) of the layer decomposition."""
    k = len(layout.z)
    if seq[0] != tuple([1] * k) or seq[-1] != tuple(layout.z):
        raise InternalInvariantViolation("decomposition endpoints wrong")
    for prev, cur in zip(seq, seq[1:]):
        diff = [c - p for p, c in zip(prev, cur)]
        if sorted(diff) != [0] * (k - 1) + [1]:
            raise InternalInvariantViolation("non-unit decomposition step")
    for a in seq:
        outside = _outside_criticals(layout, a)
        for i in range(k):
            for j in range(1, a[i] + 1):
                if a[i] - 1 <= j <= a[i]:
                    continue  # last two layers are exempt
                x = layout.crit[i][j - 1]
                if any(z in layout.conn[x] for z in outside):
                    raise InternalInvariantViolation(
                        "interface condition violated inside the prefix")


# --------------------------------------------------------------------------
# Valid colorings (exhaustive, for verification) and the DP
# --------------------------------------------------------------------------

def valid_colorings(G: MultiDiGraph, s: str, t: str,
                    k: int) -> list[frozenset[str]]:
    """Black sets of all valid colorings of G that color t tan.

    These are exactly the minimum vertex (s,t)-cuts; enumerated directly
    from per-path black positions with the silver/tan pattern.
    """
    layout = _build_layout(G, s, t, k)
    out = []
    for choice in itertools.product(*[range(1, z + 1) for z in layout.z]):
        silver = {s}
        tan = {t}
        black = set()
        for i, j_black in enumerate(choice):
            black.add(layout.crit[i][j_black - 1])
            for j in range(1, layout.z[i] + 1):
                v = layout.crit[i][j - 1]
                if j < j_black:
                    silver.add(v)
                elif j > j_black:
                    tan.add(v)
        if any(z in layout.conn[x] for x in silver for z in tan):
            continue
        out.append(frozenset(black))
    return out


def _slots(layout: _Layout, a: tuple[int, ...]) -> list[tuple[str, str]]:
    """Last-two-layer vertices per path: (v_{i,a_i-1}, v_{i,a_i})."""
    return [(layout.vertex_at(i, a[i] - 1), layout.vertex_at(i, a[i]))
            for i in range(len(a))]


def _coloring_conflict(layout: _Layout, slot_verts: list[tuple[str, str]],
                       y: tuple[tuple[str, str], ...]) -> bool:
    """True iff some silver slot vertex is connected to a tan slot
    vertex (s is implicitly silver on every slot holding it)."""
    colored: list[tuple[str, str]] = []
    for (u, w), (cu, cw) in zip(slot_verts, y):
        colored.append((u, cu))
        colored.append((w, cw))
    for x, cx in colored:
        if cx != "s":
            continue
        reach = layout.conn[x]
        for z, cz in colored:
            if cz == "t" and z in reach:
                return True
    return False


def _trim_table(M: LinearMatroid, table: dict, r: int,
                seed: int) -> dict:
    out = {}
    for (y, i), members in table.items():
        fam = SetFamily(i, members)
        if len(fam) == 0:
            continue
        out[(y, i)] = rep_family(M, fam, r - i, seed=seed)
    return out


def dvc_rep_family(inst: StCutInstance, seed: int = 0) -> SetFamily:
    """Representative family of independent minimum vertex (s,t)-cuts.

    Runs the last-two-layers coloring DP along the decomposition
    sequence, trimming every entry, and reads off the black sets of the
    complete colorings that color t tan.
    """
    G, M, s, t = inst.graph, inst.matroid, inst.s, inst.t
    k, q = inst.k, inst.q
    r = M.rank()
    if k + q > r:
        raise NotMinimumBudget(f"k+q = {k + q} exceeds rank {r}")
    if k == 0:
        value, _ = min_vertex_cut(G, s, t)
        if value != 0:
            raise NotMinimumBudget(f"minimum cut is {value}, not 0")
        return SetFamily(0, [frozenset()])

    layout = _build_layout(G, s, t, k)
    seq = _decomposition(layout)
    _assert_decomposition(layout, seq)

    def may_be_black(v: str) -> bool:
        return v not in inst.Q and v in M.ground

    # Base: black at v_{i,1} or an all-silver path prefix.
    a1 = seq[0]
    slot_verts = _slots(layout, a1)
    table: dict = {}
    for bits in itertools.product((False, True), repeat=k):
        black = [layout.crit[i][0] for i in range(k) if bits[i]]
        if any(not may_be_black(v) for v in black):
            continue
        if not M.is_independent(black):
            continue
        y = tuple(("s", "b" if bits[i] else "s") for i in range(k))
        if _coloring_conflict(layout, slot_verts, y):
            continue
        table.setdefault((y, sum(bits)), []).append(frozenset(black))
    table = _trim_table(M, table, r, seed)

    for step, a in enumerate(seq[1:], start=2):
        prev = seq[step - 2]
        istar = next(i for i in range(k) if a[i] != prev[i])
        v = layout.vertex_at(istar, a[istar])
        slot_verts = _slots(layout, a)
        new_table: dict = {}
        for (y_old, i_old), fam in table.items():
            u_c, w_c = y_old[istar]
            # (i) v black: requires a pure silver prefix on the path.
            if u_c == "s" and w_c == "s" and may_be_black(v) \
                    and i_old + 1 <= k:
                y = tuple(("s", "b") if i == istar else y_old[i]
                          for i in range(k))
                if not _coloring_conflict(layout, slot_verts, y):
                    for Qset in fam:
                        cand = Qset | {v}
                        if M.is_independent(cand):
                            new_table.setdefault((y, i_old + 1),
                                                 []).append(cand)
            # (ii) v silver.
            if u_c == "s" and w_c == "s":
                y = tuple(("s", "s") if i == istar else y_old[i]
                          for i in range(k))
                if not _coloring_conflict(layout, slot_verts, y):
                    new_table.setdefault((y, i_old), []).extend(fam)
            # (iii) v tan: black at w (u silver) or earlier (w tan).
            if (w_c == "b" and u_c == "s") or \
                    (w_c == "t" and u_c in ("b", "t")):
                y = tuple((w_c, "t") if i == istar else y_old[i]
                          for i in range(k))
                if not _coloring_conflict(layout, slot_verts, y):
                    new_table.setdefault((y, i_old), []).extend(fam)
        table = _trim_table(M, new_table, r, seed)

    # Readout: t is tan, so no silver slot vertex may connect to t.
    final_slots = _slots(layout, seq[-1])
    members: list[frozenset[str]] = []
    for (y, i), fam in table.items():
        if i != k:
            continue
        silver_bad = False
        for (u, w), (cu, cw) in zip(final_slots, y):
            if (cu == "s" and layout.t in layout.conn[u]) or \
                    (cw == "s" and layout.t in layout.conn[w]):
                silver_bad = True
                break
        if silver_bad:
            continue
        members.extend(fam)
    dedup = SetFamily(k, members)
    for S in dedup:
        H = G.remove_vertices(S)
        if t in H.reachable(s):
            raise InternalInvariantViolation(
                f"DP produced a non-cut {sorted(S)}")
    out = rep_family(M, dedup, q, seed=seed) if dedup.sets else dedup
    if len(out) > 2 ** r:
        raise InternalInvariantViolation("family size bound violated")
    return out


# --------------------------------------------------------------------------
# Top-level solver
# --------------------------------------------------------------------------

def givc_solve(inst: StCutInstance, max_n: int = DEFAULT_AUGMENT_CAP,
               seed: int = 0) -> SetFamily:
    """Representative family of minimal independent (s,t)-cuts of size k.

    Precondition (established by the caller iterating k upward): no
    independent cut of size smaller than k exists.  Pipeline: phase1,
    phase2, one augmentation branch per distinct surviving minimum cut,
    phase4 plus the coloring DP per branch, pulled back and trimmed.
    """
    k, q = inst.k, inst.q
    M = inst.matroid
    r = M.rank()
    if k > r:
        return SetFamily(k)
    i1 = phase1(inst) if isinstance(inst.graph, MultiGraph) else inst
    if i1.graph.has_arc(inst.s, inst.t):
        return SetFamily(k)  # no finite vertex cut at any budget
    i2 = phase2(i1)
    G2 = i2.graph
    if len(G2.vertices) > max_n:
        raise InstanceTooLarge(
            f"{len(G2.vertices)} vertices exceed the augmenter cap {max_n}")
    union: list[frozenset[str]] = []
    for Z in _minimal_cuts_via_bipartitions(G2, i2.s, i2.t, k):
        # The branch's unique minimum cut is Z itself, so branches whose
        # cut is excluded or dependent can only produce empty families.
        if Z & i2.Q or not Z <= i2.matroid.ground or \
                not i2.matroid.is_independent(Z):
            continue
        R = G2.remove_arcs(Z).reachable(i2.s)
        aug = _augmenting_arcs(G2.vertices, R, i2.s, i2.t, k)
        G2A = G2.add_arcs(aug)
        MA = i2.matroid.zero_pad(sorted(aug))
        branch = EdgeCutInstance(G2A, MA, i2.s, i2.t, i2.Q, k, q)
        i4 = phase4(branch, k)
        F4 = dvc_rep_family(i4, seed=seed)
        # Pull back: independent members consist of v-edge e-vertices.
        for S in F4:
            pulled = frozenset(x.split(":", 1)[1] for x in S)
            if len(pulled) != len(S) or \
                    any(not x.startswith("v:") for x in S):
                raise InternalInvariantViolation(
                    "independent member contains a zero-column element")
            union.append(pulled)
    fam = SetFamily(k, union)
    if not fam.sets:
        return fam
    out = rep_family(M, fam, q, seed=seed)
    if len(out) > 2 ** r:
        raise InternalInvariantViolation("family size bound violated")
    return out


def stcut_feasible(graph, M: LinearMatroid, s: str, t: str, Q, k_max: int,
                   max_n: int = DEFAULT_AUGMENT_CAP,
                   seed: int = 0) -> SetFamily | None:
    """Iterate k upward; the first nonempty family is returned with its k.

    Returns None if no independent (s,t)-cut of size <= k_max exists.
    """
    r = M.rank()
    for k in range(0, min(k_max, r) + 1):
        inst = StCutInstance(graph, M, s, t, frozenset(Q), k, r - k)
        fam = givc_solve(inst, max_n=max_n, seed=seed)
        if fam.sets:
            return fam
    return None
