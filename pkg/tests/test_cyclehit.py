"""Tests for the independent FVS and OCT solvers."""

import itertools

import pytest

from sepsolve import ffmatrix as ff
from sepsolve.cyclehit import (disjoint_fvs, fvs_kernelize, ifvs_solve,
                               ioct_solve, path_representatives)
from sepsolve.graph import MultiGraph
from sepsolve.matroid import LinearMatroid, OracleMatroid
from sepsolve.oracle import (ProblemKind, brute_hitting_feasible,
                             random_instance)


def graph(pairs, extra=()):
    verts = {v for e in pairs for v in e} | set(extra)
    return MultiGraph.from_pairs(pairs, verts)


def cycle_graph(labels):
    return graph(list(zip(labels, labels[1:] + labels[:1])))


def identity_matroid(labels):
    n = len(labels)
    rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    return LinearMatroid(ff.FFMatrix(rows, ff.DEFAULT_PRIME, cols=n),
                         list(labels))


# --------------------------------------------------------------------------
# Path representatives
# --------------------------------------------------------------------------

def test_path_representatives_single_vertex():
    M = identity_matroid(["a"])
    assert path_representatives(["a"], M) == ["a"]


def test_path_representatives_parallel_columns():
    labels = [f"p{i}" for i in range(7)]
    rows = [[1] * 7, [0] * 7]
    M = LinearMatroid(ff.FFMatrix(rows, ff.DEFAULT_PRIME, cols=7), labels)
    assert path_representatives(labels, M) == ["p0"]


def test_path_representatives_lemma_property():
    # For every dropped u and every independent set X containing u, some
    # kept u' can replace u in X.
    for seed in range(10):
        inst = random_instance(ProblemKind.FVS, seed, n=7, m=8, r=3)
        M = inst.matroid
        path = sorted(M.ground)
        R = path_representatives(path, M)
        assert M.is_independent(R)
        assert len(R) <= M.rank()
        for u in path:
            if u in R:
                continue
            assert not M.is_independent(set(R) | {u})  # maximal
            for size in range(1, M.rank() + 1):
                for X in itertools.combinations(path, size):
                    if u not in X or not M.is_independent(X):
                        continue
                    rest = set(X) - {u}
                    assert any(M.is_independent(rest | {w})
                               for w in R if w not in rest)


# --------------------------------------------------------------------------
# Kernelization
# --------------------------------------------------------------------------

def test_kernelize_forest():
    G = graph([("a", "b"), ("b", "c"), ("b", "d")])
    kern = fvs_kernelize(G, identity_matroid(sorted(G.vertices)), 2)
    assert not kern.graph.vertices
    assert not kern.forced_cycles
    assert kern.feasible


def test_kernelize_long_cycle_rank2():
    labels = [f"c{i:02d}" for i in range(20)]
    G = cycle_graph(labels)
    rows = [[1] * 20, list(range(20))]
    M = LinearMatroid(ff.FFMatrix(rows, ff.DEFAULT_PRIME, cols=20), labels)
    kern = fvs_kernelize(G, M, 2)
    assert not kern.graph.vertices  # pure cycle: no anchors remain
    assert len(kern.forced_cycles) == 1
    assert 1 <= len(kern.forced_cycles[0]) <= 3
    assert kern.feasible


def test_kernelize_theta_graph():
    # Two degree-3 anchors joined by three internally disjoint paths.
    pairs = [("a", "x1"), ("x1", "x2"), ("x2", "b"),
             ("a", "y1"), ("y1", "b"),
             ("a", "b")]
    G = graph(pairs)
    M = identity_matroid(sorted(G.vertices))
    kern = fvs_kernelize(G, M, 2)
    assert set(kern.graph.vertices) == {"a", "b"}
    assert len(kern.graph.edges) == 3
    assert len(kern.special_edges) == 2
    for e in kern.special_edges:
        assert set(kern.path_vertices[e]) <= {"x1", "x2", "y1"}


# --------------------------------------------------------------------------
# Disjoint FVS branching
# --------------------------------------------------------------------------

def test_disjoint_fvs_zero_budget_acyclic():
    H = graph([("a", "b")])
    M = identity_matroid(["a", "b"])
    assert disjoint_fvs(H, M, {"a"}, {"b"}, {}, 0) == frozenset()


def test_disjoint_fvs_zero_budget_cycle():
    H = graph([("a", "b"), ("b", "c"), ("c", "a")])
    M = identity_matroid(["a", "b", "c"])
    assert disjoint_fvs(H, M, {"a"}, {"b", "c"}, {}, 0) is None


def test_disjoint_fvs_node_bound():
    # Recursion-tree size stays within 9^t * (n + m) on fuzz instances.
    for seed in range(40):
        inst = random_instance(ProblemKind.FVS, seed, n=9, m=12, r=3, k=3)
        stats = {}
        ifvs_solve(inst.graph, inst.matroid, inst.k, stats=stats)
        n_m = len(inst.graph.vertices) + len(inst.graph.edges)
        assert stats.get("nodes", 0) <= 9 ** inst.k * n_m


# --------------------------------------------------------------------------
# Independent FVS
# --------------------------------------------------------------------------

def test_ifvs_forest():
    G = graph([("a", "b"), ("b", "c")])
    assert ifvs_solve(G, identity_matroid(["a", "b", "c"]), 1) == frozenset()


def test_ifvs_triangle():
    G = graph([("a", "b"), ("b", "c"), ("c", "a")])
    sol = ifvs_solve(G, identity_matroid(["a", "b", "c"]), 1)
    assert sol is not None and len(sol) == 1


def test_ifvs_two_triangles_parallel_columns():
    pairs = [("a1", "a2"), ("a2", "a3"), ("a3", "a1"),
             ("b1", "b2"), ("b2", "b3"), ("b3", "b1")]
    G = graph(pairs)
    labels = sorted(G.vertices)
    rows = [[1] * 6, [0] * 6]  # every pair of columns is dependent
    M = LinearMatroid(ff.FFMatrix(rows, ff.DEFAULT_PRIME, cols=6), labels)
    assert ifvs_solve(G, M, 2) is None
    # A single triangle is still fine: one vertex suffices.
    G1 = graph(pairs[:3])
    M1 = LinearMatroid(ff.FFMatrix([[1] * 3, [0] * 3], ff.DEFAULT_PRIME,
                                   cols=3), sorted(G1.vertices))
    sol = ifvs_solve(G1, M1, 1)
    assert sol is not None and len(sol) == 1


def test_ifvs_matches_brute():
    hits = 0
    for seed in range(60):
        inst = random_instance(ProblemKind.FVS, seed, n=10, m=13, r=3, k=3)
        want = brute_hitting_feasible(inst, odd_only=False)
        sol = ifvs_solve(inst.graph, inst.matroid, inst.k)
        assert (sol is not None) == want, seed
        if sol is not None:
            assert len(sol) <= inst.k
            assert inst.matroid.is_independent(sol)
            assert inst.graph.remove_vertices(sol).is_acyclic()
            hits += 1
    assert hits >= 10


def test_ifvs_oracle_matroid():
    for seed in range(15):
        inst = random_instance(ProblemKind.FVS, seed, n=8, m=11, r=3, k=2)
        M = inst.matroid
        oracle = OracleMatroid(M.ground, lambda S, _M=M: _M.is_independent(S),
                               M.rank())
        a = ifvs_solve(inst.graph, M, inst.k)
        b = ifvs_solve(inst.graph, oracle, inst.k)
        assert (a is None) == (b is None)
        if b is not None:
            assert M.is_independent(b)
            assert inst.graph.remove_vertices(b).is_acyclic()


def test_ifvs_kernel_preserves_answer():
    # Degree-2 heavy instances exercise the path trimming.
    for seed in range(25):
        inst = random_instance(ProblemKind.FVS, seed, n=6, m=7, r=2, k=2)
        G = inst.graph
        # Subdivide every edge once: lots of degree-2 vertices.
        pairs = []
        verts = set(G.vertices)
        mids = []
        for eid in sorted(G.edges):
            u, v = G.edges[eid]
            m = f"mid_{eid}"
            mids.append(m)
            verts.add(m)
            pairs.extend([(u, m), (m, v)])
        G2 = MultiGraph.from_pairs(pairs, verts)
        M2 = inst.matroid.zero_pad(mids)
        # Padded columns are all-zero: mids are never independent, so
        # feasibility must match the unsubdivided instance.
        want = brute_hitting_feasible(inst, odd_only=False)
        sol = ifvs_solve(G2, M2, inst.k)
        assert (sol is not None) == want
        if sol is not None:
            assert G2.remove_vertices(sol).is_acyclic()


# --------------------------------------------------------------------------
# Independent OCT
# --------------------------------------------------------------------------

def test_ioct_bipartite():
    G = graph([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    assert ioct_solve(G, identity_matroid(sorted(G.vertices)), 1) == \
        frozenset()


def test_ioct_five_cycle():
    labels = [f"c{i}" for i in range(5)]
    G = cycle_graph(labels)
    sol = ioct_solve(G, identity_matroid(labels), 1)
    assert sol is not None and len(sol) == 1


def test_ioct_rejects_oracle_matroid():
    G = cycle_graph(["a", "b", "c"])
    M = OracleMatroid({"a", "b", "c"}, lambda S: True, 3)
    with pytest.raises(ValueError):
        ioct_solve(G, M, 1)


def test_ioct_matches_brute():
    hits = 0
    for seed in range(60):
        inst = random_instance(ProblemKind.OCT, seed, n=9, m=14, r=3, k=3)
        want = brute_hitting_feasible(inst, odd_only=True)
        sol = ioct_solve(inst.graph, inst.matroid, inst.k)
        assert (sol is not None) == want, seed
        if sol is not None:
            assert len(sol) <= inst.k
            assert inst.matroid.is_independent(sol)
            assert inst.graph.remove_vertices(sol).is_bipartite()
            if sol:
                hits += 1
    assert hits >= 10
