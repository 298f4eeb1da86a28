"""Unit tests for graphs, flows, cut predicates, and identification."""

import itertools
import random

import pytest

from sepsolve.errors import NoFiniteCut
from sepsolve.graph import (MultiDiGraph, MultiGraph,
                            enumerate_minimal_edge_cuts,
                            enumerate_minimal_vertex_cuts, identify,
                            is_minimal_cut, is_vertex_cut, min_edge_cut,
                            min_vertex_cut, multiway_cut_check)


def digraph(*pairs, vertices=()):
    return MultiDiGraph.from_pairs(pairs, vertices)


def random_digraph(rng, n, m):
    verts = [f"v{i}" for i in range(n)]
    pairs = []
    for _ in range(m):
        u, v = rng.sample(verts, 2)
        pairs.append((u, v))
    return MultiDiGraph.from_pairs(pairs, verts)


def test_min_vertex_cut_path():
    G = digraph(("s", "a"), ("a", "t"))
    value, paths = min_vertex_cut(G, "s", "t")
    assert value == 1
    assert paths == [["s", "a", "t"]]


def test_min_vertex_cut_diamond():
    G = digraph(("s", "a"), ("a", "t"), ("s", "b"), ("b", "t"))
    value, paths = min_vertex_cut(G, "s", "t")
    assert value == 2
    assert len(paths) == 2
    internals = [set(p[1:-1]) for p in paths]
    assert internals[0].isdisjoint(internals[1])


def test_min_vertex_cut_direct_arc():
    G = digraph(("s", "t"))
    with pytest.raises(NoFiniteCut):
        min_vertex_cut(G, "s", "t")


def test_min_vertex_cut_disconnected():
    G = digraph(("s", "a"), vertices=["t"])
    value, paths = min_vertex_cut(G, "s", "t")
    assert value == 0 and paths == []


def test_min_vertex_cut_matches_brute_force():
    rng = random.Random(1)
    for _ in range(30):
        G = random_digraph(rng, rng.randrange(4, 8), rng.randrange(3, 12))
        s, t = "v0", "v1"
        if G.has_arc(s, t):
            continue
        value, paths = min_vertex_cut(G, s, t)
        # Witness paths are valid and internally vertex-disjoint.
        seen = set()
        for p in paths:
            assert p[0] == s and p[-1] == t
            inner = set(p[1:-1])
            assert not (inner & seen)
            seen |= inner
            for u, v in zip(p, p[1:]):
                assert G.has_arc(u, v)
        # Brute-force minimum.
        others = sorted(G.vertices - {s, t})
        brute = None
        for size in range(len(others) + 1):
            if any(is_vertex_cut(G, s, t, set(Z))
                   for Z in itertools.combinations(others, size)):
                brute = size
                break
        assert value == brute


def test_min_edge_cut():
    assert min_edge_cut(digraph(("s", "t")), "s", "t") == 1
    multi = MultiDiGraph({"s", "t"}, {f"m{i}": ("s", "t") for i in range(4)})
    assert min_edge_cut(multi, "s", "t") == 4
    two = digraph(("s", "a"), ("a", "t"), ("s", "b"), ("b", "t"))
    assert min_edge_cut(two, "s", "t") == 2


def test_is_minimal_cut_vertex():
    path = digraph(("s", "a"), ("a", "t"))
    assert is_minimal_cut(path, "s", "t", {"a"})
    diamond = digraph(("s", "a"), ("a", "t"), ("s", "b"), ("b", "t"))
    assert not is_minimal_cut(diamond, "s", "t", {"a"})
    extra = digraph(("s", "a"), ("a", "t"), ("s", "b"), ("b", "t"),
                    ("c", "s"))
    assert not is_minimal_cut(extra, "s", "t", {"a", "b", "c"})
    assert is_minimal_cut(extra, "s", "t", {"a", "b"})


def test_identify():
    tri = MultiGraph.from_pairs([("a", "b"), ("b", "c"), ("a", "c")])
    out = identify(tri, {"a", "b"}, "v")
    assert out.vertices == {"v", "c"}
    assert len(out.edges) == 1 and set(next(iter(out.edges.values()))) == \
        {"v", "c"}
    single = identify(tri, {"c"}, "w")
    assert single.vertices == {"a", "b", "w"}
    whole = identify(tri, {"a", "b", "c"}, "x")
    assert whole.vertices == {"x"} and not whole.edges


def test_multiway_cut_check():
    star = MultiGraph.from_pairs([("c", "t1"), ("c", "t2"), ("c", "t3")])
    assert multiway_cut_check(star, {"t1", "t2", "t3"}, {"c"})
    assert not multiway_cut_check(star, {"t1", "t2", "t3"}, set())


def test_phase1_edge_cut_equals_undirected():
    rng = random.Random(3)
    for _ in range(20):
        verts = [f"v{i}" for i in range(5)]
        pairs = [tuple(rng.sample(verts, 2)) for _ in range(6)]
        G = MultiGraph.from_pairs(pairs, verts)
        D = G.to_directed()
        s, t = "v0", "v1"
        # Brute-force undirected min edge cut.
        eids = sorted(G.edges)
        brute = None
        for size in range(len(eids) + 1):
            for Z in itertools.combinations(eids, size):
                H = G.remove_edges(Z)
                if not any(t in c and s in c for c in H.components()):
                    brute = size
                    break
            if brute is not None:
                break
        # With the doubled-arc representation each undirected edge
        # contributes exactly one forward arc to a directed cut.
        assert min_edge_cut(D, s, t) == brute


def test_enumerate_minimal_edge_cuts():
    G = digraph(("s", "a"), ("a", "t"), ("s", "b"), ("b", "t"))
    cuts = enumerate_minimal_edge_cuts(G, "s", "t", 2)
    # Brute force reference.
    eids = sorted(G.arcs)
    expect = set()
    for size in range(3):
        for Z in itertools.combinations(eids, size):
            if is_minimal_cut(G, "s", "t", set(Z), kind="edge"):
                expect.add(frozenset(Z))
    assert set(cuts) == expect


def test_enumerate_minimal_edge_cuts_random():
    rng = random.Random(11)
    for _ in range(25):
        G = random_digraph(rng, rng.randrange(4, 7), rng.randrange(3, 10))
        s, t = "v0", "v1"
        k = 3
        cuts = set(enumerate_minimal_edge_cuts(G, s, t, k))
        eids = sorted(G.arcs)
        expect = set()
        for size in range(k + 1):
            for Z in itertools.combinations(eids, size):
                if is_minimal_cut(G, s, t, set(Z), kind="edge"):
                    expect.add(frozenset(Z))
        assert cuts == expect


def test_enumerate_minimal_vertex_cuts():
    G = digraph(("s", "a"), ("a", "t"), ("s", "b"), ("b", "t"))
    cuts = enumerate_minimal_vertex_cuts(G, "s", "t", 2)
    assert frozenset({"a", "b"}) in cuts
    assert all(len(c) <= 2 for c in cuts)


def test_bipartite_and_acyclic():
    c4 = MultiGraph.from_pairs([("a", "b"), ("b", "c"), ("c", "d"),
                                ("d", "a")])
    assert c4.is_bipartite() and not c4.is_acyclic()
    c3 = MultiGraph.from_pairs([("a", "b"), ("b", "c"), ("c", "a")])
    assert not c3.is_bipartite()
    tree = MultiGraph.from_pairs([("a", "b"), ("b", "c")])
    assert tree.is_acyclic()
    para = MultiGraph({"a", "b"}, {"e1": ("a", "b"), "e2": ("a", "b")})
    assert not para.is_acyclic() and para.is_bipartite()
    loop = MultiGraph({"a"}, {"e1": ("a", "a")})
    assert not loop.is_acyclic() and not loop.is_bipartite()
