"""Unit tests for brute-force oracles and the lower-bound family."""

import itertools

import pytest

from sepsolve import ffmatrix as ff
from sepsolve.errors import TooLarge
from sepsolve.graph import MultiGraph, min_vertex_cut
from sepsolve.instances import HittingInstance, MwcInstance, StCutInstance
from sepsolve.matroid import LinearMatroid
from sepsolve.oracle import (ProblemKind, all_candidate_cuts, brute_family,
                             exhaustive_strategy, gen_gpq, query_count_probe,
                             random_instance)
from sepsolve.repfam import SetFamily
from tests.test_matroid import check_axioms


def identity_matroid(labels):
    return LinearMatroid(ff.FFMatrix.identity(len(labels), ff.DEFAULT_PRIME),
                         labels)


def test_brute_stcut_path():
    G = MultiGraph.from_pairs([("s", "a"), ("a", "t")])
    inst = StCutInstance(G, identity_matroid(["a"]), "s", "t",
                         frozenset(), 1, 0)
    assert brute_family(ProblemKind.StCut, inst) == SetFamily(1, [{"a"}])


def test_brute_stcut_diamond_k1_empty():
    G = MultiGraph.from_pairs([("s", "a"), ("a", "t"), ("s", "b"),
                               ("b", "t")])
    inst = StCutInstance(G, identity_matroid(["a", "b"]), "s", "t",
                         frozenset(), 1, 1)
    assert len(brute_family(ProblemKind.StCut, inst)) == 0


def test_brute_mwc_star():
    G = MultiGraph.from_pairs([("c", "t1"), ("c", "t2"), ("c", "t3")])
    T = frozenset({"t1", "t2", "t3"})
    inst = MwcInstance(G, identity_matroid(["c"]), T, T, 1, 0)
    assert brute_family(ProblemKind.MultiwayCut, inst) == \
        SetFamily(1, [{"c"}])


def test_brute_bounds():
    G = MultiGraph.from_pairs([], [f"v{i}" for i in range(15)])
    inst = HittingInstance(G, identity_matroid(sorted(G.vertices)), 1)
    with pytest.raises(TooLarge):
        brute_family(ProblemKind.FVS, inst)


def test_gen_gpq_sizes():
    inst = gen_gpq(1, 1)
    assert len(inst.graph.vertices) == 4
    assert min_vertex_cut(inst.graph, "s", "t")[0] == 2
    inst = gen_gpq(2, 3)
    assert len(inst.graph.vertices) == 14
    assert min_vertex_cut(inst.graph, "s", "t")[0] == 4


def test_gen_gpq_min_cut_shapes():
    # Every minimum cut has the one-layer-per-block shape.
    inst = gen_gpq(2, 2)
    cands = all_candidate_cuts(2, 2)
    for X in cands:
        G = inst.graph.remove_vertices(X)
        comp_of_s = next(c for c in G.components() if "s" in c)
        assert "t" not in comp_of_s


def test_gpq_matroid_axioms():
    for (p, q) in [(1, 1), (1, 2), (2, 2), (1, 4)]:
        inst = gen_gpq(p, q)
        ground = sorted(inst.graph.vertices - {"s", "t"})
        check_axioms(inst.matroid, ground)


def test_gpq_only_hidden_candidate_independent():
    inst = gen_gpq(2, 3, (2, 3))
    for X in all_candidate_cuts(2, 3):
        assert inst.matroid.is_independent(X) == (X == inst.W)


def test_query_count_probe():
    assert query_count_probe(exhaustive_strategy, 1, 4) >= 3
    assert query_count_probe(exhaustive_strategy, 2, 3) >= 8


def test_query_probe_rejects_wrong_strategy():
    # A strategy that skips two candidates must answer wrongly somewhere.
    def skipping(inst):
        for X in all_candidate_cuts(inst.p, inst.q)[:-2]:
            if inst.matroid.is_independent(X):
                return X
        return None

    with pytest.raises(AssertionError):
        query_count_probe(skipping, 1, 4)


def test_random_instance_deterministic():
    a = random_instance(ProblemKind.StCut, seed=5)
    b = random_instance(ProblemKind.StCut, seed=5)
    assert a.graph.vertices == b.graph.vertices
    assert a.graph.edges == b.graph.edges
    assert a.matroid.matrix == b.matroid.matrix


def test_random_instance_shape():
    inst = random_instance(ProblemKind.StCut, seed=1, n=6, r=2)
    assert len(inst.graph.vertices) == 6
    assert inst.matroid.rank() == 2
