"""Tests for separable sets, separability and criticality."""

from itertools import combinations, product

import pytest
from hypothesis import given, settings

from strategies import graphs, graphs_with_set
from zq_switching.errors import GraphError
from zq_switching.family import FamilyParams, make_family
from zq_switching.graph import VertexLabeling, WeightedGraph, make_graph, switch
from zq_switching.separability import (
    SeparationCertificate,
    brute_force_separable_set,
    constant_weight_sets,
    delete_vertex,
    is_critical,
    is_separable,
    is_separable_set,
    nonseparable_subgraph_count,
    nontrivial_separable_sets,
    unique_separable_pair,
    verify_certificate,
)

# 4-vertex path 1-3-2-4 next to the isolated vertex 0: G_{5,0} mod 2.
PATH5 = make_graph(2, 5, [(1, 3, 1), (2, 3, 1), (2, 4, 1)])


def empty(q: int, n: int) -> WeightedGraph:
    return WeightedGraph(q, n, bytes(n * n))


@settings(max_examples=200, deadline=None)
@given(graphs_with_set(max_q=3, max_n=5))
def test_propagation_matches_brute_force(data):
    g, W = data
    fast = is_separable_set(g, W)
    slow = brute_force_separable_set(g, W)
    assert (fast is None) == (slow is None)
    if fast is not None:
        assert verify_certificate(g, fast)


@pytest.mark.parametrize(
    "q,n",
    [(2, 4), (3, 4), (2, 5), pytest.param(3, 5, marks=pytest.mark.slow)],
)
def test_propagation_matches_brute_force_exhaustively(q, n):
    # every graph of order n over Z_q and every W
    m = n * (n - 1) // 2
    for upper in product(range(q), repeat=m):
        g = WeightedGraph.from_upper(q, n, upper)
        for k in range(n + 1):
            for W in combinations(range(n), k):
                assert (is_separable_set(g, W) is None) == (brute_force_separable_set(g, W) is None)


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=1))
def test_trivial_sets_are_separable(g):
    n = g.n
    for W in ([], [0], list(range(1, n)), list(range(n))):
        cert = is_separable_set(g, W)
        assert cert is not None
        assert verify_certificate(g, cert)


@settings(max_examples=100, deadline=None)
@given(graphs_with_set(max_n=6))
def test_complement_has_the_same_verdict(data):
    g, W = data
    rest = [v for v in range(g.n) if v not in W]
    assert (is_separable_set(g, W) is None) == (is_separable_set(g, rest) is None)


@settings(max_examples=100, deadline=None)
@given(graphs_with_set(max_n=6))
def test_certificate_partition_explains_cross_weights(data):
    g, W = data
    cert = is_separable_set(g, W)
    if cert is None:
        return
    w_classes, v_classes = cert.classes()
    inside = {v: i for i, vs in w_classes.items() for v in vs}
    outside = {v: j for j, vs in v_classes.items() for v in vs}
    for u, i in inside.items():
        for v, j in outside.items():
            assert g.weight(u, v) == (i + j) % g.q


@settings(max_examples=100, deadline=None)
@given(graphs_with_set(max_n=6))
def test_constant_weight_sets_are_separable(data):
    g, W = data
    if constant_weight_sets(g, W):
        assert is_separable_set(g, W) is not None


def test_bad_vertex_set():
    with pytest.raises(GraphError):
        is_separable_set(PATH5, [5])


def test_verify_certificate_rejects_wrong_labeling():
    zero = VertexLabeling.zero(2, 5)
    assert verify_certificate(empty(2, 5), SeparationCertificate((0, 1), zero))
    assert not verify_certificate(PATH5, SeparationCertificate((1, 3), zero))
    assert not verify_certificate(PATH5, SeparationCertificate((0, 1), VertexLabeling.zero(2, 4)))


def test_small_orders_are_nonseparable():
    for n in range(4):
        assert is_separable(empty(3, n)) is None


def test_empty_graph_sets():
    sets = nontrivial_separable_sets(empty(3, 4))
    assert [W for W, _ in sets] == [(0, 1), (0, 2), (0, 3)]
    cert = is_separable(empty(3, 4))
    assert cert is not None and cert.W == (0, 1)


def test_path_with_isolated_vertex_is_critical():
    assert is_separable(PATH5) is None
    assert is_critical(PATH5)
    assert nonseparable_subgraph_count(PATH5) == 0


def test_separable_graph_is_not_critical():
    assert not is_critical(empty(2, 5))


@settings(max_examples=60, deadline=None)
@given(graphs(max_q=4, min_n=4, max_n=6))
def test_separability_is_a_switching_invariant(g):
    lab = [(v * 2 + 1) % g.q for v in range(g.n)]
    h = switch(g, VertexLabeling(g.q, tuple(lab)))
    assert (is_separable(g) is None) == (is_separable(h) is None)


@settings(max_examples=60, deadline=None)
@given(graphs(max_q=3, min_n=4, max_n=6))
def test_is_separable_agrees_with_set_listing(g):
    assert (is_separable(g) is None) == (not nontrivial_separable_sets(g))


def test_delete_vertex():
    sub = delete_vertex(PATH5, 3)
    assert sub.n == 4
    assert sub.edges() == [(2, 3, 1)]


def test_unique_pair_behind_a_nonseparable_deletion():
    # vertex 5 copies the neighbourhood of vertex 4, so {4, 5} separates
    g = make_graph(2, 6, [(1, 3, 1), (2, 3, 1), (2, 4, 1), (2, 5, 1)])
    assert is_separable(g) is not None
    assert is_separable(delete_vertex(g, 5)) is None
    assert nonseparable_subgraph_count(g) == 2
    assert unique_separable_pair(g, 5) == (5, 4)
    assert unique_separable_pair(g, 4) == (4, 5)


def test_family_graph_matches_path():
    assert make_family(FamilyParams(5, 2, 0)) == PATH5


def test_named_pair_separates_after_deleting_the_isolated_vertex():
    sub = delete_vertex(PATH5, 0)
    cert = is_separable_set(sub, [1, 2])
    assert cert is not None
    assert verify_certificate(sub, cert)
    assert is_separable_set(PATH5, [0, 1]) is None


def test_constant_weight_graph_lists_every_pair_with_0():
    g = WeightedGraph.from_upper(5, 4, [3] * 6)
    assert [W for W, _ in nontrivial_separable_sets(g)] == [(0, 1), (0, 2), (0, 3)]
    assert nonseparable_subgraph_count(empty(2, 5)) == 0
