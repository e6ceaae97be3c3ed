import math

import numpy as np
import pytest

from hubapsp.graph import (
    INF,
    NegativeCycleDetected,
    build_graph,
    enumerate_simple_cycles,
    floyd_warshall_oracle,
    has_cycle,
    hop_limited_oracle,
    negative_cycle_hops_oracle,
)

TRIANGLE = [(0, 1, 1), (1, 2, 1), (2, 0, -3)]


def test_single_edge_adjacency():
    g = build_graph(2, [(0, 1, 5.0)])
    assert tuple(g.out_adj[0]) == (0,)
    assert tuple(g.in_adj[1]) == (0,)
    assert tuple(g.out_adj[1]) == ()
    assert g.m == 1


def test_edgeless_single_vertex():
    g = build_graph(1, [])
    assert g.n == 1 and g.m == 0


def test_triangle_total_weight():
    g = build_graph(3, TRIANGLE)
    assert sum(w for (_, _, w) in g.edges) == -1


@pytest.mark.parametrize("bad", [
    (0, 3, 1),          # endpoint out of range
    (-1, 0, 1),
    (0, 1, math.inf),   # non-finite weight
    (0, 1, math.nan),
])
def test_build_graph_rejects(bad):
    with pytest.raises(ValueError):
        build_graph(3, [bad])


def test_build_graph_keeps_integer_weights():
    g = build_graph(2, [(0, 1, 5), (1, 0, 2.5)])
    assert g.edges[0][2] == 5 and isinstance(g.edges[0][2], int)
    assert isinstance(g.edges[1][2], float)


def test_reverse_shares_edge_indices():
    g = build_graph(3, TRIANGLE)
    r = g.reverse()
    assert r.edges[0] == (1, 0, 1)
    assert r.edges[2] == (0, 2, -3)
    assert r.reverse().edges == g.edges


def test_hop_oracle_needs_enough_hops():
    g = build_graph(3, [(0, 1, 1), (1, 2, 1)])
    d1 = hop_limited_oracle(g, 1)
    d2 = hop_limited_oracle(g, 2)
    assert d1[0, 2] == INF
    assert d2[0, 2] == 2


def test_hop_oracle_negative_closed_walk():
    # Two tours of the -1 triangle in six hops.
    g = build_graph(3, TRIANGLE)
    d6 = hop_limited_oracle(g, 6)
    assert d6[0, 0] == -2


def test_floyd_warshall_on_directed_cycle():
    g = build_graph(4, [(i, (i + 1) % 4, 1) for i in range(4)])
    dist = floyd_warshall_oracle(g)
    for i in range(4):
        for j in range(4):
            assert dist[i, j] == (j - i) % 4


def test_floyd_warshall_disconnected():
    g = build_graph(2, [])
    dist = floyd_warshall_oracle(g)
    assert dist[0, 0] == 0 and dist[1, 1] == 0
    assert dist[0, 1] == INF and dist[1, 0] == INF


def test_floyd_warshall_detects_negative_cycle():
    g = build_graph(3, TRIANGLE)
    with pytest.raises(NegativeCycleDetected):
        floyd_warshall_oracle(g)


def test_enumerate_triangle():
    cycles = enumerate_simple_cycles(build_graph(3, TRIANGLE))
    assert len(cycles) == 1
    assert cycles[0].hops == 3
    assert cycles[0].length == -1


def test_enumerate_two_cycle():
    g = build_graph(2, [(0, 1, 1), (1, 0, 1)])
    cycles = enumerate_simple_cycles(g)
    assert len(cycles) == 1 and cycles[0].hops == 2


def test_enumerate_complete_digraph_on_four():
    edges = [(u, v, 1) for u in range(4) for v in range(4) if u != v]
    cycles = enumerate_simple_cycles(build_graph(4, edges))
    by_hops = {}
    for c in cycles:
        by_hops[c.hops] = by_hops.get(c.hops, 0) + 1
    assert by_hops == {2: 6, 3: 8, 4: 6}
    assert len(cycles) == 20


def test_enumerate_refuses_large_graphs():
    g = build_graph(13, [])
    with pytest.raises(ValueError):
        enumerate_simple_cycles(g, max_n=12)


def test_has_cycle():
    assert not has_cycle(build_graph(3, [(0, 1, 1), (1, 2, 1)]))
    assert has_cycle(build_graph(2, [(0, 1, 1), (1, 0, 1)]))
    assert has_cycle(build_graph(1, [(0, 0, 1)]))   # self loop counts


def test_negative_cycle_hops_oracle():
    assert negative_cycle_hops_oracle(build_graph(3, TRIANGLE)) == 3
    g = build_graph(2, [(0, 1, 1), (1, 0, -2)])
    assert negative_cycle_hops_oracle(g) == 2
    assert negative_cycle_hops_oracle(build_graph(2, [(0, 1, -5)])) is None
    assert negative_cycle_hops_oracle(build_graph(1, [(0, 0, -1)])) == 1


def test_digraph_equality_and_hash():
    g1 = build_graph(3, TRIANGLE)
    g2 = build_graph(3, list(TRIANGLE))
    assert g1 == g2 and hash(g1) == hash(g2)
    assert g1 != build_graph(3, TRIANGLE[:2])
