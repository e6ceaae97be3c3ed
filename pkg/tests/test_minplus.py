import numpy as np
import pytest

from hubapsp.generate import negative_cycle_free, random_digraph, with_negative_cycle
from hubapsp.graph import (
    INF,
    NegativeCycleDetected,
    build_graph,
    floyd_warshall_oracle,
    hop_limited_oracle,
)
from hubapsp.hubs import NegativeCycle
from hubapsp.minplus import (
    ApspResult,
    DistMatrix,
    LevelDistances,
    NegativeDiagonal,
    apsp,
    build_hub_graph,
    lift_level,
    minplus_closure,
    minplus_product,
)

CHAIN3 = DistMatrix((0, 1, 2), np.array([
    [0.0, 1.0, INF],
    [INF, 0.0, 1.0],
    [INF, INF, 0.0],
]))


def _identity(index):
    b = len(index)
    vals = np.full((b, b), INF)
    np.fill_diagonal(vals, 0.0)
    return DistMatrix(tuple(index), vals)


def test_product_identity():
    ident = _identity((0, 1, 2))
    out = minplus_product(ident, CHAIN3)
    assert np.array_equal(out.values, CHAIN3.values)


def test_product_two_hop_composition():
    out = minplus_product(CHAIN3, CHAIN3)
    assert out.entry(0, 2) == 2


def test_product_scalar():
    a = DistMatrix((7,), np.array([[-1.0]]))
    out = minplus_product(a, a)
    assert out.values[0, 0] == -2


def test_product_rejects_index_mismatch():
    a = _identity((0, 1))
    b = _identity((0, 2))
    with pytest.raises(ValueError):
        minplus_product(a, b)


def test_closure_of_chain():
    out = minplus_closure(CHAIN3)
    assert out.entry(0, 2) == 2
    assert np.array_equal(np.diagonal(out.values), np.zeros(3))


def test_closure_detects_negative_diagonal():
    bad = DistMatrix((0, 1), np.array([[0.0, 1.0], [-2.0, 0.0]]))
    with pytest.raises(NegativeDiagonal):
        minplus_closure(bad)


def test_closure_single_entry_passthrough():
    one = DistMatrix((4,), np.array([[0.0]]))
    out = minplus_closure(one)
    assert np.array_equal(out.values, one.values)


def test_closure_matches_floyd_warshall_on_full_graphs():
    for seed in range(15):
        g = negative_cycle_free(9, 0.4, -4, 12, seed=900 + seed)
        base = np.full((g.n, g.n), INF)
        np.fill_diagonal(base, 0.0)
        for (u, v, w) in g.edges:
            base[u, v] = min(base[u, v], w)
        out = minplus_closure(DistMatrix(tuple(range(g.n)), base))
        assert np.array_equal(out.values, floyd_warshall_oracle(g))


def test_hub_graph_empty_set():
    g = build_graph(3, [(0, 1, 1)])
    out = build_hub_graph(g, frozenset(), 2)
    assert out.values.shape == (0, 0)


def test_hub_graph_singleton_diagonal_zero():
    g = build_graph(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)])
    out = build_hub_graph(g, {0}, 2)
    assert out.index == (0,)
    assert out.entry(0, 0) == 0


def test_hub_graph_chain_entries():
    g = build_graph(3, [(0, 1, 1), (1, 2, 1)])
    out = build_hub_graph(g, {0, 2}, 2)
    assert out.entry(0, 2) == 2
    assert out.entry(2, 0) == INF


def test_hub_graph_weights_are_hop_bounded_distances():
    for seed in range(10):
        g = negative_cycle_free(12, 0.3, -4, 12, seed=950 + seed)
        d = 4
        want = hop_limited_oracle(g, d + 1)
        hubs = (0, 3, 7)
        out = build_hub_graph(g, hubs, d)
        for i, u in enumerate(hubs):
            for j, v in enumerate(hubs):
                assert out.values[i, j] == want[u, v]


def test_lift_is_idempotent_on_exact_levels():
    g = build_graph(3, [(0, 1, 1), (1, 2, 1)])
    dist = floyd_warshall_oracle(g)
    hubs = (0, 1)
    known = LevelDistances(hubs, dist[list(hubs), :], dist[:, list(hubs)].T)
    out = lift_level(g, hubs, known, 1)
    assert np.array_equal(out.from_hub, known.from_hub)
    assert np.array_equal(out.to_hub, known.to_hub)


def test_lift_combines_aux_shortcut_with_real_edges():
    g = build_graph(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
    upper = (2,)
    dist = floyd_warshall_oracle(g)
    known = LevelDistances(upper, dist[[2], :], dist[:, [2]].T)
    out = lift_level(g, (0,), known, 1)
    assert out.vertices == (0,)
    assert out.from_hub[0][3] == 3


def test_lift_isolated_source_row():
    g = build_graph(3, [(1, 2, 1)])
    upper = (2,)
    dist = floyd_warshall_oracle(g)
    known = LevelDistances(upper, dist[[2], :], dist[:, [2]].T)
    out = lift_level(g, (0,), known, 1)
    row = out.from_hub[0]
    assert row[0] == 0 and row[1] == INF and row[2] == INF


def test_apsp_on_directed_cycle():
    g = build_graph(4, [(i, (i + 1) % 4, 1) for i in range(4)])
    res = apsp(g, 2)
    assert isinstance(res, ApspResult)
    for i in range(4):
        for j in range(4):
            assert res.dist.entry(i, j) == (j - i) % 4


def test_apsp_d_one_degenerate_pipeline():
    g = build_graph(3, [(0, 1, 1), (1, 2, 1)])
    res = apsp(g, 1)
    assert np.array_equal(res.dist.values, floyd_warshall_oracle(g))
    assert len(res.hierarchy.levels) == 1


def test_apsp_matches_oracle_across_d():
    for seed in range(15):
        g = negative_cycle_free(14, 0.25, -4, 12, seed=1100 + seed)
        want = floyd_warshall_oracle(g)
        outs = []
        for d in (1, 2, 4, 8):
            res = apsp(g, d)
            assert isinstance(res, ApspResult), (seed, d)
            assert np.array_equal(res.dist.values, want), (seed, d)
            outs.append(res.dist.values)
        for other in outs[1:]:
            assert np.array_equal(outs[0], other)


def test_apsp_result_invariants():
    g = negative_cycle_free(12, 0.3, -4, 12, seed=1200)
    res = apsp(g, 4)
    vals = res.dist.values
    assert np.array_equal(np.diagonal(vals), np.zeros(g.n))
    for (u, v, w) in g.edges:
        assert vals[u, v] <= w
    # triangle inequality through every midpoint
    best = (vals[:, :, None] + vals[None, :, :]).min(axis=1)
    assert (vals <= best).all()


def test_apsp_negative_cycle_agreement():
    hits = 0
    for seed in range(25):
        g = random_digraph(10, 0.3, -5, 7, seed=1300 + seed)
        try:
            floyd_warshall_oracle(g)
            oracle_bad = False
        except NegativeCycleDetected:
            oracle_bad = True
        res = apsp(g, 4)
        assert isinstance(res, NegativeCycle) == oracle_bad, seed
        if oracle_bad:
            hits += 1
            total = sum(g.edges[e][2] for e in res.cycle.edges)
            assert total == res.weight and total < 0
    assert hits > 0


def test_apsp_meter_has_expected_phases():
    g = negative_cycle_free(12, 0.3, -4, 12, seed=1400)
    res = apsp(g, 4)
    names = {p.name for p in res.meter.phases}
    assert any(n.startswith("hierarchy") for n in names)
    assert "hub-graph" in names
    assert "closure" in names
    assert any(n.startswith("lift/level-") for n in names)
    assert res.meter.total_work > 0 and res.meter.total_depth > 0
