import random

import pytest

from conftest import random_coloured_graph
from monocycle.errors import PremiseError
from monocycle.graph import RED, UNION, ColouredGraph, complete_graph, e_between, mask_of
from monocycle.pathpart import bipartite_corollary, partition_empty_pair_path


def test_empty_graph_splits_evenly():
    g = ColouredGraph(4, (0,) * 4, (0,) * 4)
    pp = partition_empty_pair_path(g, UNION)
    assert pp.path == ()
    assert pp.u.bit_count() == pp.w.bit_count() == 2


def test_complete_graph_all_path():
    pp = partition_empty_pair_path(complete_graph(5, "R"), RED)
    assert pp.u == pp.w == 0 and len(pp.path) == 5


def test_star_invariants():
    g = ColouredGraph.from_edges(4, [(0, 1, "R"), (0, 2, "R"), (0, 3, "R")])
    pp = partition_empty_pair_path(g, RED)
    pp.validate(g, RED)  # exact shape depends on tie-breaks; invariants must hold


def test_deterministic():
    rng = random.Random(1)
    g = random_coloured_graph(rng, 12, 0.4)
    assert partition_empty_pair_path(g, UNION) == partition_empty_pair_path(g, UNION)


def test_invariants_random_all_densities(rng):
    for _ in range(600):
        n = rng.randint(1, 30)
        g = random_coloured_graph(rng, n, rng.random())
        pp = partition_empty_pair_path(g, UNION)
        pp.validate(g, UNION)


def _bipartite(a_edges, m):
    return ColouredGraph.from_edges(2 * m, [(u, v, "R") for u, v in a_edges])


def test_corollary_perfect_matching():
    m = 6
    g = _bipartite([(i, m + i) for i in range(m)], m)
    v1, v2 = mask_of(range(m)), mask_of(range(m, 2 * m))
    out = bipartite_corollary(g, (v1, v2), k=3, view=RED)
    assert out is not None
    x1, x2 = out
    assert x1.bit_count() == x2.bit_count() >= (2 * m - 3) / 4
    assert e_between(g, x1, x2, RED) == 0
    assert x1 & ~v1 == 0 and x2 & ~v2 == 0


def test_corollary_premise_violation_on_complete():
    m = 4
    g = _bipartite([(u, m + v) for u in range(m) for v in range(m)], m)
    v1, v2 = mask_of(range(m)), mask_of(range(m, 2 * m))
    with pytest.raises(PremiseError):
        bipartite_corollary(g, (v1, v2), k=3, view=RED)


def test_corollary_empty_graph():
    m = 5
    g = ColouredGraph(2 * m, (0,) * (2 * m), (0,) * (2 * m))
    v1, v2 = mask_of(range(m)), mask_of(range(m, 2 * m))
    out = bipartite_corollary(g, (v1, v2), k=1, view=RED)
    assert out is not None
    x1, x2 = out
    assert x1.bit_count() == x2.bit_count() >= (2 * m - 1) / 4


def test_corollary_random_sparse_instances(rng):
    trials = 0
    for _ in range(300):
        m = rng.randint(2, 6)
        edges = [
            (u, m + v)
            for u in range(m)
            for v in range(m)
            if rng.random() < 0.15
        ]
        g = _bipartite(edges, m)
        v1, v2 = mask_of(range(m)), mask_of(range(m, 2 * m))
        k = rng.randint(1, 2 * m - 1)
        try:
            out = bipartite_corollary(g, (v1, v2), k=k, view=RED)
        except PremiseError:
            continue
        trials += 1
        if out is not None:
            x1, x2 = out
            assert x1.bit_count() == x2.bit_count() >= (2 * m - k) / 4
            assert e_between(g, x1, x2, RED) == 0
    assert trials > 50
