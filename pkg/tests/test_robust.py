import random

import pytest

from conftest import random_coloured_graph
from monocycle.errors import BudgetError, PremiseError
from monocycle.graph import RED, UNION, ColouredGraph, complete_graph, mask_of
from monocycle.robust import (
    check_robust,
    count_paths,
    perturbation_suite,
    uniform_odd_walk_length,
)
from oracles import count_paths_enumeration

C4 = ColouredGraph.from_edges(4, [(0, 1, "R"), (1, 2, "R"), (2, 3, "R"), (0, 3, "R")])


def test_count_paths_complete_one_internal():
    for n in (4, 6, 9):
        g = complete_graph(n, "R")
        assert count_paths(g, RED, 0, 1, 1) == n - 2


def test_count_paths_c4():
    assert count_paths(C4, RED, 0, 2, 1) == 2  # via 1 and via 3
    assert count_paths(C4, RED, 0, 1, 1) == 0  # adjacent C4 vertices share no neighbour


def test_count_paths_matches_enumeration(rng):
    for _ in range(150):
        n = rng.randint(3, 7)
        g = random_coloured_graph(rng, n, rng.uniform(0.3, 0.9))
        x, y = rng.sample(range(n), 2)
        for l in range(0, min(5, n - 1)):
            assert count_paths(g, UNION, x, y, l) == count_paths_enumeration(
                g.adj(UNION), x, y, l
            )


def test_count_paths_budget_is_distinct():
    g = complete_graph(12, "R")
    with pytest.raises(BudgetError):
        count_paths(g, RED, 0, 1, 6, budget=50)


def test_complete_graph_strongly_robust():
    g = complete_graph(12, "R")
    chk = check_robust(g, RED, g.vertex_mask, alpha=0.5, k=1, n_ref=12)
    assert chk.verdict == "strongly" and chk.witness_l == 1


def test_two_cliques_not_robust():
    edges = [(u, v, "R") for u in range(4) for v in range(u + 1, 4)]
    edges += [(u, v, "R") for u in range(4, 8) for v in range(u + 1, 8)]
    g = ColouredGraph.from_edges(8, edges)
    chk = check_robust(g, RED, g.vertex_mask, alpha=0.1, k=3, n_ref=8)
    assert chk.verdict == "none"


def test_bipartite_weakly_robust_at_two():
    m = 6
    edges = [(u, m + v, "R") for u in range(m) for v in range(m)]
    g = ColouredGraph.from_edges(2 * m, edges)
    bip = (mask_of(range(m)), mask_of(range(m, 2 * m)))
    # cross pairs have (m-1)^2 three-edge paths; alpha under that bound
    alpha = (m - 1) ** 2 / (2 * m) ** 2 * 0.9
    chk = check_robust(g, RED, g.vertex_mask, alpha=alpha, k=2, n_ref=2 * m, bipartition=bip)
    assert chk.verdict == "weakly" and chk.witness_l == 2


def test_uniform_walk_triangle():
    assert uniform_odd_walk_length(complete_graph(3, "R"), RED) == 2


def test_uniform_walk_c5():
    c5 = ColouredGraph.from_edges(5, [(i, (i + 1) % 5, "R") for i in range(4)] + [(0, 4, "R")])
    k = uniform_odd_walk_length(c5, RED)
    assert k is not None and k <= 15
    assert k == 3  # distance-1 pairs pad once, distance-2 pairs ride the long arc


def test_uniform_walk_bipartite_absent():
    assert uniform_odd_walk_length(C4, RED) is None


def test_uniform_walk_disconnected_absent():
    g = ColouredGraph.from_edges(6, [(0, 1, "R"), (1, 2, "R"), (0, 2, "R"), (3, 4, "R")])
    assert uniform_odd_walk_length(g, RED) is None


def test_perturbation_suite_k40():
    g = complete_graph(40, "R")
    rep = perturbation_suite(
        g, RED, alpha=0.5, k=1, beta=0.05, seed=9, trials=1
    )
    assert rep.failures == 0
    kinds = [t.kind for t in rep.trials]
    assert kinds == ["delete-vertices", "delete-edges", "add-vertex"]


def test_perturbation_suite_not_robust_premise():
    g = ColouredGraph.from_edges(4, [(0, 1, "R")])
    with pytest.raises(PremiseError):
        perturbation_suite(g, RED, alpha=0.5, k=1, beta=0.1, seed=1)


def test_perturbation_oversized_beta_records_failures():
    g = complete_graph(10, "R")
    rep = perturbation_suite(g, RED, alpha=0.8, k=1, beta=0.9, seed=4, trials=1)
    # beta far outside "small enough": failures recorded, nothing raised
    assert rep.failures >= 0
