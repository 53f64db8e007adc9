import random

import pytest

from conftest import random_coloured_graph
from monocycle.errors import CapacityError
from monocycle.graph import BLUE, RED, UNION, ColouredGraph, complete_graph, mask_of
from monocycle.hamilton import (
    bondy_conclusion_holds,
    bondy_pancyclic_check,
    chvatal_bipartite_guarantees,
    chvatal_guarantees,
    cycle_lengths_present,
    erdos_gallai_bound_holds,
    hamilton_path_between,
    has_mono_cycle_on,
    longest_path_length,
)
from oracles import ham_cycle_backtrack, ham_path_backtrack, longest_path_backtrack

C4_ALT = ColouredGraph.from_edges(4, [(0, 1, "R"), (1, 2, "B"), (2, 3, "R"), (0, 3, "B")])


def test_degenerate_cycles_accepted():
    g = complete_graph(4, "R")
    assert has_mono_cycle_on(g, BLUE, 0)  # empty set
    assert has_mono_cycle_on(g, BLUE, 1 << 2)  # single vertex
    assert has_mono_cycle_on(g, RED, mask_of([1, 3]))  # an edge
    assert not has_mono_cycle_on(g, BLUE, mask_of([1, 3]))


def test_k4_red_hamiltonian():
    assert has_mono_cycle_on(complete_graph(4, "R"), RED, 0b1111)


def test_c4_red_view_is_matching():
    assert not has_mono_cycle_on(C4_ALT, RED, 0b1111)


def test_dp_agrees_with_backtracking_oracle():
    rng = random.Random(99)
    for _ in range(400):
        n = rng.randint(2, 9)
        g = random_coloured_graph(rng, n, rng.uniform(0.2, 0.9))
        s = mask_of(v for v in range(n) if rng.random() < 0.7)
        view = rng.choice([RED, BLUE, UNION])
        assert has_mono_cycle_on(g, view, s) == ham_cycle_backtrack(g.adj(view), s)


def test_dp_capacity_error():
    with pytest.raises(CapacityError):
        has_mono_cycle_on(complete_graph(30, "R"), RED, (1 << 30) - 1)


def test_hamilton_path_between_k4():
    g = complete_graph(4, "B")
    path = hamilton_path_between(g, BLUE, 0b1111, 0, 3)
    assert path is not None and len(path) == 4 and path[0] == 0 and path[-1] == 3


def test_hamilton_path_between_matching_absent():
    g = ColouredGraph.from_edges(4, [(0, 1, "R"), (2, 3, "R")])
    assert hamilton_path_between(g, RED, 0b1111, 0, 2) is None


def test_hamilton_path_three_vertices():
    g = ColouredGraph.from_edges(3, [(0, 1, "R"), (1, 2, "R")])
    assert hamilton_path_between(g, RED, 0b111, 0, 2) == (0, 1, 2)


def test_hamilton_path_between_agrees_with_oracle():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(3, 8)
        g = random_coloured_graph(rng, n, rng.uniform(0.3, 0.9))
        a, b = rng.sample(range(n), 2)
        got = hamilton_path_between(g, UNION, (1 << n) - 1, a, b)
        want = ham_path_backtrack(g.adj(UNION), (1 << n) - 1, a, b)
        assert (got is not None) == want


def test_chvatal_examples():
    assert chvatal_guarantees([3, 3, 3, 3])
    assert not chvatal_guarantees([2, 2, 2, 2, 2])  # fails at i=2; C5 is Hamiltonian anyway
    assert not chvatal_guarantees([1, 1, 1, 3])


def test_chvatal_unsorted_rejected():
    with pytest.raises(ValueError):
        chvatal_guarantees([3, 1, 2])


def test_chvatal_bipartite_examples():
    assert chvatal_bipartite_guarantees([3, 3, 3], [3, 3, 3])
    assert not chvatal_bipartite_guarantees([1, 1, 1], [1, 1, 1])
    with pytest.raises(ValueError):
        chvatal_bipartite_guarantees([1, 2], [1, 2, 3])


def test_erdos_gallai_k4():
    g = complete_graph(4, "R")
    assert longest_path_length(g, UNION) >= 3
    assert erdos_gallai_bound_holds(g, UNION, 2)  # premise false: path longer than 2


def test_erdos_gallai_empty():
    g = ColouredGraph(4, (0,) * 4, (0,) * 4)
    assert longest_path_length(g, UNION) == 0
    for l in range(4):
        assert erdos_gallai_bound_holds(g, UNION, l)


def test_erdos_gallai_triangle():
    g = complete_graph(3, "R")
    assert longest_path_length(g, RED) == 2
    assert erdos_gallai_bound_holds(g, RED, 2)  # e = 3 = n*l/2 exactly


def test_erdos_gallai_random_instances():
    rng = random.Random(3)
    for _ in range(300):
        n = rng.randint(2, 9)
        g = random_coloured_graph(rng, n, rng.uniform(0.1, 0.7))
        longest = longest_path_length(g, UNION)
        assert longest == longest_path_backtrack(g.adj(UNION), n)
        for l in range(longest, n):
            assert erdos_gallai_bound_holds(g, UNION, l)


def test_bondy_k5():
    g = complete_graph(5, "R")
    assert bondy_pancyclic_check(g, RED)
    assert bondy_conclusion_holds(g, RED)


def test_bondy_c6_premise_false():
    g = ColouredGraph.from_edges(6, [(i, (i + 1) % 6, "R") for i in range(5)] + [(0, 5, "R")])
    assert not bondy_pancyclic_check(g, RED)


def test_bondy_k33_premise_false_no_odd_cycles():
    edges = [(u, v, "R") for u in range(3) for v in range(3, 6)]
    g = ColouredGraph.from_edges(6, edges)
    assert not bondy_pancyclic_check(g, RED)  # delta = n/2, not strict
    assert 3 not in cycle_lengths_present(g, RED) and 5 not in cycle_lengths_present(g, RED)
