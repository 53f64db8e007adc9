import itertools
import random

from conftest import random_coloured_graph
from monocycle.graph import BLUE, RED, ColouredGraph, complete_graph, serialize
from monocycle.partition import PartitionCertificate, scan_conjecture, solve, verify
from oracles import all_colourings, partition_oracle

C4_ALT = ColouredGraph.from_edges(4, [(0, 1, "R"), (1, 2, "B"), (2, 3, "R"), (0, 3, "B")])


def test_k4_all_red_certificate():
    cert = solve(complete_graph(4, "R"))
    assert cert is not None
    assert len(cert.red_cycle) == 4 and cert.blue_cycle == ()


def test_c4_alternating_none():
    assert solve(C4_ALT) is None


def test_two_cliques_joined_arbitrarily():
    # red K3 on {0,1,2}, blue K3 on {3,4,5}, junk colours across
    rng = random.Random(11)
    edges = [(0, 1, "R"), (0, 2, "R"), (1, 2, "R"), (3, 4, "B"), (3, 5, "B"), (4, 5, "B")]
    for u in range(3):
        for v in range(3, 6):
            if rng.random() < 0.5:
                edges.append((u, v, rng.choice(["R", "B"])))
    g = ColouredGraph.from_edges(6, sorted(edges))
    cert = solve(g)
    assert cert is not None and verify(g, cert)[0]


def test_solver_matches_oracle_on_k4_colourings():
    pairs = list(itertools.combinations(range(4), 2))
    for g in all_colourings(4, pairs):
        assert (solve(g) is not None) == partition_oracle(g)


def test_solver_matches_oracle_small_random():
    rng = random.Random(17)
    for _ in range(250):
        n = rng.randint(2, 6)
        g = random_coloured_graph(rng, n, rng.uniform(0.2, 1.0))
        assert (solve(g) is not None) == partition_oracle(g)


def test_verify_rejects_vertex_swap():
    # red C5: pulling a middle vertex out of the cycle breaks an edge
    g = ColouredGraph.from_edges(5, [(i, (i + 1) % 5, "R") for i in range(4)] + [(0, 4, "R")])
    cert = PartitionCertificate((0, 1, 2, 3, 4), ())
    assert verify(g, cert)[0]
    swapped = PartitionCertificate((0, 1, 3, 4), (2,))
    ok, reason = verify(g, swapped)
    assert not ok and reason.startswith("colour violation")
    duplicated = PartitionCertificate((0, 1, 2, 3, 4), (0,))
    ok2, reason2 = verify(g, duplicated)
    assert not ok2 and reason2.startswith("not a partition")


def test_verify_rejects_blue_edge_as_red_cycle():
    g = ColouredGraph.from_edges(2, [(0, 1, "B")])
    ok, reason = verify(g, PartitionCertificate((0, 1), ()))
    assert not ok and reason.startswith("colour violation")


def test_verify_rejects_missing_vertex():
    g = complete_graph(3, "R")
    ok, reason = verify(g, PartitionCertificate((0, 1), ()))
    assert not ok and "uncovered" in reason


def test_solve_certificates_always_verify(rng):
    for _ in range(300):
        n = rng.randint(2, 8)
        g = random_coloured_graph(rng, n, rng.uniform(0.3, 1.0))
        cert = solve(g)
        if cert is not None:
            ok, reason = verify(g, cert)
            assert ok, reason


def test_adding_edge_never_flips_yes_to_no(rng):
    for _ in range(200):
        n = rng.randint(3, 7)
        g = random_coloured_graph(rng, n, 0.5)
        cert = solve(g)
        if cert is None:
            continue
        missing = [
            (u, v) for u in range(n) for v in range(u + 1, n) if g.mark(u, v) is None
        ]
        if not missing:
            continue
        u, v = rng.choice(missing)
        edges = list(g.edges()) + [(u, v, rng.choice(["R", "B", "RB"]))]
        g2 = ColouredGraph.from_edges(n, sorted(edges))
        # the old certificate still verifies, so solve must stay YES
        assert verify(g2, cert)[0]
        assert solve(g2) is not None


def test_scan_deterministic_and_verified():
    rep1 = scan_conjecture(6, 25, seed=7)
    rep2 = scan_conjecture(6, 25, seed=7)
    assert rep1.to_json() == rep2.to_json()
    assert rep1.yes + rep1.no == 25


def test_scan_zero_trials():
    rep = scan_conjecture(8, 0, seed=1)
    assert rep.yes == rep.no == 0 and rep.no_instances == []


def test_scan_no_instances_are_serialized_graphs():
    rep = scan_conjecture(5, 40, seed=3)
    for text in rep.no_instances:
        from monocycle.graph import deserialize

        g = deserialize(text)
        assert solve(g) is None
