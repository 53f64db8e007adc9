import random

import pytest

from conftest import random_coloured_graph
from monocycle.errors import CapacityError, PremiseError
from monocycle.graph import RED, UNION, ColouredGraph, bits, complete_graph, mask_of
from monocycle.matching import (
    BipTechnicalOutcome,
    Matching,
    StabilityWitness,
    bipartite_technical,
    hall_dichotomy,
    is_two_connected,
    max_matching,
    tripartite_exact,
    tripartite_stability,
    tutte_oracle,
)


def _union_edges(n, pairs):
    return ColouredGraph.from_edges(n, [(u, v, "R") for u, v in pairs])


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return _union_edges(10, outer + spokes + inner)


def test_matching_sizes():
    assert max_matching(complete_graph(4, "R"), RED).size == 2
    c5 = _union_edges(5, [(i, (i + 1) % 5) for i in range(5)])
    assert max_matching(c5, RED).size == 2


def test_petersen_perfect_and_tutte_agrees():
    g = petersen()
    m = max_matching(g, RED)
    assert m.size == 5 and m.is_perfect(g)
    assert tutte_oracle(g, RED).ok


def test_matching_deterministic():
    g = petersen()
    assert max_matching(g, RED) == max_matching(g, RED)


def test_tutte_examples():
    assert tutte_oracle(complete_graph(4, "R"), RED).ok
    star = _union_edges(4, [(0, 1), (0, 2), (0, 3)])
    verdict = tutte_oracle(star, RED)
    assert not verdict.ok and verdict.violator == 1 << 0 and verdict.odd_components == 3
    odd = complete_graph(5, "R")
    verdict = tutte_oracle(odd, RED)
    assert not verdict.ok and verdict.violator == 0  # parity: empty set already violates


def test_tutte_capacity():
    with pytest.raises(CapacityError):
        tutte_oracle(complete_graph(17, "R"), RED)


def test_blossom_iff_tutte_random():
    rng = random.Random(2024)
    for _ in range(400):
        n = rng.randint(2, 10)
        g = random_coloured_graph(rng, n, rng.uniform(0.1, 0.9))
        perfect = max_matching(g, UNION).is_perfect(g)
        assert perfect == tutte_oracle(g, UNION).ok


def test_hopcroft_karp_matches_blossom_on_bipartite():
    rng = random.Random(5)
    for _ in range(200):
        a = rng.randint(1, 5)
        b = rng.randint(1, 5)
        edges = [
            (u, a + v, "R") for u in range(a) for v in range(b) if rng.random() < 0.5
        ]
        g = ColouredGraph.from_edges(a + b, edges)
        left = mask_of(range(a))
        assert max_matching(g, RED, bipartition=left).size == max_matching(g, RED).size


def _complete_tripartite(t):
    parts = (mask_of(range(t)), mask_of(range(t, 2 * t)), mask_of(range(2 * t, 3 * t)))
    edges = []
    for i in range(3):
        for j in range(i + 1, 3):
            for u in bits(parts[i]):
                for v in bits(parts[j]):
                    edges.append((u, v, "R"))
    return ColouredGraph.from_edges(3 * t, edges), parts


def test_tripartite_exact_complete():
    g, parts = _complete_tripartite(2)
    m = tripartite_exact(g, parts, RED)
    assert m.size == 3 and m.is_perfect(g)


def test_tripartite_exact_minus_one_edge():
    g, parts = _complete_tripartite(4)
    edges = [e for e in g.edges() if (e[0], e[1]) != (0, 4)]
    g2 = ColouredGraph.from_edges(g.n, edges)
    m = tripartite_exact(g2, parts, RED)
    assert m.is_perfect(g2)


def test_tripartite_exact_premise_errors():
    g, parts = _complete_tripartite(2)
    # strip one vertex's edges below the degree bound
    edges = [e for e in g.edges() if 0 not in e[:2]]
    edges.append((0, 2, "R"))
    g2 = ColouredGraph.from_edges(6, sorted(edges))
    with pytest.raises(PremiseError):
        tripartite_exact(g2, parts, RED)
    with pytest.raises(PremiseError):
        tripartite_exact(complete_graph(6, "R"), parts, RED)  # parts not independent


def test_tripartite_stability_complete_gives_matching():
    g, parts = _complete_tripartite(4)
    # parts of size n/3 need eps <= 1/24 to satisfy the size premise
    out = tripartite_stability(g, parts, eps=0.04, view=RED)
    assert isinstance(out, Matching) and out.is_perfect(g)


def _stability_witness_instance():
    """n=40, eps=0.025: X1 complete join of size 16; X2, X3 of size 12
    with bi-holes A2, A3 of size 11 facing each other; no perfect
    matching, witness = A2 + A3."""
    n = 40
    x1 = mask_of(range(16))
    x2 = mask_of(range(16, 28))
    x3 = mask_of(range(28, 40))
    a2 = mask_of(range(17, 28))  # 11 vertices of X2
    a3 = mask_of(range(29, 40))  # 11 vertices of X3
    edges = []
    for u in bits(x1):
        for v in range(16, 40):
            edges.append((u, v, "R"))
    for u in bits(x2):
        for v in bits(x3):
            if a2 >> u & 1 and a3 >> v & 1:
                continue
            edges.append((u, v, "R"))
    g = ColouredGraph.from_edges(n, sorted(edges))
    return g, (x1, x2, x3), a2, a3


def test_tripartite_stability_witness_branch():
    g, parts, a2, a3 = _stability_witness_instance()
    out = tripartite_stability(g, parts, eps=0.025, view=RED)
    assert isinstance(out, StabilityWitness) and out.variant == "independent-pair"
    y = out.sets[0]
    bound = (1 / 4 - 5 * 0.025) * g.n
    assert (y & parts[1]).bit_count() >= bound or (y & parts[0]).bit_count() >= bound
    assert out.verify(g, RED)


def test_tripartite_stability_eps_infeasible():
    g, parts = _complete_tripartite(2)
    with pytest.raises(PremiseError):
        tripartite_stability(g, parts, eps=0.2, view=RED)


def _bipartite_complete(a, b):
    edges = [(u, a + v, "R") for u in range(a) for v in range(b)]
    return ColouredGraph.from_edges(a + b, edges)


def test_hall_dichotomy_complete():
    g = _bipartite_complete(6, 6)
    out = hall_dichotomy(g, (mask_of(range(6)), mask_of(range(6, 12))), eps=0.05, view=RED)
    assert isinstance(out, Matching) and out.is_perfect(g)


def test_hall_dichotomy_witness():
    # two unbalanced complete bipartite blocks: A(6)-C(4), B(4)-D(6)
    n = 20
    a = mask_of(range(0, 6))
    b = mask_of(range(6, 10))
    c = mask_of(range(10, 14))
    d = mask_of(range(14, 20))
    edges = []
    for u in bits(a):
        for v in bits(c):
            edges.append((u, v, "R"))
    for u in bits(b):
        for v in bits(d):
            edges.append((u, v, "R"))
    g = ColouredGraph.from_edges(n, sorted(edges))
    x1, x2 = a | b, c | d
    out = hall_dichotomy(g, (x1, x2), eps=0.06, view=RED)
    assert isinstance(out, tuple)
    a1, a2 = out
    from monocycle.graph import e_between

    assert e_between(g, a1, a2, RED) == 0
    lo, hi = (0.25 - 0.06) * n, (0.25 + 0.06) * n
    assert lo <= a1.bit_count() <= hi and lo <= a2.bit_count() <= hi


def test_hall_dichotomy_unbalanced_rejected():
    g = _bipartite_complete(3, 5)
    with pytest.raises(PremiseError):
        hall_dichotomy(g, (mask_of(range(3)), mask_of(range(3, 8))), eps=0.05, view=RED)


def _biptech_base(n):
    x1 = mask_of(range(n // 2))
    x2 = mask_of(range(n // 2, n))
    return x1, x2


def test_bipartite_technical_matching():
    g = _bipartite_complete(8, 8)
    x1, x2 = _biptech_base(16)
    out = bipartite_technical(g, (x1, x2), eps=0.1, view=RED)
    assert out.kind == "matching"


def test_bipartite_technical_cut_vertex():
    # X1 = L1(6) + L2(4); X2 = R1(4) + R2(5) + {v}; v joins both halves
    n = 20
    l1 = list(range(0, 6))
    l2 = list(range(6, 10))
    r1 = list(range(10, 14))
    r2 = list(range(14, 19))
    v = 19
    edges = []
    for u in l1:
        for w in r1 + [v]:
            edges.append((u, w, "R"))
    for u in l2:
        for w in r2 + [v]:
            edges.append((u, w, "R"))
    g = ColouredGraph.from_edges(n, sorted(edges))
    x1, x2 = mask_of(l1 + l2), mask_of(r1 + r2 + [v])
    out = bipartite_technical(g, (x1, x2), eps=0.06, view=RED)
    assert out.kind == "not-2-connected"
    assert out.witness.sets[0] == 1 << v
    two, cut = is_two_connected(g, RED)
    assert not two and cut == 1 << v


def test_bipartite_technical_large_independent():
    # X1 independent of size 11, X2 a 9-clique joined everywhere
    n = 20
    x1 = mask_of(range(11))
    x2 = mask_of(range(11, 20))
    edges = []
    for u in bits(x1):
        for v in bits(x2):
            edges.append((u, v, "R"))
    for u in bits(x2):
        for v in bits(x2):
            if u < v:
                edges.append((u, v, "R"))
    g = ColouredGraph.from_edges(n, sorted(edges))
    out = bipartite_technical(g, (x1, x2), eps=0.05, view=RED)
    assert out.kind == "large-independent"
    assert out.witness.sets[0] == x1


def test_bipartite_technical_split_independent():
    # A1(11)+B1(9) in X1, A2(11)+B2(9) in X2; A1+A2 independent;
    # B's complete to everything (intra-side edges included)
    n = 40
    a1 = list(range(0, 11))
    b1 = list(range(11, 20))
    a2 = list(range(20, 31))
    b2 = list(range(31, 40))
    edges = set()
    for u in b1 + b2:
        for v in range(n):
            if u != v:
                edges.add((min(u, v), max(u, v), "R"))
    g = ColouredGraph.from_edges(n, sorted(edges))
    x1, x2 = mask_of(a1 + b1), mask_of(a2 + b2)
    out = bipartite_technical(g, (x1, x2), eps=0.05, view=RED)
    assert out.kind == "independent-pair"
    whole = out.witness.sets[0]
    assert whole.bit_count() >= (0.5 - 6 * 0.05) * n
    assert (whole & x1).bit_count() >= (0.25 - 9 * 0.05) * n
    assert (whole & x2).bit_count() >= (0.25 - 9 * 0.05) * n


def test_every_returned_witness_verifies():
    g, parts, _, _ = _stability_witness_instance()
    out = tripartite_stability(g, parts, eps=0.025, view=RED)
    assert isinstance(out, StabilityWitness)
    assert out.verify(g, RED)
