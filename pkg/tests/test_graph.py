import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_coloured_graph
from monocycle.errors import EmptyGraphError, GraphFormatError
from monocycle.graph import (
    BLUE,
    RED,
    UNION,
    ColouredGraph,
    bits,
    complete_graph,
    deserialize,
    e_between,
    mask_of,
    min_degree,
    random_min_degree_graph,
    serialize,
    to_dot,
)

C5_ALT = ColouredGraph.from_edges(
    5, [(0, 1, "R"), (1, 2, "B"), (2, 3, "R"), (3, 4, "B"), (0, 4, "R")]
)


def test_min_degree_k4_union():
    assert min_degree(complete_graph(4, "R"), UNION) == 3


def test_min_degree_k4_blue_view():
    assert min_degree(complete_graph(4, "R"), BLUE) == 0


def test_min_degree_c5_mixed():
    assert min_degree(C5_ALT, UNION) == 2


def test_min_degree_empty_graph():
    with pytest.raises(EmptyGraphError):
        min_degree(ColouredGraph(0, (), ()))


def test_induced_k4_pair():
    sub = complete_graph(4, "R").induced(mask_of([0, 1]))
    assert sub.n == 2 and sub.mark(0, 1) == "R"


def test_induced_empty_set():
    sub = complete_graph(4, "R").induced(0)
    assert sub.n == 0


def test_induced_c5_prefix():
    sub = C5_ALT.induced(mask_of([0, 1, 2]))
    assert sub.mark(0, 1) == "R" and sub.mark(1, 2) == "B" and sub.mark(0, 2) is None


def test_both_coloured_edges_feed_both_views():
    g = ColouredGraph.from_edges(2, [(0, 1, "RB")])
    assert g.has_edge(0, 1, RED) and g.has_edge(0, 1, BLUE)
    assert g.mark(0, 1) == "RB"


def test_random_min_degree_forces_k4():
    g = random_min_degree_graph(4, 3, 0.5, seed=1)
    assert g.e_count() == 6


def test_random_min_degree_infeasible():
    with pytest.raises(ValueError):
        random_min_degree_graph(3, 3, 0.5, seed=1)


def test_random_min_degree_deterministic():
    a = serialize(random_min_degree_graph(9, 6, 0.5, seed=42))
    b = serialize(random_min_degree_graph(9, 6, 0.5, seed=42))
    assert a == b


def test_random_min_degree_postcondition_many_seeds():
    rng = random.Random(5)
    for _ in range(2000):
        n = rng.randint(2, 10)
        target = rng.randint(0, n - 1)
        g = random_min_degree_graph(n, target, rng.random(), seed=rng.randrange(1 << 30))
        assert min_degree(g) >= target


def test_serialize_round_trip_example():
    text = '{"n":2,"edges":[[0,1,"R"]]}'
    g = deserialize(text)
    assert serialize(deserialize(serialize(g))) == serialize(g)
    assert serialize(g) == '{"edges":[[0,1,"R"]],"n":2}'


@pytest.mark.parametrize(
    "text,code",
    [
        ("not json", "malformed"),
        ('{"n":2}', "malformed"),
        ('{"n":3,"edges":[[0,5,"R"]]}', "out-of-range"),
        ('{"n":2,"edges":[[0,1,"R"],[0,1,"B"]]}', "duplicate-pair"),
        ('{"n":2,"edges":[[1,0,"R"],[0,1,"B"]]}', "duplicate-pair"),
        ('{"n":2,"edges":[[0,1,"G"]]}', "bad-colour"),
        ('{"n":2,"edges":[[0,0,"R"]]}', "malformed"),
    ],
)
def test_deserialize_error_codes(text, code):
    with pytest.raises(GraphFormatError) as err:
        deserialize(text)
    assert err.value.code == code


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 40), st.floats(0.0, 1.0), st.integers(2, 9))
def test_serialize_value_round_trip(seed, p, n):
    g = random_coloured_graph(random.Random(seed), n, p)
    assert deserialize(serialize(g)) == g


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 1000), st.integers(2, 9))
def test_induced_edge_counts_match_naive(seed, n):
    rng = random.Random(seed)
    g = random_coloured_graph(rng, n, 0.5)
    smask = mask_of(v for v in range(n) if rng.random() < 0.6)
    sub = g.induced(smask)
    verts = list(bits(smask))
    naive = sum(
        1
        for i, u in enumerate(verts)
        for v in verts[i + 1 :]
        if g.mark(u, v) in ("R", "RB")
    )
    assert sub.e_count(RED) == naive


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 1000))
def test_e_between_matches_naive(seed):
    rng = random.Random(seed)
    g = random_coloured_graph(rng, 8, 0.5)
    x = mask_of([0, 1, 2])
    y = mask_of([5, 6, 7])
    naive = sum(1 for u in (0, 1, 2) for v in (5, 6, 7) if g.has_edge(u, v, UNION))
    assert e_between(g, x, y, UNION) == naive


def test_dot_export_colours():
    g = ColouredGraph.from_edges(3, [(0, 1, "R"), (1, 2, "B"), (0, 2, "RB")])
    dot = to_dot(g)
    assert "color=red" in dot and "color=blue" in dot and "color=purple" in dot
