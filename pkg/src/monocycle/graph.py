"""Core data model for 2-coloured graphs.

Vertices are dense integers 0..n-1.  Vertex sets are plain Python int
bitmasks; since Python ints are arbitrary precision the single-word /
multi-word distinction is transparent and there is no fixed cap on n
here (exact-DP modules impose their own caps).

Each unordered pair {u, v} carries a mark: absent, "R", "B" or "RB".
The red view and the blue view are simple graphs on the same vertex
set; an "RB" mark puts the pair in both views.  Colourings therefore
need not be proper, which matters for reduced/cluster graphs.

ColouredGraph values are immutable after construction; every query is
re-entrant.  Generators take explicit seeds and keep no global state.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import EmptyGraphError, GraphFormatError

RED = "R"
BLUE = "B"
UNION = "U"
VIEWS = (RED, BLUE, UNION)

MARKS = (RED, BLUE, "RB")


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class ColouredGraph:
    """A 2-coloured graph on vertices 0..n-1.

    ``red`` and ``blue`` are per-vertex adjacency bitmasks of the two
    colour views (an "RB" pair appears in both).
    """

    n: int
    red: tuple[int, ...]
    blue: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, str]]) -> "ColouredGraph":
        """Build a graph from (u, v, mark) triples.

        Raises GraphFormatError on out-of-range vertices, duplicate
        pairs, bad colour tags or self-loops.
        """
        red = [0] * n
        blue = [0] * n
        seen: set[tuple[int, int]] = set()
        for u, v, mark in edges:
            if not (isinstance(u, int) and isinstance(v, int)):
                raise GraphFormatError("malformed", f"non-integer endpoint in edge {(u, v)}")
            if u == v:
                raise GraphFormatError("malformed", f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError("out-of-range", f"edge ({u}, {v}) outside 0..{n - 1}")
            a, b = (u, v) if u < v else (v, u)
            if (a, b) in seen:
                raise GraphFormatError(
                    "duplicate-pair", f'pair ({a}, {b}) listed twice; use "RB" for both colours'
                )
            seen.add((a, b))
            if mark not in MARKS:
                raise GraphFormatError("bad-colour", f"bad colour tag {mark!r} on edge ({a}, {b})")
            if mark in (RED, "RB"):
                red[a] |= 1 << b
                red[b] |= 1 << a
            if mark in (BLUE, "RB"):
                blue[a] |= 1 << b
                blue[b] |= 1 << a
        return cls(n, tuple(red), tuple(blue))

    # -- views ---------------------------------------------------------

    def adj(self, view: str) -> tuple[int, ...]:
        """Adjacency bitmasks of the requested view ("R", "B" or "U")."""
        if view == RED:
            return self.red
        if view == BLUE:
            return self.blue
        if view == UNION:
            return tuple(r | b for r, b in zip(self.red, self.blue))
        raise ValueError(f"unknown view {view!r}")

    def degree(self, v: int, view: str = UNION) -> int:
        return self.adj(view)[v].bit_count()

    def has_edge(self, u: int, v: int, view: str = UNION) -> bool:
        return bool(self.adj(view)[u] >> v & 1)

    def mark(self, u: int, v: int) -> str | None:
        r = self.red[u] >> v & 1
        b = self.blue[u] >> v & 1
        if r and b:
            return "RB"
        if r:
            return RED
        if b:
            return BLUE
        return None

    def edges(self) -> Iterator[tuple[int, int, str]]:
        """All marked pairs as (u, v, mark) with u < v, in sorted order."""
        for u in range(self.n):
            both = (self.red[u] | self.blue[u]) >> (u + 1) << (u + 1)
            for v in bits(both):
                yield u, v, self.mark(u, v)  # type: ignore[misc]

    def e_count(self, view: str = UNION) -> int:
        return sum(a.bit_count() for a in self.adj(view)) // 2

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    # -- derived graphs ------------------------------------------------

    def induced(self, s: int | Iterable[int]) -> "ColouredGraph":
        """Induced subgraph on the vertex set ``s`` (bitmask or iterable),
        relabelled to 0..|s|-1 preserving vertex order."""
        smask = s if isinstance(s, int) else mask_of(s)
        verts = list(bits(smask))
        index = {v: i for i, v in enumerate(verts)}
        red = [0] * len(verts)
        blue = [0] * len(verts)
        for v in verts:
            i = index[v]
            for u in bits(self.red[v] & smask):
                red[i] |= 1 << index[u]
            for u in bits(self.blue[v] & smask):
                blue[i] |= 1 << index[u]
        return ColouredGraph(len(verts), tuple(red), tuple(blue))


def min_degree(g: ColouredGraph, view: str = UNION) -> int:
    """Minimum degree over all vertices in the requested view."""
    if g.n == 0:
        raise EmptyGraphError("minimum degree undefined on the empty graph")
    return min(a.bit_count() for a in g.adj(view))


def e_between(g: ColouredGraph, x: int, y: int, view: str = UNION) -> int:
    """Number of view-edges with one end in bitmask ``x``, other in ``y``.

    The sets must be disjoint.
    """
    adj = g.adj(view)
    return sum((adj[v] & y).bit_count() for v in bits(x))


def complete_graph(n: int, mark: str = "RB") -> ColouredGraph:
    full = (1 << n) - 1
    masks = tuple(full ^ (1 << v) for v in range(n))
    zero = (0,) * n
    if mark == RED:
        return ColouredGraph(n, masks, zero)
    if mark == BLUE:
        return ColouredGraph(n, zero, masks)
    return ColouredGraph(n, masks, masks)


def random_min_degree_graph(
    n: int, delta_target: int, colour_bias: float, seed: int
) -> ColouredGraph:
    """Random 2-coloured graph with union-view minimum degree >= target.

    Edges are added one at a time to deficient vertices until the degree
    floor holds; each edge is coloured red with probability
    ``colour_bias``, blue otherwise.  Deterministic under ``seed``.
    """
    if n < 1:
        raise EmptyGraphError("need at least one vertex")
    if not 0 <= delta_target <= n - 1:
        raise ValueError(f"degree target {delta_target} infeasible on {n} vertices")
    rng = random.Random(seed)
    nbrs: list[set[int]] = [set() for _ in range(n)]
    while True:
        deficient = [v for v in range(n) if len(nbrs[v]) < delta_target]
        if not deficient:
            break
        v = rng.choice(deficient)
        candidates = [u for u in range(n) if u != v and u not in nbrs[v]]
        # prefer partners that are themselves deficient, to keep the
        # graph close to the degree floor
        short = [u for u in candidates if len(nbrs[u]) < delta_target]
        u = rng.choice(short or candidates)
        nbrs[v].add(u)
        nbrs[u].add(v)
    edges = []
    for v in range(n):
        for u in nbrs[v]:
            if v < u:
                colour = RED if rng.random() < colour_bias else BLUE
                edges.append((v, u, colour))
    edges.sort()
    return ColouredGraph.from_edges(n, edges)


# -- serialization -----------------------------------------------------

def serialize(g: ColouredGraph) -> str:
    """Canonical JSON text: {"edges": [[u, v, c], ...], "n": n} with the
    edge list sorted, so equal graphs serialize to identical bytes."""
    payload = {"edges": [[u, v, c] for u, v, c in g.edges()], "n": g.n}
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def deserialize(text: str) -> ColouredGraph:
    """Parse graph JSON.  Raises GraphFormatError with a distinct code
    for malformed JSON, out-of-range vertices, duplicate pairs and bad
    colour tags."""
    try:
        payload = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise GraphFormatError("malformed", f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise GraphFormatError("malformed", "top level must be an object")
    n = payload.get("n")
    edges = payload.get("edges")
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise GraphFormatError("malformed", '"n" must be a non-negative integer')
    if not isinstance(edges, list):
        raise GraphFormatError("malformed", '"edges" must be a list')
    triples = []
    for item in edges:
        if not (isinstance(item, list) and len(item) == 3):
            raise GraphFormatError("malformed", f"edge entry {item!r} is not a [u, v, c] triple")
        u, v, c = item
        if not isinstance(c, str):
            raise GraphFormatError("bad-colour", f"colour tag {c!r} is not a string")
        triples.append((u, v, c))
    return ColouredGraph.from_edges(n, triples)


_DOT_COLOURS = {RED: "red", BLUE: "blue", "RB": "purple"}


def to_dot(g: ColouredGraph) -> str:
    lines = ["graph G {"]
    for v in range(g.n):
        lines.append(f"  {v};")
    for u, v, mark in g.edges():
        lines.append(f"  {u} -- {v} [color={_DOT_COLOURS[mark]}];")
    lines.append("}")
    return "\n".join(lines)
