"""Partition of any graph into two equal-sized sets with no edges
between them plus a Hamilton path on the remainder, and the bipartite
corollary used for long paths inside dense pairs.

The algorithm maintains (U, W, P) with U shrinking and W growing; the
measure |U| - |W| drops by exactly one per step, so it stops after at
most 2n steps with |U| = |W| and no U-W edges.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .errors import PremiseError
from .graph import UNION, ColouredGraph, bits, e_between, mask_of
from .hamilton import longest_path_length

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PathPartition:
    """Disjoint sets U, W of equal size with no edges between, and an
    ordered Hamilton path P of the remaining vertices.  The three pieces
    partition V."""

    u: int
    w: int
    path: tuple[int, ...]

    def validate(self, g: ColouredGraph, view: str) -> None:
        pmask = mask_of(self.path)
        assert len(self.path) == pmask.bit_count(), "path repeats a vertex"
        assert self.u & self.w == 0 and self.u & pmask == 0 and self.w & pmask == 0
        assert self.u | self.w | pmask == g.vertex_mask, "pieces do not partition V"
        assert self.u.bit_count() == self.w.bit_count(), "|U| != |W|"
        assert e_between(g, self.u, self.w, view) == 0, "edge between U and W"
        for i in range(len(self.path) - 1):
            assert g.has_edge(self.path[i], self.path[i + 1], view), "path edge missing"


def partition_empty_pair_path(g: ColouredGraph, view: str = UNION) -> PathPartition:
    """Run the moving-vertex algorithm: start with U = V, W empty, P
    empty; while |U| > |W|, either seed P from U, extend P's active end
    by its lowest-index neighbour in U, or retreat the end to W.

    Tie-breaks (which vertex to seed or extend with) take the lowest
    index, so the output is deterministic.
    """
    adj = g.adj(view)
    u_mask = g.vertex_mask
    w_mask = 0
    path: list[int] = []
    measure = u_mask.bit_count() - w_mask.bit_count()
    while u_mask.bit_count() > w_mask.bit_count():
        if not path:
            v = (u_mask & -u_mask).bit_length() - 1
            u_mask ^= 1 << v
            path.append(v)
        else:
            v = path[-1]
            options = adj[v] & u_mask
            if options:
                nxt = (options & -options).bit_length() - 1
                u_mask ^= 1 << nxt
                path.append(nxt)
            else:
                w_mask |= 1 << path.pop()
        new_measure = u_mask.bit_count() - w_mask.bit_count()
        assert new_measure == measure - 1, "progress measure must drop by exactly 1"
        measure = new_measure
    result = PathPartition(u_mask, w_mask, tuple(path))
    result.validate(g, view)
    return result


def bipartite_corollary(
    g: ColouredGraph,
    bipartition: tuple[int, int],
    k: int,
    view: str = UNION,
) -> tuple[int, int] | None:
    """On a balanced bipartite view with no path of k edges: equal-sized
    independent-between sets X_i within the two sides, each of size at
    least (n - k)/4.

    Derivation follows the moving-vertex algorithm's output: with
    U_i = U intersect V_i and W_i = W intersect V_i, take (U_1, W_2) for
    the larger U-side.  When |P| is odd the two candidate assignments
    can differ in size by one; the larger set is then trimmed and the
    instance logged, and None is returned if the size floor breaks.
    """
    v1, v2 = bipartition
    if v1 & v2 or (v1 | v2) != g.vertex_mask:
        raise PremiseError("bipartition must partition the vertex set")
    if v1.bit_count() != v2.bit_count():
        raise PremiseError("bipartition must be balanced")
    cross = _bipartite_restriction(g, v1, v2, view)
    if longest_path_length(cross, view) >= k:
        raise PremiseError(f"a path of {k} edges exists; corollary premise violated")
    pp = partition_empty_pair_path(cross, view)
    n = g.n
    floor = (n - k) / 4
    u1, u2 = pp.u & v1, pp.u & v2
    w1, w2 = pp.w & v1, pp.w & v2
    if u1.bit_count() >= u2.bit_count():
        x1, x2 = u1, w2
    else:
        x1, x2 = w1, u2
    a, b = x1.bit_count(), x2.bit_count()
    if a != b:
        log.warning(
            "odd-length path remainder: trimming unequal sets (%d vs %d)", a, b
        )
        target = min(a, b)
        x1 = _trim_to(x1, target)
        x2 = _trim_to(x2, target)
    if x1.bit_count() < floor:
        log.warning("independent pair below (n - k)/4 floor after trim")
        return None
    assert e_between(g, x1, x2, view) == 0
    return x1, x2


def _bipartite_restriction(g: ColouredGraph, v1: int, v2: int, view: str) -> ColouredGraph:
    """Copy of g keeping only view-edges that cross the bipartition (in
    that view; other views are dropped)."""
    edges = []
    adj = g.adj(view)
    for u in bits(v1):
        for v in bits(adj[u] & v2):
            a, b = (u, v) if u < v else (v, u)
            edges.append((a, b, view if view != UNION else "RB"))
    edges.sort()
    return ColouredGraph.from_edges(g.n, sorted(set(edges)))


def _trim_to(mask: int, size: int) -> int:
    """Drop highest-index bits until ``size`` remain."""
    while mask.bit_count() > size:
        mask ^= 1 << (mask.bit_length() - 1)
    return mask
