"""Exact Hamilton cycle/path decisions by subset DP, plus the classical
sufficient conditions (Chvatal, bipartite Chvatal, Erdos-Gallai, Bondy).

Path and cycle lengths are measured in EDGES throughout this module;
callers converting from vertex counts do so explicitly.

Degenerate cycles: the empty set, a single vertex and a single edge all
count as cycles (see has_mono_cycle_on).
"""

from __future__ import annotations

from functools import lru_cache

from .errors import CapacityError
from .graph import UNION, ColouredGraph, bits

DP_CAP = 24  # 2^24 table entries per view is the hard memory line


def _check_cap(n: int) -> None:
    if n > DP_CAP:
        raise CapacityError(f"subset DP capped at {DP_CAP} vertices, got {n}")


class HamTable:
    """Subset DP table for one colour view.

    dp[mask] is the bitmask of vertices v such that the view restricted
    to ``mask`` has a Hamilton path from lowest-set(mask) to v.  Built
    once for all 2^n masks and cached per (graph, view); the partition
    solver reads every mask.  Immutable after build, safe to share.
    """

    __slots__ = ("n", "adj", "dp")

    def __init__(self, g: ColouredGraph, view: str):
        _check_cap(g.n)
        self.n = g.n
        self.adj = g.adj(view)
        adj = self.adj
        dp = [0] * (1 << g.n)
        for v in range(g.n):
            dp[1 << v] = 1 << v
        for mask in range(1, 1 << g.n):
            low = mask & -mask
            rest = mask ^ low
            if not rest:
                continue
            ends = 0
            m = rest
            while m:
                vbit = m & -m
                m ^= vbit
                if dp[mask ^ vbit] & adj[vbit.bit_length() - 1]:
                    ends |= vbit
            dp[mask] = ends
        self.dp = dp

    def path_ends(self, mask: int) -> int:
        """Ends of Hamilton paths of ``mask`` starting at its lowest vertex."""
        return self.dp[mask]

    def has_cycle(self, mask: int) -> bool:
        """True iff the view restricted to ``mask`` has a Hamilton cycle
        (|mask| >= 3; degenerate conventions live in has_mono_cycle_on)."""
        low = mask & -mask
        return bool(self.dp[mask] & self.adj[low.bit_length() - 1])

    def reconstruct_path(self, mask: int, end: int) -> list[int]:
        """A Hamilton path of ``mask`` from lowest-set(mask) to ``end``.

        Deterministic: the lowest valid predecessor is taken at every
        step, matching the first-found back-pointer discipline.
        """
        assert self.dp[mask] >> end & 1
        rev = [end]
        cur = end
        m = mask
        while m != (m & -m):
            m ^= 1 << cur
            prev_opts = self.dp[m] & self.adj[cur]
            assert prev_opts
            cur = (prev_opts & -prev_opts).bit_length() - 1
            rev.append(cur)
        rev.reverse()
        return rev

    def reconstruct_cycle(self, mask: int) -> list[int]:
        """A Hamilton cycle of ``mask``, as a vertex sequence whose last
        vertex is adjacent back to the first.  Deterministic."""
        low = (mask & -mask).bit_length() - 1
        ends = self.dp[mask] & self.adj[low]
        assert ends, "no Hamilton cycle on this mask"
        end = (ends & -ends).bit_length() - 1
        return self.reconstruct_path(mask, end)


@lru_cache(maxsize=16)
def ham_table(g: ColouredGraph, view: str) -> HamTable:
    return HamTable(g, view)


def has_mono_cycle_on(g: ColouredGraph, view: str, s: int) -> bool:
    """True iff the view restricted to the vertex set ``s`` (bitmask) has
    a spanning cycle, where the empty set, a single vertex and a single
    edge all count as cycles."""
    k = s.bit_count()
    if k <= 1:
        return True
    if k == 2:
        u = (s & -s).bit_length() - 1
        return bool(g.adj(view)[u] & s & ~(1 << u))
    return ham_table(g, view).has_cycle(s)


def hamilton_path_between(
    g: ColouredGraph, view: str, s: int, a: int, b: int
) -> tuple[int, ...] | None:
    """A Hamilton path of the view restricted to ``s`` from ``a`` to
    ``b``, or None.  Runs a start-pinned subset DP over ``s`` only."""
    if not (s >> a & 1 and s >> b & 1) or a == b:
        raise ValueError("endpoints must be distinct members of s")
    verts = list(bits(s))
    t = len(verts)
    _check_cap(t)
    index = {v: i for i, v in enumerate(verts)}
    adj_full = g.adj(view)
    adj = [0] * t
    for v in verts:
        for u in bits(adj_full[v] & s):
            adj[index[v]] |= 1 << index[u]
    ai, bi = index[a], index[b]
    dp = [0] * (1 << t)
    dp[1 << ai] = 1 << ai
    abit = 1 << ai
    for mask in range(1 << t):
        if not mask & abit or dp[mask] == 0:
            continue
        ends = dp[mask]
        while ends:
            ebit = ends & -ends
            ends ^= ebit
            e = ebit.bit_length() - 1
            nxt = adj[e] & ~mask
            while nxt:
                ubit = nxt & -nxt
                nxt ^= ubit
                dp[mask | ubit] |= ubit
    full = (1 << t) - 1
    if not dp[full] >> bi & 1:
        return None
    # walk back, lowest predecessor first
    rev = [bi]
    cur = bi
    m = full
    while m != abit:
        m ^= 1 << cur
        opts = dp[m] & adj[cur]
        assert opts
        cur = (opts & -opts).bit_length() - 1
        rev.append(cur)
    rev.reverse()
    path = tuple(verts[i] for i in rev)
    assert all(g.has_edge(path[i], path[i + 1], view) for i in range(len(path) - 1))
    return path


# -- classical sufficient conditions ------------------------------------

def chvatal_guarantees(degree_sequence: list[int]) -> bool:
    """Chvatal's Hamiltonicity condition on a sorted degree sequence:
    d_i >= i+1 or d_{n-i} >= n-i for every i <= n/2 (1-based).

    One-sided: True guarantees a Hamilton cycle, False says nothing.
    """
    seq = list(degree_sequence)
    n = len(seq)
    if n < 3:
        raise ValueError("Chvatal condition needs at least 3 vertices")
    if any(seq[i] > seq[i + 1] for i in range(n - 1)):
        raise ValueError("degree sequence must be sorted nondecreasing")
    for i in range(1, n // 2 + 1):
        if seq[i - 1] >= i + 1:
            continue
        if seq[n - i - 1] >= n - i:
            continue
        return False
    return True


def chvatal_bipartite_guarantees(x_degrees: list[int], y_degrees: list[int]) -> bool:
    """Bipartite form on a balanced bipartition with both degree
    sequences sorted nondecreasing:
    x_i >= i+1 or y_{n-i} >= n-i+1 (1-based), for i = 1..n-1.

    The index i = n would refer to y_0, which does not exist; it is
    treated as vacuous.  One-sided, like chvatal_guarantees.
    """
    xs, ys = list(x_degrees), list(y_degrees)
    n = len(xs)
    if n != len(ys):
        raise ValueError("bipartition must be balanced")
    if n < 2:
        raise ValueError("need at least 2 vertices per side")
    for seq in (xs, ys):
        if any(seq[i] > seq[i + 1] for i in range(n - 1)):
            raise ValueError("degree sequences must be sorted nondecreasing")
    for i in range(1, n):
        if xs[i - 1] >= i + 1:
            continue
        if ys[n - i - 1] >= n - i + 1:
            continue
        return False
    return True


@lru_cache(maxsize=16)
def _reach_table(g: ColouredGraph, view: str) -> list[int]:
    """reach[mask] = ends v of Hamilton paths of ``mask`` with arbitrary
    start (used for longest-path and cycle-length queries)."""
    _check_cap(g.n)
    adj = g.adj(view)
    reach = [0] * (1 << g.n)
    for v in range(g.n):
        reach[1 << v] = 1 << v
    for mask in range(1, 1 << g.n):
        if mask & (mask - 1) == 0:
            continue
        ends = 0
        m = mask
        while m:
            vbit = m & -m
            m ^= vbit
            if reach[mask ^ vbit] & adj[vbit.bit_length() - 1]:
                ends |= vbit
        reach[mask] = ends
    return reach


def longest_path_length(g: ColouredGraph, view: str = UNION) -> int:
    """Length in edges of a longest path in the view, exact by DP."""
    if g.n == 0:
        return 0
    reach = _reach_table(g, view)
    best = 0
    for mask in range(1, 1 << g.n):
        if reach[mask]:
            k = mask.bit_count()
            if k - 1 > best:
                best = k - 1
    return best


def erdos_gallai_bound_holds(g: ColouredGraph, view: str, l: int) -> bool:
    """Evaluates (longest path <= l edges) => (e <= n*l/2) on this
    instance."""
    longest = longest_path_length(g, view)
    if longest > l:
        return True
    return g.e_count(view) <= g.n * l / 2


def cycle_lengths_present(g: ColouredGraph, view: str = UNION) -> set[int]:
    """The set of cycle lengths (in vertices, >= 3) present in the view."""
    if g.n < 3:
        return set()
    table = ham_table(g, view)
    found: set[int] = set()
    for mask in range(1, 1 << g.n):
        k = mask.bit_count()
        if k >= 3 and k not in found and table.has_cycle(mask):
            found.add(k)
    return found


def bondy_pancyclic_check(g: ColouredGraph, view: str = UNION) -> bool:
    """Bondy's premise: delta(view) > n/2.  True guarantees pancyclicity
    (cycles of every length 3..n), which bondy_conclusion_holds verifies
    exhaustively."""
    if g.n == 0:
        return False
    return min(a.bit_count() for a in g.adj(view)) > g.n / 2


def bondy_conclusion_holds(g: ColouredGraph, view: str = UNION) -> bool:
    if g.n < 3:
        return False
    return cycle_lengths_present(g, view) == set(range(3, g.n + 1))
