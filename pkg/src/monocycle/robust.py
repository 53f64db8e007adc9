"""Robustness calculus: exact path counting between vertex pairs,
strong/weak robustness verdicts, uniform walk lengths, and the
perturbation harness for the three degradation lemmas.

Conventions.  count_paths(g, view, x, y, l) counts simple x-y paths
with exactly l internal vertices, i.e. of length l + 1 in edges.  The
witness exponent l ranges over 1..k: the l = 0 reading (a bare edge
indicator) would make any single edge "robust" and break the fact that
a robust subgraph has minimum degree at least alpha * n_ref.

Robustness is measured relative to an ambient count n_ref, not |F|:
a subgraph is robust relative to a fixed ground graph.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field

from .errors import BudgetError, PremiseError
from .graph import UNION, ColouredGraph, bits, mask_of

DEFAULT_BUDGET = 10_000_000


def _budget() -> int:
    raw = os.environ.get("MONOCYCLE_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def count_paths(
    g: ColouredGraph,
    view: str,
    x: int,
    y: int,
    l: int,
    budget: int | None = None,
) -> int:
    """Exact number of x-y paths with l internal vertices (length l + 1
    edges) in the view, by DFS with visited-set pruning.

    Raises BudgetError once the number of node expansions exceeds the
    budget (MONOCYCLE_BUDGET env var or the default), so blow-ups become
    a distinct verdict rather than a wrong answer.
    """
    if x == y:
        raise ValueError("endpoints must be distinct")
    if l < 0:
        raise ValueError("l must be non-negative")
    adj = g.adj(view)
    if l == 0:
        return adj[x] >> y & 1
    if l == 1:
        return (adj[x] & adj[y] & ~(1 << x) & ~(1 << y)).bit_count()
    if l == 2:
        ends = ~(1 << x) & ~(1 << y)
        total = 0
        for a in bits(adj[x] & ends):
            total += (adj[a] & adj[y] & ends & ~(1 << a)).bit_count()
        return total
    limit = _budget() if budget is None else budget
    ybit = 1 << y
    expansions = 0

    def walk(cur: int, visited: int, left: int) -> int:
        nonlocal expansions
        expansions += 1
        if expansions > limit:
            raise BudgetError(f"path counting exceeded budget of {limit} expansions")
        if left == 0:
            return adj[cur] >> y & 1
        total = 0
        options = adj[cur] & ~visited & ~ybit
        for nxt in bits(options):
            total += walk(nxt, visited | (1 << nxt), left - 1)
        return total

    return walk(x, 1 << x | ybit, l)


@dataclass(frozen=True)
class RobustnessCheck:
    """Robustness verdict for a subgraph relative to an ambient n_ref.

    verdict "strongly": for l = witness_l <= k, every vertex pair of the
    subgraph has at least alpha * n_ref^l connecting paths.  verdict
    "weakly": same bound for every cross pair of the bipartition,
    counting only paths inside the bipartite restriction.  "none": no
    l <= k works.
    """

    alpha: float
    k: int
    n_ref: int
    verdict: str
    witness_l: int | None = None
    bipartition: tuple[int, int] | None = None


def check_robust(
    g: ColouredGraph,
    view: str,
    subgraph_vertices: int,
    alpha: float,
    k: int,
    n_ref: int,
    bipartition: tuple[int, int] | None = None,
    budget: int | None = None,
) -> RobustnessCheck:
    """Smallest witness l in 1..k meeting the quantified path-count
    bound, or verdict "none".  With a bipartition the weak variant is
    checked: only cross pairs, counted inside the bipartite restriction.
    """
    sub = subgraph_vertices
    if sub & ~g.vertex_mask:
        raise PremiseError("subgraph vertices outside V(G)")
    if n_ref < sub.bit_count():
        raise PremiseError("n_ref smaller than the subgraph")
    verts = list(bits(sub))
    induced = g.induced(sub)
    index = {v: i for i, v in enumerate(verts)}
    if bipartition is None:
        pairs = [(i, j) for i in range(len(verts)) for j in range(i + 1, len(verts))]
        h = induced
    else:
        bx, by = bipartition
        if bx & by or (bx | by) != sub:
            raise PremiseError("bipartition must partition the subgraph")
        from .pathpart import _bipartite_restriction

        xs = [index[v] for v in bits(bx)]
        ys = [index[v] for v in bits(by)]
        h = _bipartite_restriction(induced, mask_of(xs), mask_of(ys), view)
        pairs = [(i, j) for i in xs for j in ys]
    for l in range(1, k + 1):
        need = alpha * n_ref**l
        ok = True
        for i, j in pairs:
            if count_paths(h, view, i, j, l, budget) < need:
                ok = False
                break
        if ok:
            verdict = "strongly" if bipartition is None else "weakly"
            check = RobustnessCheck(alpha, k, n_ref, verdict, l, bipartition)
            _assert_degree_floor(g, view, sub, check)
            return check
    return RobustnessCheck(alpha, k, n_ref, "none", None, bipartition)


def _assert_degree_floor(g, view, sub, check: RobustnessCheck) -> None:
    # a robust subgraph has minimum degree >= alpha * n_ref
    if check.verdict == "none":
        return
    adj = g.adj(view)
    if check.verdict == "weakly":
        bx, by = check.bipartition
        floor = min(
            min(((adj[v] & by).bit_count() for v in bits(bx)), default=0),
            min(((adj[v] & bx).bit_count() for v in bits(by)), default=0),
        )
    else:
        floor = min(((adj[v] & sub).bit_count() for v in bits(sub)), default=0)
    assert floor >= check.alpha * check.n_ref, (
        f"robust verdict with min degree {floor} < alpha*n_ref = "
        f"{check.alpha * check.n_ref}"
    )


def uniform_odd_walk_length(g: ColouredGraph, view: str = UNION) -> int | None:
    """Smallest k such that walks of length exactly k exist between every
    ordered vertex pair, a vertex to itself included (the reduced-graph
    application routes same-cluster pairs through closed walks).  Exists,
    and is at most 3n, precisely for connected non-bipartite views;
    returns None otherwise.  The "odd" refers to the odd-cycle mechanism
    that makes a uniform length achievable; the k itself may be even.

    Computed by boolean adjacency powering with per-row bitmasks.
    """
    n = g.n
    adj = g.adj(view)
    if n == 0:
        return None
    if not _connected(adj, n):
        return None
    if _bipartite(adj, n):
        return None
    rows = list(adj)
    for k in range(1, 3 * n + 1):
        if k > 1:
            rows = [_or_over(adj, rows, v) for v in range(n)]
        if all(row == g.vertex_mask for row in rows):
            assert k <= 3 * n
            return k
    raise AssertionError("connected non-bipartite view with no uniform walk length <= 3n")


def _or_over(adj: tuple[int, ...], rows: list[int], v: int) -> int:
    out = 0
    for u in bits(adj[v]):
        out |= rows[u]
    return out


def _connected(adj: tuple[int, ...], n: int) -> bool:
    full = (1 << n) - 1
    comp = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= adj[v]
        nxt &= ~comp
        comp |= nxt
        frontier = nxt
    return comp == full


def _bipartite(adj: tuple[int, ...], n: int) -> bool:
    colour = [-1] * n
    for s in range(n):
        if colour[s] != -1:
            continue
        colour[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in bits(adj[v]):
                if colour[u] == -1:
                    colour[u] = colour[v] ^ 1
                    stack.append(u)
                elif colour[u] == colour[v]:
                    return False
    return True


# -- perturbation harness -------------------------------------------------

@dataclass
class PerturbationTrial:
    kind: str
    passed: bool
    verdict: str
    witness_l: int | None


@dataclass
class PerturbationReport:
    alpha: float
    k: int
    beta: float
    trials: list[PerturbationTrial] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(1 for t in self.trials if not t.passed)


def perturbation_suite(
    g: ColouredGraph,
    view: str,
    alpha: float,
    k: int,
    beta: float,
    seed: int,
    trials: int = 1,
    n_ref: int | None = None,
    bipartition: tuple[int, int] | None = None,
) -> PerturbationReport:
    """Verify robustness of g, then re-check it at the degraded
    parameters after each perturbation: delete floor(beta*n) random
    vertices or edges (at most beta*n per vertex) and expect
    (alpha/2, k); attach a fresh vertex to ceil(alpha*n) random vertices
    and expect (alpha^3/2, k + 2).

    Failures are recorded per trial, never raised: a beta outside the
    lemma's "small enough" range legitimately produces failures.
    """
    n = g.n
    n_ref = n if n_ref is None else n_ref
    base = check_robust(g, view, g.vertex_mask, alpha, k, n_ref, bipartition)
    if base.verdict == "none":
        raise PremiseError("graph is not robust at the declared parameters")
    report = PerturbationReport(alpha, k, beta)
    rng = random.Random(seed)
    cut = int(beta * n)
    for _ in range(trials):
        removed = mask_of(rng.sample(range(n), cut))
        sub = g.induced(g.vertex_mask & ~removed)
        bip = _shrink_bipartition(bipartition, g.vertex_mask & ~removed) if bipartition else None
        res = check_robust(sub, view, sub.vertex_mask, alpha / 2, k, n_ref, bip)
        report.trials.append(
            PerturbationTrial("delete-vertices", res.verdict != "none", res.verdict, res.witness_l)
        )

        pruned = _delete_edges_capped(g, view, cut, rng)
        res = check_robust(pruned, view, pruned.vertex_mask, alpha / 2, k, n_ref, bipartition)
        report.trials.append(
            PerturbationTrial("delete-edges", res.verdict != "none", res.verdict, res.witness_l)
        )

        want = max(1, math.ceil(alpha * n))
        if bipartition:
            # keep the grown graph bipartite: attach within one side,
            # place the new vertex on the other
            bx, by = bipartition
            pool = sorted(bits(bx))
            attach = rng.sample(pool, min(want, len(pool)))
            bip2 = (bx, by | (1 << n))
        else:
            attach = rng.sample(range(n), want)
            bip2 = None
        grown = _add_vertex(g, view, attach)
        res = check_robust(
            grown, view, grown.vertex_mask, alpha**3 / 2, k + 2, n_ref, bip2
        )
        report.trials.append(
            PerturbationTrial("add-vertex", res.verdict != "none", res.verdict, res.witness_l)
        )
    return report


def _shrink_bipartition(bipartition, keep_mask):
    bx, by = bipartition
    verts = list(bits(keep_mask))
    index = {v: i for i, v in enumerate(verts)}
    nbx = mask_of(index[v] for v in verts if bx >> v & 1)
    nby = mask_of(index[v] for v in verts if by >> v & 1)
    return nbx, nby


def _delete_edges_capped(g: ColouredGraph, view: str, cap: int, rng: random.Random):
    """Random edge deletions with at most ``cap`` losses per vertex."""
    edges = list(g.edges())
    rng.shuffle(edges)
    lost = [0] * g.n
    keep = []
    for u, v, mark in edges:
        if lost[u] < cap and lost[v] < cap and rng.random() < 0.5:
            lost[u] += 1
            lost[v] += 1
        else:
            keep.append((u, v, mark))
    keep.sort()
    return ColouredGraph.from_edges(g.n, keep)


def _add_vertex(g: ColouredGraph, view: str, attach: list[int]) -> ColouredGraph:
    mark = {"R": "R", "B": "B", "U": "RB"}[view]
    edges = list(g.edges()) + [(a, g.n, mark) for a in sorted(attach)]
    return ColouredGraph.from_edges(g.n + 1, sorted(edges))
