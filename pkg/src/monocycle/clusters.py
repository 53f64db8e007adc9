"""Reduced-graph abstraction on explicit cluster graphs: random
blow-ups stand in for regular partitions, connected cluster components
yield robust subgraphs, and monochromatic connected matchings convert
into long cycles (or anchored paths) in the blown-up graph.

True epsilon-regularity is never verified (that check is exponential);
random density-d blow-ups are regular with overwhelming probability and
splice failures surface as explicit errors rather than being prevented.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .errors import ConstructionError, GraphFormatError, PremiseError
from .graph import BLUE, RED, ColouredGraph, bits, mask_of
from .matching import max_matching
from .pathpart import partition_empty_pair_path
from .robust import RobustnessCheck, check_robust

CLUSTER_FLAGS = (RED, BLUE, "RB")


@dataclass(frozen=True)
class ClusterGraph:
    """Weighted cluster vertices with per-colour density flags.

    ``pairs`` maps each flagged unordered pair (i, j), i < j, to a flag
    in {"R", "B", "RB"}; ``d`` is the nominal blow-up density shared by
    all flagged pairs.
    """

    sizes: tuple[int, ...]
    pairs: tuple[tuple[int, int, str], ...]
    d: float

    def __post_init__(self):
        if not 0 < self.d <= 1:
            raise ValueError("density d must be in (0, 1]")
        if any(s < 1 for s in self.sizes):
            raise ValueError("cluster sizes must be >= 1")
        seen = set()
        for i, j, flag in self.pairs:
            if not (0 <= i < len(self.sizes) and 0 <= j < len(self.sizes)) or i >= j:
                raise ValueError(f"bad cluster pair ({i}, {j})")
            if (i, j) in seen:
                raise ValueError(f"pair ({i}, {j}) flagged twice")
            seen.add((i, j))
            if flag not in CLUSTER_FLAGS:
                raise ValueError(f"bad flag {flag!r}")

    @property
    def m(self) -> int:
        return len(self.sizes)

    def flag(self, i: int, j: int) -> str | None:
        a, b = (i, j) if i < j else (j, i)
        for x, y, f in self.pairs:
            if (x, y) == (a, b):
                return f
        return None

    def colour_adj(self, colour: str) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in self.sizes]
        for i, j, f in self.pairs:
            if colour in f:
                adj[i].add(j)
                adj[j].add(i)
        return adj

    def as_coloured_graph(self) -> ColouredGraph:
        """The cluster graph itself as a 2-coloured graph on clusters."""
        return ColouredGraph.from_edges(self.m, sorted(self.pairs))

    def to_json(self) -> str:
        return json.dumps(
            {"d": self.d, "pairs": [list(p) for p in sorted(self.pairs)], "sizes": list(self.sizes)},
            sort_keys=True,
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "ClusterGraph":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError("malformed", f"invalid JSON: {exc}") from exc
        try:
            return cls(
                tuple(payload["sizes"]),
                tuple((int(i), int(j), str(f)) for i, j, f in payload["pairs"]),
                float(payload["d"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphFormatError("malformed", f"bad cluster graph: {exc}") from exc


def blow_up(cg: ClusterGraph, seed: int) -> tuple[ColouredGraph, tuple[int, ...]]:
    """Replace clusters by vertex sets: no edges inside clusters; across
    each flagged pair every cross pair is present independently with
    probability d in each flagged colour.  Returns the graph and the
    vertex -> cluster map.  Deterministic under ``seed``."""
    rng = random.Random(seed)
    offsets = [0]
    for s in cg.sizes:
        offsets.append(offsets[-1] + s)
    n = offsets[-1]
    cluster_map = tuple(c for c, s in enumerate(cg.sizes) for _ in range(s))
    edges = []
    for i, j, flag in sorted(cg.pairs):
        for u in range(offsets[i], offsets[i + 1]):
            for v in range(offsets[j], offsets[j + 1]):
                r = RED in flag and rng.random() < cg.d
                b = "B" in flag and rng.random() < cg.d
                if r and b:
                    edges.append((u, v, "RB"))
                elif r:
                    edges.append((u, v, RED))
                elif b:
                    edges.append((u, v, BLUE))
    return ColouredGraph.from_edges(n, sorted(edges)), cluster_map


def cluster_vertices(cluster_map: tuple[int, ...], cluster: int) -> int:
    return mask_of(v for v, c in enumerate(cluster_map) if c == cluster)


# -- robust subgraph extraction -------------------------------------------


def extract_robust_component(
    g: ColouredGraph,
    cg: ClusterGraph,
    cluster_map: tuple[int, ...],
    component: tuple[int, ...],
    colour: str,
    eps: float,
    alpha: float = 0.01,
    k: int = 4,
    n_ref: int | None = None,
) -> tuple[int, RobustnessCheck]:
    """Strip low-degree vertices cluster by cluster (degree at most
    3*eps*|flagged neighbourhood| goes), then check robustness of the
    survivors: strong when the cluster component is non-bipartite in the
    colour, weak (with the cluster 2-colouring as bipartition) when it
    is bipartite.

    Returns (survivor vertex mask, robustness check).  Raises
    ConstructionError when retention drops below (1 - eps)|U|.
    """
    comp = set(component)
    adj_c = cg.colour_adj(colour)
    for i in comp:
        if adj_c[i] - comp:
            raise PremiseError(f"cluster {i} has colour edges leaving the component")
    if not _clusters_connected(adj_c, comp):
        raise PremiseError("designated clusters are not colour-connected")
    n_ref = g.n if n_ref is None else n_ref
    adj = g.adj(colour)
    members = {i: cluster_vertices(cluster_map, i) for i in comp}
    u_mask = 0
    for m in members.values():
        u_mask |= m
    survivors = u_mask
    changed = True
    while changed:
        changed = False
        for i in comp:
            nbhd = 0
            for j in adj_c[i]:
                if j in comp:
                    nbhd |= members[j] & survivors
            size = nbhd.bit_count()
            for v in bits(members[i] & survivors):
                if (adj[v] & nbhd).bit_count() <= 3 * eps * size:
                    survivors ^= 1 << v
                    changed = True
    if survivors.bit_count() < (1 - eps) * u_mask.bit_count():
        raise ConstructionError(
            f"retention {survivors.bit_count()}/{u_mask.bit_count()} below (1 - eps); "
            "blow-up not dense enough"
        )
    two_col = _two_colour_clusters(adj_c, comp)
    if two_col is None:
        check = check_robust(g, colour, survivors, alpha, k, n_ref)
    else:
        side0 = 0
        side1 = 0
        for i in comp:
            if two_col[i] == 0:
                side0 |= members[i] & survivors
            else:
                side1 |= members[i] & survivors
        check = check_robust(g, colour, survivors, alpha, k, n_ref, (side0, side1))
    return survivors, check


def extract_robust_components(
    g: ColouredGraph,
    cg: ClusterGraph,
    cluster_map: tuple[int, ...],
    jobs: list[tuple[tuple[int, ...], str]],
    eps: float,
    alpha: float = 0.01,
    k: int = 4,
) -> list[tuple[int, RobustnessCheck]]:
    """Repeated extraction over a shared survivor set, so containment
    relations between the cluster components carry over to the extracted
    subgraphs (the multi-component variant whose proof the source
    omits).  ``jobs`` is a list of (component clusters, colour)."""
    stripped = 0
    results = []
    for component, colour in jobs:
        f_mask, check = extract_robust_component(
            g, cg, cluster_map, component, colour, eps, alpha, k
        )
        u_mask = 0
        for i in component:
            u_mask |= cluster_vertices(cluster_map, i)
        stripped |= u_mask & ~f_mask
        results.append((f_mask, check))
    # re-impose the shared survivor set
    shared = [(f & ~stripped, c) for f, c in results]
    return shared


def _clusters_connected(adj_c: list[set[int]], comp: set[int]) -> bool:
    if not comp:
        return False
    start = min(comp)
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for u in adj_c[v]:
            if u in comp and u not in seen:
                seen.add(u)
                stack.append(u)
    return seen == comp


def _two_colour_clusters(adj_c: list[set[int]], comp: set[int]) -> dict[int, int] | None:
    """2-colouring of the component, or None if non-bipartite."""
    colour: dict[int, int] = {min(comp): 0}
    stack = [min(comp)]
    while stack:
        v = stack.pop()
        for u in adj_c[v]:
            if u not in comp:
                continue
            if u not in colour:
                colour[u] = colour[v] ^ 1
                stack.append(u)
            elif colour[u] == colour[v]:
                return None
    return colour


# -- connected matchings -----------------------------------------------------


@dataclass(frozen=True)
class ConnectedMatching:
    """A matching in one colour whose matched vertices (clusters) all lie
    in a single connected component of that colour."""

    colour: str
    edges: tuple[tuple[int, int], ...]
    component: tuple[int, ...]


def find_connected_matching(
    source: ColouredGraph | ClusterGraph, colour: str
) -> ConnectedMatching:
    """Maximum matching restricted to each colour component; the best
    component (largest matching, lowest vertex on ties) wins."""
    g = source.as_coloured_graph() if isinstance(source, ClusterGraph) else source
    adj = g.adj(colour)
    full = g.vertex_mask
    best: tuple[int, int] | None = None  # (-size, lowest vertex)
    best_result: ConnectedMatching | None = None
    rem = full
    while rem:
        seed = rem & -rem
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= ~comp
            comp |= nxt
            frontier = nxt
        rem &= ~comp
        verts = list(bits(comp))
        sub = g.induced(comp)
        m = max_matching(sub, colour)
        edges = tuple(sorted((verts[u], verts[v]) for u, v in m.edges))
        key = (-len(edges), verts[0])
        if best is None or key < best:
            best = key
            best_result = ConnectedMatching(colour, edges, tuple(verts))
    assert best_result is not None
    return best_result


# -- matching-to-cycle conversion ---------------------------------------------


@dataclass(frozen=True)
class CycleResult:
    """Assembled cycle (or anchored path) in the blown-up graph."""

    sequence: tuple[int, ...]
    is_cycle: bool
    covered_in_u: int
    u_total: int

    @property
    def coverage(self) -> float:
        return self.covered_in_u / self.u_total if self.u_total else 1.0


def matching_to_cycle(
    g: ColouredGraph,
    cg: ClusterGraph,
    cluster_map: tuple[int, ...],
    cm: ConnectedMatching,
    eps: float,
    reserved: int = 0,
    endpoints: tuple[int, int] | None = None,
) -> CycleResult:
    """Convert a connected matching of the cluster graph into a cycle of
    the blown-up graph covering at least (1 - 6*eps) of the matched
    clusters' unreserved vertices, in the matching's colour and avoiding
    ``reserved``.

    Within each matched pair a long alternating path is found by the
    moving-vertex partition; short connector paths (one vertex per
    cluster, BFS over the cluster component) link the pairs cyclically.
    With ``endpoints`` = (A, B) vertex masks, an open path from A to B is
    returned instead of a cycle.

    Splice failures (density too low to trim or connect) raise
    ConstructionError naming the failing pair; the result is never an
    undersized silent output.
    """
    colour = cm.colour
    pairs = list(cm.edges)
    s = len(pairs)
    if s == 0:
        raise PremiseError("empty matching")
    comp = set(cm.component)
    adj_c = cg.colour_adj(colour)
    adj = g.adj(colour)
    members = {i: cluster_vertices(cluster_map, i) for i in comp}
    for ci, cj in pairs:
        if ci not in comp or cj not in comp:
            raise PremiseError(f"matched pair ({ci}, {cj}) outside the component")
        f = cg.flag(ci, cj)
        if f is None or colour not in f:
            raise PremiseError(f"pair ({ci}, {cj}) not flagged {colour}")
        dens = _measured_density(g, colour, members[ci], members[cj])
        if dens < 3 * eps:
            raise PremiseError(
                f"measured density {dens:.3f} of pair ({ci}, {cj}) below 3*eps"
            )
    u_mask = 0
    for ci, cj in pairs:
        u_mask |= members[ci] | members[cj]
    u_avail = u_mask & ~reserved

    used = reserved
    # phase 1: connectors between consecutive pairs (cyclic unless endpoints)
    links = []
    n_links = s if endpoints is None else s - 1
    for idx in range(n_links):
        ci = pairs[idx][0]
        cj_next = pairs[(idx + 1) % s][1]
        link = _connector(g, cg, adj, adj_c, members, comp, ci, cj_next, used, colour)
        used |= mask_of(link)
        links.append(link)

    # phase 2: entry/exit vertices next to each pair
    entries: list[int | None] = [None] * s
    exits: list[int | None] = [None] * s
    for idx in range(n_links):
        x_l, y_l = links[idx][0], links[idx][-1]
        nxt = (idx + 1) % s
        a = _lowest(adj[x_l] & members[pairs[idx][1]] & ~used)
        if a is None:
            raise ConstructionError(f"no exit vertex beside pair {pairs[idx]}")
        used |= 1 << a
        exits[idx] = a
        b = _lowest(adj[y_l] & members[pairs[nxt][0]] & ~used)
        if b is None:
            raise ConstructionError(f"no entry vertex beside pair {pairs[nxt]}")
        used |= 1 << b
        entries[nxt] = b

    # phase 3: long alternating path inside each matched pair, trimmed to
    # splice onto its entry/exit
    segments = []
    for idx, (ci, cj) in enumerate(pairs):
        avail_c = members[ci] & ~used
        avail_d = members[cj] & ~used
        seq = _pair_long_path(g, colour, avail_c, avail_d)
        first_anchor = entries[idx]
        last_anchor = exits[idx]
        want_first = (
            (lambda v, b=first_anchor: bool(avail_d >> v & 1 and adj[v] >> b & 1))
            if first_anchor is not None
            else (lambda v: bool(endpoints[0] & adj[v] & ~used))
        )
        want_last = (
            (lambda v, a=last_anchor: bool(avail_c >> v & 1 and adj[v] >> a & 1))
            if last_anchor is not None
            else (lambda v: bool(endpoints[1] & adj[v] & ~used))
        )
        trimmed = _trim(seq, want_first, want_last)
        if trimmed is None:
            raise ConstructionError(f"cannot splice pair ({ci}, {cj}): trim failed")
        used |= mask_of(trimmed)
        segments.append(trimmed)

    # phase 4: assemble
    out: list[int] = []
    if endpoints is not None:
        alpha_v = _lowest(endpoints[0] & adj[segments[0][0]] & ~used)
        if alpha_v is None:
            raise ConstructionError("no available start vertex in the first endpoint set")
        used |= 1 << alpha_v
        out.append(alpha_v)
    for idx in range(s):
        out.extend(segments[idx])
        if idx < n_links:
            out.append(exits[idx])
            out.extend(links[idx])
            out.append(entries[(idx + 1) % s])
    if endpoints is not None:
        beta_v = _lowest(endpoints[1] & adj[out[-1]] & ~used & ~(1 << out[0]))
        if beta_v is None:
            raise ConstructionError("no available end vertex in the second endpoint set")
        out.append(beta_v)

    _verify_result(g, colour, out, endpoints is None, reserved)
    covered = (mask_of(out) & u_avail).bit_count()
    floor = (1 - 6 * eps) * u_avail.bit_count()
    if covered < floor:
        raise ConstructionError(
            f"assembled cycle covers {covered} < (1 - 6*eps)|U| = {floor:.1f}"
        )
    return CycleResult(tuple(out), endpoints is None, covered, u_avail.bit_count())


def _measured_density(g: ColouredGraph, colour: str, x: int, y: int) -> float:
    adj = g.adj(colour)
    e = sum((adj[v] & y).bit_count() for v in bits(x))
    return e / (x.bit_count() * y.bit_count())


def _lowest(mask: int) -> int | None:
    if not mask:
        return None
    return (mask & -mask).bit_length() - 1


def _connector(g, cg, adj, adj_c, members, comp, c_from, c_to, used, colour) -> list[int]:
    """A path in g from a vertex of cluster c_from to a vertex of
    cluster c_to, one fresh vertex per cluster along a shortest cluster
    walk, all edges in the colour."""
    route = _cluster_route(adj_c, comp, c_from, c_to)
    for start in sorted(bits(members[c_from] & ~used)):
        path = [start]
        ok = True
        blocked = used
        for cluster in route[1:]:
            options = adj[path[-1]] & members[cluster] & ~blocked
            v = _lowest(options)
            if v is None:
                ok = False
                break
            path.append(v)
            blocked |= 1 << v
        if ok:
            return path
    raise ConstructionError(f"no connector realizable from cluster {c_from} to {c_to}")


def _cluster_route(adj_c, comp, c_from, c_to) -> list[int]:
    if c_from == c_to:
        # route must leave and return; use a neighbour as pivot
        for nb in sorted(adj_c[c_from]):
            if nb in comp:
                return [c_from, nb, c_from]
        raise ConstructionError(f"cluster {c_from} isolated in its colour")
    parent = {c_from: None}
    frontier = [c_from]
    while frontier:
        nxt = []
        for c in frontier:
            for u in sorted(adj_c[c]):
                if u in comp and u not in parent:
                    parent[u] = c
                    nxt.append(u)
        if c_to in parent:
            break
        frontier = nxt
    if c_to not in parent:
        raise ConstructionError(f"clusters {c_from} and {c_to} not colour-connected")
    route = [c_to]
    while parent[route[-1]] is not None:
        route.append(parent[route[-1]])
    route.reverse()
    return route


def _pair_long_path(g: ColouredGraph, colour: str, side_c: int, side_d: int) -> list[int]:
    """Long alternating path inside one dense pair, via the moving-vertex
    partition on the bipartite restriction (global vertex ids)."""
    verts = sorted(bits(side_c | side_d))
    index = {v: i for i, v in enumerate(verts)}
    adj = g.adj(colour)
    edges = []
    for u in bits(side_c):
        for v in bits(adj[u] & side_d):
            a, b = (index[u], index[v]) if index[u] < index[v] else (index[v], index[u])
            edges.append((a, b, colour))
    local = ColouredGraph.from_edges(len(verts), sorted(set(edges)))
    pp = partition_empty_pair_path(local, colour)
    return [verts[i] for i in pp.path]


def _trim(seq: list[int], want_first, want_last) -> list[int] | None:
    """Largest contiguous piece of ``seq`` (either orientation) whose
    first vertex satisfies want_first and last satisfies want_last."""
    best: list[int] | None = None
    for cand in (seq, list(reversed(seq))):
        starts = [i for i, v in enumerate(cand) if want_first(v)]
        if not starts:
            continue
        i = starts[0]
        ends = [j for j in range(len(cand) - 1, i, -1) if want_last(cand[j])]
        if not ends:
            continue
        piece = cand[i : ends[0] + 1]
        if best is None or len(piece) > len(best):
            best = piece
    return best


def _verify_result(g, colour, seq, is_cycle, reserved) -> None:
    assert len(set(seq)) == len(seq), "result repeats a vertex"
    assert not (mask_of(seq) & reserved), "result touches reserved vertices"
    pairs = list(zip(seq, seq[1:]))
    if is_cycle and len(seq) > 2:
        pairs.append((seq[-1], seq[0]))
    for u, v in pairs:
        if not g.has_edge(u, v, colour):
            raise ConstructionError(f"assembled sequence misses edge ({u}, {v})")
