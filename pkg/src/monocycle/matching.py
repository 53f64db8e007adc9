"""Maximum matching engines and the matching-or-structural-witness
dichotomies for tripartite and near-bipartite graphs.

The general engine is a blossom-contraction search (deterministic under
the fixed vertex order); a Hopcroft-Karp specialization kicks in when a
bipartition is supplied.  The Tutte oracle is an independent exhaustive
check over vertex subsets and is kept free of any matching machinery so
the two routes can cross-validate each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError, ConstructionError, PremiseError
from .graph import UNION, ColouredGraph, bits, e_between, mask_of

TUTTE_CAP = 16


@dataclass(frozen=True)
class Matching:
    """Vertex-disjoint edges of one view, as sorted (u, v) pairs, u < v."""

    edges: tuple[tuple[int, int], ...]
    view: str

    @property
    def size(self) -> int:
        return len(self.edges)

    def covered_mask(self) -> int:
        m = 0
        for u, v in self.edges:
            m |= 1 << u | 1 << v
        return m

    def is_perfect(self, g: ColouredGraph) -> bool:
        return self.covered_mask() == g.vertex_mask

    def validate(self, g: ColouredGraph) -> None:
        seen = 0
        for u, v in self.edges:
            if not g.has_edge(u, v, self.view):
                raise AssertionError(f"matching edge ({u}, {v}) not in view {self.view}")
            pair = 1 << u | 1 << v
            if seen & pair:
                raise AssertionError(f"matching edge ({u}, {v}) reuses a vertex")
            seen |= pair


@dataclass(frozen=True)
class StabilityWitness:
    """Structural object returned when a matching lemma's matching does
    not exist.  ``sets`` holds the witness vertex bitmasks in a
    variant-specific order:

    - independent-pair: (whole independent set, part i piece, part j piece)
    - small-neighbourhood: (independent A_i, its neighbourhood)
    - large-independent: (independent subset of the bigger part,)
    - not-2-connected: (cut set of size <= 1,)
    """

    variant: str
    sets: tuple[int, ...]
    eps: float

    def verify(self, g: ColouredGraph, view: str) -> bool:
        if self.variant == "independent-pair":
            whole = self.sets[0]
            return _is_independent(g, view, whole)
        if self.variant == "small-neighbourhood":
            a, nbhd = self.sets
            return _is_independent(g, view, a) and _neighbourhood(g, view, a) == nbhd
        if self.variant == "large-independent":
            return _is_independent(g, view, self.sets[0])
        if self.variant == "not-2-connected":
            cut = self.sets[0]
            return cut.bit_count() <= 1 and not _connected_after_removal(g, view, cut)
        raise ValueError(f"unknown witness variant {self.variant!r}")


def _is_independent(g: ColouredGraph, view: str, s: int) -> bool:
    adj = g.adj(view)
    return all(not adj[v] & s for v in bits(s))


def _neighbourhood(g: ColouredGraph, view: str, s: int) -> int:
    adj = g.adj(view)
    out = 0
    for v in bits(s):
        out |= adj[v]
    return out & ~s


def _components(adj: tuple[int, ...], remaining: int) -> list[int]:
    comps = []
    rem = remaining
    while rem:
        seed = rem & -rem
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj[v]
            nxt &= rem & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        rem &= ~comp
    return comps


def _connected_after_removal(g: ColouredGraph, view: str, cut: int) -> bool:
    remaining = g.vertex_mask & ~cut
    if remaining == 0:
        return True
    return len(_components(g.adj(view), remaining)) == 1


def is_two_connected(g: ColouredGraph, view: str = UNION) -> tuple[bool, int | None]:
    """(True, None) if 2-connected; else (False, cut mask of size <= 1)."""
    if not _connected_after_removal(g, view, 0):
        return False, 0
    for v in range(g.n):
        if not _connected_after_removal(g, view, 1 << v):
            return False, 1 << v
    return True, None


# -- engines -------------------------------------------------------------

def _adj_lists(g: ColouredGraph, view: str) -> list[list[int]]:
    return [sorted(bits(a)) for a in g.adj(view)]


def _blossom(n: int, adj: list[list[int]]) -> list[int]:
    """Maximum cardinality matching by blossom contraction.

    Returns the mate array (-1 for exposed).  Deterministic: vertices
    and neighbours are scanned in increasing order.
    """
    match = [-1] * n
    p = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        used_path = [False] * n
        x = a
        while True:
            x = base[x]
            used_path[x] = True
            if match[x] == -1:
                break
            x = p[match[x]]
        y = b
        while True:
            y = base[y]
            if used_path[y]:
                return y
            y = p[match[y]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = True
            blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    def find_path(root: int) -> int:
        used = [False] * n
        for i in range(n):
            p[i] = -1
            base[i] = i
        used[root] = True
        queue = [root]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    curbase = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, curbase, to, blossom)
                    mark_path(to, curbase, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = curbase
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    queue.append(match[to])
        return -1

    for v in range(n):
        if match[v] == -1:
            end = find_path(v)
            while end != -1:
                pv = p[end]
                ppv = match[pv]
                match[end] = pv
                match[pv] = end
                end = ppv
    return match


def _hopcroft_karp(n: int, adj: list[list[int]], left: int) -> list[int]:
    """Maximum matching of a bipartite graph; ``left`` is the bitmask of
    one side (edges inside a side are ignored).  Returns the mate array."""
    INF = n + 1
    lefts = [v for v in range(n) if left >> v & 1]
    match = [-1] * n
    dist = [INF] * n

    def bfs() -> bool:
        queue = []
        for u in lefts:
            if match[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        head = 0
        while head < len(queue):
            u = queue[head]
            head += 1
            for v in adj[u]:
                if left >> v & 1:
                    continue
                w = match[v]
                if w == -1:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adj[u]:
            if left >> v & 1:
                continue
            w = match[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match[u] = v
                match[v] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in lefts:
            if match[u] == -1:
                dfs(u)
    return match


def max_matching(g: ColouredGraph, view: str = UNION, bipartition: int | None = None) -> Matching:
    """Maximum-cardinality matching of the view.  If ``bipartition`` (a
    bitmask of one side) is supplied, only edges crossing it are used and
    the Hopcroft-Karp specialization runs; otherwise general blossom."""
    adj = _adj_lists(g, view)
    if bipartition is not None:
        side = bipartition
        adj = [
            [u for u in nbrs if (side >> v & 1) != (side >> u & 1)]
            for v, nbrs in enumerate(adj)
        ]
        mate = _hopcroft_karp(g.n, adj, side)
    else:
        mate = _blossom(g.n, adj)
    edges = tuple(sorted((v, mate[v]) for v in range(g.n) if mate[v] > v))
    m = Matching(edges, view)
    m.validate(g)
    return m


# -- Tutte oracle ----------------------------------------------------------

@dataclass(frozen=True)
class TutteVerdict:
    ok: bool
    violator: int | None = None  # bitmask of U with odd(G - U) > |U|
    odd_components: int | None = None


def tutte_oracle(g: ColouredGraph, view: str = UNION) -> TutteVerdict:
    """Exhaustive Tutte condition check: OK iff for every U the number of
    odd components of view - U is at most |U|.  Independent of the
    matching engines.  Capped at 16 vertices."""
    if g.n > TUTTE_CAP:
        raise CapacityError(f"Tutte oracle sweeps 2^n subsets; capped at {TUTTE_CAP}")
    adj = g.adj(view)
    full = g.vertex_mask
    for u_mask in range(1 << g.n):
        remaining = full & ~u_mask
        odd = sum(1 for comp in _components(adj, remaining) if comp.bit_count() % 2)
        if odd > u_mask.bit_count():
            return TutteVerdict(False, u_mask, odd)
    return TutteVerdict(True)


def inessential_vertices(g: ColouredGraph, view: str = UNION) -> int:
    """Bitmask of vertices missed by at least one maximum matching
    (v is inessential iff deleting it does not lower the matching
    number).  Drives witness extraction at sizes beyond the Tutte cap."""
    nu = max_matching(g, view).size
    out = 0
    for v in range(g.n):
        rest = g.induced(g.vertex_mask ^ (1 << v))
        if max_matching(rest, view).size == nu:
            out |= 1 << v
    return out


def tutte_violator_from_structure(g: ColouredGraph, view: str = UNION) -> int | None:
    """A Tutte-violating set derived from matching structure: the
    neighbourhood of the inessential vertices.  Returns None if the
    candidate does not actually violate (e.g. a perfect matching
    exists)."""
    d = inessential_vertices(g, view)
    if d == 0:
        return None
    a = _neighbourhood(g, view, d)
    remaining = g.vertex_mask & ~a
    odd = sum(1 for comp in _components(g.adj(view), remaining) if comp.bit_count() % 2)
    if odd > a.bit_count():
        return a
    return None


# -- lemma dichotomies ------------------------------------------------------

def _check_parts(g: ColouredGraph, parts: list[int]) -> None:
    union = 0
    total = 0
    for p in parts:
        union |= p
        total += p.bit_count()
    if union != g.vertex_mask or total != g.n:
        raise PremiseError("parts must partition the vertex set")


def tripartite_exact(
    g: ColouredGraph, parts: tuple[int, int, int], view: str = UNION
) -> Matching:
    """Perfect matching of a tripartite graph whose parts are not too
    big and whose vertices have degree above 3n/4 - |own part|.

    The premises guarantee the matching exists; failure to find one
    despite verified premises would falsify the statement and raises
    AssertionError (a test failure, not a recoverable state).
    """
    _check_parts(g, list(parts))
    n = g.n
    if n % 2:
        raise PremiseError("needs an even number of vertices")
    adj = g.adj(view)
    for i, part in enumerate(parts):
        if part.bit_count() > n / 2:
            raise PremiseError(f"part {i} larger than n/2")
        for v in bits(part):
            if adj[v] & part:
                raise PremiseError(f"part {i} is not independent (vertex {v})")
            if adj[v].bit_count() <= 3 * n / 4 - part.bit_count():
                raise PremiseError(f"vertex {v} degree too small for the exact lemma")
    m = max_matching(g, view)
    if not m.is_perfect(g):
        raise AssertionError(
            "premises hold but no perfect matching found; this falsifies the exact tripartite lemma"
        )
    return m


def _independent_pair_witness(
    g: ColouredGraph, view: str, parts: list[int], eps: float, bound: float
) -> StabilityWitness | None:
    """Independent set Y inside two parts with both intersections at
    least ``bound``; proof-mirroring extraction from a Tutte set, with
    exhaustive fallback at small n."""
    s = None
    if g.n <= TUTTE_CAP:
        verdict = tutte_oracle(g, view)
        if not verdict.ok:
            s = verdict.violator
    else:
        s = tutte_violator_from_structure(g, view)
    if s is not None:
        comps = _components(g.adj(view), g.vertex_mask & ~s)
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                pi, pj = parts[i], parts[j]
                y = 0
                for comp in comps:
                    inside = comp & (pi | pj)
                    if inside:
                        y |= inside & -inside  # lowest vertex of the component
                if (
                    (y & pi).bit_count() >= bound
                    and (y & pj).bit_count() >= bound
                    and _is_independent(g, view, y)
                ):
                    return StabilityWitness("independent-pair", (y, y & pi, y & pj), eps)
    return None


def tripartite_stability(
    g: ColouredGraph, parts: tuple[int, int, int], eps: float, view: str = UNION
) -> Matching | StabilityWitness:
    """Either a perfect matching, or an independent set Y spanning two
    parts with both intersections >= (1/4 - 5*eps)*n."""
    _check_parts(g, list(parts))
    n = g.n
    if n % 2:
        raise PremiseError("needs an even number of vertices")
    if eps <= 0 or eps >= 1 / 8:
        raise PremiseError("eps outside the lemma's feasible range")
    adj = g.adj(view)
    for i, part in enumerate(parts):
        if part.bit_count() > (1 / 2 - 4 * eps) * n:
            raise PremiseError(f"part {i} exceeds (1/2 - 4*eps)*n")
        for v in bits(part):
            if (adj[v] & ~part).bit_count() < (3 / 4 - eps) * n - part.bit_count():
                raise PremiseError(f"vertex {v} cross-degree too small")
    m = max_matching(g, view)
    if m.is_perfect(g):
        return m
    witness = _independent_pair_witness(g, view, list(parts), eps, (1 / 4 - 5 * eps) * n)
    if witness is None:
        raise ConstructionError("no perfect matching, but witness extraction failed")
    assert witness.verify(g, view)
    return witness


def hall_dichotomy(
    g: ColouredGraph, parts: tuple[int, int], eps: float, view: str = UNION
) -> Matching | tuple[int, int]:
    """On a balanced bipartition with cross-degree floor (1/4 - eps)*n:
    either a perfect matching of the cross view, or sets A_i with no
    edges between them and (1/4 - eps)*n <= |A_i| <= (1/4 + eps)*n."""
    x1, x2 = parts
    _check_parts(g, [x1, x2])
    n = g.n
    if x1.bit_count() != x2.bit_count():
        raise PremiseError("bipartition must be balanced")
    adj = g.adj(view)
    for v in bits(x1):
        if (adj[v] & x2).bit_count() < (1 / 4 - eps) * n:
            raise PremiseError(f"vertex {v} cross-degree below (1/4 - eps)*n")
    for v in bits(x2):
        if (adj[v] & x1).bit_count() < (1 / 4 - eps) * n:
            raise PremiseError(f"vertex {v} cross-degree below (1/4 - eps)*n")
    m = max_matching(g, view, bipartition=x1)
    if m.is_perfect(g):
        return m
    # Hall violator: X1 vertices reachable from an exposed X1 vertex by
    # alternating paths; its neighbourhood is smaller than itself.
    mate = {u: v for u, v in m.edges} | {v: u for u, v in m.edges}
    exposed = [v for v in bits(x1) if v not in mate]
    reach_x1 = mask_of(exposed)
    frontier = reach_x1
    seen_x2 = 0
    while frontier:
        layer = 0
        for v in bits(frontier):
            layer |= adj[v] & x2
        layer &= ~seen_x2
        seen_x2 |= layer
        nxt = 0
        for v in bits(layer):
            if v in mate:
                nxt |= 1 << mate[v]
        frontier = nxt & ~reach_x1
        reach_x1 |= frontier
    a1 = reach_x1
    a2 = x2 & ~seen_x2
    assert e_between(g, a1, a2, view) == 0
    lo, hi = (1 / 4 - eps) * n, (1 / 4 + eps) * n
    if not (lo <= a1.bit_count() <= hi and lo <= a2.bit_count() <= hi):
        raise ConstructionError(
            "Hall violator found but outside the lemma's size window "
            f"(|A1|={a1.bit_count()}, |A2|={a2.bit_count()})"
        )
    return a1, a2


@dataclass(frozen=True)
class BipTechnicalOutcome:
    """Tagged outcome of the five-way bipartite dichotomy.  ``kind`` is
    one of matching, not-2-connected, small-neighbourhood,
    large-independent, independent-pair, exhausted."""

    kind: str
    matching: Matching | None = None
    witness: StabilityWitness | None = None
    detail: str = ""


def bipartite_technical(
    g: ColouredGraph, parts: tuple[int, int], eps: float, view: str = UNION
) -> BipTechnicalOutcome:
    """Five-way dichotomy for near-balanced partitions with large cross
    degrees.  Outcomes are tried in the order: perfect matching, not
    2-connected, small-neighbourhood independent set, large independent
    set inside the strictly bigger part, split independent set.  Every
    witness is verified before being returned; if nothing verifies, a
    distinguished exhaustion report is returned."""
    x1, x2 = parts
    _check_parts(g, [x1, x2])
    n = g.n
    if n % 2:
        raise PremiseError("needs an even number of vertices")
    adj = g.adj(view)
    for i, (own, other) in enumerate(((x1, x2), (x2, x1))):
        if own.bit_count() < (1 / 2 - eps) * n:
            raise PremiseError(f"part {i} smaller than (1/2 - eps)*n")
        for v in bits(own):
            if (adj[v] & other).bit_count() < (3 / 4 - eps) * n - own.bit_count():
                raise PremiseError(f"vertex {v} cross-degree too small")

    m = max_matching(g, view)
    if m.is_perfect(g):
        return BipTechnicalOutcome("matching", matching=m)

    two_conn, cut = is_two_connected(g, view)
    if not two_conn:
        w = StabilityWitness("not-2-connected", (cut,), eps)
        assert w.verify(g, view)
        return BipTechnicalOutcome("not-2-connected", witness=w)

    for w in _bip_technical_witnesses(g, view, x1, x2, eps):
        assert w.verify(g, view)
        return BipTechnicalOutcome(w.variant, witness=w)
    return BipTechnicalOutcome(
        "exhausted", detail="no perfect matching, 2-connected, and no witness verified"
    )


def _bip_technical_witnesses(g, view, x1, x2, eps):
    """Candidate witnesses for outcomes 3..5, best-effort in lemma order.

    Small n: exhaustive subset search.  Larger n: candidates extracted
    from the components left by a structural Tutte set, mirroring the
    proof.
    """
    n = g.n
    small_nb_size = (1 / 4 - 4 * eps) * n
    small_nb_cap = (1 / 4 + 3 * eps) * n
    large_ind = (1 / 2 - eps) * n
    split_whole = (1 / 2 - 6 * eps) * n
    split_each = (1 / 4 - 9 * eps) * n

    if n <= TUTTE_CAP:
        masks = range(1, 1 << n)
        # outcome 3
        for side in (x1, x2):
            for a in masks:
                if a & ~side:
                    continue
                if a.bit_count() >= small_nb_size and _is_independent(g, view, a):
                    nb = _neighbourhood(g, view, a)
                    if nb.bit_count() <= small_nb_cap:
                        yield StabilityWitness("small-neighbourhood", (a, nb), eps)
                        return
        # outcome 4: the displayed statement's part indices are
        # inconsistent with its proof, so whichever part yields the
        # witness is accepted (and it must be strictly bigger).
        for side, other in ((x1, x2), (x2, x1)):
            if side.bit_count() > other.bit_count():
                for a in masks:
                    if a & ~side:
                        continue
                    if a.bit_count() >= large_ind and _is_independent(g, view, a):
                        yield StabilityWitness("large-independent", (a,), eps)
                        return
        # outcome 5
        for a in masks:
            if (
                a.bit_count() >= split_whole
                and (a & x1).bit_count() >= split_each
                and (a & x2).bit_count() >= split_each
                and _is_independent(g, view, a)
            ):
                yield StabilityWitness("independent-pair", (a, a & x1, a & x2), eps)
                return
        return

    s = tutte_violator_from_structure(g, view)
    if s is None:
        return
    comps = _components(g.adj(view), g.vertex_mask & ~s)
    singletons = 0
    one_per_comp = 0
    for comp in comps:
        one_per_comp |= comp & -comp
        if comp.bit_count() == 1:
            singletons |= comp
    # outcome 3: isolated vertices of one side form the independent set
    for side in (x1, x2):
        a = singletons & side
        if a.bit_count() >= small_nb_size and _is_independent(g, view, a):
            nb = _neighbourhood(g, view, a)
            if nb.bit_count() <= small_nb_cap:
                yield StabilityWitness("small-neighbourhood", (a, nb), eps)
                return
    # outcome 4
    for side, other in ((x1, x2), (x2, x1)):
        if side.bit_count() > other.bit_count():
            a = one_per_comp & side
            if (
                a.bit_count() >= large_ind
                and (one_per_comp & other) == 0
                and _is_independent(g, view, a)
            ):
                yield StabilityWitness("large-independent", (a,), eps)
                return
    # outcome 5
    a = one_per_comp
    if (
        a.bit_count() >= split_whole
        and (a & x1).bit_count() >= split_each
        and (a & x2).bit_count() >= split_each
        and _is_independent(g, view, a)
    ):
        yield StabilityWitness("independent-pair", (a, a & x1, a & x2), eps)
