"""Constructive absorbing paths: sampled disjoint anchor families,
pair (strong) and quadruple (weak) gadgets, the explicit re-routing
absorption, and whole-set absorption.

A strong gadget for parameter l is a spine path u_1..u_{4l} with ends
(x_j, y_j) = (u_1, u_{4l}) plus connector paths of exactly 4l - 1 edges:
P_i joins u_i and u_{i+3} for odd i <= 4l - 5, and P_{4l-3} joins
u_{4l-3} and u_{4l-1}.  The gadget occupies the path as the block

    Q_j = (u_2 u_1 P_1 u_4 u_3 P_3 u_6 ... u_{4l-3} P_{4l-3} u_{4l-1} u_{4l})

of length 8l^2 - 4l + 1, and a vertex w adjacent to both u_1 and u_{4l}
is absorbed by re-routing the block to

    (u_2 u_3 P_3 u_6 u_7 P_7 ... u_{4l-1} P_{4l-3} u_{4l-3} u_{4l-4}
     P_{4l-7} ... u_5 u_4 P_1 u_1 w u_{4l}),

which has the same ends and vertex set V(Q_j) + {w}.

A weak gadget (for a graph with bipartition {X, Y}) hangs on a
quadruple (a, b, c, d) with a, c in Y and b, d in X, realized by two
alternating spines (a_1 b_1 ... a_{2l} b_{2l}) and
(c_1 d_1 ... c_{2l} d_{2l}) with a_1 = a, b_{2l} = b, c_1 = c,
d_{2l} = d, plus connectors P_i, Q_i, R with the listed ends; it
absorbs a pair (x, y) with a, c in N(x) and b, d in N(y).  The index
scheme degenerates for l = 1 (P_1 would need two different end pairs),
so weak construction uses l >= 2.

All wiring picks the lowest-index fresh vertex among valid
continuations, with no backtracking: failures surface as
ConstructionError / CapacityError, never silent retries.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, replace

from .errors import CapacityError, ConstructionError, PremiseError
from .graph import ColouredGraph, bits, mask_of
from .robust import check_robust, count_paths


@dataclass(frozen=True)
class AnchorFamily:
    """Disjoint anchor tuples (pairs or quadruples) with per-vertex (or
    per-cross-pair) coverage at least ``threshold``."""

    members: tuple[tuple[int, ...], ...]
    p: float
    arity: int
    seed: int
    threshold: int

    def __len__(self) -> int:
        return len(self.members)


def _coverage_threshold(p: float, alpha: float, n: int, arity: int) -> int:
    # The claim's displayed bound (p*alpha*n^2/16) is dimensionally
    # inconsistent with |family| <= p*n; its proof derives order
    # p*alpha^2*n, so that is used here (alpha^4 for quadruples), with a
    # floor of one so coverage always implies at least one usable gadget.
    exponent = 2 if arity == 2 else 4
    return max(1, math.floor(p * alpha**exponent * n / 16))


def sample_anchors(
    g: ColouredGraph,
    view: str,
    p: float,
    arity: int,
    seed: int,
    alpha: float,
    bipartition: tuple[int, int] | None = None,
    max_retries: int = 20,
) -> AnchorFamily:
    """Bernoulli-sample anchor tuples (each candidate kept with
    probability p/n), delete intersecting members post-sampling, and
    retry with fresh derived seeds until the coverage floor holds.

    Strong (arity 2): every vertex needs >= threshold pairs inside its
    neighbourhood.  Weak (arity 4, bipartition required): every cross
    pair (x, y) needs >= threshold quadruples (a, b, c, d) with
    a, c in N(x) and b, d in N(y).
    """
    n = g.n
    if arity not in (2, 4):
        raise ValueError("arity must be 2 or 4")
    if arity == 4 and bipartition is None:
        raise PremiseError("quadruple sampling needs the bipartition")
    adj = g.adj(view)
    delta = min(a.bit_count() for a in adj) if n else 0
    if delta < alpha * n:
        raise PremiseError(f"min degree {delta} below alpha*n = {alpha * n}")
    threshold = _coverage_threshold(p, alpha, n, arity)
    cap = math.floor(p * n)
    if cap < 1:
        raise PremiseError("p too small: family size cap below 1")
    for attempt in range(max_retries):
        rng = random.Random(seed + 7919 * attempt)
        members = _draw_members(g, rng, p, arity, bipartition)
        members = _delete_intersecting(members)[:cap]
        if _coverage_ok(adj, members, threshold, arity, bipartition):
            return AnchorFamily(tuple(members), p, arity, seed, threshold)
    raise ConstructionError(
        f"anchor coverage {threshold} unachievable after {max_retries} retries"
    )


def _draw_members(g, rng, p, arity, bipartition):
    n = g.n
    members = []
    if arity == 2:
        prob = p / n
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < prob:
                    members.append((u, v))
    else:
        bx, by = bipartition
        xs = sorted(bits(bx))
        ys = sorted(bits(by))
        # expected family size p*n/2, mirroring the pair case
        draws = max(1, round(p * n / 2))
        for _ in range(draws):
            a, c = rng.sample(ys, 2)
            b, d = rng.sample(xs, 2)
            members.append((a, b, c, d))
    return members


def _delete_intersecting(members):
    kept = []
    used = 0
    for m in members:
        mk = mask_of(m)
        if mk.bit_count() == len(m) and not mk & used:
            kept.append(m)
            used |= mk
    return kept


def _coverage_ok(adj, members, threshold, arity, bipartition) -> bool:
    if arity == 2:
        for v in range(len(adj)):
            count = sum(1 for (x, y) in members if adj[v] >> x & 1 and adj[v] >> y & 1)
            if count < threshold:
                return False
        return True
    bx, by = bipartition
    for x in bits(bx):
        for y in bits(by):
            count = sum(
                1
                for (a, b, c, d) in members
                if adj[x] >> a & 1 and adj[x] >> c & 1 and adj[y] >> b & 1 and adj[y] >> d & 1
            )
            if count < threshold:
                return False
    return True


# -- uniform path length -----------------------------------------------

def find_uniform_l(
    g: ColouredGraph,
    view: str,
    k_max: int,
    threshold_beta: float = 1e-4,
    bipartition: tuple[int, int] | None = None,
    pair_samples: int = 24,
    seed: int = 0,
) -> tuple[int, dict[tuple[int, int], int]]:
    """Smallest l <= k_max such that sampled vertex pairs all have at
    least max(1, beta * n^(4l-2)) paths of 4l - 1 edges between them.
    Returns (l, certificate of the counts).  Raises ConstructionError if
    no l works (e.g. disconnected views)."""
    n = g.n
    rng = random.Random(seed)
    if bipartition is None:
        all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    else:
        bx, by = bipartition
        all_pairs = [(u, v) for u in bits(bx) for v in bits(by)]
    if len(all_pairs) > pair_samples:
        pairs = rng.sample(all_pairs, pair_samples)
    else:
        pairs = all_pairs
    for l in range(1, k_max + 1):
        need = max(1, math.ceil(threshold_beta * n ** (4 * l - 2)))
        cert: dict[tuple[int, int], int] = {}
        ok = True
        for u, v in pairs:
            cnt = count_paths(g, view, u, v, 4 * l - 2)
            cert[(u, v)] = cnt
            if cnt < need:
                ok = False
                break
        if ok:
            return l, cert
    raise ConstructionError(f"no uniform path length found with l <= {k_max}")


# -- gadgets ------------------------------------------------------------

@dataclass(frozen=True)
class Gadget:
    """One absorbing gadget and its position inside the host path.

    ``spine`` holds u_1..u_{4l} (strong) or a_1 b_1..a_{2l} b_{2l}
    (weak, with ``spine2`` = c_1 d_1..c_{2l} d_{2l}); ``connectors``
    maps the construction's connector names to their interior vertex
    tuples, oriented from the first-named end to the second."""

    anchor: tuple[int, ...]
    spine: tuple[int, ...]
    spine2: tuple[int, ...]
    connectors: dict
    start: int
    length: int
    used: bool = False

    def block_vertices(self) -> list[int]:
        out = list(self.spine) + list(self.spine2)
        for interior in self.connectors.values():
            out.extend(interior)
        return out


def _strong_block(spine, conn) -> list[int]:
    l4 = len(spine)
    seq = [spine[1], spine[0]]
    for i in range(1, l4 - 4, 2):  # odd i = 1..4l-5 (1-based)
        seq += conn[("P", i)]
        seq += [spine[i + 2], spine[i + 1]]
    i = l4 - 3
    seq += conn[("P", i)]
    seq += [spine[l4 - 2], spine[l4 - 1]]
    return seq


def _strong_rewired(spine, conn, w) -> list[int]:
    l4 = len(spine)
    seq = [spine[1], spine[2]]
    i = 3
    while i <= l4 - 5:
        seq += conn[("P", i)]
        seq += [spine[i + 2], spine[i + 3]]
        i += 4
    seq += list(reversed(conn[("P", l4 - 3)]))
    if l4 > 4:
        seq += [spine[l4 - 4], spine[l4 - 5]]
        j = l4 - 7
        while j > 1:
            seq += list(reversed(conn[("P", j)]))
            seq += [spine[j - 1], spine[j - 2]]
            j -= 4
        seq += list(reversed(conn[("P", 1)]))
    seq += [spine[0], w, spine[l4 - 1]]
    return seq


def _weak_block(s1, s2, conn, l) -> list[int]:
    a = lambda i: s1[2 * i - 2]  # noqa: E731
    b = lambda i: s1[2 * i - 1]  # noqa: E731
    c = lambda i: s2[2 * i - 2]  # noqa: E731
    d = lambda i: s2[2 * i - 1]  # noqa: E731
    seq = [b(1), a(1)]
    seq += conn[("P", 1)]
    seq += [c(2 * l), d(2 * l)]
    for i in range(2 * l, 2, -1):
        seq += conn[("Q", i)]
        seq += [c(i - 1), d(i - 1)]
    seq += conn[("Q", 2)]
    seq += [d(1), c(1)]
    seq += conn[("R",)]
    seq += [b(2), a(2)]
    for i in range(2, 2 * l - 1):
        seq += conn[("P", i)]
        seq += [b(i + 1), a(i + 1)]
    seq += conn[("P", 2 * l - 1)]
    seq += [a(2 * l), b(2 * l)]
    return seq


def _weak_rewired(s1, s2, conn, l, x, y) -> list[int]:
    a = lambda i: s1[2 * i - 2]  # noqa: E731
    b = lambda i: s1[2 * i - 1]  # noqa: E731
    c = lambda i: s2[2 * i - 2]  # noqa: E731
    d = lambda i: s2[2 * i - 1]  # noqa: E731
    seq = [b(1)]
    for i in range(2, 2 * l - 1, 2):
        seq += [a(i)]
        seq += conn[("P", i)]
        seq += [b(i + 1)]
    seq += [a(2 * l)]
    seq += list(reversed(conn[("P", 2 * l - 1)]))
    seq += [a(2 * l - 1)]
    for i in range(2 * l - 3, 2, -2):
        seq += [b(i + 1)]
        seq += list(reversed(conn[("P", i)]))
        seq += [a(i)]
    seq += [b(2)]
    seq += list(reversed(conn[("R",)]))
    seq += [c(1), x, a(1)]
    seq += conn[("P", 1)]
    seq += [c(2 * l)]
    for i in range(2 * l - 1, 2, -2):
        seq += [d(i)]
        seq += conn[("Q", i)]
        seq += [c(i - 1)]
    seq += [d(1)]
    seq += list(reversed(conn[("Q", 2)]))
    seq += [d(2)]
    for i in range(4, 2 * l + 1, 2):
        seq += [c(i - 1)]
        seq += list(reversed(conn[("Q", i)]))
        seq += [d(i)]
    seq += [y, b(2 * l)]
    return seq


def _gadget_block(gadget: Gadget) -> list[int]:
    if gadget.spine2:
        return _weak_block(gadget.spine, gadget.spine2, gadget.connectors, len(gadget.spine) // 4)
    return _strong_block(gadget.spine, gadget.connectors)


def _gadget_rewired(gadget: Gadget, absorbed: tuple[int, ...]) -> list[int]:
    if gadget.spine2:
        x, y = absorbed
        return _weak_rewired(
            gadget.spine, gadget.spine2, gadget.connectors, len(gadget.spine) // 4, x, y
        )
    (w,) = absorbed
    return _strong_rewired(gadget.spine, gadget.connectors, w)


# -- constrained path search ---------------------------------------------

def _exact_length_path(adj, a, b, length, occupied) -> list[int]:
    """Interior vertices of an a-b path with exactly ``length`` edges,
    greedy lowest-index with no backtracking; interiors avoid
    ``occupied``.  Raises ConstructionError on a dead end."""
    if length == 1:
        if not adj[a] >> b & 1:
            raise ConstructionError(f"no edge ({a}, {b}) for length-1 connector")
        return []
    interior = []
    cur = a
    blocked = occupied | 1 << a | 1 << b
    for step in range(1, length):
        options = adj[cur] & ~blocked
        if step == length - 1:
            options &= adj[b]
        if not options:
            raise ConstructionError(
                f"exact-length path {a}->{b} (length {length}) stuck at step {step}"
            )
        nxt = (options & -options).bit_length() - 1
        interior.append(nxt)
        blocked |= 1 << nxt
        cur = nxt
    return interior


def _parity_path(adj, a, b, parity, occupied, cap) -> list[int]:
    """Interior of a shortest a-b path with edge-count of the given
    parity (0 even, 1 odd), interiors avoiding ``occupied``; BFS with
    lowest-index expansion, capped length."""
    blocked = occupied | 1 << a
    parent: dict[tuple[int, int], tuple[int, int] | None] = {(a, 0): None}
    frontier = [(a, 0)]
    depth = 0
    while frontier and depth < cap:
        depth += 1
        nxt_frontier = []
        for v, par in frontier:
            for u in bits(adj[v]):
                state = (u, par ^ 1)
                if u == b:
                    if state[1] == parity % 2:
                        path = [u]
                        cur = (v, par)
                        while cur is not None:
                            path.append(cur[0])
                            cur = parent[cur]
                        path.reverse()
                        return path[1:-1]
                    continue
                if blocked >> u & 1 or state in parent:
                    continue
                parent[state] = (v, par)
                nxt_frontier.append(state)
        frontier = nxt_frontier
    raise ConstructionError(f"no parity-{parity % 2} path {a}->{b} within {cap} edges")


# -- gadget construction ---------------------------------------------------

def build_gadget(
    g: ColouredGraph,
    view: str,
    anchor: tuple[int, ...],
    l: int,
    occupied: int,
    bipartition: tuple[int, int] | None = None,
) -> Gadget:
    """Wire one gadget for ``anchor`` using only vertices outside
    ``occupied`` (the anchor itself excepted).  Strong for pairs, weak
    for quadruples (which need l >= 2 and the bipartition).  The
    assembled block is edge-verified before returning."""
    adj = g.adj(view)
    if len(anchor) == 2:
        x, y = anchor
        occ = occupied | mask_of(anchor)
        spine = [x] + _exact_length_path(adj, x, y, 4 * l - 1, occ) + [y]
        occ |= mask_of(spine)
        conn = {}
        for i in list(range(1, 4 * l - 4, 2)) + [4 * l - 3]:
            u_i = spine[i - 1]
            u_to = spine[i + 2] if i <= 4 * l - 5 else spine[4 * l - 2]
            interior = _exact_length_path(adj, u_i, u_to, 4 * l - 1, occ)
            conn[("P", i)] = tuple(interior)
            occ |= mask_of(interior)
        gadget = Gadget(tuple(anchor), tuple(spine), (), conn, start=-1, length=0)
    else:
        if l < 2:
            raise PremiseError("weak gadgets need l >= 2 (the wiring degenerates at l = 1)")
        if bipartition is None:
            raise PremiseError("weak gadgets need the bipartition")
        a0, b0, c0, d0 = anchor
        occ = occupied | mask_of(anchor)
        s1 = [a0] + _exact_length_path(adj, a0, b0, 4 * l - 1, occ) + [b0]
        occ |= mask_of(s1)
        s2 = [c0] + _exact_length_path(adj, c0, d0, 4 * l - 1, occ) + [d0]
        occ |= mask_of(s2)
        a = lambda i: s1[2 * i - 2]  # noqa: E731
        b = lambda i: s1[2 * i - 1]  # noqa: E731
        c = lambda i: s2[2 * i - 2]  # noqa: E731
        d = lambda i: s2[2 * i - 1]  # noqa: E731
        wanted: list[tuple[tuple, int, int]] = [(("P", 1), a(1), c(2 * l))]
        for i in range(2, 2 * l - 1):
            wanted.append((("P", i), a(i), b(i + 1)))
        wanted.append((("P", 2 * l - 1), a(2 * l - 1), a(2 * l)))
        wanted.append((("Q", 2), d(2), d(1)))
        for i in range(3, 2 * l + 1):
            wanted.append((("Q", i), d(i), c(i - 1)))
        wanted.append((("R",), c(1), b(2)))
        conn = {}
        for key, u, v in wanted:
            side = bipartition[0]
            parity = 0 if (side >> u & 1) == (side >> v & 1) else 1
            interior = _parity_path(adj, u, v, parity, occ, cap=max(4 * l, 6))
            conn[key] = tuple(interior)
            occ |= mask_of(interior)
        gadget = Gadget(tuple(anchor), tuple(s1), tuple(s2), conn, start=-1, length=0)
    block = _gadget_block(gadget)
    _verify_sequence(g, view, block, "gadget block")
    return replace(gadget, length=len(block))


def _verify_sequence(g: ColouredGraph, view: str, seq: list[int], what: str) -> None:
    assert len(set(seq)) == len(seq), f"{what} repeats a vertex"
    for i in range(len(seq) - 1):
        if not g.has_edge(seq[i], seq[i + 1], view):
            raise ConstructionError(f"{what}: missing edge ({seq[i]}, {seq[i + 1]})")


# -- the absorbing path -----------------------------------------------------

@dataclass(frozen=True)
class AbsorbingPath:
    """A path with embedded gadget registry.  Operations return new
    values; ``used`` flags advance monotonically."""

    graph: ColouredGraph
    view: str
    mode: str  # "strong" | "weak"
    l: int
    path: tuple[int, ...]
    gadgets: tuple[Gadget, ...]
    rho: float
    bipartition: tuple[int, int] | None = None

    @property
    def ends(self) -> tuple[int, int]:
        return self.path[0], self.path[-1]

    @property
    def vertex_set(self) -> int:
        return mask_of(self.path)

    @property
    def capacity(self) -> int:
        return sum(1 for gd in self.gadgets if not gd.used)

    def validate(self) -> None:
        _verify_sequence(self.graph, self.view, list(self.path), "absorbing path")
        for gd in self.gadgets:
            blk = list(self.path[gd.start : gd.start + gd.length])
            want = _gadget_block(gd) if not gd.used else None
            if want is not None:
                assert blk == want, "gadget registry out of sync with the path"


def build_absorbing_path(
    g: ColouredGraph,
    view: str,
    rho: float,
    mode: str,
    seed: int,
    alpha: float = 0.25,
    k: int = 4,
    bipartition: tuple[int, int] | None = None,
    l: int | None = None,
) -> AbsorbingPath:
    """Build a full absorbing path of at most rho*n vertices: verify
    robustness, pick the uniform length parameter, sample anchors sized
    to the rho budget, wire a gadget for every anchor and join the
    blocks end-to-end with fresh connectors.
    """
    n = g.n
    if mode not in ("strong", "weak"):
        raise ValueError("mode must be 'strong' or 'weak'")
    if mode == "weak" and bipartition is None:
        raise PremiseError("weak mode needs a bipartition")
    chk = check_robust(g, view, g.vertex_mask, alpha, k, n, bipartition)
    if chk.verdict == "none":
        raise PremiseError("graph not robust at the declared (alpha, k)")
    if l is None:
        l, _cert = find_uniform_l(g, view, k, bipartition=bipartition, seed=seed)
    if mode == "weak":
        l = max(l, 2)

    if mode == "strong":
        gadget_size = 8 * l * l - 4 * l + 2
        joint = 4 * l - 2  # exact-length inter-gadget connector interior
        arity = 2
    else:
        gadget_size = 8 * l + 3  # two spines + minimal even/odd connectors
        joint = 1
        arity = 4
    budget = math.floor(rho * n)
    n_target = (budget + joint) // (gadget_size + joint)
    if n_target < 1:
        raise CapacityError(f"rho budget {budget} cannot fit one gadget (size {gadget_size})")
    p = 2 * n_target / n
    family = sample_anchors(g, view, p, arity, seed, alpha, bipartition)
    if len(family) > n_target:
        family = AnchorFamily(
            family.members[:n_target], family.p, family.arity, family.seed, family.threshold
        )
    if len(family) == 0:
        raise ConstructionError("anchor sampling produced an empty family")

    occupied = 0
    for m in family.members:
        occupied |= mask_of(m)
    gadgets: list[Gadget] = []
    for anchor in family.members:
        gd = build_gadget(g, view, anchor, l, occupied, bipartition)
        occupied |= mask_of(gd.block_vertices())
        gadgets.append(gd)

    adj = g.adj(view)
    path: list[int] = []
    placed: list[Gadget] = []
    for idx, gd in enumerate(gadgets):
        block = _gadget_block(gd)
        if idx > 0:
            prev_end = path[-1]
            nxt_start = block[0]
            if mode == "strong":
                interior = _exact_length_path(
                    adj, prev_end, nxt_start, 4 * l - 1, occupied
                )
            else:
                side = bipartition[0]
                parity = 0 if (side >> prev_end & 1) == (side >> nxt_start & 1) else 1
                interior = _parity_path(adj, prev_end, nxt_start, parity, occupied, cap=4 * l)
            occupied |= mask_of(interior)
            path.extend(interior)
        placed.append(replace(gd, start=len(path)))
        path.extend(block)

    if len(path) > budget:
        raise CapacityError(f"absorbing path has {len(path)} vertices > rho*n = {budget}")
    ap = AbsorbingPath(
        g, view, mode, l, tuple(path), tuple(placed), rho, bipartition
    )
    ap.validate()
    return ap


def _splice(ap: AbsorbingPath, gadget_id: int, absorbed: tuple[int, ...]) -> AbsorbingPath:
    gd = ap.gadgets[gadget_id]
    if gd.used:
        raise PremiseError(f"gadget {gadget_id} already used")
    for w in absorbed:
        if ap.vertex_set >> w & 1:
            raise PremiseError(f"vertex {w} already on the path")
    new_block = _gadget_rewired(gd, absorbed)
    old_ends = ap.ends
    old_set = ap.vertex_set
    path = list(ap.path)
    assert path[gd.start : gd.start + gd.length] == _gadget_block(gd)
    path[gd.start : gd.start + gd.length] = new_block
    shift = len(new_block) - gd.length
    new_gadgets = []
    for i, other in enumerate(ap.gadgets):
        if i == gadget_id:
            new_gadgets.append(replace(other, length=len(new_block), used=True))
        elif other.start > gd.start:
            new_gadgets.append(replace(other, start=other.start + shift))
        else:
            new_gadgets.append(other)
    out = replace(ap, path=tuple(path), gadgets=tuple(new_gadgets))
    _verify_sequence(out.graph, out.view, list(out.path), "absorbed path")
    assert out.ends == old_ends, "absorption changed the path ends"
    assert out.vertex_set == old_set | mask_of(absorbed), "vertex set mismatch after absorption"
    return out


def absorb_one(ap: AbsorbingPath, gadget_id: int, w: int) -> AbsorbingPath:
    """Absorb one vertex into a strong gadget: w must be adjacent to both
    anchor endpoints and the gadget must be unused."""
    if ap.mode != "strong":
        raise PremiseError("absorb_one absorbs single vertices; weak mode absorbs pairs")
    gd = ap.gadgets[gadget_id]
    x, y = gd.anchor
    adj = ap.graph.adj(ap.view)
    if not (adj[w] >> x & 1 and adj[w] >> y & 1):
        raise PremiseError(f"vertex {w} not adjacent to both anchors ({x}, {y})")
    return _splice(ap, gadget_id, (w,))


def absorb_pair(ap: AbsorbingPath, gadget_id: int, x: int, y: int) -> AbsorbingPath:
    """Absorb a cross pair (x in X, y in Y) into a weak gadget: x must
    see a and c, y must see b and d."""
    if ap.mode != "weak":
        raise PremiseError("absorb_pair is for weak mode")
    bx, by = ap.bipartition
    if not (bx >> x & 1 and by >> y & 1):
        x, y = y, x
        if not (bx >> x & 1 and by >> y & 1):
            raise PremiseError("absorbed pair must have one vertex per side")
    gd = ap.gadgets[gadget_id]
    a, b, c, d = gd.anchor
    adj = ap.graph.adj(ap.view)
    if not (adj[x] >> a & 1 and adj[x] >> c & 1):
        raise PremiseError(f"vertex {x} must see anchors a={a} and c={c}")
    if not (adj[y] >> b & 1 and adj[y] >> d & 1):
        raise PremiseError(f"vertex {y} must see anchors b={b} and d={d}")
    return _splice(ap, gadget_id, (x, y))


def absorb_set(ap: AbsorbingPath, w_mask: int) -> AbsorbingPath:
    """Absorb a whole vertex set by greedy gadget assignment: each
    vertex (strong) or cross pair (weak) takes the lowest-index unused
    gadget adjacent to it.  Raises ConstructionError naming the stuck
    vertex if assignment fails."""
    if w_mask & ap.vertex_set:
        raise PremiseError("W must be disjoint from the path")
    adj = ap.graph.adj(ap.view)
    if ap.mode == "strong":
        if w_mask.bit_count() > ap.capacity:
            raise PremiseError(f"|W| exceeds remaining gadget capacity {ap.capacity}")
        out = ap
        for w in bits(w_mask):
            for gid, gd in enumerate(out.gadgets):
                x, y = gd.anchor
                if not gd.used and adj[w] >> x & 1 and adj[w] >> y & 1:
                    out = absorb_one(out, gid, w)
                    break
            else:
                raise ConstructionError(f"no unused gadget can absorb vertex {w}")
        return out
    bx, by = ap.bipartition
    xs = sorted(bits(w_mask & bx))
    ys = sorted(bits(w_mask & by))
    if len(xs) != len(ys):
        raise PremiseError("weak absorption needs |W on X| = |W on Y|")
    if len(xs) > ap.capacity:
        raise PremiseError(f"|W|/2 exceeds remaining gadget capacity {ap.capacity}")
    out = ap
    for x, y in zip(xs, ys):
        for gid, gd in enumerate(out.gadgets):
            a, b, c, d = gd.anchor
            if (
                not gd.used
                and adj[x] >> a & 1
                and adj[x] >> c & 1
                and adj[y] >> b & 1
                and adj[y] >> d & 1
            ):
                out = absorb_pair(out, gid, x, y)
                break
        else:
            raise ConstructionError(f"no unused gadget can absorb the pair ({x}, {y})")
    return out
