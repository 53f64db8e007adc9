"""Symbolic extremal constructions: block models (sizes affine in a
scale parameter m, colour rules per block pair), instantiation,
sharpness verification against the exact solver, and a small-scale
search for models matching a caption target (order, minimum degree as
affine functions of m).

The search enumerates {R, B}-coloured rule matrices first; "arbitrary"
regions are then recovered by greedy promotion, re-verifying sharpness
across the seed battery after each promoted cell.  A model whose
arbitrary cells all pass is at least as general as its fixed base, and
any sharp model with arbitrary cells has a sharp all-red completion, so
enumerating fixed bases loses no families.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import random
from dataclasses import dataclass, field, replace

from .errors import GraphFormatError
from .graph import ColouredGraph, min_degree
from .partition import solve

RULES = ("R", "B", "none", "any")


@dataclass(frozen=True)
class BlockModel:
    """Blocks with sizes a*m + b, a symmetric pair-rule matrix and
    per-block intra rules, all over {"R", "B", "none", "any"}."""

    blocks: tuple[tuple[int, int], ...]
    rules: tuple[tuple[str, ...], ...]
    intra: tuple[str, ...]
    provenance: str = ""

    def __post_init__(self):
        k = len(self.blocks)
        assert len(self.rules) == k and all(len(r) == k for r in self.rules)
        assert len(self.intra) == k
        for i in range(k):
            for j in range(k):
                assert self.rules[i][j] == self.rules[j][i], "rule matrix must be symmetric"
                assert self.rules[i][j] in RULES
            assert self.intra[i] in RULES

    def sizes_at(self, m: int) -> list[int]:
        out = [a * m + b for a, b in self.blocks]
        if any(s < 0 for s in out):
            raise ValueError(f"negative block size at m={m}")
        return out

    def order_at(self, m: int) -> int:
        return sum(self.sizes_at(m))

    def to_json(self) -> str:
        return json.dumps(
            {
                "blocks": [{"a": a, "b": b} for a, b in self.blocks],
                "intra": list(self.intra),
                "provenance": self.provenance,
                "rules": [list(r) for r in self.rules],
            },
            sort_keys=True,
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "BlockModel":
        try:
            payload = json.loads(text)
            return cls(
                tuple((int(bl["a"]), int(bl["b"])) for bl in payload["blocks"]),
                tuple(tuple(r) for r in payload["rules"]),
                tuple(payload["intra"]),
                payload.get("provenance", ""),
            )
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise GraphFormatError("malformed", f"bad block model: {exc}") from exc


def instantiate(model: BlockModel, m: int, arbitrary_seed: int = 0) -> ColouredGraph:
    """Concrete 2-coloured graph at scale m; "any" cells get each edge
    coloured red or blue i.i.d. under the seed."""
    sizes = model.sizes_at(m)
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    rng = random.Random(arbitrary_seed)
    edges = []

    def emit(u: int, v: int, rule: str) -> None:
        if rule == "none":
            return
        colour = rule if rule in ("R", "B") else ("R" if rng.random() < 0.5 else "B")
        edges.append((u, v, colour))

    k = len(sizes)
    for i in range(k):
        for u in range(offsets[i], offsets[i + 1]):
            for v in range(u + 1, offsets[i + 1]):
                emit(u, v, model.intra[i])
    for i in range(k):
        for j in range(i + 1, k):
            for u in range(offsets[i], offsets[i + 1]):
                for v in range(offsets[j], offsets[j + 1]):
                    emit(u, v, model.rules[i][j])
    return ColouredGraph.from_edges(offsets[-1], edges)


def _fixed(model: BlockModel, colour: str) -> BlockModel:
    rules = tuple(
        tuple(colour if r == "any" else r for r in row) for row in model.rules
    )
    intra = tuple(colour if r == "any" else r for r in model.intra)
    return replace(model, rules=rules, intra=intra)


def _has_any(model: BlockModel) -> bool:
    return any("any" in row for row in model.rules) or "any" in model.intra


@dataclass
class SharpnessReport:
    m: int
    n: int
    delta: int
    target: int
    fills: list[tuple[str, bool]] = field(default_factory=list)  # (label, solver says NONE)

    @property
    def degree_ok(self) -> bool:
        return self.delta == self.target

    @property
    def passed(self) -> bool:
        return self.degree_ok and bool(self.fills) and all(ok for _, ok in self.fills)


def verify_sharpness(model: BlockModel, m: int, seeds: int = 16) -> SharpnessReport:
    """Sharpness at scale m: the instantiated order-n graph must have
    minimum degree exactly ceil(3n/4) - 1 and admit NO partition for
    every fill of the arbitrary regions (both monochromatic extremes
    plus ``seeds`` random fills; a single fill if nothing is arbitrary).
    """
    n = model.order_at(m)
    target = math.ceil(3 * n / 4) - 1
    first = instantiate(model, m, 0)
    delta = min_degree(first) if n else 0
    report = SharpnessReport(m, n, delta, target)
    if not report.degree_ok:
        report.fills.append(("degree-mismatch", False))
        return report
    if _has_any(model):
        fills = [("all-R", instantiate(_fixed(model, "R"), m)),
                 ("all-B", instantiate(_fixed(model, "B"), m))]
        fills += [(f"seed-{s}", instantiate(model, m, s)) for s in range(seeds)]
    else:
        fills = [("fixed", first)]
    for label, g in fills:
        report.fills.append((label, solve(g) is None))
        if not report.fills[-1][1]:
            break  # one counterexample settles it
    return report


def hereditary_extremal_check(model: BlockModel, m: int, seeds: int = 4) -> list[bool]:
    """For each vertex of the instantiation: does deleting it leave a
    graph that still has no partition under all tested fills?  Some
    caption families are hereditary in this sense, others are not; this
    records which."""
    n = model.order_at(m)
    if _has_any(model):
        variants = [_fixed(model, "R"), _fixed(model, "B")]
        graphs = [instantiate(v, m) for v in variants]
        graphs += [instantiate(model, m, s) for s in range(seeds)]
    else:
        graphs = [instantiate(model, m)]
    out = []
    for v in range(n):
        keep = ((1 << n) - 1) ^ (1 << v)
        out.append(all(solve(g.induced(keep)) is None for g in graphs))
    return out


# -- search ------------------------------------------------------------------

AffineTarget = tuple[tuple[int, int], tuple[int, int]]  # ((A, B) order, (C, D) degree)


def search_models(
    n_blocks_max: int,
    m_probes: tuple[int, ...],
    caption_target: AffineTarget,
    limit: int | None = None,
    seeds: int = 16,
) -> list[BlockModel]:
    """Search block models whose order is A*m + B and whose minimum
    degree is exactly C*m + D = ceil(3n/4) - 1 at every probe, keeping
    those that pass verify_sharpness everywhere.  Models are deduplicated
    by a colour-aware isomorphism hash of the smallest-probe instance.

    The rule alphabet is enumerated over {R, B}; passing models then get
    their cells greedily promoted to "any" wherever the full seed
    battery still passes.  ``limit`` stops the search after that many
    models (None = exhaust the space).
    """
    (a_ord, b_ord), _degree = caption_target
    probes = tuple(sorted(m_probes))
    found: list[BlockModel] = []
    seen_hashes: set[str] = set()
    for blocks in _size_vectors(n_blocks_max, a_ord, b_ord, probes):
        for model in _colourings(blocks, probes, caption_target):
            h = _iso_hash(instantiate(model, probes[0]))
            if h in seen_hashes:
                continue
            seen_hashes.add(h)
            if all(verify_sharpness(model, m, seeds).passed for m in probes):
                promoted = _promote_arbitrary(model, probes, seeds)
                promoted = replace(
                    promoted,
                    provenance=f"search order={a_ord}m+{b_ord} probes={probes} base={h[:12]}",
                )
                found.append(promoted)
                if limit is not None and len(found) >= limit:
                    return found
    return found


def _size_vectors(k_max, a_total, b_total, probes):
    """Non-increasing tuples of (a, b) block coefficients with positive
    size at every probe, summing to the target order."""
    cand = [
        (a, b)
        for a in range(a_total, -1, -1)
        for b in range(2, -2, -1)
        if (a, b) != (0, 0) and all(a * m + b >= 1 for m in probes)
    ]

    def rec(start, a_left, b_left, depth, acc):
        if a_left == 0 and b_left == 0 and acc:
            yield tuple(acc)
        if depth == 0:
            return
        for idx in range(start, len(cand)):
            a, b = cand[idx]
            if a > a_left:
                continue
            if abs(b_left - b) > 2 * (depth - 1):
                continue
            acc.append((a, b))
            yield from rec(idx, a_left - a, b_left - b, depth - 1, acc)
            acc.pop()

    ordered = sorted(rec(0, a_total, b_total, k_max, []), key=len)
    return ordered


def _cells(k: int) -> list[tuple[int, int]]:
    return [(i, i) for i in range(k)] + [(i, j) for i in range(k) for j in range(i + 1, k)]


def _colourings(blocks, probes, caption_target):
    """All canonical {R, B, none} cell assignments meeting the degree
    target at every probe, pre-pruned by the Dirac auto-partition test
    (a colour view with minimum degree above n/2 is Hamiltonian, so such
    a model can never be sharp)."""
    (_a_ord, _b_ord), (c_deg, d_deg) = caption_target
    k = len(blocks)
    cells = _cells(k)
    sizes = {m: [a * m + b for a, b in blocks] for m in probes}
    autos = _auto_perms(blocks)
    cell_perm = [_cell_permutation(cells, pi) for pi in autos]

    # presence stage: which cells carry edges at all
    single_blocks = [i for i, (a, b) in enumerate(blocks) if a == 0 and b == 1]
    n_cells = len(cells)
    for present_bits in range(1 << n_cells):
        if any(present_bits >> i & 1 for i in single_blocks):
            continue  # intra rule on a permanent single vertex is vacuous
        ok = True
        for m in probes:
            degs = [0] * k
            for idx in range(n_cells):
                if not present_bits >> idx & 1:
                    continue
                i, j = cells[idx]
                if i == j:
                    degs[i] += sizes[m][i] - 1
                else:
                    degs[i] += sizes[m][j]
                    degs[j] += sizes[m][i]
            if min(degs) != c_deg * m + d_deg:
                ok = False
                break
        if not ok:
            continue
        present = [idx for idx in range(n_cells) if present_bits >> idx & 1]
        for colour_tuple in itertools.product("RB", repeat=len(present)):
            assignment = ["none"] * n_cells
            for pos, idx in enumerate(present):
                assignment[idx] = colour_tuple[pos]
            if not _canonical(assignment, cell_perm):
                continue
            if _dirac_auto_partition(assignment, cells, sizes, probes, k):
                continue
            yield _assemble(blocks, cells, assignment)


def _touches(cell, c):
    return c in cell


def _auto_perms(blocks):
    k = len(blocks)
    groups: dict[tuple[int, int], list[int]] = {}
    for i, bl in enumerate(blocks):
        groups.setdefault(bl, []).append(i)
    perms = [list(range(k))]
    for members in groups.values():
        if len(members) < 2:
            continue
        new_perms = []
        for base in perms:
            for sub in itertools.permutations(members):
                p = list(base)
                for src, dst in zip(members, sub):
                    p[src] = base[dst]
                new_perms.append(p)
        perms = new_perms
    # dedupe
    return [list(p) for p in {tuple(p) for p in perms}]


def _cell_permutation(cells, pi):
    index = {cell: i for i, cell in enumerate(cells)}
    out = []
    for i, j in cells:
        a, b = pi[i], pi[j]
        out.append(index[(a, b) if a <= b else (b, a)])
    return out


_SWAP = {"R": "B", "B": "R", "none": "none", "any": "any"}


def _canonical(assignment, cell_perms) -> bool:
    t = tuple(assignment)
    for perm in cell_perms:
        image = tuple(assignment[perm[i]] for i in range(len(assignment)))
        if image < t or tuple(_SWAP[c] for c in image) < t:
            return False
    return True


def _dirac_auto_partition(assignment, cells, sizes, probes, k) -> bool:
    """True when some colour view has min degree above n/2 at some
    probe: then that view is Hamiltonian and the model trivially has a
    partition (big cycle plus empty cycle)."""
    for m in probes:
        n = sum(sizes[m])
        for colour in "RB":
            degs = []
            for c in range(k):
                d = 0
                for idx, cell in enumerate(cells):
                    if assignment[idx] == colour and _touches(cell, c):
                        i, j = cell
                        d += sizes[m][c] - 1 if i == j else sizes[m][j if i == c else i]
                degs.append(d)
            if min(degs) > n / 2 and n >= 3:
                return True
    return False


def _assemble(blocks, cells, assignment) -> BlockModel:
    k = len(blocks)
    intra = ["none"] * k
    rules = [["none"] * k for _ in range(k)]
    for idx, (i, j) in enumerate(cells):
        if i == j:
            intra[i] = assignment[idx]
        else:
            rules[i][j] = rules[j][i] = assignment[idx]
    return BlockModel(tuple(blocks), tuple(tuple(r) for r in rules), tuple(intra))


def _promote_arbitrary(model: BlockModel, probes, seeds) -> BlockModel:
    """Greedily widen fixed cells to "any" wherever sharpness still
    passes the full fill battery at every probe."""
    k = len(model.blocks)
    for idx, (i, j) in enumerate(_cells(k)):
        current = model.intra[i] if i == j else model.rules[i][j]
        if current == "none":
            continue
        if i == j:
            cand = replace(
                model, intra=tuple("any" if t == i else r for t, r in enumerate(model.intra))
            )
        else:
            rules = [list(r) for r in model.rules]
            rules[i][j] = rules[j][i] = "any"
            cand = replace(model, rules=tuple(tuple(r) for r in rules))
        if all(verify_sharpness(cand, m, seeds).passed for m in probes):
            model = cand
    return model


# -- colour-aware isomorphism hash -------------------------------------------

def _iso_hash(g: ColouredGraph, rounds: int = 3) -> str:
    """Weisfeiler-Leman style hash refined by coloured-edge multisets.
    Collisions only cost duplicate suppression, never correctness."""
    labels = ["v"] * g.n
    marks = {}
    for u, v, mark in g.edges():
        marks.setdefault(u, []).append((v, mark))
        marks.setdefault(v, []).append((u, mark))
    for _ in range(rounds):
        new = []
        for v in range(g.n):
            sig = sorted((mark, labels[u]) for u, mark in marks.get(v, []))
            new.append(hashlib.sha256((labels[v] + repr(sig)).encode()).hexdigest()[:16])
        labels = new
    return hashlib.sha256((str(g.n) + repr(sorted(labels))).encode()).hexdigest()
