"""Exact decision and certificates for the red/blue cycle-partition
property, plus the certificate verifier and the conjecture scanner.

A partition certificate is an ordered red cycle and an ordered blue
cycle whose vertex sets partition V(G).  Degenerate cycles (empty,
single vertex, single edge) are accepted on both sides.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .graph import BLUE, RED, ColouredGraph, random_min_degree_graph, serialize
from .hamilton import DP_CAP, HamTable, _check_cap, ham_table


@dataclass(frozen=True)
class PartitionCertificate:
    """Ordered red and blue cycles partitioning V(G).  Either sequence
    may be empty; a length-2 sequence stands for a single edge."""

    red_cycle: tuple[int, ...]
    blue_cycle: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps(
            {"blue": list(self.blue_cycle), "red": list(self.red_cycle)},
            sort_keys=True,
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, text: str) -> "PartitionCertificate":
        payload = json.loads(text)
        return cls(tuple(payload["red"]), tuple(payload["blue"]))


def _degenerate_or_cycle(table: HamTable, g: ColouredGraph, view: str, mask: int) -> bool:
    k = mask.bit_count()
    if k <= 1:
        return True
    if k == 2:
        u = (mask & -mask).bit_length() - 1
        return bool(g.adj(view)[u] & mask & ~(1 << u))
    return table.has_cycle(mask)


def _cycle_sequence(table: HamTable, mask: int) -> tuple[int, ...]:
    k = mask.bit_count()
    if k == 0:
        return ()
    if k <= 2:
        return tuple(v for v in range(table.n) if mask >> v & 1)
    return tuple(table.reconstruct_cycle(mask))


def solve(g: ColouredGraph) -> PartitionCertificate | None:
    """Search all 2^n vertex subsets for one carrying a red cycle whose
    complement carries a blue cycle.  Returns a witness certificate or
    None.

    Sweep order: red-subset popcount descending, numeric ascending
    within a stratum; the first witness wins, so certificates are
    deterministic.
    """
    _check_cap(g.n)
    n = g.n
    full = g.vertex_mask
    red_table = ham_table(g, RED)
    blue_table = ham_table(g, BLUE)
    for k in range(n, -1, -1):
        for combo in combinations(range(n), k):
            red_mask = 0
            for v in combo:
                red_mask |= 1 << v
            if not _degenerate_or_cycle(red_table, g, RED, red_mask):
                continue
            blue_mask = full ^ red_mask
            if _degenerate_or_cycle(blue_table, g, BLUE, blue_mask):
                cert = PartitionCertificate(
                    _cycle_sequence(red_table, red_mask),
                    _cycle_sequence(blue_table, blue_mask),
                )
                ok, reason = verify(g, cert)
                assert ok, f"solver produced invalid certificate: {reason}"
                return cert
    return None


def _verify_cycle(g: ColouredGraph, cycle: tuple[int, ...], view: str) -> str | None:
    """None if the sequence is a valid (possibly degenerate) cycle of the
    view, else the first violated clause."""
    if len(cycle) <= 1:
        return None
    if len(cycle) == 2:
        u, v = cycle
        if not g.has_edge(u, v, view):
            return f"colour violation: pair ({u}, {v}) not in the {view} view"
        return None
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        if not g.has_edge(u, v, view):
            return f"colour violation: consecutive pair ({u}, {v}) not in the {view} view"
    return None


def verify(g: ColouredGraph, cert: PartitionCertificate) -> tuple[bool, str | None]:
    """Check both certificate invariants against g.  Returns (ok, reason)
    where the reason identifies the first violated clause."""
    seen: set[int] = set()
    for label, seq in (("red", cert.red_cycle), ("blue", cert.blue_cycle)):
        for v in seq:
            if not isinstance(v, int) or not 0 <= v < g.n:
                return False, f"not a partition: {label} cycle names unknown vertex {v!r}"
            if v in seen:
                return False, f"not a partition: vertex {v} appears twice"
            seen.add(v)
    if len(seen) != g.n:
        missing = next(v for v in range(g.n) if v not in seen)
        return False, f"not a partition: vertex {missing} uncovered"
    reason = _verify_cycle(g, cert.red_cycle, RED)
    if reason:
        return False, reason
    reason = _verify_cycle(g, cert.blue_cycle, BLUE)
    if reason:
        return False, reason
    return True, None


# -- conjecture scanner --------------------------------------------------

@dataclass
class ScanReport:
    """Outcome counts for random instances at the conjectured degree
    threshold.  NO instances are findings, not bugs: the partition
    theorem is asymptotic and says nothing about small n."""

    n: int
    trials: int
    seed: int
    delta_floor: int
    yes: int = 0
    no: int = 0
    no_instances: list[str] = field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(
            {
                "delta_floor": self.delta_floor,
                "n": self.n,
                "no": self.no,
                "no_instances": [json.loads(s) for s in self.no_instances],
                "seed": self.seed,
                "trials": self.trials,
                "yes": self.yes,
            },
            sort_keys=True,
            separators=(",", ":"),
        )


def _trial_seed(seed: int, trial: int) -> int:
    return (seed * 0x9E3779B97F4A7C15 + trial * 0xBF58476D1CE4E5B9 + 1) & ((1 << 63) - 1)


def _scan_one(args: tuple[int, int, int, int]) -> tuple[int, bool, str]:
    n, delta_floor, seed, trial = args
    g = random_min_degree_graph(n, delta_floor, 0.5, _trial_seed(seed, trial))
    cert = solve(g)
    if cert is None:
        return trial, False, serialize(g)
    ok, reason = verify(g, cert)
    assert ok, f"scan produced invalid certificate: {reason}"
    return trial, True, ""


def scan_conjecture(n: int, trials: int, seed: int, threads: int = 1) -> ScanReport:
    """Run ``trials`` random instances with delta >= ceil(3n/4) through
    the solver.  Deterministic under ``seed`` regardless of ``threads``
    (per-trial child seeds, results merged in trial order)."""
    if not 4 <= n <= DP_CAP:
        raise ValueError(f"scan needs 4 <= n <= {DP_CAP}")
    delta_floor = math.ceil(3 * n / 4)
    report = ScanReport(n=n, trials=trials, seed=seed, delta_floor=delta_floor)
    jobs = [(n, delta_floor, seed, t) for t in range(trials)]
    if threads > 1 and trials > 1:
        try:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(_scan_one, jobs, chunksize=max(1, trials // (4 * threads))))
        except (OSError, PermissionError):  # restricted sandboxes: fall back
            results = [_scan_one(j) for j in jobs]
    else:
        results = [_scan_one(j) for j in jobs]
    for _trial, is_yes, payload in sorted(results):
        if is_yes:
            report.yes += 1
        else:
            report.no += 1
            report.no_instances.append(payload)
    return report
