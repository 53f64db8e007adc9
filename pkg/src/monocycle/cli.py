"""Single entry point exposing every module as a subcommand.

stdout carries exactly one JSON payload per run; logs go to stderr, so
output can be piped.  Exit codes: 0 success, 1 negative mathematical
result (no partition / no matching / premise-true-but-false verdicts),
2 usage error, 3 capacity error.  Randomized subcommands are
bit-reproducible under --seed: wall time is logged to stderr only and
report JSON is emitted with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time

from . import absorb, clusters, families, graph, hamilton, matching, partition, pathpart, robust
from .errors import CapacityError, GraphFormatError, MonocycleError, PremiseError, UsageError

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


def _read_graph(path: str) -> graph.ColouredGraph:
    try:
        with open(path, encoding="utf-8") as fh:
            return graph.deserialize(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _mask(vertices: list[int]) -> int:
    return graph.mask_of(vertices)


def _parse_parts(path: str) -> tuple[list[int], float]:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    parts = [_mask(p) for p in payload["parts"]]
    return parts, float(payload.get("eps", 0.01))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="monocycle", description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--eps", type=float, default=0.05)
    ap.add_argument("--alpha", type=float, default=0.25)
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--rho", type=float, default=0.3)
    ap.add_argument("--view", choices=["R", "B", "U"], default="U")
    ap.add_argument("--out", default=None)
    sub = ap.add_subparsers(dest="cmd")

    p = sub.add_parser("solve", help="partition into a red and a blue cycle")
    p.add_argument("graph_json")

    p = sub.add_parser("verify", help="check a partition certificate")
    p.add_argument("graph_json")
    p.add_argument("cert_json")

    p = sub.add_parser("scan", help="random instances at the degree threshold")
    p.add_argument("--n", required=True, help="order or range, e.g. 8 or 8..12")
    p.add_argument("--trials", type=int, default=100)

    p = sub.add_parser("matching", help="maximum matching of a view")
    p.add_argument("graph_json")

    p = sub.add_parser("tutte", help="Tutte condition oracle")
    p.add_argument("graph_json")

    p = sub.add_parser("lemma", help="matching dichotomies")
    p.add_argument("which", choices=["tripartite", "tripartite-exact", "hall", "biptech"])
    p.add_argument("graph_json")
    p.add_argument("parts_json")

    p = sub.add_parser("path-partition", help="equal pair plus Hamilton path")
    p.add_argument("graph_json")

    p = sub.add_parser("robust", help="robustness queries")
    p.add_argument("action", choices=["check", "walk", "perturb"])
    p.add_argument("graph_json")
    p.add_argument("--nref", type=int, default=None)
    p.add_argument("--beta", type=float, default=0.05)
    p.add_argument("--bipartition", default=None, help="JSON list of one side's vertices")

    p = sub.add_parser("absorb", help="absorbing path demos")
    p.add_argument("action", choices=["build", "demo", "test"])
    p.add_argument("graph_json")
    p.add_argument("--mode", choices=["strong", "weak"], default="strong")
    p.add_argument("--bipartition", default=None)
    p.add_argument("--trials", type=int, default=10)

    p = sub.add_parser("convert", help="connected matching to cycle on a blow-up")
    p.add_argument("cluster_json")
    p.add_argument("--colour", choices=["R", "B"], default="R")

    p = sub.add_parser("family", help="extremal block models")
    p.add_argument("action", choices=["search", "verify", "emit"])
    p.add_argument("--model", default=None, help="model JSON file")
    p.add_argument("--order", default="4,1", help="A,B for order A*m+B")
    p.add_argument("--degree", default="3,0", help="C,D for degree C*m+D")
    p.add_argument("--blocks", type=int, default=5)
    p.add_argument("--probes", default="2,3")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--limit", type=int, default=1)

    p = sub.add_parser("gen", help="random graph with a degree floor")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--bias", type=float, default=0.5)

    p = sub.add_parser("ham", help="hamiltonicity and longest path queries")
    p.add_argument("action", choices=["cycle", "longest-path", "pancyclic"])
    p.add_argument("graph_json")
    return ap


def dispatch(argv: list[str]) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit:
        return EXIT_USAGE
    if args.cmd is None:
        ap.print_usage(sys.stderr)
        return EXIT_USAGE
    t0 = time.monotonic()
    try:
        code = _run(args)
    except (UsageError, GraphFormatError, PremiseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except MonocycleError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    print(f"[{args.cmd}] {time.monotonic() - t0:.3f}s", file=sys.stderr)
    return code


def _run(args) -> int:
    view = args.view
    if args.cmd == "solve":
        g = _read_graph(args.graph_json)
        cert = partition.solve(g)
        if cert is None:
            _emit({"result": "none"}, args.out)
            return EXIT_NEGATIVE
        ok, reason = partition.verify(g, cert)
        _emit(
            {
                "blue": list(cert.blue_cycle),
                "red": list(cert.red_cycle),
                "verified": ok,
                **({"reason": reason} if reason else {}),
            },
            args.out,
        )
        return EXIT_OK

    if args.cmd == "verify":
        g = _read_graph(args.graph_json)
        with open(args.cert_json, encoding="utf-8") as fh:
            cert = partition.PartitionCertificate.from_json(fh.read())
        ok, reason = partition.verify(g, cert)
        _emit({"ok": ok, "reason": reason}, args.out)
        return EXIT_OK if ok else EXIT_NEGATIVE

    if args.cmd == "scan":
        ns = _parse_range(args.n)
        reports = []
        for n in ns:
            rep = partition.scan_conjecture(n, args.trials, args.seed, args.threads)
            reports.append(json.loads(rep.to_json()))
        _emit({"reports": reports, "seed": args.seed}, args.out)
        return EXIT_OK

    if args.cmd == "matching":
        g = _read_graph(args.graph_json)
        m = matching.max_matching(g, view)
        _emit(
            {"edges": [list(e) for e in m.edges], "perfect": m.is_perfect(g), "size": m.size},
            args.out,
        )
        return EXIT_OK

    if args.cmd == "tutte":
        g = _read_graph(args.graph_json)
        verdict = matching.tutte_oracle(g, view)
        payload = {"ok": verdict.ok}
        if not verdict.ok:
            payload["violator"] = sorted(graph.bits(verdict.violator))
            payload["odd_components"] = verdict.odd_components
        _emit(payload, args.out)
        return EXIT_OK if verdict.ok else EXIT_NEGATIVE

    if args.cmd == "lemma":
        return _run_lemma(args, view)

    if args.cmd == "path-partition":
        g = _read_graph(args.graph_json)
        pp = pathpart.partition_empty_pair_path(g, view)
        _emit(
            {
                "path": list(pp.path),
                "u": sorted(graph.bits(pp.u)),
                "w": sorted(graph.bits(pp.w)),
            },
            args.out,
        )
        return EXIT_OK

    if args.cmd == "robust":
        return _run_robust(args, view)

    if args.cmd == "absorb":
        return _run_absorb(args, view)

    if args.cmd == "convert":
        with open(args.cluster_json, encoding="utf-8") as fh:
            cg = clusters.ClusterGraph.from_json(fh.read())
        g, cmap = clusters.blow_up(cg, args.seed)
        cm = clusters.find_connected_matching(cg, args.colour)
        result = clusters.matching_to_cycle(g, cg, cmap, cm, args.eps)
        _emit(
            {
                "coverage": result.coverage,
                "covered": result.covered_in_u,
                "cycle": list(result.sequence),
                "u_total": result.u_total,
            },
            args.out,
        )
        return EXIT_OK

    if args.cmd == "family":
        return _run_family(args)

    if args.cmd == "gen":
        g = graph.random_min_degree_graph(args.n, args.delta, args.bias, args.seed)
        _emit(json.loads(graph.serialize(g)), args.out)
        return EXIT_OK

    if args.cmd == "ham":
        g = _read_graph(args.graph_json)
        if args.action == "cycle":
            ok = hamilton.has_mono_cycle_on(g, view, g.vertex_mask)
            _emit({"hamiltonian": ok}, args.out)
            return EXIT_OK if ok else EXIT_NEGATIVE
        if args.action == "longest-path":
            _emit({"longest_path_edges": hamilton.longest_path_length(g, view)}, args.out)
            return EXIT_OK
        premise = hamilton.bondy_pancyclic_check(g, view)
        concl = hamilton.bondy_conclusion_holds(g, view) if premise else None
        _emit({"premise": premise, "pancyclic": concl}, args.out)
        return EXIT_OK

    raise UsageError(f"unknown subcommand {args.cmd!r}")


def _run_lemma(args, view) -> int:
    g = _read_graph(args.graph_json)
    parts, eps = _parse_parts(args.parts_json)
    if args.which in ("tripartite", "tripartite-exact"):
        if len(parts) != 3:
            raise UsageError("tripartite lemmas need exactly 3 parts")
        if args.which == "tripartite-exact":
            m = matching.tripartite_exact(g, tuple(parts), view)
            _emit({"edges": [list(e) for e in m.edges], "outcome": "matching"}, args.out)
            return EXIT_OK
        res = matching.tripartite_stability(g, tuple(parts), eps, view)
        if isinstance(res, matching.Matching):
            _emit({"edges": [list(e) for e in res.edges], "outcome": "matching"}, args.out)
            return EXIT_OK
        _emit(
            {
                "outcome": res.variant,
                "sets": [sorted(graph.bits(s)) for s in res.sets],
            },
            args.out,
        )
        return EXIT_OK
    if args.which == "hall":
        if len(parts) != 2:
            raise UsageError("hall needs exactly 2 parts")
        res = matching.hall_dichotomy(g, (parts[0], parts[1]), eps, view)
        if isinstance(res, matching.Matching):
            _emit({"edges": [list(e) for e in res.edges], "outcome": "matching"}, args.out)
            return EXIT_OK
        a1, a2 = res
        _emit(
            {"a1": sorted(graph.bits(a1)), "a2": sorted(graph.bits(a2)), "outcome": "empty-pair"},
            args.out,
        )
        return EXIT_OK
    if len(parts) != 2:
        raise UsageError("biptech needs exactly 2 parts")
    outcome = matching.bipartite_technical(g, (parts[0], parts[1]), eps, view)
    payload: dict = {"outcome": outcome.kind}
    if outcome.matching is not None:
        payload["edges"] = [list(e) for e in outcome.matching.edges]
    if outcome.witness is not None:
        payload["sets"] = [sorted(graph.bits(s)) for s in outcome.witness.sets]
    if outcome.detail:
        payload["detail"] = outcome.detail
    _emit(payload, args.out)
    return EXIT_OK if outcome.kind != "exhausted" else EXIT_NEGATIVE


def _run_robust(args, view) -> int:
    g = _read_graph(args.graph_json)
    bip = None
    if args.bipartition:
        side = _mask(json.loads(args.bipartition))
        bip = (side, g.vertex_mask & ~side)
    if args.action == "check":
        chk = robust.check_robust(
            g, view, g.vertex_mask, args.alpha, args.k, args.nref or g.n, bip
        )
        _emit({"verdict": chk.verdict, "witness_l": chk.witness_l}, args.out)
        return EXIT_OK if chk.verdict != "none" else EXIT_NEGATIVE
    if args.action == "walk":
        k = robust.uniform_odd_walk_length(g, view)
        _emit({"uniform_walk_length": k}, args.out)
        return EXIT_OK if k is not None else EXIT_NEGATIVE
    rep = robust.perturbation_suite(
        g, view, args.alpha, args.k, args.beta, args.seed, bipartition=bip
    )
    _emit(
        {
            "failures": rep.failures,
            "trials": [
                {"kind": t.kind, "passed": t.passed, "witness_l": t.witness_l}
                for t in rep.trials
            ],
        },
        args.out,
    )
    return EXIT_OK if rep.failures == 0 else EXIT_NEGATIVE


def _run_absorb(args, view) -> int:
    g = _read_graph(args.graph_json)
    bip = None
    if args.bipartition:
        side = _mask(json.loads(args.bipartition))
        bip = (side, g.vertex_mask & ~side)
    ap = absorb.build_absorbing_path(
        g, view, args.rho, args.mode, args.seed, alpha=args.alpha, k=args.k, bipartition=bip
    )
    payload = {
        "ends": list(ap.ends),
        "gadgets": [
            {"anchor": list(gd.anchor), "start": gd.start, "length": gd.length}
            for gd in ap.gadgets
        ],
        "l": ap.l,
        "path": list(ap.path),
    }
    if args.action == "build":
        _emit(payload, args.out)
        return EXIT_OK
    import random as _random

    rng = _random.Random(args.seed)
    outside = sorted(graph.bits(g.vertex_mask & ~ap.vertex_set))
    absorbed = 0
    for _ in range(args.trials):
        cur = ap
        if ap.mode == "strong":
            size = rng.randint(0, cur.capacity)
            w = graph.mask_of(rng.sample(outside, min(size, len(outside))))
        else:
            bx, by = ap.bipartition
            xs = [v for v in outside if bx >> v & 1]
            ys = [v for v in outside if by >> v & 1]
            size = rng.randint(0, min(cur.capacity, len(xs), len(ys)))
            w = graph.mask_of(rng.sample(xs, size) + rng.sample(ys, size))
        cur = absorb.absorb_set(cur, w)
        absorbed += w.bit_count()
    payload["absorbed_total"] = absorbed
    payload["trials"] = args.trials
    _emit(payload, args.out)
    return EXIT_OK


def _run_family(args) -> int:
    probes = tuple(int(x) for x in args.probes.split(","))
    if args.action == "search":
        a, b = (int(x) for x in args.order.split(","))
        c, d = (int(x) for x in args.degree.split(","))
        models = families.search_models(
            args.blocks, probes, ((a, b), (c, d)), limit=args.limit
        )
        _emit({"models": [json.loads(m.to_json()) for m in models]}, args.out)
        return EXIT_OK if models else EXIT_NEGATIVE
    if args.model is None:
        raise UsageError("verify/emit need --model")
    with open(args.model, encoding="utf-8") as fh:
        model = families.BlockModel.from_json(fh.read())
    if args.action == "verify":
        rep = families.verify_sharpness(model, args.m)
        _emit(
            {
                "degree_ok": rep.degree_ok,
                "delta": rep.delta,
                "fills": [[label, ok] for label, ok in rep.fills],
                "n": rep.n,
                "passed": rep.passed,
                "target": rep.target,
            },
            args.out,
        )
        return EXIT_OK if rep.passed else EXIT_NEGATIVE
    g = families.instantiate(model, args.m, args.seed)
    _emit(json.loads(graph.serialize(g)), args.out)
    return EXIT_OK


def _parse_range(spec: str) -> list[int]:
    if ".." in spec:
        lo, hi = spec.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
