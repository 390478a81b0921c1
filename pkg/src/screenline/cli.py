"""Command-line front end: ingestion -> enumeration -> filtering -> solving
-> verification -> reporting.

Subcommands: enum, bounds, solve min-links, solve max-coverage, verify,
shared-cuts.  Exit codes: 0 success, 1 solver infeasible, 2 input error,
3 resource limit hit (incumbent written when one exists).

Placement files are deterministic: identical inputs give byte-identical
JSON, so wall-clock timings go to stderr (and the sweep CSV's `seconds`
column), never into the placement itself.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from importlib import resources
from pathlib import Path

from .bounds import compute_bounds, lemma2_filter, size_cap_filter
from .branchbound import SolveOptions, solve
from .cuts import build_pool, load_pool, save_pool
from .model import build_csp1, build_csp2, build_psi, extract_placement
from .network import Network, load_network
from .oracle import verify_coverage

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INPUT = 2
EXIT_LIMIT = 3

_FIXTURES = {"sioux-falls": ("siouxfalls_links.tntp", "siouxfalls_centroids.txt")}


class InputError(Exception):
    pass


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help(sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, FileNotFoundError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="screenline",
        description="Screen-line counter location via minimal-cut enumeration "
        "and exact 0-1 programming.",
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("enum", help="enumerate minimal cuts into a pool file")
    _add_network_args(p)
    p.add_argument("--max-cut-size", type=int, default=None)
    p.add_argument("--od", default=None, help="restrict to one pair, e.g. 1,13")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default=None, help="pool file (JSON lines)")
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("bounds", help="print the degree-bound report as JSON")
    _add_network_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("solve", help="solve a counter location program")
    solve_sub = p.add_subparsers(dest="program")

    p1 = solve_sub.add_parser("min-links", help="fewest links covering every OD pair")
    _add_network_args(p1)
    _add_solve_args(p1)
    p1.add_argument("--filter", default="lemma2", help="lemma2 | cap:N | none")
    p1.set_defaults(func=cmd_solve_min_links)

    p2 = solve_sub.add_parser("max-coverage", help="most OD pairs under a link budget")
    _add_network_args(p2)
    _add_solve_args(p2)
    p2.add_argument("--budget", type=int, default=None, help="link budget K")
    p2.add_argument("--cap", type=int, default=8, help="max cut size in the pool")
    p2.add_argument("--benefit", default="uniform",
                    help="'uniform' or a JSON file mapping \"s,t\" to a weight")
    p2.add_argument("--sweep", default=None,
                    help="comma-separated budgets; emits CSV instead of a placement")
    p2.set_defaults(func=cmd_solve_max_coverage)

    p = sub.add_parser("verify", help="check a placement file's coverage")
    _add_network_args(p)
    p.add_argument("--placement", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("shared-cuts", help="rank selected cuts by shared OD count")
    _add_network_args(p)
    _add_solve_args(p)
    p.add_argument("--budget", type=int, required=True)
    p.add_argument("--cap", type=int, default=8)
    p.add_argument("--min-shared", type=int, default=1)
    p.set_defaults(func=cmd_shared_cuts)
    return parser


def _add_network_args(p) -> None:
    p.add_argument("--network", default=None, help="link table file")
    p.add_argument("--centroids", default=None, help="centroid file")
    p.add_argument("--seed-fixture", default=None, choices=sorted(_FIXTURES),
                   help="use a bundled benchmark network instead of files")


def _add_solve_args(p) -> None:
    p.add_argument("--pool", default=None, help="reuse a saved pool file")
    p.add_argument("--max-cut-size", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default=None, help="placement JSON path")
    p.add_argument("--node-limit", type=int, default=None)
    p.add_argument("--time-limit", type=float, default=None)
    p.add_argument("--verbose", action="store_true")


def _load_net(args) -> Network:
    if args.seed_fixture:
        link_name, cent_name = _FIXTURES[args.seed_fixture]
        data = resources.files("screenline").joinpath("data")
        return load_network(str(data / link_name), str(data / cent_name))
    if not args.network or not args.centroids:
        raise InputError("provide --network and --centroids, or --seed-fixture")
    return load_network(args.network, args.centroids)


def _get_pool(args, net: Network, max_size):
    if getattr(args, "pool", None):
        return load_pool(args.pool, net)
    return build_pool(net, max_size=max_size, workers=args.workers)


def _solve_options(args) -> SolveOptions:
    return SolveOptions(
        node_limit=args.node_limit,
        time_limit=args.time_limit,
        log=args.verbose,
    )


def _placement_json(net: Network, placement, result) -> dict:
    """Deterministic placement document; link ids are external labels."""
    return {
        "links": net.labels_of(placement.chosen_links),
        "objective": placement.objective_value,
        "covered": sorted([s, t] for s, t in placement.covered_ods),
        "stats": {
            "status": result.status,
            "engine": result.stats.get("engine"),
            "n_links": len(placement.chosen_links),
            "n_covered": len(placement.covered_ods),
        },
    }


def _emit(doc: dict, out) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _finish_solve(args, net, model, psi, pool):
    t0 = time.time()
    result = solve(model, _solve_options(args))
    if result.status == "infeasible":
        print("error: model is infeasible", file=sys.stderr)
        return EXIT_INFEASIBLE, None
    if result.assignment is None:
        print("error: solver limit hit before any feasible layout", file=sys.stderr)
        return EXIT_LIMIT, None
    placement = extract_placement(model, result.assignment, psi)
    coverage = verify_coverage(net, placement.chosen_links)
    covered_set = set(placement.covered_ods)
    for od, ok in coverage.items():
        if od in covered_set and not ok:
            raise AssertionError(f"solver claimed coverage of {od} but oracle disagrees")
    if model.kind == "csp1":
        uncovered = [od for od, ok in coverage.items() if not ok]
        if uncovered:
            raise AssertionError(f"min-links layout left OD pairs uncovered: {uncovered}")
    doc = _placement_json(net, placement, result)
    _emit(doc, args.out)
    ratio = sum(coverage.values()) / len(coverage) if coverage else 0.0
    print(
        f"{model.name}: objective {placement.objective_value:g}, "
        f"{len(placement.chosen_links)} links, coverage "
        f"{sum(coverage.values())}/{len(coverage)} ({ratio:.4f}), "
        f"{time.time() - t0:.1f}s",
        file=sys.stderr,
    )
    code = EXIT_OK if result.status == "optimal" else EXIT_LIMIT
    return code, placement


def cmd_enum(args) -> int:
    net = _load_net(args)
    od_filter = None
    if args.od:
        s, t = (int(v) for v in args.od.split(","))
        od_filter = [(s, t)]
    pool = build_pool(net, max_size=args.max_cut_size, od_filter=od_filter,
                      workers=args.workers)
    if args.out:
        save_pool(pool, args.out)
    hist = pool.histogram()
    total_dup = total_dedup = 0
    print("size: with OD duplication / without")
    for size in sorted(hist):
        dup, dedup = hist[size]
        total_dup += dup
        total_dedup += dedup
        print(f"{size}: {dup} / {dedup}")
    print(f"total: {total_dup} / {total_dedup}")
    return EXIT_OK


def cmd_bounds(args) -> int:
    net = _load_net(args)
    print(json.dumps(compute_bounds(net).to_dict(), indent=2))
    return EXIT_OK


def cmd_solve_min_links(args) -> int:
    net = _load_net(args)
    report = compute_bounds(net)
    spec = args.filter.strip().lower()
    max_size = args.max_cut_size
    if max_size is None:
        # Lemma 2 discards anything larger than the biggest origin degree,
        # so the pool never needs deeper enumeration than that.
        if spec == "lemma2":
            max_size = max(report.per_origin_cap.values())
        elif spec.startswith("cap:"):
            max_size = int(spec.split(":", 1)[1])
    pool = _get_pool(args, net, max_size)
    if spec == "lemma2":
        pool = lemma2_filter(pool, report)
    elif spec.startswith("cap:"):
        pool = size_cap_filter(pool, int(spec.split(":", 1)[1]))
    elif spec != "none":
        raise InputError(f"unknown filter {args.filter!r}")
    if pool.uncoverable:
        od = sorted(pool.uncoverable)[0]
        print(f"error: OD pair {od} has no cut after the filter; min-links "
              "is infeasible", file=sys.stderr)
        return EXIT_INFEASIBLE
    psi = build_psi(pool, n_links=len(net.links), network=net)
    model = build_csp1(psi, cutoff=report.csp1_upper_bound)
    code, _ = _finish_solve(args, net, model, psi, pool)
    return code


def _read_benefits(spec, net: Network):
    if spec == "uniform":
        return None
    raw = json.loads(Path(spec).read_text())
    benefits = {}
    for key, value in raw.items():
        s, t = (int(v) for v in key.split(","))
        benefits[(s, t)] = float(value)
    for w in net.od_pairs:
        if (w.s, w.t) not in benefits:
            raise InputError(f"benefit file missing OD pair {(w.s, w.t)}")
    return benefits


def cmd_solve_max_coverage(args) -> int:
    net = _load_net(args)
    if args.budget is None and not args.sweep:
        raise InputError("provide --budget K (or --sweep)")
    pool = _get_pool(args, net, args.cap)
    if pool.max_size is None or pool.max_size > args.cap:
        pool = size_cap_filter(pool, args.cap)
    benefits = _read_benefits(args.benefit, net)
    psi = build_psi(pool, benefits=benefits, n_links=len(net.links), network=net)
    if args.sweep:
        return _run_sweep(args, net, psi)
    model = build_csp2(psi, budget=args.budget)
    code, _ = _finish_solve(args, net, model, psi, pool)
    return code


def _run_sweep(args, net: Network, psi) -> int:
    budgets = sorted({int(v) for v in args.sweep.split(",")})
    total = len(net.od_pairs)
    lines = ["budget,cap,covered,total,ratio,seconds"]
    for budget in budgets:
        t0 = time.time()
        model = build_csp2(psi, budget=budget)
        result = solve(model, _solve_options(args))
        if result.assignment is None:
            print(f"error: sweep budget {budget} failed ({result.status})",
                  file=sys.stderr)
            return EXIT_LIMIT if result.status == "budget-limit-hit" else EXIT_INFEASIBLE
        placement = extract_placement(model, result.assignment, psi)
        coverage = verify_coverage(net, placement.chosen_links)
        covered = sum(coverage.values())
        seconds = time.time() - t0
        lines.append(
            f"{budget},{args.cap},{covered},{total},{covered / total:.6f},{seconds:.2f}"
        )
        print(f"K={budget}: {covered}/{total} in {seconds:.1f}s", file=sys.stderr)
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    net = _load_net(args)
    doc = json.loads(Path(args.placement).read_text())
    links = net.ids_for_labels(doc["links"])
    coverage = verify_coverage(net, links)
    for (s, t), ok in sorted(coverage.items()):
        print(f"{s},{t}: {'covered' if ok else 'NOT covered'}")
    ratio = sum(coverage.values()) / len(coverage) if coverage else 0.0
    print(f"ratio: {sum(coverage.values())}/{len(coverage)} = {ratio:.4f}")
    return EXIT_OK


def shared_cut_table(pool, chosen_links) -> list:
    """Assign each covered OD pair to one candidate cut inside the chosen
    links, concentrating assignments so widely shared cuts surface: cuts are
    claimed greedily by descending number of still-unassigned candidate OD
    pairs (ties by link set).  Returns [(count, links), ...] sorted the same
    way."""
    chosen = set(chosen_links)
    cands = {}
    for od, ids in pool.membership.items():
        cs = [cid for cid in ids if set(pool.cuts[cid].links) <= chosen]
        if cs:
            cands[od] = cs
    unassigned = set(cands)
    counts: dict = {}
    while unassigned:
        takers: dict = {}
        for od in unassigned:
            for cid in cands[od]:
                takers.setdefault(cid, []).append(od)
        cid = min(takers, key=lambda c: (-len(takers[c]), pool.cuts[c].links))
        counts[cid] = len(takers[cid])
        unassigned -= set(takers[cid])
    return sorted(
        ((n, pool.cuts[cid].links) for cid, n in counts.items()),
        key=lambda r: (-r[0], r[1]),
    )


def cmd_shared_cuts(args) -> int:
    net = _load_net(args)
    pool = _get_pool(args, net, args.cap)
    if pool.max_size is None or pool.max_size > args.cap:
        pool = size_cap_filter(pool, args.cap)
    psi = build_psi(pool, n_links=len(net.links), network=net)
    model = build_csp2(psi, budget=args.budget)
    result = solve(model, _solve_options(args))
    if result.status == "infeasible":
        print("error: model is infeasible", file=sys.stderr)
        return EXIT_INFEASIBLE
    if result.assignment is None:
        print("error: solver limit hit", file=sys.stderr)
        return EXIT_LIMIT
    placement = extract_placement(model, result.assignment, psi)
    rows = shared_cut_table(pool, placement.chosen_links)
    print("rank: links (shared OD pairs)")
    rank = 0
    for count, links in rows:
        if count < args.min_shared:
            continue
        rank += 1
        labels = ",".join(str(v) for v in net.labels_of(links))
        print(f"{rank}: {labels} ({count})")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
