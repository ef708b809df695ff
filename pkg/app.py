"""
Condorcet tilings: command line entry point.

Orders on the command line are comma-separated worst-to-best words ("3,1,2").
Exit status: 0 ok, 1 a checked property failed or a count overflowed 64 bits,
2 bad input.
"""

import argparse
import json
import logging
import os
import sys

import catalog
from config import get_settings
from domains import (
    domain_of_casting, is_complete_cd, is_connected, is_cyclic, is_peak_pit,
    is_semi_connected, majority_relation,
)
from fishburn import concat, counterexample_report, fishburn_dag, fishburn_tiling, phi
from models import (
    FormatError, read_casting, read_domain, read_family, read_file, read_opinion,
    read_spectrum, write_domain, write_spectrum,
)
from orders import parse_order
from render import RenderSpec, render_bruhat_dot, render_tiling
from tilings import (
    CRITERIA, CountOverflowError, count_snakes, enumerate_tilings_cached, extend_to_maximal, gamma, sigma,
    strongly_consistent,
)

log = logging.getLogger("condorcet")

OK, FAILED, BAD_INPUT = 0, 1, 2


def _emit(payload):
    print(json.dumps(payload))


def _write(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


# ─── Commands ────────────────────────────────────────────────────

def cmd_phi(args) -> int:
    print(phi(args.n))
    return OK


def cmd_fishburn(args) -> int:
    if args.tiling:
        _write(write_spectrum(fishburn_tiling(args.n)), args.tiling)
        return OK
    if args.enumerate:
        sys.stdout.write(write_domain(sigma(fishburn_tiling(args.n))))
        return OK
    _emit({"n": args.n, "phi": phi(args.n), "dag_nodes": len(fishburn_dag(args.n).nodes)})
    return OK


def cmd_tilings(args) -> int:
    spectra = enumerate_tilings_cached(args.n)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for k, T in enumerate(spectra):
            _write(write_spectrum(T), os.path.join(args.out, f"tiling_{k:04d}.json"))
        print(f"{len(spectra)} tilings written to {args.out}", file=sys.stderr)
    else:
        for T in spectra:
            sys.stdout.write(write_spectrum(T))
    return OK


def cmd_gamma(args) -> int:
    value = gamma(args.n, allow_slow=args.allow_slow)
    catalog.record_run("gamma", {"n": args.n}, {"gamma": value})
    print(value)
    return OK


def cmd_check(args) -> int:
    D = read_file(args.domain, read_domain)
    verdicts = {"acyclic": not is_cyclic(D)}
    if args.complete:
        verdicts["complete"] = is_complete_cd(D)
    if args.peak_pit:
        verdicts["peak_pit"] = is_peak_pit(D)
    if args.semi_connected:
        verdicts["semi_connected"] = is_semi_connected(D)
    if args.connected:
        verdicts["connected"] = is_connected(D)
    _emit(verdicts)
    return OK if all(verdicts.values()) else FAILED


def cmd_casting(args) -> int:
    c = read_file(args.casting, read_casting)
    sys.stdout.write(write_domain(domain_of_casting(c)))
    return OK


def cmd_extend(args) -> int:
    n, fam = read_file(args.family, read_family)
    sys.stdout.write(write_spectrum(extend_to_maximal(fam, n)))
    return OK


def cmd_sigma(args) -> int:
    T = read_file(args.spectrum, read_spectrum)
    if args.count_only:
        print(count_snakes(T))
    else:
        sys.stdout.write(write_domain(sigma(T)))
    return OK


def cmd_consistent(args) -> int:
    s, t = parse_order(args.order1), parse_order(args.order2)
    names = CRITERIA if args.criterion == "all" else (args.criterion,)
    verdicts = {c: strongly_consistent(s, t, c) for c in names}
    _emit(verdicts)
    return OK if all(verdicts.values()) else FAILED


def cmd_concat(args) -> int:
    T = read_file(args.first, read_spectrum)
    T2 = read_file(args.second, read_spectrum)
    sys.stdout.write(write_spectrum(concat(T, T2)))
    return OK


def cmd_counterexample(args) -> int:
    report = counterexample_report(construct=args.construct)
    catalog.record_run("counterexample", {"construct": args.construct}, report)
    _emit(report)
    return OK if report["refuted"] else FAILED


def cmd_aggregate(args) -> int:
    D = read_file(args.domain, read_domain)
    nu = read_file(args.votes, read_opinion)
    outside = [o for o in nu.counts if o not in D]
    if outside:
        raise FormatError(f"{args.votes}: order {outside[0]} is not in the domain")
    rel = majority_relation(nu)
    social = rel.as_order()
    _emit({
        "voters": nu.total,
        "relation": sorted([list(p) for p in rel.pairs]),
        "complete": rel.is_complete(),
        "acyclic": not rel.has_cycle(),
        "order": list(social.word) if social else None,
    })
    return FAILED if rel.has_cycle() else OK


def cmd_render(args) -> int:
    T = read_file(args.spectrum, read_spectrum)
    spec = RenderSpec(
        target=args.format,
        scale=args.scale,
        snake=parse_order(args.snake) if args.snake else None,
        track=args.track,
        labels=args.labels,
    )
    _write(render_tiling(T, spec), args.out)
    return OK


def cmd_bruhat_dot(args) -> int:
    sys.stdout.write(render_bruhat_dot(args.n))
    return OK


def cmd_runs(args) -> int:
    for r in catalog.get_runs(args.command, limit=args.limit):
        _emit({"id": r["id"], "command": r["command"], "created_at": r["created_at"],
               "params": r["params"], "result": r["result"]})
    return OK


# ─── Parser ──────────────────────────────────────────────────────

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="condorcet", description="Condorcet domains of rhombus-tiling type.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("phi", help="size of Fishburn's alternating-scheme domain")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("fishburn", help="Fishburn's domain and tiling")
    s.add_argument("--n", type=int, required=True)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--enumerate", action="store_true", help="print the domain's orders")
    g.add_argument("--tiling", metavar="OUT", help="write the tiling's spectrum to OUT")
    s.set_defaults(func=cmd_fishburn)

    s = sub.add_parser("tilings", help="tiling enumeration")
    tsub = s.add_subparsers(dest="action", required=True)
    e = tsub.add_parser("enumerate", help="all tilings of Z_n")
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--out", metavar="DIR")
    e.set_defaults(func=cmd_tilings)

    s = sub.add_parser("gamma", help="largest tiling domain on n alternatives")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--allow-slow", action="store_true")
    s.set_defaults(func=cmd_gamma)

    s = sub.add_parser("check", help="domain predicates")
    s.add_argument("domain")
    s.add_argument("--complete", action="store_true")
    s.add_argument("--peak-pit", action="store_true")
    s.add_argument("--semi-connected", action="store_true")
    s.add_argument("--connected", action="store_true")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("casting", help="casting tools")
    csub = s.add_subparsers(dest="action", required=True)
    a = csub.add_parser("apply", help="domain of a casting")
    a.add_argument("casting")
    a.set_defaults(func=cmd_casting)

    s = sub.add_parser("extend", help="extend a separated family to a spectrum")
    s.add_argument("family")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("sigma", help="orders of a tiling")
    s.add_argument("spectrum")
    s.add_argument("--count-only", action="store_true")
    s.set_defaults(func=cmd_sigma)

    s = sub.add_parser("consistent", help="strong consistency of two orders")
    s.add_argument("order1")
    s.add_argument("order2")
    s.add_argument("--criterion", choices=("all",) + CRITERIA, default="all")
    s.set_defaults(func=cmd_consistent)

    s = sub.add_parser("concat", help="stack two tilings and complete the gap")
    s.add_argument("first")
    s.add_argument("second")
    s.set_defaults(func=cmd_concat)

    s = sub.add_parser("counterexample", help="Φ(21)² against Φ(42)")
    s.add_argument("--construct", action="store_true", help="also build the n=42 tiling")
    s.set_defaults(func=cmd_counterexample)

    s = sub.add_parser("aggregate", help="majority relation of an opinion")
    s.add_argument("domain")
    s.add_argument("votes")
    s.set_defaults(func=cmd_aggregate)

    s = sub.add_parser("render", help="draw a tiling")
    s.add_argument("spectrum")
    s.add_argument("--format", choices=("svg", "tikz", "dot"), default="svg")
    s.add_argument("--snake", metavar="ORDER")
    s.add_argument("--track", type=int)
    s.add_argument("--labels", action="store_true")
    s.add_argument("--scale", type=float, default=60.0)
    s.add_argument("--out", metavar="FILE")
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("bruhat-dot", help="Bruhat digraph as DOT")
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_bruhat_dot)

    s = sub.add_parser("runs", help="recorded verification runs")
    s.add_argument("--command")
    s.add_argument("--limit", type=int, default=20)
    s.set_defaults(func=cmd_runs)

    return p


def main(argv=None) -> int:
    settings = get_settings()
    logging.basicConfig(
        level=getattr(logging, settings.log_level, logging.WARNING),
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        catalog.init_db()
        return args.func(args)
    except (FormatError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return BAD_INPUT
    except CountOverflowError as e:
        print(f"error: {e}", file=sys.stderr)
        return FAILED
    except RuntimeError as e:
        log.error("self-check failed: %s", e)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
