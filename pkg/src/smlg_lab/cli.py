"""Command-line front end: ``smlg-lab <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import harness
from .editdist import substring_edit_distance
from .matcher import find_match_path, match_bruteforce, match_online
from .model import (
    parse_graph,
    parse_ov,
    parse_pattern,
    serialize_graph,
    serialize_ov,
    serialize_pattern,
)
from .ov import HypothesisViolation, split_plan, verify_plan
from .reduction import Variant, assemble_graph, build_pattern
from .sic import build_sic_graph, parse_sets, sic_query


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _parse_sizes(text: str) -> list[tuple[int, int, int]]:
    sizes = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if chunk:
            n, m, d = (int(v) for v in chunk.split(","))
            sizes.append((n, m, d))
    return sizes


def _floats(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def cmd_gen_ov(args) -> int:
    rng = harness.trial_rngs(args.seed, 1)[0]
    inst = harness.random_ov(rng, args.n, args.m, args.d, args.p, args.planted)
    _write(args.output, serialize_ov(inst))
    return 0


def cmd_reduce(args) -> int:
    if args.kind == "ov-to-smlg":
        inst = parse_ov(_read(args.input))
        red = assemble_graph(inst.X, inst.d, args.variant)
        _write(args.graph_out, serialize_graph(red.graph))
        if args.pattern_out:
            _write(args.pattern_out, serialize_pattern(build_pattern(inst.Y, inst.d)))
    else:
        sets, u = parse_sets(_read(args.input))
        _write(args.graph_out, serialize_graph(build_sic_graph(sets, u)))
    return 0


def cmd_match(args) -> int:
    g = parse_graph(_read(args.graph))
    p = parse_pattern(_read(args.pattern))
    found = match_bruteforce(g, p) if args.bruteforce else match_online(g, p)
    print("true" if found else "false")
    if args.witness and found:
        print(" ".join(map(str, find_match_path(g, p))))
    return 0


def cmd_verify(args) -> int:
    report = harness.run_verify_reduction(
        args.trials, args.max_n, args.max_m, args.max_d, args.seed, args.variant,
        min_n=args.min_n, min_m=args.min_m, p=args.p,
    )
    if args.csv:
        rows = [
            {k: getattr(r, k) for k in ("index", "N", "M", "d", "planted", "ov", "online", "brute", "v", "e", "p")}
            for r in report.results
        ]
        _write(args.csv, harness.rows_to_csv(rows, list(rows[0]) if rows else []))
    if not args.quiet:
        sys.stdout.write(report.summary())
    bad = report.failures + report.structure_failures
    if bad:
        out = Path(args.failures_out)
        out.write_text("".join(r.instance for r in bad[:1]), encoding="utf-8")
        print(f"first failing instance written to {out}", file=sys.stderr)
        return 1
    return 0


def cmd_split_plan(args) -> int:
    try:
        plan = split_plan(args.alpha, args.delta, args.beta, args.n)
    except HypothesisViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report = verify_plan(plan, args.n, args.alpha, args.delta, args.beta, args.tol)
    print("\n".join(harness.plan_lines(plan, report)))
    row = harness.run_split_grid([args.alpha], [args.delta], [args.beta], [args.n], args.tol)
    sys.stdout.write(harness.rows_to_csv(row, harness.GRID_HEADER))
    return 0 if report.ok else 1


def cmd_split_grid(args) -> int:
    rows = harness.run_split_grid(
        _floats(args.alphas), _floats(args.deltas), _floats(args.betas),
        [int(v) for v in args.ns.split(",")], args.tol,
    )
    _write(args.output, harness.rows_to_csv(rows, harness.GRID_HEADER))
    failed = [r for r in rows if r["status"] == "failed"]
    print(f"rows={len(rows)} failed={len(failed)}", file=sys.stderr)
    return 1 if failed else 0


def cmd_bench(args) -> int:
    records = harness.bench_matcher(
        _parse_sizes(args.sizes), args.repetitions, args.seed, args.variant, inner_loops=args.inner_loops
    )
    if args.output in (None, "-"):
        harness.write_bench_csv(records, sys.stdout)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            harness.write_bench_csv(records, fh)
    if args.slope and len({(r.n, r.m, r.d) for r in records}) >= 2:
        slope, _ = harness.scaling_slope(records)
        print(f"loglog_slope={slope:.3f}", file=sys.stderr)
    return 0


def cmd_subed(args) -> int:
    text = _read(args.text).rstrip("\n")
    pattern = _read(args.pattern).rstrip("\n")
    print(substring_edit_distance(text, pattern))
    return 0


def cmd_sic_query(args) -> int:
    if args.sets:
        sets, u = parse_sets(_read(args.sets))
        g = build_sic_graph(sets, u)
    else:
        g = parse_graph(_read(args.graph))
    print("true" if sic_query(g, args.i, args.j) else "false")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smlg-lab", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    variants = [v.value for v in Variant]

    p = sub.add_parser("gen-ov", help="write a random OV instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=float, default=0.5, help="probability of a 1 bit")
    p.add_argument("--planted", action="store_true", help="force one orthogonal pair")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen_ov)

    p = sub.add_parser("reduce", help="build reduction graphs from OV or set-family files")
    p.add_argument("kind", choices=["ov-to-smlg", "sic"])
    p.add_argument("input")
    p.add_argument("--variant", choices=variants, default="cyclic")
    p.add_argument("--graph-out", "-g")
    p.add_argument("--pattern-out", "-p")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("match", help="decide whether a pattern occurs in a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--pattern", required=True)
    p.add_argument("--witness", action="store_true", help="also print one matching path")
    p.add_argument("--bruteforce", action="store_true", help="use the exhaustive oracle")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("verify", help="cross-check the OV reduction on random instances")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--min-m", type=int, default=1)
    p.add_argument("--max-m", type=int, default=8)
    p.add_argument("--max-d", type=int, default=6)
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", choices=variants, default="cyclic")
    p.add_argument("--csv", help="write per-trial rows here")
    p.add_argument("--quiet", action="store_true", help="suppress the summary")
    p.add_argument("--failures-out", default="verify-failure.ov")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("split-plan", help="block sizes for given index exponents")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_split_plan)

    p = sub.add_parser("split-grid", help="certify split plans over a parameter grid")
    p.add_argument("--alphas", default=",".join(map(str, harness.DEFAULT_ALPHAS)))
    p.add_argument("--deltas", default=",".join(map(str, harness.DEFAULT_DELTAS)))
    p.add_argument("--betas", default=",".join(map(str, harness.DEFAULT_BETAS)))
    p.add_argument("--ns", default=",".join(map(str, harness.DEFAULT_NS)))
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_split_grid)

    p = sub.add_parser("bench", help="time the online matcher on reduction instances")
    p.add_argument("--sizes", default="1,1,4;2,2,4;4,4,4;8,8,4;16,16,4;32,32,4", help="'N,M,d;N,M,d;...'")
    p.add_argument("--repetitions", type=int, default=5)
    p.add_argument("--inner-loops", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--variant", choices=variants, default="cyclic")
    p.add_argument("--slope", action="store_true", help="report the log-log scaling slope on stderr")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("subed", help="substring edit distance of two text files")
    p.add_argument("--text", required=True)
    p.add_argument("--pattern", required=True)
    p.set_defaults(func=cmd_subed)

    p = sub.add_parser("sic-query", help="set intersection query via graph matching")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--sets", help="set-family file")
    src.add_argument("--graph", help="graph file built by 'reduce sic'")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.set_defaults(func=cmd_sic_query)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
