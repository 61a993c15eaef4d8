"""Command-line driver: compile, verify, bench, render.

Exit codes: 0 success / verified, 1 counterexample or failed search,
2 bad input (including constant or non-monotone targets).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .compile import METHODS, Compiled, compile_function, kofn_dnc, all_nails
from .errors import InputError, SearchExhausted
from .formats import format_word, read_function, read_word
from .kofn_random import DEFAULT_SEED, SampleConfig, default_depth, default_verifier, depth_schedule, find_word
from .monotone import MinimalSets, Threshold, TruthTable, parse_formula
from .render import render_svg
from .verify import DEFAULT_EXHAUSTIVE_CAP, verify_exhaustive, verify_sampled

BENCH_HEADER = ["construction", "n", "k", "depth", "written_length", "reduced_length",
                "verified", "attempts", "seconds"]


def _add_spec_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--threshold", nargs=2, type=int, metavar=("K", "N"),
                   help="hang iff at least K of N nails remain")
    g.add_argument("--all-nails", type=int, metavar="N", help="fall on removal of any one of N nails")
    g.add_argument("--formula", help='AND/OR formula, e.g. "x1 & x2 | x3"')
    g.add_argument("--sets", help='minimal sets, e.g. "1,2;3"')
    g.add_argument("--table", help="truth table bitstring indexed by nail bitmask")
    g.add_argument("--function", metavar="FILE", help="JSON function descriptor")
    p.add_argument("--n", type=int, help="number of nails for --formula/--sets/--table")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--exhaustive-cap", type=int, default=DEFAULT_EXHAUSTIVE_CAP)


def _spec_from_args(args):
    if args.threshold:
        k, n = args.threshold
        return Threshold(n, k)
    if args.all_nails is not None:
        return Threshold(args.all_nails, args.all_nails)
    if args.formula is not None:
        return parse_formula(args.formula, args.n)
    if args.sets is not None:
        sets = [tuple(int(x) for x in part.split(",") if x.strip()) for part in args.sets.split(";")]
        if args.n is None:
            raise InputError("--sets needs --n")
        return MinimalSets(args.n, tuple(sets))
    if args.table is not None:
        return TruthTable.from_bitstring(args.table, args.n)
    return read_function(args.function)


def _default_method(args) -> str:
    if args.all_nails is not None:
        return "all-nails"
    if args.threshold:
        return "dnc"
    if args.formula is not None:
        return "formula"
    return "lambda"


def _compile_random(f, args) -> Compiled:
    if not isinstance(f, Threshold):
        raise InputError("the random method compiles threshold targets only")
    depth = args.depth if args.depth is not None else default_depth(f.rank, f.k)
    config = SampleConfig(f.rank, f.k, depth, seed=args.seed, max_retries=args.max_retries)
    verifier = default_verifier(args.exhaustive_cap, args.trials or 4096, args.seed)
    res = find_word(config, verifier)
    params = {"n": f.rank, "k": f.k, "seed": args.seed, "attempt_seed": res.seed,
              "depth": depth, "attempts": res.attempts, "max_retries": args.max_retries}
    return Compiled(res.word, f.rank, "random", params)


def cmd_compile(args) -> int:
    f = _spec_from_args(args)
    method = args.method or _default_method(args)
    if method == "random":
        try:
            compiled = _compile_random(f, args)
        except SearchExhausted as exc:
            failures = [{"attempt": a.attempt, "seed": a.seed, "counterexample_count": a.counterexample_count,
                         "counterexamples": [c.__dict__ for c in a.counterexamples]} for a in exc.attempts]
            print(json.dumps({"error": str(exc), "attempts": failures}, indent=2), file=sys.stderr)
            return 1
    else:
        compiled = compile_function(f, method)
    word = compiled.expr.flatten(compiled.rank)
    text = format_word(word)
    prov = compiled.provenance()
    if args.output:
        Path(args.output).write_text(text)
        prov_path = args.provenance or args.output + ".json"
    else:
        sys.stdout.write(text)
        prov_path = args.provenance
    if prov_path:
        Path(prov_path).write_text(json.dumps(prov, indent=2) + "\n")
    return 0


def cmd_verify(args) -> int:
    w = read_word(args.word)
    f = _spec_from_args(args)
    if args.trials is not None:
        report = verify_sampled(w, f, args.trials, args.seed, limit=args.limit)
    else:
        report = verify_exhaustive(w, f, cap=args.exhaustive_cap, limit=args.limit)
    print(json.dumps(report.to_json(), indent=2))
    return 1 if report.verified is False else 0


def _bench_rows(args):
    if args.suite == "all-nails":
        for n in range(args.n_min, args.n_max + 1):
            yield "all-nails", n, n, "", lambda n=n: (all_nails(n), 1)
    elif args.suite == "dnc":
        for n in range(args.n_min, args.n_max + 1):
            ks = [args.k] if args.k else range(1, n + 1)
            for k in ks:
                yield "dnc", n, k, "", lambda n=n, k=k: (kofn_dnc(n, k), 1)
    else:
        for n in range(args.n_min, args.n_max + 1):
            k = args.k or (n + 1) // 2
            depth = args.depth if args.depth is not None else depth_schedule(n, Fraction(1, 1 << n), k)

            def run(n=n, k=k, depth=depth):
                config = SampleConfig(n, k, depth, seed=args.seed, max_retries=args.max_retries)
                res = find_word(config, default_verifier(args.exhaustive_cap, args.trials or 4096, args.seed))
                return res.word, res.attempts

            yield "random", n, k, depth, run


def cmd_bench(args) -> int:
    if args.n is not None:
        args.n_min = args.n_max = args.n
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    for name, n, k, depth, build in _bench_rows(args):
        start = time.perf_counter()
        try:
            expr, attempts = build()
        except SearchExhausted as exc:
            writer.writerow([name, n, k, depth, "", "", False, len(exc.attempts), ""])
            continue
        report = verify_exhaustive(expr, Threshold(n, k), cap=args.exhaustive_cap)
        seconds = f"{time.perf_counter() - start:.3f}" if args.timing else ""
        writer.writerow([name, n, k, depth, report.written_length, report.reduced_length,
                         report.verified, attempts, seconds])
    if args.output:
        Path(args.output).write_text(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())
    return 0


def cmd_render(args) -> int:
    w = read_word(args.word)
    svg = render_svg(w, args.rank)
    if args.output:
        Path(args.output).write_text(svg)
    else:
        sys.stdout.write(svg)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hangword", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a hanging rule into a word")
    _add_spec_args(p)
    _add_common(p)
    p.add_argument("--method", choices=METHODS)
    p.add_argument("-o", "--output", help="word file to write (default: stdout)")
    p.add_argument("--provenance", help="provenance JSON path (default: OUTPUT.json)")
    p.add_argument("--depth", type=int)
    p.add_argument("--max-retries", type=int, default=50)
    p.add_argument("--trials", type=int, help="sampled verification above the exhaustive cap")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("verify", help="check a word file against a hanging rule")
    p.add_argument("word")
    _add_spec_args(p)
    _add_common(p)
    p.add_argument("--trials", type=int, help="sample this many random states instead of all")
    p.add_argument("--limit", type=int, default=16, help="max counterexamples listed")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="CSV sweep over a construction")
    p.add_argument("--suite", choices=["all-nails", "dnc", "random"], required=True)
    p.add_argument("--n-min", type=int, default=2)
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--n", type=int, help="single n (overrides the range)")
    p.add_argument("--k", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--max-retries", type=int, default=50)
    p.add_argument("--trials", type=int)
    p.add_argument("--timing", action="store_true", help="fill the seconds column (breaks byte-stable output)")
    p.add_argument("-o", "--output")
    _add_common(p)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("render", help="draw a word file as SVG")
    p.add_argument("word")
    p.add_argument("--rank", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
