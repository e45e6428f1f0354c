"""Command-line front end: ``gogword solve|validate|bench|gen``.

Exit codes: 0 decided / ok, 1 schema report not empty, 2 input error,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench
from .baselines import gen_slow_many, gen_slow_one
from .config import load_schema
from .derivation import ENGINES, InvariantViolation, solve
from .fixtures import FIXTURE_NAMES, load_fixture
from .words import SchemaError, format_word, validate_schema

EXIT_OK, EXIT_REPORT, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


def _load(spec: str):
    """A schema file, or the name of a shipped fixture when no such file exists."""
    if not Path(spec).exists() and spec in FIXTURE_NAMES:
        return load_fixture(spec)
    return load_schema(spec)


def _int_list(text: str) -> list:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part.startswith("2^"):
            out.append(2 ** int(part[2:]))
        else:
            out.append(int(part))
    return out


def _names(text: str) -> list:
    return [p.strip() for p in text.split(",") if p.strip()]


def cmd_solve(args) -> int:
    schema = _load(args.schema)
    if args.word is not None:
        texts = [args.word]
    elif args.word_file is not None:
        texts = [line for line in Path(args.word_file).read_text().splitlines() if line.strip()]
    else:
        raise SchemaError("give --word or --word-file")
    for text in texts:
        word = schema.parse_word(text)
        report = solve(schema, word, args.engine, check_invariants=args.check_invariants)
        print(f"{report.verdict} iterations={report.iterations} bound={report.bound} "
              f"charge={report.charge} oracle_calls={report.oracle_calls} length={report.input_length}")
        if args.check_invariants:
            for entry in report.invariant_log:
                print("invariant " + json.dumps(entry, sort_keys=True))
    return EXIT_OK


def cmd_validate(args) -> int:
    schema = _load(args.schema)
    report = validate_schema(schema)
    for line in report:
        print(line)
    if not report:
        print(f"ok: {len(schema.vertices)} vertices, {len(schema.edges)} edges")
    return EXIT_REPORT if report else EXIT_OK


def cmd_bench(args) -> int:
    records = bench.run_bench(_names(args.families), _int_list(args.sizes), _names(args.algorithms),
                              args.reps, args.seed, args.jobs)
    try:
        if args.out == "-":
            bench.write_csv(records, sys.stdout)
        else:
            bench.write_csv(records, args.out)
    except OSError as exc:
        raise SchemaError(f"cannot write {args.out!r}: {exc.strerror}") from None
    bench.print_summary(records, sys.stderr if args.out == "-" else sys.stdout)
    return EXIT_OK


def cmd_gen(args) -> int:
    for family in _names(args.families):
        for k in _int_list(args.sizes):
            if family == "slow_many":
                word = gen_slow_many(k)
            elif family == "slow_one":
                word = gen_slow_one(k)
            else:
                word = bench.family_word(family, k, args.seed)
            print(format_word(word))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gogword", description="Word problem in graphs of groups.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="decide whether a word is trivial")
    s.add_argument("--schema", required=True, help="schema YAML file or fixture name")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--word", help="word text, letters separated by spaces")
    g.add_argument("--word-file", help="file with one word per line")
    s.add_argument("--engine", choices=ENGINES, default=None)
    s.add_argument("--check-invariants", action="store_true")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("validate", help="check a schema's structural invariants")
    v.add_argument("--schema", required=True)
    v.set_defaults(func=cmd_validate)

    b = sub.add_parser("bench", help="run the charge benchmark and write CSV")
    b.add_argument("--families", default="slow_many")
    b.add_argument("--sizes", default="64,128,256", help="comma list; 'a..b' ranges and '2^k' allowed")
    b.add_argument("--algorithms", default="many,one,middle")
    b.add_argument("--reps", type=int, default=1)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out", default="-")
    b.set_defaults(func=cmd_bench)

    w = sub.add_parser("gen", help="print words of the benchmark families")
    w.add_argument("--families", default="slow_many")
    w.add_argument("--sizes", default="1")
    w.add_argument("--seed", type=int, default=0)
    w.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"error: invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (SchemaError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
