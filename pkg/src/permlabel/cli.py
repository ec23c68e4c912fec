"""Command-line entry point: ``permlabel <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import harness
from .codec import LabelFormatError, format_labels, parse_labels
from .graph import UNREACHABLE, format_permutation, random_permutation, read_permutation
from .render import render_svg

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _scheme_list(text: str) -> tuple[str, ...]:
    names = tuple(s.strip().upper() for s in text.split(",") if s.strip())
    bad = [s for s in names if s not in harness.SCHEMES]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown scheme(s) {', '.join(bad) or text!r}; "
                                         f"choose from {', '.join(harness.SCHEMES)}")
    return names


def _size_list(text: str) -> list[int]:
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("sizes must be positive integers")
    return sizes


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _emit(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_permutation(path: str) -> list[int]:
    try:
        return read_permutation(path)
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read permutation {path}: {exc}") from None


# --- commands ----------------------------------------------------------------

def cmd_gen(args) -> int:
    _emit(format_permutation(random_permutation(args.n, args.seed)), args.out)
    return EXIT_OK


def cmd_encode(args) -> int:
    pi = _load_permutation(args.perm)
    labels = harness.encode_all(pi, [args.scheme])[args.scheme]
    _emit(format_labels(args.scheme, labels), args.out)
    return EXIT_OK


def cmd_query(args) -> int:
    try:
        scheme_name, labels = parse_labels(Path(args.labels).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read labels {args.labels}: {exc}") from None
    if scheme_name not in harness.DECODERS:
        raise UsageError(f"unknown scheme tag {scheme_name!r} in {args.labels}")
    missing = [v for v in (args.id1, args.id2) if v not in labels]
    if missing:
        raise UsageError(f"no label for vertex {missing[0]}")
    try:
        d = harness.DECODERS[scheme_name](labels[args.id1], labels[args.id2])
    except LabelFormatError as exc:
        raise UsageError(f"malformed label: {exc}") from None
    print("unreachable" if d is UNREACHABLE else d)
    return EXIT_OK


def _report_failure(pi: list[int], reports: dict[str, harness.RunReport], schemes) -> None:
    for rep in reports.values():
        for m in rep.mismatches[:1]:
            print(f"counterexample ({rep.scheme}): permutation {' '.join(map(str, m.perm))}")
            print(f"  pair ({m.u}, {m.v}): expected {m.expected}, decoded {m.actual}")
    small = harness.shrink(pi, harness.failing_under(schemes))
    if small != pi:
        print(f"shrunk to n={len(small)}: {' '.join(map(str, small))}")
        for rep in harness.verify_permutation(small, schemes).values():
            for m in rep.mismatches[:1]:
                print(f"  {rep.scheme} pair ({m.u}, {m.v}): expected {m.expected}, decoded {m.actual}")


def cmd_verify(args) -> int:
    schemes = args.scheme
    if args.perm is not None:
        reports = harness.verify_permutation(_load_permutation(args.perm), schemes, args.perm)
    elif args.random is not None:
        n, count, seed = args.random
        if n < 1 or count < 1:
            raise UsageError("--random needs n >= 1 and count >= 1")
        reports = harness.verify_random(n, count, seed, schemes, jobs=args.jobs)
    else:
        if not 1 <= args.exhaustive <= 9:
            raise UsageError("--exhaustive n must be between 1 and 9")
        reports = harness.verify_exhaustive(args.exhaustive, schemes, jobs=args.jobs)
    for rep in reports.values():
        print(rep.summary())
    if any(rep.roundtrip_failed for rep in reports.values()):
        return EXIT_MISMATCH
    failed = [rep for rep in reports.values() if not rep.passed]
    if not failed:
        return EXIT_OK
    first = failed[0].mismatches[0]
    _report_failure(first.perm, {r.scheme: r for r in failed}, schemes)
    return EXIT_MISMATCH


def cmd_stats(args) -> int:
    rows = harness.stats_sweep(args.sizes, args.seeds, args.scheme)
    _emit(harness.rows_to_csv(rows), args.out)
    return EXIT_OK


def cmd_render(args) -> int:
    _emit(render_svg(_load_permutation(args.perm), augmented=args.augmented), args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    res = harness.bench(args.n, args.queries, args.seed, args.scheme)
    print(f"n={res.n} scheme={args.scheme} queries={res.queries} seconds={res.seconds:.3f} "
          f"mean_ns={res.mean_latency * 1e9:.0f} throughput={res.throughput:.0f}/s")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permlabel",
                                     description="Distance labels for permutation graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a seeded random permutation")
    p.add_argument("n", type=_positive)
    p.add_argument("seed", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("encode", help="label every vertex of a permutation graph")
    p.add_argument("--scheme", choices=harness.SCHEMES, default="L3")
    p.add_argument("perm")
    p.add_argument("--out")
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("query", help="distance between two vertices from their labels")
    p.add_argument("labels")
    p.add_argument("id1", type=int)
    p.add_argument("id2", type=int)
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="compare decoded distances with BFS")
    p.add_argument("--scheme", type=_scheme_list, default=harness.SCHEMES,
                   help="comma-separated subset of L3,L5,L7 (default: all)")
    p.add_argument("--jobs", type=_positive, default=1)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--perm")
    src.add_argument("--random", nargs=3, type=int, metavar=("N", "COUNT", "SEED"))
    src.add_argument("--exhaustive", type=int, metavar="N")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="label sizes over a sweep, as CSV")
    p.add_argument("--sizes", type=_size_list, required=True)
    p.add_argument("--seeds", type=_positive, required=True)
    p.add_argument("--scheme", type=_scheme_list, default=harness.SCHEMES)
    p.add_argument("--out")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("render", help="SVG of boundaries and layers")
    p.add_argument("perm")
    p.add_argument("--out", required=True)
    p.add_argument("--augmented", action="store_true")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bench", help="time the scalar decoder")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--queries", type=_positive, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scheme", choices=harness.SCHEMES, default="L3")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed the message
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"permlabel: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
