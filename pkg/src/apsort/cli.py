"""Command-line front end: ``apsort {sort,bench,verify,trace}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from apsort import bench, fileio
from apsort.core import PHASES, KeyedList, KeyRangeError, sort, sort_full_universe
from apsort.datasets import DISTRIBUTIONS, DatasetSpec
from apsort.trace import MAX_TRACE_KEYS, select, trace_first_iteration
from apsort.verification import first_descent, verify

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_MALFORMED = 2
EXIT_KEY_RANGE = 3
EXIT_BENCH_FAILED = 4


def _err(msg: str) -> None:
    print(f"apsort: {msg}", file=sys.stderr)


def _read(path, fmt):
    if path in (None, "-"):
        data = sys.stdin.buffer.read()
        return fileio.parse_binary(data) if fmt == "binary" else fileio.parse_text(data)
    return fileio.read_keys(path, fmt)


def _write(path, payload: bytes):
    if path in (None, "-"):
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        Path(path).write_bytes(payload)


def cmd_sort(args) -> int:
    try:
        keys = _read(args.input, args.format)
    except (fileio.MalformedInput, OSError) as e:
        _err(str(e))
        return EXIT_MALFORMED
    kl = KeyedList.with_index_payloads(keys) if args.payload_index else KeyedList(keys)
    try:
        if args.full_universe:
            sort_full_universe(kl, record=False)
        else:
            sort(kl, record=False, verify=False)
    except KeyRangeError as e:
        _err(f"{e} (pass --full-universe)")
        return EXIT_KEY_RANGE

    if args.format == "binary":
        _write(args.output, fileio.format_binary(kl.keys))
        if args.payload_index:
            if args.output in (None, "-"):
                _err("binary output with --payload-index needs --output")
                return EXIT_MALFORMED
            Path(str(args.output) + ".idx").write_bytes(
                fileio.format_binary(kl.payloads.astype(np.uint64))
            )
    else:
        columns = (kl.payloads,) if args.payload_index else ()
        _write(args.output, fileio.format_text(kl.keys, columns))
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        algos = [a for a in args.algos.split(",") if a]
        specs = [DatasetSpec(n, args.dist, args.beta, args.seed) for n in args.n]
    except ValueError as e:
        _err(str(e))
        return EXIT_MALFORMED
    out = open(args.csv, "w", newline="") if args.csv not in (None, "-") else sys.stdout
    try:
        rows = bench.write_csv(bench.run_bench(specs, algos, args.trials), out)
    except bench.VerificationFailed as e:
        _err(f"verification failed: {e}")
        return EXIT_BENCH_FAILED
    except ValueError as e:
        _err(str(e))
        return EXIT_MALFORMED
    finally:
        if out is not sys.stdout:
            out.close()
    for line in bench.ratio_lines(bench.summarize(rows)):
        print(line, file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        original = _read(args.input, args.format)
        candidate = _read(args.candidate, args.format)
    except (fileio.MalformedInput, OSError) as e:
        _err(str(e))
        return EXIT_MALFORMED
    if len(original) != len(candidate):
        _err(f"length: input has {len(original)} keys, candidate has {len(candidate)}")
        return EXIT_MISMATCH
    result = verify(original, candidate)
    if not result.multiset_preserved:
        _err("multiset: candidate is not a permutation of the input")
        return EXIT_MISMATCH
    if not result.sorted:
        i = first_descent(candidate)
        _err(f"order: candidate[{i}]={candidate[i]} > candidate[{i + 1}]={candidate[i + 1]}")
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_trace(args) -> int:
    try:
        keys = _read(args.input, args.format)
    except (fileio.MalformedInput, OSError) as e:
        _err(str(e))
        return EXIT_MALFORMED
    if len(keys) > MAX_TRACE_KEYS:
        _err(f"trace is limited to {MAX_TRACE_KEYS} keys, got {len(keys)}")
        return EXIT_MALFORMED
    try:
        snaps = trace_first_iteration(keys)
    except KeyRangeError as e:
        _err(str(e))
        return EXIT_KEY_RANGE
    for snap in select(snaps, args.phase):
        print(snap.header())
        print(snap.words)
    return EXIT_OK


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(float(tok)) for tok in text.split(",") if tok]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}")
    if any(n < 0 for n in sizes):
        raise argparse.ArgumentTypeError("sizes must be non-negative")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apsort", description="In-place associative permutation sort for integer keys."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def io_flags(p, output=True):
        p.add_argument("--input", default="-", help="key file (default: stdin)")
        if output:
            p.add_argument("--output", default="-", help="destination (default: stdout)")
        p.add_argument("--format", choices=fileio.FORMATS, default="text")

    p = sub.add_parser("sort", help="sort a key file")
    io_flags(p)
    p.add_argument("--payload-index", action="store_true",
                   help="carry original indices and write them alongside the keys")
    p.add_argument("--full-universe", action="store_true",
                   help="accept keys >= 2**63 by splitting the key universe")
    p.set_defaults(func=cmd_sort)

    p = sub.add_parser("bench", help="run a verified benchmark matrix, write CSV")
    p.add_argument("--n", type=_sizes, default=[1_000_000],
                   help="comma-separated list sizes (default 1e6)")
    p.add_argument("--dist", choices=DISTRIBUTIONS, default="uniform")
    p.add_argument("--beta", type=float, default=1.0, help="key range factor m = beta*n")
    p.add_argument("--algos", default=",".join(bench.DEFAULT_ALGOS),
                   help=f"comma-separated subset of {','.join(bench.RUNNERS)}")
    p.add_argument("--trials", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default="-", help="CSV destination (default: stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("verify", help="check a candidate is a sorted permutation of an input")
    io_flags(p, output=False)
    p.add_argument("--candidate", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("trace", help="print the list after each phase of the first iteration")
    io_flags(p, output=False)
    p.add_argument("--phase", choices=PHASES + ("all",), default="all")
    p.set_defaults(func=cmd_trace)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
