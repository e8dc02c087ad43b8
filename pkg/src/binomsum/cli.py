"""Command-line front end. Every subcommand writes a CSV table.

    binomsum pdf --sizes 2 --probs 0.5
    binomsum cdf --sizes 12,14,4 --probs 0.07,0.04,0.1 --lower-tail false
    binomsum quantile --sizes 100,100 --probs 0.5 --p 0.025,0.5,0.975
    binomsum sample --sizes 20,30 --probs 0.2,0.7 --count 1000 --seed 7
    binomsum compare --mode two-binomial --m 100 --n 100 --p 0.5 --stat cdf
    binomsum compare --mode mixture --preset healthcare --truth simulation --trials 1000
    binomsum bench --preset healthcare --trials 1000,10000,100000,1000000
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import sys

import numpy as np

from .density import pmf_at
from .model import MixtureError, healthcare_mixture, new_mixture
from .oracle import GuardExceeded
from .quantile import QuantileQuery, quantile, random
from .reports import bench, compare_mixture, compare_two_binomial, fmt, write_bench, write_compare
from .tail import cdf_at

DEFAULT_SEED = 42
EXIT_USAGE = 2
EXIT_GUARD = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in ("true", "t", "1", "yes"):
        return True
    if lowered in ("false", "f", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--sizes", type=_ints, help="comma-separated trial counts")
    common.add_argument("--probs", type=_floats, help="comma-separated success probabilities")
    common.add_argument("--preset", choices=["healthcare"], help="use a built-in mixture")
    common.add_argument("--out", help="output path (default: standard output)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)

    parser = _Parser(prog="binomsum", description="Sum of independent binomials.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pdf = sub.add_parser("pdf", parents=[common], help="probability mass function")
    pdf.add_argument("--x", type=_ints, help="points (default: whole support)")
    pdf.add_argument("--log", action="store_true")

    cdf = sub.add_parser("cdf", parents=[common], help="distribution function")
    cdf.add_argument("--q", type=_ints, help="points (default: whole support)")
    cdf.add_argument("--lower-tail", type=_bool, default=True)
    cdf.add_argument("--log", action="store_true")

    qnt = sub.add_parser("quantile", parents=[common], help="quantile function")
    qnt.add_argument("--p", type=_floats, required=True)
    qnt.add_argument("--lower-tail", type=_bool, default=True)
    qnt.add_argument("--log", action="store_true")

    smp = sub.add_parser("sample", parents=[common], help="exact random draws")
    smp.add_argument("--count", type=int, default=1000)

    cmp_ = sub.add_parser("compare", parents=[common], help="accuracy study")
    cmp_.add_argument("--mode", choices=["two-binomial", "mixture"], required=True)
    cmp_.add_argument("--m", type=int)
    cmp_.add_argument("--n", type=int)
    cmp_.add_argument("--p", type=float)
    cmp_.add_argument("--truth", choices=["exact", "simulation"], default="exact")
    cmp_.add_argument("--trials", type=int)
    cmp_.add_argument("--stat", choices=["pdf", "cdf"], default="pdf")

    bch = sub.add_parser("bench", parents=[common], help="timing study")
    bch.add_argument("--trials", type=_ints, required=True)
    return parser


def _mixture(args):
    if args.preset == "healthcare":
        if args.sizes is not None or args.probs is not None:
            raise UsageError("--preset cannot be combined with --sizes/--probs")
        return healthcare_mixture()
    if args.sizes is None or args.probs is None:
        raise UsageError("--sizes and --probs are required (or --preset)")
    return new_mixture(args.sizes, args.probs)


def _table(handle, header, rows):
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _run(args, handle) -> None:
    cmd = args.command
    if cmd == "compare" and args.mode == "two-binomial":
        if None in (args.m, args.n, args.p):
            raise UsageError("two-binomial mode needs --m, --n and --p")
        if args.m < 1 or args.n < 1:
            raise UsageError("--m and --n must be positive")
        write_compare(compare_two_binomial(args.m, args.n, args.p, args.stat), handle)
        return

    mix = _mixture(args)
    if cmd == "pdf":
        x = np.arange(mix.total + 1) if args.x is None else np.asarray(args.x)
        values = pmf_at(mix, x, log_scale=args.log)
        _table(handle, ("s", "value"), ((int(s), fmt(v)) for s, v in zip(x, values)))
    elif cmd == "cdf":
        q = np.arange(mix.total + 1) if args.q is None else np.asarray(args.q)
        values = cdf_at(mix, q, lower_tail=args.lower_tail, log_scale=args.log)
        _table(handle, ("s", "value"), ((int(s), fmt(v)) for s, v in zip(q, values)))
    elif cmd == "quantile":
        queries = [QuantileQuery(p, args.lower_tail, args.log) for p in args.p]
        values = quantile(mix, queries)
        _table(handle, ("p", "s"), ((fmt(p), int(s)) for p, s in zip(args.p, values)))
    elif cmd == "sample":
        if args.count < 1:
            raise UsageError("--count must be positive")
        _table(handle, ("draw",), ((int(d),) for d in random(mix, args.count, args.seed)))
    elif cmd == "compare":
        if args.truth == "simulation" and args.trials is None:
            raise UsageError("--truth simulation needs --trials")
        if args.truth == "exact" and args.trials is not None:
            raise UsageError("--trials only applies to --truth simulation")
        report = compare_mixture(mix, args.truth, args.trials, args.seed, args.stat)
        write_compare(report, handle)
    elif cmd == "bench":
        if any(t < 1 for t in args.trials):
            raise UsageError("--trials must be positive")
        write_bench(bench(mix, args.trials, args.seed), handle)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.out:
            with open(args.out, "w", newline="") as handle:
                _run(args, handle)
        else:
            _run(args, sys.stdout)
    except UsageError as exc:
        print(f"binomsum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardExceeded as exc:
        print(f"binomsum: error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (MixtureError, ValueError) as exc:
        print(f"binomsum: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
