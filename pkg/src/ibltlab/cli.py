"""Command-line front end: every analysis as a reproducible CSV emitter.

stdout carries CSV (header always present), stderr carries diagnostics.
Exit codes: 0 success, 1 usage error, 2 resource guard exceeded,
3 internal error.  All randomness flows from --seed, so repeated
invocations with identical flags produce byte-identical CSV, regardless
of worker count.
"""

import argparse
import csv
import os
import sys
import traceback

from ibltlab.bounds import size2_asymptote, union_bound
from ibltlab.census import StoppingCensus
from ibltlab.errors import ResourceGuardError
from ibltlab.hashing import HashKind
from ibltlab.oracle import ORACLE_GUARD, exact_failure_probability
from ibltlab.simulate import KeyModel, TrialConfig, sweep


def _fmt(x: float) -> str:
    return repr(float(x))  # shortest string that parses back to the same double


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors are exit code 1, not argparse's 2
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ibltlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ztable", help="exact stopping-matrix counts on a rectangle")
    p.add_argument("lmax", type=int, help="largest subtable size")
    p.add_argument("nmax", type=int, help="largest column count")
    p.add_argument("--cache", help="census cache file to load from / save to")

    p = sub.add_parser("bound", help="union bound on the listing failure probability")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--ell", type=int, help="cells per subtable")
    group.add_argument("--m", type=int, help="total cells (k subtables of m/k)")
    p.add_argument("--n", type=int, required=True, help="number of entries")
    p.add_argument("--k", type=int, required=True, help="number of hash functions")
    p.add_argument("--breakdown", action="store_true", help="emit one row per subset size")

    p = sub.add_parser("simulate", help="Monte Carlo listing-failure estimation")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--m", type=int, help="total cells")
    group.add_argument("--sweep", help="m grid as start:stop:step (stop inclusive)")
    p.add_argument("--b", type=int, default=32, help="key/value width in bits")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--scheme",
        choices=[kind.value for kind in HashKind],
        default=HashKind.PARTITIONED_UNIFORM.value,
    )
    p.add_argument(
        "--key-model",
        choices=[model.value for model in KeyModel],
        default=None,
        help="defaults to iid, or distinct under the ss-avoiding scheme",
    )
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--verbose", action="store_true", help="progress on stderr")

    p = sub.add_parser("oracle", help="exact failure probability by enumeration")
    p.add_argument("ell", type=int)
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--guard", type=int, default=ORACLE_GUARD)

    return parser


def cmd_ztable(args, out) -> int:
    if args.lmax < 1 or args.nmax < 1:
        raise ValueError("lmax and nmax must be positive")
    if args.cache and os.path.exists(args.cache):
        census = StoppingCensus.load(args.cache)
    else:
        census = StoppingCensus()
    census.fill(args.lmax, args.nmax)
    if args.cache:
        census.save(args.cache)
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["ell", "n", "z"])
    for ell in range(1, args.lmax + 1):
        for n in range(1, args.nmax + 1):
            writer.writerow([ell, n, census.count(ell, n)])
    return 0


def cmd_bound(args, out) -> int:
    if args.ell is not None:
        ell = args.ell
    else:
        if args.m % args.k != 0:
            raise ValueError(f"m = {args.m} must be divisible by k = {args.k}")
        ell = args.m // args.k
    breakdown = union_bound(StoppingCensus(), ell, args.n, args.k)
    p2 = size2_asymptote(ell, args.n, args.k)
    writer = csv.writer(out, lineterminator="\n")
    summary = [
        ell,
        args.n,
        args.k,
        _fmt(breakdown.total),
        _fmt(breakdown.total_clamped),
        _fmt(p2),
    ]
    if args.breakdown:
        writer.writerow(["ell", "n", "k", "bound_raw", "bound_clamped", "p2", "i", "term"])
        for i, term in breakdown.terms:
            writer.writerow(summary + [i, _fmt(term)])
    else:
        writer.writerow(["ell", "n", "k", "bound_raw", "bound_clamped", "p2"])
        writer.writerow(summary)
    return 0


def _parse_sweep(spec: str) -> list[int]:
    try:
        start, stop, step = (int(part) for part in spec.split(":"))
    except ValueError:
        raise ValueError(f"--sweep expects start:stop:step, got {spec!r}") from None
    if step < 1 or stop < start:
        raise ValueError(f"bad sweep grid {spec!r}")
    return list(range(start, stop + 1, step))


def cmd_simulate(args, out) -> int:
    scheme = HashKind(args.scheme)
    if args.key_model is None:
        key_model = (
            KeyModel.DISTINCT_UNIFORM
            if scheme is HashKind.SS_AVOIDING
            else KeyModel.IID_UNIFORM
        )
    else:
        key_model = KeyModel(args.key_model)
    m_values = [args.m] if args.m is not None else _parse_sweep(args.sweep)
    base = TrialConfig(
        n=args.n,
        m=m_values[0],
        k=args.k,
        b=args.b,
        trials=args.trials,
        seed=args.seed,
        scheme=scheme,
        key_model=key_model,
    )
    census = StoppingCensus()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        [
            "m", "ell", "n", "k", "b", "scheme", "trials", "failures",
            "p_hat", "ci_low", "ci_high", "bound_clamped", "p2", "seed",
        ]
    )
    for m in m_values:
        report = sweep(base, [m], census=census, workers=args.workers)[0]
        writer.writerow(
            [
                report.m,
                report.ell,
                report.n,
                report.k,
                report.b,
                report.scheme.value,
                report.trials,
                report.failures,
                _fmt(report.p_hat),
                _fmt(report.ci_low),
                _fmt(report.ci_high),
                _fmt(report.bound),
                _fmt(report.p2),
                args.seed,
            ]
        )
        if args.verbose:
            print(
                f"m={report.m}: {report.failures}/{report.trials} failures",
                file=sys.stderr,
            )
    return 0


def cmd_oracle(args, out) -> int:
    exact = exact_failure_probability(args.ell, args.n, args.k, guard=args.guard)
    bound = union_bound(StoppingCensus(), args.ell, args.n, args.k).total_clamped
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(
        ["ell", "n", "k", "exact_num", "exact_den", "exact_float", "bound_clamped"]
    )
    writer.writerow(
        [
            args.ell,
            args.n,
            args.k,
            exact.numerator,
            exact.denominator,
            _fmt(float(exact)),
            _fmt(bound),
        ]
    )
    return 0


_COMMANDS = {
    "ztable": cmd_ztable,
    "bound": cmd_bound,
    "simulate": cmd_simulate,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args, sys.stdout)
    except ResourceGuardError as exc:
        print(f"ibltlab: resource guard: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"ibltlab: error: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        return 0
    except Exception:
        traceback.print_exc()
        return 3


if __name__ == "__main__":
    sys.exit(main())
