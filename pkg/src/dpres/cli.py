"""Command-line interface.

    dpres resolve --input F [--no-minimize] [--format text|json|csv]
    dpres check-gorenstein --input F
    dpres experiment char2 --l 3 --field 2 --socle 3 --trials N --seed S
    dpres hk --degrees a,b,c,...
    dpres verify --input F --window lo,hi

Exit codes: 0 success, 1 usage, 2 parse, 3 math precondition.
"""

from __future__ import annotations

import argparse
import sys

from .dpm import parse_dpmatrix
from .errors import MathPreconditionError, ParseError, UsageError
from .experiments import (
    ExperimentConfig,
    run_char2_experiment,
    run_check_gorenstein,
    run_hk,
    run_resolve,
    run_verify,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser():
    parser = _Parser(prog="dpres", description=__doc__)
    sub = parser.add_subparsers(dest="command")

    p_resolve = sub.add_parser("resolve", help="resolve a .dpm module")
    p_resolve.add_argument("--input", required=True)
    p_resolve.add_argument("--no-minimize", action="store_true")
    p_resolve.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p_resolve.add_argument("--seed", type=int, default=0)

    p_check = sub.add_parser("check-gorenstein", help="pairing search on M(P)")
    p_check.add_argument("--input", required=True)
    p_check.add_argument("--format", choices=("text", "json"), default="text")
    p_check.add_argument("--seed", type=int, default=0)

    p_exp = sub.add_parser("experiment", help="seeded experiment harness")
    exp_sub = p_exp.add_subparsers(dest="experiment")
    p_char2 = exp_sub.add_parser("char2", help="characteristic-2 parity runs")
    p_char2.add_argument("--l", type=int, default=3)
    p_char2.add_argument("--field", default="2")
    p_char2.add_argument("--socle", type=int, default=3)
    p_char2.add_argument("--trials", type=int, default=20)
    p_char2.add_argument("--seed", type=int, default=0)
    p_char2.add_argument("--format", choices=("text", "json"), default="text")

    p_hk = sub.add_parser("hk", help="Herzog-Kuhl pure Betti numbers")
    p_hk.add_argument("--degrees", required=True)
    p_hk.add_argument("--format", choices=("text", "json"), default="text")

    p_verify = sub.add_parser("verify", help="strand exactness evidence")
    p_verify.add_argument("--input", required=True)
    p_verify.add_argument("--window")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--seed", type=int, default=0)
    return parser


def _read_matrix(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")
    return parse_dpmatrix(text)


def _emit(report, fmt):
    if fmt == "json":
        sys.stdout.write(report.to_json())
    elif fmt == "csv":
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(report.to_text())


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("missing command")
        if args.command == "resolve":
            report = run_resolve(
                _read_matrix(args.input),
                no_minimize=args.no_minimize,
                seed=args.seed,
            )
            _emit(report, args.format)
        elif args.command == "check-gorenstein":
            report = run_check_gorenstein(_read_matrix(args.input), seed=args.seed)
            _emit(report, args.format)
        elif args.command == "experiment":
            if args.experiment != "char2":
                raise UsageError("unknown experiment (expected: char2)")
            field = args.field
            p = None if field == "QQ" else int(field)
            config = ExperimentConfig(
                name="char2",
                p=p,
                l=args.l,
                socle=args.socle,
                trials=args.trials,
                seed=args.seed,
            )
            report = run_char2_experiment(config)
            _emit(report, args.format)
        elif args.command == "hk":
            try:
                degrees = [int(x) for x in args.degrees.split(",")]
            except ValueError:
                raise UsageError(f"bad degree list {args.degrees!r}")
            report = run_hk(degrees)
            _emit(report, args.format)
        elif args.command == "verify":
            window = None
            if args.window:
                try:
                    lo, hi = (int(x) for x in args.window.split(","))
                except ValueError:
                    raise UsageError(f"bad window {args.window!r}")
                window = (lo, hi)
            report = run_verify(_read_matrix(args.input), window=window, seed=args.seed)
            _emit(report, args.format)
        return 0
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except MathPreconditionError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
