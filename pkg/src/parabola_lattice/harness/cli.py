"""Command line entry point: ``parabola-lattice <subcommand> ...``.

Exit codes: 0 success, 1 a verification or soft-threshold failure, 2 usage.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .. import bounds, expsums, lattice
from .config import VERIFY_SUITES, ConfigError, SweepConfig, parse_delta
from .report import Report, VerificationError, format_summary, read_csv_rows
from .sweeps import DEFAULT_THRESHOLD, run_sweep
from .verify import SUITES


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def fmt_complex(z: complex, digits: int = 12) -> str:
    scale = max(1.0, abs(z))
    re = 0.0 if abs(z.real) < 1e-9 * scale else z.real
    im = 0.0 if abs(z.imag) < 1e-9 * scale else z.imag

    def num(x):
        return f"{x:.{digits}g}"

    if im == 0:
        return num(re)
    imag = "i" if abs(im) == 1 else f"{num(abs(im))}i"
    if re == 0:
        return ("-" if im < 0 else "") + imag
    return f"{num(re)}{'-' if im < 0 else '+'}{imag}"


def _global_flags(parser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--workers", type=_positive, default=d(None),
                        help="worker processes for sweeps (default: config value)")
    parser.add_argument("--threshold", type=float, default=d(DEFAULT_THRESHOLD),
                        help="soft cap on envelope ratios")
    parser.add_argument("--out", default=d(None), help="output directory for reports")
    parser.add_argument("--format", choices=("csv", "structured"), default=d("csv"),
                        help="stdout format when --out is not given")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parabola-lattice",
        description="Lattice points under and near the parabola y = x^2/a.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count-under", parents=[common], help="sum of floor(x^2/a), x <= b")
    p.add_argument("a", type=_positive)
    p.add_argument("b", type=_positive)
    p.add_argument("--brute", action="store_true")

    p = sub.add_parser("count-near", parents=[common], help="A(a, b, delta)")
    p.add_argument("a", type=_positive)
    p.add_argument("b", type=_positive)
    p.add_argument("delta", type=_fraction)
    p.add_argument("--method", choices=(lattice.BRUTE, lattice.FAST))

    p = sub.add_parser("gauss", parents=[common], help="quadratic Gauss sum S(h, a[, b])")
    p.add_argument("h", type=int)
    p.add_argument("a", type=_positive)
    p.add_argument("b", type=_positive, nargs="?")

    p = sub.add_parser("roots", parents=[common], help="solutions of x^2 = j (mod a)")
    p.add_argument("j", type=int)
    p.add_argument("a", type=_positive)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--config", help="sweep config file supplying ranges")
    p.add_argument("--a-min", type=_positive, default=1)
    p.add_argument("--a-max", type=_positive, default=200)
    p.add_argument("--delta", default="1/4,1/10,1/20,1/100",
                   help="comma list of deltas (fejer suite)")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("sweep", parents=[common], help="run the sweeps of a config file")
    p.add_argument("--config", required=True)

    p = sub.add_parser("report", parents=[common], help="reprint a stored report")
    p.add_argument("--in", dest="path", required=True)
    p.add_argument("--summary", action="store_true")
    return parser


def _emit(report: Report, args, out) -> None:
    if args.out:
        csv_path, json_path = report.write(args.out)
        print(f"wrote {csv_path} and {json_path}", file=sys.stderr)
    elif args.format == "structured":
        out.write(report.to_structured())
    else:
        out.write(report.to_csv())
    print(format_summary(report), file=sys.stderr)


def _cmd_count_under(args, out):
    fn = lattice.floor_sum_brute if args.brute else lattice.floor_sum_fast
    print(fn(args.a, args.b), file=out)
    return 0


def _cmd_count_near(args, out):
    if not 0 <= args.delta < Fraction(1, 2):
        raise UsageError("delta must lie in [0, 1/2)")
    print(lattice.count_near(args.a, args.b, args.delta, args.method).count, file=out)
    return 0


def _cmd_gauss(args, out):
    closed = expsums.complete_gauss_closed(args.h, args.a)
    print(f"{closed} = {fmt_complex(closed.to_complex())}", file=out)
    print(f"brute: {fmt_complex(expsums.complete_gauss_brute(args.h, args.a))}", file=out)
    if args.b is not None:
        s = expsums.incomplete_gauss(args.h, args.a, args.b)
        env = bounds.envelope_incomplete(args.h, args.a, args.b).value
        print(f"S({args.h},{args.a},{args.b}) = {fmt_complex(s)}  "
              f"|S|/envelope = {abs(s) / env:.6g}", file=out)
    return 0


def _cmd_roots(args, out):
    print(" ".join(map(str, lattice.roots_mod(args.j, args.a))), file=out)
    return 0


def _cmd_verify(args, out):
    if args.config:
        cfg = SweepConfig.load(args.config)
    else:
        cfg = SweepConfig(a_start=args.a_min, a_end=args.a_max,
                          delta_list=tuple(parse_delta(t) for t in args.delta.split(",")),
                          theorems=(args.suite if args.suite in VERIFY_SUITES else "korolev",),
                          seed=args.seed)
    report = SUITES[args.suite](cfg)
    _emit(report, args, out)
    return 0 if report.within_threshold() else 1


def _cmd_sweep(args, out):
    cfg = SweepConfig.load(args.config)
    status = 0
    done = set()
    for theorem in cfg.theorems:
        if theorem in ("1", "2", "3", "4"):
            report = run_sweep(cfg, theorem, threshold=args.threshold, workers=args.workers)
        else:
            func = SUITES[theorem]
            if func in done:
                continue
            done.add(func)
            report = func(cfg)
        _emit(report, args, out)
        if not report.within_threshold():
            status = 1
    return status


def _cmd_report(args, out):
    path = Path(args.path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".csv":
        columns, rows = read_csv_rows(text)
        report = Report(kind=path.stem, config={}, columns=columns, rows=rows,
                        key_columns=tuple(c for c in ("a", "b", "delta_num", "delta_den")
                                          if c in columns),
                        max_columns=("ratio",) if "ratio" in columns else ())
    else:
        report = Report.from_structured(text)
    if args.summary:
        print(format_summary(report), file=out)
    else:
        out.write(report.to_csv())
    return 0


_COMMANDS = {
    "count-under": _cmd_count_under,
    "count-near": _cmd_count_near,
    "gauss": _cmd_gauss,
    "roots": _cmd_roots,
    "verify": _cmd_verify,
    "sweep": _cmd_sweep,
    "report": _cmd_report,
}


def run_cli(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args, out)
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())
