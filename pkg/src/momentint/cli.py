"""Command-line front end: ``momentint <command> [options]``.

Exit status: 0 success, 1 ``verify`` found a failing check, 2 domain or
configuration error, 3 accuracy or convergence failure, 64 usage error,
74 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from decimal import Decimal, InvalidOperation
from typing import Optional, Sequence

from . import __version__
from .checks import checks_table, run_checks
from .errors import (AccuracyError, ComputationError, ConfigurationError, DomainError,
                     MomentsError, UnsupportedError)
from .hybounds import verify_proposition
from .moments import SWEEP_COLUMNS, ball_bound_check, bounds_report, decimal_grid, oscillation_sweep
from .products import (bessel_j0_zeros, load_zero_sequence, product_limit_formula,
                       product_moment, sinc_sequence)
from .quadrature import MomentParams, moment_integral
from .tables import SweepTable

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_DOMAIN = 2
EXIT_ACCURACY = 3
EXIT_USAGE = 64
EXIT_IO = 74


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _decimal(text: str) -> Decimal:
    try:
        d = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}")
    if not d.is_finite():
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return d


def _finite(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(x):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return x


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--rel-tol", type=_finite, default=1e-10,
                        help="relative tolerance in [1e-13, 1e-3] (default 1e-10)")
    common.add_argument("--format", choices=("csv", "json", "human"), default="human",
                        help="output format; machine formats print 17 significant digits")
    common.add_argument("--output", metavar="PATH", help="write to PATH instead of stdout")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for sweeps (default: $MOMENTS_THREADS or 1)")

    parser = _Parser(prog="momentint",
                     description="Certified moment integrals of |sin x|^alpha / |x|^beta, "
                                 "their bounds, and product-function limits.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("compute", parents=[common], help="I(alpha, beta) with error bound")
    p.add_argument("--alpha", type=_finite, required=True)
    p.add_argument("--beta", type=_finite, required=True)

    p = sub.add_parser("bounds", parents=[common],
                       help="lower bound, integral, upper bound and asymptotic equivalent")
    p.add_argument("--alpha", type=_finite, required=True)
    p.add_argument("--beta", type=_finite, required=True)

    p = sub.add_parser("ball", parents=[common], help="J(s) = I(s,s)/pi against sqrt(2/s)")
    p.add_argument("--s", type=_finite, required=True, action="append",
                   help="exponent s >= 2 (repeatable)")

    p = sub.add_parser("proposition", parents=[common],
                       help="J(s) against the two Hausdorff-Young bounds on a grid")
    p.add_argument("--from", dest="start", type=_decimal, default=Decimal(2))
    p.add_argument("--to", dest="stop", type=_decimal, default=Decimal(50))
    p.add_argument("--step", type=_decimal, default=Decimal("0.5"))

    p = sub.add_parser(
        "sweep", parents=[common], help="oscillatory cases along a grid of alpha",
        description="Grid points are generated in decimal arithmetic and the floor [alpha] "
                    "is taken of the exact decimal, so 15 is never read as 14.999...")
    p.add_argument("--mode", choices=("floor_beta", "floor_alpha"), default="floor_beta",
                   help="floor_beta: (alpha, [alpha]); floor_alpha: ([alpha], alpha - 1)")
    p.add_argument("--from", dest="start", type=_decimal, required=True)
    p.add_argument("--to", dest="stop", type=_decimal, required=True)
    p.add_argument("--step", type=_decimal, required=True)

    p = sub.add_parser("product", parents=[common],
                       help="integral of |g|^p t^-beta over [0, oo) for a zero sequence")
    p.add_argument("--sequence", default="sinc",
                   help="'sinc', 'j0', or a file of zeros with a JSON sidecar")
    p.add_argument("--sidecar", default=None, help="sidecar path (default: zeros file with .json)")
    p.add_argument("--p", type=_finite, required=True)
    p.add_argument("--beta", type=_finite, default=0.0)

    p = sub.add_parser("verify", parents=[common], help="run the self-verification suite")
    p.add_argument("--random-cases", type=int, default=50,
                   help="random (alpha, beta) pairs for the two-sided bound check")
    p.add_argument("--seed", type=int, default=42)
    return parser


def _check_tol(rel_tol: float) -> None:
    if not 1e-13 <= rel_tol <= 1e-3:
        raise DomainError(f"--rel-tol must lie in [1e-13, 1e-3], got {rel_tol:g}")


def _cmd_compute(args) -> SweepTable:
    q = moment_integral(MomentParams(args.alpha, args.beta), args.rel_tol)
    return SweepTable(("alpha", "beta", "integral", "err", "periods", "tail_bound"),
                      [(args.alpha, args.beta, q.value, q.error_bound, q.periods_used,
                        q.tail_bound)])


def _cmd_bounds(args) -> SweepTable:
    r = bounds_report(MomentParams(args.alpha, args.beta), args.rel_tol)
    return SweepTable(SWEEP_COLUMNS, [(args.alpha, args.beta, r.integral, r.integral_error,
                                       r.lower, r.upper, r.asymptotic, r.ratio_to_asymptotic)])


def _cmd_ball(args) -> SweepTable:
    rows = []
    for s in args.s:
        c = ball_bound_check(s, args.rel_tol)
        rows.append((s, c.integral_scaled, c.error, c.ball_rhs, c.holds))
    return SweepTable(("s", "J", "err", "bound", "holds"), rows)


def _cmd_proposition(args) -> SweepTable:
    grid = [float(s) for s in decimal_grid(args.start, args.stop, args.step)]
    return verify_proposition(grid, args.rel_tol, args.threads)


def _cmd_sweep(args) -> SweepTable:
    grid = decimal_grid(args.start, args.stop, args.step)
    return oscillation_sweep(grid, args.mode, args.rel_tol, args.threads)


def _cmd_product(args) -> SweepTable:
    if args.sequence == "sinc":
        seq = sinc_sequence()
    elif args.sequence == "j0":
        seq = bessel_j0_zeros()
    else:
        seq = load_zero_sequence(args.sequence, args.sidecar)
    q = product_moment(seq, args.p, args.beta, args.rel_tol)
    scaled = args.p ** (0.5 * (1.0 - args.beta)) * q.value
    limit = product_limit_formula(seq.c_value, args.beta)
    return SweepTable(
        ("sequence", "p", "beta", "integral", "err", "tail_bound", "c", "scaled", "limit",
         "ratio"),
        [(seq.name, args.p, args.beta, q.value, q.error_bound, q.tail_bound, seq.c_value,
          scaled, limit, scaled / limit)])


_COMMANDS = {
    "compute": _cmd_compute,
    "bounds": _cmd_bounds,
    "ball": _cmd_ball,
    "proposition": _cmd_proposition,
    "sweep": _cmd_sweep,
    "product": _cmd_product,
}


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse ``argv``, execute the command and return the exit status."""
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    status = EXIT_OK
    try:
        _check_tol(args.rel_tol)
        if args.command == "verify":
            checks = run_checks(args.rel_tol, args.random_cases, args.seed)
            table = checks_table(checks)
            if not all(c.passed for c in checks):
                status = EXIT_CHECK_FAILED
        else:
            table = _COMMANDS[args.command](args)
        text = table.render(args.format)
        _emit(text, args.output)
        for s in table.skipped:
            print(f"skipped {s.parameter:g}: {s.reason}", file=sys.stderr)
    except (DomainError, ConfigurationError, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (AccuracyError, ComputationError) as exc:
        print(f"accuracy failure: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except MomentsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
