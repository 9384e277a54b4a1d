"""Command-line entry point: ``weylheat <command> [options]``.

Exit codes: 0 success, 1 usage error, 2 computation failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import ball, eccentricity, ellipse, numerics, poles, verification
from .errors import DomainError
from .exact import parse_rational
from .report import Table, render_figure, to_csv, to_json

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_VERIFY = 0, 1, 2, 3
THREADS_ENV = "WEYL_HEAT_THREADS"

log = logging.getLogger("weylheat")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def ordered_map(fn, items):
    """Map with up to worker_count() threads; results keep the input order."""
    items = list(items)
    workers = min(worker_count(), len(items)) or 1
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _float_list(text: str) -> list:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None
    if not vals:
        raise UsageError("empty value list")
    return vals


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


# ---------------------------------------------------------------------------
# Command handlers: validate first, then compute, return a Table
# ---------------------------------------------------------------------------


def cmd_ball_weyl(args) -> Table:
    _require(args.d >= 1, f"--d must be >= 1 (got {args.d})")
    _require(args.max_n >= 2, f"--max-n must be >= 2 (got {args.max_n})")
    table = ball.ball_weyl_coefficients(args.d, args.max_n)
    rows = []
    for n, c in table.entries:
        pred = ratio = None
        if args.d % 2 == 0 and n >= 5:
            pred = ball.even_d_asymptotic_cn(args.d, n)
            ratio = ball.ratio_to_prediction(c, args.d, n)
        rows.append([n, c, ball._to_float(c), pred, ratio])
    return Table(
        ["n", "c_hat_exact", "c_hat_float", "prediction", "ratio"],
        rows,
        {"command": "ball-weyl", "d": args.d, "max_n": args.max_n, "title": f"{args.d}-ball Weyl coefficients"},
        "weyl",
    )


def cmd_ball_poles(args) -> Table:
    dims = _int_list(args.d)
    _require(bool(dims), "--d needs at least one dimension")
    for d in dims:
        _require(d >= 1 and d % 2 == 1, f"--d must list odd dimensions >= 1 (got {d})")
    _require(1 <= args.precision_digits <= 40, "--precision-digits must lie in 1..40")

    def one(d):
        return d, poles.poles(poles.odd_d_rational_form(d), args.precision_digits)

    rows = []
    meta = {"command": "ball-poles", "d": args.d, "title": "denominator roots, v-plane"}
    for d, roots in ordered_map(one, dims):
        for r in roots:
            rows.append([d, r.re, r.im, r.modulus, r.phase_over_pi])
        if d == 7:
            table = poles.weyl_from_rational_form(poles.odd_d_rational_form(7), 41)
            dev = max(
                abs(float(table[n]) - poles.d7_closed_form_cn(n)) / (7.0 * 3.0 ** (n / 2.0 - 2.0))
                for n in range(5, 42)
            )
            meta["d7_closed_form_max_rel_dev"] = dev
            log.info("d=7 closed form: max relative deviation %.3e over 5 <= n <= 41", dev)
    return Table(["d", "re", "im", "modulus", "phase_over_pi"], rows, meta, "poles")


def cmd_ellipse_small_s(args) -> Table:
    a, b = _rational(args.a), _rational(args.b)
    _require(args.orders >= 0, f"--orders must be >= 0 (got {args.orders})")
    if a < b:
        a, b = b, a
    try:
        params = ellipse.EllipseParams(a, b)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    values = ellipse.small_s_coefficients(params, args.orders)
    rows = [[j, h, float(h)] for j, h in enumerate(values)]
    return Table(
        ["j", "H_j_exact", "H_j_float"],
        rows,
        {"command": "ellipse-small-s", "a": a, "b": b, "title": f"ellipse a={a}, b={b}"},
        "ellipse",
    )


def cmd_eccentricity(args) -> Table:
    b = args.b
    _require(b > 0, f"--b must be positive (got {b})")
    if args.mode == "renormalized":
        _require(0.0 <= args.eps < 1.0, f"--eps must lie in [0, 1) (got {args.eps})")
        ns = _int_list(args.n)
        _require(bool(ns) and all(n >= 5 for n in ns), "--n must list integers >= 5")
        rows = []
        for n in ns:
            log_v = eccentricity.log_renormalized_cn(n, args.eps, b)
            log_lim = eccentricity.log_renormalized_limit_cn(n, args.eps, b) if args.eps > 0 else None
            ratio = math.exp(log_v - log_lim) if log_lim is not None else None
            rows.append([n, args.eps, b, log_v, eccentricity.renormalized_cn(n, args.eps, b), log_lim, ratio])
        return Table(
            ["n", "eps", "b", "log_value", "value", "log_limit", "ratio"],
            rows,
            {"command": "eccentricity", "mode": "renormalized", "title": f"renormalized c_n, eps={args.eps}"},
            "ratio",
        )
    if args.mode == "prolate" and args.weyl_max_n:
        _require(args.weyl_max_n >= 5, "--weyl-max-n must be >= 5")
        _require(args.order in (0, 1), "--order must be 0 or 1 in prolate mode")
        rows = []
        for n in range(5, args.weyl_max_n + 1, 2):
            c = eccentricity.prolate_weyl_cn(n, args.order, b)
            p = eccentricity.prolate_weyl_prediction(n, args.order, b)
            rows.append([n, args.order, c, p, eccentricity.prolate_weyl_ratio(n, args.order)])
        return Table(
            ["n", "order", "c_hat", "prediction", "ratio"],
            rows,
            {"command": "eccentricity", "mode": "prolate", "title": f"strip-limit c_n, order {args.order}"},
            "ratio",
        )
    s_grid = _float_list(args.s)
    _require(all(s > 0 for s in s_grid), "--s values must be positive")
    if args.mode == "disk":
        _require(args.order in (0, 1, 2, 3), f"--order must be 0..3 in disk mode (got {args.order})")

        def one(s):
            return [s, b, eccentricity.disk_limit_order(args.order, s, b), None]

    else:
        _require(args.order in (0, 1), f"--order must be 0 or 1 in prolate mode (got {args.order})")
        fn = eccentricity.prolate_H0_result if args.order == 0 else eccentricity.prolate_H1_result

        def one(s):
            res = fn(s, b)
            return [s, b, res.value, res.abs_error_estimate]

    rows = ordered_map(one, s_grid)
    return Table(
        ["s", "b", "value", "abs_err_estimate"],
        rows,
        {"command": "eccentricity", "mode": args.mode, "order": args.order, "title": f"{args.mode} order {args.order}"},
        "grid",
    )


def cmd_oracle(args) -> Table:
    _require(args.d in (2, 3), f"--d must be 2 or 3 (got {args.d})")
    _require(args.s > 0 and args.R > 0, "--s and --R must be positive")
    _require(args.modes >= 1, "--modes must be >= 1")
    res = numerics.spectral_sum_oracle(args.d, args.s, args.R, args.modes)
    exact = ball.ball_heat_transform(args.d, args.s, args.R)
    row = [args.d, args.s, args.R, args.modes, res.value, res.tail_bound, exact, abs(exact - res.value)]
    return Table(
        ["d", "s", "R", "modes", "spectral_sum", "tail_bound", "closed_form", "abs_diff"],
        [row],
        {"command": "oracle"},
    )


def cmd_verify_all(args) -> tuple:
    results = verification.run_all(ordered_map)
    rows = [[r.number, r.name, r.passed, r.detail] for r in results]
    table = Table(["criterion", "name", "passed", "detail"], rows, {"command": "verify-all"})
    return table, all(r.passed for r in results), verification.format_report(results)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="weylheat", description="Weyl series of the heat content of balls and ellipses.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, figure=True):
        sp.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS, help="log progress to stderr")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--output", "-o", help="write the table here instead of stdout")
        if figure:
            sp.add_argument("--figure", help="also render a plot to this path (needs matplotlib)")

    sp = sub.add_parser("ball-weyl", help="exact Weyl coefficients of the d-ball")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--max-n", type=int, default=ball.DEFAULT_MAX_N)
    common(sp)

    sp = sub.add_parser("ball-poles", help="denominator roots for odd d (comma list allowed)")
    sp.add_argument("--d", required=True, help="odd dimension(s), e.g. 9 or 9,11,13")
    sp.add_argument("--precision-digits", type=int, default=poles.DEFAULT_PRECISION_DIGITS)
    common(sp)

    sp = sub.add_parser("ellipse-small-s", help="exact small-s coefficients of an ellipse")
    sp.add_argument("--a", required=True, help="semi-axis as p/q")
    sp.add_argument("--b", required=True, help="semi-axis as p/q")
    sp.add_argument("--orders", type=int, default=ellipse.DEFAULT_ORDERS)
    common(sp)

    sp = sub.add_parser("eccentricity", help="near-disk, strip-limit and renormalized evaluations")
    sp.add_argument("--mode", choices=("disk", "prolate", "renormalized"), required=True)
    sp.add_argument("--order", type=int, default=0)
    sp.add_argument("--s", default="0.5,1,2", help="comma-separated s grid")
    sp.add_argument("--b", type=float, default=1.0)
    sp.add_argument("--eps", type=float, default=0.5, help="renormalized mode")
    sp.add_argument("--n", default="21,41,81,161,401", help="renormalized mode: comma-separated n")
    sp.add_argument("--weyl-max-n", type=int, default=0, help="prolate mode: emit the c_n table instead")
    common(sp)

    sp = sub.add_parser("oracle", help="spectral eigen-sum against the closed form")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--R", type=float, default=1.0)
    sp.add_argument("--modes", type=int, default=500)
    common(sp, figure=False)

    sp = sub.add_parser("verify-all", help="run every acceptance check")
    common(sp, figure=False)
    return p


HANDLERS = {
    "ball-weyl": cmd_ball_weyl,
    "ball-poles": cmd_ball_poles,
    "ellipse-small-s": cmd_ellipse_small_s,
    "eccentricity": cmd_eccentricity,
    "oracle": cmd_oracle,
}


def _emit(table: Table, args) -> None:
    text = to_json(table) if args.format == "json" else to_csv(table)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


class _StderrHandler(logging.StreamHandler):
    # look sys.stderr up per record so redirected streams are honoured
    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, _value):
        pass


def _configure_logging(verbose: bool) -> None:
    pkg = logging.getLogger("weylheat")
    pkg.setLevel(logging.INFO if verbose else logging.WARNING)
    if not any(isinstance(h, _StderrHandler) for h in pkg.handlers):
        handler = _StderrHandler()
        handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
        pkg.addHandler(handler)
        pkg.propagate = False


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args.verbose)
        worker_count()
        if args.command == "verify-all":
            table, ok, report = cmd_verify_all(args)
            if args.output or args.format == "json":
                _emit(table, args)
            if not (args.format == "json" and not args.output):
                sys.stdout.write(report)
            return EXIT_OK if ok else EXIT_VERIFY
        table = HANDLERS[args.command](args)
        _emit(table, args)
        if getattr(args, "figure", None):
            try:
                render_figure(table, args.figure)
            except ImportError:
                raise UsageError("--figure needs matplotlib (pip install 'artifact[plot]')") from None
        return EXIT_OK
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except DomainError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except (ArithmeticError, RuntimeError, ValueError) as exc:
        sys.stderr.write(f"computation failed: {type(exc).__name__}: {exc}\n")
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
