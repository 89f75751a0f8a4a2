"""
Command-line interface of the q-series workbench.

    python run.py expand "theta[0,0](2t)" --order 5 --format json
    python run.py verify --all --jobs 8
    python run.py count --form s4 --max 10
    python run.py convolution --name conv_delta_delta --max 300
    python run.py fk --k 11 --order 20
    python run.py selftest

Exit codes: 0 when every requested check passes, 1 on a mathematical
mismatch, 2 on usage, parse or evaluation errors.
"""

import argparse
import logging
import sys
from fractions import Fraction
from typing import List, Optional

from src.arith.convolution import CONVOLUTION_THEOREMS, get_convolution
from src.arith.forms import FORM_THEOREMS, get_form
from src.dsl.evaluator import evaluate
from src.identities.farkas_kra import FK_VANISHING, first_nonzero, fk_cusp_series
from src.identities.registry import registry
from src.identities.verifier import verify_all
from src.series.qseries import render_coefficient
from src.utils.config import Config, get_config
from src.utils.errors import QSeriesError
from src.utils.logging_setup import setup_logging
from src.utils.report_writer import FORMATS, ReportWriter

logger = logging.getLogger("Workbench")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

SELFTEST_PREFIXES = ("triple_product_", "heat_equation_", "fk_lemma_")
SELFTEST_NAMES = ("jacobi_derivative", "eta_pentagonal")


class RunConfig:
    """Per-run settings: config defaults overridden by command-line flags"""

    def __init__(self, order: Optional[Fraction] = None, grid: Optional[int] = None,
                 ring_order: Optional[int] = None, jobs: Optional[int] = None,
                 fmt: Optional[str] = None, out: Optional[str] = None):
        self.order = order
        self.grid = grid if grid is not None else int(get_config("engine.grid", 48))
        self.ring_order = ring_order if ring_order is not None else int(get_config("engine.ring", 48))
        self.jobs = jobs
        self.format = fmt or get_config("report.format", "text")
        self.out = out if out is not None else get_config("report.out")
        if self.order is not None and self.order <= 0:
            raise ValueError(f"order must be positive, got {self.order}")
        for label, value in (("grid", self.grid), ("ring", self.ring_order)):
            if value <= 0 or value % 2:
                raise ValueError(f"{label} must be even and positive, got {value}")
        if self.jobs is not None and self.jobs < 1:
            raise ValueError(f"jobs must be at least 1, got {self.jobs}")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        return cls(getattr(args, "order", None), args.grid, args.ring, getattr(args, "jobs", None),
                   args.format, args.out)

    def apply(self):
        """Make grid and ring the engine defaults for this process (and its workers)"""
        Config.override("engine", {"grid": self.grid, "ring": self.ring_order})

    def writer(self) -> ReportWriter:
        return ReportWriter(self.format, self.out)


def _rational(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must not be negative: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="Report format (default from config)")
    common.add_argument("--out", default=None, help="Write the report to this path instead of stdout")
    common.add_argument("--grid", type=int, default=None, help="Exponent grid E (series in q^(1/E))")
    common.add_argument("--ring", type=int, default=None, help="Cyclotomic order M of the coefficient field")
    common.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")

    parser = argparse.ArgumentParser(prog="run.py", description="Exact q-series verification workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="Expand a theta/eta expression")
    p.add_argument("expr", help='Expression, e.g. "eta(4t)/eta(1t)"')
    p.add_argument("--order", type=_rational, default=None, help="q-order (default engine.orders.series)")

    p = sub.add_parser("verify", parents=[common], help="Verify registry identities")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true", help="Every registry entry")
    which.add_argument("--name", nargs="+", metavar="NAME", help="Selected entries")
    which.add_argument("--list", action="store_true", help="List the registry")
    p.add_argument("--order", type=_rational, default=None, help="Raise the checked order (never lowers it)")
    p.add_argument("--jobs", type=int, default=None, help="Worker processes (default: physical cores)")

    p = sub.add_parser("count", parents=[common], help="Brute-force counts against closed formulas")
    p.add_argument("--form", required=True, help=f"One of: {', '.join(FORM_THEOREMS)}")
    p.add_argument("--max", type=_non_negative_int, default=None, help="Largest n")

    p = sub.add_parser("convolution", parents=[common], help="Convolution sums against closed formulas")
    p.add_argument("--name", required=True, help=f"One of: {', '.join(CONVOLUTION_THEOREMS)}")
    p.add_argument("--max", type=_non_negative_int, default=None, help="Largest n")

    p = sub.add_parser("fk", parents=[common], help="The odd-prime cusp expression for k")
    p.add_argument("--k", type=int, required=True, help="Odd prime up to 13")
    p.add_argument("--order", type=_rational, default=None, help="q-order (default engine.orders.fk)")

    p = sub.add_parser("selftest", parents=[common], help="Generator cross-checks and structural identities")
    p.add_argument("--order", type=_rational, default=None, help="Raise the checked order")
    p.add_argument("--jobs", type=int, default=None, help="Worker processes")
    return parser


# subcommands

def cmd_expand(args, run: RunConfig) -> int:
    order = run.order or Fraction(get_config("engine.orders.series", 30))
    series = evaluate(args.expr, order, run.grid, run.ring_order)
    run.writer().write_series(series, args.expr)
    return EXIT_OK


def cmd_verify(args, run: RunConfig) -> int:
    writer = run.writer()
    if args.list:
        rows = [(c.name, c.kind, c.section, str(c.default_order()), c.anchor) for c in registry()]
        writer.write_table(["name", "kind", "section", "default_order", "anchor"], rows)
        return EXIT_OK
    reports = verify_all(run.order, run.jobs, None if args.all else args.name)
    writer.write_reports(reports)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_MISMATCH


def _write_rows(run: RunConfig, theorem, max_n: Optional[int], headers: List[str], title: str) -> int:
    max_n = theorem.default_max() if max_n is None else max_n
    rows = theorem.rows(max_n)
    run.writer().write_table(headers, rows, title)
    mismatches = [row[0] for row in rows if not row[3]]
    if mismatches:
        logger.warning(f"{theorem.name}: {len(mismatches)} mismatching rows, first at n={mismatches[0]}")
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_count(args, run: RunConfig) -> int:
    theorem = get_form(args.form)
    title = f"{theorem.label}: {theorem.form.render()}  [{theorem.anchor}]"
    return _write_rows(run, theorem, args.max, ["n", "count", "formula", "match"], title)


def cmd_convolution(args, run: RunConfig) -> int:
    theorem = get_convolution(args.name)
    title = f"{theorem.name}  [{theorem.anchor}]"
    return _write_rows(run, theorem, args.max, ["n", "sum", "formula", "match"], title)


def cmd_fk(args, run: RunConfig) -> int:
    order = run.order or Fraction(get_config("engine.orders.fk", 20))
    series = fk_cusp_series(args.k, order)
    lead = first_nonzero(series)
    expected_zero = args.k in get_config("engine.fk_vanishing", FK_VANISHING)
    if lead is None:
        verdict = f"k={args.k}: vanishes below q^{order}"
    else:
        e, c = lead
        verdict = f"k={args.k}: nonzero, first term q^{e}: {render_coefficient(c, series.pi_power)}"
    run.writer().write_series(series, f"fk k={args.k}", verdict)
    return EXIT_OK if (lead is None) == expected_zero else EXIT_MISMATCH


def cmd_selftest(args, run: RunConfig) -> int:
    names = [c.name for c in registry()
             if c.name.startswith(SELFTEST_PREFIXES) or c.name in SELFTEST_NAMES]
    reports = verify_all(run.order, run.jobs, names)
    run.writer().write_reports(reports)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_MISMATCH


COMMANDS = {
    "expand": cmd_expand,
    "verify": cmd_verify,
    "count": cmd_count,
    "convolution": cmd_convolution,
    "fk": cmd_fk,
    "selftest": cmd_selftest,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    setup_logging("DEBUG" if args.verbose else None, force=True)
    try:
        run = RunConfig.from_args(args)
    except ValueError as e:
        logger.error(str(e))
        return EXIT_USAGE
    run.apply()

    try:
        return COMMANDS[args.command](args, run)
    except QSeriesError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    except KeyboardInterrupt:
        logger.warning("Interrupted")
        return EXIT_USAGE


if __name__ == "__main__":
    # Windows support for multiprocessing
    import multiprocessing
    multiprocessing.freeze_support()
    sys.exit(main())
