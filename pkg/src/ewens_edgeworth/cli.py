"""Command-line front end.

    ewens-edgeworth stirling --n 5
    ewens-edgeworth mode --n 3 --theta 2/3
    ewens-edgeworth edgeworth-sweep --theta 1 --r 3 --n 1000,10000 --out sweep.csv

theta given as "p/q" goes to the exact (rational) routes, a decimal goes
to the double-precision routes; ``--precision`` overrides that choice.
Exit status: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import math
import sys
from fractions import Fraction

from .errors import DomainError
from .exact import as_rational_theta, ewens_pmf_exact, ewens_pmf_float, stirling_first_row
from .expansion import DEFAULT_ETA, write_h_csv
from .mode import claim_onsets, counterexample_search, density_experiment, exact_mode, write_trace
from .plotting import emit_plot_script
from .sweeps import (
    CDF_HEADER,
    DEFAULT_GRID,
    EDGEWORTH_HEADER,
    LARGEDEV_HEADER,
    MAXIMUM_HEADER,
    cdf_sweep,
    edgeworth_sweep,
    largedev_table,
    maximum_sweep,
    write_rows,
)

COMMANDS = (
    "stirling", "pmf", "hj", "edgeworth-sweep", "cdf-sweep", "largedev",
    "mode", "density", "counterexample", "maximum",
)


def parse_theta(text: str) -> Fraction | float:
    try:
        if "/" in text:
            value = as_rational_theta(text)
        else:
            value = float(text)
            if not (value > 0 and math.isfinite(value)):
                raise ValueError
    except (ValueError, ZeroDivisionError, DomainError):
        raise argparse.ArgumentTypeError(f"theta must be positive, as a decimal or p/q: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {v}")
    return v


def _int_list(text: str) -> list[int]:
    return [_positive_int(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ewens-edgeworth", description=__doc__.split("\n\n")[0])
    p.add_argument("--seed-check", action="store_true", help="run the quick invariant suite and exit")
    sub = p.add_subparsers(dest="command", metavar="command")

    def cmd(name, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--out", help="CSV output path (default: stdout)")
        s.add_argument("--jobs", type=_positive_int, default=1, help="worker processes for sweeps over n")
        return s

    s = cmd("stirling", "row of unsigned Stirling numbers of the first kind")
    s.add_argument("--n", type=_positive_int, required=True)

    s = cmd("pmf", "Ewens probability mass function")
    s.add_argument("--n", type=_positive_int, required=True)
    s.add_argument("--theta", type=parse_theta, required=True)
    s.add_argument("--precision", choices=("double", "exact"))

    s = cmd("hj", "coefficients of the correction polynomial H_j")
    s.add_argument("--j", type=_positive_int, required=True)
    s.add_argument("--theta", type=parse_theta, required=True)

    s = cmd("edgeworth-sweep", "scaled sup error of the r-term expansion over an n grid")
    s.add_argument("--theta", type=parse_theta, required=True)
    s.add_argument("--r", type=_positive_int, default=3, help="largest order (sweeps 0..r)")
    s.add_argument("--n", type=_int_list, default=list(DEFAULT_GRID), help="comma-separated n grid")

    s = cmd("cdf-sweep", "sup lattice error of the corrected normal CDF")
    s.add_argument("--theta", type=parse_theta, required=True)
    s.add_argument("--n", type=_int_list, default=list(DEFAULT_GRID))

    s = cmd("largedev", "large-deviation expansion of [n k]/n!")
    s.add_argument("--n", type=_positive_int, required=True)
    s.add_argument("--k", type=_int_list, required=True, help="comma-separated k values")
    s.add_argument("--q", type=_positive_int, default=2)
    s.add_argument("--eta", type=float, default=DEFAULT_ETA)

    s = cmd("mode", "exact mode, uniqueness and maximum")
    s.add_argument("--n", type=_positive_int, required=True)
    s.add_argument("--theta", type=parse_theta, required=True)
    s.add_argument("--precision", choices=("double", "exact", "high"))

    for name, help_ in (
        ("density", "agreement of the exact mode with nint(u*) for 3 <= n <= N"),
        ("counterexample", "n <= N with mode != nint(u*), confirmed exactly"),
    ):
        s = cmd(name, help_)
        s.add_argument("--N", type=_positive_int, required=True)
        s.add_argument("--theta", type=parse_theta, required=True)

    s = cmd("maximum", "maximum M_n against its two-term prediction")
    s.add_argument("--theta", type=parse_theta, required=True)
    s.add_argument("--n", type=_int_list, default=list(DEFAULT_GRID))
    return p


@contextlib.contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _finish(args, kind=None):
    if args.out and kind:
        script = emit_plot_script(args.out, kind)
        print(f"wrote {args.out}; plot script {script}", file=sys.stderr)
    elif args.out:
        print(f"wrote {args.out}", file=sys.stderr)


def run(args) -> int:
    c = args.command
    if c == "stirling":
        row = stirling_first_row(args.n)
        if args.out:
            with _sink(args.out) as fh:
                write_rows(fh, ("k", "value"), enumerate(row.values, start=1))
        print("[" + ",".join(map(str, row.values)) + "]")
        _finish(args)
    elif c == "pmf":
        exact = args.precision == "exact" or (args.precision is None and isinstance(args.theta, Fraction))
        table = ewens_pmf_exact(args.n, args.theta) if exact else ewens_pmf_float(args.n, float(args.theta))
        with _sink(args.out) as fh:
            table.write_csv(fh)
        _finish(args)
    elif c == "hj":
        with _sink(args.out) as fh:
            write_h_csv(fh, [args.j], float(args.theta))
        _finish(args)
    elif c == "edgeworth-sweep":
        rows = edgeworth_sweep(float(args.theta), args.n, args.r, args.jobs)
        with _sink(args.out) as fh:
            write_rows(fh, EDGEWORTH_HEADER, rows)
        _finish(args, "edgeworth-sweep")
    elif c == "cdf-sweep":
        rows = cdf_sweep(float(args.theta), args.n, args.jobs)
        with _sink(args.out) as fh:
            write_rows(fh, CDF_HEADER, rows)
        _finish(args, "cdf-sweep")
    elif c == "largedev":
        rows = largedev_table(args.n, args.k, args.q, args.eta)
        with _sink(args.out) as fh:
            write_rows(fh, LARGEDEV_HEADER, rows)
        _finish(args, "largedev")
    elif c == "mode":
        precision = args.precision or "auto"
        print(exact_mode(args.n, args.theta, precision).summary())
    elif c == "density":
        res = density_experiment(args.N, args.theta)
        onsets = claim_onsets(args.N, args.theta)
        with _sink(args.out) as fh:
            write_trace(fh, res.records)
        print(
            f"N={res.N} theta={res.theta} fraction={res.fraction:.6f} fitted_C={res.fitted_c:.6f} "
            f"disagreements={len(res.disagreements)} longest_ceil_run={res.longest_ceil_run} "
            f"longest_floor_run={res.longest_floor_run} unique_from={onsets['unique']} "
            f"floor_or_ceil_from={onsets['floor_or_ceil']}",
            file=sys.stderr if args.out is None else sys.stdout,
        )
        _finish(args, "density")
    elif c == "counterexample":
        found = counterexample_search(args.N, args.theta)
        with _sink(args.out) as fh:
            write_trace(fh, found)
        print(f"confirmed {len(found)} n <= {args.N} with mode != nint(u*)",
              file=sys.stderr if args.out is None else sys.stdout)
        _finish(args, "density" if found else None)
    elif c == "maximum":
        rows = maximum_sweep(float(args.theta), args.n, args.jobs)
        with _sink(args.out) as fh:
            write_rows(fh, MAXIMUM_HEADER, rows)
        _finish(args, "maximum")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed_check:
        from .checks import run_checks

        return 0 if run_checks() else 1
    if args.command is None:
        parser.print_usage(sys.stderr)
        print("ewens-edgeworth: error: a command is required", file=sys.stderr)
        return 2
    try:
        return run(args)
    except (DomainError, OverflowError) as exc:
        print(f"ewens-edgeworth: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
