"""Grid experiments over n, shared by the CLI and the acceptance tests.

Each sweep returns plain row tuples in n order; ``jobs > 1`` farms the
per-n work out to a process pool (results are still ordered by n).
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np

from .exact import bernoulli_convolution, format_float
from .expansion import (
    DEFAULT_ETA,
    cdf_sup_errors,
    large_deviation_density,
    scaled_edgeworth_error,
    stirling_over_factorial,
)
from .mode import maximum_prediction, maximum_residual, u_star

DEFAULT_GRID = (1000, 10000, 20000)

EDGEWORTH_HEADER = ("n", "theta", "r", "sup_error", "scaled_error")
CDF_HEADER = ("n", "theta", "sup_error_normal", "sup_error_edgeworth", "scaled_error")
MAXIMUM_HEADER = ("n", "theta", "max_exact", "max_predicted", "delta", "scaled_residual")
LARGEDEV_HEADER = ("n", "k", "theta", "q", "approx", "exact", "rel_error")


def _map(fn: Callable, items: Sequence, jobs: int = 1) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _edgeworth_rows(args):
    n, theta, r_max = args
    exact = bernoulli_convolution(n, theta)[1:]
    rows = []
    for r in range(r_max + 1):
        scaled = scaled_edgeworth_error(n, theta, r, exact)
        rows.append((n, theta, r, scaled / math.log(n) ** ((r + 1) / 2), scaled))
    return rows


def edgeworth_sweep(theta: float, ns: Iterable[int] = DEFAULT_GRID, r_max: int = 3, jobs: int = 1):
    out = _map(_edgeworth_rows, [(n, float(theta), r_max) for n in ns], jobs)
    return [row for rows in out for row in rows]


def _cdf_row(args):
    n, theta = args
    plain, corrected = cdf_sup_errors(n, theta)
    return (n, theta, plain, corrected, corrected * math.log(n))


def cdf_sweep(theta: float, ns: Iterable[int] = DEFAULT_GRID, jobs: int = 1):
    return _map(_cdf_row, [(n, float(theta)) for n in ns], jobs)


def _maximum_row(args):
    n, theta = args
    probs = bernoulli_convolution(n, theta)[1:]
    m = float(np.max(probs))
    us = u_star(n, theta)
    frac = us - math.floor(us)
    return (n, theta, m, maximum_prediction(n, theta), min(frac, 1 - frac), maximum_residual(n, theta, m))


def maximum_sweep(theta: float, ns: Iterable[int] = DEFAULT_GRID, jobs: int = 1):
    return _map(_maximum_row, [(n, float(theta)) for n in ns], jobs)


def largedev_table(n: int, ks: Iterable[int], q: int, eta: float = DEFAULT_ETA):
    rows = []
    for k in ks:
        exact = stirling_over_factorial(n, k)
        for s in range(q + 1):
            approx = large_deviation_density(n, k, s, eta)
            rows.append((n, k, k / math.log(n), s, approx, exact, abs(approx - exact) / exact))
    return rows


def write_rows(fh, header: Sequence[str], rows: Iterable[Sequence]):
    fh.write(",".join(header) + "\n")
    for row in rows:
        fh.write(",".join(format_float(v) if isinstance(v, float) else str(v) for v in row) + "\n")
