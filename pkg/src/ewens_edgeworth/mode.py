"""Mode and maximum of the Ewens distribution.

Mode decisions for rational theta = Q1/Q2 are exact: the weights
theta^k [n k] of neighbouring k compare as Q2 [n k] against Q1 [n k+1],
so no normalisation and no rational arithmetic is needed. Because the
distribution is log-concave, the least mode is the first k with
weight(k) >= weight(k+1).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError
from .exact import (
    MAX_FULL_ROW,
    StirlingScanner,
    as_rational_theta,
    bernoulli_convolution,
    format_float,
    stirling_first_partial,
)
from .special import EULER_GAMMA, ZETA2, ZETA3, digamma, polygamma, polygamma_hp

HAMMERSLEY_H_BOUNDS = (-1.098011, 1.430089)
HAMMERSLEY_H_BOUNDS_LOOSE = (-1.1, 1.44)
TIE_MARGIN = 1e-9
HIGH_PRECISION_DPS = 50
WINDOW_SCAN_MIN_N = 200
WINDOW_HALF_WIDTH = 10.0  # in standard deviations sqrt(theta log n)


def nint(x: float) -> int:
    """Nearest integer, halves rounded down: nint(2.5) = 2."""
    fl = math.floor(x)
    if x - fl == 0.5:
        return fl
    return math.floor(x + 0.5)


def u_star(n: int, theta) -> float:
    """theta log n - theta psi(theta) - 1/2, the asymptotic mode location."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    theta = float(theta)
    if not theta > 0:
        raise DomainError(f"theta must be positive, got {theta}")
    return theta * math.log(n) - theta * digamma(theta) - 0.5


def u_star_hp(n: int, theta, dps: int = HIGH_PRECISION_DPS):
    import mpmath

    with mpmath.workdps(dps):
        th = _mp_theta(theta)
        return th * mpmath.log(n) - th * polygamma_hp(0, theta, dps) - mpmath.mpf(1) / 2


def _mp_theta(theta):
    import mpmath

    if isinstance(theta, Fraction):
        return mpmath.mpf(theta.numerator) / theta.denominator
    return mpmath.mpf(theta)


@dataclass
class ModeReport:
    n: int
    theta: Fraction | float
    mode_least: int
    unique: bool
    max_prob: float
    u_star: float
    nint_u_star: int
    frac_u_star: float
    delta: float
    agrees_nint: bool
    method: str = "exact"

    @property
    def modes(self) -> tuple[int, ...]:
        return (self.mode_least,) if self.unique else (self.mode_least, self.mode_least + 1)

    def summary(self) -> str:
        return (
            f"n={self.n} theta={self.theta} mode_least={self.mode_least} "
            f"unique={str(self.unique).lower()} max_prob={self.max_prob:.12g} "
            f"u_star={self.u_star:.12g} nint={self.nint_u_star} frac={self.frac_u_star:.6f} "
            f"delta={self.delta:.6f} agrees_nint={str(self.agrees_nint).lower()} [{self.method}]"
        )


def _report(n, theta, mode, unique, max_prob, method) -> ModeReport:
    us = u_star(n, theta)
    frac = us - math.floor(us)
    return ModeReport(
        n=n,
        theta=theta,
        mode_least=mode,
        unique=unique,
        max_prob=max_prob,
        u_star=us,
        nint_u_star=nint(us),
        frac_u_star=frac,
        delta=min(frac, 1.0 - frac),
        agrees_nint=mode == nint(us),
        method=method,
    )


def _least_mode_exact(row: Sequence[int], q1: int, q2: int, n: int, lo: int = 1, hi: int | None = None):
    """First k in [lo, hi] with weight(k) >= weight(k+1); ``row[k]`` = [n k].

    Returns (k, tie) or None when no descent was seen inside the range.
    """
    hi = n if hi is None else hi
    for k in range(lo, hi):
        a, b = q2 * row[k], q1 * row[k + 1]
        if a >= b:
            return k, a == b
    if hi == n:
        return n, False
    return None


def _rising_denominator(n: int, q1: int, q2: int) -> int:
    """prod_{i<n} (q1 + i q2), the integer denominator of the PMF."""
    return math.prod(q1 + i * q2 for i in range(n))


def _exact_prob(n, theta: Fraction, k, stirling_k, denom=None) -> float:
    """q1^k q2^(n-k) [n k] / denom, correctly rounded by integer true division."""
    q1, q2 = theta.numerator, theta.denominator
    if denom is None:
        denom = _rising_denominator(n, q1, q2)
    return q1**k * q2 ** (n - k) * stirling_k / denom


def _window(n: int, theta: float) -> tuple[int, int]:
    w = theta * math.log(n)
    half = WINDOW_HALF_WIDTH * math.sqrt(w)
    return max(1, math.floor(w - half)), min(n, math.ceil(w + half))


def _exact_mode_rational(n: int, theta: Fraction) -> tuple[int, bool, float]:
    q1, q2 = theta.numerator, theta.denominator
    found = None
    if n > WINDOW_SCAN_MIN_N:
        lo, hi = _window(n, float(theta))
        top = min(n, hi + 1)
        row = [0] + stirling_first_partial(n, top)
        found = _least_mode_exact(row, q1, q2, n, lo, top)
        # window is only trusted when the weights still rise into its lower edge
        if found is not None and lo > 1 and found[0] == lo and q2 * row[lo - 1] >= q1 * row[lo]:
            found = None
    if found is None:
        if n > MAX_FULL_ROW:
            raise DomainError(f"window scan failed and n={n} exceeds the full-row cap {MAX_FULL_ROW}")
        row = [0] + stirling_first_partial(n, n)
        found = _least_mode_exact(row, q1, q2, n)
    k, tie = found
    return k, not tie, _exact_prob(n, theta, k, row[k])


def _high_precision_compare(n, theta, k, dps=HIGH_PRECISION_DPS) -> tuple[int, int]:
    """Signs of weight(k) - weight(k-1) and weight(k+1) - weight(k) at ``dps`` digits."""
    import mpmath

    row = [0] + stirling_first_partial(n, min(n, k + 1)) + [0]
    with mpmath.workdps(dps):
        th = _mp_theta(theta)
        w = lambda j: th**j * mpmath.mpf(row[j]) if 1 <= j <= n else mpmath.mpf(0)  # noqa: E731
        left = w(k) - w(k - 1) if k > 1 else mpmath.mpf(1)
        right = w(k + 1) - w(k) if k < n else mpmath.mpf(-1)
        tol = mpmath.mpf(10) ** (-(dps - 5)) * w(k)
        sign = lambda v: 0 if abs(v) <= tol else (1 if v > 0 else -1)  # noqa: E731
        return sign(left), sign(right)


def _float_mode(n: int, theta: float) -> tuple[int, bool, float, str]:
    probs = bernoulli_convolution(n, theta)
    probs[0] = -1.0
    k = int(np.argmax(probs))
    pk = probs[k]
    near = lambda j: 1 <= j <= n and abs(probs[j] - pk) <= TIE_MARGIN * pk  # noqa: E731
    if not (near(k - 1) or near(k + 1)):
        return k, True, float(pk), "double"
    # near tie: settle it with 50-digit weights built from exact Stirling numbers
    for cand in sorted({k - 1, k, k + 1} & set(range(1, n + 1))):
        left, right = _high_precision_compare(n, theta, cand)
        if left > 0 and right <= 0:
            return cand, right != 0, float(probs[cand]), "high"
    raise ArithmeticError(f"high-precision mode confirmation failed at n={n}, theta={theta}")


def exact_mode(n: int, theta, precision: str = "auto") -> ModeReport:
    """Least mode u_n(theta), uniqueness flag and maximum M_n(theta).

    ``precision``: "exact" (rational theta, big-integer comparisons),
    "double" (float convolution; near ties re-decided at 50 digits) or
    "auto" which picks "exact" for Fraction/int/str theta.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    if precision == "auto":
        precision = "double" if isinstance(theta, float) else "exact"
    if precision == "exact":
        th = as_rational_theta(theta)
        k, unique, mp = _exact_mode_rational(n, th)
        return _report(n, th, k, unique, mp, "exact")
    if precision in ("double", "high"):
        th = float(theta)
        if not th > 0:
            raise DomainError(f"theta must be positive, got {theta}")
        k, unique, mp, method = _float_mode(n, th)
        if precision == "high" and method == "double":
            left, right = _high_precision_compare(n, th, k)
            if not (left > 0 and right <= 0):
                raise ArithmeticError(f"double and 50-digit modes disagree at n={n}")
            unique, method = right != 0, "high"
        return _report(n, th, k, unique, mp, method)
    raise DomainError(f"unknown precision {precision!r}")


def scan_cap(N: int, theta: float) -> int:
    w = float(theta) * math.log(max(N, 2))
    return min(N, math.ceil(w + WINDOW_HALF_WIDTH * math.sqrt(w)) + 5)


def iter_exact_modes(N: int, theta, start: int = 1, only: set[int] | None = None) -> Iterator[ModeReport]:
    """Exact ModeReports for n = start..N from one sweep of truncated rows.

    ``only`` restricts the (cheap) mode evaluation to a subset of n; rows are
    still advanced through every n.
    """
    th = as_rational_theta(theta)
    q1, q2 = th.numerator, th.denominator
    cap = scan_cap(N, float(th))
    scanner = StirlingScanner(cap)
    guess = 1
    denom = 1
    for n in range(1, N + 1):
        if n > 1:
            scanner.advance()
        denom *= q1 + (n - 1) * q2
        if n < start or (only is not None and n not in only):
            continue
        row = scanner.row
        top = min(n, cap)
        k = min(guess, top)
        while k > 1 and q2 * row[k - 1] >= q1 * row[k]:
            k -= 1
        while k < top and q2 * row[k] < q1 * row[k + 1]:
            k += 1
        if k == cap and cap < n:
            raise DomainError(f"mode at n={n} reached the truncation cap {cap}")
        tie = k < n and q2 * row[k] == q1 * row[k + 1]
        guess = k
        yield _report(n, th, k, not tie, _exact_prob(n, th, k, row[k], denom), "exact")


def hammersley_window(n: int, bounds: tuple[float, float] = HAMMERSLEY_H_BOUNDS) -> range:
    """Integers floor(log n + gamma + (z2-z3)/x + h/x^2), x = log n + gamma - 3/2,
    as h ranges over the open interval ``bounds``."""
    if n <= 2:
        raise DomainError(f"Hammersley's formula needs log n + gamma - 3/2 > 0, i.e. n >= 3; got {n}")
    L = math.log(n) + EULER_GAMMA
    x = L - 1.5
    base = L + (ZETA2 - ZETA3) / x
    lo = base + bounds[0] / (x * x)
    hi = base + bounds[1] / (x * x)
    return range(math.floor(lo), math.ceil(hi))


def maximum_prediction(n: int, theta: float) -> float:
    """Two-term prediction of M_n(theta) = max_k P{K_n = k}."""
    if n < 2:
        raise DomainError(f"n must be >= 2, got {n}")
    theta = float(theta)
    w = theta * math.log(n)
    us = u_star(n, theta)
    frac = us - math.floor(us)
    delta = min(frac, 1.0 - frac)
    corr = theta * digamma(theta) + theta**2 * polygamma(1, theta) + 1.0 / 12.0 - delta**2
    return (1.0 + corr / (2.0 * w)) / math.sqrt(2.0 * math.pi * w)


def maximum_residual(n: int, theta: float, max_prob: float | None = None) -> float:
    """|sqrt(2 pi w) M_n - 1 - (...)/(2w)| * log n, with M_n exact (convolution)."""
    theta = float(theta)
    if max_prob is None:
        max_prob = float(np.max(bernoulli_convolution(n, theta)[1:]))
    w = theta * math.log(n)
    s = math.sqrt(2.0 * math.pi * w)
    return abs(s * max_prob - s * maximum_prediction(n, theta)) * math.log(n)


def neighbor_difference(n: int, theta: float, g: float) -> float:
    """Leading-order sqrt(2 pi w) (P{K=k+1} - P{K=k}) at k = u_star + g."""
    theta = float(theta)
    k = nint(u_star(n, theta) + g)
    if not 1 <= k <= n - 1:
        raise DomainError(f"k={k} outside 1..{n - 1}")
    return -(2.0 * g + 1.0) / (2.0 * theta * math.log(n))


def neighbor_difference_residual(n: int, theta: float, g: float, probs: np.ndarray | None = None) -> float:
    """(exact scaled difference - prediction) * log^2 n at k = nint(u_star + g).

    The prediction uses the realised offset k - u_star, since k must be an
    integer.
    """
    theta = float(theta)
    if probs is None:
        probs = bernoulli_convolution(n, theta)
    us = u_star(n, theta)
    k = nint(us + g)
    g_eff = k - us
    w = theta * math.log(n)
    observed = math.sqrt(2.0 * math.pi * w) * (probs[k + 1] - probs[k])
    return (observed - neighbor_difference(n, theta, g_eff)) * math.log(n) ** 2


TRACE_HEADER = ("n", "mode", "unique", "u_star", "frac", "nint", "agrees")


def write_trace(fh, records: Sequence[ModeReport]):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(TRACE_HEADER)
    for r in records:
        w.writerow(
            [r.n, r.mode_least, int(r.unique), format_float(r.u_star), format_float(r.frac_u_star),
             r.nint_u_star, int(r.agrees_nint)]
        )


@dataclass
class DensityResult:
    N: int
    theta: Fraction
    records: list[ModeReport]
    fraction: float
    fitted_c: float
    disagreements: list[int] = field(default_factory=list)
    longest_ceil_run: int = 0
    longest_floor_run: int = 0

    def trace_csv(self) -> str:
        buf = io.StringIO()
        write_trace(buf, self.records)
        return buf.getvalue()


def _longest_run(flags: Sequence[bool]) -> int:
    best = cur = 0
    for f in flags:
        cur = cur + 1 if f else 0
        best = max(best, cur)
    return best


def density_experiment(N: int, theta, start: int = 3) -> DensityResult:
    """Fraction of start <= n <= N with exact mode == nint(u_star).

    ``fitted_c`` is the smallest C with every disagreement inside
    |frac(u_star) - 1/2| <= C / log n.
    """
    if N < start:
        raise DomainError(f"N must be >= {start}, got {N}")
    records = list(iter_exact_modes(N, theta, start=start))
    disagree = [r for r in records if not r.agrees_nint]
    fitted = max((abs(r.frac_u_star - 0.5) * math.log(r.n) for r in disagree), default=0.0)
    at_ceil = [r.mode_least == math.ceil(r.u_star) and r.mode_least != math.floor(r.u_star) for r in records]
    at_floor = [r.mode_least == math.floor(r.u_star) for r in records]
    return DensityResult(
        N=N,
        theta=as_rational_theta(theta),
        records=records,
        fraction=1.0 - len(disagree) / len(records),
        fitted_c=fitted,
        disagreements=[r.n for r in disagree],
        longest_ceil_run=_longest_run(at_ceil),
        longest_floor_run=_longest_run(at_floor),
    )


def claim_onsets(N: int, theta) -> dict[str, int | None]:
    """Empirical threshold for the large-n mode claims, per theta.

    For each claim, the smallest n0 such that it holds for every n0 <= n <= N
    (None if it already fails at N). Claims: the mode is unique, and it lies
    in {floor(u*), ceil(u*)}.
    """
    if N < 1:
        raise DomainError(f"N must be >= 1, got {N}")
    onset = {"unique": 1, "floor_or_ceil": 1}
    for r in iter_exact_modes(N, theta):
        if not r.unique:
            onset["unique"] = r.n + 1
        if r.mode_least not in (math.floor(r.u_star), math.ceil(r.u_star)):
            onset["floor_or_ceil"] = r.n + 1
    return {k: (v if v <= N else None) for k, v in onset.items()}


def in_prefilter_band(n: int, frac: float, band: float = 3.0) -> bool:
    return 0.5 - band / math.log(n) < frac < 0.5


def counterexample_search(N: int, theta, band: float = 3.0) -> list[ModeReport]:
    """n <= N whose exact mode differs from nint(u_star).

    Candidates are the n with frac(u_star) in (1/2 - band/log n, 1/2), where
    the positive sign of s*(theta) pushes the mode up to ceil(u_star); every
    candidate is then decided by big-integer comparison.
    """
    if N < 3:
        raise DomainError(f"N must be >= 3, got {N}")
    theta_f = float(as_rational_theta(theta))
    candidates = set()
    for n in range(3, N + 1):
        us = u_star(n, theta_f)
        if in_prefilter_band(n, us - math.floor(us), band):
            candidates.add(n)
    if not candidates:
        return []
    return [r for r in iter_exact_modes(N, theta, start=3, only=candidates) if not r.agrees_nint]


def mode_polynomial(theta: float):
    """Second-order profile P_theta(a) of the PMF near its centre.

    For k = theta log n + a with a = O(1) and w = theta log n,

        sqrt(2 pi w) P{K_n = k} = 1 - (a^2/2 - A11 a - A21)/w + P_theta(a)/w^2 + ...

    where the A's are read off H_1..H_4 (A11, A12 the x and x^3 coefficients
    of H_1; A21, A22 the constant and x^2 coefficients of H_2; A31 the x
    coefficient of H_3; A41 = H_4(0)). Returns (P_theta, A11, A21).
    """
    from .expansion import compute_H
    from .polynomial import XPolynomial

    theta = float(theta)
    H1, H2, H3, H4 = (compute_H(j, theta) for j in (1, 2, 3, 4))
    a11, a12 = H1[1], H1[3]
    a21, a22 = H2[0], H2[2]
    a31, a41 = H3[1], H4[0]
    P = XPolynomial([a41, a31, a22 - a21 / 2, a12 - a11 / 2, 1.0 / 8.0])
    return P, a11, a21


def s_star_from_expansion(theta: float) -> float:
    """P_theta(a* + 1/2) - P_theta(a* - 1/2), a* = -theta psi(theta) - 1/2."""
    P, a11, _ = mode_polynomial(theta)
    return P(a11 + 0.5) - P(a11 - 0.5)
