"""Stirling numbers, rising factorials and the Ewens probability mass function.

The Ewens law with parameter theta puts mass

    theta^k / theta^(n) * [n k],   k = 1..n,

on the number of blocks, where [n k] are the unsigned Stirling numbers of
the first kind and theta^(n) = theta (theta+1) ... (theta+n-1).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Sequence

import numpy as np

from .errors import DomainError
from .special import log_gamma

MAX_FULL_ROW = 5000


@dataclass(frozen=True)
class StirlingRow:
    """Unsigned Stirling numbers [n k] for k = 1..n (``values[k-1]``)."""

    n: int
    values: tuple[int, ...]

    def __getitem__(self, k: int) -> int:
        if not 1 <= k <= self.n:
            raise IndexError(f"k={k} outside 1..{self.n}")
        return self.values[k - 1]

    def __len__(self):
        return self.n

    def evaluate(self, x):
        """sum_k [n k] x^k, which equals the rising factorial x^(n)."""
        acc = 0
        for c in reversed(self.values):
            acc = (acc + c) * x
        return acc


def _check_n(n, minimum=1):
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"n must be an integer, got {n!r}")
    if n < minimum:
        raise DomainError(f"n must be >= {minimum}, got {n}")
    return int(n)


def stirling_first_row(n: int, max_n: int = MAX_FULL_ROW) -> StirlingRow:
    n = _check_n(n)
    if n > max_n:
        raise DomainError(
            f"full Stirling row for n={n} exceeds the cap {max_n}; "
            "use stirling_first_partial or raise max_n"
        )
    return StirlingRow(n, tuple(stirling_first_partial(n, n)))


def stirling_first_partial(n: int, kmax: int) -> list[int]:
    """[n k] for k = 1..kmax (entries with k > n are 0).

    The recurrence [m+1 k] = [m k-1] + m [m k] only couples k to k-1, so
    truncating the row at ``kmax`` is exact and costs O(n * kmax).
    """
    n = _check_n(n)
    kmax = _check_n(kmax)
    row = [0] * (kmax + 1)  # row[k] = [m k]; row[0] = [m 0] = 0 for m >= 1
    row[1] = 1
    for m in range(1, n):
        top = min(m + 1, kmax)
        for k in range(top, 1, -1):
            row[k] = row[k - 1] + m * row[k]
        row[1] *= m
    return row[1:]


class StirlingScanner:
    """Iterates truncated rows [n k], k <= kmax, for n = 1, 2, 3, ...

    Used by experiments that need exact rows for every n up to some N.
    """

    def __init__(self, kmax: int):
        self.kmax = _check_n(kmax)
        self.n = 1
        self._row = [0] * (self.kmax + 1)
        self._row[1] = 1

    @property
    def row(self) -> list[int]:
        """Current row, index k holds [n k] (index 0 unused)."""
        return self._row

    def advance(self):
        m = self.n
        row = self._row
        for k in range(min(m + 1, self.kmax), 1, -1):
            row[k] = row[k - 1] + m * row[k]
        row[1] *= m
        self.n += 1


@lru_cache(maxsize=64)
def _stirling_second_row(n: int) -> tuple[int, ...]:
    if n == 0:
        return (1,)
    prev = _stirling_second_row(n - 1)
    row = [0] * (n + 1)
    for k in range(1, n + 1):
        row[k] = (prev[k - 1] if k - 1 < len(prev) else 0) + (k * prev[k] if k < len(prev) else 0)
    return tuple(row)


def stirling_second(n: int, k: int) -> int:
    """Stirling number of the second kind {n k}."""
    for v, name in ((n, "n"), (k, "k")):
        if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or v < 0:
            raise DomainError(f"{name} must be a nonnegative integer, got {v!r}")
    if k > n:
        return 0
    # iterate upward to stay clear of the recursion limit for large n
    for m in range(0, n + 1, 256):
        _stirling_second_row(m)
    return _stirling_second_row(n)[k]


def rising_factorial(x, n: int):
    """x (x+1) ... (x+n-1). Exact for int/Fraction input, float otherwise."""
    n = _check_n(n, minimum=0)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        acc = 1
        for i in range(n):
            acc *= x + i
        return acc
    x = float(x)
    acc = 1.0
    for i in range(n):
        acc *= x + i
    if math.isinf(acc):
        raise OverflowError(f"rising factorial ({x})^({n}) overflows a double; use log_rising_factorial")
    return acc


def log_rising_factorial(theta: float, n: int) -> float:
    """log theta^(n) = log Gamma(theta+n) - log Gamma(theta)."""
    n = _check_n(n, minimum=0)
    theta = float(theta)
    if not theta > 0:
        raise DomainError(f"theta must be positive, got {theta}")
    if n == 0:
        return 0.0
    return log_gamma(theta + n) - log_gamma(theta)


def as_rational_theta(theta) -> Fraction:
    """Coerce to a positive Fraction.

    Strings accept "p/q" or decimal notation, floats are read through their
    shortest decimal repr (so 0.1 means 1/10, not the binary neighbour).
    """
    if isinstance(theta, str):
        value = Fraction(theta.strip())
    elif isinstance(theta, float):
        value = Fraction(repr(theta))
    elif isinstance(theta, (Rational, int)) and not isinstance(theta, bool):
        value = Fraction(theta)
    else:
        raise DomainError(f"cannot read theta={theta!r} as a rational number")
    if value <= 0:
        raise DomainError(f"theta must be positive, got {value}")
    return value


@dataclass
class PmfTable:
    """P{K_n = k} for k = 1..n; ``probs[k-1]`` holds the mass at k."""

    n: int
    theta: Fraction | float
    probs: Sequence
    kind: str  # "exact" or "float"

    def __getitem__(self, k: int):
        if not 1 <= k <= self.n:
            raise IndexError(f"k={k} outside 1..{self.n}")
        return self.probs[k - 1]

    def as_array(self) -> np.ndarray:
        return np.array([float(p) for p in self.probs]) if self.kind == "exact" else np.asarray(self.probs)

    def total(self):
        return sum(self.probs) if self.kind == "exact" else float(np.sum(self.probs))

    def mean(self):
        ks = range(1, self.n + 1)
        return sum(k * p for k, p in zip(ks, self.probs))

    def write_csv(self, fh):
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["k", "prob"])
        for k, p in enumerate(self.probs, start=1):
            if self.kind == "exact":
                p = Fraction(p)
                w.writerow([k, f"{p.numerator}/{p.denominator}"])
            else:
                w.writerow([k, format_float(p)])

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def format_float(x) -> str:
    return f"{float(x):.17g}"


def ewens_pmf_exact(n: int, theta) -> PmfTable:
    """Exact rational PMF for rational theta = Q1/Q2.

    P{K=k} = Q1^k Q2^(n-k) [n k] / prod_{i<n} (Q1 + i Q2), all in integers.
    """
    n = _check_n(n)
    theta = as_rational_theta(theta)
    q1, q2 = theta.numerator, theta.denominator
    row = stirling_first_partial(n, n)
    denom = 1
    for i in range(n):
        denom *= q1 + i * q2
    probs = []
    p1, p2 = q1, q2 ** (n - 1)
    for k in range(1, n + 1):
        probs.append(Fraction(p1 * p2 * row[k - 1], denom))
        p1 *= q1
        p2 //= q2
    return PmfTable(n, theta, probs, "exact")


def bernoulli_convolution(n: int, theta: float) -> np.ndarray:
    """Mass function of xi_1 + ... + xi_n, xi_i ~ Bern(theta/(theta+i-1)).

    Returns an array indexed by k = 0..n. Each step mixes the current
    vector with its shift; the two-term sums are carried in a hi/lo pair
    (TwoSum error capture) so the rounding error does not accumulate with n.
    Entries that underflow to zero in the upper tail are not propagated.
    """
    n = _check_n(n)
    theta = float(theta)
    if not theta > 0 or math.isinf(theta):
        raise DomainError(f"theta must be a finite positive number, got {theta}")
    hi = np.zeros(n + 1)
    lo = np.zeros(n + 1)
    hi[0] = 1.0
    top = 0
    for i in range(1, n + 1):
        denom = theta + (i - 1)
        p = theta / denom
        q = (i - 1) / denom
        new_top = min(top + 1, n)
        a = hi[1 : new_top + 1] * q
        b = hi[0:new_top] * p
        s = a + b
        bb = s - a
        err = (a - (s - bb)) + (b - bb)
        low = lo[1 : new_top + 1] * q + lo[0:new_top] * p + err
        hi[1 : new_top + 1] = s
        lo[1 : new_top + 1] = low
        hi[0] *= q
        lo[0] *= q
        top = new_top
        while top > 0 and hi[top] == 0.0 and lo[top] == 0.0:
            top -= 1
    return hi + lo


def ewens_pmf_float(n: int, theta: float) -> PmfTable:
    n = _check_n(n)
    probs = bernoulli_convolution(n, theta)[1:]
    return PmfTable(n, float(theta), probs, "float")


def mgf_ratio(n: int, theta: float, beta: float) -> float:
    """E exp(beta K_n) = (theta e^beta)^(n) / theta^(n), via log-gamma."""
    n = _check_n(n)
    theta = float(theta)
    if not theta > 0:
        raise DomainError(f"theta must be positive, got {theta}")
    tilted = theta * math.exp(beta)
    return math.exp(log_rising_factorial(tilted, n) - log_rising_factorial(theta, n))
