"""Edgeworth expansion of the Ewens distribution.

With w = theta log n and x = (k - w)/sqrt(w),

    P{K_n = k} ~ exp(-x^2/2) / sqrt(2 pi w) * sum_{j<=r} H_j(x) / w^(j/2),

where H_j(x) = (-1)^j/j! e^{x^2/2} B_j(D~_1, ..., D~_j) e^{-x^2/2}, B_j is
the complete Bell polynomial and

    D~_j = D^(j+2) / ((j+1)(j+2)) + chi_j D^j,
    chi_j = -sum_l {j l} psi^(l-1)(theta) theta^l.

The H_j are built symbolically in the commutative algebra of the D~_j and
then turned into polynomials in x through the Hermite polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from numbers import Number
from typing import Sequence

import numpy as np

from .errors import DomainError
from .exact import bernoulli_convolution, format_float, stirling_first_partial
from .polynomial import OperatorPolynomial, XPolynomial, hermite
from .special import digamma, log_gamma, polygamma

DEFAULT_ETA = 4.0

__all__ = [
    "ChiTable",
    "ExpansionPoint",
    "bell_combination",
    "chi_tilde",
    "compute_H",
    "edgeworth_pmf",
    "edgeworth_pmf_values",
    "edgeworth_cdf",
    "hermite",
    "large_deviation_density",
]


def bell_combination(z: Sequence, j: int):
    """Complete Bell polynomial B_j(z_1, ..., z_j) over any commutative ring.

    ``z[i]`` holds z_{i+1}. Works with numbers or OperatorPolynomials and
    uses B_{m+1} = sum_{i=0}^{m} C(m, i) B_{m-i} z_{i+1}.
    """
    if j < 0:
        raise DomainError(f"Bell index must be >= 0, got {j}")
    if len(z) < j:
        raise DomainError(f"B_{j} needs {j} arguments, got {len(z)}")
    scalar = len(z) > 0 and isinstance(z[0], Number)
    one = 1 if scalar else OperatorPolynomial.one()
    B = [one]
    for m in range(j):
        acc = 0 if scalar else OperatorPolynomial()
        for i in range(m + 1):
            acc = acc + B[m - i] * z[i] * comb(m, i)
        B.append(acc)
    return B[j]


def _positive_theta(theta) -> float:
    theta = float(theta)
    if not theta > 0 or math.isinf(theta):
        raise DomainError(f"theta must be a finite positive number, got {theta}")
    return theta


def chi_tilde(j: int, theta: float) -> float:
    """-(d/d beta)^j log Gamma(theta e^beta) at beta = 0."""
    from .exact import stirling_second

    if j < 1:
        raise DomainError(f"chi_tilde needs j >= 1, got {j}")
    theta = _positive_theta(theta)
    return -sum(stirling_second(j, l) * polygamma(l - 1, theta) * theta**l for l in range(1, j + 1))


@dataclass(frozen=True)
class ChiTable:
    theta: float
    values: tuple[float, ...]  # values[j-1] = chi~_j(0)

    @classmethod
    def build(cls, theta: float, J: int) -> "ChiTable":
        return cls(float(theta), tuple(chi_tilde(j, theta) for j in range(1, J + 1)))

    def __getitem__(self, j: int) -> float:
        return self.values[j - 1]


def d_tilde(j: int, theta: float, chi: float | None = None) -> OperatorPolynomial:
    if chi is None:
        chi = chi_tilde(j, theta)
    coeffs = [0] * (j + 3)
    coeffs[j + 2] = Fraction(1, (j + 1) * (j + 2))
    coeffs[j] = chi
    return OperatorPolynomial(coeffs)


@lru_cache(maxsize=256)
def compute_H(j: int, theta: float) -> XPolynomial:
    """The correction polynomial H_j(x, theta); degree 3j, parity (-1)^j."""
    if j < 0:
        raise DomainError(f"H_j needs j >= 0, got {j}")
    theta = _positive_theta(theta)
    chi = ChiTable.build(theta, j)
    ops = [d_tilde(i, theta, chi[i]) for i in range(1, j + 1)]
    operator = bell_combination(ops, j)
    poly = operator.conjugate_gaussian() * Fraction((-1) ** j, math.factorial(j))
    return poly.to_float()


def h_coefficient_rows(js: Sequence[int], theta: float) -> list[tuple[int, int, float]]:
    """(j, power, coefficient) for every monomial of H_j, zero terms skipped."""
    rows = []
    for j in js:
        for power, c in enumerate(compute_H(j, theta)):
            if c != 0:
                rows.append((j, power, c))
    return rows


def write_h_csv(fh, js: Sequence[int], theta: float):
    fh.write("j,power,coefficient\n")
    for j, power, c in h_coefficient_rows(js, theta):
        fh.write(f"{j},{power},{format_float(c)}\n")


@dataclass(frozen=True)
class ExpansionPoint:
    n: int
    k: int
    theta: float

    def __post_init__(self):
        if self.n < 2:
            raise DomainError(f"expansion needs n >= 2 (theta log n > 0), got n={self.n}")
        _positive_theta(self.theta)

    @property
    def w_n(self) -> float:
        return self.theta * math.log(self.n)

    @property
    def x(self) -> float:
        return (self.k - self.w_n) / math.sqrt(self.w_n)


def edgeworth_pmf(point: ExpansionPoint, r: int) -> float:
    """r-term expansion of P{K_n = k}; not clamped, tails may go negative."""
    if not 1 <= point.k <= point.n:
        raise DomainError(f"k={point.k} outside 1..{point.n}")
    return float(edgeworth_pmf_values(point.n, point.theta, r, np.array([point.k]))[0])


def edgeworth_pmf_values(n: int, theta: float, r: int, k=None) -> np.ndarray:
    """Vectorised r-term expansion at the integers ``k`` (default 1..n)."""
    if n < 2:
        raise DomainError(f"expansion needs n >= 2, got n={n}")
    if r < 0:
        raise DomainError(f"order r must be >= 0, got {r}")
    theta = _positive_theta(theta)
    k = np.arange(1, n + 1, dtype=np.float64) if k is None else np.asarray(k, dtype=np.float64)
    w = theta * math.log(n)
    sw = math.sqrt(w)
    x = (k - w) / sw
    total = np.zeros_like(x)
    for j in range(r + 1):
        total += compute_H(j, theta)(x) / sw**j
    return np.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi * w) * total


def edgeworth_sup_error(n: int, theta: float, r: int, exact: np.ndarray | None = None) -> float:
    """sup_{1<=k<=n} |P{K_n=k} - r-term expansion|, exact PMF by convolution."""
    if exact is None:
        exact = bernoulli_convolution(n, theta)[1:]
    return float(np.max(np.abs(exact - edgeworth_pmf_values(n, theta, r))))


def scaled_edgeworth_error(n: int, theta: float, r: int, exact: np.ndarray | None = None) -> float:
    """(log n)^((r+1)/2) times the sup error; tends to 0 as n grows."""
    return math.log(n) ** ((r + 1) / 2) * edgeworth_sup_error(n, theta, r, exact)


def _normal_cdf(x):
    return 0.5 * np.vectorize(math.erfc)(-np.asarray(x, dtype=np.float64) / math.sqrt(2.0))


def edgeworth_cdf(n: int, theta: float, x) -> np.ndarray | float:
    """Phi(x) + e^{-x^2/2}/sqrt(2 pi w) (1/2 - (x^2-1)/6 + theta psi(theta)).

    Meant for x on the lattice (k - w)/sqrt(w), k integer; the 1/2 is the
    lattice (Euler-Maclaurin) correction.
    """
    if n < 2:
        raise DomainError(f"expansion needs n >= 2, got n={n}")
    theta = _positive_theta(theta)
    w = theta * math.log(n)
    xa = np.asarray(x, dtype=np.float64)
    corr = np.exp(-0.5 * xa * xa) / math.sqrt(2.0 * math.pi * w) * (
        0.5 - (xa * xa - 1.0) / 6.0 + theta * digamma(theta)
    )
    out = _normal_cdf(xa) + corr
    return float(out) if np.ndim(x) == 0 else out


def lattice_points(n: int, theta: float) -> np.ndarray:
    w = float(theta) * math.log(n)
    return (np.arange(1, n + 1, dtype=np.float64) - w) / math.sqrt(w)


def cdf_sup_errors(n: int, theta: float, exact: np.ndarray | None = None) -> tuple[float, float]:
    """(sup |Phi - F|, sup |corrected - F|) over the lattice k = 1..n."""
    if exact is None:
        exact = bernoulli_convolution(n, theta)[1:]
    F = np.cumsum(exact)
    x = lattice_points(n, theta)
    plain = float(np.max(np.abs(_normal_cdf(x) - F)))
    corrected = float(np.max(np.abs(edgeworth_cdf(n, theta, x) - F)))
    return plain, corrected


def large_deviation_density(
    n: int, k: int, q: int, eta: float = DEFAULT_ETA, gamma_ratio: str = "asymptotic"
) -> float:
    """Approximation to [n k] / n! with theta = k / log n.

        1/Gamma(theta) n^(theta - theta log theta - 1)
            * 1/sqrt(2 pi k) * sum_{s<=q} H_2s(0, theta) / k^s

    ``gamma_ratio="exact"`` replaces n^(theta-1)/Gamma(theta) by the exact
    Gamma(n+theta)/(Gamma(theta) n!), removing the O(1/n) factor.
    """
    if n < 3:
        raise DomainError(f"large-deviation expansion needs n >= 3, got {n}")
    if q < 0:
        raise DomainError(f"q must be >= 0, got {q}")
    if eta <= 1:
        raise DomainError(f"eta must exceed 1, got {eta}")
    L = math.log(n)
    theta = k / L
    if not (1.0 / eta < theta < eta):
        raise DomainError(
            f"k={k} gives theta=k/log n={theta:.4g} outside the window ({1 / eta:.4g}, {eta:.4g})"
        )
    series = sum(compute_H(2 * s, theta)(0.0) / k**s for s in range(q + 1))
    if gamma_ratio == "asymptotic":
        log_pref = -log_gamma(theta) + (theta - 1.0) * L
    elif gamma_ratio == "exact":
        log_pref = log_gamma(n + theta) - log_gamma(theta) - log_gamma(n + 1.0)
    else:
        raise DomainError(f"unknown gamma_ratio {gamma_ratio!r}")
    log_pref -= theta * math.log(theta) * L
    return math.exp(log_pref) / math.sqrt(2.0 * math.pi * k) * series


def stirling_over_factorial(n: int, k: int) -> float:
    """[n k] / n! from exact integers, rounded once."""
    if not 1 <= k <= n:
        raise DomainError(f"k={k} outside 1..{n}")
    return float(Fraction(stirling_first_partial(n, k)[k - 1], math.factorial(n)))


def large_deviation_rel_error(n: int, k: int, q: int, eta: float = DEFAULT_ETA, **kw) -> float:
    exact = stirling_over_factorial(n, k)
    return abs(large_deviation_density(n, k, q, eta, **kw) - exact) / exact
