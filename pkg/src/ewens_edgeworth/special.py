"""Scalar special functions in double precision.

log-gamma, digamma and polygamma are evaluated by shifting the argument
upward with the functional recurrences and then summing the Stirling /
asymptotic series. No external special-function library is used on the
double path; :func:`polygamma_hp` offers a 50-digit route through mpmath
for decisions that sit on a near tie.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError

EULER_GAMMA = 0.57721566490153286
ZETA2 = 1.6449340668482264  # pi**2 / 6
ZETA3 = 1.2020569031595942

MAX_POLYGAMMA_ORDER = 12

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_SHIFT = 12.0


@lru_cache(maxsize=None)
def bernoulli(m: int) -> Fraction:
    """Bernoulli number B_m with B_1 = -1/2 (Akiyama-Tanigawa)."""
    if m < 0:
        raise DomainError(f"bernoulli index must be >= 0, got {m}")
    a = [Fraction(0)] * (m + 1)
    for i in range(m + 1):
        a[i] = Fraction(1, i + 1)
        for j in range(i, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    b = a[0]
    return -b if m == 1 else b


_B2K = [float(bernoulli(2 * k)) for k in range(0, 16)]


def _check_positive(x, name="x"):
    if not x > 0 or math.isinf(x):
        raise DomainError(f"{name} must be a finite positive number, got {x!r}")


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    x = float(x)
    _check_positive(x)
    shift = 0.0
    if x < _SHIFT:
        # log of x(x+1)...(x+m-1), accumulated as a product (few terms)
        prod = 1.0
        while x < _SHIFT:
            prod *= x
            x += 1.0
        shift = math.log(prod)
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    term = inv
    for k in range(1, 9):
        series += _B2K[k] / (2 * k * (2 * k - 1)) * term
        term *= inv2
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + series - shift


def digamma(x: float) -> float:
    x = float(x)
    _check_positive(x)
    acc = 0.0
    while x < _SHIFT:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    term = inv2
    for k in range(1, 9):
        series += _B2K[k] / (2 * k) * term
        term *= inv2
    return acc + math.log(x) - 0.5 / x - series


def polygamma(m: int, x: float) -> float:
    """Polygamma function psi^(m)(x), the (m+1)-th derivative of log Gamma.

    For m >= 1 the argument is shifted to x >= 12 + m with
    psi^(m)(x) = psi^(m)(x+1) + (-1)^(m+1) m! / x^(m+1), after which the
    asymptotic expansion

        (-1)^(m+1) [ (m-1)!/x^m + m!/(2 x^(m+1))
                     + sum_k B_2k (2k+m-1)! / ((2k)! x^(2k+m)) ]

    is summed until its terms stop contributing.
    """
    m = int(m)
    if not 0 <= m <= MAX_POLYGAMMA_ORDER:
        raise DomainError(f"polygamma order must be in 0..{MAX_POLYGAMMA_ORDER}, got {m}")
    if m == 0:
        return digamma(x)
    x = float(x)
    _check_positive(x)
    sign = -1.0 if m % 2 == 0 else 1.0  # (-1)^(m+1)
    fact_m = math.factorial(m)
    head = 0.0
    target = _SHIFT + m
    while x < target:
        head += 1.0 / x ** (m + 1)
        x += 1.0
    tail = math.factorial(m - 1) / x**m + fact_m / (2.0 * x ** (m + 1))
    inv2 = 1.0 / (x * x)
    power = 1.0 / x**m
    for k in range(1, 16):
        power *= inv2
        term = _B2K[k] * math.factorial(2 * k + m - 1) / math.factorial(2 * k) * power
        tail += term
        if abs(term) < 1e-18 * abs(tail):
            break
    return sign * (fact_m * head + tail)


def polygamma_hp(m: int, x, dps: int = 50):
    """psi^(m)(x) as an mpmath float with ``dps`` decimal digits."""
    import mpmath

    with mpmath.workdps(dps):
        return +mpmath.psi(m, mpmath.mpf(x) if not isinstance(x, Fraction)
                           else mpmath.mpf(x.numerator) / x.denominator)


def euler_gamma() -> float:
    return EULER_GAMMA


def zeta2() -> float:
    return ZETA2


def zeta3() -> float:
    return ZETA3


def zeta_series(s: int, terms: int = 10**6) -> float:
    """zeta(s) from a direct partial sum plus an Euler-Maclaurin tail."""
    if s < 2:
        raise DomainError("zeta_series needs s >= 2")
    k = np.arange(terms, 0, -1, dtype=np.float64)
    head = float(np.sum(k ** (-s)))
    K = float(terms)
    # sum_{k>K} k^-s = int_K^inf - f(K)/2 - f'(K)/12 + ...
    tail = K ** (1 - s) / (s - 1) - 0.5 * K ** (-s) + s * K ** (-s - 1) / 12.0
    return head + tail


def euler_gamma_series(terms: int = 10**6) -> float:
    """gamma = H_N - log N - 1/(2N) + 1/(12 N^2) - 1/(120 N^4)."""
    k = np.arange(terms, 0, -1, dtype=np.float64)
    N = float(terms)
    return float(np.sum(1.0 / k)) - math.log(N) - 0.5 / N + 1.0 / (12 * N * N) - 1.0 / (120 * N**4)


def verify_constants(tol: float = 1e-12) -> dict[str, float]:
    """Recompute the stored constants; returns the absolute deviations."""
    dev = {
        "euler_gamma": abs(euler_gamma_series() - EULER_GAMMA),
        "zeta2": abs(zeta_series(2) - ZETA2),
        "zeta3": abs(zeta_series(3) - ZETA3),
        "zeta2_closed_form": abs(math.pi**2 / 6 - ZETA2),
    }
    bad = {k: v for k, v in dev.items() if v > tol}
    if bad:
        raise AssertionError(f"constant self-test failed: {bad}")
    return dev


def s_star(theta: float) -> float:
    """theta^2/2 * (2 psi'(theta) + theta psi''(theta)).

    This is the sign-deciding quantity for the mode when the fractional part
    of the asymptotic mode location sits just below one half; it equals
    theta^2 sum_{k>=1} k/(theta+k)^3 and is therefore positive.
    """
    theta = float(theta)
    _check_positive(theta, "theta")
    return 0.5 * theta * theta * (2.0 * polygamma(1, theta) + theta * polygamma(2, theta))


def s_star_series(theta: float, terms: int = 10**6) -> float:
    """Direct summation of theta^2 sum_{k>=1} k/(theta+k)^3 with an integral tail."""
    theta = float(theta)
    _check_positive(theta, "theta")
    k = np.arange(terms, 0, -1, dtype=np.float64)
    head = float(np.sum(k / (theta + k) ** 3))
    K = float(terms)
    u = theta + K
    f = K / u**3
    df = 1.0 / u**3 - 3.0 * K / u**4
    # int_K^inf x/(theta+x)^3 dx = 1/u - theta/(2u^2)
    tail = 1.0 / u - theta / (2.0 * u * u) - 0.5 * f - df / 12.0
    return theta * theta * (head + tail)
