"""Quick invariant suite behind ``--seed-check``.

Each check is a small, self-contained version of an invariant the test
suite exercises at full size. ``run_checks`` prints one line per check.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction

import numpy as np

from .exact import (
    ewens_pmf_exact,
    ewens_pmf_float,
    mgf_ratio,
    rising_factorial,
    stirling_first_row,
)
from .expansion import compute_H
from .mode import density_experiment, hammersley_window, iter_exact_modes, s_star_from_expansion
from .special import EULER_GAMMA, ZETA2, ZETA3, s_star, verify_constants


def _stirling_identity():
    for n in range(1, 61):
        row = stirling_first_row(n)
        if sum(row.values) != math.factorial(n):
            return False
        for x in (Fraction(1), Fraction(2), Fraction(1, 2), Fraction(-3)):
            if row.evaluate(x) != rising_factorial(x, n):
                return False
    return True


def _pmf_exact():
    for th in (Fraction(1, 2), Fraction(2, 3), Fraction(1), Fraction(3)):
        for n in (1, 2, 7, 40):
            pmf = ewens_pmf_exact(n, th)
            p = pmf.probs
            if sum(p) != 1 or any(p[i] ** 2 < p[i - 1] * p[i + 1] for i in range(1, n - 1)):
                return False
            if np.max(np.abs(pmf.as_array() - ewens_pmf_float(n, float(th)).as_array())) > 1e-12:
                return False
    return True


def _mgf():
    for n in (10, 100):
        for th in (0.5, 2.0):
            p = ewens_pmf_float(n, th).as_array()
            k = np.arange(1, n + 1)
            for beta in (-1.0, 0.1, 1.0):
                direct = float(np.sum(np.exp(beta * k) * p))
                if abs(direct / mgf_ratio(n, th, beta) - 1) > 1e-9:
                    return False
    return abs(mgf_ratio(3, 2 / 3, math.log(2)) - 3.5) < 1e-12


def _hj_structure():
    for th in (0.5, 1.0, 2.0):
        for j in range(0, 7):
            H = compute_H(j, th)
            if H.degree != 3 * j or any(H[p] != 0 for p in range(len(H)) if (p - j) % 2):
                return False
    return True


def _s_star():
    return (
        abs(s_star(1.0) - (ZETA2 - ZETA3)) < 1e-12
        and all(s_star(t) > 0 for t in np.linspace(0.05, 50, 40))
        and all(abs(s_star_from_expansion(t) - s_star(t)) < 1e-10 for t in (0.5, 1.0, 2.0))
    )


def _mode_bracket():
    for r in iter_exact_modes(1000, 1):
        c = math.log(r.n) + EULER_GAMMA - 0.5
        if r.mode_least not in (math.floor(c), math.ceil(c)):
            return False
        if r.n >= 3 and (not r.unique or r.mode_least not in hammersley_window(r.n)):
            return False
    return True


def _disagreement_direction():
    res = density_experiment(700, 1)
    return all(
        r.agrees_nint or (r.mode_least == math.ceil(r.u_star) and r.frac_u_star < 0.5) for r in res.records
    )


CHECKS = [
    ("stirling row identities (n <= 60)", _stirling_identity),
    ("exact PMF normalisation, log-concavity, float agreement", _pmf_exact),
    ("MGF identity", _mgf),
    ("H_j degree 3j and parity (j <= 6)", _hj_structure),
    ("s*(theta): zeta(2)-zeta(3), positivity, expansion route", _s_star),
    ("mode bracket, uniqueness, Hammersley window (n <= 1000)", _mode_bracket),
    ("disagreements sit at ceil(u*) (n <= 700)", _disagreement_direction),
    ("stored constants vs series", lambda: bool(verify_constants())),
]


def run_checks(out=print) -> bool:
    ok_all = True
    for name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            ok = bool(fn())
        except Exception as exc:  # report, keep going
            ok = False
            name = f"{name} ({type(exc).__name__}: {exc})"
        ok_all &= ok
        out(f"{'PASS' if ok else 'FAIL'}  {time.perf_counter() - t0:6.2f}s  {name}")
    return ok_all
