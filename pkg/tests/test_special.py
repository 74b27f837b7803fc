import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ewens_edgeworth import DomainError
from ewens_edgeworth.special import (
    EULER_GAMMA,
    MAX_POLYGAMMA_ORDER,
    ZETA2,
    ZETA3,
    bernoulli,
    digamma,
    log_gamma,
    polygamma,
    polygamma_hp,
    s_star,
    s_star_series,
    verify_constants,
)

mpmath.mp.dps = 40

positive = st.floats(0.05, 200.0, allow_nan=False)


def test_bernoulli_numbers():
    assert [bernoulli(m) for m in range(7)] == [1, Fraction(-1, 2), Fraction(1, 6), 0, Fraction(-1, 30), 0, Fraction(1, 42)]
    assert bernoulli(12) == Fraction(-691, 2730)


@given(positive)
@settings(max_examples=200, deadline=None)
def test_log_gamma_against_mpmath(x):
    ref = float(mpmath.loggamma(x))
    assert abs(log_gamma(x) - ref) <= 2e-15 * max(1.0, abs(ref)) * 8


@given(positive)
@settings(max_examples=200, deadline=None)
def test_digamma_against_mpmath(x):
    ref = float(mpmath.digamma(x))
    assert abs(digamma(x) - ref) <= 1e-14 * max(1.0, abs(ref))


@pytest.mark.parametrize("m", range(0, MAX_POLYGAMMA_ORDER + 1))
def test_polygamma_orders(m):
    for x in (0.1, 0.5, 1.0, 2.0, 3.7, 10.0, 100.0):
        ref = float(mpmath.polygamma(m, x))
        assert polygamma(m, x) == pytest.approx(ref, rel=1e-13)


def test_polygamma_high_precision_path():
    with mpmath.workdps(60):
        v = polygamma_hp(1, 1, dps=50)
        assert abs(v - mpmath.zeta(2)) < mpmath.mpf(10) ** -48
        assert abs(polygamma_hp(2, Fraction(1, 3)) - mpmath.psi(2, mpmath.mpf(1) / 3)) < mpmath.mpf(10) ** -45


def test_special_values():
    assert digamma(1.0) == pytest.approx(-EULER_GAMMA, rel=1e-15)
    assert polygamma(1, 1.0) == pytest.approx(ZETA2, rel=1e-15)
    assert polygamma(2, 1.0) == pytest.approx(-2 * ZETA3, rel=1e-15)
    assert log_gamma(0.5) == pytest.approx(0.5 * math.log(math.pi), rel=1e-15)


def test_stored_constants():
    errs = verify_constants()
    assert set(errs) >= {"euler_gamma", "zeta2", "zeta3"} or len(errs) == 3
    assert abs(EULER_GAMMA - float(mpmath.euler)) < 1e-16
    assert abs(ZETA2 - float(mpmath.zeta(2))) < 1e-16
    assert abs(ZETA3 - float(mpmath.zeta(3))) < 1e-16


@given(st.floats(0.05, 50.0))
@settings(max_examples=60, deadline=None)
def test_s_star_closed_form_matches_series(theta):
    assert abs(s_star(theta) - s_star_series(theta)) < 1e-10
    assert s_star(theta) > 0


def test_s_star_at_one():
    assert abs(s_star(1.0) - (ZETA2 - ZETA3)) < 1e-12


def test_domain():
    for f in (log_gamma, digamma):
        with pytest.raises(DomainError):
            f(0.0)
    with pytest.raises(DomainError):
        polygamma(MAX_POLYGAMMA_ORDER + 1, 1.0)
    with pytest.raises(DomainError):
        polygamma(-1, 1.0)
