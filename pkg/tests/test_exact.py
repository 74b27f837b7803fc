import io
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ewens_edgeworth import DomainError
from ewens_edgeworth.exact import (
    StirlingScanner,
    as_rational_theta,
    bernoulli_convolution,
    ewens_pmf_exact,
    ewens_pmf_float,
    log_rising_factorial,
    mgf_ratio,
    rising_factorial,
    stirling_first_partial,
    stirling_first_row,
    stirling_second,
)


def test_small_rows():
    assert stirling_first_row(5).values == (24, 50, 35, 10, 1)
    assert stirling_first_row(3).values == (2, 3, 1)
    assert stirling_first_row(1).values == (1,)
    assert stirling_first_row(5)[2] == 50


def brute_force_cycles(n):
    # count permutations of n by number of cycles
    from itertools import permutations

    counts = [0] * (n + 1)
    for perm in permutations(range(n)):
        seen, cycles = set(), 0
        for i in range(n):
            if i not in seen:
                cycles += 1
                while i not in seen:
                    seen.add(i)
                    i = perm[i]
        counts[cycles] += 1
    return counts[1:]


@pytest.mark.parametrize("n", range(1, 8))
def test_rows_count_permutations_by_cycles(n):
    assert list(stirling_first_row(n).values) == brute_force_cycles(n)


@given(st.integers(1, 120))
@settings(max_examples=40, deadline=None)
def test_row_sum_and_recurrence(n):
    row = stirling_first_row(n)
    assert sum(row.values) == math.factorial(n)
    nxt = stirling_first_row(n + 1)
    for k in range(2, n + 1):
        assert nxt[k] == row[k - 1] + n * row[k]


@given(st.integers(1, 80), st.integers(1, 100))
@settings(max_examples=40, deadline=None)
def test_partial_is_prefix_of_full(n, kmax):
    full = list(stirling_first_row(n).values) + [0] * max(0, kmax - n)
    assert stirling_first_partial(n, kmax) == full[:kmax]


def test_scanner_matches_partial():
    sc = StirlingScanner(6)
    for n in range(1, 40):
        assert sc.n == n
        assert sc.row[1:] == stirling_first_partial(n, 6)
        sc.advance()


def test_stirling_second():
    assert stirling_second(4, 2) == 7
    assert stirling_second(5, 3) == 25
    assert stirling_second(3, 0) == 0
    assert stirling_second(0, 0) == 1
    for n in range(1, 9):
        assert sum(stirling_second(n, k) for k in range(n + 1)) == [1, 2, 5, 15, 52, 203, 877, 4140][n - 1]


def test_rising_factorial():
    assert rising_factorial(Fraction(2, 3), 3) == Fraction(80, 27)
    assert rising_factorial(5, 0) == 1
    assert rising_factorial(-3, 4) == 0
    assert rising_factorial(1.5, 3) == pytest.approx(1.5 * 2.5 * 3.5)
    with pytest.raises(OverflowError):
        rising_factorial(1.0, 400)
    assert log_rising_factorial(1.0, 400) == pytest.approx(math.lgamma(401), rel=1e-14)


@pytest.mark.parametrize("x", [Fraction(1), Fraction(2), Fraction(1, 2), Fraction(-3), Fraction(7, 5)])
def test_row_evaluates_to_rising_factorial(x):
    for n in (1, 2, 10, 50):
        assert stirling_first_row(n).evaluate(x) == rising_factorial(x, n)


def test_known_pmfs():
    assert ewens_pmf_exact(3, Fraction(2, 3)).probs == [Fraction(9, 20), Fraction(9, 20), Fraction(1, 10)]
    assert ewens_pmf_exact(4, 1).probs == [Fraction(1, 4), Fraction(11, 24), Fraction(1, 4), Fraction(1, 24)]
    assert ewens_pmf_exact(1, Fraction(5, 7)).probs == [1]


def test_exact_pmf_mean_matches_bernoulli_sum(rational_theta):
    n = 30
    mean = ewens_pmf_exact(n, rational_theta).mean()
    assert mean == sum(rational_theta / (rational_theta + i) for i in range(n))


def test_float_matches_exact(rational_theta):
    for n in (1, 5, 50, 100):
        ex = ewens_pmf_exact(n, rational_theta).as_array()
        fl = ewens_pmf_float(n, float(rational_theta)).as_array()
        np.testing.assert_allclose(fl, ex, rtol=1e-13, atol=1e-300)


def test_convolution_large_n_normalised():
    p = bernoulli_convolution(20000, 0.5)
    assert p[0] == 0.0
    assert abs(p.sum() - 1.0) < 1e-12
    assert np.all(p >= 0)


def test_mgf_ratio():
    assert mgf_ratio(3, 2 / 3, math.log(2)) == pytest.approx(3.5, rel=1e-14)
    assert mgf_ratio(10, 1.0, 0.0) == pytest.approx(1.0, abs=1e-14)


def test_csv_output():
    text = ewens_pmf_exact(3, "2/3").to_csv()
    assert text.splitlines() == ["k,prob", "1,9/20", "2,9/20", "3,1/10"]
    buf = io.StringIO()
    ewens_pmf_float(2, 1.0).write_csv(buf)
    assert buf.getvalue().splitlines()[1] == "1,0.5"


def test_theta_coercion():
    assert as_rational_theta("2/3") == Fraction(2, 3)
    assert as_rational_theta(0.1) == Fraction(1, 10)
    assert as_rational_theta("1.25") == Fraction(5, 4)
    assert as_rational_theta(3) == 3
    for bad in ("-1/2", 0, -0.5, None, True):
        with pytest.raises((DomainError, ValueError)):
            as_rational_theta(bad)


def test_domain_errors():
    for bad in (0, -1, 2.5, True):
        with pytest.raises(DomainError):
            stirling_first_row(bad)
    with pytest.raises(DomainError):
        stirling_first_row(6000)
    with pytest.raises(DomainError):
        bernoulli_convolution(10, 0.0)
    with pytest.raises(DomainError):
        bernoulli_convolution(10, float("nan"))
    with pytest.raises(IndexError):
        stirling_first_row(3)[4]
