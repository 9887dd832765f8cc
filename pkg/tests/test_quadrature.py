from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from momentint.errors import AccuracyError, DivergenceError, DomainError
from momentint.quadrature import (MomentParams, QuadResult, first_period, moment_integral,
                                  sinc_lower, sinc_upper, wallis, wallis_tail_bound)

from oracles import simpson_moment_integral

# I(2m, beta) from the finite cosine expansion of sin^(2m), evaluated with
# mpmath at high precision (tests/oracles.py, even_alpha_integral)
EVEN_ALPHA_REFERENCE = [
    (2, 2.7, 7.277528882942321),
    (4, 1.5, 2.291593564495532),
    (6, 3.3, 0.8071863054964334),
    (2, 1.05, 21.290713683520003),
    (2, 1.3, 4.746372660086426),
    (100, 1.5, 0.43095952985988517),
    (200, 200.9, 16.338083013929115),
    (1000, 1000, 0.13727308928439874),
    (2000, 1999.2, 0.005730093309992232),
]


def test_params_validation():
    with pytest.raises(DivergenceError):
        MomentParams(2.0, 1.0)
    with pytest.raises(DomainError):
        MomentParams(1.0, 2.5)
    with pytest.raises(DomainError):
        MomentParams(math.nan, 2.0)
    p = MomentParams(3, 2)
    assert p.gap == 1.0 and p.half_exponent == 1.0


@pytest.mark.parametrize("alpha, expected", [(0, math.pi), (1, 2.0), (2, math.pi / 2),
                                             (3, 4.0 / 3.0)])
def test_wallis_examples(alpha, expected):
    assert wallis(alpha) == pytest.approx(expected, rel=1e-14)


def test_wallis_domain():
    with pytest.raises(DomainError):
        wallis(-1.0)


def test_wallis_tail_bound_is_an_upper_bound():
    # periods k >= 10 of I(2, 2)/2 sum to about 1/(20 pi); the bound is ~2/(20 pi)
    b = wallis_tail_bound(2.0, 2.0, 10)
    assert b == pytest.approx(2 * (math.pi / 2) / (10 * math.pi) / math.pi, rel=1e-14)


@pytest.mark.parametrize("alpha, beta, expected", [
    (2.0, 0.0, math.pi / 2),
    (1.0, 0.0, 2.0),
    # mpmath quadrature of the smooth integrand sin^3 t / t^2
    (3.0, 2.0, 0.8712449983119637),
])
def test_first_period_examples(alpha, beta, expected):
    r = first_period(alpha, beta)
    assert r.value == pytest.approx(expected, rel=1e-12)
    assert r.error_bound <= 1e-12 * r.value


def test_first_period_within_sandwich():
    # (1/2) 6^h B(h, alpha+1) <= first period <= (1/2)(6/alpha)^h Gamma(h)
    for a, b in [(3.0, 2.0), (10.0, 10.5), (60.0, 30.0), (500.0, 499.5)]:
        h = 0.5 * (a - b + 1)
        lo = 0.5 * math.exp(h * math.log(6) + math.lgamma(h) + math.lgamma(a + 1)
                            - math.lgamma(h + a + 1))
        hi = 0.5 * math.exp(h * math.log(6 / a) + math.lgamma(h))
        v = first_period(a, b).value
        assert lo <= v <= hi


def test_first_period_domain():
    with pytest.raises(DomainError):
        first_period(1.0, 2.0)
    with pytest.raises(DomainError):
        first_period(0.0, 0.0)


def test_classical_values():
    for params, exact in [((2, 2), math.pi), ((4, 4), 2 * math.pi / 3)]:
        r = moment_integral(MomentParams(*params))
        assert abs(r.value - exact) <= r.error_bound
        assert r.error_bound <= 1e-10 * r.value


@pytest.mark.parametrize("alpha, beta, expected", EVEN_ALPHA_REFERENCE)
@pytest.mark.parametrize("rel_tol", [1e-10, 1e-13])
def test_error_bound_is_honest(alpha, beta, expected, rel_tol):
    r = moment_integral(MomentParams(alpha, beta), rel_tol)
    assert r.error_bound <= rel_tol * r.value
    # the reference itself is a rounded double
    assert abs(r.value - expected) <= r.error_bound + 2e-16 * expected


def test_result_invariants():
    r = moment_integral(MomentParams(7.3, 2.2))
    assert isinstance(r, QuadResult)
    assert 0.0 <= r.tail_bound <= r.error_bound
    assert r.value > 0 and r.periods_used >= 1 and r.panels > 0
    assert r.rel_error <= 1e-10


@pytest.mark.parametrize("rel_tol", [1e-14, 1e-2])
def test_tolerance_range(rel_tol):
    with pytest.raises(DomainError):
        moment_integral(MomentParams(2, 2), rel_tol)


def test_beta_margin():
    with pytest.raises(DivergenceError):
        moment_integral(MomentParams(2.0, 1.0 + 1e-10))


def test_near_one_beta_is_large_but_finite():
    r = moment_integral(MomentParams(2.0, 1.0 + 1e-6))
    assert r.value > 1e5 and r.error_bound <= 1e-10 * r.value


def test_simpson_oracle_cases():
    rng = np.random.default_rng(11)
    for _ in range(10):
        a = float(rng.uniform(0.5, 20.0))
        b = float(rng.uniform(1.05, a + 0.9))
        ref = simpson_moment_integral(a, b)
        assert moment_integral(MomentParams(a, b)).value == pytest.approx(ref, rel=1e-8)


def test_large_alpha_is_fast_and_close_to_asymptotic():
    for a in (1e4, 1e6):
        r = moment_integral(MomentParams(a, a))
        assert math.sqrt(a) * r.value == pytest.approx(math.sqrt(6 * math.pi), rel=2e-3)


# -- properties ----------------------------------------------------------------

def test_sinc_sandwich_grid():
    x = np.linspace(0.0, math.pi, 100_001)[1:]
    r = np.sin(x) / x
    assert np.all(sinc_lower(x) <= r + np.spacing(r))
    assert np.all(r <= sinc_upper(x) + np.spacing(r))
    y = np.linspace(0.0, math.sqrt(6.0), 10_001)[1:]
    assert np.all(sinc_lower(y) >= 0.0)
    assert np.all(sinc_lower(y) <= np.sin(y) / y + np.spacing(1.0))


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=1e-300, max_value=math.pi))
def test_sinc_sandwich_property(x):
    r = math.sin(x) / x
    ulp = math.ulp(r)
    assert float(sinc_lower(x)) <= r + ulp
    assert r <= float(sinc_upper(x)) + ulp


admissible = st.tuples(st.floats(min_value=1.5, max_value=60.0),
                       st.floats(min_value=0.0, max_value=1.0)).map(
    lambda t: (t[0], 1.05 + t[1] * (t[0] + 0.9 - 1.05 - 1e-6)))


@settings(max_examples=40, deadline=None)
@given(admissible)
def test_period_sum_bound(ab):
    a, b = ab
    r = moment_integral(MomentParams(a, b))
    fp = first_period(a, b)
    assert r.value <= 2 * (1 + 1 / (b - 1)) * (fp.value + fp.error_bound) + r.error_bound


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=1.5, max_value=40.0), st.floats(min_value=0.01, max_value=3.0))
def test_decreasing_in_alpha(beta, step):
    a = beta + 0.5
    r1 = moment_integral(MomentParams(a, beta))
    r2 = moment_integral(MomentParams(a + step, beta))
    assert r2.value + r2.error_bound < r1.value - r1.error_bound


def test_accuracy_error_is_informative():
    err = AccuracyError("x", 1.0, 2.0)
    assert err.estimate == 1.0 and err.error_bound == 2.0
