from __future__ import annotations

import math
from decimal import Decimal

import numpy as np
import pytest

from momentint.errors import DivergenceError, DomainError
from momentint.moments import (SWEEP_COLUMNS, asymptotic_equiv, ball_bound_check,
                               bounds_report, decimal_grid, effective_params, jump_indices,
                               lower_bound, lower_bound_beta_form, oscillation_sweep,
                               upper_bound)
from momentint.quadrature import MomentParams, moment_integral
from momentint.specfun import phi


def test_lower_bound_example():
    # sqrt(6) B(1/2, 3) = 16 sqrt(6)/15 via Gamma(7/2) = 15 sqrt(pi)/8
    assert lower_bound((2, 2)) == pytest.approx(16 * math.sqrt(6) / 15, rel=1e-14)
    assert lower_bound((2, 2)) <= math.pi


def test_upper_bound_example():
    assert upper_bound((2, 2)) == pytest.approx(2 * math.sqrt(3 * math.pi), rel=1e-14)
    assert upper_bound((100, 100)) / asymptotic_equiv((100, 100)) == pytest.approx(
        1 + 1 / 99, rel=1e-14)


def test_upper_bound_margin():
    with pytest.raises(DivergenceError):
        upper_bound(MomentParams(2.0, 1.0 + 1e-10))


def test_asymptotic_examples():
    for a in (3.0, 17.0, 1e5):
        assert math.sqrt(a) * asymptotic_equiv((a, a)) == pytest.approx(
            math.sqrt(6 * math.pi), rel=1e-13)
    # (6/3.5)^(3/4) Gamma(3/4) by mpmath
    assert asymptotic_equiv((3.5, 3.0)) == pytest.approx(1.8358880712726062, rel=1e-13)
    assert MomentParams(7.0, 7.0).half_exponent == 0.5


def test_lower_over_asymptotic_tends_to_one():
    ratios = [lower_bound((a, a)) / asymptotic_equiv((a, a)) for a in (10, 1e3, 1e5, 1e7)]
    assert all(b > a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] == pytest.approx(1.0, abs=1e-6)


def test_log_space_survives_underflow():
    # (6/alpha)^h alone underflows here while the product is about e^485
    assert (6 / 1e4) ** 4999.5 == 0.0
    v = lower_bound((1e4, 2.0))
    assert math.isfinite(v) and v > 0.0
    assert v == pytest.approx(lower_bound_beta_form((1e4, 2.0)), rel=1e-12)
    assert asymptotic_equiv((1e4, 1e4 - 100)) > 0.0


def test_lower_bound_beta_form_agrees():
    rng = np.random.default_rng(3)
    for _ in range(100):
        a = float(rng.uniform(0.1, 1e4))
        b = float(rng.uniform(1.001, a + 0.999))
        assert lower_bound((a, b)) == pytest.approx(lower_bound_beta_form((a, b)), rel=1e-12)


def test_two_sided_bounds_random():
    rng = np.random.default_rng(42)
    for _ in range(50):
        a = float(rng.uniform(2, 200))
        b = float(rng.uniform(1.05, a + 0.9))
        rep = bounds_report((a, b))
        assert rep.lower_holds and rep.upper_holds
        assert rep.ratio_to_asymptotic == rep.integral / rep.asymptotic
        assert rep.c_gap == pytest.approx(a - b)
        assert min(rep.lower, rep.integral, rep.upper, rep.asymptotic) > 0


def test_ratio_bracket():
    rng = np.random.default_rng(5)
    for _ in range(30):
        a = float(rng.uniform(1, 100))
        b = float(rng.uniform(1.05, a + 0.95))
        rep = bounds_report((a, b))
        slack = rep.integral_error / rep.asymptotic
        assert phi(a, b) <= rep.ratio_to_asymptotic + slack
        assert rep.ratio_to_asymptotic <= 1 + 1 / (b - 1) + slack


@pytest.mark.parametrize("c", [0.0, 0.5, 1.0, 3.0])
def test_fixed_gap_convergence(c):
    h = (c + 1) / 2
    target = 6**h * math.gamma(h)
    devs = [abs(a**h * moment_integral(MomentParams(a, a - c)).value - target)
            for a in (50, 100, 200, 400)]
    assert all(b < a for a, b in zip(devs, devs[1:]))


def test_ball_examples():
    j2 = ball_bound_check(2)
    assert j2.integral_scaled == pytest.approx(1.0, abs=1e-9)
    assert j2.ball_rhs == 1.0 and j2.holds
    j4 = ball_bound_check(4)
    assert j4.integral_scaled == pytest.approx(2 / 3, abs=1e-9)
    assert j4.ball_rhs == pytest.approx(1 / math.sqrt(2))
    j100 = ball_bound_check(100)
    assert j100.integral_scaled / j100.ball_rhs == pytest.approx(math.sqrt(3 / math.pi),
                                                                 rel=0.02)
    with pytest.raises(DomainError):
        ball_bound_check(1.5)


def test_decimal_grid_is_exact():
    g = decimal_grid(10, 20, "0.05")
    assert len(g) == 201
    assert g[100] == Decimal("15.00")
    assert decimal_grid("0.1", "0.3", "0.1") == [Decimal("0.1"), Decimal("0.2"), Decimal("0.3")]


def test_effective_params():
    assert effective_params(3.0, "floor_beta") == MomentParams(3.0, 3.0)
    p = effective_params(Decimal("3.999"), "floor_beta")
    assert p.beta == 3.0 and p.half_exponent == pytest.approx(0.9995)
    p = effective_params(4.5, "floor_alpha")
    assert (p.alpha, p.beta) == (4.0, 3.5)
    with pytest.raises(DomainError):
        effective_params(1.9, "floor_beta")
    with pytest.raises(DomainError):
        effective_params(2.0, "floor_alpha")
    with pytest.raises(DomainError):
        effective_params(3.0, "other")


def test_jump_between_3999_and_4():
    below = asymptotic_equiv(effective_params(Decimal("3.999"), "floor_beta"))
    at = asymptotic_equiv(effective_params(Decimal("4.0"), "floor_beta"))
    # exponents h = 0.9995 just below the integer and 0.5 at it
    expected = (math.gamma(0.9995) * (6 / 3.999) ** 0.9995) / (math.gamma(0.5) * 1.5**0.5)
    assert below / at == pytest.approx(expected, rel=1e-12)
    assert jump_indices([below * 1.0001, below, at, at * 0.9999]) == [2]


def test_sweep_floor_beta():
    table = oscillation_sweep(decimal_grid(10, 20, "0.05"), "floor_beta")
    assert table.columns == SWEEP_COLUMNS
    assert len(table.rows) == 201 and not table.skipped
    ratios = table.column("ratio")
    assert all(0.85 <= r <= 1.15 for r in ratios)
    jumps = jump_indices(table.column("asymptotic"))
    assert len(jumps) == 10
    assert [table.rows[i][0] for i in jumps] == [float(k) for k in range(11, 21)]
    # the equivalent jumps up at each integer: the exponent resets to 1/2 and 6/alpha < 1
    asym = table.column("asymptotic")
    assert all(asym[i] > asym[i - 1] for i in jumps)


def test_sweep_high_alpha():
    table = oscillation_sweep(decimal_grid(500, 501, "0.05"), "floor_beta")
    assert all(0.98 <= r <= 1.02 for r in table.column("ratio"))


def test_sweep_skips_inadmissible_points():
    table = oscillation_sweep([1.5, 2.5, 3.0], "floor_beta")
    assert len(table.rows) == 2
    assert [s.index for s in table.skipped] == [0]
    table = oscillation_sweep([2.0, 2.5, 3.0], "floor_alpha")
    assert [s.parameter for s in table.skipped] == [2.0]
    assert table.rows[0][:2] == (2.0, 1.5)


def test_sweep_threads_do_not_change_output():
    grid = decimal_grid(10, 12, "0.1")
    one = oscillation_sweep(grid, threads=1).to_csv()
    four = oscillation_sweep(grid, threads=4).to_csv()
    assert one == four


def test_jump_indices_empty():
    assert jump_indices([1.0]) == []
