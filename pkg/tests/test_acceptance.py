"""Acceptance criteria 1 to 10, one PASS/FAIL line each (run with ``-s`` to see them)."""

from __future__ import annotations

import math
import time
from decimal import Decimal

import numpy as np
import pytest

from momentint.hybounds import hy_bound_a, hy_bound_b
from momentint.moments import (ball_bound_check, bounds_report, decimal_grid, jump_indices,
                               oscillation_sweep)
from momentint.products import (bessel_j0_zeros, product_limit_formula, product_moment,
                                sinc_sequence)
from momentint.quadrature import MomentParams, moment_integral

from oracles import simpson_moment_integral


def report(n: int, passed: bool, detail: str) -> None:
    print(f"\ncriterion {n:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
    assert passed, detail


def J(s: float, rel_tol: float = 1e-10):
    q = moment_integral(MomentParams(s, s), rel_tol)
    return q.value / math.pi, q.error_bound / math.pi


def test_criterion_01_sandwich():
    t0 = time.perf_counter()
    x = np.linspace(0.0, math.pi, 100_001)[1:]
    r = np.sin(x) / x
    ulp = np.spacing(r)
    low = int(np.sum(1.0 - x * x / 6.0 > r + ulp))
    high = int(np.sum(r > np.exp(-x * x / 6.0) + ulp))
    dt = time.perf_counter() - t0
    report(1, low == 0 and high == 0 and dt < 1.0,
           f"{x.size} points, violations lower={low} upper={high}, {dt:.3f}s")


def test_criterion_02_two_sided_bound():
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    bad = []
    for _ in range(50):
        a = float(rng.uniform(2.0, 200.0))
        b = float(rng.uniform(1.05, a + 0.9))
        r = bounds_report(MomentParams(a, b))
        if not (r.lower <= r.integral + r.integral_error
                and r.integral - r.integral_error <= r.upper):
            bad.append((a, b))
    dt = time.perf_counter() - t0
    report(2, not bad and dt < 30.0, f"50 seeded cases, failures={bad}, {dt:.2f}s")


def test_criterion_03_exact_values():
    e2 = abs(moment_integral(MomentParams(2, 2)).value / math.pi - 1)
    e4 = abs(moment_integral(MomentParams(4, 4)).value / (2 * math.pi / 3) - 1)
    report(3, e2 <= 1e-9 and e4 <= 1e-9, f"rel errors I(2,2)={e2:.2e} I(4,4)={e4:.2e}")


def test_criterion_04_ball_inequality():
    grid = [2.0 + 0.5 * i for i in range(97)]
    bad = [s for s in grid if not ball_bound_check(s).holds]
    j2, _ = J(2.0)
    report(4, not bad and abs(j2 - 1.0) <= 1e-9 and grid[-1] == 50.0,
           f"s in [2, 50] step 0.5, violations={bad}, |J(2)-1|={abs(j2 - 1):.2e}")


def test_criterion_05_limit_of_ball_integral():
    t0 = time.perf_counter()
    target = math.sqrt(3 / math.pi)
    dev = {s: abs(math.sqrt(s / 2) * J(s)[0] - target) / target for s in (200.0, 2000.0)}
    dt = time.perf_counter() - t0
    report(5, dev[2000.0] <= 0.01 and dev[2000.0] < dev[200.0] and dt < 10.0,
           f"rel deviation s=200 {dev[200.0]:.2e}, s=2000 {dev[2000.0]:.2e}, {dt:.2f}s")


def test_criterion_06_diagonal_limit():
    target = math.sqrt(6 * math.pi)
    alphas = (200.0, 500.0, 1000.0, 2000.0)
    dev = [abs(math.sqrt(a) * moment_integral(MomentParams(a, a)).value - target) / target
           for a in alphas]
    monotone = all(b < a for a, b in zip(dev, dev[1:]))
    report(6, dev[-1] <= 0.01 and monotone,
           "rel deviations " + ", ".join(f"{a:g}:{d:.2e}" for a, d in zip(alphas, dev)))


def test_criterion_07_hausdorff_young():
    sample = np.concatenate([np.linspace(2.0, 100.0, 981), np.geomspace(100.0, 1e6, 200)])
    a_ok = all(hy_bound_a(s) < math.sqrt(math.e / s) for s in sample)
    grid = [2.0 + 0.5 * i for i in range(97)]
    bad_a, bad_b = [], []
    for s in grid:
        j, err = J(s)
        if j - err > hy_bound_a(s):
            bad_a.append(s)
        if s >= 4.0 and not (j - err <= hy_bound_b(s) < math.sqrt(2 / s)):
            bad_b.append(s)
    j4, _ = J(4.0)
    report(7, a_ok and not bad_a and not bad_b and abs(j4 - 2 / 3) <= 1e-9,
           f"hy_a<sqrt(e/s): {a_ok}, J>hy_a at {bad_a}, J>hy_b at {bad_b}, "
           f"|J(4)-2/3|={abs(j4 - 2 / 3):.2e}")


def test_criterion_08_oscillation():
    low = oscillation_sweep(decimal_grid(10, 20, Decimal("0.05")), "floor_beta")
    high = oscillation_sweep(decimal_grid(500, 501, Decimal("0.05")), "floor_beta")
    r_low = low.column("ratio")
    r_high = high.column("ratio")
    jumps = jump_indices(low.column("asymptotic"))
    at = [low.rows[i][0] for i in jumps]
    one_each = at == [float(k) for k in range(11, 21)]
    ok = (len(r_low) == 201 and all(0.85 <= r <= 1.15 for r in r_low)
          and all(0.98 <= r <= 1.02 for r in r_high) and one_each
          and len(jump_indices(high.column("asymptotic"))) == 1)
    report(8, ok, f"ratio [10,20] in [{min(r_low):.4f}, {max(r_low):.4f}], "
                  f"[500,501] in [{min(r_high):.4f}, {max(r_high):.4f}], jumps at {at}")


def test_criterion_09_product_limits():
    t0 = time.perf_counter()
    sinc = sinc_sequence()
    j0 = bessel_j0_zeros()
    p = 2000.0
    d1 = abs(math.sqrt(p) * 2 * product_moment(sinc, p, 0.0).value
             / math.sqrt(6 * math.pi) - 1)
    half = math.gamma(0.25) * 6**0.25 / 2
    d2 = abs(p**0.25 * product_moment(sinc, p, 0.5).value / half - 1)
    d3 = abs(math.sqrt(5000.0) * product_moment(j0, 5000.0, 0.0).value / math.sqrt(math.pi) - 1)
    dc = abs(j0.c_value - 0.25)
    formula = abs(product_limit_formula(0.25, 0.0) - math.sqrt(math.pi))
    dt = time.perf_counter() - t0
    report(9, d1 <= 0.01 and d2 <= 0.02 and d3 <= 0.02 and dc <= 1e-8 and formula < 1e-15
           and dt < 60.0,
           f"sinc b=0 {d1:.2e}, sinc b=1/2 {d2:.2e}, J0 {d3:.2e}, |c-1/4|={dc:.1e}, {dt:.2f}s")


def test_criterion_10_simpson_oracle():
    rng = np.random.default_rng(10)
    worst = 0.0
    for _ in range(20):
        a = float(rng.uniform(0.5, 12.0))
        b = float(rng.uniform(1.05, a + 0.9))
        ref = simpson_moment_integral(a, b)
        worst = max(worst, abs(moment_integral(MomentParams(a, b)).value / ref - 1))
    report(10, worst <= 1e-8, f"20 cases, worst rel deviation {worst:.2e}")
