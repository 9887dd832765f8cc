"""Self-verification suite behind ``momentint verify``.

Each check evaluates one inequality, identity or limit and reports pass/fail
with a short numeric detail.  Checks are independent; a failing or raising
check never stops the others.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import MomentsError
from .hybounds import hy_bound_a, verify_proposition
from .moments import (ball_bound_check, bounds_report, decimal_grid, jump_indices,
                      lower_bound, lower_bound_beta_form, oscillation_sweep)
from .products import (bessel_j0_zeros, product_abs, product_limit_formula,
                       product_moment, sinc_sequence)
from .quadrature import MomentParams, moment_integral, sinc_lower, sinc_upper
from .specfun import phi
from .tables import SweepTable

__all__ = ["Check", "run_checks", "checks_table", "random_params"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


def random_params(n: int, seed: int = 42, alpha_range=(2.0, 200.0),
                  beta_min: float = 1.05) -> list[MomentParams]:
    """n admissible pairs with alpha uniform in alpha_range, beta in (beta_min, alpha + 0.9)."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(n):
        a = float(rng.uniform(*alpha_range))
        b = float(rng.uniform(beta_min, a + 0.9))
        out.append(MomentParams(a, b))
    return out


def _sandwich(rel_tol):
    x = np.linspace(0.0, math.pi, 100_001)[1:]
    r = np.sin(x) / x
    ulp = np.spacing(r)
    low = np.count_nonzero(sinc_lower(x) > r + ulp)
    high = np.count_nonzero(r > sinc_upper(x) + ulp)
    return low + high == 0, f"{low + high} violations over 1e5 points in (0, pi]"


def _exact_values(rel_tol):
    e2 = abs(moment_integral(MomentParams(2, 2), rel_tol).value / math.pi - 1.0)
    e4 = abs(moment_integral(MomentParams(4, 4), rel_tol).value / (2 * math.pi / 3) - 1.0)
    return max(e2, e4) <= 1e-9, f"rel. errors {e2:.2e} (pi), {e4:.2e} (2 pi/3)"


def _lower_identity(rel_tol):
    worst = 0.0
    for p in random_params(20, 7):
        worst = max(worst, abs(lower_bound(p) / lower_bound_beta_form(p) - 1.0))
    return worst <= 1e-12, f"max rel. difference {worst:.2e}"


def _phi_range(rel_tol):
    vals = [phi(a, a) for a in (1.5, 2, 5, 10, 100, 1e3, 1e4, 1e6)]
    ok = all(0.0 < v < 1.0 for v in vals) and all(b > a for a, b in zip(vals, vals[1:]))
    return ok, f"phi(a, a) from {vals[0]:.6f} to {vals[-1]:.9f}"


def _two_sided(n, seed):
    def run(rel_tol):
        bad = 0
        for p in random_params(n, seed):
            rep = bounds_report(p, rel_tol)
            bad += not (rep.lower_holds and rep.upper_holds)
        return bad == 0, f"{bad} of {n} cases violate lower <= I <= upper (seed {seed})"
    return run


def _ball(rel_tol):
    fails = []
    for s in decimal_grid(2, 50, "0.5"):
        chk = ball_bound_check(float(s), rel_tol)
        if not chk.holds:
            fails.append(float(s))
    eq = abs(ball_bound_check(2.0, rel_tol).integral_scaled - 1.0)
    return not fails and eq <= 1e-9, f"failures at {fails}; |J(2) - 1| = {eq:.2e}"


def _ball_limit(rel_tol):
    target = math.sqrt(3.0 / math.pi)
    dev = {s: abs(math.sqrt(s / 2) * ball_bound_check(s, rel_tol).integral_scaled / target - 1)
           for s in (200.0, 2000.0)}
    return dev[2000.0] <= 0.01 and dev[2000.0] < dev[200.0], (
        f"rel. deviation {dev[200.0]:.2e} at s=200, {dev[2000.0]:.2e} at s=2000")


def _alpha_alpha_limit(rel_tol):
    target = math.sqrt(6.0 * math.pi)
    devs = [abs(math.sqrt(a) * moment_integral(MomentParams(a, a), rel_tol).value - target)
            for a in (200.0, 500.0, 1000.0, 2000.0)]
    ok = devs[-1] / target <= 0.01 and all(b < a for a, b in zip(devs, devs[1:]))
    return ok, "deviations " + ", ".join(f"{d:.2e}" for d in devs)


def _proposition(rel_tol):
    grid = [float(s) for s in decimal_grid(2, 50, "0.5")]
    table = verify_proposition(grid, rel_tol)
    above_e = [s for s in grid if not hy_bound_a(s) < math.sqrt(math.e / s)]
    holds_a = all(table.column("holds_a"))
    rows_b = [r for r in table.as_dicts() if r["hy_b"] is not None]
    holds_b = all(r["holds_b"] and r["hy_b"] < r["ball"] for r in rows_b)
    j4 = next(r["J"] for r in table.as_dicts() if r["s"] == 4.0)
    ok = not above_e and holds_a and holds_b and abs(j4 - 2.0 / 3.0) <= 1e-9
    return ok, (f"hy_a < sqrt(e/s): {not above_e}; J <= hy_a: {holds_a}; "
                f"J <= hy_b < sqrt(2/s): {holds_b}; |J(4) - 2/3| = {abs(j4 - 2 / 3):.2e}")


def _oscillation(rel_tol):
    t1 = oscillation_sweep(decimal_grid(10, 20, "0.05"), "floor_beta", rel_tol)
    t2 = oscillation_sweep(decimal_grid(500, 501, "0.05"), "floor_beta", rel_tol)
    r1, r2 = t1.column("ratio"), t2.column("ratio")
    jumps = jump_indices(t1.column("asymptotic"))
    at_integers = all(t1.rows[i][0].is_integer() for i in jumps)
    ok = (all(0.85 <= r <= 1.15 for r in r1) and all(0.98 <= r <= 1.02 for r in r2)
          and len(jumps) == 10 and at_integers and not t1.skipped)
    return ok, (f"ratio in [{min(r1):.4f}, {max(r1):.4f}] on [10, 20], "
                f"[{min(r2):.5f}, {max(r2):.5f}] on [500, 501]; {len(jumps)} jumps")


def _products(rel_tol):
    sinc = sinc_sequence()
    j0s = bessel_j0_zeros()
    details = []
    ok = True
    for seq, p, beta, tol in ((sinc, 2000, 0.0, 0.01), (sinc, 2000, 0.5, 0.02),
                              (j0s, 5000, 0.0, 0.02)):
        q = product_moment(seq, p, beta, rel_tol)
        limit = product_limit_formula(seq.c_value, beta)
        dev = abs(p ** (0.5 * (1 - beta)) * q.value / limit - 1)
        ok &= dev <= tol
        details.append(f"{seq.name} p={p} beta={beta}: {dev:.2e}")
    dc = abs(j0s.c_value - 0.25)
    ok &= dc <= 1e-8
    details.append(f"|c(J0) - 1/4| = {dc:.1e}")
    return ok, "; ".join(details)


def _product_sandwich(rel_tol):
    bad = 0
    for seq in (sinc_sequence(1000), bessel_j0_zeros(1000)):
        c = seq.c_value
        t = np.linspace(0.0, 1.0 / math.sqrt(c), 10_000)
        g = product_abs(seq, t)
        bad += np.count_nonzero(1.0 - c * t * t > g + 1e-15)
        t = np.linspace(0.0, float(seq.zeros[0]), 10_000)
        g = product_abs(seq, t)
        bad += np.count_nonzero(g > np.exp(-c * t * t) + 1e-15)
    return bad == 0, f"{bad} violations of 1 - c t^2 <= |g| <= exp(-c t^2)"


Runner = Callable[[float], tuple[bool, str]]


def _suite(random_cases: int, seed: int) -> list[tuple[str, Runner]]:
    return [
        ("sandwich 1 - x^2/6 <= sin x / x <= exp(-x^2/6)", _sandwich),
        ("exact values I(2,2) = pi, I(4,4) = 2 pi/3", _exact_values),
        ("lower bound equals 6^h B(h, alpha+1)", _lower_identity),
        ("0 < phi(a, a) < 1, increasing", _phi_range),
        ("two-sided bound lower <= I <= upper", _two_sided(random_cases, seed)),
        ("Ball: J(s) <= sqrt(2/s), s = 2..50", _ball),
        ("sqrt(s/2) J(s) -> sqrt(3/pi)", _ball_limit),
        ("sqrt(alpha) I(alpha, alpha) -> sqrt(6 pi)", _alpha_alpha_limit),
        ("Hausdorff-Young bounds hy_a, hy_b", _proposition),
        ("oscillation I(alpha, [alpha]) ~ asymptotic", _oscillation),
        ("product limits (sinc, J0) and c(J0) = 1/4", _products),
        ("product sandwich 1 - c t^2 <= |g| <= exp(-c t^2)", _product_sandwich),
    ]


def run_checks(rel_tol: float = 1e-10, random_cases: int = 50, seed: int = 42,
               only: Optional[list[str]] = None) -> list[Check]:
    """Run the suite (or the checks whose name contains one of ``only``)."""
    results = []
    for name, fn in _suite(random_cases, seed):
        if only and not any(o in name for o in only):
            continue
        try:
            passed, detail = fn(rel_tol)
        except MomentsError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(Check(name, bool(passed), detail))
    return results


def checks_table(checks: list[Check]) -> SweepTable:
    return SweepTable(("check", "passed", "detail"),
                      [(c.name, c.passed, c.detail) for c in checks])
