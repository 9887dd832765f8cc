"""Certified evaluation of the moment integral

    I(alpha, beta) = integral over R of |sin x|**alpha / |x|**beta dx

by decomposition into periods [k*pi, (k+1)*pi].  The first K periods are
integrated directly; the remaining ones are summed with an Euler-Maclaurin
expansion whose remainder is bounded rigorously, because the period
contributions h(k) form a completely monotone sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import panels
from .errors import AccuracyError, DivergenceError, DomainError
from .specfun import log_beta, log_gamma_ratio

__all__ = [
    "MomentParams",
    "QuadResult",
    "wallis",
    "wallis_tail_bound",
    "first_period",
    "period_integral",
    "moment_integral",
    "sinc_lower",
    "sinc_upper",
]

PI = math.pi
MAX_PERIODS = 10**6
# beta must exceed 1 by this margin before an integral over R is attempted
BETA_MARGIN = 1e-9
# alpha above which the mass of a period is located before integrating
CONCENTRATION_ALPHA = 50.0


@dataclass(frozen=True)
class MomentParams:
    """Exponents of the moment integral; requires alpha > beta - 1 > 0."""

    alpha: float
    beta: float

    def __post_init__(self):
        a, b = float(self.alpha), float(self.beta)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DomainError(f"parameters must be finite, got alpha={a}, beta={b}")
        if b <= 1.0:
            raise DivergenceError(f"I(alpha, beta) diverges at infinity for beta={b} <= 1")
        if not a > b - 1.0:
            raise DomainError(f"need alpha > beta - 1, got alpha={a}, beta={b}")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def gap(self) -> float:
        """alpha - beta."""
        return self.alpha - self.beta

    @property
    def half_exponent(self) -> float:
        """(alpha - beta + 1) / 2, the decay exponent in the bounds."""
        return 0.5 * (self.alpha - self.beta + 1.0)


@dataclass(frozen=True)
class QuadResult:
    """An integral value with an absolute a-posteriori error bound.

    ``tail_bound`` is the part of ``error_bound`` owed to periods that were
    not integrated individually (zero when nothing was truncated).
    """

    value: float
    error_bound: float
    periods_used: int = 1
    tail_bound: float = 0.0
    panels: int = 0

    @property
    def rel_error(self) -> float:
        return self.error_bound / abs(self.value) if self.value else math.inf


def sinc_lower(x):
    """1 - x**2/6, the lower companion of sin(x)/x on [0, sqrt(6)]."""
    x = np.asarray(x, dtype=float)
    return 1.0 - x * x / 6.0


def sinc_upper(x):
    """exp(-x**2/6), an upper bound for sin(x)/x on [0, pi]."""
    x = np.asarray(x, dtype=float)
    return np.exp(-x * x / 6.0)


def wallis(alpha: float) -> float:
    """Integral of sin(t)**alpha over [0, pi] for alpha > -1.

    >>> wallis(2.0) == math.pi / 2
    True
    """
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha > -1.0):
        raise DomainError(f"wallis needs alpha > -1, got {alpha}")
    x = 0.5 * (alpha + 1.0)
    return math.sqrt(PI) * math.exp(-log_gamma_ratio(x, 0.5))


def wallis_tail_bound(alpha: float, beta: float, periods: int) -> float:
    """Bound on the full-line contribution of all periods k > ``periods``.

    Uses sum_{k>K} (k pi)^-beta <= (K pi)^(1-beta) / ((beta-1) pi).
    """
    if beta <= 1.0:
        raise DivergenceError(f"tail diverges for beta={beta} <= 1")
    if periods < 1:
        raise DomainError("periods must be >= 1")
    log_b = (1.0 - beta) * math.log(periods * PI) - math.log((beta - 1.0) * PI)
    return 2.0 * wallis(alpha) * math.exp(log_b)


# -- single period -----------------------------------------------------------

def _log_sinc(u):
    # np.sinc is sin(pi x)/(pi x) and returns 1 at the origin
    return np.log(np.sinc(np.asarray(u) / PI))


def _period_functions(alpha: float, b: float, shift: float):
    """Integrand of one period and its factorised forms at both ends."""

    def f(t):
        return np.exp(alpha * np.log(np.sin(t)) - b * np.log(t + shift))

    if shift == 0.0:
        left_power = alpha - b

        def left_g(u):
            return np.exp(alpha * _log_sinc(u))
    else:
        left_power = alpha

        def left_g(u):
            return np.exp(alpha * _log_sinc(u) - b * np.log(u + shift))

    def right_g(u):
        return np.exp(alpha * _log_sinc(u) - b * np.log(PI - u + shift))

    return (f, panels.EndpointFactor(left_power, left_g),
            panels.EndpointFactor(alpha, right_g))


def _log_integrand(alpha, b, shift, t):
    if shift == 0.0:
        return (alpha - b) * math.log(t) + alpha * math.log(math.sin(t) / t)
    return alpha * math.log(math.sin(t)) - b * math.log(t + shift)


def _mode(alpha, b, shift):
    """Maximiser of the (log-concave) period integrand on (0, pi); 0 if decreasing."""
    tiny = 1e-12
    if shift == 0.0:
        gap = alpha - b
        if gap <= 0.0:
            return 0.0

        def slope(t):
            return gap / t + alpha * (1.0 / math.tan(t) - 1.0 / t)
        return brentq(slope, tiny, PI - tiny, xtol=1e-15)

    def slope(t):
        return alpha / math.tan(t) - b / (t + shift)
    return brentq(slope, tiny, 0.5 * PI, xtol=1e-15)


def period_integral(alpha: float, b: float, shift: float, abs_tol: float):
    """Integral of sin(t)**alpha * (t + shift)**(-b) over [0, pi].

    Returns ``(value, error_bound, panels)``.  ``shift`` is k*pi for the k-th
    period of the moment integral; with ``shift == 0`` the endpoint factor at
    0 is t**(alpha - b), which may be singular.
    """
    if shift > 0.0:
        # whole period below tolerance: bracket it by the extreme weights
        log_w = math.log(wallis(alpha))
        hi = math.exp(log_w - b * math.log(shift))
        if hi <= abs_tol:
            lo = math.exp(log_w - b * math.log(shift + PI))
            return 0.5 * (hi + lo), 0.5 * (hi - lo), 0

    f, left, right = _period_functions(alpha, b, shift)
    if alpha <= CONCENTRATION_ALPHA:
        n_init = 2 if alpha <= 20.0 else 4
        breaks = np.linspace(0.0, PI, n_init + 1)
        return panels.integrate(f, 0.0, PI, abs_tol, left=left, right=right,
                                breaks=breaks)

    # Large alpha: the mass sits in a window of width O(1/sqrt(alpha)).
    # The integrand is log-concave, so outside the window it is monotone and
    # below exp(thresh); the discarded part is at most 2 * pi * exp(thresh).
    thresh = math.log(abs_tol * 1e-3 / PI)
    mode = _mode(alpha, b, shift)
    if mode > 0.0 and _log_integrand(alpha, b, shift, mode) < thresh:
        peak = math.exp(_log_integrand(alpha, b, shift, mode))
        return 0.5 * PI * peak, 0.5 * PI * peak, 0

    def g(t):
        return _log_integrand(alpha, b, shift, t) - thresh

    lo_end = 0.0
    keep_left = shift == 0.0 and (alpha - b) < panels.SINGULAR_POWER_LIMIT
    if not keep_left:
        probe = 1e-300 ** (1.0 / max(alpha, 1.0))
        if g(probe) < 0.0:
            lo_end = brentq(g, probe, mode, xtol=1e-15, rtol=1e-12)
    hi_end = PI
    probe = PI * (1.0 - 1e-15)
    if g(probe) < 0.0:
        hi_end = brentq(g, max(mode, 1e-300), probe, xtol=1e-15, rtol=1e-12)
    breaks = np.linspace(lo_end, hi_end, 9)
    value, err, used = panels.integrate(
        f, lo_end, hi_end, abs_tol, left=left if lo_end == 0.0 else None,
        right=right if hi_end == PI else None, breaks=breaks)
    discarded = 2.0 * PI * math.exp(thresh)
    return value, err + discarded, used


# -- public operations ---------------------------------------------------------

def _first_period_lower(alpha: float, beta: float) -> float:
    # integral of t^(alpha-beta) (1 - t^2/6)^alpha over [0, sqrt 6]
    h = 0.5 * (alpha - beta + 1.0)
    return 0.5 * math.exp(h * math.log(6.0) + log_beta(h, alpha + 1.0))


def _first_period_upper(alpha: float, beta: float) -> float:
    # integral of t^(alpha-beta) exp(-alpha t^2/6) over [0, oo)
    h = 0.5 * (alpha - beta + 1.0)
    return 0.5 * math.exp(h * (math.log(6.0) - math.log(alpha)) + math.lgamma(h))


def _first_period_scale(alpha: float, beta: float) -> float:
    """A certified lower estimate of the first-period integral.

    The analytic lower bound is poor by many orders of magnitude when
    alpha - beta is large, so a coarse quadrature refines it.
    """
    upper = _first_period_upper(alpha, beta)
    lower = _first_period_lower(alpha, beta)
    if lower >= 0.5 * upper:
        return lower
    value, err, _ = period_integral(alpha, beta, 0.0, 1e-4 * upper)
    return max(lower, value - err)


def first_period(alpha: float, beta: float, rel_tol: float = 1e-12) -> QuadResult:
    """Integral of sin(t)**alpha / t**beta over [0, pi].

    Only alpha > 0 and alpha - beta > -1 are required (beta <= 1 is fine).
    The error bound is at most ``rel_tol`` times the value.
    """
    alpha, beta = float(alpha), float(beta)
    if not (math.isfinite(alpha) and math.isfinite(beta)):
        raise DomainError("parameters must be finite")
    if alpha <= 0.0 or alpha - beta <= -1.0:
        raise DomainError(
            f"first period needs alpha > 0 and alpha - beta > -1, got {alpha}, {beta}")
    abs_tol = 0.5 * rel_tol * _first_period_scale(alpha, beta)
    value, err, used = period_integral(alpha, beta, 0.0, abs_tol)
    if err > rel_tol * value:
        raise AccuracyError("first period tolerance not met", value, err)
    return QuadResult(value, err, 1, 0.0, used)


def _rising(x: float, n: int) -> float:
    out = 1.0
    for i in range(n):
        out *= x + i
    return out


# Euler-Maclaurin terms for sum_{k>=K} h(k) with h completely monotone:
# (name, order of derivative or None for the integral, |coefficient| / pi^j (b)_j, sign)
_EM_TERMS = (
    ("integral", None, 1.0, 1.0),
    ("h0", 0, 0.5, 1.0),
    ("h1", 1, 1.0 / 12.0, 1.0),
    ("h3", 3, 1.0 / 720.0, -1.0),
    ("h5", 5, 1.0 / 30240.0, 1.0),
    ("h7", 7, 1.0 / 1209600.0, -1.0),
)


def _choose_periods(alpha: float, beta: float, tail_tol: float) -> int:
    # |h^(7)(K)| <= pi^7 (beta)_7 W(alpha) (K pi)^(-beta-7)
    log_need = (7.0 * math.log(PI) + math.log(_rising(beta, 7)) + math.log(wallis(alpha))
                - math.log(1209600.0 * tail_tol))
    if log_need <= 0.0:
        return 1
    k = math.exp(log_need / (beta + 7.0)) / PI
    return max(1, math.ceil(k))


def moment_integral(params: MomentParams, rel_tol: float = 1e-10) -> QuadResult:
    """Full-line moment integral I(alpha, beta) with a certified error bound.

    Periods ``k < K`` are integrated one by one.  With
    ``h(x) = int_0^pi sin^a t (t + x pi)^-b dt`` the rest is

        int_K^oo h + h(K)/2 - h'(K)/12 + h'''(K)/720 - h^(5)(K)/30240 + R,

    where R lies between 0 and h^(7)(K)/1209600.  Each term is a single-period
    integral, so the tail costs six extra periods whatever beta is.

    Raises
    ------
    DomainError
        For inadmissible parameters or a tolerance outside [1e-13, 1e-3].
    DivergenceError
        If beta is not safely above 1.
    AccuracyError
        If the error budget cannot be met (carries the best estimate).
    """
    if not isinstance(params, MomentParams):
        params = MomentParams(*params)
    if not (1e-13 <= rel_tol <= 1e-3):
        raise DomainError(f"rel_tol must lie in [1e-13, 1e-3], got {rel_tol}")
    alpha, beta = params.alpha, params.beta
    if beta <= 1.0 + BETA_MARGIN:
        raise DivergenceError(f"beta={beta} too close to 1")

    # Half-line absolute budget from a lower estimate of the whole sum:
    # period k >= 1 is at least W / ((k+1) pi)^beta, summed as an integral.
    first = _first_period_scale(alpha, beta)
    log_w = math.log(wallis(alpha))
    rest = math.exp(log_w + (1.0 - beta) * math.log(2.0 * PI)) / (PI * (beta - 1.0))
    budget = 0.5 * rel_tol * (first + rest)
    # midpoint rule for R leaves half of the h7 term, so this spends 5%
    periods = _choose_periods(alpha, beta, 0.1 * budget)
    if periods > MAX_PERIODS:
        raise AccuracyError(f"tail needs {periods} periods (cap {MAX_PERIODS})")

    # (exponent, shift, coefficient, sign, name); every job is one period integral
    jobs = [(beta, k * PI, 1.0, 1.0, "period") for k in range(periods)]
    shift = periods * PI
    for name, order, coef, sign in _EM_TERMS:
        if order is None:
            jobs.append((beta - 1.0, shift, 1.0 / (PI * (beta - 1.0)), sign, name))
        else:
            jobs.append((beta + order, shift, coef * PI**order * _rising(beta, order),
                         sign, name))
    # a-priori magnitudes: upper bounds W / shift^b, the first-period estimate at 0
    sizes = [c * (first if sh == 0.0 else math.exp(log_w - b * math.log(sh)))
             for b, sh, c, _, _ in jobs]
    total_size = math.fsum(sizes)

    parts, errs = [], []
    tail_parts, tail_err = [], []
    remainder = 0.0
    used = 0
    for (b, sh, c, sign, name), size in zip(jobs, sizes):
        tol = 0.9 * budget * size / total_size / c
        v, e, n = period_integral(alpha, b, sh, tol)
        used += n
        if name == "period":
            parts.append(v)
            errs.append(e)
            continue
        if name == "h7":
            # unknown factor in (0, 1): use the midpoint
            c *= 0.5
            remainder = c * (v + e)
        tail_parts.append(sign * c * v)
        tail_err.append(c * e)
    tail_bound = math.fsum(tail_err) + remainder

    half = math.fsum(parts) + math.fsum(tail_parts)
    err_half = math.fsum(errs) + tail_bound
    result = QuadResult(2.0 * half, 2.0 * err_half, periods, 2.0 * tail_bound, used)
    if result.error_bound > rel_tol * result.value:
        raise AccuracyError(
            f"I({alpha}, {beta}): error bound {result.error_bound:.3g} exceeds "
            f"rel_tol {rel_tol:g}", result.value, result.error_bound)
    return result
