"""Two-sided bounds, asymptotic equivalents and oscillation sweeps for I(alpha, beta).

With ``h = (alpha - beta + 1) / 2`` the integral satisfies

    (6/alpha)^h Gamma(h) phi(alpha, beta) <= I(alpha, beta)
        <= (6/alpha)^h Gamma(h) (1 + 1/(beta - 1)),

and ``(6/alpha)^h Gamma(h)`` is its asymptotic equivalent as alpha grows with
alpha - beta bounded.  Everything is assembled in log space and exponentiated
once, since ``(6/alpha)^h`` alone underflows for large alpha - beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable, NamedTuple, Optional, Sequence, Union

from .errors import DivergenceError, DomainError, MomentsError
from .parallel import ordered_map
from .quadrature import BETA_MARGIN, MomentParams, moment_integral
from .specfun import log_beta, log_phi
from .tables import SkippedRow, SweepTable

__all__ = [
    "BoundsReport",
    "BallCheck",
    "SWEEP_COLUMNS",
    "lower_bound",
    "upper_bound",
    "asymptotic_equiv",
    "lower_bound_beta_form",
    "bounds_report",
    "ball_bound_check",
    "decimal_grid",
    "effective_params",
    "oscillation_sweep",
    "jump_indices",
]

SWEEP_COLUMNS = ("alpha", "beta", "integral", "err", "lower", "upper", "asymptotic", "ratio")
SWEEP_MODES = ("floor_beta", "floor_alpha")

ParamsLike = Union[MomentParams, Sequence[float]]


def _params(params: ParamsLike) -> MomentParams:
    if isinstance(params, MomentParams):
        return params
    alpha, beta = params
    return MomentParams(alpha, beta)


def _log_scale(p: MomentParams) -> float:
    # ln of (6/alpha)^h Gamma(h)
    h = p.half_exponent
    return h * (math.log(6.0) - math.log(p.alpha)) + math.lgamma(h)


def lower_bound(params: ParamsLike) -> float:
    """(6/alpha)^h Gamma(h) phi(alpha, beta), with h = (alpha - beta + 1)/2.

    >>> round(lower_bound((2.0, 2.0)), 10)
    2.6127890589
    """
    p = _params(params)
    return math.exp(_log_scale(p) + log_phi(p.alpha, p.beta))


def lower_bound_beta_form(params: ParamsLike) -> float:
    """The same lower bound written as 6^h B(h, alpha + 1).

    This is the integral of t^(alpha-beta) (1 - t^2/6)^alpha over [0, sqrt 6]
    doubled, and serves as an independent cross-check of :func:`lower_bound`.
    """
    p = _params(params)
    h = p.half_exponent
    return math.exp(h * math.log(6.0) + log_beta(h, p.alpha + 1.0))


def upper_bound(params: ParamsLike) -> float:
    """(6/alpha)^h Gamma(h) (1 + 1/(beta - 1)).

    Raises
    ------
    DivergenceError
        When beta is within 1e-9 of 1 (the factor blows up).
    """
    p = _params(params)
    if p.beta <= 1.0 + BETA_MARGIN:
        raise DivergenceError(f"upper bound needs beta > 1 + {BETA_MARGIN:g}, got {p.beta}")
    return math.exp(_log_scale(p) + math.log1p(1.0 / (p.beta - 1.0)))


def asymptotic_equiv(params: ParamsLike) -> float:
    """(6/alpha)^h Gamma(h), the large-alpha equivalent of I(alpha, beta)."""
    return math.exp(_log_scale(_params(params)))


@dataclass(frozen=True)
class BoundsReport:
    """Bounds, certified integral and asymptotic equivalent for one (alpha, beta)."""

    params: MomentParams
    lower: float
    integral: float
    integral_error: float
    upper: float
    asymptotic: float
    ratio_to_asymptotic: float
    c_gap: float

    @property
    def lower_holds(self) -> bool:
        return self.lower <= self.integral + self.integral_error

    @property
    def upper_holds(self) -> bool:
        return self.integral <= self.upper + self.integral_error


def bounds_report(params: ParamsLike, rel_tol: float = 1e-10) -> BoundsReport:
    p = _params(params)
    q = moment_integral(p, rel_tol)
    asym = asymptotic_equiv(p)
    return BoundsReport(
        params=p,
        lower=lower_bound(p),
        integral=q.value,
        integral_error=q.error_bound,
        upper=upper_bound(p),
        asymptotic=asym,
        ratio_to_asymptotic=q.value / asym,
        c_gap=p.gap,
    )


class BallCheck(NamedTuple):
    integral_scaled: float
    ball_rhs: float
    holds: bool
    error: float


def ball_bound_check(s: float, rel_tol: float = 1e-10) -> BallCheck:
    """Compare J(s) = I(s, s)/pi, the integral of |sinc|^s, with sqrt(2/s).

    ``holds`` allows for the quadrature error, so s = 2 (where both sides are
    1) counts as holding.
    """
    s = float(s)
    if not s >= 2.0:
        raise DomainError(f"need s >= 2, got {s}")
    q = moment_integral(MomentParams(s, s), rel_tol)
    j = q.value / math.pi
    err = q.error_bound / math.pi
    rhs = math.sqrt(2.0 / s)
    return BallCheck(j, rhs, j <= rhs + err, err)


# -- oscillatory sweeps -------------------------------------------------------

def decimal_grid(start, stop, step) -> list[Decimal]:
    """Grid start, start+step, ..., stop (inclusive) in exact decimal arithmetic.

    Accumulating binary floats would put grid points like 15 at
    14.999999999999998, whose floor is wrong.
    """
    a, b, h = Decimal(str(start)), Decimal(str(stop)), Decimal(str(step))
    if h <= 0:
        raise DomainError("step must be positive")
    if b < a:
        raise DomainError("stop must not be below start")
    n = int((b - a) / h)
    grid = [a + i * h for i in range(n + 1)]
    return grid


def effective_params(alpha, mode: str) -> MomentParams:
    """(alpha, [alpha]) for ``floor_beta`` or ([alpha], alpha - 1) for ``floor_alpha``.

    ``alpha`` is read as the decimal it prints as, and the floor is exact.
    """
    d = alpha if isinstance(alpha, Decimal) else Decimal(str(float(alpha)))
    fl = math.floor(d)
    if mode == "floor_beta":
        if d < 2:
            raise DomainError(f"floor_beta needs alpha >= 2, got {d}")
        return MomentParams(float(d), float(fl))
    if mode == "floor_alpha":
        if d <= 2:
            raise DomainError(f"floor_alpha needs alpha > 2, got {d}")
        beta = d - 1
        if float(beta) <= 1.0 + BETA_MARGIN:
            raise DomainError(f"beta = alpha - 1 too close to 1 at alpha={d}")
        return MomentParams(float(fl), float(beta))
    raise DomainError(f"unknown sweep mode {mode!r}; expected one of {SWEEP_MODES}")


def _sweep_row(args):
    alpha, mode, rel_tol = args
    try:
        p = effective_params(alpha, mode)
        rep = bounds_report(p, rel_tol)
    except MomentsError as exc:
        return None, str(exc)
    row = (p.alpha, p.beta, rep.integral, rep.integral_error, rep.lower,
           rep.upper, rep.asymptotic, rep.ratio_to_asymptotic)
    return row, None


def oscillation_sweep(alpha_grid: Iterable, mode: str = "floor_beta",
                      rel_tol: float = 1e-10,
                      threads: Optional[int] = None) -> SweepTable:
    """Bounds and ratio integral/asymptotic along a grid of alpha.

    In ``floor_beta`` mode each row is (alpha, [alpha]); in ``floor_alpha``
    mode it is ([alpha], alpha - 1).  Inadmissible points, and points whose
    integral cannot be certified, go to ``table.skipped``.
    """
    if mode not in SWEEP_MODES:
        raise DomainError(f"unknown sweep mode {mode!r}; expected one of {SWEEP_MODES}")
    grid = list(alpha_grid)
    results = ordered_map(_sweep_row, [(a, mode, rel_tol) for a in grid], threads)
    table = SweepTable(SWEEP_COLUMNS)
    for i, (alpha, (row, reason)) in enumerate(zip(grid, results)):
        if row is None:
            table.skipped.append(SkippedRow(i, float(alpha), reason))
        else:
            table.rows.append(row)
    return table


def jump_indices(values: Sequence[float], factor: float = 5.0) -> list[int]:
    """Indices i where values[i-1] -> values[i] is a discontinuity.

    A step counts as a jump when its log-change exceeds ``factor`` times the
    median absolute log-change of the sequence, i.e. it stands out from the
    smooth variation between grid points.
    """
    logs = [math.log(v) for v in values]
    steps = [abs(b - a) for a, b in zip(logs, logs[1:])]
    if not steps:
        return []
    typical = sorted(steps)[len(steps) // 2]
    return [i + 1 for i, d in enumerate(steps) if d > factor * typical]
