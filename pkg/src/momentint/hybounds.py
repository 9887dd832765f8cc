"""Hausdorff-Young type bounds for J(s), the integral of |sin(pi x)/(pi x)|^s over R.

Two closed forms bound J(s) from above:

* ``hy_bound_a(s) = s^(-1/2) (1 + 1/(s-1))^((s-1)/2)``, valid for s >= 2 and
  always below sqrt(e/s);
* ``hy_bound_b(s) = sqrt(2/s) (2 sqrt(p)/(p+1))^(q/p)`` with q = s/2 and p the
  index conjugate to q, valid for s >= 4 and below sqrt(2/s).

Both are compared against ``J(s) = I(s, s)/pi`` from the certified quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import DomainError, MomentsError
from .parallel import ordered_map
from .quadrature import MomentParams, moment_integral
from .tables import SkippedRow, SweepTable

__all__ = [
    "ConjugatePair",
    "pair_a",
    "pair_b",
    "hy_bound_a",
    "hy_bound_b",
    "hy_factor_b",
    "PROPOSITION_COLUMNS",
    "verify_proposition",
]

PROPOSITION_COLUMNS = ("s", "J", "hy_a", "hy_b", "ball", "holds_a", "holds_b", "holds_ball")


@dataclass(frozen=True)
class ConjugatePair:
    """Exponents behind one bound: outer exponent s, conjugate index p, and q.

    For part (a) ``1/p + 1/s = 1`` and ``q`` is None; for part (b) ``q = s/2``
    and ``1/p + 1/q = 1``.
    """

    s: float
    p: float
    q: Optional[float] = None


def pair_a(s: float) -> ConjugatePair:
    s = float(s)
    if not s >= 2.0:
        raise DomainError(f"need s >= 2, got {s}")
    return ConjugatePair(s, s / (s - 1.0))


def pair_b(s: float) -> ConjugatePair:
    s = float(s)
    if not s >= 4.0:
        raise DomainError(f"the second bound needs s >= 4, got {s}")
    q = 0.5 * s
    return ConjugatePair(s, q / (q - 1.0), q)


def hy_bound_a(s: float) -> float:
    """s^(-1/2) (1 + 1/(s-1))^((s-1)/2) for s >= 2.

    >>> hy_bound_a(2.0)
    1.0
    """
    s = pair_a(s).s
    return math.exp(-0.5 * math.log(s) + 0.5 * (s - 1.0) * math.log1p(1.0 / (s - 1.0)))


def hy_factor_b(s: float) -> float:
    """(2 sqrt(p)/(p+1))^(q/p), the factor of sqrt(2/s) in :func:`hy_bound_b`."""
    pr = pair_b(s)
    base = 2.0 * math.sqrt(pr.p) / (pr.p + 1.0)
    return math.exp(pr.q / pr.p * math.log(base))


def hy_bound_b(s: float) -> float:
    """sqrt(2/s) (2 sqrt(p)/(p+1))^(q/p) for s >= 4, q = s/2, p = q/(q-1).

    At s = 4 this is exactly 2/3, the value of J(4).
    """
    return math.sqrt(2.0 / float(s)) * hy_factor_b(s)


def _proposition_row(args):
    s, rel_tol = args
    q = moment_integral(MomentParams(s, s), rel_tol)
    j = q.value / math.pi
    err = q.error_bound / math.pi
    a = hy_bound_a(s)
    ball = math.sqrt(2.0 / s)
    b = hy_bound_b(s) if s >= 4.0 else None
    holds_b = (j <= b + err) if b is not None else None
    return (s, j, a, b, ball, j <= a + err, holds_b, j <= ball + err)


def verify_proposition(s_grid: Iterable[float], rel_tol: float = 1e-10,
                       threads: Optional[int] = None) -> SweepTable:
    """Rows (s, J, hy_a, hy_b, ball, holds_a, holds_b, holds_ball).

    ``hy_b`` and ``holds_b`` are None below s = 4, where the second bound is
    not defined.  Every comparison allows for the quadrature error of J.
    Grid points below 2 go to ``table.skipped``.
    """
    grid = [float(s) for s in s_grid]
    table = SweepTable(PROPOSITION_COLUMNS)
    good = [s for s in grid if s >= 2.0]

    def run(args):
        try:
            return _proposition_row(args), None
        except MomentsError as exc:
            return None, str(exc)

    results = iter(ordered_map(run, [(s, rel_tol) for s in good], threads))
    for i, s in enumerate(grid):
        if s < 2.0:
            table.skipped.append(SkippedRow(i, s, "need s >= 2"))
            continue
        row, reason = next(results)
        if row is None:
            table.skipped.append(SkippedRow(i, s, reason))
        else:
            table.rows.append(row)
    return table
