"""Product functions g(t) = prod (1 - t^2/t_n^2) over a positive zero sequence.

With ``c = sum t_n^-2`` such a function satisfies ``1 - c t^2 <= |g(t)|`` on
[0, 1/sqrt(c)] and ``|g(t)| <= exp(-c t^2)`` on [0, t_1], which makes

    p^((1-beta)/2) * integral_0^oo |g(t)|^p t^-beta dt
        -> Gamma((1-beta)/2) / (2 c^((1-beta)/2))      (p -> oo).

Two sequences are built in: t_n = n pi (g = sin t / t, c = 1/6) and the zeros
of the Bessel function J0 (g = J0, c = 1/4).  Custom sequences are read from a
text file of zeros plus a JSON sidecar.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, NamedTuple, Optional, Union

import numpy as np
from scipy.special import zeta

from . import panels
from .errors import (AccuracyError, ComputationError, ConfigurationError,
                     DomainError, UnsupportedError)
from .quadrature import QuadResult
from .specfun import j0, j1, log_beta

__all__ = [
    "PowerEnvelope",
    "TailModel",
    "ZeroSequence",
    "ProductEvalResult",
    "sinc_sequence",
    "bessel_j0_zeros",
    "load_zero_sequence",
    "eval_product",
    "product_abs",
    "product_moment",
    "product_lower_bound",
    "product_limit_formula",
]

# c computed from the zeros may differ from a declared value by at most this
C_MISMATCH_TOL = 1e-8
# zeros below RANGE_FACTOR * t enter the product exactly; the rest via power sums
RANGE_FACTOR = 10.0
_TAIL_ORDERS = tuple(range(2, 26, 2))
_MAX_INTERVALS = 100_000


@dataclass(frozen=True)
class PowerEnvelope:
    """|g(t)| <= C t^-a for all t >= t_min."""

    a: float
    C: float
    t_min: float

    def __post_init__(self):
        if not (self.a > 0.0 and self.C > 0.0 and self.t_min > 0.0):
            raise ConfigurationError("power envelope needs a, C, t_min > 0")


@dataclass(frozen=True)
class TailModel:
    """t_n ~ b (1 + correction / b^2), b = A (n - delta)^rho, beyond the stored zeros."""

    A: float
    delta: float
    rho: float
    start: int  # number of stored zeros; the model covers n > start
    correction: float = 0.0
    # relative uncertainty of the power sums (0 for exact models)
    uncertainty: float = 0.0

    @classmethod
    def fit(cls, zeros: np.ndarray, rho: float) -> "TailModel":
        """Fit A and delta through the last zero and the one halfway down.

        Two far-apart points keep delta well conditioned; adjacent zeros
        would amplify their rounding by the square of the index.
        """
        m = zeros.size

        def through(i):
            r = (zeros[-1] / zeros[i - 1]) ** (1.0 / rho)
            # (m - delta) = r (i - delta)
            delta = (r * i - m) / (r - 1.0)
            a = zeros[-1] / (m - delta) ** rho
            return cls(float(a), float(delta), float(rho), m)

        model = through(max(1, m // 2))
        if m < 4:
            return model
        # the spread against a second fit serves as the model uncertainty
        other = through(max(1, m // 4))
        s2, o2 = model.power_sum(2), other.power_sum(2)
        spread = 2.0 * abs(s2 - o2) / s2 + 1e-15
        return cls(model.A, model.delta, model.rho, m, 0.0, spread)

    def zero(self, n: int) -> float:
        b = self.A * (n - self.delta) ** self.rho
        return b + self.correction / b

    def power_sum(self, k: int) -> float:
        """sum over n > start of t_n^-k, through Hurwitz zeta values."""
        q = self.start + 1 - self.delta
        out = float(zeta(k * self.rho, q)) / self.A**k
        if self.correction:
            # (b + e/b)^-k = b^-k - k e b^-(k+2) + O(b^-(k+4))
            out -= (k * self.correction * float(zeta((k + 2) * self.rho, q))
                    / self.A ** (k + 2))
        return out


@dataclass(frozen=True, eq=False)
class ZeroSequence:
    """An immutable positive, strictly increasing zero sequence.

    Build instances with :meth:`from_zeros`, which validates the data, fits the
    tail model and computes ``c``.  ``closed_form``, when present, evaluates
    ``|g(t)|`` directly and is used for integration.
    """

    name: str
    zeros: np.ndarray = field(repr=False)
    growth_exponent: float
    c_value: float
    c_computed: float
    tail: TailModel = field(repr=False)
    envelope: Optional[PowerEnvelope] = None
    closed_form: Optional[Callable[[np.ndarray], np.ndarray]] = field(default=None, repr=False)
    _suffix: dict = field(default_factory=dict, repr=False)

    @classmethod
    def from_zeros(cls, name: str, zeros, growth_exponent: float = 1.0, *,
                   envelope: Optional[PowerEnvelope] = None,
                   c_declared: Optional[float] = None,
                   closed_form: Optional[Callable] = None,
                   tail: Optional[TailModel] = None) -> "ZeroSequence":
        z = np.array(zeros, dtype=float)
        if z.ndim != 1 or z.size < 2:
            raise ConfigurationError(f"{name}: need at least two zeros")
        if not np.all(np.isfinite(z)) or z[0] <= 0.0:
            raise ConfigurationError(f"{name}: zeros must be positive and finite")
        bad = np.nonzero(np.diff(z) <= 0.0)[0]
        if bad.size:
            i = int(bad[0]) + 2
            raise ConfigurationError(
                f"{name}: zeros must be strictly increasing (simple zeros); index {i} breaks this")
        rho = float(growth_exponent)
        if not rho >= 1.0:
            raise ConfigurationError(f"{name}: growth exponent must be >= 1, got {rho}")
        if tail is None:
            tail = TailModel.fit(z, rho)
        z.setflags(write=False)

        suffix = {}
        for k in _TAIL_ORDERS:
            terms = (1.0 / z.astype(np.longdouble)) ** k
            # suffix[k][i] = sum of zeros[i:]**-k, accumulated smallest first
            s = np.concatenate([np.cumsum(terms[::-1])[::-1], [np.longdouble(0)]])
            suffix[k] = s
        c_computed = float(suffix[2][0]) + tail.power_sum(2)
        if c_declared is not None:
            if abs(c_declared - c_computed) > C_MISMATCH_TOL:
                raise ConfigurationError(
                    f"{name}: declared c = {c_declared!r} but the zeros give {c_computed!r}")
            c_value = float(c_declared)
        else:
            c_value = c_computed
        return cls(name, z, rho, c_value, c_computed, tail, envelope, closed_form, suffix)

    @property
    def cached(self) -> int:
        return int(self.zeros.size)

    @property
    def max_t(self) -> float:
        """Largest t for which :func:`eval_product` is validated."""
        return float(self.zeros[-1]) / RANGE_FACTOR

    def zero(self, n: int) -> float:
        """The n-th zero (1-based); beyond the stored ones, the tail model."""
        if n < 1:
            raise DomainError("zero index starts at 1")
        if n <= self.cached:
            return float(self.zeros[n - 1])
        return self.tail.zero(n)

    def power_tail(self, k: int, n: int) -> float:
        """sum over m > n of t_m^-k."""
        return float(self._suffix[k][n]) + self.tail.power_sum(k)


class ProductEvalResult(NamedTuple):
    value: float
    truncation_N: int
    tail_correction: float
    error_bound: float


def _eval_one(seq: ZeroSequence, t: float) -> ProductEvalResult:
    if t == 0.0:
        return ProductEvalResult(1.0, 0, 0.0, 0.0)
    if t > seq.max_t:
        raise AccuracyError(
            f"t={t:g} outside the validated range [0, {seq.max_t:g}] of {seq.name}")
    z = seq.zeros
    n = int(np.searchsorted(z, RANGE_FACTOR * t, side="right"))
    head = z[:n]
    near = np.abs(head - t) <= 1e-14 * head
    if np.any(near):
        return ProductEvalResult(0.0, n, 0.0, 0.0)
    factors = (head - t) * (head + t) / (head * head)
    logs = np.log(np.abs(factors))
    sign = -1.0 if np.count_nonzero(factors < 0.0) % 2 else 1.0
    t2 = t * t
    # ln(1 - x) = -sum x^m/m over the remaining zeros, x = t^2 / t_n^2
    tail = 0.0
    for m, k in enumerate(_TAIL_ORDERS[:-1], start=1):
        tail -= t2**m * seq.power_tail(k, n) / m
    x_max = t2 / seq.zero(n + 1) ** 2
    m_last = len(_TAIL_ORDERS)
    trunc = t2**m_last * seq.power_tail(_TAIL_ORDERS[-1], n) / (m_last * (1.0 - x_max))
    log_abs = math.fsum(logs.tolist()) + tail
    rounding = 4.0 * np.finfo(float).eps * (float(np.sum(np.abs(logs))) + abs(tail) + n)
    model = 0.0
    if seq.tail.uncertainty:
        model = seq.tail.uncertainty * sum(
            t2**m * seq.tail.power_sum(k) / m for m, k in enumerate(_TAIL_ORDERS, start=1))
    value = sign * math.exp(log_abs)
    return ProductEvalResult(value, n, tail,
                             abs(value) * math.expm1(trunc + rounding + model))


def eval_product(seq: ZeroSequence, t: float) -> ProductEvalResult:
    """g(t) from the stored zeros.

    Zeros below 10 t enter exactly as (t_n - t)(t_n + t)/t_n^2; the rest are
    folded into ``-sum_m t^(2m) R_2m / m`` (m = 1..11) with ``R_k = sum t_n^-k``
    over the remaining zeros.  ``error_bound`` covers the neglected series
    terms and rounding.

    Raises
    ------
    AccuracyError
        If t exceeds a tenth of the largest stored zero.
    """
    t = abs(float(t))
    if not math.isfinite(t):
        raise DomainError("t must be finite")
    return _eval_one(seq, t)


def product_abs(seq: ZeroSequence, t) -> np.ndarray:
    """Vectorised |g(t)|, using the closed form when the sequence has one."""
    t = np.abs(np.asarray(t, dtype=float))
    if seq.closed_form is not None:
        return np.abs(seq.closed_form(t))
    flat = t.ravel()
    out = np.array([abs(_eval_one(seq, float(x)).value) for x in flat])
    return out.reshape(t.shape)


# -- built-in sequences --------------------------------------------------------

def _sinc(t):
    return np.sinc(np.asarray(t, dtype=float) / math.pi)


def sinc_sequence(n_max: int = 100_000) -> ZeroSequence:
    """t_n = n pi, so g(t) = sin(t)/t and c = 1/6."""
    if n_max < 2:
        raise DomainError("n_max must be at least 2")
    zeros = math.pi * np.arange(1, n_max + 1, dtype=float)
    tail = TailModel(math.pi, 0.0, 1.0, n_max)
    return ZeroSequence.from_zeros(
        "sinc", zeros, 1.0, envelope=PowerEnvelope(1.0, 1.0, 1.0),
        c_declared=1.0 / 6.0, closed_form=_sinc, tail=tail)


def _mcmahon(n: np.ndarray) -> np.ndarray:
    b = (n - 0.25) * math.pi
    e = 1.0 / (8.0 * b)
    return b + e - (124.0 / 3.0) * e**3 + (120928.0 / 15.0) * e**5


def bessel_j0_zeros(n_max: int = 20_000, *, max_iter: int = 50) -> ZeroSequence:
    """First ``n_max`` positive zeros of J0 and the sequence they define.

    Each zero starts from McMahon's expansion and is refined by Newton's
    method ``x <- x + J0(x)/J1(x)``.  ``c`` is the partial sum of j_n^-2 plus
    the tail of McMahon's expansion summed with Hurwitz zeta values.

    Raises
    ------
    ComputationError
        If Newton's method fails to converge for some index.
    """
    if n_max < 2:
        raise DomainError("n_max must be at least 2")
    n = np.arange(1, n_max + 1, dtype=float)
    x = _mcmahon(n)
    done = np.zeros(x.size, dtype=bool)
    for _ in range(max_iter):
        active = ~done
        if not np.any(active):
            break
        xa = x[active]
        step = j0(xa) / j1(xa)
        x[active] = xa + step
        done[active] = np.abs(step) <= 4.0 * np.finfo(float).eps * xa
    if not np.all(done):
        first = int(np.nonzero(~done)[0][0]) + 1
        raise ComputationError(f"Newton iteration for J0 zero number {first} did not converge")
    if np.any(np.abs(x - _mcmahon(n)) > 0.1):
        first = int(np.nonzero(np.abs(x - _mcmahon(n)) > 0.1)[0][0]) + 1
        raise ComputationError(f"J0 zero number {first} converged to a neighbouring root")
    envelope = PowerEnvelope(0.5, math.sqrt(2.0 / math.pi), 2.0 / math.pi)
    # McMahon: j_n = b + 1/(8b) + O(b^-3) with b = (n - 1/4) pi
    tail = TailModel(math.pi, 0.25, 1.0, n_max, 0.125)
    return ZeroSequence.from_zeros("j0", x, 1.0, envelope=envelope, closed_form=j0,
                                   tail=tail)


# -- custom sequences ----------------------------------------------------------

def _parse_envelope(raw, name: str) -> Optional[PowerEnvelope]:
    if raw is None or raw == "none":
        return None
    if isinstance(raw, dict) and set(raw) == {"power"} and isinstance(raw["power"], dict):
        spec = raw["power"]
        try:
            return PowerEnvelope(float(spec["a"]), float(spec["C"]), float(spec["t_min"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigurationError(f"{name}: bad power envelope {spec!r}") from exc
    raise ConfigurationError(
        f"{name}: envelope must be \"none\" or {{\"power\": {{\"a\", \"C\", \"t_min\"}}}}")


def load_zero_sequence(path: Union[str, Path],
                       sidecar: Union[str, Path, None] = None) -> ZeroSequence:
    """Read zeros (one decimal per line) and their JSON sidecar.

    The sidecar defaults to the zeros file with a ``.json`` suffix and holds
    ``name``, ``growth_exponent`` (>= 1), ``envelope`` (``"none"`` or
    ``{"power": {"a": .., "C": .., "t_min": ..}}``) and optionally ``c_value``.
    Blank lines and lines starting with ``#`` are ignored.

    Raises
    ------
    ConfigurationError
        For malformed files, non-monotone zeros, or a declared ``c_value``
        that disagrees with the zeros by more than 1e-8.
    OSError
        If a file cannot be read.
    """
    path = Path(path)
    sidecar = Path(sidecar) if sidecar is not None else path.with_suffix(".json")
    zeros = []
    for lineno, line in enumerate(path.read_text().splitlines(), start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            zeros.append(float(text))
        except ValueError as exc:
            raise ConfigurationError(f"{path}:{lineno}: not a number: {text!r}") from exc
    try:
        meta = json.loads(sidecar.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"{sidecar}: invalid JSON ({exc})") from exc
    if not isinstance(meta, dict):
        raise ConfigurationError(f"{sidecar}: expected a JSON object")
    unknown = set(meta) - {"name", "growth_exponent", "envelope", "c_value"}
    if unknown:
        raise ConfigurationError(f"{sidecar}: unknown keys {sorted(unknown)}")
    name = str(meta.get("name", path.stem))
    if "growth_exponent" not in meta:
        raise ConfigurationError(f"{sidecar}: growth_exponent is required")
    try:
        growth = float(meta["growth_exponent"])
        c_decl = None if meta.get("c_value") is None else float(meta["c_value"])
    except (TypeError, ValueError) as exc:
        raise ConfigurationError(f"{sidecar}: numeric field expected ({exc})") from exc
    envelope = _parse_envelope(meta.get("envelope", "none"), name)
    return ZeroSequence.from_zeros(name, zeros, growth, envelope=envelope, c_declared=c_decl)


# -- integrals -----------------------------------------------------------------

def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not 0.0 <= beta < 1.0:
        raise DomainError(f"beta must lie in [0, 1), got {beta}")
    return beta


def product_limit_formula(c: float, beta: float) -> float:
    """Gamma((1-beta)/2) c^(-(1-beta)/2) / 2, the large-p limit of the scaled moment."""
    beta = _check_beta(beta)
    c = float(c)
    if not c > 0.0:
        raise DomainError(f"c must be positive, got {c}")
    e = 0.5 * (1.0 - beta)
    return 0.5 * math.exp(math.lgamma(e) - e * math.log(c))


def product_lower_bound(c: float, p: float, beta: float) -> float:
    """Integral of (1 - c t^2)^p t^-beta over [0, 1/sqrt(c)].

    Equals Gamma(p+1) Gamma((1-beta)/2) / (2 c^((1-beta)/2) Gamma((1-beta)/2 + p + 1))
    and bounds the product moment from below.
    """
    beta = _check_beta(beta)
    e = 0.5 * (1.0 - beta)
    return 0.5 * math.exp(log_beta(e, float(p) + 1.0) - e * math.log(c))


def product_moment(seq: ZeroSequence, p: float, beta: float,
                   rel_tol: float = 1e-10) -> QuadResult:
    """Integral of |g(t)|^p t^-beta over [0, oo) with a certified error bound.

    The range [0, T] is integrated in panels split at the zeros of g; the rest
    is bounded through the sequence's envelope, C^p T^(1-ap-beta)/(ap+beta-1).
    ``periods_used`` reports the number of zero intervals integrated.

    Raises
    ------
    UnsupportedError
        If the sequence has no envelope (the tail cannot be controlled).
    DomainError
        For beta outside [0, 1), p <= 0, or a p for which the envelope does
        not give a convergent tail.
    AccuracyError
        If the tolerance cannot be met, for instance when the envelope tail
        would need integration over more than 1e5 zero intervals.
    """
    beta = _check_beta(beta)
    p = float(p)
    if not (math.isfinite(p) and p > 0.0):
        raise DomainError(f"p must be positive, got {p}")
    if not (1e-13 <= rel_tol <= 1e-3):
        raise DomainError(f"rel_tol must lie in [1e-13, 1e-3], got {rel_tol}")
    env = seq.envelope
    if env is None:
        raise UnsupportedError(f"sequence {seq.name!r} has no envelope; the tail cannot be bounded")
    decay = env.a * p + beta - 1.0
    if not decay > 0.0:
        raise DomainError(f"envelope gives a divergent tail for p={p}, beta={beta}")

    budget = 0.5 * rel_tol * product_lower_bound(seq.c_value, p, beta)
    tail_tol = 0.1 * budget
    log_c = math.log(env.C)
    log_t = (p * log_c - math.log(decay) - math.log(tail_tol)) / decay
    big_t = max(env.t_min, math.exp(min(log_t, 700.0)))
    tail = math.exp(p * log_c - decay * math.log(big_t) - math.log(decay))

    inside = seq.zeros[seq.zeros < big_t]
    if inside.size >= _MAX_INTERVALS or big_t > seq.zeros[-1]:
        raise AccuracyError(
            f"tail envelope needs integration up to t={big_t:.3g}, too far for {seq.name}")
    if seq.closed_form is None and big_t > seq.max_t:
        raise AccuracyError(f"t={big_t:.3g} outside the validated range of {seq.name}")

    def f(t):
        with np.errstate(divide="ignore"):
            return np.exp(p * np.log(product_abs(seq, t)) - beta * np.log(t))

    def near_zero(u):
        with np.errstate(divide="ignore"):
            return np.exp(p * np.log(product_abs(seq, u)))

    left = panels.EndpointFactor(-beta, near_zero)
    breaks = np.concatenate([[0.0], inside, [big_t]])
    value, err, used = panels.integrate(f, 0.0, big_t, 0.9 * budget, left=left,
                                        breaks=breaks, max_panels=400_000)
    result = QuadResult(value, err + tail, int(inside.size) + 1, tail, used)
    if result.error_bound > rel_tol * value:
        raise AccuracyError(f"product moment error bound {result.error_bound:.3g} "
                            f"exceeds rel_tol {rel_tol:g}", value, result.error_bound)
    return result
