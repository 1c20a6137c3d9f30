"""Numerical oracles: directional limsup quotients, Levi forms, vanishing orders.

These are deliberately independent of the closed forms they are used to
check; they only ever see black-box evaluators.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .foundations import ComplexVector, InvalidValue, InvariantError

__all__ = [
    "NonFiniteSample",
    "NoConvergence",
    "StepTooSmall",
    "Undetermined",
    "OrderMismatch",
    "Trend",
    "CurveSampler",
    "richardson_extrapolate",
    "limsup_quotient",
    "curve",
    "levi_form",
    "order_of_vanishing",
    "taylor_p_coefficient",
]


class NonFiniteSample(InvariantError, ArithmeticError):
    pass


class NoConvergence(InvariantError, ArithmeticError):
    pass


class StepTooSmall(InvariantError, ArithmeticError):
    pass


class Undetermined(InvariantError, ArithmeticError):
    pass


class OrderMismatch(InvariantError, ArithmeticError):
    pass


class Trend(enum.Enum):
    INCREASING = "Increasing"
    STABLE = "Stable"
    DECREASING = "Decreasing"


def richardson_extrapolate(values: Sequence[float], ratio: float, power: float = 1.0) -> float:
    """Neville-style Richardson table for a sequence with steps shrinking by ``ratio``.

    Assumes ``values[m] = L + c_1 h_m^power + c_2 h_m^(2 power) + ...`` with
    ``h_{m+1} = h_m / ratio``.
    """
    vals = [float(v) for v in values]
    if len(vals) < 2:
        raise InvalidValue("need at least two values to extrapolate")
    n = len(vals)
    for j in range(1, n):
        factor = ratio ** (power * j)
        for k in range(n - 1, j - 1, -1):
            vals[k] = (factor * vals[k] - vals[k - 1]) / (factor - 1.0)
    return vals[-1]


@dataclass(frozen=True)
class CurveSampler:
    """Samples ``f(lambda) / |lambda|`` on a polar grid shrinking to 0.

    ``evaluator`` receives the complex parameter lambda; it is usually
    ``lambda -> d(a, a + lambda X)``.
    """

    evaluator: Callable[[complex], float]
    r0: float = 1e-1
    rho: float = 0.5
    levels: int = 14
    n_theta: int = 32

    def __post_init__(self) -> None:
        if not 0 < self.r0 <= 1e-1:
            raise InvalidValue("r0 must lie in (0, 0.1]")
        if not 0 < self.rho < 1:
            raise InvalidValue("rho must lie in (0, 1)")
        if self.n_theta < 8:
            raise InvalidValue("need at least 8 angles")
        if self.levels < 4:
            raise InvalidValue("need at least 4 radial levels")

    def radii(self) -> np.ndarray:
        return self.r0 * self.rho ** np.arange(self.levels)

    def level_maxima(self) -> np.ndarray:
        angles = 2 * math.pi * np.arange(self.n_theta) / self.n_theta
        out = np.empty(self.levels)
        for m, r in enumerate(self.radii()):
            best = -math.inf
            for theta in angles:
                v = float(self.evaluator(r * cmath.exp(1j * theta)))
                if not math.isfinite(v):
                    raise NonFiniteSample(f"evaluator returned {v} at |lambda|={r}")
                best = max(best, v / r)
            out[m] = best
        return out


def limsup_quotient(sampler: CurveSampler, rtol: float = 1e-6, window: int = 4,
                    strict: bool = True) -> tuple[float, Trend]:
    """Estimate limsup_{lambda -> 0} f(lambda)/|lambda|.

    Per-radius angular maxima are Richardson-extrapolated over a sliding
    window of the finest levels (leading correction linear in |lambda|).
    The estimate is Stable when the last two windows agree to ``rtol``.
    """
    maxima = sampler.level_maxima()
    ratio = 1.0 / sampler.rho
    w = min(window, len(maxima) - 1)
    prev = richardson_extrapolate(maxima[-w - 1:-1], ratio)
    last = richardson_extrapolate(maxima[-w:], ratio)
    scale = max(1.0, abs(last))
    drift = last - prev
    if abs(drift) <= rtol * scale:
        trend = Trend.STABLE
    else:
        trend = Trend.INCREASING if drift > 0 else Trend.DECREASING
    if strict and trend is not Trend.STABLE:
        raise NoConvergence(f"limsup estimate still drifting ({drift:+.3e}) at the finest radius")
    return max(last, 0.0), trend


def curve(f: Callable[[ComplexVector], float], a: ComplexVector,
          X: ComplexVector) -> Callable[[complex], float]:
    """lambda -> f(a + lambda X)."""
    return lambda lam: f(a + X.scale(lam))


def _levi_raw(u: Callable[[ComplexVector], float], a: ComplexVector, X: ComplexVector,
              h: float) -> tuple[float, float]:
    samples = [u(a + X.scale(s)) for s in (h, -h, 1j * h, -1j * h)]
    centre = u(a)
    vals = samples + [centre]
    if not all(math.isfinite(v) for v in vals):
        raise NonFiniteSample("non-finite value in Levi stencil")
    numerator = math.fsum(samples) - 4 * centre
    magnitude = math.fsum(abs(v) for v in samples) + 4 * abs(centre)
    return numerator / (4 * h * h), magnitude


def levi_form(u: Callable[[ComplexVector], float], a: ComplexVector, X: ComplexVector,
              h: float = 1e-4) -> float:
    """Levi form of u at a in direction X: one quarter of the Laplacian of u(a + lambda X)."""
    if not 1e-6 <= h <= 1e-2:
        raise InvalidValue("stencil step must lie in [1e-6, 1e-2]")
    value, magnitude = _levi_raw(u, a, X, h)
    if value == 0 and magnitude > 0 and _levi_raw(u, a, X, 2 * h)[0] == 0:
        return 0.0  # u is constant along the stencil; the difference is exact
    coarse, _ = _levi_raw(u, a, X, 2 * h)
    fine, _ = _levi_raw(u, a, X, h / 2)
    rounding = np.finfo(float).eps * magnitude / (4 * h * h)
    # Halving a step that is still truncation-limited shrinks the change;
    # growth beyond the accuracy budget means rounding has taken over.
    if abs(fine - value) > abs(value - coarse) and abs(fine - value) > 1e-4 * abs(value):
        raise StepTooSmall(f"cancellation dominates at h={h}")
    if rounding > 1e-4 * abs(value):
        raise StepTooSmall(f"rounding error {rounding:.2e} at h={h} swamps the value {value:.3e}")
    return value


def order_of_vanishing(u: Callable[[ComplexVector], float], a: ComplexVector, X: ComplexVector,
                       t0: float = 1e-2, points: int = 11, max_residual: float = 1e-2) -> float:
    """Least-squares slope of log u(a + tX) against log t over the decade [t0/10, t0]."""
    ts = t0 * np.logspace(-1, 0, points)
    vals = np.array([u(a + X.scale(float(t))) for t in ts])
    if not np.all(np.isfinite(vals)) or np.any(vals <= 0):
        raise Undetermined("u vanishes or is non-finite along the sampled segment")
    x, y = np.log(ts), np.log(vals)
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.max(np.abs(y - (slope * x + intercept))))
    if residual > max_residual:
        raise Undetermined(f"log-log fit residual {residual:.3e} too large")
    nearest = round(slope)
    return float(nearest) if abs(slope - nearest) <= 0.1 else float(slope)


def taylor_p_coefficient(u: Callable[[ComplexVector], float], a: ComplexVector,
                         X: ComplexVector, p: int, t0: float = 1e-2, levels: int = 8) -> float:
    """Limit of u(a + tX)/t^p as real t decreases to 0, i.e. |u^(p)(a)(X)|/p!."""
    if p < 1:
        raise InvalidValue("p must be positive")
    ts = t0 * 0.5 ** np.arange(levels)
    quotients = np.array([u(a + X.scale(float(t))) / t ** p for t in ts])
    if not np.all(np.isfinite(quotients)):
        raise NonFiniteSample("non-finite quotient")
    if np.all(np.abs(quotients) == 0):
        raise OrderMismatch("u vanishes identically on the grid; its order exceeds p")
    if np.any(quotients <= 0):
        raise OrderMismatch("quotient changes sign or vanishes")
    slope = np.polyfit(np.log(ts), np.log(quotients), 1)[0]
    if abs(slope) > 0.5:
        raise OrderMismatch(f"u(a+tX)/t^{p} scales like t^{slope:.2f}; order of u differs from p")
    return richardson_extrapolate(quotients[-4:], 2.0)
