"""Balanced domains G = {h < 1} given by structured Minkowski functionals.

All three functional families depend only on the moduli |z_j| and are
nondecreasing in each of them, so G is complete n-circled.  That reduces
the convex envelope to a problem on the nonnegative orthant: the largest
seminorm below h at z equals

    inf { sum_i h(y_i) : y_i >= 0, sum_i y_i = |z| }

which is computed by an LP on a simplex grid followed by a continuous
polish of the active parts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence, Union

import numpy as np
from scipy.optimize import linprog

from .foundations import (
    ComplexVector,
    DimensionMismatch,
    DomainViolation,
    InvalidValue,
    InvariantError,
    Kind,
    MetricKind,
    MetricValue,
    Status,
    UnsupportedKind,
    metric_value_exact,
)

__all__ = [
    "WeightedNorm",
    "Monomial",
    "MaxOf",
    "MinkowskiSpec",
    "EnvelopeResult",
    "ConvergenceFailure",
    "NotPseudoconvex",
    "spec_dim",
    "minkowski_eval",
    "minkowski_abs",
    "is_convex",
    "convex_envelope",
    "balanced_metrics_at_zero",
    "usc_product_bound",
]

STATIONARITY_TOL = 1e-9
CERTIFICATE_TOL = 1e-6


class ConvergenceFailure(InvariantError, ArithmeticError):
    pass


class NotPseudoconvex(UnsupportedKind):
    pass


@dataclass(frozen=True)
class WeightedNorm:
    """h(z) = scale * (sum_j (w_j |z_j|)^q)^(1/q); ``q = inf`` gives the weighted max."""

    weights: tuple[float, ...]
    q: float = 2.0
    scale: float = 1.0

    def __post_init__(self) -> None:
        w = tuple(float(x) for x in self.weights)
        if not w or any(not x > 0 for x in w):
            raise InvalidValue("weights must be positive")
        if not float(self.q) >= 1:
            raise InvalidValue("norm exponent must be >= 1")
        if not self.scale > 0:
            raise InvalidValue("scale must be positive")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "q", float(self.q))


@dataclass(frozen=True)
class Monomial:
    """h(z) = scale * prod_j |z_j|^theta_j with theta_j >= 0 summing to 1."""

    theta: tuple[float, ...]
    scale: float = 1.0

    def __post_init__(self) -> None:
        th = tuple(float(x) for x in self.theta)
        if not th or any(x < 0 for x in th) or abs(math.fsum(th) - 1) > 1e-12:
            raise InvalidValue("monomial exponents must be >= 0 and sum to 1")
        if not self.scale > 0:
            raise InvalidValue("scale must be positive")
        object.__setattr__(self, "theta", th)


@dataclass(frozen=True)
class MaxOf:
    terms: tuple = ()
    scale: float = 1.0

    def __post_init__(self) -> None:
        terms = tuple(self.terms)
        if not terms:
            raise InvalidValue("MaxOf needs at least one term")
        if len({spec_dim(t) for t in terms}) != 1:
            raise DimensionMismatch("MaxOf terms act on different dimensions")
        if not self.scale > 0:
            raise InvalidValue("scale must be positive")
        object.__setattr__(self, "terms", terms)


MinkowskiSpec = Union[WeightedNorm, Monomial, MaxOf]


def spec_dim(spec: MinkowskiSpec) -> int:
    if isinstance(spec, WeightedNorm):
        return len(spec.weights)
    if isinstance(spec, Monomial):
        return len(spec.theta)
    if isinstance(spec, MaxOf):
        return spec_dim(spec.terms[0])
    raise TypeError(f"not a Minkowski spec: {spec!r}")


def minkowski_abs(spec: MinkowskiSpec, y) -> np.ndarray:
    """h evaluated on moduli; ``y`` has shape (..., n) with nonnegative entries."""
    y = np.asarray(y, dtype=float)
    if isinstance(spec, WeightedNorm):
        wy = y * np.asarray(spec.weights)
        if math.isinf(spec.q):
            out = wy.max(axis=-1)
        else:
            # Rescale by the max entry to keep large q from overflowing.
            top = wy.max(axis=-1, keepdims=True)
            safe = np.where(top > 0, top, 1.0)
            out = top[..., 0] * ((wy / safe) ** spec.q).sum(axis=-1) ** (1.0 / spec.q)
        return spec.scale * out
    if isinstance(spec, Monomial):
        return spec.scale * np.prod(y ** np.asarray(spec.theta), axis=-1)
    if isinstance(spec, MaxOf):
        return spec.scale * np.max([minkowski_abs(t, y) for t in spec.terms], axis=0)
    raise TypeError(f"not a Minkowski spec: {spec!r}")


def minkowski_eval(spec: MinkowskiSpec, z: ComplexVector) -> float:
    if z.n != spec_dim(spec):
        raise DimensionMismatch(f"functional acts on C^{spec_dim(spec)}, got C^{z.n}")
    return float(minkowski_abs(spec, np.array(z.moduli())))


def is_convex(spec: MinkowskiSpec) -> bool:
    """Structural convexity (sufficient, not necessary)."""
    if isinstance(spec, WeightedNorm):
        return True
    if isinstance(spec, Monomial):
        return sorted(spec.theta)[-1] == 1.0
    return all(is_convex(t) for t in spec.terms)


@dataclass(frozen=True)
class EnvelopeResult:
    """Upper bound ``value`` on the envelope, with a decomposition realizing it.

    ``certificate`` holds nonnegative coefficients c_j of a seminorm
    q(z) = sum_j c_j |z_j| checked to lie below h; ``lower_bound = q(z)`` and
    ``certificate_gap = value - lower_bound``.
    """

    value: float
    decomposition: tuple[ComplexVector, ...]
    certificate_gap: float
    lower_bound: float = 0.0
    certificate: tuple[float, ...] = field(default=())


# --- simplex grids -----------------------------------------------------------


_GRID_RESOLUTION = {1: 1, 2: 4000, 3: 200, 4: 60}


@lru_cache(maxsize=16)
def _simplex_grid(n: int, N: int) -> np.ndarray:
    """All points k/N with k in N^n and sum k = N."""
    if n == 1:
        return np.ones((1, 1))
    rows = []

    def rec(prefix: list[int], remaining: int, slots: int) -> None:
        if slots == 1:
            rows.append(prefix + [remaining])
            return
        for k in range(remaining + 1):
            rec(prefix + [k], remaining - k, slots - 1)

    rec([], N, n)
    grid = np.array(rows, dtype=float) / N
    grid.setflags(write=False)
    return grid


def _grid_for(n: int) -> np.ndarray:
    return _simplex_grid(n, _GRID_RESOLUTION.get(n, 24))


# --- envelope -------------------------------------------------------------------


class _Restricted:
    """h restricted to the support of the query point (other moduli fixed at 0)."""

    def __init__(self, spec: MinkowskiSpec, support: np.ndarray, n: int) -> None:
        self.spec, self.support, self.n = spec, support, n

    def __call__(self, y) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        full = np.zeros(y.shape[:-1] + (self.n,))
        full[..., self.support] = y
        return minkowski_abs(self.spec, full)


def _violations(h: _Restricted, ell: np.ndarray, top: int = 8) -> tuple[float, np.ndarray]:
    """max over the simplex of ell.s - h(s) (grid plus local zooms) and the worst points."""
    m = len(ell)
    if m == 1:
        return float(ell[0] - h(np.ones((1, 1)))[0]), np.ones((1, 1))
    grid = _grid_for(m)
    excess = grid @ ell - h(grid)
    step = 1.0 / _GRID_RESOLUTION.get(m, 24)
    rng = np.random.default_rng(12345)
    found = []
    for idx in np.argsort(excess)[-top:]:
        centre, best = grid[idx], float(excess[idx])
        for zoom in (1.0, 0.1, 0.01, 0.001):
            pts = centre + zoom * step * rng.uniform(-1, 1, size=(256, m))
            pts = np.clip(pts, 0, None)
            pts /= pts.sum(axis=1, keepdims=True)
            ex = pts @ ell - h(pts)
            k = int(np.argmax(ex))
            if ex[k] > best:
                centre, best = pts[k], float(ex[k])
        found.append((best, centre))
    found.sort(key=lambda t: t[0], reverse=True)
    worst = max(float(excess.max()), found[0][0])
    return worst, np.array([c for _, c in found])


def _solve_lp(h: _Restricted, xhat: np.ndarray,
              rounds: int = 8) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Semi-infinite LP over the simplex by column generation.

    Primal: cheapest convex combination of grid points reproducing xhat.
    Dual: a linear functional below h on the grid.  Points where the dual
    exceeds h are added, with a small local grid, until it stops doing so.
    """
    m = len(xhat)
    grid = np.vstack([_grid_for(m), xhat])
    step = 1.0 / _GRID_RESOLUTION.get(m, 24)
    offsets = _simplex_grid(m, 8) - 1.0 / m if m > 1 else np.zeros((1, 1))
    weights = dual = None
    for _ in range(rounds):
        res = linprog(h(grid), A_eq=grid.T, b_eq=xhat, bounds=(0, None), method="highs")
        if res.status != 0:
            if weights is None:
                raise ConvergenceFailure(f"grid LP failed: {res.message}")
            break
        weights, dual = res.x, np.asarray(res.eqlin.marginals, dtype=float)
        worst, points = _violations(h, dual)
        if worst <= 1e-10 or m == 1:
            break
        step /= 4
        active = grid[weights > 1e-14]
        centres = np.vstack([points, active])
        local = (centres[:, None, :] + step * offsets[None, :, :]).reshape(-1, m)
        local = local[np.all(local >= 0, axis=1)]
        local /= local.sum(axis=1, keepdims=True)
        grid = np.vstack([grid, points, local])
    return grid, weights, dual


def _certify(h: _Restricted, ell: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, float]:
    """Shift ell down until it lies below h on the simplex; return (coeffs, q(x))."""
    delta = max(0.0, _violations(h, ell)[0])
    # On the simplex sum(s) = 1, so subtracting delta from every coefficient
    # lowers ell.s by exactly delta.
    shifted = ell - delta - 1e-15 * max(1.0, float(np.abs(ell).max()))
    coeffs = np.clip(shifted, 0, None)
    return coeffs, float(coeffs @ x)


def _gradient(h: _Restricted, y: np.ndarray) -> np.ndarray | None:
    if np.any(y <= 0):
        return None
    eps = 1e-7 * max(1.0, float(y.max()))
    grad = np.empty_like(y)
    for j in range(len(y)):
        e = np.zeros_like(y)
        e[j] = eps
        grad[j] = (h(y + e) - h(y - e)) / (2 * eps)
    return grad


def _objective(h: _Restricted, Y: np.ndarray) -> float:
    return float(h(Y).sum())


def _pair_search(h: _Restricted, Y: np.ndarray, i: int, k: int, j: int) -> float:
    """Best transfer of coordinate j from part i to part k; returns the gain."""
    lo, hi = -Y[k, j], Y[i, j]
    if hi - lo <= 0:
        return 0.0
    base = float(h(Y[i]) + h(Y[k]))
    for _ in range(3):
        ts = np.linspace(lo, hi, 33)
        yi = np.repeat(Y[i][None, :], len(ts), axis=0)
        yk = np.repeat(Y[k][None, :], len(ts), axis=0)
        yi[:, j] -= ts
        yk[:, j] += ts
        np.clip(yi, 0, None, out=yi)
        np.clip(yk, 0, None, out=yk)
        vals = h(yi) + h(yk)
        b = int(np.argmin(vals))
        best_t, best_v = ts[b], float(vals[b])
        width = (hi - lo) / 32
        lo, hi = max(-Y[k, j], best_t - width), min(Y[i, j], best_t + width)
    gain = base - best_v
    if gain > 0:
        Y[i, j] = max(Y[i, j] - best_t, 0.0)
        Y[k, j] = max(Y[k, j] + best_t, 0.0)
        return gain
    return 0.0


def _polish(h: _Restricted, Y: np.ndarray, max_sweeps: int = 50) -> tuple[np.ndarray, bool]:
    Y = Y.copy()
    P, m = Y.shape
    for _ in range(max_sweeps):
        gain = 0.0
        for j in range(m):
            for i in range(P):
                for k in range(P):
                    if i != k and Y[i, j] > 0:
                        gain += _pair_search(h, Y, i, k, j)
        if gain < STATIONARITY_TOL:
            return Y, True
    return Y, False


def convex_envelope(spec: MinkowskiSpec, z: ComplexVector, parts: int | None = None,
                    restarts: int = 64, seed: int = 0) -> EnvelopeResult:
    """Largest seminorm below h, evaluated at z, via infimal convolution.

    Args:
        spec: the Minkowski functional h.
        z: query point.
        parts: number of summands (default 2n + 1).
        restarts: random restarts tried when the grid LP start is not certified.
        seed: seed of the restart generator.

    Raises:
        ConvergenceFailure: no start reached a stationary decomposition.
    """
    n = spec_dim(spec)
    if z.n != n:
        raise DimensionMismatch(f"functional acts on C^{n}, got C^{z.n}")
    parts = 2 * n + 1 if parts is None else int(parts)
    if parts < 2:
        raise InvalidValue("need at least two parts")
    x_full = np.array(z.moduli())
    total = float(x_full.sum())
    if total == 0:
        return EnvelopeResult(0.0, (z,), 0.0, 0.0, (0.0,) * n)

    support = np.flatnonzero(x_full > 0)
    h = _Restricted(spec, support, n)
    x = x_full[support]
    if is_convex(spec):
        # h is itself a seminorm; the supporting functional at |z| certifies it.
        value = minkowski_eval(spec, z)
        grad = _gradient(h, x)
        full_coeffs = np.zeros(n)
        if grad is not None:
            full_coeffs[support] = np.clip(grad, 0, None)
        return EnvelopeResult(value, (z,), 0.0, value, tuple(float(c) for c in full_coeffs))
    xhat = x / total
    m = len(x)

    grid, weights, dual = _solve_lp(h, xhat)
    active = np.argsort(weights)[::-1][:parts]
    active = active[weights[active] > 0]
    start = np.zeros((parts, m))
    start[: len(active)] = total * weights[active, None] * grid[active]
    start[0] += np.clip(x - start.sum(axis=0), 0, None)

    trivial = np.zeros((parts, m))
    trivial[0] = x
    best_Y, best_val = trivial, _objective(h, trivial)

    Y, converged = _polish(h, start)
    any_converged = converged
    if _objective(h, Y) < best_val:
        best_Y, best_val = Y, _objective(h, Y)

    coeffs, lower = _certify(h, dual, x)
    for part in best_Y[np.argsort(h(best_Y))[::-1][:2]]:
        grad = _gradient(h, part)
        if grad is not None:
            c2, l2 = _certify(h, grad, x)
            if l2 > lower:
                coeffs, lower = c2, l2

    rng = np.random.default_rng(seed)
    attempt = 0
    while best_val - lower > CERTIFICATE_TOL and attempt < restarts:
        attempt += 1
        shares = rng.dirichlet(np.ones(parts), size=m).T
        Y, converged = _polish(h, shares * x[None, :], max_sweeps=10)
        any_converged |= converged
        val = _objective(h, Y)
        if val < best_val - 1e-15:
            best_Y, best_val = Y, val
    if not any_converged:
        raise ConvergenceFailure("no restart reached the stationarity tolerance")

    best_Y = best_Y[best_Y.sum(axis=1) > 0]
    decomposition = []
    for row in best_Y:
        entries = [0j] * n
        for col, j in enumerate(support):
            entries[j] = z[j] * (row[col] / x[col])
        decomposition.append(ComplexVector(tuple(entries)))
    # Fold rounding drift into the largest share of each coordinate so the
    # parts sum to z; a zero entry must stay zero, h is not Lipschitz there.
    acc = decomposition[0]
    for w in decomposition[1:]:
        acc = acc + w
    rows = [list(w) for w in decomposition]
    for j in range(n):
        owner = max(range(len(rows)), key=lambda i: abs(rows[i][j]))
        rows[owner][j] += z[j] - acc[j]
    decomposition = [ComplexVector(tuple(r)) for r in rows]
    value = math.fsum(minkowski_eval(spec, w) for w in decomposition)
    full_coeffs = np.zeros(n)
    full_coeffs[support] = coeffs
    lower = min(lower, value)
    return EnvelopeResult(value, tuple(decomposition), max(0.0, value - lower), lower,
                          tuple(float(c) for c in full_coeffs))


def balanced_metrics_at_zero(spec: MinkowskiSpec, pseudoconvex: bool, kind: MetricKind,
                             z_or_X: ComplexVector, **envelope_opts) -> MetricValue:
    """Invariant functions and pseudometrics of {h < 1} with pole/base point 0."""
    if not pseudoconvex:
        raise NotPseudoconvex("the balanced-domain identities need a pseudoconvex domain")
    h_val = minkowski_eval(spec, z_or_X)
    if kind.kind is Kind.GREEN:
        if not h_val < 1:
            raise DomainViolation("point is not in the domain")
        return metric_value_exact(h_val)
    if kind.kind is Kind.AZUKAWA:
        return metric_value_exact(h_val)
    if kind.kind is Kind.SIBONY_METRIC and kind.order % 2:
        return MetricValue.proven(0.0, "Sibony pseudometrics of odd order vanish identically")

    if kind.is_function and not h_val < 1:
        raise DomainViolation("point is not in the domain")
    env = convex_envelope(spec, z_or_X, **envelope_opts)
    certified = env.certificate_gap <= CERTIFICATE_TOL
    if kind.kind is Kind.CARATHEODORY or (kind.kind is Kind.SIBONY_METRIC and kind.order == 2):
        if certified:
            return metric_value_exact(env.value)
        return MetricValue(env.lower_bound, h_val, Status.BOUNDS)
    if kind.kind is Kind.SIBONY_METRIC:
        if certified and env.value >= h_val - 1e-12:
            return metric_value_exact(h_val)
        return MetricValue(min(env.lower_bound, h_val), h_val, Status.UNKNOWN)
    # Möbius and Sibony functions: only m >= envelope and s <= g = h are known here.
    return MetricValue(min(env.lower_bound, h_val), h_val, Status.UNKNOWN)


def usc_product_bound(eps: float, R: float, k: float, h_D: MinkowskiSpec,
                      z_prime: Sequence[complex] | ComplexVector,
                      z_dprime: ComplexVector) -> float:
    """max{||z'||/eps, h_D(z'')/R, ||z''||/k}: the Green function of the product
    neighbourhood {||z'|| < eps, h_D(z'') < R, ||z''|| < k} at 0."""
    if not (eps > 0 and k > 0 and 0 < R < 1):
        raise InvalidValue("need eps > 0, k > 0 and 0 < R < 1")
    zp = math.sqrt(math.fsum(abs(c) ** 2 for c in z_prime))
    return max(zp / eps, minkowski_eval(h_D, z_dprime) / R, z_dprime.norm() / k)
