"""Hartogs-type counterexample domains built from plurisubharmonic log-series.

* ``exam1``: G = {(z1, z2, z3) : |z1| exp(phi(z2, z3)) < 1} in C^3 with
  phi(xi, eta) = sum_k 2^-k log((|xi - a_k|^2 + |eta|) / k), where (a_k)
  enumerates the dyadic points of the punctured unit disc level by level.
* ``exam1-slice``: the planar slice D = {(z1, z2) : (z1, z2, 0) in G}.
* ``exam3``: G_k = {|z1| < 1/2, |z2| exp(phi_k(z1)) < 1} with
  phi_k(l) = sum_{s=2}^k s^-2 log|l - 1/s|, and its increasing union G.

Series values always come with a rigorous bound on the truncation error.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .foundations import (
    ComplexVector,
    DimensionMismatch,
    DomainViolation,
    InvalidValue,
    InvariantError,
    Kind,
    MetricKind,
    MetricValue,
)

__all__ = [
    "RegionViolation",
    "SingularPoint",
    "InvalidBase",
    "NotProven",
    "Exam1Phi",
    "Exam3Phi",
    "HartogsDomain",
    "Membership",
    "IncreasingRow",
    "exam1_sequence",
    "phi_eval",
    "membership",
    "candidate_lower_bound",
    "proven_value",
    "increasing_family_table",
]

_EPS = np.finfo(float).eps


class RegionViolation(InvariantError, ValueError):
    """The series cannot be certified at this point."""


class SingularPoint(InvariantError, ValueError):
    pass


class InvalidBase(InvariantError, ValueError):
    pass


class NotProven(InvariantError, LookupError):
    """No closed or proven value is known for this query."""


# --- the dense sequence ---------------------------------------------------------


@lru_cache(maxsize=None)
def exam1_sequence(count: int) -> tuple[complex, ...]:
    """First ``count`` points a_k of the dyadic enumeration of the punctured disc.

    Level m contributes the points (p + iq)/2^m of modulus < 1 that are not on
    a coarser level, sorted by modulus then argument.  The enumeration is
    dense and satisfies |a_k| >= 2^-k, which keeps phi(0, 0) finite.
    """
    out: list[complex] = []
    level = 0
    while len(out) < count:
        level += 1
        d = 2 ** level
        pts = []
        for p in range(-d, d + 1):
            for q in range(-d, d + 1):
                if (p % 2 or q % 2) and p * p + q * q < d * d:
                    pts.append(complex(p, q) / d)
        pts.sort(key=lambda w: (abs(w), math.atan2(w.imag, w.real)))
        out.extend(pts)
    seq = tuple(out[:count])
    for k, a in enumerate(seq, start=1):
        if abs(a) < 2.0 ** -k:
            raise AssertionError(f"a_{k} = {a} violates |a_k| >= 2^-k")
    return seq


# --- series ------------------------------------------------------------------------


@dataclass(frozen=True)
class Exam1Phi:
    """phi(xi, eta) truncated adaptively (or at ``truncation``) to meet ``target_error``."""

    truncation: int | None = None
    target_error: float = 1e-10

    def __post_init__(self) -> None:
        if self.truncation is not None and self.truncation < 1:
            raise InvalidValue("truncation must be positive")
        if not self.target_error > 0:
            raise InvalidValue("target error must be positive")


@dataclass(frozen=True)
class Exam3Phi:
    """phi_k on |l| < 1/2 (``k`` given) or the full series phi (``k`` None).

    The full series sums ``truncation`` terms directly and brackets the rest
    between integrals.
    """

    k: int | None = None
    truncation: int = 10**6

    def __post_init__(self) -> None:
        if self.k is not None and self.k < 2:
            raise InvalidValue("partial sums start at k = 2")
        if self.truncation < 10:
            raise InvalidValue("truncation too small")


def _exam1_tail(K: int, c0: float, c1: float) -> float:
    # sum_{k>K} 2^-k (c0 + log k + c1 k) <= 2^-K (c0 + (1 + c1)(K + 2))
    return 2.0 ** -K * (c0 + (1 + c1) * (K + 2))


def _phi_exam1(spec: Exam1Phi, xi: complex, eta: complex) -> tuple[float, float]:
    if eta == 0 and xi != 0:
        raise RegionViolation("phi(xi, 0) is only certified at xi = 0")
    upper = (abs(xi) + 1) ** 2 + abs(eta)
    if eta == 0:
        c0, c1 = abs(math.log(upper)), 2 * math.log(2)
    else:
        c0, c1 = abs(math.log(upper)) + abs(math.log(abs(eta))), 0.0
    if spec.truncation is not None:
        K = spec.truncation
    else:
        K = 8
        while _exam1_tail(K, c0, c1) > spec.target_error:
            K += 1
    seq = exam1_sequence(K)
    terms = []
    for k, a in enumerate(seq, start=1):
        v = abs(xi - a) ** 2 + abs(eta)
        if v < 1e-28:
            raise SingularPoint(f"({xi}, {eta}) is at the pole a_{k} of phi")
        terms.append(2.0 ** -k * math.log(v / k))
    value = math.fsum(terms)
    # fsum is exactly rounded; each log carries an absolute error of a few ulps.
    rounding = 4 * _EPS * (math.fsum(abs(t) for t in terms) + 1.0) + _EPS * abs(value)
    return value, _exam1_tail(K, c0, c1) + rounding


def _phi_exam3(spec: Exam3Phi, lam: complex) -> tuple[float, float]:
    lam = complex(lam)
    if not abs(lam) < 0.5:
        raise RegionViolation("phi_k is only considered on |l| < 1/2")
    K = spec.k if spec.k is not None else spec.truncation
    if spec.k is None and lam != 0 and K * abs(lam) < 4:
        raise RegionViolation("point too close to 0 for the tail estimate; use 0 exactly")
    s = np.arange(2, K + 1, dtype=float)
    dist = np.abs(lam - 1.0 / s)
    if np.any(dist < 1e-14):
        raise SingularPoint(f"{lam} is a pole 1/s of phi")
    terms = np.log(dist) / s**2
    value = math.fsum(terms)
    # fsum is exactly rounded; each log carries an absolute error of a few ulps.
    error = 4 * _EPS * (math.fsum(np.abs(terms)) + math.fsum(1.0 / s**2)) + _EPS * abs(value)
    if spec.k is None:
        if lam == 0:
            # tail = -sum_{s>K} log(s)/s^2, bracketed by integrals of the
            # decreasing function log(x)/x^2, whose antiderivative is -(log x + 1)/x.
            hi = (math.log(K) + 1) / K
            lo = (math.log(K + 1) + 1) / (K + 1)
            value -= (hi + lo) / 2
            error += (hi - lo) / 2
        else:
            # log|l - 1/s| = log|l| + log|1 - 1/(s l)|, the latter at most 2/(s|l|).
            hi, lo = 1.0 / K, 1.0 / (K + 1)
            value += math.log(abs(lam)) * (hi + lo) / 2
            error += abs(math.log(abs(lam))) * (hi - lo) / 2 + 1.0 / (abs(lam) * K * K)
    return value, float(error)


def phi_eval(spec: Exam1Phi | Exam3Phi, point) -> tuple[float, float]:
    """(value, certified_error) of the series at ``point``.

    ``point`` is (xi, eta) for ``Exam1Phi`` and a complex number for ``Exam3Phi``.
    """
    if isinstance(spec, Exam1Phi):
        xi, eta = (complex(c) for c in point)
        return _phi_exam1(spec, xi, eta)
    if isinstance(spec, Exam3Phi):
        return _phi_exam3(spec, complex(point))
    raise TypeError(f"not a series spec: {spec!r}")


# --- domains -------------------------------------------------------------------------


class Variant(enum.Enum):
    EXAM1 = "exam1"
    EXAM1_SLICE = "exam1-slice"
    EXAM3 = "exam3"


class Membership(enum.Enum):
    IN = "in"
    OUT = "out"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class HartogsDomain:
    """One of the counterexample domains; ``k`` selects G_k for ``exam3``."""

    variant: Variant
    k: int | None = None
    truncation: int | None = None

    def __post_init__(self) -> None:
        variant = Variant(self.variant)
        object.__setattr__(self, "variant", variant)
        if self.k is not None and variant is not Variant.EXAM3:
            raise InvalidValue("k only applies to the exam3 family")
        if self.k is not None and self.k < 2:
            raise InvalidValue("G_k is defined for k >= 2")

    @classmethod
    def exam1(cls) -> "HartogsDomain":
        return cls(Variant.EXAM1)

    @classmethod
    def exam1_slice(cls) -> "HartogsDomain":
        return cls(Variant.EXAM1_SLICE)

    @classmethod
    def exam3(cls, k: int | None = None) -> "HartogsDomain":
        return cls(Variant.EXAM3, k)

    @property
    def n(self) -> int:
        return 3 if self.variant is Variant.EXAM1 else 2

    @property
    def phi(self) -> Exam1Phi | Exam3Phi:
        if self.variant is Variant.EXAM3:
            if self.truncation is None:
                return Exam3Phi(self.k)
            return Exam3Phi(self.k, self.truncation)
        return Exam1Phi(self.truncation)

    def to_dict(self) -> dict:
        out = {"type": "hartogs", "variant": self.variant.value}
        if self.k is not None:
            out["k"] = self.k
        if self.truncation is not None:
            out["truncation"] = self.truncation
        return out

    def fibre_data(self, z: ComplexVector) -> tuple[complex, tuple[float, float]]:
        """(fibre coordinate, certified phi at the base) for the point z."""
        if z.n != self.n:
            raise DimensionMismatch(f"{self.variant.value} lives in C^{self.n}")
        if self.variant is Variant.EXAM1:
            return z[0], phi_eval(self.phi, (z[1], z[2]))
        if self.variant is Variant.EXAM1_SLICE:
            return z[0], phi_eval(self.phi, (z[1], 0))
        return z[1], phi_eval(self.phi, z[0])


def membership(domain: HartogsDomain, z: ComplexVector) -> Membership:
    """Membership with an uncertainty band of the series' certified error."""
    if z.n != domain.n:
        raise DimensionMismatch(f"{domain.variant.value} lives in C^{domain.n}")
    if domain.variant is Variant.EXAM3 and not abs(z[0]) < 0.5:
        return Membership.OUT
    fibre = z[1] if domain.variant is Variant.EXAM3 else z[0]
    if fibre == 0:
        return Membership.IN
    _, (phi, err) = domain.fibre_data(z)
    lo = abs(fibre) * math.exp(phi - err)
    hi = abs(fibre) * math.exp(phi + err)
    if hi < 1:
        return Membership.IN
    if lo >= 1:
        return Membership.OUT
    return Membership.INDETERMINATE


def _require_in(domain: HartogsDomain, z: ComplexVector, name: str) -> None:
    state = membership(domain, z)
    if state is not Membership.IN:
        raise DomainViolation(f"{name} = ({z}) is {state.value} for {domain.variant.value}")


# --- candidates and proven values ------------------------------------------------


def _is_ct(base: ComplexVector) -> bool:
    return base.n == 3 and base[0] == 0 and base[1] == 0 and base[2].imag == 0 and base[2].real > 0


def candidate_lower_bound(domain: HartogsDomain, base: ComplexVector, p: int,
                          target: ComplexVector, kind: MetricKind,
                          eps: float | None = None) -> float:
    """Certified lower bound for s^(p) (function kinds) or S^(2p) (metric kinds).

    Function kinds evaluate the candidate (|w| e^phi)^(1 + eps/p) at ``target``
    (``eps=None`` takes the supremum over eps > 0).  Metric kinds return
    limsup v(base + l X)/|l| of the order-one candidate |w| e^phi, which is
    |X_w| e^phi(base).  The series error is subtracted from phi first.
    """
    if p < 1:
        raise InvalidValue("order must be positive")
    if eps is not None and not eps > 0:
        raise InvalidValue("eps must be positive")
    _require_in(domain, base, "base")
    if domain.variant is Variant.EXAM1:
        if not _is_ct(base):
            raise InvalidBase("candidates on G are available at c_t = (0, 0, t), t > 0")
    elif domain.variant is Variant.EXAM3 and domain.k is not None:
        if base[0] != 0 or base[1] != 0:
            raise InvalidBase("candidates on G_k are available at the origin")
    else:
        raise InvalidBase(f"no candidate family is known on {domain.variant.value}"
                          + ("" if domain.k is None else f"_{domain.k}"))

    if kind.is_metric:
        fibre_dir = target[0] if domain.variant is Variant.EXAM1 else target[1]
        _, (phi, err) = domain.fibre_data(base)
        return abs(fibre_dir) * math.exp(phi - err)

    _require_in(domain, target, "target")
    fibre, (phi, err) = domain.fibre_data(target)
    value = abs(fibre) * math.exp(phi - err)
    if eps is None:
        return value
    return value ** (1 + eps / p)


EXAM1_FUNCTION_ZERO = (
    "every candidate at the origin of G vanishes on (C x D x {0}) n G, "
    "so s^(p)_G(0, (b, 0, 0)) = 0")
EXAM1_METRIC_ZERO = "S^(2p)_G(0; (X1, 0, 0)) = 0 on the Hartogs domain G"
EXAM1_GAMMA_ZERO = ("bounded holomorphic functions on G vanishing at 0 vanish on "
                    "the z1-axis near 0, so gamma_G(0; (1, 0, 0)) = 0")
SLICE_ZERO = "s^(p)_D and S^(2p)_D vanish at every base point of D n (C x D)"
EXAM3_ZERO = ("candidates at the origin of G are constant on the fibres over 1/s, "
              "so s^(p)_G((0,0), (0,z2)) = 0 for |z2| < e^phi(0)")
EXAM3_METRIC_ZERO = "S^(p)_G((0,0); (0,X2)) = 0 on the increasing union G"
EXAM6_VALUE = ("S^(2p)_G(c_t; X) = A_G(c_t; X) = |X1| e^phi(0,t): the candidate "
               "|z1| e^phi gives the lower bound, the disc (l, 0, t) the upper one")


def proven_value(domain: HartogsDomain, kind: MetricKind, base: ComplexVector,
                 target: ComplexVector) -> MetricValue:
    """Values established by proof for a closed list of configurations.

    Raises:
        NotProven: for every configuration outside that list.
    """
    if base.n != domain.n or target.n != domain.n:
        raise DimensionMismatch(f"{domain.variant.value} lives in C^{domain.n}")
    _require_in(domain, base, "base")
    if kind.is_function:
        _require_in(domain, target, "target")
    origin = all(c == 0 for c in base)
    sib_fn = kind.kind is Kind.SIBONY_FUNCTION
    sib_metric = kind.kind is Kind.SIBONY_METRIC
    even_metric = sib_metric and kind.order % 2 == 0
    along_first = target[0] != 0 and all(c == 0 for c in target[1:])
    v = domain.variant

    if v is Variant.EXAM1:
        if origin and sib_fn and along_first:
            return MetricValue.proven(0.0, EXAM1_FUNCTION_ZERO)
        if origin and even_metric and along_first:
            return MetricValue.proven(0.0, EXAM1_METRIC_ZERO)
        if origin and kind.kind is Kind.CARATHEODORY and along_first:
            return MetricValue.proven(0.0, EXAM1_GAMMA_ZERO)
        if (_is_ct(base) and (even_metric or kind.kind is Kind.AZUKAWA)
                and all(c == 0 for c in target[1:])):
            phi, err = phi_eval(domain.phi, (0, base[2]))
            value = abs(target[0]) * math.exp(phi)
            return MetricValue.proven(value, EXAM6_VALUE, certified_error=value * math.expm1(err))
    elif v is Variant.EXAM1_SLICE:
        if abs(base[1]) < 1 and (sib_fn or even_metric):
            return MetricValue.proven(0.0, SLICE_ZERO)
    elif v is Variant.EXAM3 and domain.k is None and origin and target[0] == 0:
        if sib_fn:
            phi0, err = phi_eval(domain.phi, 0)
            if abs(target[1]) < math.exp(phi0 - err):
                return MetricValue.proven(0.0, EXAM3_ZERO)
        if sib_metric:
            return MetricValue.proven(0.0, EXAM3_METRIC_ZERO)
    raise NotProven(f"no proven value for {kind} on {v.value} at ({base}) -> ({target})")


@dataclass(frozen=True)
class IncreasingRow:
    k: int
    phi_k_0: float
    exp_phi_k_0: float
    lower_bound: float
    limit_value: float
    proven_G_value: float


def increasing_family_table(k_max: int, z2: complex, p: int) -> list[IncreasingRow]:
    """Lower bounds for s^(p)_{G_k}((0,0), (0,z2)) against the proven value 0 on G."""
    if k_max < 2:
        raise InvalidValue("k_max must be >= 2")
    phi0, err0 = phi_eval(Exam3Phi(), 0)
    if not 0 < abs(z2) < math.exp(phi0 - err0):
        raise InvalidValue("need 0 < |z2| < e^phi(0)")
    G = HartogsDomain.exam3()
    target = ComplexVector.of(0, z2)
    proven = proven_value(G, MetricKind.sibony_function(p), ComplexVector.of(0, 0), target)
    limit = abs(z2) * math.exp(phi0 - err0)
    rows = []
    for k in range(2, k_max + 1):
        Gk = HartogsDomain.exam3(k)
        phik, _ = phi_eval(Gk.phi, 0)
        bound = candidate_lower_bound(Gk, ComplexVector.of(0, 0), p, target,
                                      MetricKind.sibony_function(p))
        rows.append(IncreasingRow(k, phik, math.exp(phik), bound, limit, proven.value))
    return rows
