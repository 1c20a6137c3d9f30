"""Elementary Reinhardt domains D_alpha = {z : |z_1|^a_1 ... |z_n|^a_n < 1}.

Coordinates with a negative exponent must be nonzero.  Two arithmetic classes
have closed forms: relatively prime integer exponents, and exponent vectors
that are not a real multiple of an integer vector ("generic").  Indices are
0-based throughout.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .disc import gamma_disc, mobius_distance
from .foundations import (
    ComplexVector,
    DimensionMismatch,
    DomainViolation,
    InvalidKind,
    InvalidValue,
    Kind,
    MetricKind,
    MetricValue,
    Status,
    UnsupportedKind,
    metric_value_exact,
)

__all__ = [
    "ArithmeticClass",
    "ExponentVector",
    "PointClass",
    "ReinhardtPoint",
    "InvalidOrder",
    "classify",
    "contains",
    "monomial_modulus",
    "monomial_power",
    "taylor_lowest_coefficient",
    "eval_function",
    "eval_metric",
    "in_exclusion_set",
    "violates_cs",
    "in_cs",
]

RATIONAL_DENOMINATOR_LIMIT = 10**6
_INT_TOL = 1e-12

ZERO_BRANCH_CITATION = (
    "S^(2p) vanishes identically when 2p*alpha_j/r(a) is not a positive integer "
    "for some vanishing coordinate j"
)


class InvalidOrder(InvalidKind):
    pass


class ArithmeticClass(enum.Enum):
    INTEGERS = "integers"
    GENERIC = "generic"


def _rational_multiple(values: Sequence[float]) -> list[Fraction] | None:
    """Ratios to the first entry if all are rational with small denominator."""
    ref = float(values[0])
    out = []
    for v in values:
        ratio = float(v) / ref
        frac = Fraction(ratio).limit_denominator(RATIONAL_DENOMINATOR_LIMIT)
        if abs(ratio - float(frac)) > 1e-13 * max(1.0, abs(ratio)):
            return None
        out.append(frac)
    return out


@dataclass(frozen=True)
class ExponentVector:
    alpha: tuple
    arithmetic_class: ArithmeticClass

    def __post_init__(self) -> None:
        cls = ArithmeticClass(self.arithmetic_class)
        raw = tuple(self.alpha)
        if len(raw) < 2:
            raise DimensionMismatch("elementary Reinhardt domains need n >= 2")
        if any(not math.isfinite(float(a)) or float(a) == 0 for a in raw):
            raise InvalidValue("exponents must be finite and nonzero")
        if cls is ArithmeticClass.INTEGERS:
            ints = []
            for a in raw:
                if isinstance(a, bool) or not float(a).is_integer():
                    raise InvalidValue(f"integer class needs integer exponents, got {a!r}")
                ints.append(int(a))
            if reduce(math.gcd, (abs(a) for a in ints)) != 1:
                raise InvalidValue(f"exponents {tuple(ints)} are not relatively prime")
            alpha: tuple = tuple(ints)
        else:
            alpha = tuple(float(a) for a in raw)
            if _rational_multiple(alpha) is not None:
                raise InvalidValue(
                    f"{alpha} is a real multiple of an integer vector; use the integer class")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "arithmetic_class", cls)

    @classmethod
    def integers(cls, *alpha: int) -> "ExponentVector":
        return cls(tuple(alpha), ArithmeticClass.INTEGERS)

    @classmethod
    def generic(cls, *alpha: float) -> "ExponentVector":
        return cls(tuple(alpha), ArithmeticClass.GENERIC)

    @classmethod
    def detect(cls, alpha: Sequence[float]) -> "ExponentVector":
        """Pick the class automatically, rescaling rational directions.

        ``D_{t alpha} = D_alpha`` for ``t > 0``, so a rational direction is
        replaced by the relatively prime integer vector pointing the same way.
        """
        ratios = _rational_multiple(alpha)
        if ratios is None:
            return cls.generic(*alpha)
        lcm = reduce(lambda x, y: x * y // math.gcd(x, y), (f.denominator for f in ratios))
        ints = [int(f * lcm) for f in ratios]
        g = reduce(math.gcd, (abs(i) for i in ints))
        sign = 1 if float(alpha[0]) > 0 else -1
        return cls.integers(*(sign * i // g for i in ints))

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def is_integral(self) -> bool:
        return self.arithmetic_class is ArithmeticClass.INTEGERS

    def to_dict(self) -> dict:
        return {"type": "reinhardt", "alpha": list(self.alpha),
                "class": self.arithmetic_class.value}


@dataclass(frozen=True)
class PointClass:
    """Vanishing pattern of a point: Xi, sigma = #Xi, r(a) and mu(a)."""

    xi: frozenset
    sigma: int
    r: float
    mu: float | None

    def __post_init__(self) -> None:
        if self.sigma != len(self.xi):
            raise InvalidValue("sigma must equal #Xi")
        if self.sigma == 0 and (self.r != 1 or self.mu is not None):
            raise InvalidValue("sigma = 0 forces r = 1 and mu undefined")
        if self.sigma >= 1 and not self.r >= self.mu > 0:
            raise InvalidValue("need r >= mu > 0")


def _check_dims(alpha: ExponentVector, *vectors: ComplexVector) -> None:
    for v in vectors:
        if v.n != alpha.n:
            raise DimensionMismatch(f"point of dimension {v.n} for exponents of length {alpha.n}")


def _in_cn_alpha(alpha: ExponentVector, z: ComplexVector) -> bool:
    return all(zj != 0 for aj, zj in zip(alpha.alpha, z) if aj < 0)


def monomial_modulus(alpha: ExponentVector, z: ComplexVector) -> float:
    """|z^alpha| for z in C^n(alpha)."""
    _check_dims(alpha, z)
    if not _in_cn_alpha(alpha, z):
        raise DomainViolation("zero coordinate with negative exponent")
    if any(zj == 0 for zj in z):
        return 0.0
    # Sum of logs avoids spurious overflow for mixed-sign exponents.
    return math.exp(math.fsum(aj * math.log(abs(zj)) for aj, zj in zip(alpha.alpha, z)))


def monomial_power(alpha: ExponentVector, z: ComplexVector) -> complex | float:
    """z^alpha (complex) in the integer class, |z^alpha| otherwise."""
    if not alpha.is_integral:
        return monomial_modulus(alpha, z)
    _check_dims(alpha, z)
    if not _in_cn_alpha(alpha, z):
        raise DomainViolation("zero coordinate with negative exponent")
    value = 1 + 0j
    for aj, zj in zip(alpha.alpha, z):
        value *= zj ** aj
    return value


def contains(alpha: ExponentVector, z: ComplexVector) -> bool:
    _check_dims(alpha, z)
    return _in_cn_alpha(alpha, z) and monomial_modulus(alpha, z) < 1


def _require_member(alpha: ExponentVector, z: ComplexVector, name: str) -> None:
    if not _in_cn_alpha(alpha, z):
        raise DomainViolation(f"{name} has a zero coordinate where the exponent is negative")
    if not monomial_modulus(alpha, z) < 1:
        raise DomainViolation(f"{name} = ({z}) is not in D_alpha")


def classify(alpha: ExponentVector, a: ComplexVector) -> PointClass:
    _check_dims(alpha, a)
    _require_member(alpha, a, "a")
    xi = frozenset(j for j, (aj, zj) in enumerate(zip(alpha.alpha, a)) if aj > 0 and zj == 0)
    if not xi:
        return PointClass(xi, 0, 1, None)
    exps = [alpha.alpha[j] for j in sorted(xi)]
    r = sum(exps) if alpha.is_integral else math.fsum(exps)
    return PointClass(xi, len(xi), r, min(exps))


@dataclass(frozen=True)
class ReinhardtPoint:
    alpha: ExponentVector
    point: ComplexVector

    @property
    def point_class(self) -> PointClass:
        return classify(self.alpha, self.point)


def taylor_lowest_coefficient(alpha: ExponentVector, a: ComplexVector,
                              X: ComplexVector) -> tuple[complex, int]:
    """Leading coefficient of lambda -> (a + lambda X)^alpha - a^alpha at 0.

    Returns ``(c, order)``.  With vanishing coordinates the order is r(a) and
    the coefficient is prod_{j not in Xi} a_j^alpha_j * prod_{j in Xi} X_j^alpha_j;
    otherwise it is the first derivative a^alpha * sum_j alpha_j X_j / a_j.
    """
    if not alpha.is_integral:
        raise UnsupportedKind("Taylor coefficients are only defined for integer exponents")
    _check_dims(alpha, a, X)
    pc = classify(alpha, a)
    if pc.sigma == 0:
        power = monomial_power(alpha, a)
        return power * sum(aj * Xj / zj for aj, Xj, zj in zip(alpha.alpha, X, a)), 1
    c = 1 + 0j
    for j, (aj, zj, Xj) in enumerate(zip(alpha.alpha, a, X)):
        c *= Xj ** aj if j in pc.xi else zj ** aj
    return c, int(pc.r)


def _positive_integer(x: Fraction | float) -> bool:
    if isinstance(x, Fraction):
        return x.denominator == 1 and x >= 1
    k = round(x)
    return k >= 1 and abs(x - k) <= _INT_TOL * max(1.0, abs(x))


def _ratio(alpha: ExponentVector, factor: int, j: int, r) -> Fraction | float:
    if alpha.is_integral:
        return Fraction(factor * alpha.alpha[j], int(r))
    return factor * alpha.alpha[j] / r


def eval_function(alpha: ExponentVector, kind: MetricKind, a: ComplexVector,
                  z: ComplexVector) -> MetricValue:
    """Möbius, Green and Sibony (any order) functions with pole at ``a``."""
    if not kind.is_function:
        raise UnsupportedKind(f"{kind} is a metric; use eval_metric")
    _check_dims(alpha, a, z)
    pc = classify(alpha, a)
    _require_member(alpha, z, "z")

    if alpha.is_integral:
        m = mobius_distance(monomial_power(alpha, a), monomial_power(alpha, z))
        g = m ** (1.0 / pc.r)
        sibony = m if pc.sigma == 0 else abs(monomial_power(alpha, z)) ** (1.0 / pc.mu)
    else:
        modulus = monomial_modulus(alpha, z)
        m = 0.0
        g = 0.0 if pc.sigma == 0 else modulus ** (1.0 / pc.r)
        sibony = 0.0 if pc.sigma == 0 else modulus ** (1.0 / pc.mu)

    if kind.kind is Kind.MOBIUS:
        return metric_value_exact(m)
    if kind.kind is Kind.GREEN:
        return metric_value_exact(g)
    if kind.order == 2:
        return metric_value_exact(sibony)
    if pc.sigma <= 1:
        return metric_value_exact(g)
    return MetricValue(m, g, Status.UNKNOWN)


def _azukawa(alpha: ExponentVector, pc: PointClass, a: ComplexVector,
             X: ComplexVector) -> tuple[float, float]:
    """(Carathéodory, Azukawa) values at (a; X)."""
    if alpha.is_integral:
        c, order = taylor_lowest_coefficient(alpha, a, X)
        length = gamma_disc(monomial_power(alpha, a), c)
        return (length if order == 1 else 0.0), length ** (1.0 / order)
    if pc.sigma == 0:
        return 0.0, 0.0
    logs = []
    for j, (aj, zj, Xj) in enumerate(zip(alpha.alpha, a, X)):
        w = abs(Xj) if j in pc.xi else abs(zj)
        if w == 0:
            return 0.0, 0.0
        logs.append(aj * math.log(w))
    return 0.0, math.exp(math.fsum(logs) / pc.r)


def eval_metric(alpha: ExponentVector, kind: MetricKind, a: ComplexVector,
                X: ComplexVector) -> MetricValue:
    """Carathéodory, Azukawa and even-order Sibony pseudometrics at (a; X)."""
    if kind.is_function:
        raise UnsupportedKind(f"{kind} is a function; use eval_function")
    _check_dims(alpha, a, X)
    pc = classify(alpha, a)
    gamma, azukawa = _azukawa(alpha, pc, a, X)

    if kind.kind is Kind.CARATHEODORY:
        return metric_value_exact(gamma)
    if kind.kind is Kind.AZUKAWA:
        return metric_value_exact(azukawa)
    if kind.order % 2:
        raise InvalidOrder(f"only even Sibony orders are evaluated here, got {kind.order}")
    if kind.order == 2:
        if alpha.is_integral:
            return metric_value_exact(azukawa if pc.sigma <= 1 else 0.0)
        return metric_value_exact(azukawa if pc.sigma == 1 else 0.0)

    p = kind.order // 2
    if pc.sigma <= 1:
        return metric_value_exact(azukawa)
    xi = sorted(pc.xi)
    if all(_positive_integer(_ratio(alpha, p, j, pc.r)) for j in xi):
        return metric_value_exact(azukawa)
    if any(not _positive_integer(_ratio(alpha, 2 * p, j, pc.r)) for j in xi):
        return MetricValue.proven(0.0, ZERO_BRANCH_CITATION)
    return MetricValue(gamma, azukawa, Status.UNKNOWN)


# --- exclusion sets ----------------------------------------------------------


def _as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, float):
        return Fraction(q)
    return Fraction(q)


def in_exclusion_set(q, p: int) -> bool:
    """Whether q = (2p - k)/k for some k in {1, ..., 2p - 1}.

    The set is symmetric under q -> 1/q, so it coincides with
    {k/(2p - k)}.  Solved for k directly: k = 2p/(q + 1).
    """
    q = _as_fraction(q)
    if q <= 0:
        raise InvalidValue("q must be positive")
    if p < 1:
        raise InvalidValue("p must be a positive integer")
    k = Fraction(2 * p) / (q + 1)
    return k.denominator == 1 and 1 <= k <= 2 * p - 1


def violates_cs(alpha: Sequence, s: int, p: int) -> bool:
    """Whether 2p*alpha_j = k*(alpha_s + ... + alpha_{n-1}) for some 1 <= k < 2p, j >= s.

    ``s`` counts the nonvanishing leading coordinates (0-based tail start).
    Floats are compared exactly through their binary rational values.
    """
    vals = [_as_fraction(a) for a in alpha]
    tail = vals[s:]
    if not tail:
        raise InvalidValue("s must leave at least one vanishing coordinate")
    total = sum(tail)
    for aj in tail:
        if total == 0:
            return True
        k = 2 * p * aj / total
        if k.denominator == 1 and 1 <= k < 2 * p:
            return True
    return False


def in_cs(alpha: Sequence, s: int, p_max: int) -> bool:
    """Membership in the dense set C_s, checked for orders p <= p_max."""
    vals = [float(a) for a in alpha]
    if len(vals) - s < 2:
        raise InvalidValue("C_s is defined for s <= n - 2")
    if any(v == 0 for v in vals[:s]) or any(v <= 0 for v in vals[s:]):
        return False
    return not any(violates_cs(alpha, s, p) for p in range(1, p_max + 1))
