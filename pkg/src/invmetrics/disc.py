"""Closed forms on the unit disc and the normalization values of every metric kind."""

from __future__ import annotations

from .foundations import (
    DomainViolation,
    InvalidKind,
    InvalidValue,
    Kind,
    MetricKind,
    MetricValue,
    metric_value_exact,
)

__all__ = [
    "EDGE",
    "check_disc_point",
    "mobius_distance",
    "gamma_disc",
    "disc_automorphism",
    "disc_reference_value",
]

# Points this close to the circle are refused, not clamped.
EDGE = 1.0 - 1e-15

ODD_ORDER_CITATION = "Sibony pseudometrics of odd order vanish identically"


def check_disc_point(a: complex) -> complex:
    a = complex(a)
    if not abs(a) < EDGE:
        raise DomainViolation(f"{a!r} is not inside the unit disc")
    return a


def mobius_distance(a: complex, z: complex) -> float:
    """Möbius distance |(z - a) / (1 - conj(a) z)| between two disc points."""
    a, z = check_disc_point(a), check_disc_point(z)
    return abs(z - a) / abs(1 - a.conjugate() * z)


def gamma_disc(a: complex, Y: complex) -> float:
    """Poincaré (Carathéodory-Reiffen) length of the tangent vector Y at a."""
    a = check_disc_point(a)
    return abs(complex(Y)) / (1 - abs(a) ** 2)


def disc_automorphism(c: complex):
    """The automorphism w -> (w - c) / (1 - conj(c) w)."""
    c = check_disc_point(c)
    return lambda w: (w - c) / (1 - c.conjugate() * w)


def disc_reference_value(kind: MetricKind, t_or_X: float) -> MetricValue:
    """Value of ``kind`` on the disc at base point 0.

    Function kinds are evaluated at the point ``t`` and metric kinds at the
    direction ``X``; every kind is normalized to the identity except the odd
    order Sibony pseudometrics, which vanish.
    """
    if not isinstance(kind, MetricKind):
        raise InvalidKind(f"not a metric kind: {kind!r}")
    t = float(t_or_X)
    if t < 0:
        raise InvalidValue("disc reference values take t >= 0")
    if kind.is_function:
        if t >= 1:
            raise DomainViolation("function kinds need 0 <= t < 1")
        return metric_value_exact(t)
    if kind.kind is Kind.SIBONY_METRIC and kind.order % 2 == 1:
        return MetricValue.proven(0.0, ODD_ORDER_CITATION)
    return metric_value_exact(t)
