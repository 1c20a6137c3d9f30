"""Uniform front end over the domain families and JSON spec ingestion."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Protocol, Union

import jsonschema

from . import balanced, disc, hartogs, reinhardt
from .foundations import (
    ComplexVector,
    DimensionMismatch,
    DomainViolation,
    InvalidValue,
    Kind,
    MetricKind,
    MetricValue,
    UnsupportedKind,
    metric_value_exact,
)

__all__ = [
    "SpecError",
    "Domain",
    "DiscDomain",
    "ReinhardtDomain",
    "BalancedDomain",
    "HartogsAdapter",
    "load_schema",
    "parse_domain",
    "parse_h",
    "h_to_dict",
]


class SpecError(InvalidValue):
    """A domain spec document failed schema validation or construction."""


class Domain(Protocol):
    n: int

    def contains(self, z: ComplexVector) -> bool: ...

    def function(self, kind: MetricKind, a: ComplexVector, z: ComplexVector) -> MetricValue: ...

    def metric(self, kind: MetricKind, a: ComplexVector, X: ComplexVector) -> MetricValue: ...

    def to_dict(self) -> dict: ...


def _dims(n: int, *vectors: ComplexVector) -> None:
    for v in vectors:
        if v.n != n:
            raise DimensionMismatch(f"expected a point of C^{n}, got C^{v.n}")


@dataclass(frozen=True)
class DiscDomain:
    """The unit disc, where every function kind is the Möbius distance."""

    n: int = 1

    def contains(self, z: ComplexVector) -> bool:
        _dims(1, z)
        return abs(z[0]) < disc.EDGE

    def function(self, kind: MetricKind, a: ComplexVector, z: ComplexVector) -> MetricValue:
        if not kind.is_function:
            raise UnsupportedKind(f"{kind} is a metric")
        _dims(1, a, z)
        return metric_value_exact(disc.mobius_distance(a[0], z[0]))

    def metric(self, kind: MetricKind, a: ComplexVector, X: ComplexVector) -> MetricValue:
        if kind.is_function:
            raise UnsupportedKind(f"{kind} is a function")
        _dims(1, a, X)
        if kind.kind is Kind.SIBONY_METRIC and kind.order % 2:
            disc.check_disc_point(a[0])
            return MetricValue.proven(0.0, disc.ODD_ORDER_CITATION)
        return metric_value_exact(disc.gamma_disc(a[0], X[0]))

    def to_dict(self) -> dict:
        return {"type": "disc"}


@dataclass(frozen=True)
class ReinhardtDomain:
    alpha: reinhardt.ExponentVector

    @property
    def n(self) -> int:
        return self.alpha.n

    def contains(self, z: ComplexVector) -> bool:
        return reinhardt.contains(self.alpha, z)

    def function(self, kind: MetricKind, a: ComplexVector, z: ComplexVector) -> MetricValue:
        return reinhardt.eval_function(self.alpha, kind, a, z)

    def metric(self, kind: MetricKind, a: ComplexVector, X: ComplexVector) -> MetricValue:
        return reinhardt.eval_metric(self.alpha, kind, a, X)

    def to_dict(self) -> dict:
        return self.alpha.to_dict()


@dataclass(frozen=True)
class BalancedDomain:
    """{h < 1}; values are available with base point 0 only."""

    h: balanced.MinkowskiSpec
    pseudoconvex: bool = True

    @property
    def n(self) -> int:
        return balanced.spec_dim(self.h)

    def contains(self, z: ComplexVector) -> bool:
        return balanced.minkowski_eval(self.h, z) < 1

    def _base(self, a: ComplexVector) -> None:
        _dims(self.n, a)
        if any(c != 0 for c in a):
            raise UnsupportedKind("balanced-domain values are known at base point 0 only")

    def function(self, kind: MetricKind, a: ComplexVector, z: ComplexVector) -> MetricValue:
        if not kind.is_function:
            raise UnsupportedKind(f"{kind} is a metric")
        self._base(a)
        return balanced.balanced_metrics_at_zero(self.h, self.pseudoconvex, kind, z)

    def metric(self, kind: MetricKind, a: ComplexVector, X: ComplexVector) -> MetricValue:
        if kind.is_function:
            raise UnsupportedKind(f"{kind} is a function")
        self._base(a)
        return balanced.balanced_metrics_at_zero(self.h, self.pseudoconvex, kind, X)

    def to_dict(self) -> dict:
        out = {"type": "balanced", "h": h_to_dict(self.h)}
        if not self.pseudoconvex:
            out["pseudoconvex"] = False
        return out


@dataclass(frozen=True)
class HartogsAdapter:
    """Hartogs counterexamples: only whitelisted proven values are returned."""

    domain: hartogs.HartogsDomain

    @property
    def n(self) -> int:
        return self.domain.n

    def contains(self, z: ComplexVector) -> bool:
        state = hartogs.membership(self.domain, z)
        if state is hartogs.Membership.INDETERMINATE:
            raise DomainViolation(f"membership of ({z}) is within the series error")
        return state is hartogs.Membership.IN

    def function(self, kind: MetricKind, a: ComplexVector, z: ComplexVector) -> MetricValue:
        if not kind.is_function:
            raise UnsupportedKind(f"{kind} is a metric")
        return hartogs.proven_value(self.domain, kind, a, z)

    def metric(self, kind: MetricKind, a: ComplexVector, X: ComplexVector) -> MetricValue:
        if kind.is_function:
            raise UnsupportedKind(f"{kind} is a function")
        return hartogs.proven_value(self.domain, kind, a, X)

    def to_dict(self) -> dict:
        return self.domain.to_dict()


AnyDomain = Union[DiscDomain, ReinhardtDomain, BalancedDomain, HartogsAdapter]


@lru_cache(maxsize=None)
def load_schema(name: str = "domain") -> dict:
    path = resources.files("invmetrics").joinpath("schemas").joinpath(f"{name}.schema.json")
    return json.loads(path.read_text())


@lru_cache(maxsize=None)
def _validator(name: str) -> jsonschema.protocols.Validator:
    schema = load_schema(name)
    cls = jsonschema.validators.validator_for(schema)
    cls.check_schema(schema)
    return cls(schema)


def parse_h(doc: dict) -> balanced.MinkowskiSpec:
    scale = float(doc.get("scale", 1.0))
    kind = doc["kind"]
    if kind == "weighted-norm":
        q = doc.get("q", 2.0)
        return balanced.WeightedNorm(tuple(doc["weights"]), float("inf") if q == "inf" else q, scale)
    if kind == "monomial":
        return balanced.Monomial(tuple(doc["theta"]), scale)
    return balanced.MaxOf(tuple(parse_h(t) for t in doc["terms"]), scale)


def h_to_dict(h: balanced.MinkowskiSpec) -> dict:
    if isinstance(h, balanced.WeightedNorm):
        q = "inf" if h.q == float("inf") else h.q
        return {"kind": "weighted-norm", "weights": list(h.weights), "q": q, "scale": h.scale}
    if isinstance(h, balanced.Monomial):
        return {"kind": "monomial", "theta": list(h.theta), "scale": h.scale}
    return {"kind": "max", "terms": [h_to_dict(t) for t in h.terms], "scale": h.scale}


def parse_domain(doc: dict) -> AnyDomain:
    """Validate a spec document against the shipped schema and build the domain.

    Raises:
        SpecError: on schema violations or inconsistent parameters.
    """
    try:
        key = json.dumps(doc, sort_keys=True)
    except (TypeError, ValueError):
        raise SpecError("domain spec is not a JSON document") from None
    return _parse_cached(key)


@lru_cache(maxsize=256)
def _parse_cached(key: str) -> AnyDomain:
    doc = json.loads(key)
    error = jsonschema.exceptions.best_match(_validator("domain").iter_errors(doc))
    if error is not None:
        raise SpecError(f"invalid domain spec: {error.message}")
    try:
        kind = doc["type"]
        if kind == "disc":
            return DiscDomain()
        if kind == "reinhardt":
            cls = doc.get("class")
            if cls is None:
                alpha = reinhardt.ExponentVector.detect(doc["alpha"])
            else:
                alpha = reinhardt.ExponentVector(tuple(doc["alpha"]), cls)
            return ReinhardtDomain(alpha)
        if kind == "balanced":
            return BalancedDomain(parse_h(doc["h"]), doc.get("pseudoconvex", True))
        return HartogsAdapter(hartogs.HartogsDomain(doc["variant"], doc.get("k"),
                                                    doc.get("truncation")))
    except (InvalidValue, DimensionMismatch) as exc:
        raise SpecError(str(exc)) from None
