"""Shared vocabulary: points, metric kinds, evaluation results and holomorphic maps."""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence, Union

__all__ = [
    "InvariantError",
    "DomainViolation",
    "DimensionMismatch",
    "InvalidValue",
    "InvalidKind",
    "UnsupportedKind",
    "ComplexVector",
    "Kind",
    "MetricKind",
    "Status",
    "MetricValue",
    "CandidateFunction",
    "MonomialMap",
    "CoordinateEmbedding",
    "Projection",
    "Curve",
    "HolomorphicMapSpec",
    "apply_map",
    "map_derivative",
    "compose_monomial",
    "map_to_dict",
    "map_from_dict",
    "metric_value_exact",
    "vec",
]


class InvariantError(Exception):
    """Base class for every error raised by this package."""


class DomainViolation(InvariantError, ValueError):
    """A point lies outside the set on which an object is defined."""


class DimensionMismatch(InvariantError, ValueError):
    pass


class InvalidValue(InvariantError, ValueError):
    pass


class InvalidKind(InvariantError, ValueError):
    pass


class UnsupportedKind(InvariantError, ValueError):
    """The evaluator exists but does not handle this metric kind."""


Number = Union[complex, float, int]


@dataclass(frozen=True)
class ComplexVector:
    """An immutable point of C^n (or a direction in C^n)."""

    entries: tuple[complex, ...]

    def __post_init__(self) -> None:
        values = tuple(complex(v) for v in self.entries)
        if not values:
            raise DimensionMismatch("a ComplexVector needs at least one entry")
        for v in values:
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise InvalidValue(f"non-finite coordinate {v!r}")
        object.__setattr__(self, "entries", values)

    @classmethod
    def of(cls, *values: Number) -> "ComplexVector":
        return cls(tuple(values))

    @classmethod
    def zeros(cls, n: int) -> "ComplexVector":
        return cls((0j,) * n)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[complex]:
        return iter(self.entries)

    def __getitem__(self, i: int) -> complex:
        return self.entries[i]

    def _check(self, other: "ComplexVector") -> None:
        if other.n != self.n:
            raise DimensionMismatch(f"dimensions {self.n} and {other.n} differ")

    def __add__(self, other: "ComplexVector") -> "ComplexVector":
        self._check(other)
        return ComplexVector(tuple(a + b for a, b in zip(self, other)))

    def __sub__(self, other: "ComplexVector") -> "ComplexVector":
        self._check(other)
        return ComplexVector(tuple(a - b for a, b in zip(self, other)))

    def scale(self, lam: Number) -> "ComplexVector":
        return ComplexVector(tuple(lam * a for a in self))

    def rotate(self, phases: Sequence[Number]) -> "ComplexVector":
        """Coordinatewise product with ``phases`` (typically unit-modulus)."""
        if len(phases) != self.n:
            raise DimensionMismatch("phase vector has wrong length")
        return ComplexVector(tuple(p * a for p, a in zip(phases, self)))

    def norm(self) -> float:
        return math.sqrt(math.fsum(abs(a) ** 2 for a in self))

    def moduli(self) -> tuple[float, ...]:
        return tuple(abs(a) for a in self)

    def to_pairs(self) -> list[list[float]]:
        return [[a.real, a.imag] for a in self]

    def __str__(self) -> str:
        return ",".join(f"{a.real:.17g}:{a.imag:.17g}" for a in self)

    @classmethod
    def parse(cls, text: str) -> "ComplexVector":
        """Inverse of ``str``: comma-separated ``re:im`` pairs (``re`` alone means im = 0)."""
        entries = []
        for item in text.split(","):
            item = item.strip()
            if not item:
                raise InvalidValue(f"empty coordinate in {text!r}")
            re_part, sep, im_part = item.partition(":")
            try:
                entries.append(complex(float(re_part), float(im_part) if sep else 0.0))
            except ValueError:
                raise InvalidValue(f"cannot parse coordinate {item!r}") from None
        return cls(tuple(entries))


def vec(*values: Number) -> ComplexVector:
    """Shorthand for ``ComplexVector.of``."""
    return ComplexVector.of(*values)


class Kind(enum.Enum):
    MOBIUS = "mobius"
    CARATHEODORY = "caratheodory"
    GREEN = "green"
    AZUKAWA = "azukawa"
    SIBONY_FUNCTION = "sibony-function"
    SIBONY_METRIC = "sibony-metric"


_FUNCTION_KINDS = {Kind.MOBIUS, Kind.GREEN, Kind.SIBONY_FUNCTION}


@dataclass(frozen=True)
class MetricKind:
    """One of the invariant objects.

    The Sibony function and pseudometric are stored as order-2 members of the
    higher-order families, so ``MetricKind.sibony_function()`` compares equal
    to ``MetricKind.sibony_function(2)``.  For metric kinds ``order`` is the
    full superscript (``2p`` for the even family, any value for odd ones).
    """

    kind: Kind
    order: int | None = None

    def __post_init__(self) -> None:
        if self.kind in (Kind.SIBONY_FUNCTION, Kind.SIBONY_METRIC):
            order = 2 if self.order is None else self.order
            if isinstance(order, bool) or not isinstance(order, int) or order < 1:
                raise InvalidKind(f"Sibony order must be a positive integer, got {self.order!r}")
            object.__setattr__(self, "order", order)
        elif self.order is not None:
            raise InvalidKind(f"{self.kind.value} takes no order")

    @classmethod
    def mobius(cls) -> "MetricKind":
        return cls(Kind.MOBIUS)

    @classmethod
    def caratheodory(cls) -> "MetricKind":
        return cls(Kind.CARATHEODORY)

    @classmethod
    def green(cls) -> "MetricKind":
        return cls(Kind.GREEN)

    @classmethod
    def azukawa(cls) -> "MetricKind":
        return cls(Kind.AZUKAWA)

    @classmethod
    def sibony_function(cls, p: int = 2) -> "MetricKind":
        return cls(Kind.SIBONY_FUNCTION, p)

    @classmethod
    def sibony_metric(cls, order: int = 2) -> "MetricKind":
        return cls(Kind.SIBONY_METRIC, order)

    @classmethod
    def parse(cls, name: str, order: int | None = None) -> "MetricKind":
        key = name.strip().lower().replace("_", "-")
        aliases = {"sibony": "sibony-function", "carathéodory": "caratheodory",
                   "möbius": "mobius"}
        key = aliases.get(key, key)
        try:
            kind = Kind(key)
        except ValueError:
            raise InvalidKind(f"unknown metric kind {name!r}") from None
        return cls(kind, order)

    @property
    def is_function(self) -> bool:
        return self.kind in _FUNCTION_KINDS

    @property
    def is_metric(self) -> bool:
        return not self.is_function

    def __str__(self) -> str:
        if self.order is None:
            return self.kind.value
        return f"{self.kind.value}({self.order})"


class Status(enum.Enum):
    EXACT = "Exact"
    PROVEN_EXACT = "ProvenExact"
    BOUNDS = "Bounds"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class MetricValue:
    """Result of an evaluation: an exact number or an enclosing interval.

    ``certified_error`` is nonzero only when an exact value was computed from
    a truncated series; it bounds the numerical error of ``lower``/``upper``.
    """

    lower: float
    upper: float
    status: Status
    citation: str | None = None
    certified_error: float = 0.0

    def __post_init__(self) -> None:
        lo, hi = float(self.lower), float(self.upper)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidValue("metric values must be finite")
        if lo < 0 or hi < 0:
            raise InvalidValue(f"metric values must be nonnegative, got [{lo}, {hi}]")
        if lo > hi:
            raise InvalidValue(f"lower bound {lo} exceeds upper bound {hi}")
        if self.status in (Status.EXACT, Status.PROVEN_EXACT) and lo != hi:
            raise InvalidValue("exact values need lower == upper")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def is_exact(self) -> bool:
        return self.status in (Status.EXACT, Status.PROVEN_EXACT)

    @property
    def value(self) -> float:
        if not self.is_exact:
            raise InvalidValue(f"{self.status.value} result has no single value")
        return self.lower

    @classmethod
    def bounds(cls, lower: float, upper: float, status: Status = Status.BOUNDS,
               citation: str | None = None) -> "MetricValue":
        return cls(lower, upper, status, citation)

    @classmethod
    def proven(cls, value: float, citation: str, certified_error: float = 0.0) -> "MetricValue":
        return cls(value, value, Status.PROVEN_EXACT, citation, certified_error)

    def intersect(self, other: "MetricValue") -> "MetricValue":
        """Combine two enclosures of the same quantity."""
        lo, hi = max(self.lower, other.lower), min(self.upper, other.upper)
        if lo > hi:
            raise InvalidValue(f"disjoint enclosures [{self.lower}, {self.upper}] and "
                               f"[{other.lower}, {other.upper}]")
        if self.is_exact:
            return self
        if other.is_exact:
            return other
        return MetricValue(lo, hi, Status.BOUNDS)

    def to_dict(self) -> dict:
        out: dict = {"lower": self.lower, "upper": self.upper, "status": self.status.value}
        if self.citation:
            out["citation"] = self.citation
        if self.certified_error:
            out["certified_error"] = self.certified_error
        return out


def metric_value_exact(v: float) -> MetricValue:
    v = float(v)
    if not math.isfinite(v) or v < 0:
        raise InvalidValue(f"exact metric value must be finite and >= 0, got {v}")
    return MetricValue(v, v, Status.EXACT)


class CandidateFamily(enum.Enum):
    MONOMIAL_HARTOGS = "monomial-hartogs"
    POWER_OF_GREEN = "power-of-green"
    CUSTOM = "custom"


@dataclass(frozen=True)
class CandidateFunction:
    """A member ``v`` of one of the candidate families at base point ``base``."""

    family: CandidateFamily
    evaluator: Callable[[ComplexVector], float] = field(compare=False)
    base: ComplexVector
    order: int = 1
    eps: float = 1.0

    def __post_init__(self) -> None:
        if self.order < 1:
            raise InvalidValue("candidate order must be positive")
        if not self.eps > 0:
            raise InvalidValue("candidate exponent tweak must be positive")

    def __call__(self, z: ComplexVector) -> float:
        return self.evaluator(z)


# --- holomorphic maps -------------------------------------------------------


def _ipow(z: complex, k: int) -> complex:
    if k < 0 and z == 0:
        raise DomainViolation("negative exponent at a zero coordinate")
    if k == 0:
        return 1 + 0j
    return z ** k


@dataclass(frozen=True)
class MonomialMap:
    """F_i(z) = c_i * prod_j z_j ** beta[i][j] with integer exponents."""

    coeffs: tuple[complex, ...]
    exponents: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        coeffs = tuple(complex(c) for c in self.coeffs)
        rows = tuple(tuple(self._as_int(b) for b in row) for row in self.exponents)
        if len(coeffs) != len(rows) or not rows:
            raise DimensionMismatch("need one coefficient per exponent row")
        if len({len(r) for r in rows}) != 1:
            raise DimensionMismatch("ragged exponent matrix")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "exponents", rows)

    @staticmethod
    def _as_int(b) -> int:
        if isinstance(b, float) and b.is_integer():
            b = int(b)
        if not isinstance(b, int) or isinstance(b, bool):
            raise InvalidValue(f"monomial exponents must be integers, got {b!r}")
        return b

    @property
    def source_dim(self) -> int:
        return len(self.exponents[0])

    @property
    def target_dim(self) -> int:
        return len(self.coeffs)


@dataclass(frozen=True)
class CoordinateEmbedding:
    """Inserts fixed values: the source coordinates fill the free slots in order.

    ``fixed`` maps 0-based target positions to constants.
    """

    target_dim: int
    fixed: tuple[tuple[int, complex], ...]

    def __post_init__(self) -> None:
        fixed = tuple(sorted((int(i), complex(v)) for i, v in self.fixed))
        if any(not 0 <= i < self.target_dim for i, _ in fixed):
            raise DimensionMismatch("fixed position outside the target")
        if len({i for i, _ in fixed}) != len(fixed):
            raise DimensionMismatch("duplicate fixed position")
        object.__setattr__(self, "fixed", fixed)

    @property
    def source_dim(self) -> int:
        return self.target_dim - len(self.fixed)


@dataclass(frozen=True)
class Projection:
    """Keeps the listed 0-based coordinates."""

    indices: tuple[int, ...]
    source_dim: int

    def __post_init__(self) -> None:
        idx = tuple(int(i) for i in self.indices)
        if not idx or any(not 0 <= i < self.source_dim for i in idx):
            raise DimensionMismatch("projection index out of range")
        object.__setattr__(self, "indices", idx)

    @property
    def target_dim(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class Curve:
    """A holomorphic curve from a planar source.

    Affine form: ``lambda -> base + lambda * direction``.  Monomial form
    (``powers`` given): ``lambda -> (c_j * lambda ** k_j)_j`` with ``c = direction``.
    """

    direction: ComplexVector
    base: ComplexVector | None = None
    powers: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.powers is not None:
            if self.base is not None:
                raise InvalidValue("a monomial curve has no base point")
            if len(self.powers) != self.direction.n or any(k < 0 for k in self.powers):
                raise InvalidValue("monomial curve powers must be nonnegative, one per coordinate")
            object.__setattr__(self, "powers", tuple(int(k) for k in self.powers))
        elif self.base is None:
            object.__setattr__(self, "base", ComplexVector.zeros(self.direction.n))
        elif self.base.n != self.direction.n:
            raise DimensionMismatch("curve base and direction differ in dimension")

    source_dim = 1

    @property
    def target_dim(self) -> int:
        return self.direction.n


HolomorphicMapSpec = Union[MonomialMap, CoordinateEmbedding, Projection, Curve]


def _check_dim(F: HolomorphicMapSpec, z: ComplexVector) -> None:
    if z.n != F.source_dim:
        raise DimensionMismatch(f"map expects dimension {F.source_dim}, got {z.n}")


def apply_map(F: HolomorphicMapSpec, z: ComplexVector) -> ComplexVector:
    _check_dim(F, z)
    if isinstance(F, MonomialMap):
        out = []
        for c, row in zip(F.coeffs, F.exponents):
            value = c
            for zj, b in zip(z, row):
                value *= _ipow(zj, b)
            out.append(value)
        return ComplexVector(tuple(out))
    if isinstance(F, CoordinateEmbedding):
        fixed = dict(F.fixed)
        free = iter(z)
        return ComplexVector(tuple(fixed[i] if i in fixed else next(free)
                                   for i in range(F.target_dim)))
    if isinstance(F, Projection):
        return ComplexVector(tuple(z[i] for i in F.indices))
    if isinstance(F, Curve):
        lam = z[0]
        if F.powers is None:
            return F.base + F.direction.scale(lam)
        return ComplexVector(tuple(c * _ipow(lam, k) for c, k in zip(F.direction, F.powers)))
    raise TypeError(f"not a holomorphic map spec: {F!r}")


def map_derivative(F: HolomorphicMapSpec, a: ComplexVector, X: ComplexVector) -> ComplexVector:
    """The complex derivative F'(a)X, computed exactly from the map's structure."""
    _check_dim(F, a)
    if X.n != a.n:
        raise DimensionMismatch("direction and base point differ in dimension")
    if isinstance(F, MonomialMap):
        out = []
        for c, row in zip(F.coeffs, F.exponents):
            total = 0j
            for k, (Xk, bk) in enumerate(zip(X, row)):
                if bk == 0 or Xk == 0:
                    continue
                term = c * bk * _ipow(a[k], bk - 1)
                for j, (aj, bj) in enumerate(zip(a, row)):
                    if j != k:
                        term *= _ipow(aj, bj)
                total += term * Xk
            out.append(total)
        return ComplexVector(tuple(out))
    if isinstance(F, CoordinateEmbedding):
        return apply_map(CoordinateEmbedding(F.target_dim, tuple((i, 0j) for i, _ in F.fixed)), X)
    if isinstance(F, Projection):
        return apply_map(F, X)
    if isinstance(F, Curve):
        if F.powers is None:
            return F.direction.scale(X[0])
        lam = a[0]
        return ComplexVector(tuple(c * k * _ipow(lam, k - 1) * X[0] if k else 0j
                                   for c, k in zip(F.direction, F.powers)))
    raise TypeError(f"not a holomorphic map spec: {F!r}")


def compose_monomial(F: MonomialMap, G: MonomialMap) -> MonomialMap:
    """The monomial map F o G."""
    if F.source_dim != G.target_dim:
        raise DimensionMismatch("cannot compose: dimensions do not chain")
    coeffs = []
    rows = []
    for c, row in zip(F.coeffs, F.exponents):
        coeff = c
        for d, b in zip(G.coeffs, row):
            coeff *= _ipow(d, b)
        coeffs.append(coeff)
        rows.append(tuple(sum(b * G.exponents[j][k] for j, b in enumerate(row))
                          for k in range(G.source_dim)))
    return MonomialMap(tuple(coeffs), tuple(rows))


def unit_phases(angles: Iterable[float]) -> tuple[complex, ...]:
    return tuple(cmath.exp(1j * t) for t in angles)


def _pairs(values: Iterable[complex]) -> list[list[float]]:
    return [[complex(v).real, complex(v).imag] for v in values]


def _unpairs(pairs: Iterable[Sequence[float]]) -> tuple[complex, ...]:
    return tuple(complex(re, im) for re, im in pairs)


def map_to_dict(F: HolomorphicMapSpec) -> dict:
    """JSON-friendly form of a map; complex numbers become [re, im] pairs."""
    if isinstance(F, MonomialMap):
        return {"map": "monomial", "coeffs": _pairs(F.coeffs),
                "exponents": [list(r) for r in F.exponents]}
    if isinstance(F, CoordinateEmbedding):
        return {"map": "embedding", "target_dim": F.target_dim,
                "fixed": [[i, [v.real, v.imag]] for i, v in F.fixed]}
    if isinstance(F, Projection):
        return {"map": "projection", "indices": list(F.indices), "source_dim": F.source_dim}
    if isinstance(F, Curve):
        out = {"map": "curve", "direction": F.direction.to_pairs()}
        if F.powers is None:
            out["base"] = F.base.to_pairs()
        else:
            out["powers"] = list(F.powers)
        return out
    raise TypeError(f"not a holomorphic map spec: {F!r}")


def map_from_dict(doc: dict) -> HolomorphicMapSpec:
    kind = doc["map"]
    if kind == "monomial":
        return MonomialMap(_unpairs(doc["coeffs"]), tuple(tuple(r) for r in doc["exponents"]))
    if kind == "embedding":
        return CoordinateEmbedding(doc["target_dim"],
                                   tuple((i, complex(*v)) for i, v in doc["fixed"]))
    if kind == "projection":
        return Projection(tuple(doc["indices"]), doc["source_dim"])
    if kind == "curve":
        direction = ComplexVector(_unpairs(doc["direction"]))
        if "powers" in doc:
            return Curve(direction, powers=tuple(doc["powers"]))
        return Curve(direction, ComplexVector(_unpairs(doc["base"])))
    raise InvalidValue(f"unknown map type {kind!r}")
