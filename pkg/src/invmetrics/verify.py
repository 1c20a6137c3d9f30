"""Seeded property checks of the inequality chains, contractibility, normalizations,
rotation invariance and numerical oracles.

Every sampled case is a plain JSON-serializable dict (points as ``re:im``
strings with 17 significant digits), so a failure's reproducer replays
bit-for-bit through :func:`replay`.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import numerics
from .disc import disc_reference_value
from .balanced import minkowski_eval
from .domains import DiscDomain, parse_domain
from .foundations import (
    ComplexVector,
    InvalidValue,
    InvariantError,
    Kind,
    MetricKind,
    MonomialMap,
    apply_map,
    map_derivative,
    map_from_dict,
    map_to_dict,
)
from .hartogs import HartogsDomain, phi_eval

__all__ = [
    "MapRangeViolation",
    "UnknownSuite",
    "PropertySuite",
    "Verdict",
    "SUITES",
    "check_chain",
    "check_contractibility",
    "check_normalization",
    "check_nonusc_witness",
    "check_rotation",
    "check_oracle",
    "run_suite",
    "replay",
    "report_json",
    "report_text",
]

SQRT2, SQRT3 = math.sqrt(2), math.sqrt(3)

# Exponent vectors of the chain and rotation suites: both arithmetic classes,
# mixed signs, and up to three vanishing coordinates.
CHAIN_DOMAINS: tuple[dict, ...] = (
    {"type": "disc"},
    {"type": "reinhardt", "alpha": [1, 1], "class": "integers"},
    {"type": "reinhardt", "alpha": [2, 3], "class": "integers"},
    {"type": "reinhardt", "alpha": [3, 1], "class": "integers"},
    {"type": "reinhardt", "alpha": [1, 2, 2], "class": "integers"},
    {"type": "reinhardt", "alpha": [1, -1], "class": "integers"},
    {"type": "reinhardt", "alpha": [SQRT2, 1.0], "class": "generic"},
    {"type": "reinhardt", "alpha": [1.0, SQRT2, SQRT3], "class": "generic"},
    {"type": "reinhardt", "alpha": [math.pi, -1.0], "class": "generic"},
)


class MapRangeViolation(InvariantError, ValueError):
    """A sampled image point left the target domain."""


class UnknownSuite(InvariantError, KeyError):
    pass


@dataclass(frozen=True)
class PropertySuite:
    name: str
    seed: int = 0
    samples: int = 200
    tolerance: float = 1e-9

    def __post_init__(self) -> None:
        if self.name not in SUITES and self.name != "all":
            raise UnknownSuite(self.name)
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidValue("seed must be a 64-bit unsigned integer")
        if self.samples < 1:
            raise InvalidValue("need at least one sample")

    def rng(self, salt: str) -> np.random.Generator:
        return np.random.default_rng([int(self.seed), *salt.encode()])


@dataclass(frozen=True)
class Verdict:
    property: str
    samples: int
    failures: tuple[dict, ...] = field(default=())
    max_violation: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"property": self.property, "samples": self.samples,
                "failures": list(self.failures), "max_violation": self.max_violation}


# --- sampling -------------------------------------------------------------------


def _log_uniform(rng: np.random.Generator, lo: float, hi: float) -> float:
    return float(math.exp(rng.uniform(math.log(lo), math.log(hi))))


def _phase(rng: np.random.Generator) -> complex:
    return complex(np.exp(2j * math.pi * rng.uniform()))


def sample_direction(rng: np.random.Generator, n: int, zero_prob: float = 0.1) -> ComplexVector:
    entries = [0j if rng.uniform() < zero_prob else _log_uniform(rng, 0.05, 3.0) * _phase(rng)
               for _ in range(n)]
    if all(e == 0 for e in entries):
        entries[int(rng.integers(n))] = _phase(rng)
    return ComplexVector(tuple(entries))


def sample_reinhardt(rng: np.random.Generator, alpha: list[float], zeros: int = 0) -> ComplexVector:
    """A point of D_alpha with ``zeros`` vanishing positive-exponent coordinates.

    Without zeros, |z^alpha| is log-uniform in (1e-8, 1) and split across the
    coordinates with Dirichlet weights; phases are uniform.
    """
    n = len(alpha)
    positive = [j for j in range(n) if alpha[j] > 0]
    zero_set = set(rng.choice(positive, size=min(zeros, len(positive)), replace=False).tolist())
    entries = [0j] * n
    if zero_set:
        for j in range(n):
            if j not in zero_set:
                entries[j] = _log_uniform(rng, 0.02, 2.0) * _phase(rng)
        return ComplexVector(tuple(entries))
    log_t = math.log(_log_uniform(rng, 1e-8, 1.0 - 1e-9))
    weights = rng.dirichlet(np.ones(n))
    for j in range(n):
        entries[j] = math.exp(weights[j] * log_t / alpha[j]) * _phase(rng)
    return ComplexVector(tuple(entries))


def sample_disc(rng: np.random.Generator) -> ComplexVector:
    return ComplexVector.of(_log_uniform(rng, 1e-4, 0.999) * _phase(rng))


def sample_point(rng: np.random.Generator, spec: dict, zeros: int = 0) -> ComplexVector:
    if spec["type"] == "disc":
        return sample_disc(rng)
    if spec["type"] == "reinhardt":
        return sample_reinhardt(rng, spec["alpha"], zeros)
    if spec["type"] == "balanced":
        dom = parse_domain(spec)
        d = sample_direction(rng, dom.n, zero_prob=0.0)
        return d.scale(_log_uniform(rng, 1e-3, 0.999) / minkowski_eval(dom.h, d))
    raise InvalidValue(f"no sampler for {spec['type']}")


def _vec(text: str) -> ComplexVector:
    return ComplexVector.parse(text)


def _kind(name: str, order: int | None) -> MetricKind:
    return MetricKind.parse(name, order)


def _violation(lower: float, upper: float) -> float:
    """(lower - upper) relative to max(1, |upper|); positive means violated."""
    return (lower - upper) / max(1.0, abs(upper))


# --- measurements (case dict -> violation) --------------------------------------


def _measure_chain_function(case: dict) -> float:
    d = parse_domain(case["domain"])
    a, z = _vec(case["a"]), _vec(case["z"])
    m = d.function(MetricKind.mobius(), a, z)
    s = d.function(MetricKind.sibony_function(case["p"]), a, z)
    g = d.function(MetricKind.green(), a, z)
    return max(_violation(m.lower, s.upper), _violation(s.lower, g.upper))


def _measure_chain_metric(case: dict) -> float:
    d = parse_domain(case["domain"])
    a, X = _vec(case["a"]), _vec(case["X"])
    gamma = d.metric(MetricKind.caratheodory(), a, X)
    s = d.metric(MetricKind.sibony_metric(case["order"]), a, X)
    A = d.metric(MetricKind.azukawa(), a, X)
    return max(_violation(gamma.lower, s.upper), _violation(s.lower, A.upper))


def _measure_contractibility(case: dict) -> float:
    F = map_from_dict(case["map"])
    source, target = parse_domain(case["source"]), parse_domain(case["target"])
    kind = _kind(case["kind"], case.get("order"))
    a = _vec(case["a"])
    Fa = apply_map(F, a)
    if kind.is_function:
        z = _vec(case["z"])
        Fz = apply_map(F, z)
        if not target.contains(Fz):
            raise MapRangeViolation(f"F({z}) = ({Fz}) is outside the target")
        lhs = target.function(kind, Fa, Fz)
        rhs = source.function(kind, a, z)
    else:
        X = _vec(case["X"])
        lhs = target.metric(kind, Fa, map_derivative(F, a, X))
        rhs = source.metric(kind, a, X)
    return _violation(lhs.lower, rhs.upper)


def _measure_normalization(case: dict) -> float:
    kind = _kind(case["kind"], case.get("order"))
    t = case["t"]
    ref = disc_reference_value(kind, t)
    expected = 0.0 if (kind.kind is Kind.SIBONY_METRIC and kind.order % 2) else t
    d = DiscDomain()
    lam = ComplexVector.of(t * complex(*case["phase"]))
    if kind.is_function:
        via_domain = d.function(kind, ComplexVector.of(0), lam)
    else:
        via_domain = d.metric(kind, ComplexVector.of(0), lam)
    return max(abs(v - expected) for v in (ref.lower, ref.upper, via_domain.lower, via_domain.upper))


def _measure_nonusc_formula(case: dict) -> float:
    d = parse_domain(case["domain"])
    z = _vec(case["z"])
    base = ComplexVector.of(1.0 / case["k"], 0, 0)
    kind = MetricKind.sibony_function(2)
    modulus = math.prod(abs(c) ** e for c, e in zip(z, d.alpha.alpha))
    s0 = d.function(kind, ComplexVector.zeros(3), z).value
    sk = d.function(kind, base, z).value
    return max(abs(s0 - modulus), abs(sk - math.sqrt(modulus)))


def _measure_nonusc_gap(case: dict) -> float:
    d = parse_domain(case["domain"])
    z = _vec(case["z"])
    kind = MetricKind.sibony_function(2)
    s0 = d.function(kind, ComplexVector.zeros(3), z).value
    sk = d.function(kind, ComplexVector.of(1.0 / case["k"], 0, 0), z).value
    return s0 - sk


def _measure_rotation(case: dict) -> float:
    d = parse_domain(case["domain"])
    kind = _kind(case["kind"], case.get("order"))
    a, w = _vec(case["a"]), _vec(case["w"])
    phases = tuple(complex(*p) for p in case["phases"])
    ra, rw = a.rotate(phases), w.rotate(phases)
    evaluate = d.function if kind.is_function else d.metric
    v1, v2 = evaluate(kind, a, w), evaluate(kind, ra, rw)
    scale = max(1.0, abs(v1.upper))
    return max(abs(v1.lower - v2.lower), abs(v1.upper - v2.upper)) / scale


def _measure_oracle_azukawa(case: dict) -> float:
    d = parse_domain(case["domain"])
    a, X = _vec(case["a"]), _vec(case["X"])
    closed = d.metric(MetricKind.azukawa(), a, X).value
    green = MetricKind.green()
    sampler = numerics.CurveSampler(
        lambda lam: d.function(green, a, a + X.scale(lam)).value, r0=case["r0"])
    estimate, _ = numerics.limsup_quotient(sampler, strict=False)
    return abs(estimate - closed) - 0.02 * closed


def _measure_oracle_levi(case: dict) -> float:
    beta = tuple(case["beta"])
    F = MonomialMap((1,), (beta,))
    a, X = _vec(case["a"]), _vec(case["X"])
    exact = abs(map_derivative(F, a, X)[0]) ** 2
    levi = numerics.levi_form(lambda z: abs(apply_map(F, z)[0]) ** 2, a, X)
    # Normwise relative error: scale by |f'(a)|^2 |X|^2 so cancelling directions
    # are not asked for more digits than the stencil can carry.
    grad_sq = sum(abs(map_derivative(F, a, ComplexVector(tuple(float(j == k) for j in range(a.n))))[0]) ** 2
                  for k in range(a.n))
    return abs(levi - exact) - 1e-6 * grad_sq * X.norm() ** 2


_MEASURES: dict[str, Callable[[dict], float]] = {
    "chain-function": _measure_chain_function,
    "chain-metric": _measure_chain_metric,
    "contractibility": _measure_contractibility,
    "normalization": _measure_normalization,
    "nonusc-formula": _measure_nonusc_formula,
    "nonusc-gap": _measure_nonusc_gap,
    "rotation": _measure_rotation,
    "oracle-azukawa": _measure_oracle_azukawa,
    "oracle-levi": _measure_oracle_levi,
}
# Properties whose violation must be strictly negative.
_STRICT = {"nonusc-gap"}


def replay(reproducer: dict) -> float:
    """Recompute the violation recorded for a failing (or passing) case."""
    return _MEASURES[reproducer["property"]](reproducer)


def _verdict(name: str, cases: list[dict], tolerance: float) -> Verdict:
    failures = []
    worst = 0.0
    strict = any(c["property"] in _STRICT for c in cases)
    for index, case in enumerate(cases):
        try:
            v = replay(case)
        except InvariantError as exc:
            failures.append({"index": index, "reproducer": case, "violation": None,
                             "error": f"{type(exc).__name__}: {exc}"})
            continue
        worst = max(worst, v)
        failed = v >= 0 if case["property"] in _STRICT else v > tolerance
        if failed:
            failures.append({"index": index, "reproducer": case, "violation": v})
    if strict:
        # For strict gaps report the smallest margin instead of a clipped zero.
        worst = max(worst, 0.0)
    return Verdict(name, len(cases), tuple(failures), float(worst))


# --- suites ---------------------------------------------------------------------


def check_chain(suite: PropertySuite) -> list[Verdict]:
    """m <= s^(p) <= g and gamma <= S^(2p) <= A, interval-aware."""
    rng = suite.rng("chain")
    fcases = [
        # Strict chain m < s < g at a = 0 on D_(2,3).
        {"property": "chain-function", "domain": CHAIN_DOMAINS[2], "p": 2,
         "a": "0:0,0:0", "z": "0.5:0,0.5:0"},
        {"property": "chain-function", "domain": CHAIN_DOMAINS[0], "p": 2, "a": "0:0", "z": "0.5:0"},
    ]
    mcases = []
    for i in range(suite.samples):
        spec = CHAIN_DOMAINS[i % len(CHAIN_DOMAINS)]
        n = 1 if spec["type"] == "disc" else len(spec["alpha"])
        zeros = int(rng.integers(0, 4)) if spec["type"] == "reinhardt" else 0
        a = sample_point(rng, spec, zeros)
        if i % 2 == 0:
            z = sample_point(rng, spec, int(rng.uniform() < 0.1))
            fcases.append({"property": "chain-function", "domain": spec,
                           "p": int(rng.integers(1, 5)), "a": str(a), "z": str(z)})
        else:
            X = sample_direction(rng, n)
            mcases.append({"property": "chain-metric", "domain": spec,
                           "order": 2 * int(rng.integers(1, 4)), "a": str(a), "X": str(X)})
    return [_verdict("chain-function", fcases, suite.tolerance),
            _verdict("chain-metric", mcases, suite.tolerance)]


def _reinhardt(alpha, cls="integers") -> dict:
    return {"type": "reinhardt", "alpha": list(alpha), "class": cls}


def contractibility_maps() -> list[tuple[str, object, dict, dict]]:
    """(label, map, source spec, target spec) for the contractibility suite."""
    from .foundations import CoordinateEmbedding, Curve, Projection, vec

    disc = {"type": "disc"}
    ball = {"type": "balanced", "h": {"kind": "weighted-norm", "weights": [1.0, 1.0], "q": 2.0}}
    return [
        ("diagonal disc into D(1,1)", Curve(vec(1, 1)), disc, _reinhardt([1, 1])),
        ("diagonal disc into D(1,2,2)", Curve(vec(1, 1, 1)), disc, _reinhardt([1, 2, 2])),
        ("curve (l^2, l) into D(1,2)", Curve(vec(1, 1), powers=(2, 1)), disc, _reinhardt([1, 2])),
        ("curve (1, l) into D(-1,2)", Curve(vec(0, 1), vec(1, 0)), disc, _reinhardt([-1, 2])),
        ("diagonal disc into D(sqrt2,1)", Curve(vec(1, 1)), disc, _reinhardt([SQRT2, 1.0], "generic")),
        ("z1 z2 from D(1,1)", MonomialMap((1,), ((1, 1),)), _reinhardt([1, 1]), disc),
        ("z1 z2^2 z3^2 from D(1,2,2)", MonomialMap((1,), ((1, 2, 2),)), _reinhardt([1, 2, 2]), disc),
        ("z1 / z2 from D(1,-1)", MonomialMap((1,), ((1, -1),)), _reinhardt([1, -1]), disc),
        ("(z1 z2, 1) D(1,1) -> D(1,2)", MonomialMap((1, 1), ((1, 1), (0, 0))),
         _reinhardt([1, 1]), _reinhardt([1, 2])),
        ("(z1^2, z2^3) D(2,3) -> D(1,1)", MonomialMap((1, 1), ((2, 0), (0, 3))),
         _reinhardt([2, 3]), _reinhardt([1, 1])),
        ("(z1, z2, 1/2) D(1,1) -> D(1,1,1)", CoordinateEmbedding(3, ((2, 0.5),)),
         _reinhardt([1, 1]), _reinhardt([1, 1, 1])),
        ("identity of D(2,3)", MonomialMap((1, 1), ((1, 0), (0, 1))),
         _reinhardt([2, 3]), _reinhardt([2, 3])),
        ("ball onto its first coordinate", Projection((0,), 2), ball, disc),
        ("slice embedding D -> G", CoordinateEmbedding(3, ((2, 0),)),
         {"type": "hartogs", "variant": "exam1-slice"}, {"type": "hartogs", "variant": "exam1"}),
    ]


_FUNCTION_KINDS = [("mobius", None), ("green", None)] + [("sibony-function", p) for p in (1, 2, 3, 4)]
_METRIC_KINDS = [("caratheodory", None), ("azukawa", None)] + [("sibony-metric", o) for o in (2, 4, 6)]


def _hartogs_slice_cases(rng: np.random.Generator, count: int, entry: dict) -> list[dict]:
    # G's proven values live at the origin along the z1-axis, inside the fibre.
    phi00, err = phi_eval(HartogsDomain.exam1().phi, (0, 0))
    radius = math.exp(-phi00 - err)
    cases = []
    for i in range(count):
        p = int(rng.integers(1, 5))
        if i % 2 == 0:
            b = _log_uniform(rng, 1e-3, 0.999) * radius * _phase(rng)
            cases.append({**entry, "kind": "sibony-function", "order": p,
                          "a": "0:0,0:0", "z": str(ComplexVector.of(b, 0))})
        else:
            X1 = _log_uniform(rng, 0.05, 3.0) * _phase(rng)
            cases.append({**entry, "kind": "sibony-metric", "order": 2 * p,
                          "a": "0:0,0:0", "X": str(ComplexVector.of(X1, 0))})
    return cases


def check_contractibility(suite: PropertySuite) -> list[Verdict]:
    """d_target(F(a), F(z)) <= d_source(a, z) and the metric analogue with F'(a)X."""
    verdicts = []
    for label, F, source, target in contractibility_maps():
        rng = suite.rng("contractibility:" + label)
        entry = {"property": "contractibility", "map": map_to_dict(F),
                 "source": source, "target": target}
        if source["type"] == "hartogs":
            cases = _hartogs_slice_cases(rng, suite.samples, entry)
        else:
            src = parse_domain(source)
            cases = []
            for i in range(suite.samples):
                if source["type"] == "balanced":
                    a = ComplexVector.zeros(src.n)
                else:
                    zeros = int(rng.integers(0, 3)) if source["type"] == "reinhardt" else 0
                    a = sample_point(rng, source, zeros)
                if i % 2 == 0:
                    name, order = _FUNCTION_KINDS[int(rng.integers(len(_FUNCTION_KINDS)))]
                    z = sample_point(rng, source, int(rng.uniform() < 0.1))
                    cases.append({**entry, "kind": name, "order": order, "a": str(a), "z": str(z)})
                else:
                    name, order = _METRIC_KINDS[int(rng.integers(len(_METRIC_KINDS)))]
                    X = sample_direction(rng, src.n)
                    cases.append({**entry, "kind": name, "order": order, "a": str(a), "X": str(X)})
        verdicts.append(_verdict(f"contractibility: {label}", cases, suite.tolerance))
    return verdicts


def check_normalization(suite: PropertySuite | None = None) -> list[Verdict]:
    """Disc values at 0: every kind is the identity except odd-order Sibony metrics."""
    suite = suite or PropertySuite("normalization")
    rng = suite.rng("normalization")
    kinds = (_FUNCTION_KINDS + _METRIC_KINDS
             + [("sibony-metric", o) for o in (1, 3, 5, 7, 8)]
             + [("sibony-function", p) for p in (5, 6)])
    cases = []
    for name, order in kinds:
        for i in range(10):
            t = i / 10
            phase = _phase(rng)
            cases.append({"property": "normalization", "kind": name, "order": order,
                          "t": t, "phase": [phase.real, phase.imag]})
        if not MetricKind.parse(name, order).is_function:
            cases.append({"property": "normalization", "kind": name, "order": order,
                          "t": 1.0, "phase": [1.0, 0.0]})
    return [_verdict("normalization", cases, 1e-15)]


def check_nonusc_witness(suite: PropertySuite, k_max: int = 100) -> list[Verdict]:
    """s(0, z) = |z^alpha| < |z^alpha|^(1/2) = s((1/k, 0, 0), z) on D_(1,2,2)."""
    rng = suite.rng("nonusc")
    spec = _reinhardt([1, 2, 2])
    zs = [ComplexVector.of(0.5, 0.5, 0.5)]
    # |z^alpha| = 0.99: the narrow-gap regime.
    t = 0.99 ** 0.2
    zs.append(ComplexVector.of(t, t * 1j, -t))
    zs += [sample_reinhardt(rng, spec["alpha"]) for _ in range(suite.samples)]
    formula, gap = [], []
    for z in zs:
        for k in range(1, k_max + 1):
            if k == 1 or k == k_max or rng.uniform() < 0.1:
                formula.append({"property": "nonusc-formula", "domain": spec, "z": str(z), "k": k})
        gap.append({"property": "nonusc-gap", "domain": spec, "z": str(z),
                    "k": int(rng.integers(1, k_max + 1))})
    return [_verdict("nonusc-formula", formula, 1e-12), _verdict("nonusc-gap", gap, 0.0)]


def check_rotation(suite: PropertySuite) -> list[Verdict]:
    """Values are unchanged under coordinatewise rotations (a, w) -> (Ra, Rw)."""
    rng = suite.rng("rotation")
    cases = []
    for i in range(suite.samples):
        spec = CHAIN_DOMAINS[i % len(CHAIN_DOMAINS)]
        n = 1 if spec["type"] == "disc" else len(spec["alpha"])
        zeros = int(rng.integers(0, 4)) if spec["type"] == "reinhardt" else 0
        a = sample_point(rng, spec, zeros)
        if i % 2 == 0:
            name, order = _FUNCTION_KINDS[int(rng.integers(len(_FUNCTION_KINDS)))]
            w = sample_point(rng, spec)
        else:
            name, order = _METRIC_KINDS[int(rng.integers(len(_METRIC_KINDS)))]
            w = sample_direction(rng, n)
        phases = [_phase(rng) for _ in range(n)]
        cases.append({"property": "rotation", "domain": spec, "kind": name, "order": order,
                      "a": str(a), "w": str(w), "phases": [[p.real, p.imag] for p in phases]})
    return [_verdict("rotation", cases, suite.tolerance)]


ORACLE_DOMAINS = (
    _reinhardt([1, 1]), _reinhardt([2, 3]), _reinhardt([1, 2, 2]), _reinhardt([3, 1]),
    _reinhardt([1, -1]), _reinhardt([SQRT2, 1.0], "generic"),
    _reinhardt([1.0, SQRT2, SQRT3], "generic"),
)


def _oracle_point(rng: np.random.Generator, spec: dict, zeros: int) -> ComplexVector:
    # Keep a away from the boundary so the sampling circles stay inside.
    while True:
        a = sample_point(rng, spec, zeros)
        d = parse_domain(spec)
        if all(abs(c) < 1.5 for c in a) and d.contains(a.scale(1.25)):
            return a


def check_oracle(suite: PropertySuite, max_cases: int = 100) -> list[Verdict]:
    """Azukawa closed forms against limsup g(a, a + lX)/|l|, and Levi forms of |f|^2."""
    rng = suite.rng("oracle")
    count = min(suite.samples, max_cases)
    az = [
        # The leading coefficient of (l X1)(l X2) carries no factorial.
        {"property": "oracle-azukawa", "domain": _reinhardt([1, 1]), "a": "0:0,0:0",
         "X": "1:0,2:0", "r0": 0.1},
        {"property": "oracle-azukawa", "domain": _reinhardt([1, 1]), "a": "0:0,0:0",
         "X": "0.5:0.5,-1:2", "r0": 0.1},
    ]
    for i in range(count):
        spec = ORACLE_DOMAINS[i % len(ORACLE_DOMAINS)]
        zeros = int(rng.integers(0, 3))
        a = _oracle_point(rng, spec, zeros)
        d = parse_domain(spec)
        X = sample_direction(rng, d.n, zero_prob=0.0)
        # Shrink X until every point of the sampler's polar grid lies in the domain.
        grid = numerics.CurveSampler(lambda lam: 0.0).radii()[:, None] * np.exp(
            2j * math.pi * np.arange(32) / 32)[None, :]
        for _ in range(60):
            if all(d.contains(a + X.scale(complex(lam))) for lam in grid.ravel()):
                break
            X = X.scale(0.5)
        az.append({"property": "oracle-azukawa", "domain": spec, "a": str(a), "X": str(X),
                   "r0": 0.1})
    levi = []
    for _ in range(max(20, count // 2)):
        n = int(rng.integers(1, 4))
        beta = [int(b) for b in rng.integers(0, 4, size=n)]
        if sum(beta) == 0:
            beta[0] = 1
        a = ComplexVector(tuple(_log_uniform(rng, 0.3, 1.0) * _phase(rng) for _ in range(n)))
        X = sample_direction(rng, n, zero_prob=0.0)
        X = X.scale(1 / X.norm())
        levi.append({"property": "oracle-levi", "beta": beta, "a": str(a), "X": str(X)})
    return [_verdict("oracle-azukawa", az, suite.tolerance),
            _verdict("oracle-levi", levi, suite.tolerance)]


SUITES: dict[str, Callable[[PropertySuite], list[Verdict]]] = {
    "chain": check_chain,
    "contractibility": check_contractibility,
    "normalization": check_normalization,
    "nonusc": check_nonusc_witness,
    "rotation": check_rotation,
    "oracle": check_oracle,
}


def run_suite(suite: PropertySuite) -> dict:
    """Run one suite (or ``all``) and assemble the report dict."""
    names = list(SUITES) if suite.name == "all" else [suite.name]
    verdicts: list[Verdict] = []
    for name in names:
        verdicts += SUITES[name](suite)
    return {
        "suite": suite.name,
        "seed": int(suite.seed),
        "samples": suite.samples,
        "passed": all(v.passed for v in verdicts),
        "verdicts": [v.to_dict() for v in verdicts],
    }


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def report_text(report: dict) -> str:
    lines = [f"suite {report['suite']} seed {report['seed']}: "
             + ("PASS" if report["passed"] else "FAIL")]
    for v in report["verdicts"]:
        status = "ok" if not v["failures"] else f"{len(v['failures'])} FAILED"
        lines.append(f"  {v['property']}: {v['samples']} samples, {status}, "
                     f"max violation {v['max_violation']:.3e}")
    return "\n".join(lines) + "\n"
