import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from invmetrics.foundations import (
    CandidateFamily,
    CandidateFunction,
    ComplexVector,
    CoordinateEmbedding,
    Curve,
    DimensionMismatch,
    DomainViolation,
    InvalidKind,
    InvalidValue,
    Kind,
    MetricKind,
    MetricValue,
    MonomialMap,
    Projection,
    Status,
    apply_map,
    compose_monomial,
    map_derivative,
    map_from_dict,
    map_to_dict,
    metric_value_exact,
    vec,
)

finite = st.floats(min_value=-4, max_value=4, allow_nan=False, allow_infinity=False)
nonzero_complex = st.builds(complex, finite, finite).filter(lambda c: abs(c) > 0.05)


class TestComplexVector:
    def test_rejects_empty_and_non_finite(self):
        with pytest.raises(DimensionMismatch):
            ComplexVector(())
        with pytest.raises(InvalidValue):
            vec(1, float("nan"))
        with pytest.raises(InvalidValue):
            vec(complex(0, math.inf))

    def test_arithmetic_checks_dimension(self):
        with pytest.raises(DimensionMismatch):
            vec(1, 2) + vec(1)
        assert (vec(1, 2j) - vec(1, 1j)).entries == (0j, 1j)

    def test_parse_forms(self):
        assert ComplexVector.parse("0.5:1,2").entries == (0.5 + 1j, 2 + 0j)
        assert ComplexVector.parse(" -1e-3:-2 ").entries == (-0.001 - 2j,)
        for bad in ("", "1,,2", "a:b", "1:2:3", "nan"):
            with pytest.raises(InvalidValue):
                ComplexVector.parse(bad)

    @given(st.lists(st.builds(complex, finite, finite), min_size=1, max_size=5))
    def test_str_parse_round_trip_is_exact(self, values):
        v = ComplexVector(tuple(values))
        assert ComplexVector.parse(str(v)) == v


class TestMetricKind:
    def test_orders(self):
        assert MetricKind.sibony_function(2).order == 2
        with pytest.raises(InvalidKind):
            MetricKind(Kind.SIBONY_METRIC, 0)
        with pytest.raises(InvalidKind):
            MetricKind(Kind.GREEN, 3)

    def test_parse(self):
        assert MetricKind.parse("sibony-metric", 4) == MetricKind.sibony_metric(4)
        assert MetricKind.parse("sibony-function") == MetricKind.sibony_function(2)
        assert MetricKind.parse("green").is_function
        assert MetricKind.parse("azukawa").is_metric
        with pytest.raises(InvalidKind):
            MetricKind.parse("kobayashi")


class TestMetricValue:
    def test_exact_examples(self):
        assert metric_value_exact(0) == MetricValue(0, 0, Status.EXACT)
        v = metric_value_exact(0.4)
        assert (v.lower, v.upper, v.status) == (0.4, 0.4, Status.EXACT)
        for bad in (-1, math.inf, math.nan):
            with pytest.raises(InvalidValue):
                metric_value_exact(bad)

    def test_invariants(self):
        with pytest.raises(InvalidValue):
            MetricValue(0.5, 0.4, Status.BOUNDS)
        with pytest.raises(InvalidValue):
            MetricValue(0.1, 0.2, Status.EXACT)
        with pytest.raises(InvalidValue):
            MetricValue(-0.1, 0.2, Status.BOUNDS)
        with pytest.raises(InvalidValue):
            MetricValue(0.1, 0.2, Status.UNKNOWN).value

    def test_proven_carries_citation(self):
        v = MetricValue.proven(0.0, "a citation")
        assert v.is_exact and v.citation == "a citation"
        assert v.to_dict()["status"] == "ProvenExact"

    @given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1), st.floats(0, 1))
    def test_intersection_never_inverts(self, a, b, c, d):
        x = MetricValue.bounds(min(a, b), max(a, b))
        y = MetricValue.bounds(min(c, d), max(c, d))
        if max(x.lower, y.lower) > min(x.upper, y.upper):
            with pytest.raises(InvalidValue):
                x.intersect(y)
        else:
            z = x.intersect(y)
            assert z.lower <= z.upper


class TestCandidate:
    def test_contract(self):
        f = CandidateFunction(CandidateFamily.CUSTOM, lambda z: abs(z[0]), vec(0), order=2, eps=0.5)
        assert f(vec(0)) == 0
        with pytest.raises(InvalidValue):
            CandidateFunction(CandidateFamily.CUSTOM, lambda z: 0.0, vec(0), eps=0)


class TestMaps:
    def test_examples(self):
        assert apply_map(MonomialMap((1,), ((1, 1),)), vec(0.5, 0.5)).entries == (0.25,)
        b = 0.3 - 0.1j
        assert apply_map(CoordinateEmbedding(3, ((2, 0),)), vec(b, 0)).entries == (b, 0, 0)
        assert apply_map(Projection((2,), 3), vec(1, 2, 0.7)).entries == (0.7,)

    def test_errors(self):
        with pytest.raises(DomainViolation):
            apply_map(MonomialMap((1,), ((1, -1),)), vec(0.5, 0))
        with pytest.raises(DimensionMismatch):
            apply_map(MonomialMap((1,), ((1, 1),)), vec(0.5))
        with pytest.raises(InvalidValue):
            MonomialMap((1,), ((0.5, 1),))

    def test_curves(self):
        assert apply_map(Curve(vec(1, 2), vec(0.1, 0)), vec(0.5)).entries == (0.6, 1)
        assert apply_map(Curve(vec(1, 3), powers=(2, 1)), vec(0.5j)).entries == (-0.25, 1.5j)

    def test_derivative_matches_difference_quotient(self):
        F = MonomialMap((2, 1j), ((1, 2), (-1, 3)))
        a, X = vec(0.4 + 0.1j, -0.3 + 0.5j), vec(1 - 1j, 0.5)
        h = 1e-7
        fd = (apply_map(F, a + X.scale(h)) - apply_map(F, a - X.scale(h))).scale(1 / (2 * h))
        exact = map_derivative(F, a, X)
        assert all(abs(u - v) < 1e-6 for u, v in zip(fd, exact))

    @settings(max_examples=60)
    @given(st.lists(nonzero_complex, min_size=2, max_size=2),
           st.lists(st.integers(-3, 3), min_size=4, max_size=4),
           st.lists(st.integers(-3, 3), min_size=4, max_size=4))
    def test_composition(self, z, bf, bg):
        F = MonomialMap((1.5, -1j), ((bf[0], bf[1]), (bf[2], bf[3])))
        G = MonomialMap((0.5j, 2), ((bg[0], bg[1]), (bg[2], bg[3])))
        z = ComplexVector(tuple(z))
        direct = apply_map(F, apply_map(G, z))
        composed = apply_map(compose_monomial(F, G), z)
        for u, v in zip(direct, composed):
            assert abs(u - v) <= 1e-9 * max(1.0, abs(u))

    @pytest.mark.parametrize("F", [
        MonomialMap((1, 0.5j), ((1, 2), (0, -1))),
        CoordinateEmbedding(3, ((1, 0.5 - 0.5j),)),
        Projection((1, 0), 3),
        Curve(vec(1, 1j), vec(0.1, 0.2)),
        Curve(vec(1, 2), powers=(2, 1)),
    ])
    def test_dict_round_trip(self, F):
        assert map_from_dict(map_to_dict(F)) == F
