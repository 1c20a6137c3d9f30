import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from invmetrics.balanced import (
    MaxOf,
    Monomial,
    NotPseudoconvex,
    WeightedNorm,
    balanced_metrics_at_zero,
    convex_envelope,
    minkowski_abs,
    minkowski_eval,
    usc_product_bound,
)
from invmetrics.foundations import ComplexVector, InvalidValue, MetricKind, Status, vec

MONO = Monomial((0.5, 0.5))
MAXMONO = MaxOf((WeightedNorm((1.0, 1.0), math.inf), Monomial((0.5, 0.5), 2.0)))
EUCLID = WeightedNorm((1.0, 1.0))
AZUKAWA, CARA = MetricKind.azukawa(), MetricKind.caratheodory()
SIBONY = MetricKind.sibony_metric(2)


def hull_gauge(spec, y, step=1e-4):
    """Gauge of the convex hull of {h < 1} at the moduli ``y`` (planar case).

    The level set is sampled along rays in the closed first quadrant at angular
    step ``step``; the set is down-closed in absolute coordinates, so the
    origin and the axis feet of each sample belong to it as well.  The hull
    is inscribed, so the result overestimates the gauge by O(step).
    """
    angles = np.arange(0, math.pi / 2 + step, step)
    rays = np.clip(np.stack([np.cos(angles), np.sin(angles)], axis=1), 0, None)
    pts = rays / minkowski_abs(spec, rays)[:, None]
    pts = np.vstack([pts, [[0, 0]], pts * [1, 0], pts * [0, 1]])
    hull = ConvexHull(pts)
    # Facets: normal . x + offset <= 0; the gauge is the largest normal . y / (-offset).
    normals, offsets = hull.equations[:, :2], hull.equations[:, 2]
    keep = offsets < -1e-12
    return float(np.max(normals[keep] @ np.asarray(y) / -offsets[keep]))


class TestMinkowski:
    def test_examples(self):
        assert minkowski_eval(MONO, vec(4, 1)) == 2
        assert minkowski_eval(WeightedNorm((1, 1), math.inf), vec(0.3, 0.9)) == 0.9
        for spec in (MONO, MAXMONO, EUCLID):
            assert minkowski_eval(spec, vec(0, 0)) == 0

    def test_validation(self):
        with pytest.raises(InvalidValue):
            Monomial((0.5, 0.6))
        with pytest.raises(InvalidValue):
            WeightedNorm((1, -1))
        with pytest.raises(InvalidValue):
            WeightedNorm((1, 1), 0.5)

    @given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3),
           st.floats(0, 5), st.floats(0, 6.3))
    def test_homogeneous(self, x1, y1, x2, y2, s, t):
        z = vec(complex(x1, y1), complex(x2, y2))
        lam = s * cmath.exp(1j * t)
        # Only meaningful when scaling keeps every nonzero component a normal float.
        parts = [x1, y1, x2, y2]
        assume(all(abs(p) * s >= 1e-300 or p == 0 for p in parts) or s == 0)
        for spec in (MONO, MAXMONO, EUCLID, WeightedNorm((2.0, 0.5), 3.0)):
            assert minkowski_eval(spec, z.scale(lam)) == pytest.approx(
                s * minkowski_eval(spec, z), rel=1e-12, abs=1e-300)


class TestEnvelope:
    def test_monomial_vanishes(self):
        r = convex_envelope(MONO, vec(1, 1))
        assert r.value <= 1e-12
        assert sum(r.decomposition, ComplexVector.zeros(2)) == vec(1, 1)

    def test_monomial_vanishes_in_every_direction(self):
        # Rounding drift must not leak into a zero coordinate: h ~ sqrt there.
        rng = np.random.default_rng(7)
        for _ in range(60):
            z = vec(rng.uniform(0.05, 2) * cmath.exp(6.3j * rng.uniform()),
                    rng.uniform(0.05, 2) * cmath.exp(6.3j * rng.uniform()))
            assert convex_envelope(MONO, z).value <= 1e-9

    @pytest.mark.parametrize("z", [vec(1, 1), vec(0.3j, -2), vec(1e-3, 5)])
    def test_convex_spec_is_its_own_envelope(self, z):
        for spec in (EUCLID, WeightedNorm((1.0, 3.0), 1.5), WeightedNorm((1.0, 1.0), math.inf)):
            r = convex_envelope(spec, z)
            assert r.value == pytest.approx(minkowski_eval(spec, z), rel=1e-8)
            assert r.certificate_gap <= 1e-8

    def test_maxof_against_hull_oracle(self):
        r = convex_envelope(MAXMONO, vec(1, 1))
        oracle = hull_gauge(MAXMONO, [1, 1])
        assert 0 <= oracle - r.value <= 1e-4
        # Exact hull: corners (1, 1/4) and (1/4, 1), top edge x + y = 5/4.
        assert r.value == pytest.approx(1.6, abs=1e-9)
        assert r.value < minkowski_eval(MAXMONO, vec(1, 1)) == 2

    @pytest.mark.parametrize("y", [(1, 0.5), (0.2, 1), (1, 0.05), (0.7, 0.7)])
    def test_maxof_other_directions(self, y):
        r = convex_envelope(MAXMONO, vec(y[0], y[1] * 1j))
        assert -1e-12 <= hull_gauge(MAXMONO, y) - r.value <= 1e-4

    def test_decomposition_realizes_value(self):
        z = vec(0.8 * cmath.exp(0.4j), -0.3)
        r = convex_envelope(MAXMONO, z)
        total = sum(r.decomposition, ComplexVector.zeros(2))
        assert all(abs(a - b) <= 1e-10 for a, b in zip(total, z))
        assert r.value == pytest.approx(sum(minkowski_eval(MAXMONO, w) for w in r.decomposition),
                                        abs=1e-10)
        assert r.lower_bound <= r.value <= minkowski_eval(MAXMONO, z) + 1e-12

    def test_certificate_is_below_h(self):
        r = convex_envelope(MAXMONO, vec(1, 1))
        c = np.array(r.certificate)
        y = np.random.default_rng(1).uniform(0, 2, size=(2000, 2))
        assert np.all(y @ c <= minkowski_abs(MAXMONO, y) + 1e-9)

    def test_parts_validation(self):
        with pytest.raises(InvalidValue):
            convex_envelope(MAXMONO, vec(1, 1), parts=1)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(0.05, 2), st.floats(0.05, 2), st.floats(0.05, 2), st.floats(0.05, 2),
           st.floats(0, 6.3), st.floats(0.1, 4))
    def test_seminorm(self, a, b, c, d, t, s):
        z, w = vec(a, b * cmath.exp(1j * t)), vec(c * 1j, d)
        ez = convex_envelope(MAXMONO, z).value
        ew = convex_envelope(MAXMONO, w).value
        assert convex_envelope(MAXMONO, z.scale(s * cmath.exp(1j * t))).value == pytest.approx(
            s * ez, abs=1e-8 * max(1, s * ez))
        assert convex_envelope(MAXMONO, z + w).value <= ez + ew + 1e-8
        assert ez <= minkowski_eval(MAXMONO, z) + 1e-8

    def test_maxof_monotone(self):
        small = MaxOf((WeightedNorm((1.0, 1.0), math.inf),))
        for y in [(1, 1), (0.3, 0.9), (1, 0.2)]:
            z = vec(*y)
            assert minkowski_eval(small, z) <= minkowski_eval(MAXMONO, z)
            assert convex_envelope(small, z).value <= convex_envelope(MAXMONO, z).value + 1e-8


class TestMetricsAtZero:
    def test_monomial(self):
        X = vec(1, 1)
        assert balanced_metrics_at_zero(MONO, True, AZUKAWA, X).value == 1
        assert balanced_metrics_at_zero(MONO, True, SIBONY, X).value <= 1e-9

    def test_convex(self):
        X = vec(0.3, 0.4j)
        for kind in (AZUKAWA, CARA, SIBONY):
            assert balanced_metrics_at_zero(EUCLID, True, kind, X).value == pytest.approx(0.5)

    def test_axis_direction(self):
        for kind in (AZUKAWA, CARA, SIBONY):
            v = balanced_metrics_at_zero(MAXMONO, True, kind, vec(1, 0))
            assert v.status is Status.EXACT and v.value == pytest.approx(1, abs=1e-9)

    def test_green(self):
        assert balanced_metrics_at_zero(MAXMONO, True, MetricKind.green(), vec(0.2, 0.1)).value \
            == pytest.approx(2 * math.sqrt(0.02))

    def test_needs_pseudoconvexity(self):
        with pytest.raises(NotPseudoconvex):
            balanced_metrics_at_zero(MONO, False, AZUKAWA, vec(1, 1))

    def test_chain(self):
        for X in (vec(1, 1), vec(0.2, 1j), vec(1, 0.5)):
            g = balanced_metrics_at_zero(MAXMONO, True, CARA, X).value
            s = balanced_metrics_at_zero(MAXMONO, True, SIBONY, X).value
            a = balanced_metrics_at_zero(MAXMONO, True, AZUKAWA, X).value
            assert g == s <= a + 1e-12


class TestProductBound:
    def test_examples(self):
        h = WeightedNorm((0.5,))
        assert usc_product_bound(0.1, 0.9, 10, h, [0], vec(1)) == pytest.approx(0.5 / 0.9)
        assert usc_product_bound(0.1, 0.9, 10, h, [0], vec(0)) == 0

    def test_limit(self):
        h = MAXMONO
        b = vec(0.3, 0.4)
        v = usc_product_bound(0.1, 1 - 1e-12, 1e12, h, [0], b)
        assert v == pytest.approx(minkowski_eval(h, b), rel=1e-9)

    def test_validation(self):
        with pytest.raises(InvalidValue):
            usc_product_bound(0.1, 1.0, 10, MONO, [0], vec(1, 1))
        with pytest.raises(InvalidValue):
            usc_product_bound(0, 0.5, 10, MONO, [0], vec(1, 1))
