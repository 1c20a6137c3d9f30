import math

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from invmetrics import hartogs
from invmetrics.foundations import DomainViolation, InvalidValue, MetricKind, Status, vec
from invmetrics.hartogs import (
    Exam1Phi,
    Exam3Phi,
    HartogsDomain,
    InvalidBase,
    Membership,
    NotProven,
    RegionViolation,
    SingularPoint,
    candidate_lower_bound,
    exam1_sequence,
    increasing_family_table,
    membership,
    phi_eval,
    proven_value,
)

ZETA_PRIME_2 = float(mpmath.zeta(2, derivative=1))
G, D = HartogsDomain.exam1(), HartogsDomain.exam1_slice()
G3 = HartogsDomain.exam3()
SIB = MetricKind.sibony_function


def dyadic_points_oracle(levels: int) -> list[complex]:
    """Level-by-level new grid points of the punctured disc, by set difference."""
    seen = {(0, 0)}
    out = []
    for m in range(1, levels + 1):
        d = 2 ** m
        fresh = []
        for p in range(-d, d + 1):
            for q in range(-d, d + 1):
                key = (p * 2 ** (levels - m), q * 2 ** (levels - m))
                if p * p + q * q < d * d and key not in seen:
                    seen.add(key)
                    fresh.append(complex(p, q) / d)
        fresh.sort(key=lambda w: (abs(w), math.atan2(w.imag, w.real)))
        out += fresh
    return out


class TestExam1Sequence:
    def test_matches_set_difference_enumeration(self):
        seq = exam1_sequence(200)
        assert list(seq) == dyadic_points_oracle(5)[:200]

    def test_decay_condition(self):
        seq = exam1_sequence(500)
        assert all(abs(a) >= 2.0 ** -k for k, a in enumerate(seq, start=1))
        assert all(0 < abs(a) < 1 for a in seq)


class TestExam3Phi:
    def test_two_terms(self):
        value, err = phi_eval(Exam3Phi(2), 0)
        assert value == pytest.approx(0.25 * math.log(0.5), abs=1e-15)
        assert value == pytest.approx(-0.173287, abs=1e-6)
        assert err < 1e-15

    def test_full_series_at_zero(self):
        value, err = phi_eval(Exam3Phi(), 0)
        assert err <= 1e-10
        assert abs(value - ZETA_PRIME_2) <= err + 1e-15
        assert value == pytest.approx(-0.937548, abs=1e-6)

    @pytest.mark.parametrize("lam", [0.3, -0.2 + 0.1j, 0.49j, 0.0123])
    def test_full_series_off_zero(self, lam):
        value, err = phi_eval(Exam3Phi(), lam)
        term = lambda s: mpmath.log(abs(lam - mpmath.mpf(1) / s)) / s ** 2
        with mpmath.workdps(30):
            # Extrapolation is unreliable next to the poles 1/s; sum those terms directly.
            exact = mpmath.fsum(term(s) for s in range(2, 1001)) + mpmath.nsum(
                term, [1001, mpmath.inf], method="euler-maclaurin")
        assert abs(value - float(exact)) <= err
        assert err < 1e-5

    @pytest.mark.parametrize("K", [10, 100, 1000])
    def test_tail_bound_against_long_sum(self, K):
        short, err = phi_eval(Exam3Phi(truncation=K), 0)
        long, long_err = phi_eval(Exam3Phi(truncation=10**6), 0)
        assert abs(short - long) <= err + long_err
        assert abs(short - ZETA_PRIME_2) <= err
        # The raw partial sums differ by the terms K < s <= 10^6, below the upper integral.
        gap = phi_eval(Exam3Phi(k=K), 0)[0] - phi_eval(Exam3Phi(k=10**6), 0)[0]
        assert 0 < gap <= (math.log(K) + 1) / K

    def test_tail_shrinks(self):
        errs = [phi_eval(Exam3Phi(truncation=K), 0)[1] for K in (10, 100, 1000)]
        assert errs[0] > errs[1] > errs[2]

    def test_region_and_singularities(self):
        with pytest.raises(RegionViolation):
            phi_eval(Exam3Phi(5), 0.5)
        with pytest.raises(SingularPoint):
            phi_eval(Exam3Phi(5), 1 / 3)
        with pytest.raises(RegionViolation):
            phi_eval(Exam3Phi(), 1e-7)

    @settings(max_examples=50)
    @given(st.floats(0, 0.49), st.floats(0, 6.3), st.integers(2, 60))
    def test_partial_sums_decrease(self, r, t, k):
        import cmath
        lam = r * cmath.exp(1j * t)
        assume(min(abs(lam - 1 / s) for s in range(2, k + 2)) > 1e-6)
        a, _ = phi_eval(Exam3Phi(k), lam)
        b, _ = phi_eval(Exam3Phi(k + 1), lam)
        assert b < a


class TestExam1Phi:
    def test_origin_is_finite_and_certified(self):
        value, err = phi_eval(Exam1Phi(), (0, 0))
        assert math.isfinite(value) and err <= 1e-8

    def test_origin_against_mpmath(self):
        value, err = phi_eval(Exam1Phi(), (0, 0))
        seq = exam1_sequence(80)
        with mpmath.workdps(40):
            direct = mpmath.fsum(mpmath.mpf(2) ** -k * mpmath.log(abs(mpmath.mpc(a)) ** 2 / k)
                                 for k, a in enumerate(seq, start=1))
        assert abs(value - float(direct)) <= err

    @pytest.mark.parametrize("point", [(0, 0.3), (0.2 + 0.1j, 0.5), (0, 0.01j)])
    def test_truncations_agree_within_error(self, point):
        v1, e1 = phi_eval(Exam1Phi(truncation=30), point)
        v2, e2 = phi_eval(Exam1Phi(), point)
        assert abs(v1 - v2) <= e1 + e2

    def test_region(self):
        with pytest.raises(RegionViolation):
            phi_eval(Exam1Phi(), (0.3, 0))
        with pytest.raises(SingularPoint):
            phi_eval(Exam1Phi(truncation=5), (0.5, 1e-30))
        with pytest.raises(InvalidValue):
            Exam1Phi(truncation=0)


class TestMembership:
    def test_exam1(self):
        phi00, _ = phi_eval(G.phi, (0, 0))
        radius = math.exp(-phi00)
        assert membership(G, vec(0.5 * radius, 0, 0)) is Membership.IN
        assert membership(G, vec(2 * radius, 0, 0)) is Membership.OUT
        assert membership(G, vec(radius, 0, 0)) is Membership.INDETERMINATE
        assert membership(G, vec(0, 0.9, 0)) is Membership.IN

    def test_exam3(self):
        assert membership(G3, vec(0.6, 0)) is Membership.OUT
        assert membership(G3, vec(0, 0.1)) is Membership.IN
        assert membership(HartogsDomain.exam3(2), vec(0, 1.1)) is Membership.IN
        assert membership(G3, vec(0, 3)) is Membership.OUT


class TestCandidates:
    def test_exam1_function(self):
        phi00, err = phi_eval(G.phi, (0, 0))
        b = 0.5
        ct = vec(0, 0, 0.1)
        sup = candidate_lower_bound(G, ct, 2, vec(b, 0, 0), SIB(2))
        assert sup == pytest.approx(b * math.exp(phi00), rel=2 * err + 1e-15)
        assert sup <= b * math.exp(phi00)
        assert candidate_lower_bound(G, ct, 2, vec(b, 0, 0), SIB(2), eps=0.5) < sup

    def test_exam1_metric(self):
        t = 0.2
        phi0t, err = phi_eval(G.phi, (0, t))
        lower = candidate_lower_bound(G, vec(0, 0, t), 2, vec(1, 0, 0), MetricKind.sibony_metric(4))
        assert lower == pytest.approx(math.exp(phi0t), rel=2 * err + 1e-15)

    def test_exam3(self):
        G5 = HartogsDomain.exam3(5)
        phi5, _ = phi_eval(G5.phi, 0)
        v = candidate_lower_bound(G5, vec(0, 0), 3, vec(0, 0.2), SIB(3))
        assert v == pytest.approx(0.2 * math.exp(phi5), rel=1e-14)

    def test_invalid_bases(self):
        with pytest.raises(InvalidBase):
            candidate_lower_bound(G, vec(0, 0, 0), 2, vec(0.1, 0, 0), SIB(2))
        with pytest.raises(InvalidBase):
            candidate_lower_bound(G3, vec(0, 0), 2, vec(0, 0.1), SIB(2))
        with pytest.raises(InvalidBase):
            candidate_lower_bound(HartogsDomain.exam3(4), vec(0.1, 0), 2, vec(0, 0.1), SIB(2))


class TestProvenValues:
    def test_exam1_zeros(self):
        for kind, target in [(SIB(3), vec(0.3, 0, 0)), (MetricKind.caratheodory(), vec(1, 0, 0)),
                             (MetricKind.sibony_metric(4), vec(2j, 0, 0))]:
            v = proven_value(G, kind, vec(0, 0, 0), target)
            assert v.status is Status.PROVEN_EXACT and v.value == 0 and v.citation

    def test_exam6_value_matches_candidate(self):
        for t in (0.5, 0.01):
            A = proven_value(G, MetricKind.azukawa(), vec(0, 0, t), vec(1, 0, 0))
            lower = candidate_lower_bound(G, vec(0, 0, t), 2, vec(1, 0, 0),
                                          MetricKind.sibony_metric(4))
            assert 0 <= A.value - lower <= 2 * A.certified_error

    def test_slice_and_exam3(self):
        assert proven_value(D, SIB(2), vec(0.1, 0), vec(0.2, 0)).value == 0
        with pytest.raises(RegionViolation):
            proven_value(D, SIB(2), vec(0.1, 0.3), vec(0.2, 0))  # phi(xi, 0) is uncertified
        assert proven_value(G3, SIB(5), vec(0, 0), vec(0, 0.3)).value == 0
        assert proven_value(G3, MetricKind.sibony_metric(2), vec(0, 0), vec(0, 1)).value == 0

    def test_whitelist_is_closed(self):
        phi0, _ = phi_eval(G3.phi, 0)
        with pytest.raises(NotProven):
            proven_value(G3, SIB(2), vec(0, 0), vec(0, 1.1 * math.exp(phi0)))
        with pytest.raises(NotProven):
            proven_value(G, MetricKind.green(), vec(0, 0, 0), vec(0.1, 0, 0))
        with pytest.raises(NotProven):
            proven_value(G, SIB(2), vec(0, 0, 0), vec(0.1, 0.1, 0.1))
        with pytest.raises(DomainViolation):
            proven_value(G, SIB(2), vec(0, 0, 0), vec(100, 0, 0))


class TestIncreasingTable:
    def test_first_row(self):
        (row,) = increasing_family_table(2, 0.1, 2)
        assert row.k == 2
        assert row.exp_phi_k_0 == pytest.approx(0.840896, abs=1e-6)
        assert row.lower_bound >= 0.0840896 - 1e-7
        assert row.proven_G_value == 0

    def test_monotone_with_limit(self):
        rows = increasing_family_table(200, 0.1, 2)
        assert all(a.exp_phi_k_0 > b.exp_phi_k_0 for a, b in zip(rows, rows[1:]))
        # phi_k(0) - phi(0) = sum_{s>k} log s / s^2 <= (log k + 1) / k
        for row in rows:
            gap = row.phi_k_0 - ZETA_PRIME_2
            assert 0 < gap <= (math.log(row.k) + 1) / row.k

    def test_validation(self):
        with pytest.raises(InvalidValue):
            increasing_family_table(1, 0.1, 2)
        with pytest.raises(InvalidValue):
            increasing_family_table(5, 0.5, 2)


def test_to_dict():
    assert HartogsDomain.exam3(4).to_dict() == {"type": "hartogs", "variant": "exam3", "k": 4}
    assert hartogs.Variant("exam1-slice") is hartogs.Variant.EXAM1_SLICE
