import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from qcarnot import (
    DomainError,
    MixedState,
    TruncationError,
    cosine_series,
    expectation_energy,
    level_overlap_squares,
    overlap_coefficient,
    post_expansion_distribution,
    verify_energy_identity,
)
from strategies import mixed_states


class TestOverlapCoefficient:
    def test_ground_to_ground_doubling(self):
        assert overlap_coefficient(1, 1, 2.0) == pytest.approx(
            4 * math.sqrt(2) / (3 * math.pi), rel=1e-14
        )

    def test_resonant_limit(self):
        assert overlap_coefficient(1, 2, 2.0) == pytest.approx(1 / math.sqrt(2), rel=1e-14)
        assert overlap_coefficient(3, 6, 2.0) == pytest.approx(1 / math.sqrt(2), rel=1e-14)

    def test_identity_ratio_is_kronecker_delta(self):
        assert overlap_coefficient(3, 3, 1.0) == 1.0
        assert overlap_coefficient(3, 5, 1.0) == 0.0

    def test_near_resonance_is_stable(self):
        # A hair off resonance must stay close to the resonant limit, not blow
        # up through cancellation in the raw quotient form.
        alpha = 2.0 + 1e-11
        assert overlap_coefficient(1, 2, alpha) == pytest.approx(
            1 / math.sqrt(2.0), rel=1e-9
        )

    def test_matches_integration_small_grid(self):
        for alpha in (1.3, 2.0, 2.5):
            for n in (1, 2, 5):
                for m in (1, 2, 3, 8):
                    assert overlap_coefficient(n, m, alpha) == pytest.approx(
                        oracles.overlap_by_integration(n, m, alpha), abs=1e-10
                    )

    def test_rejects_bad_arguments(self):
        with pytest.raises(DomainError):
            overlap_coefficient(0, 1, 2.0)
        with pytest.raises(DomainError):
            overlap_coefficient(1, 1, 0.5)

    @given(n=st.integers(1, 6), alpha=st.floats(1.05, 3.5))
    @settings(max_examples=30)
    def test_completeness(self, n, alpha):
        squares = level_overlap_squares(n, alpha, 6000)
        assert float(squares.sum()) == pytest.approx(1.0, abs=1e-7)


class TestPostExpansionDistribution:
    def test_pure_ground_doubling(self):
        out, report = post_expansion_distribution(MixedState.pure(1), 2.0, 1e-6)
        raw = dict(zip(out.levels.tolist(), (out.weights * report.achieved_sum).tolist()))
        assert raw[1] == pytest.approx(32 / (9 * math.pi ** 2), rel=1e-13)
        assert raw[2] == pytest.approx(0.5, abs=1e-15)

    def test_identity_ratio_returns_input(self):
        s = MixedState.from_pairs({1: 0.5, 3: 0.5})
        out, report = post_expansion_distribution(s, 1.0, 1e-6)
        assert out.populations == s.populations
        assert report.tail_bound == 0.0

    def test_energy_conserved_for_pure_ground(self):
        s = MixedState.pure(1)
        out, report = post_expansion_distribution(s, 2.0, 1e-6)
        e_pre = expectation_energy(s, 1.0)
        e_post = expectation_energy(out, 2.0)
        assert abs(e_post - e_pre) / e_pre <= report.tail_bound
        assert e_post == pytest.approx(math.pi ** 2 / 2, rel=1e-5)

    def test_deficit_within_reported_bound(self):
        s = MixedState.from_pairs({2: 0.3, 7: 0.7})
        out, report = post_expansion_distribution(s, 1.7, 1e-5)
        assert 0.0 <= 1.0 - report.achieved_sum <= report.tail_bound <= 1e-5

    def test_output_is_renormalized(self):
        out, _ = post_expansion_distribution(MixedState.pure(2), 1.5, 1e-4)
        assert float(out.weights.sum()) == pytest.approx(1.0, abs=1e-12)

    def test_mixture_linearity_at_matched_cutoff(self):
        terms = 4000
        rows = {n: level_overlap_squares(n, 1.8, terms) for n in (1, 4)}
        mixed = 0.25 * rows[1] + 0.75 * rows[4]
        s = MixedState.from_pairs({1: 0.25, 4: 0.75})
        out, report = post_expansion_distribution(s, 1.8, 1e-4)
        m = min(terms, report.terms_used)
        raw = np.zeros(m)
        raw[out.levels[out.levels <= m] - 1] = (
            out.weights[out.levels <= m] * report.achieved_sum
        )
        np.testing.assert_allclose(raw, mixed[:m], rtol=0, atol=1e-15)

    def test_tail_tol_domain(self):
        with pytest.raises(DomainError):
            post_expansion_distribution(MixedState.pure(1), 2.0, 0.0)
        with pytest.raises(DomainError):
            post_expansion_distribution(MixedState.pure(1), 2.0, 1e-2)

    def test_budget_exhaustion(self):
        with pytest.raises(TruncationError):
            post_expansion_distribution(MixedState.pure(1), 2.0, 1e-6, term_budget=500)

    @given(s=mixed_states(max_support=4, max_level=8), alpha=st.floats(1.2, 2.6))
    @settings(max_examples=15, deadline=None)
    def test_energy_conservation_property(self, s, alpha):
        out, report = post_expansion_distribution(s, alpha, 1e-4)
        e_pre = expectation_energy(s, 1.0)
        e_post = expectation_energy(out, alpha)
        assert abs(e_post - e_pre) / e_pre <= report.tail_bound <= 1e-4


class TestVerifyEnergyIdentity:
    def test_doubling_from_ground(self):
        report = verify_energy_identity(1, 2.0, 1e-6)
        assert abs(report.achieved_sum - 1.0) <= 1e-6
        assert report.tail_bound <= 1e-6

    def test_second_level_fractional_ratio(self):
        report = verify_energy_identity(2, 1.5, 1e-6)
        assert abs(report.achieved_sum - 1.0) <= 1e-6

    def test_tight_tolerance_irrational_ratio(self):
        report = verify_energy_identity(1, 3.7, 1e-8)
        assert abs(report.achieved_sum - 1.0) <= 1e-8
        assert report.tail_bound <= 1e-8

    def test_alpha_must_exceed_one(self):
        with pytest.raises(DomainError, match="alpha must exceed 1"):
            verify_energy_identity(1, 1.0, 1e-6)

    def test_tol_domain(self):
        with pytest.raises(DomainError):
            verify_energy_identity(1, 2.0, 1e-3)

    def test_budget_exhaustion(self):
        with pytest.raises(TruncationError):
            verify_energy_identity(1, 2.0, 1e-6, max_terms=1000)

    def test_report_fields(self):
        report = verify_energy_identity(3, 1.25, 1e-5)
        assert report.terms_used >= 64
        assert 0.0 < report.tail_bound <= 1e-5
        assert report.achieved_sum == pytest.approx(1.0, abs=1e-5)

    def test_near_unity_ratio_still_certifies(self):
        # The oscillation bound grows like 1/sin(pi/alpha) as alpha -> 1, so
        # this is the hard corner of the certification.
        report = verify_energy_identity(1, 1.01, 1e-4, max_terms=3_000_000)
        assert abs(report.achieved_sum - 1.0) <= 1e-4


class TestCosineSeries:
    def test_value_at_pi_half_integer(self):
        assert cosine_series(math.pi, 0.5) == pytest.approx(2.0 - math.pi, rel=1e-14)

    def test_matches_partial_sums(self):
        value = cosine_series(math.pi / 2, 0.25)
        reference, bound = oracles.cosine_partial_sum(math.pi / 2, 0.25, 5e-9)
        assert value == pytest.approx(reference, abs=1e-8)
        assert bound <= 5e-9

    def test_symmetric_about_pi(self):
        for u in (0.3, 1.7, 4.4):
            for x in (0.5, 1.2, 2.9):
                assert cosine_series(x, u) == pytest.approx(
                    cosine_series(2 * math.pi - x, u), rel=1e-12
                )

    def test_pole_rejection(self):
        with pytest.raises(DomainError):
            cosine_series(1.0, 2.0)
        with pytest.raises(DomainError):
            cosine_series(1.0, 3.0 + 5e-10)
        with pytest.raises(DomainError):
            cosine_series(1.0, 0.0)

    def test_x_domain(self):
        with pytest.raises(DomainError):
            cosine_series(0.0, 0.5)
        with pytest.raises(DomainError):
            cosine_series(2 * math.pi, 0.5)

    @given(x=st.floats(0.3, 2 * math.pi - 0.3), u=st.floats(0.05, 5.95))
    @settings(max_examples=40, deadline=None)
    def test_partial_sum_agreement_randomized(self, x, u):
        if abs(u - round(u)) < 1e-3:
            return
        reference, bound = oracles.cosine_partial_sum(x, u, 1e-9)
        assert cosine_series(x, u) == pytest.approx(reference, abs=1e-8 + bound)
