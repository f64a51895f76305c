import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from qcarnot import (
    DomainError,
    MixedState,
    StateError,
    WellParams,
    eigenenergy,
    eigenfunction_value,
    entropy,
    expectation_energy,
    wall_force,
)
from strategies import mixed_states, widths


class TestEigenenergy:
    def test_ground_state_unit_box(self):
        assert eigenenergy(1, 1.0) == pytest.approx(math.pi ** 2 / 2, rel=1e-15)

    def test_n_over_l_scaling_symmetry(self):
        assert eigenenergy(2, 2.0) == pytest.approx(eigenenergy(1, 1.0), rel=1e-15)

    def test_third_level(self):
        assert eigenenergy(3, 1.0) == pytest.approx(9 * math.pi ** 2 / 2, rel=1e-15)

    def test_units_enter_quadratically_in_hbar(self):
        p = WellParams(hbar=2.0, mass=1.0)
        assert eigenenergy(1, 1.0, p) == pytest.approx(4 * eigenenergy(1, 1.0), rel=1e-15)

    def test_monotone_in_n_and_decreasing_in_l(self):
        assert eigenenergy(4, 1.0) > eigenenergy(3, 1.0)
        assert eigenenergy(1, 2.0) < eigenenergy(1, 1.0)

    @pytest.mark.parametrize("n,L", [(0, 1.0), (-1, 1.0), (1, 0.0), (1, -2.0), (1.5, 1.0)])
    def test_domain_errors(self, n, L):
        with pytest.raises(DomainError):
            eigenenergy(n, L)

    @given(n=st.integers(1, 20), L=widths(), lam=st.floats(0.1, 10.0))
    def test_width_scaling(self, n, L, lam):
        assert eigenenergy(n, lam * L) == pytest.approx(eigenenergy(n, L) / lam ** 2, rel=1e-12)


class TestEigenfunction:
    def test_vanishes_at_walls(self):
        assert eigenfunction_value(1, 1.0, 0.0) == 0.0
        assert abs(eigenfunction_value(1, 1.0, 1.0)) < 1e-15

    def test_peak_of_ground_mode(self):
        assert eigenfunction_value(1, 1.0, 0.5) == pytest.approx(math.sqrt(2), rel=1e-15)

    def test_node_of_second_mode(self):
        assert abs(eigenfunction_value(2, 1.0, 0.5)) < 1e-15

    def test_outside_box_rejected(self):
        with pytest.raises(DomainError):
            eigenfunction_value(1, 1.0, 1.5)
        with pytest.raises(DomainError):
            eigenfunction_value(1, 1.0, -0.1)

    @given(n=st.integers(1, 8), L=widths(0.5, 4.0))
    def test_unit_norm(self, n, L):
        norm = oracles.gauss_integral(
            lambda x: oracles.box_mode(n, L, x) ** 2, 0.0, L, 4 * n + 4
        )
        assert norm == pytest.approx(1.0, abs=1e-12)


class TestMixedState:
    def test_pure_state(self):
        s = MixedState.pure(3)
        assert s.populations == ((3, 1.0),)
        assert s.is_pure

    def test_from_dict_sorts_levels(self):
        s = MixedState.from_pairs({5: 0.25, 2: 0.75})
        assert s.populations == ((2, 0.75), (5, 0.25))

    def test_rejects_unnormalized(self):
        with pytest.raises(StateError):
            MixedState.from_pairs({1: 0.5, 2: 0.4})

    def test_normalization_tolerance_boundary(self):
        MixedState.from_pairs({1: 0.5, 2: 0.5 + 0.9e-12})
        with pytest.raises(StateError):
            MixedState.from_pairs({1: 0.5, 2: 0.5 + 1.1e-11})

    def test_renormalize_option(self):
        s = MixedState.from_pairs({1: 2.0, 2: 6.0}, renormalize=True)
        assert s.populations == ((1, 0.25), (2, 0.75))

    def test_rejects_negative_weight(self):
        with pytest.raises(StateError):
            MixedState.from_pairs({1: 1.5, 2: -0.5})

    def test_rejects_duplicate_level(self):
        with pytest.raises(StateError):
            MixedState.from_pairs([(1, 0.5), (1, 0.5)])

    def test_rejects_bad_level(self):
        with pytest.raises((StateError, DomainError)):
            MixedState.from_pairs({0: 1.0})

    def test_immutable_arrays(self):
        s = MixedState.pure(1)
        with pytest.raises(ValueError):
            s.weights[0] = 0.5


class TestExpectationEnergy:
    def test_pure_reduces_to_eigenenergy(self):
        assert expectation_energy(MixedState.pure(1), 1.0) == pytest.approx(
            eigenenergy(1, 1.0), rel=1e-15
        )

    def test_even_two_level_mixture(self):
        s = MixedState.from_pairs({1: 0.5, 2: 0.5})
        assert expectation_energy(s, 1.0) == pytest.approx(5 * math.pi ** 2 / 4, rel=1e-14)

    def test_hot_energy_recovered_at_matched_width(self):
        # A (0.25, 0.75) mixture carries the pure-ground energy of width L1
        # exactly when L^2 = L1^2 * (4 - 3*0.25).
        s = MixedState.from_pairs({1: 0.25, 2: 0.75})
        L1 = 1.0
        L = L1 * math.sqrt(4 - 3 * 0.25)
        assert expectation_energy(s, L) == pytest.approx(eigenenergy(1, L1), rel=1e-13)


class TestWallForce:
    def test_pure_ground_unit_box(self):
        assert wall_force(MixedState.pure(1), 1.0) == pytest.approx(math.pi ** 2, rel=1e-15)

    def test_even_mixture_against_finite_difference(self):
        s = MixedState.from_pairs({1: 0.5, 2: 0.5})
        force = wall_force(s, 1.0)
        assert force == pytest.approx(2.5 * math.pi ** 2, rel=1e-14)
        fd = -oracles.central_difference(lambda L: expectation_energy(s, L), 1.0, 1e-6)
        assert force == pytest.approx(fd, rel=1e-6)

    def test_pure_second_level_at_doubled_width(self):
        assert wall_force(MixedState.pure(2), 2.0) == pytest.approx(
            math.pi ** 2 / 2, rel=1e-14
        )

    @given(s=mixed_states(), L=widths())
    def test_virial_identity(self, s, L):
        assert wall_force(s, L) * L == pytest.approx(
            2 * expectation_energy(s, L), rel=1e-14
        )

    @given(s=mixed_states(), L=widths(0.5, 5.0))
    def test_finite_difference_consistency(self, s, L):
        h = 1e-6 * L
        fd = -oracles.central_difference(lambda w: expectation_energy(s, w), L, h)
        assert wall_force(s, L) == pytest.approx(fd, rel=1e-6)


class TestEntropy:
    def test_pure_state_is_zero(self):
        assert entropy(MixedState.pure(4)) == 0.0

    def test_even_mixture_is_ln2(self):
        assert entropy(MixedState.from_pairs({1: 0.5, 2: 0.5})) == pytest.approx(
            math.log(2), rel=1e-15
        )

    def test_quarter_mixture(self):
        s = MixedState.from_pairs({1: 0.25, 2: 0.75})
        assert entropy(s) == pytest.approx(0.5623351446188083, rel=1e-12)

    @given(s=mixed_states())
    def test_permutation_invariant_and_zero_iff_pure(self, s):
        relabeled = MixedState.from_pairs(
            {n + 20: w for n, w in s.populations}
        )
        assert entropy(relabeled) == pytest.approx(entropy(s), abs=1e-15)
        if s.is_pure:
            assert entropy(s) == 0.0
        else:
            assert entropy(s) > 0.0

    @given(s=mixed_states())
    def test_bounded_by_log_support(self, s):
        assert -1e-15 <= entropy(s) <= math.log(s.support_size) + 1e-12


class TestWellParams:
    @pytest.mark.parametrize("kwargs", [{"hbar": 0.0}, {"mass": -1.0}, {"hbar": math.inf}])
    def test_rejects_nonpositive_constants(self, kwargs):
        with pytest.raises(DomainError):
            WellParams(**kwargs)
