"""Tests for entropies, the ensemble information bound and the coherent
information bound."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ctrlchan.channels import apply, standard_channel
from ctrlchan.control import ControlState, classical_map, controlled_map
from ctrlchan.implementations import ChannelImplementation, standard_implementation
from ctrlchan.info import (
    Ensemble,
    binary_entropy,
    cc_dephasing_bound,
    coherent_info_bound,
    entropy,
    holevo_lower_bound,
    shannon_entropy,
    switch_holevo_qubit,
)
from ctrlchan.linalg import ket, partial_trace, projector
from ctrlchan.sampling import random_density_matrix, random_env, random_pure_state

PLUS = ControlState.plus()

H2_QUARTER = 0.8112781244591328  # -(1/4) log2(1/4) - (3/4) log2(3/4)


def maximally_entangled(d):
    phi = np.zeros(d * d, dtype=complex)
    for i in range(d):
        phi[i * d + i] = 1.0 / np.sqrt(d)
    return projector(phi)


class TestEntropy:
    def test_pure_state(self):
        rho = projector(random_pure_state(3, np.random.default_rng(0)))
        assert abs(entropy(rho)) <= 1e-10

    def test_maximally_mixed(self):
        for d in (2, 3, 4):
            assert abs(entropy(np.eye(d) / d) - np.log2(d)) <= 1e-12

    def test_diagonal_binary(self):
        assert abs(entropy(np.diag([0.75, 0.25])) - H2_QUARTER) <= 1e-12

    def test_invalid_state_rejected(self):
        with pytest.raises(ValueError):
            entropy(np.eye(2))


class TestBinaryEntropy:
    def test_reference_points(self):
        assert binary_entropy(0.5) == 1.0
        assert binary_entropy(0.0) == 0.0
        assert binary_entropy(1.0) == 0.0
        assert abs(binary_entropy(0.25) - H2_QUARTER) <= 1e-15

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            binary_entropy(1.2)

    @given(st.floats(0.0, 1.0))
    @settings(max_examples=100, deadline=None)
    def test_symmetry_and_bounds(self, p):
        value = binary_entropy(p)
        assert 0.0 <= value <= 1.0
        assert abs(value - binary_entropy(1.0 - p)) <= 1e-12

    def test_shannon_matches(self):
        assert abs(shannon_entropy([0.25, 0.75]) - H2_QUARTER) <= 1e-15


class TestEnsemble:
    def test_validation(self):
        with pytest.raises(ValueError, match="sum"):
            Ensemble(((0.5, np.eye(2) / 2), (0.4, np.eye(2) / 2)))
        with pytest.raises(ValueError, match="dimension"):
            Ensemble(((0.5, np.eye(2) / 2), (0.5, np.eye(3) / 3)))
        with pytest.raises(ValueError, match="at least one"):
            Ensemble(())

    def test_dim(self):
        ens = Ensemble(((1.0, np.eye(3) / 3),))
        assert ens.dim == 3


class TestHolevoLowerBound:
    def test_cc_depolarising_reference_value(self):
        t = np.zeros((2, 2), dtype=complex)
        t[0, 0] = 1.0 / np.sqrt(2.0)
        impl = standard_implementation("depolarising", t=t)
        ens = Ensemble(((0.6, projector(ket(0, 2))), (0.4, projector(ket(1, 2)))))
        value = holevo_lower_bound(controlled_map(impl, impl, PLUS), ens)
        assert abs(value - 0.5 * np.log2(1.25)) <= 1e-9

    def test_constant_map_gives_zero(self):
        rng = np.random.default_rng(1)
        sigma = random_density_matrix(2, rng)
        ch = standard_channel("constant", 2, sigma)
        ens = Ensemble(((0.5, projector(ket(0, 2))), (0.5, projector(ket(1, 2)))))
        value = holevo_lower_bound(lambda rho: apply(ch, rho), ens)
        assert abs(value) <= 1e-10

    def test_classical_control_of_noisy_pair_gives_zero(self):
        rng = np.random.default_rng(2)
        depol = standard_channel("depolarising", 2)
        i0 = ChannelImplementation(depol, random_env(4, rng))
        i1 = ChannelImplementation(depol, random_env(4, rng))
        ens = Ensemble((
            (0.3, projector(ket(0, 2))),
            (0.3, projector(ket(1, 2))),
            (0.4, random_density_matrix(2, rng)),
        ))
        value = holevo_lower_bound(classical_map(i0, i1, (0.5, 0.5)), ens)
        assert abs(value) <= 1e-10

    def test_bounded_by_log_ensemble_size(self):
        rng = np.random.default_rng(3)
        i0 = standard_implementation("identity", d=2, alpha=1.0)
        ens = Ensemble(((0.5, projector(ket(0, 2))), (0.5, projector(ket(1, 2)))))
        value = holevo_lower_bound(controlled_map(i0, i0, PLUS), ens)
        assert -1e-10 <= value <= np.log2(2) + 1e-10

    def test_range_on_random_instances(self):
        from ctrlchan.sampling import random_implementation

        rng = np.random.default_rng(5)
        for _ in range(10):
            i0 = random_implementation(2, int(rng.integers(1, 5)), rng)
            i1 = random_implementation(2, int(rng.integers(1, 5)), rng)
            n = int(rng.integers(2, 5))
            probs = rng.dirichlet(np.ones(n))
            ens = Ensemble(tuple(
                (float(p), random_density_matrix(2, rng)) for p in probs
            ))
            value = holevo_lower_bound(controlled_map(i0, i1, PLUS), ens)
            assert -1e-10 <= value <= np.log2(n) + 1e-10


class TestCoherentInfoBound:
    def test_identity_map_on_entangled_input(self):
        value = coherent_info_bound(lambda m: m, maximally_entangled(2))
        assert abs(value - 1.0) <= 1e-10

    def test_entanglement_entropy_identity(self):
        rng = np.random.default_rng(4)
        for _ in range(5):
            psi = random_pure_state(9, rng)
            nu0 = projector(psi)
            value = coherent_info_bound(lambda m: m, nu0)
            marginal = partial_trace(nu0, 3, 3, keep="first")
            assert abs(value - entropy(marginal)) <= 1e-9

    def test_dephasing_pair_reference_value(self):
        zp = standard_implementation("phase_flip", p=0.5, alpha=0.0, beta=1.0)
        xp = standard_implementation("bit_flip", p=0.5, alpha=0.0, beta=1.0)
        value = coherent_info_bound(controlled_map(zp, xp, PLUS), maximally_entangled(2))
        assert abs(value - (-0.75 * np.log2(0.75))) <= 1e-9

    def test_formula_matches_direct_over_sweep(self):
        nu0 = maximally_entangled(2)
        for p in np.arange(0.0, 1.0 + 1e-9, 0.1):
            zp = standard_implementation("phase_flip", p=p, alpha=0.0, beta=1.0)
            xp = standard_implementation("bit_flip", p=p, alpha=0.0, beta=1.0)
            direct = coherent_info_bound(controlled_map(zp, xp, PLUS), nu0)
            assert abs(direct - cc_dephasing_bound(p)) <= 1e-9

    def test_p_zero_transmits_perfectly(self):
        zp = standard_implementation("phase_flip", p=0.0, alpha=0.0, beta=1.0)
        xp = standard_implementation("bit_flip", p=0.0, alpha=0.0, beta=1.0)
        value = coherent_info_bound(controlled_map(zp, xp, PLUS), maximally_entangled(2))
        assert abs(value - 1.0) <= 1e-9
        assert abs(cc_dephasing_bound(0.0) - 1.0) <= 1e-15

    def test_non_square_input_rejected(self):
        with pytest.raises(ValueError, match="split"):
            coherent_info_bound(lambda m: m, np.eye(6) / 6)


class TestAnalyticBounds:
    def test_switch_value(self):
        expected = -3.0 / 8.0 - (5.0 / 8.0) * np.log2(5.0 / 8.0)
        assert abs(switch_holevo_qubit() - expected) <= 1e-15

    def test_dephasing_bound_reference_points(self):
        assert abs(cc_dephasing_bound(0.5) - 0.311278124459) <= 1e-9
        assert abs(cc_dephasing_bound(0.0) - 1.0) <= 1e-15
        assert abs(cc_dephasing_bound(1.0) - 1.0) <= 1e-15

    def test_dephasing_bound_positive_scan(self):
        for p in np.arange(0.01, 1.0, 0.01):
            assert cc_dephasing_bound(p) > 0.0

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            cc_dephasing_bound(-0.1)

    def test_bottleneck_violation(self):
        # the controlled pair beats the single phase-flip channel's own
        # coherent information 1 - H2(p), both evaluated with the same code
        nu0 = maximally_entangled(2)
        for p in np.arange(0.05, 1.0, 0.05):
            ch = standard_channel("phase_flip", 2, p)
            single = coherent_info_bound(lambda m: apply(ch, m, validate=False), nu0)
            assert abs(single - (1.0 - binary_entropy(p))) <= 1e-9
            assert cc_dephasing_bound(p) > single
