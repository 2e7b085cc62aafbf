"""Tests for channel implementations, admissibility and realisation."""

import numpy as np
import pytest

from ctrlchan.channels import choi_of, remix, standard_channel, weyl_basis
from ctrlchan.implementations import (
    ChannelImplementation,
    admissible,
    realize,
    standard_implementation,
    transformation_matrix,
)
from ctrlchan.linalg import SIGMA_X, SIGMA_Z, dagger, hs_norm
from ctrlchan.sampling import (
    random_admissible_t,
    random_channel,
    random_depolarising_t,
    random_env,
    random_implementation,
    random_unitary,
)


def spike(d):
    t = np.zeros((d, d), dtype=complex)
    t[0, 0] = 1.0 / np.sqrt(d)
    return t


class TestChannelImplementation:
    def test_length_mismatch_rejected(self):
        ch = standard_channel("depolarising", 2)
        with pytest.raises(ValueError, match="length"):
            ChannelImplementation(ch, np.array([1.0]))

    def test_overnormalised_env_rejected(self):
        ch = standard_channel("identity", 2)
        with pytest.raises(ValueError, match="norm"):
            ChannelImplementation(ch, np.array([1.2]))

    def test_subnormalised_env_is_legal(self):
        ch = standard_channel("identity", 2)
        impl = ChannelImplementation(ch, np.array([0.5]))
        assert impl.dim == 2


class TestTransformationMatrix:
    def test_identity_with_alpha(self):
        alpha = 0.3 - 0.4j
        impl = ChannelImplementation(
            standard_channel("identity", 3), np.array([np.conj(alpha)])
        )
        assert np.allclose(transformation_matrix(impl), alpha * np.eye(3), atol=1e-14)

    def test_uniform_weyl_env(self):
        d = 2
        impl = ChannelImplementation(
            standard_channel("depolarising", d), np.full(d * d, 1.0 / d, dtype=complex)
        )
        t = transformation_matrix(impl)
        # (1/d) sum_a |a><0|: the Z powers sum to d |0><0|, then X powers spread it.
        expected = np.zeros((d, d), dtype=complex)
        expected[:, 0] = 1.0 / d
        assert np.allclose(t, expected, atol=1e-12)
        assert abs(np.trace(dagger(t) @ t) - 1.0 / d) <= 1e-12

    def test_zero_env(self):
        impl = ChannelImplementation(
            standard_channel("depolarising", 2), np.zeros(4, dtype=complex)
        )
        assert np.max(np.abs(transformation_matrix(impl))) == 0.0


class TestAdmissible:
    def test_identity_rejects_sigma_x(self):
        rep = admissible(standard_channel("identity", 2), 0.7 * SIGMA_X)
        assert not rep.admissible
        assert rep.range_residual > 0.5

    def test_identity_accepts_scaled_identity(self):
        rep = admissible(standard_channel("identity", 2), 0.8j * np.eye(2))
        assert rep.admissible
        assert abs(rep.quadratic_form - 0.64) <= 1e-10

    def test_depolarising_accepts_small_hs_norm(self):
        rng = np.random.default_rng(0)
        depol = standard_channel("depolarising", 2)
        for _ in range(20):
            t = random_depolarising_t(2, rng)
            rep = admissible(depol, t)
            assert rep.admissible
            assert abs(rep.quadratic_form - 2 * hs_norm(t) ** 2) <= 1e-9

    def test_phase_flip_membership_sphere(self):
        p = 0.4
        ch = standard_channel("phase_flip", 2, p)
        alpha, beta = 0.6, 0.8j
        t = alpha * np.sqrt(1 - p) * np.eye(2) + beta * np.sqrt(p) * SIGMA_Z
        assert admissible(ch, t).admissible
        t_bad = np.sqrt(1.1) * t
        assert not admissible(ch, t_bad).admissible

    def test_zero_matrix_always_admissible(self):
        rng = np.random.default_rng(1)
        ch = random_channel(2, 3, rng)
        rep = admissible(ch, np.zeros((2, 2)))
        assert rep.admissible
        assert rep.range_residual == 0.0 and rep.quadratic_form == 0.0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension"):
            admissible(standard_channel("identity", 2), np.eye(3))


class TestRealize:
    def test_identity_half(self):
        ch = standard_channel("identity", 2)
        impl = realize(ch, 0.5 * np.eye(2))
        assert len(impl.channel.kraus) == 1
        assert abs(abs(impl.env[0]) - 0.5) <= 1e-12
        assert np.allclose(transformation_matrix(impl), 0.5 * np.eye(2), atol=1e-12)

    def test_depolarising_spike_roundtrip(self):
        ch = standard_channel("depolarising", 2)
        t = spike(2)
        impl = realize(ch, t)
        assert np.max(np.abs(transformation_matrix(impl) - t)) <= 1e-12

    def test_phase_flip_env_support(self):
        p = 0.3
        ch = standard_channel("phase_flip", 2, p)
        impl = realize(ch, np.sqrt(p) * SIGMA_Z)
        # canonical Kraus are proportional to identity and sigma_z; the env
        # must sit entirely on the sigma_z one.
        weights = [
            (abs(amp), np.max(np.abs(np.abs(k) - np.abs(SIGMA_Z) * np.sqrt(p))))
            for amp, k in zip(impl.env, impl.channel.kraus)
        ]
        for amp, is_z in weights:
            if is_z <= 1e-12:
                assert abs(amp - 1.0) <= 1e-12
            else:
                assert amp <= 1e-12

    def test_inadmissible_rejected_with_diagnostics(self):
        ch = standard_channel("identity", 2)
        with pytest.raises(ValueError, match="residual"):
            realize(ch, SIGMA_X)

    def test_roundtrip_random(self):
        rng = np.random.default_rng(2)
        for d in (2, 3):
            for _ in range(10):
                ch = random_channel(d, int(rng.integers(1, d * d + 1)), rng)
                t = random_admissible_t(ch, rng)
                impl = realize(ch, t)
                assert np.max(np.abs(transformation_matrix(impl) - t)) <= 1e-10


class TestStandardImplementation:
    def test_depolarising_spike_env_pattern(self):
        impl = standard_implementation("depolarising", t=spike(2))
        # overlaps Tr[U_i^dag T] over the Weyl order (1, Z, X, XZ):
        # (1/sqrt(2)) * (1, 1, 0, 0)
        expected = np.array([1.0, 1.0, 0.0, 0.0]) / np.sqrt(2.0)
        assert np.allclose(impl.env, expected, atol=1e-12)
        assert np.max(np.abs(transformation_matrix(impl) - spike(2))) <= 1e-12

    def test_identity_alpha_one(self):
        impl = standard_implementation("identity", d=3, alpha=1.0)
        assert np.allclose(impl.env, [1.0])
        assert np.allclose(transformation_matrix(impl), np.eye(3), atol=1e-14)

    def test_identity_alpha_too_large(self):
        with pytest.raises(ValueError, match="alpha"):
            standard_implementation("identity", d=2, alpha=1.5)

    def test_depolarising_constraint_violated(self):
        t = np.eye(2, dtype=complex)  # Tr[T^dag T] = 2 > 1/2
        with pytest.raises(ValueError, match="bound"):
            standard_implementation("depolarising", t=t)

    def test_partial_depolarising_general(self):
        rng = np.random.default_rng(3)
        q, d = 0.6, 2
        ch = standard_channel("partial_depolarising", d, q)
        for _ in range(10):
            t = random_admissible_t(ch, rng)
            impl = standard_implementation("partial_depolarising", q=q, t=t)
            assert np.max(np.abs(transformation_matrix(impl) - t)) <= 1e-10
            # membership constraint quoted on the trace form
            lhs = np.trace(dagger(t) @ t) - d * q / (d * d * q + 1 - q) * abs(np.trace(t)) ** 2
            assert np.real(lhs) <= (1 - q) / d + 1e-9

    def test_partial_depolarising_rejects_outside(self):
        q, d = 0.5, 2
        t = np.eye(d, dtype=complex)  # trace form: 2 - (1/2.5)*4 = 0.4 > 0.25
        with pytest.raises(ValueError, match="constraint"):
            standard_implementation("partial_depolarising", q=q, t=t)

    def test_partial_depolarising_q_one(self):
        impl = standard_implementation(
            "partial_depolarising", q=1.0, t=0.4 * np.eye(2, dtype=complex)
        )
        assert np.max(np.abs(transformation_matrix(impl) - 0.4 * np.eye(2))) <= 1e-12
        with pytest.raises(ValueError, match="range"):
            standard_implementation("partial_depolarising", q=1.0, t=spike(2))

    def test_flip_families(self):
        p = 0.25
        alpha, beta = 0.6, 0.8
        for kind, pauli in (("phase_flip", SIGMA_Z), ("bit_flip", SIGMA_X)):
            impl = standard_implementation(kind, p=p, alpha=alpha, beta=beta)
            expected = alpha * np.sqrt(1 - p) * np.eye(2) + beta * np.sqrt(p) * pauli
            assert np.max(np.abs(transformation_matrix(impl) - expected)) <= 1e-12

    def test_flip_constraint(self):
        with pytest.raises(ValueError, match="exceeds"):
            standard_implementation("phase_flip", p=0.5, alpha=1.0, beta=0.5)


class TestProperties:
    def test_forward_completeness(self):
        rng = np.random.default_rng(4)
        for _ in range(40):
            d = int(rng.integers(2, 4))
            impl = random_implementation(d, int(rng.integers(1, d * d + 1)), rng)
            rep = admissible(impl.channel, transformation_matrix(impl))
            assert rep.admissible
            assert rep.quadratic_form <= 1.0 + 1e-8

    def test_representation_covariance(self):
        # remixing the Kraus list by u while sending env -> u env leaves T fixed
        rng = np.random.default_rng(5)
        for _ in range(10):
            impl = random_implementation(2, 3, rng)
            u = random_unitary(3, rng)
            remixed = ChannelImplementation(remix(impl.channel, u), u @ impl.env)
            before = transformation_matrix(impl)
            after = transformation_matrix(remixed)
            assert np.max(np.abs(after - before)) <= 1e-10

    def test_depolarising_specialisation(self):
        rng = np.random.default_rng(6)
        depol = standard_channel("depolarising", 2)
        for _ in range(40):
            target = rng.uniform(0.0, 1.0)
            if abs(target - 0.5) < 1e-3:
                continue
            t = random_depolarising_t(2, rng, hs_norm_sq=target)
            assert admissible(depol, t).admissible == (target <= 0.5)

    def test_env_uses_weyl_overlaps(self):
        # amplitudes of the depolarising family are conjugated Weyl overlaps
        rng = np.random.default_rng(7)
        d = 3
        t = random_depolarising_t(d, rng)
        impl = standard_implementation("depolarising", t=t)
        for amp, u in zip(impl.env, weyl_basis(d)):
            assert abs(np.conj(amp) - np.trace(dagger(u) @ t)) <= 1e-12

    def test_candidates_share_choi(self):
        ch = standard_channel("depolarising", 2)
        a = realize(ch, spike(2))
        b = realize(ch, -spike(2))
        assert np.max(np.abs(choi_of(a.channel) - choi_of(b.channel))) <= 1e-12

    def test_random_env_norm_bound(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            env = random_env(5, rng)
            assert np.sum(np.abs(env) ** 2) <= 1.0 + 1e-12
