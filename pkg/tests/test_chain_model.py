"""
Tests for the chain model: couplings, eigenmode amplitudes and H_S(t)
"""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from blochchain.exceptions import ConfigurationError
from blochchain.schemas import ChainSpec, CouplingProfile, CouplingVariant, HamiltonianMatrix
from blochchain.services.chain_model import (
    ChainHamiltonian,
    base_amplitude_for,
    base_frequency_for,
    bond_couplings,
    coupling_at,
    eigenmode_bond_amplitudes,
    eigenmode_parameters,
    hamiltonian_at,
    modulation_amplitudes,
    validate_profile,
)


class TestChainSpec:
    """Test chain specification"""

    def test_site_energies_default_to_zero(self):
        """Test omitted site energies are filled with zeros"""
        spec = ChainSpec(n_nodes=5, field_strength=0.2)

        assert spec.site_energies == (0.0,) * 5

    def test_site_energies_length_checked(self):
        """Test wrong number of site energies is rejected"""
        with pytest.raises(ValidationError):
            ChainSpec(n_nodes=3, site_energies=[0.0, 1.0])

    def test_unknown_keys_rejected(self):
        """Test extra fields are forbidden"""
        with pytest.raises(ValidationError):
            ChainSpec(n_nodes=3, temperature=1.0)

    def test_negative_dephasing_rejected(self):
        with pytest.raises(ValidationError):
            ChainSpec(n_nodes=3, dephasing_rate=-0.1)

    def test_bloch_period(self, reference_chain):
        """Test T_B = 2π/f = 10π for f = 0.2"""
        assert reference_chain.bloch_period == pytest.approx(10 * math.pi)

    def test_bloch_period_without_field(self):
        """Test f = 0 has no Bloch period"""
        with pytest.raises(ConfigurationError):
            ChainSpec(n_nodes=4).bloch_period

    def test_diagonal_uses_one_based_index(self):
        """Test E_n + f·n with n = 1..N"""
        spec = ChainSpec(n_nodes=3, site_energies=[1.0, 0.0, -1.0], field_strength=0.5)

        np.testing.assert_allclose(spec.diagonal_energies(), [1.5, 1.0, 0.5])


class TestCouplingProfile:
    """Test coupling profile validation"""

    def test_uniform_singular_amplitude_rejected(self):
        """Test a = 0.6 violates 2a < 1"""
        with pytest.raises(ValidationError) as exc_info:
            CouplingProfile.uniform(0.6, 0.2)

        assert "singular coupling" in str(exc_info.value)

    def test_uniform_amplitude_at_bound_accepted(self):
        profile = CouplingProfile.uniform(0.4995, 0.2)

        assert profile.variant == CouplingVariant.UNIFORM

    def test_static_profile_without_amplitude(self):
        """Test a static profile cannot oscillate"""
        with pytest.raises(ValidationError):
            CouplingProfile(variant="static", amplitude=0.1)

    def test_with_value_revalidates(self, uniform_profile):
        """Test copies with replaced fields are validated"""
        shifted = uniform_profile.with_value(phase=math.pi)

        assert shifted.phase == math.pi
        assert uniform_profile.phase == 0.0
        with pytest.raises(ValidationError):
            uniform_profile.with_value(amplitude=0.7)

    def test_period(self, uniform_profile, static_profile):
        assert uniform_profile.period == pytest.approx(10 * math.pi)
        assert static_profile.period == math.inf

    def test_profiles_are_frozen(self, uniform_profile):
        with pytest.raises(ValidationError):
            uniform_profile.amplitude = 0.2


class TestCouplingAt:
    """Test single-bond couplings J_n(t)"""

    def test_static_coupling_is_constant(self, reference_chain, static_profile):
        """Test J_n(t) = −V on the static chain"""
        for t in (0.0, 1.3, 17.0):
            assert coupling_at(static_profile, reference_chain, 1, t) == -1.0
            assert coupling_at(static_profile, reference_chain, 102, t) == -1.0

    def test_uniform_coupling_at_zero_modulation(self, reference_chain, uniform_profile):
        """Test sin(ωt + φ) = 0 gives J = −V"""
        assert coupling_at(uniform_profile, reference_chain, 5, 0.0) == pytest.approx(-1.0)

    def test_uniform_coupling_at_peak(self, reference_chain, uniform_profile):
        """Test ωt + φ = π/2 gives J = −V/(1 − 2a)³"""
        t = (math.pi / 2) / 0.2

        assert coupling_at(uniform_profile, reference_chain, 5, t) == pytest.approx(-1.0 / 0.8 ** 3)

    def test_uniform_coupling_at_trough(self, reference_chain, uniform_profile):
        t = (3 * math.pi / 2) / 0.2

        assert coupling_at(uniform_profile, reference_chain, 5, t) == pytest.approx(-1.0 / 1.2 ** 3)

    def test_decoupled_chain(self, uniform_profile):
        """Test V = 0 gives vanishing couplings"""
        spec = ChainSpec(n_nodes=6, dipolar_prefactor=0.0, field_strength=0.2)

        assert coupling_at(uniform_profile, spec, 3, 4.0) == 0.0

    @pytest.mark.parametrize("bond_index", [0, 103, -1])
    def test_bond_index_out_of_range(self, reference_chain, static_profile, bond_index):
        """Test bond indices outside [1, N−1] are rejected"""
        with pytest.raises(ConfigurationError):
            coupling_at(static_profile, reference_chain, bond_index, 0.0)

    def test_bond_couplings_match_single_bonds(self, reference_chain, eigenmode_profile):
        """Test the vectorised couplings agree with coupling_at"""
        t = 3.3
        couplings = bond_couplings(reference_chain, eigenmode_profile, t)

        assert couplings.shape == (102,)
        for bond in (1, 26, 51, 102):
            assert couplings[bond - 1] == coupling_at(eigenmode_profile, reference_chain, bond, t)

    @pytest.mark.parametrize("profile_name", ["uniform_profile", "eigenmode_profile"])
    def test_couplings_repeat_after_one_oscillation(self, request, reference_chain, profile_name):
        """Test J_n(t + 2π/ω) = J_n(t)"""
        profile = request.getfixturevalue(profile_name).with_value(phase=0.7)

        for t in (0.0, 3.3, 11.9):
            np.testing.assert_allclose(
                bond_couplings(reference_chain, profile, t + profile.period),
                bond_couplings(reference_chain, profile, t),
                rtol=1e-10,
            )

    def test_eigenmode_coupling_at_zero_modulation(self, reference_chain, eigenmode_profile):
        """Test the middle bond of the lowest mode at t = 0, φ = 0"""
        assert coupling_at(eigenmode_profile, reference_chain, 52, 0.0) == pytest.approx(-1.0, abs=1e-12)


class TestEigenmode:
    """Test eigenmode bond amplitudes"""

    def test_lowest_mode_is_symmetric(self):
        """Test a_{n,1} = a_{N−n,1}"""
        amplitudes = eigenmode_bond_amplitudes(103, 1, 4.12)

        np.testing.assert_allclose(amplitudes, amplitudes[::-1], atol=1e-14)
        assert np.all(amplitudes > 0)

    def test_mean_amplitude_closed_form(self, reference_chain):
        """Test ā₁ from the direct sum equals a/N to 1e-12"""
        base = base_amplitude_for(0.04, 1, 103)
        params = eigenmode_parameters(reference_chain, 1, base, base_frequency_for(0.2, 1, 103))

        assert base == pytest.approx(4.12)
        assert params.mean_amplitude == pytest.approx(base / 103, rel=1e-12)
        assert params.mode_frequency == pytest.approx(0.2, rel=1e-12)
        assert len(params.bond_amplitudes) == 102

    def test_mode_frequency(self, reference_chain):
        """Test ω_q = 2ω sin(qπ/2N)"""
        params = eigenmode_parameters(reference_chain, 2, 1.0, 3.0)

        assert params.mode_frequency == pytest.approx(6.0 * math.sin(2 * math.pi / 206))

    def test_zero_mean_amplitude_is_static_chain(self, reference_chain, static_profile):
        profile = CouplingProfile.eigenmode(0.0, 0.2, 0.4)

        for t in (0.0, 7.85, 20.0):
            np.testing.assert_array_equal(
                bond_couplings(reference_chain, profile, t),
                bond_couplings(reference_chain, static_profile, t),
            )

    def test_mode_index_range(self, reference_chain):
        with pytest.raises(ConfigurationError):
            eigenmode_parameters(reference_chain, 103, 1.0, 1.0)

    def test_large_mean_amplitude_is_singular(self, reference_chain):
        """Test the per-bond bound is checked against the chain"""
        profile = CouplingProfile.eigenmode(0.4, 0.2)

        with pytest.raises(ConfigurationError, match="singular coupling"):
            validate_profile(reference_chain, profile)

    def test_modulation_amplitudes(self, reference_chain, eigenmode_profile, uniform_profile, static_profile):
        np.testing.assert_array_equal(modulation_amplitudes(reference_chain, static_profile), np.zeros(102))
        np.testing.assert_allclose(modulation_amplitudes(reference_chain, uniform_profile), np.full(102, 0.1))
        eigen = modulation_amplitudes(reference_chain, eigenmode_profile)
        assert eigen.max() == pytest.approx(4.12 * math.tan(math.pi / 206) * math.sin(51 * math.pi / 103))


class TestHamiltonian:
    """Test H_S(t) assembly"""

    def test_hamiltonian_bands(self, reference_chain, uniform_profile):
        """Test diagonal f·n and non-positive off-diagonal"""
        matrix = hamiltonian_at(reference_chain, uniform_profile, 2.0)

        assert matrix.dimension == 103
        np.testing.assert_allclose(matrix.diagonal, 0.2 * np.arange(1, 104))
        assert np.all(matrix.off_diagonal < 0)
        assert matrix.evaluated_at == 2.0

    def test_dense_matrix_is_symmetric(self, small_chain, uniform_profile):
        dense = hamiltonian_at(small_chain, uniform_profile, 1.0).to_dense()

        assert dense.shape == (12, 12)
        np.testing.assert_array_equal(dense, dense.T)
        assert dense[0, 2] == 0.0

    def test_positive_coupling_rejected(self):
        with pytest.raises(ValidationError):
            HamiltonianMatrix(dimension=2, diagonal=[0.0, 0.0], off_diagonal=[0.5], evaluated_at=0.0)

    def test_arrays_are_read_only(self, small_chain, static_profile):
        matrix = hamiltonian_at(small_chain, static_profile, 0.0)

        with pytest.raises(ValueError):
            matrix.diagonal[0] = 1.0

    def test_chain_hamiltonian_reuses_diagonal(self, small_chain, uniform_profile):
        hamiltonian = ChainHamiltonian(small_chain, uniform_profile)

        np.testing.assert_array_equal(hamiltonian.at(0.0).diagonal, hamiltonian.at(5.0).diagonal)
