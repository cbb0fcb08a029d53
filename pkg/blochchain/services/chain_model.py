"""
Chain model: bond couplings J_n(t) and the tridiagonal Hamiltonian H_S(t)
"""
import math
from functools import lru_cache

import numpy as np
import structlog

from blochchain.constants import MAX_MODULATION
from blochchain.exceptions import ConfigurationError, NumericalError
from blochchain.schemas.chain import (
    ChainSpec,
    CouplingProfile,
    CouplingVariant,
    EigenmodeParameters,
    HamiltonianMatrix,
)

logger = structlog.get_logger()


def eigenmode_bond_amplitudes(n_nodes: int, mode_index: int, base_amplitude: float) -> np.ndarray:
    """a_{n,q} = a sin(nqπ/N) sin(qπ/2N)/cos(qπ/2N) for bonds n = 1..N-1"""
    bonds = np.arange(1, n_nodes, dtype=float)
    half_angle = mode_index * math.pi / (2 * n_nodes)
    return base_amplitude * np.sin(bonds * mode_index * math.pi / n_nodes) * math.tan(half_angle)


def base_amplitude_for(mean_amplitude: float, mode_index: int, n_nodes: int) -> float:
    """a = N ā_q / q"""
    return n_nodes * mean_amplitude / mode_index


def base_frequency_for(mode_frequency: float, mode_index: int, n_nodes: int) -> float:
    """ω such that ω_q = 2ω sin(qπ/2N) equals ``mode_frequency``"""
    return mode_frequency / (2.0 * math.sin(mode_index * math.pi / (2 * n_nodes)))


def _check_mode_index(n_nodes: int, mode_index: int) -> None:
    if not 1 <= mode_index < n_nodes:
        raise ConfigurationError(f"mode index q={mode_index} must lie in [1, {n_nodes - 1}]")


def _check_modulation(amplitudes: np.ndarray) -> None:
    peak = 2.0 * float(np.max(np.abs(amplitudes), initial=0.0))
    if peak > MAX_MODULATION:
        raise ConfigurationError(
            f"singular coupling: max |2 a_n| = {peak:.6g} exceeds {MAX_MODULATION}"
        )


def eigenmode_parameters(
    spec: ChainSpec,
    mode_index: int,
    base_amplitude: float,
    base_frequency: float,
) -> EigenmodeParameters:
    """Per-bond amplitudes, mode frequency ω_q and mean amplitude ā_q of the q-th eigenmode"""
    n_nodes = spec.n_nodes
    _check_mode_index(n_nodes, mode_index)

    bonds = eigenmode_bond_amplitudes(n_nodes, mode_index, base_amplitude)
    _check_modulation(bonds)

    # The mean runs over n = 1..N; the n = N term vanishes for q = 1
    nodes = np.arange(1, n_nodes + 1, dtype=float)
    half_angle = mode_index * math.pi / (2 * n_nodes)
    direct = float(
        np.sum(np.abs(base_amplitude * np.sin(nodes * mode_index * math.pi / n_nodes) * math.tan(half_angle)))
        / n_nodes
    )
    closed = base_amplitude * mode_index / n_nodes

    if not math.isclose(direct, closed, rel_tol=1e-10, abs_tol=1e-15):
        if mode_index == 1:
            raise NumericalError(
                f"mean eigenmode amplitude mismatch: direct sum {direct!r} vs closed form {closed!r}"
            )
        logger.warning(
            "Closed-form mean amplitude differs from direct sum",
            mode_index=mode_index,
            direct=direct,
            closed=closed,
        )

    return EigenmodeParameters(
        mode_index=mode_index,
        base_amplitude=base_amplitude,
        bond_amplitudes=tuple(float(v) for v in bonds),
        mode_frequency=2.0 * base_frequency * math.sin(half_angle),
        mean_amplitude=direct,
    )


@lru_cache(maxsize=256)
def _eigenmode_modulation(n_nodes: int, mode_index: int, mean_amplitude: float) -> np.ndarray:
    amplitudes = eigenmode_bond_amplitudes(
        n_nodes, mode_index, base_amplitude_for(mean_amplitude, mode_index, n_nodes)
    )
    amplitudes.flags.writeable = False
    return amplitudes


def modulation_amplitudes(spec: ChainSpec, profile: CouplingProfile) -> np.ndarray:
    """Per-bond oscillation amplitudes a_n (N-1 entries)"""
    n_bonds = spec.n_nodes - 1
    if profile.variant == CouplingVariant.STATIC:
        return np.zeros(n_bonds)
    if profile.variant == CouplingVariant.UNIFORM:
        return np.full(n_bonds, profile.amplitude)
    _check_mode_index(spec.n_nodes, profile.mode_index)
    return _eigenmode_modulation(spec.n_nodes, profile.mode_index, profile.amplitude)


def validate_profile(spec: ChainSpec, profile: CouplingProfile) -> None:
    """Reject profiles whose coupling denominators can vanish on this chain"""
    _check_modulation(modulation_amplitudes(spec, profile))


class ChainHamiltonian:
    """H_S(t) for one chain and profile, with the constant parts precomputed"""

    def __init__(self, spec: ChainSpec, profile: CouplingProfile):
        validate_profile(spec, profile)
        self.spec = spec
        self.profile = profile
        self.diagonal = spec.diagonal_energies()
        self.diagonal.flags.writeable = False
        self._twice_amplitudes = 2.0 * modulation_amplitudes(spec, profile)
        self._is_static = profile.variant == CouplingVariant.STATIC or not np.any(self._twice_amplitudes)
        self._static_couplings = np.full(spec.n_nodes - 1, -spec.dipolar_prefactor)

    def off_diagonal(self, t: float) -> np.ndarray:
        """J_n(t) for all bonds"""
        if self._is_static:
            return self._static_couplings.copy()
        modulation = math.sin(self.profile.angular_frequency * t + self.profile.phase)
        denominator = 1.0 - self._twice_amplitudes * modulation
        return -self.spec.dipolar_prefactor / denominator ** 3

    def at(self, t: float) -> HamiltonianMatrix:
        return HamiltonianMatrix(
            dimension=self.spec.n_nodes,
            diagonal=self.diagonal,
            off_diagonal=self.off_diagonal(t),
            evaluated_at=t,
        )


def bond_couplings(spec: ChainSpec, profile: CouplingProfile, t: float) -> np.ndarray:
    """All N-1 couplings J_n(t)"""
    return ChainHamiltonian(spec, profile).off_diagonal(t)


def coupling_at(profile: CouplingProfile, spec: ChainSpec, bond_index: int, t: float) -> float:
    """J_n(t) between nodes n and n+1 (1-based bond index)"""
    if not 1 <= bond_index <= spec.n_nodes - 1:
        raise ConfigurationError(
            f"bond index {bond_index} outside [1, {spec.n_nodes - 1}]"
        )
    return float(bond_couplings(spec, profile, t)[bond_index - 1])


def hamiltonian_at(spec: ChainSpec, profile: CouplingProfile, t: float) -> HamiltonianMatrix:
    """H_S(t) = Σ (E_n + f n)|n⟩⟨n| + Σ J_n(t)(|n⟩⟨n+1| + |n+1⟩⟨n|)"""
    return ChainHamiltonian(spec, profile).at(t)
