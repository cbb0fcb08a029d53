"""
Time evolution under H_S(t): Schrödinger equation for pure states, Lindblad
master equation with node-basis dephasing for density matrices.
"""
from typing import Callable, List, Tuple

import numpy as np
import structlog

from blochchain.exceptions import ConfigurationError, NumericalError
from blochchain.schemas.chain import ChainSpec, CouplingProfile
from blochchain.schemas.propagation import (
    STATE_TOLERANCE,
    IntegratorConfig,
    QuantumState,
    StateVariant,
    WavePacketSpec,
)
from blochchain.services.chain_model import ChainHamiltonian
from blochchain.utils.tridiagonal import tridiagonal_apply, tridiagonal_commutator

logger = structlog.get_logger()

Snapshot = Tuple[float, QuantumState]


def gaussian_packet(spec: ChainSpec, packet: WavePacketSpec) -> QuantumState:
    """ψ_n ∝ exp(−(n − N₀)²/(4σ²)): real amplitudes, zero initial momentum"""
    packet.check_chain(spec.n_nodes)
    nodes = spec.node_indices()
    amplitudes = np.exp(-((nodes - packet.center) ** 2) / (4.0 * packet.width ** 2))
    amplitudes /= np.linalg.norm(amplitudes)
    return QuantumState.pure(amplitudes.astype(complex))


def _rk4_step(rhs: Callable, t: float, y: np.ndarray, dt: float) -> np.ndarray:
    """One classical Runge-Kutta step with H evaluated at t, t + dt/2 and t + dt"""
    half = 0.5 * dt
    k1 = rhs(t, y)
    k2 = rhs(t + half, y + half * k1)
    k3 = rhs(t + half, y + half * k2)
    k4 = rhs(t + dt, y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


class _FieldFrame:
    """Frame ψ = e^{−iDt}φ that removes the diagonal D = E_n + f·n from H_S(t).

    Bond n picks up the phase e^{i(D_n − D_{n+1})t}, so the frame Hamiltonian
    has zero diagonal and a spectrum bounded by 2·max|J_n| whatever f·N is.
    Occupations are the same in both frames.
    """

    def __init__(self, hamiltonian: ChainHamiltonian):
        self.hamiltonian = hamiltonian
        self.energies = np.asarray(hamiltonian.diagonal, dtype=float)
        self.bond_detunings = self.energies[:-1] - self.energies[1:]
        self.zero_diagonal = np.zeros_like(self.energies)

    def off_diagonal(self, t: float) -> np.ndarray:
        return self.hamiltonian.off_diagonal(t) * np.exp(1j * self.bond_detunings * t)

    def to_lab(self, variant: StateVariant, data: np.ndarray, t: float) -> np.ndarray:
        phases = np.exp(-1j * self.energies * t)
        if variant == StateVariant.PURE:
            return data * phases
        return data * np.outer(phases, phases.conj())


def _schrodinger_rhs(frame: _FieldFrame) -> Callable:
    def rhs(t: float, psi: np.ndarray) -> np.ndarray:
        return -1j * tridiagonal_apply(frame.zero_diagonal, frame.off_diagonal(t), psi)

    return rhs


def _lindblad_rhs(frame: _FieldFrame, dephasing_rate: float) -> Callable:
    n_nodes = frame.energies.shape[0]
    on_diagonal = np.diag_indices(n_nodes)

    def rhs(t: float, rho: np.ndarray) -> np.ndarray:
        drho = -1j * tridiagonal_commutator(frame.zero_diagonal, frame.off_diagonal(t), rho)
        if dephasing_rate:
            # Lindblad operators √λ|j⟩⟨j|: coherences decay at rate λ, populations untouched
            drho -= dephasing_rate * rho
            drho[on_diagonal] += dephasing_rate * rho[on_diagonal]
        return drho

    return rhs


def _check_input_state(spec: ChainSpec, state: QuantumState) -> None:
    if state.n_nodes != spec.n_nodes:
        raise ConfigurationError(
            f"state has {state.n_nodes} nodes, chain has {spec.n_nodes}"
        )
    if abs(state.trace() - 1.0) > STATE_TOLERANCE:
        raise ConfigurationError(f"initial state is not normalized (trace = {state.trace():.12g})")


def propagate(
    spec: ChainSpec,
    profile: CouplingProfile,
    state0: QuantumState,
    cfg: IntegratorConfig,
) -> List[Snapshot]:
    """Integrate from t = 0 to cfg.duration and return (t, state) snapshots.

    Pure states evolve by ψ̇ = −iH_S(t)ψ when λ = 0; with dephasing the state
    is promoted to a density matrix. RK4 runs in the field frame and every
    snapshot is rotated back to the node basis of H_S. No renormalization is
    applied.
    """
    _check_input_state(spec, state0)
    frame = _FieldFrame(ChainHamiltonian(spec, profile))
    dephasing_rate = spec.dephasing_rate

    state = state0.to_mixed() if dephasing_rate > 0 else state0
    variant = state.variant
    y = np.array(state.data, dtype=complex)

    if variant == StateVariant.PURE:
        rhs = _schrodinger_rhs(frame)
    else:
        rhs = _lindblad_rhs(frame, dephasing_rate)

    dt = cfg.step
    n_steps = cfg.n_steps
    record = set(cfg.snapshot_steps())

    logger.debug(
        "Propagation started",
        variant=variant.value,
        n_nodes=spec.n_nodes,
        steps=n_steps,
        step=dt,
        dephasing_rate=dephasing_rate,
    )

    snapshots: List[Snapshot] = [(0.0, QuantumState.trusted(variant, y))]
    for k in range(n_steps):
        y = _rk4_step(rhs, k * dt, y, dt)
        if k + 1 in record:
            t = (k + 1) * dt
            if not np.all(np.isfinite(y)):
                raise NumericalError(f"state became non-finite at t = {t:.6g}")
            data = frame.to_lab(variant, y, t)
            snapshots.append((t, QuantumState.trusted(variant, data)))

    final_trace = snapshots[-1][1].trace()
    logger.debug(
        "Propagation finished",
        snapshots=len(snapshots),
        trace_drift=abs(final_trace - 1.0),
    )
    return snapshots
