"""
Observables extracted from propagation snapshots
"""
import math
from typing import Dict, Iterable, Optional, Sequence

import numpy as np
import structlog
from pydantic import ValidationError

from blochchain.config import settings
from blochchain.exceptions import ConfigurationError, NumericalError
from blochchain.schemas.chain import ChainSpec, CouplingProfile
from blochchain.schemas.observables import EdgeGuardResult, TrajectoryRecord
from blochchain.schemas.propagation import IntegratorConfig, QuantumState, WavePacketSpec
from blochchain.services.propagator import Snapshot

logger = structlog.get_logger()


def _first_moment(occupations: np.ndarray) -> np.ndarray:
    nodes = np.arange(1, occupations.shape[-1] + 1, dtype=float)
    return occupations @ nodes


def _variance(occupations: np.ndarray) -> np.ndarray:
    nodes = np.arange(1, occupations.shape[-1] + 1, dtype=float)
    centers = occupations @ nodes
    return occupations @ nodes ** 2 - centers ** 2


def center_of(state: QuantumState) -> float:
    """N_c = Σ_k k ρ_kk with 1-based node index"""
    return float(_first_moment(state.occupations()))


def occupation_variance(state: QuantumState) -> float:
    """Σ_k (k − N_c)² ρ_kk"""
    return float(_variance(state.occupations()))


def _bloch_period(field_strength: float) -> float:
    if field_strength == 0:
        raise ConfigurationError("Bloch period is undefined without a field (f = 0)")
    return 2.0 * math.pi / abs(field_strength)


def _index_at(times: np.ndarray, target: float) -> int:
    """Snapshot index whose time equals ``target`` (grid points are exact multiples of dt)"""
    tolerance = 1e-9 * max(1.0, abs(target))
    if target > times[-1] + tolerance:
        raise ConfigurationError(
            f"requested time {target:.6g} is beyond the trajectory duration {times[-1]:.6g}"
        )
    index = int(np.argmin(np.abs(times - target)))
    if abs(times[index] - target) > tolerance:
        raise ConfigurationError(
            f"time {target:.6g} is not on the snapshot grid; align step and snapshot stride"
        )
    return index


def _displacements(times: np.ndarray, centers: np.ndarray, field_strength: float, periods: Iterable[int]) -> Dict[int, float]:
    bloch_period = _bloch_period(field_strength)
    return {
        int(l): float(centers[_index_at(times, l * bloch_period)] - centers[0])
        for l in periods
    }


def displacements_of(snapshots: Sequence[Snapshot], field_strength: float, periods: Iterable[int]) -> Dict[int, float]:
    """ΔN_l = N_c(l T_B) − N_c(0) for each requested l"""
    times = np.array([t for t, _ in snapshots])
    centers = np.array([center_of(state) for _, state in snapshots])
    return _displacements(times, centers, field_strength, periods)


def half_period_excursion(trajectory: TrajectoryRecord, field_strength: Optional[float] = None) -> float:
    """ΔN(T_B/2) = N_c(T_B/2) − N_c(0)"""
    if field_strength is None:
        field_strength = trajectory.chain.field_strength
    index = _index_at(trajectory.times, 0.5 * _bloch_period(field_strength))
    return float(trajectory.centers[index] - trajectory.centers[0])


def _edge_occupation_max(occupations: np.ndarray) -> float:
    return float(np.max(occupations[:, 0] + occupations[:, -1]))


def edge_guard(trajectory: TrajectoryRecord, threshold: Optional[float] = None) -> EdgeGuardResult:
    """Fail iff ρ_11 + ρ_NN exceeds ``threshold`` at any snapshot"""
    if threshold is None:
        threshold = trajectory.edge_threshold
    peak = max(_edge_occupation_max(trajectory.occupations), 0.0)
    result = EdgeGuardResult(passed=peak <= threshold, max_edge_occupation=peak, threshold=threshold)
    if not result.passed:
        logger.warning("Edge guard failed", max_edge_occupation=peak, threshold=threshold)
    return result


def build_trajectory(
    snapshots: Sequence[Snapshot],
    spec: ChainSpec,
    profile: CouplingProfile,
    packet: WavePacketSpec,
    cfg: IntegratorConfig,
    periods: Iterable[int] = (),
    edge_threshold: Optional[float] = None,
) -> TrajectoryRecord:
    """Collect occupations, centers, displacements and diagnostics of a run"""
    if edge_threshold is None:
        edge_threshold = settings.EDGE_THRESHOLD

    times = np.array([t for t, _ in snapshots], dtype=float)
    occupations = np.vstack([state.occupations() for _, state in snapshots])
    if not np.all(np.isfinite(occupations)):
        raise NumericalError("occupations contain non-finite values")

    centers = _first_moment(occupations)
    periods = list(periods)
    displacements = _displacements(times, centers, spec.field_strength, periods) if periods else {}
    edge_max = max(_edge_occupation_max(occupations), 0.0)
    trace_drift = float(np.max(np.abs(occupations.sum(axis=1) - 1.0)))

    try:
        record = TrajectoryRecord(
            times=times,
            occupations=occupations,
            centers=centers,
            variances=_variance(occupations),
            displacements=displacements,
            edge_occupation_max=edge_max,
            edge_threshold=edge_threshold,
            edge_ok=edge_max <= edge_threshold,
            trace_drift=trace_drift,
            chain=spec,
            profile=profile,
            packet=packet,
            integrator=cfg,
        )
    except ValidationError as e:
        raise NumericalError(f"trajectory violates probability bounds: {e}")

    if not record.edge_ok:
        logger.warning("Edge guard failed", max_edge_occupation=edge_max, threshold=edge_threshold)
    return record
