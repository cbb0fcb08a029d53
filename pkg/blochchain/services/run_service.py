"""
Single-run orchestration: initial packet, propagation, trajectory record
"""
from typing import Optional

import structlog

from blochchain.exceptions import ConfigurationError
from blochchain.schemas.observables import TrajectoryRecord
from blochchain.schemas.run_config import RunConfig
from blochchain.services.observables import build_trajectory, half_period_excursion
from blochchain.services.propagator import gaussian_packet, propagate

logger = structlog.get_logger()


class RunService:
    """Executes a validated run configuration"""

    def simulate(self, config: RunConfig) -> TrajectoryRecord:
        cfg = config.integrator_config()
        state0 = gaussian_packet(config.chain, config.packet)
        if config.use_mixed_state():
            state0 = state0.to_mixed()

        logger.info(
            "Run started",
            n_nodes=config.chain.n_nodes,
            coupling=config.coupling.variant.value,
            state=state0.variant.value,
            steps=cfg.n_steps,
        )
        snapshots = propagate(config.chain, config.coupling, state0, cfg)
        record = build_trajectory(
            snapshots,
            config.chain,
            config.coupling,
            config.packet,
            cfg,
            periods=config.output.periods,
            edge_threshold=config.output.edge_threshold,
        )
        logger.info("Run finished", displacements=record.displacements, edge_ok=record.edge_ok)
        return record

    def excursion(self, record: TrajectoryRecord) -> Optional[float]:
        """ΔN(T_B/2) when the half period lies on the snapshot grid, else None"""
        if record.chain.field_strength == 0:
            return None
        try:
            return half_period_excursion(record)
        except ConfigurationError as e:
            logger.debug("Half-period excursion unavailable", reason=e.detail)
            return None
