"""
Parameter sweeps: one independent propagation per grid value
"""
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from typing import Dict, Optional, Tuple

import structlog
from pydantic import ValidationError

from blochchain.config import get_sweep_jobs
from blochchain.constants import EIGENMODE_OVERLAY_AMPLITUDE, EIGENMODE_OVERLAY_SCALE
from blochchain.exceptions import ChainError, ConfigurationError
from blochchain.schemas.analytics import ApproxParams
from blochchain.schemas.chain import ChainSpec, CouplingProfile, CouplingVariant
from blochchain.schemas.run_config import StateMode
from blochchain.schemas.sweeps import SweepParameter, SweepResult, SweepRow, SweepSpec
from blochchain.services.analytics import approx_displacement
from blochchain.services.chain_model import validate_profile
from blochchain.services.observables import build_trajectory
from blochchain.services.propagator import gaussian_packet, propagate

logger = structlog.get_logger()


def point_model(spec: SweepSpec, value: float) -> Tuple[ChainSpec, CouplingProfile]:
    """Chain and profile with the swept parameter set to ``value``"""
    chain, profile = spec.chain, spec.profile
    if spec.parameter == SweepParameter.PHASE:
        profile = profile.with_value(phase=value)
    elif spec.parameter == SweepParameter.AMPLITUDE:
        # Eigenmode profiles store ā_q; the conversion a = N ā_q / q happens in the chain model
        profile = profile.with_value(amplitude=value)
    else:
        chain = ChainSpec.model_validate({**chain.model_dump(), "field_strength": value})
    validate_profile(chain, profile)
    return chain, profile


def overlay_approximations(spec: SweepSpec, chain: ChainSpec, profile: CouplingProfile) -> Optional[Dict[int, float]]:
    """Continuum estimate ΔN_{l,approx} for each recorded period"""
    if chain.field_strength <= 0:
        return None

    if profile.variant == CouplingVariant.EIGENMODE:
        amplitude = spec.overlay_amplitude if spec.overlay_amplitude is not None else EIGENMODE_OVERLAY_AMPLITUDE
        scale = spec.overlay_scale if spec.overlay_scale is not None else EIGENMODE_OVERLAY_SCALE
    else:
        amplitude = profile.amplitude
        scale = spec.overlay_scale if spec.overlay_scale is not None else 1.0

    approximations = {}
    for l in spec.record_periods:
        params = ApproxParams(
            V=chain.dipolar_prefactor,
            f=chain.field_strength,
            omega=profile.angular_frequency,
            a=amplitude,
            phi=profile.phase,
            l=l,
        )
        approximations[l] = scale * approx_displacement(params)
    return approximations


def run_sweep_point(spec: SweepSpec, value: float) -> SweepRow:
    """Propagate one grid point; failures become an error row"""
    try:
        chain, profile = point_model(spec, value)
        cfg = spec.integrator.resolve(chain.field_strength, min_periods=max(spec.record_periods))
        state0 = gaussian_packet(chain, spec.packet)
        if spec.state == StateMode.MIXED:
            state0 = state0.to_mixed()

        snapshots = propagate(chain, profile, state0, cfg)
        record = build_trajectory(
            snapshots,
            chain,
            profile,
            spec.packet,
            cfg,
            periods=spec.record_periods,
            edge_threshold=spec.edge_threshold,
        )
    except ChainError as e:
        logger.warning("Sweep point failed", parameter=spec.parameter.value, value=value, error=e.detail)
        return SweepRow(value=value, error=e.detail, error_code=e.exit_code)
    except ValidationError as e:
        logger.warning("Sweep point failed", parameter=spec.parameter.value, value=value, error=str(e))
        return SweepRow(value=value, error=str(e), error_code=ConfigurationError.exit_code)

    approximations = None
    if spec.analytic_overlay:
        try:
            approximations = overlay_approximations(spec, chain, profile)
        except (ChainError, ValidationError) as e:
            logger.warning("Analytic overlay failed", value=value, error=str(e))

    return SweepRow(
        value=value,
        displacements=record.displacements,
        approximations=approximations,
        edge_ok=record.edge_ok,
        max_edge_occupation=record.edge_occupation_max,
        step=cfg.step,
        duration=cfg.duration,
    )


class SweepService:
    """Runs sweep grids serially or across worker processes"""

    def __init__(self, jobs: Optional[int] = None):
        self.jobs = get_sweep_jobs(jobs)

    def run_sweep(self, spec: SweepSpec) -> SweepResult:
        """One row per grid value, in grid order"""
        workers = min(self.jobs, len(spec.grid))
        logger.info(
            "Sweep started",
            parameter=spec.parameter.value,
            points=len(spec.grid),
            workers=workers,
        )

        if workers == 1:
            rows = [run_sweep_point(spec, value) for value in spec.grid]
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                rows = list(executor.map(run_sweep_point, repeat(spec), spec.grid))

        failed = sum(1 for row in rows if row.failed)
        logger.info("Sweep finished", points=len(rows), failed=failed)
        return SweepResult(spec=spec, rows=rows, jobs=workers)


def run_sweep(spec: SweepSpec, jobs: Optional[int] = None) -> SweepResult:
    return SweepService(jobs).run_sweep(spec)
