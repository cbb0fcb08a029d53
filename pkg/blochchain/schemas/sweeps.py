"""
Parameter sweep schemas
"""
from enum import Enum
from typing import Dict, List, Optional

from pydantic import Field, field_validator

from blochchain.config import settings
from blochchain.constants import DEFAULT_RECORD_PERIODS
from blochchain.exceptions import ConfigurationError
from .base import BaseSchema
from .chain import ChainSpec, CouplingProfile
from .propagation import IntegratorSettings, WavePacketSpec
from .run_config import RunConfig, StateMode


class SweepParameter(str, Enum):
    PHASE = "phase"
    AMPLITUDE = "amplitude"
    FIELD_STRENGTH = "field_strength"

    @classmethod
    def from_cli(cls, name: str) -> "SweepParameter":
        aliases = {
            "phi": cls.PHASE,
            "phase": cls.PHASE,
            "amplitude": cls.AMPLITUDE,
            "a": cls.AMPLITUDE,
            "field": cls.FIELD_STRENGTH,
            "f": cls.FIELD_STRENGTH,
            "field_strength": cls.FIELD_STRENGTH,
        }
        try:
            return aliases[name]
        except KeyError:
            raise ConfigurationError(f"Unknown sweep parameter: {name}")


class SweepSpec(BaseSchema):
    """Base run plus the grid of one varied parameter"""

    chain: ChainSpec
    profile: CouplingProfile
    packet: WavePacketSpec
    integrator: IntegratorSettings = Field(default_factory=IntegratorSettings)
    parameter: SweepParameter
    grid: List[float] = Field(..., min_length=1)
    record_periods: List[int] = Field(default_factory=lambda: list(DEFAULT_RECORD_PERIODS), min_length=1)
    analytic_overlay: bool = False
    overlay_scale: Optional[float] = None
    overlay_amplitude: Optional[float] = Field(None, ge=0)
    edge_threshold: float = Field(default_factory=lambda: settings.EDGE_THRESHOLD, ge=0)
    state: StateMode = StateMode.AUTO

    @field_validator("record_periods")
    @classmethod
    def check_periods(cls, value):
        if any(p < 1 for p in value):
            raise ValueError("record periods must be positive integers")
        return sorted(set(value))

    @classmethod
    def from_run_config(cls, config: RunConfig, parameter: SweepParameter, grid: List[float]) -> "SweepSpec":
        return cls(
            chain=config.chain,
            profile=config.coupling,
            packet=config.packet,
            integrator=config.integrator,
            parameter=parameter,
            grid=grid,
            record_periods=config.output.periods or list(DEFAULT_RECORD_PERIODS),
            analytic_overlay=config.output.analytic_overlay,
            overlay_scale=config.output.overlay_scale,
            overlay_amplitude=config.output.overlay_amplitude,
            edge_threshold=config.output.edge_threshold,
            state=config.output.state,
        )


class SweepRow(BaseSchema):
    """Outcome at one grid value; failures are recorded, not raised"""

    value: float
    displacements: Dict[int, float] = Field(default_factory=dict)
    approximations: Optional[Dict[int, float]] = None
    edge_ok: Optional[bool] = None
    max_edge_occupation: Optional[float] = None
    step: Optional[float] = None
    duration: Optional[float] = None
    error: Optional[str] = None
    error_code: Optional[int] = None

    @property
    def failed(self) -> bool:
        return self.error is not None


class SweepResult(BaseSchema):
    """Rows in grid order plus the spec that produced them"""

    spec: SweepSpec
    rows: List[SweepRow]
    jobs: int = Field(1, ge=1)
