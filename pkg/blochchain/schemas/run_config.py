"""
Run configuration file schema (JSON, unknown keys rejected)
"""
import json
from enum import Enum
from pathlib import Path
from typing import List, Optional, Union

from pydantic import Field, field_validator, model_validator

from blochchain.config import settings
from blochchain.constants import DEFAULT_RECORD_PERIODS
from blochchain.exceptions import ConfigurationError
from .base import BaseSchema
from .chain import ChainSpec, CouplingProfile
from .propagation import IntegratorConfig, IntegratorSettings, WavePacketSpec


class StateMode(str, Enum):
    AUTO = "auto"
    PURE = "pure"
    MIXED = "mixed"


class OutputSettings(BaseSchema):
    """Output options of a run or sweep"""

    periods: List[int] = Field(default_factory=lambda: list(DEFAULT_RECORD_PERIODS))
    occupations_path: str = "occupations.csv"
    summary_path: str = "summary.json"
    sweep_path: str = "sweep.csv"
    edge_threshold: float = Field(default_factory=lambda: settings.EDGE_THRESHOLD, ge=0)
    analytic_overlay: bool = True
    overlay_scale: Optional[float] = None
    overlay_amplitude: Optional[float] = Field(None, ge=0)
    state: StateMode = StateMode.AUTO
    gnuplot_script: bool = False

    @field_validator("periods")
    @classmethod
    def check_periods(cls, value):
        if any(p < 1 for p in value):
            raise ValueError("record periods must be positive integers")
        return sorted(set(value))


class RunConfig(BaseSchema):
    """Complete, validated description of one simulation"""

    chain: ChainSpec
    coupling: CouplingProfile = Field(default_factory=CouplingProfile.static)
    packet: WavePacketSpec
    integrator: IntegratorSettings = Field(default_factory=IntegratorSettings)
    output: OutputSettings = Field(default_factory=OutputSettings)

    @model_validator(mode="after")
    def check_consistency(self):
        from blochchain.services.chain_model import validate_profile

        validate_profile(self.chain, self.coupling)
        self.packet.check_chain(self.chain.n_nodes)

        if self.chain.field_strength == 0:
            if self.output.periods:
                raise ValueError("record periods need a field (f != 0); set output.periods to []")
            if not self.integrator.is_explicit:
                raise ValueError("without a field the integrator needs explicit step and duration")

        needed = max(self.output.periods, default=0)
        if not self.integrator.is_explicit and self.integrator.periods is not None and self.integrator.periods < needed:
            raise ValueError(
                f"integrator covers {self.integrator.periods} periods but output requests {needed}"
            )
        self.integrator_config()
        return self

    def integrator_config(self) -> IntegratorConfig:
        return self.integrator.resolve(
            self.chain.field_strength,
            min_periods=max(self.output.periods, default=0),
        )

    def use_mixed_state(self) -> bool:
        if self.output.state == StateMode.MIXED:
            return True
        if self.output.state == StateMode.PURE and self.chain.dephasing_rate > 0:
            raise ConfigurationError("dephasing requires a mixed state")
        return self.chain.dephasing_rate > 0

    @classmethod
    def load(cls, path: Union[str, Path]) -> "RunConfig":
        """Read a config file, or the config embedded in a run summary"""
        path = Path(path)
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigurationError(f"Config file not found: {path}")
        except json.JSONDecodeError as e:
            raise ConfigurationError(f"Config file {path} is not valid JSON: {e}")

        if isinstance(data, dict) and "chain" not in data and isinstance(data.get("config"), dict):
            data = data["config"]
        return cls.model_validate(data)
