"""
Quantum state, wave packet and integrator schemas
"""
import math
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import Field, field_validator, model_validator

from blochchain.config import settings
from blochchain.exceptions import ConfigurationError
from .base import ArraySchema, BaseSchema, readonly_array

STATE_TOLERANCE = 1e-10


class StateVariant(str, Enum):
    PURE = "pure"
    MIXED = "mixed"


class QuantumState(ArraySchema):
    """Pure amplitude vector or Hermitian density matrix over the node basis"""

    variant: StateVariant
    data: np.ndarray

    @field_validator("data", mode="before")
    @classmethod
    def as_array(cls, value):
        return readonly_array(value, dtype=complex)

    @model_validator(mode="after")
    def check_state(self):
        data = self.data
        if not np.all(np.isfinite(data)):
            raise ValueError("state contains non-finite entries")

        if self.variant == StateVariant.PURE:
            if data.ndim != 1 or data.size < 2:
                raise ValueError("pure state must be a vector over at least two nodes")
            norm = float(np.vdot(data, data).real)
            if abs(norm - 1.0) > STATE_TOLERANCE:
                raise ValueError(f"pure state is not normalized (norm = {norm:.12g})")
            return self

        if data.ndim != 2 or data.shape[0] != data.shape[1] or data.shape[0] < 2:
            raise ValueError("density matrix must be square over at least two nodes")
        if np.max(np.abs(data - data.conj().T)) > STATE_TOLERANCE:
            raise ValueError("density matrix is not Hermitian")
        trace = np.trace(data)
        if abs(trace - 1.0) > STATE_TOLERANCE:
            raise ValueError(f"density matrix trace is {trace.real:.12g}, expected 1")
        if np.min(np.diagonal(data).real) < -STATE_TOLERANCE:
            raise ValueError("density matrix has negative occupations")
        return self

    @classmethod
    def pure(cls, amplitudes) -> "QuantumState":
        return cls(variant=StateVariant.PURE, data=amplitudes)

    @classmethod
    def mixed(cls, density) -> "QuantumState":
        return cls(variant=StateVariant.MIXED, data=density)

    @classmethod
    def basis(cls, n_nodes: int, node: int) -> "QuantumState":
        """|node⟩ with a 1-based node label"""
        if not 1 <= node <= n_nodes:
            raise ConfigurationError(f"node {node} outside chain of {n_nodes} nodes")
        amplitudes = np.zeros(n_nodes, dtype=complex)
        amplitudes[node - 1] = 1.0
        return cls.pure(amplitudes)

    @classmethod
    def trusted(cls, variant: StateVariant, data: np.ndarray) -> "QuantumState":
        """Wrap integrator output without re-checking normalization; drift is measured, not hidden"""
        return cls.model_construct(variant=variant, data=readonly_array(data, dtype=complex))

    @property
    def is_pure(self) -> bool:
        return self.variant == StateVariant.PURE

    @property
    def n_nodes(self) -> int:
        return int(self.data.shape[0])

    def occupations(self) -> np.ndarray:
        """ρ_kk for k = 1..N"""
        if self.is_pure:
            return np.abs(self.data) ** 2
        return np.diagonal(self.data).real.copy()

    def density(self) -> np.ndarray:
        """Dense density matrix (|ψ⟩⟨ψ| for pure states)"""
        if self.is_pure:
            return np.outer(self.data, self.data.conj())
        return np.array(self.data)

    def to_mixed(self) -> "QuantumState":
        if not self.is_pure:
            return self
        return type(self).trusted(StateVariant.MIXED, self.density())

    def trace(self) -> float:
        return float(np.sum(self.occupations()))

    def purity(self) -> float:
        """tr(ρ²)"""
        if self.is_pure:
            return self.trace() ** 2
        return float(np.sum(np.abs(self.data) ** 2))


class WavePacketSpec(BaseSchema):
    """Gaussian packet centered at node N₀ with standard deviation σ (node units)"""

    center: int = Field(..., ge=1, description="N₀, 1-based")
    width: float = Field(..., gt=0, description="σ")

    def check_chain(self, n_nodes: int) -> None:
        if self.center > n_nodes:
            raise ConfigurationError(f"packet center {self.center} outside chain of {n_nodes} nodes")


class IntegratorConfig(BaseSchema):
    """Fixed-step grid: step dt, duration t_end, snapshot every ``snapshot_stride`` steps"""

    step: float = Field(..., gt=0)
    duration: float = Field(..., gt=0)
    snapshot_stride: int = Field(1, ge=1)

    @model_validator(mode="after")
    def check_alignment(self):
        n_steps = round(self.duration / self.step)
        if n_steps < 1 or abs(n_steps * self.step - self.duration) > 1e-6 * self.step:
            raise ValueError(
                f"step {self.step:g} does not divide duration {self.duration:g}"
            )
        return self

    @property
    def n_steps(self) -> int:
        return round(self.duration / self.step)

    def snapshot_steps(self) -> list:
        """Step indices recorded, always including 0 and the final step"""
        steps = list(range(0, self.n_steps + 1, self.snapshot_stride))
        if steps[-1] != self.n_steps:
            steps.append(self.n_steps)
        return steps

    @classmethod
    def for_bloch_periods(
        cls,
        field_strength: float,
        periods: Optional[int] = None,
        steps_per_period: Optional[int] = None,
        snapshot_stride: Optional[int] = None,
    ) -> "IntegratorConfig":
        """Grid with dt = T_B/steps_per_period over ``periods`` Bloch periods"""
        if field_strength == 0:
            raise ConfigurationError("Bloch period is undefined without a field (f = 0)")
        periods = periods or settings.PERIODS
        steps_per_period = steps_per_period or settings.STEPS_PER_PERIOD
        snapshot_stride = snapshot_stride or settings.SNAPSHOT_STRIDE
        bloch_period = 2.0 * math.pi / abs(field_strength)
        return cls(
            step=bloch_period / steps_per_period,
            duration=periods * bloch_period,
            snapshot_stride=snapshot_stride,
        )


class IntegratorSettings(BaseSchema):
    """Integrator section of a run configuration.

    Either give ``step`` and ``duration`` explicitly, or let the grid follow
    the Bloch period of the field.
    """

    steps_per_period: int = Field(default_factory=lambda: settings.STEPS_PER_PERIOD, ge=1)
    periods: Optional[int] = Field(None, ge=1)
    snapshot_stride: int = Field(default_factory=lambda: settings.SNAPSHOT_STRIDE, ge=1)
    step: Optional[float] = Field(None, gt=0)
    duration: Optional[float] = Field(None, gt=0)

    @model_validator(mode="after")
    def check_explicit_grid(self):
        if (self.step is None) != (self.duration is None):
            raise ValueError("step and duration must be given together")
        return self

    @property
    def is_explicit(self) -> bool:
        return self.step is not None

    def resolve(self, field_strength: float, min_periods: int = 0) -> IntegratorConfig:
        """Concrete grid for a chain with field ``field_strength``"""
        if self.is_explicit:
            return IntegratorConfig(
                step=self.step,
                duration=self.duration,
                snapshot_stride=self.snapshot_stride,
            )
        periods = max(self.periods or settings.PERIODS, min_periods)
        return IntegratorConfig.for_bloch_periods(
            field_strength,
            periods=periods,
            steps_per_period=self.steps_per_period,
            snapshot_stride=self.snapshot_stride,
        )
