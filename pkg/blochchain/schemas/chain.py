"""
Chain, coupling profile and Hamiltonian schemas
"""
import math
from enum import Enum
from typing import Tuple

import numpy as np
from pydantic import Field, field_validator, model_validator

from blochchain.constants import MAX_MODULATION
from blochchain.exceptions import ConfigurationError
from .base import ArraySchema, BaseSchema, readonly_array


class ChainSpec(BaseSchema):
    """Chain of N nodes with site energies, hopping scale V, field f and dephasing λ (ħ = 1)"""

    n_nodes: int = Field(..., ge=2, description="Number of nodes N")
    site_energies: Tuple[float, ...] = Field(default=(), description="E_n in units of V; zeros when omitted")
    dipolar_prefactor: float = Field(1.0, ge=0, description="V")
    field_strength: float = Field(0.0, description="f, energy per node index")
    dephasing_rate: float = Field(0.0, ge=0, description="λ, inverse time")

    @model_validator(mode="before")
    @classmethod
    def default_site_energies(cls, data):
        if isinstance(data, dict) and not data.get("site_energies") and "n_nodes" in data:
            data = dict(data)
            try:
                data["site_energies"] = (0.0,) * int(data["n_nodes"])
            except (TypeError, ValueError):
                pass
        return data

    @model_validator(mode="after")
    def check_site_energies(self):
        if len(self.site_energies) != self.n_nodes:
            raise ValueError(
                f"site_energies has {len(self.site_energies)} entries, expected n_nodes={self.n_nodes}"
            )
        return self

    @property
    def bloch_period(self) -> float:
        """T_B = 2π/f"""
        if self.field_strength == 0:
            raise ConfigurationError("Bloch period is undefined without a field (f = 0)")
        return 2.0 * math.pi / abs(self.field_strength)

    def node_indices(self) -> np.ndarray:
        """1-based node labels n = 1..N"""
        return np.arange(1, self.n_nodes + 1, dtype=float)

    def diagonal_energies(self) -> np.ndarray:
        """E_n + f·n with the 1-based node index"""
        return np.asarray(self.site_energies, dtype=float) + self.field_strength * self.node_indices()


class CouplingVariant(str, Enum):
    STATIC = "static"
    UNIFORM = "uniform"
    EIGENMODE = "eigenmode"


class CouplingProfile(BaseSchema):
    """Time dependence of the bond couplings J_n(t) = −V/[1 − 2a_n sin(ωt + φ)]³.

    For the eigenmode variant ``amplitude`` is the mean amplitude ā_q and
    ``angular_frequency`` is the mode frequency ω_q.
    """

    variant: CouplingVariant = CouplingVariant.STATIC
    amplitude: float = Field(0.0, ge=0, description="a (uniform) or ā_q (eigenmode)")
    angular_frequency: float = Field(0.0, ge=0, description="ω (uniform) or ω_q (eigenmode)")
    phase: float = Field(0.0, description="φ in radians")
    mode_index: int = Field(1, ge=1, description="q, eigenmode only")

    @model_validator(mode="after")
    def check_denominator(self):
        if self.variant == CouplingVariant.STATIC and self.amplitude != 0:
            raise ValueError("static profile cannot carry an oscillation amplitude")
        if self.variant == CouplingVariant.UNIFORM and 2 * self.amplitude > MAX_MODULATION:
            raise ValueError(
                f"singular coupling: denominator 1 - 2a sin(wt + phi) can vanish "
                f"(2a = {2 * self.amplitude:g} must not exceed {MAX_MODULATION})"
            )
        if self.variant == CouplingVariant.EIGENMODE and 2 * self.amplitude > MAX_MODULATION:
            raise ValueError(
                f"singular coupling: mean eigenmode amplitude {self.amplitude:g} is too large"
            )
        return self

    @classmethod
    def static(cls) -> "CouplingProfile":
        return cls(variant=CouplingVariant.STATIC)

    @classmethod
    def uniform(cls, amplitude: float, angular_frequency: float, phase: float = 0.0) -> "CouplingProfile":
        return cls(
            variant=CouplingVariant.UNIFORM,
            amplitude=amplitude,
            angular_frequency=angular_frequency,
            phase=phase,
        )

    @classmethod
    def eigenmode(
        cls,
        mean_amplitude: float,
        mode_frequency: float,
        phase: float = 0.0,
        mode_index: int = 1,
    ) -> "CouplingProfile":
        return cls(
            variant=CouplingVariant.EIGENMODE,
            amplitude=mean_amplitude,
            angular_frequency=mode_frequency,
            phase=phase,
            mode_index=mode_index,
        )

    def with_value(self, **changes) -> "CouplingProfile":
        """Validated copy with some fields replaced"""
        return type(self).model_validate({**self.model_dump(), **changes})

    @property
    def period(self) -> float:
        """Oscillation period 2π/ω (infinite for a frozen chain)"""
        if self.variant == CouplingVariant.STATIC or self.angular_frequency == 0:
            return math.inf
        return 2.0 * math.pi / self.angular_frequency


class HamiltonianMatrix(ArraySchema):
    """H_S(t) stored as diagonal and off-diagonal bands"""

    dimension: int = Field(..., ge=2)
    diagonal: np.ndarray
    off_diagonal: np.ndarray
    evaluated_at: float

    @field_validator("diagonal", "off_diagonal", mode="before")
    @classmethod
    def as_array(cls, value):
        return readonly_array(value, dtype=float)

    @model_validator(mode="after")
    def check_bands(self):
        if self.diagonal.shape != (self.dimension,):
            raise ValueError("diagonal must have one entry per node")
        if self.off_diagonal.shape != (self.dimension - 1,):
            raise ValueError("off_diagonal must have one entry per bond")
        if not (np.all(np.isfinite(self.diagonal)) and np.all(np.isfinite(self.off_diagonal))):
            raise ValueError("Hamiltonian entries must be finite")
        if np.any(self.off_diagonal > 0):
            raise ValueError("bond couplings must be non-positive")
        return self

    def to_dense(self) -> np.ndarray:
        """Dense N×N copy"""
        from blochchain.utils.tridiagonal import tridiagonal_dense

        return tridiagonal_dense(self.diagonal, self.off_diagonal)


class EigenmodeParameters(BaseSchema):
    """Per-bond amplitudes a_{n,q}, mode frequency ω_q and mean amplitude ā_q"""

    mode_index: int
    base_amplitude: float
    bond_amplitudes: Tuple[float, ...]
    mode_frequency: float
    mean_amplitude: float
