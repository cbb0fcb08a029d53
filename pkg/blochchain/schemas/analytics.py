"""
Analytic approximation and fit schemas
"""
from typing import Dict, Optional, Tuple

from pydantic import Field, model_validator

from blochchain.constants import MAX_MODULATION
from .base import BaseSchema


class ApproxParams(BaseSchema):
    """Parameters of the displacement integral −2V ∫₀^{lT_B} sin(ft)/[1 − 2a sin(ωt + φ)]³ dt"""

    V: float = Field(1.0, ge=0)
    f: float = Field(..., gt=0)
    omega: float = Field(..., ge=0)
    a: float = Field(0.0, ge=0)
    phi: float = 0.0
    l: int = Field(1, ge=1)

    @model_validator(mode="after")
    def check_amplitude(self):
        if 2 * self.a > MAX_MODULATION:
            raise ValueError(f"singular coupling: 2a = {2 * self.a:g} must not exceed {MAX_MODULATION}")
        return self


class FitResult(BaseSchema):
    """Cosine model ΔN_l = β ā cos(φ + α)/(1 − 4ā²)^{5/2} fitted over φ"""

    l: int = Field(..., ge=1)
    mean_amplitude: float
    alpha_l: float
    beta_l: float
    residual_rms: float = Field(..., ge=0)
    n_points: int = Field(..., ge=0)
    per_l: Dict[int, Tuple[float, float]] = Field(default_factory=dict)


class AmplitudeFitResult(BaseSchema):
    """ΔN_l = K ā/(1 − 4ā²)^{5/2} fitted over ā at fixed φ"""

    l: int = Field(..., ge=1)
    coefficient: float
    residual_rms: float = Field(..., ge=0)
    n_points: int = Field(..., ge=0)
    phase: Optional[float] = None
