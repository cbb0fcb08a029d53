"""
Trajectory schemas
"""
from typing import Dict

import numpy as np
from pydantic import Field, field_validator, model_validator

from .base import ArraySchema, BaseSchema, readonly_array
from .chain import ChainSpec, CouplingProfile
from .propagation import IntegratorConfig, WavePacketSpec

ROW_SUM_TOLERANCE = 1e-6
OCCUPATION_SLACK = 1e-8


class EdgeGuardResult(BaseSchema):
    """Whether the packet stayed away from both chain ends"""

    passed: bool
    max_edge_occupation: float = Field(..., ge=0)
    threshold: float = Field(..., ge=0)


class TrajectoryRecord(ArraySchema):
    """Occupations, centers and displacements extracted from a propagation"""

    times: np.ndarray
    occupations: np.ndarray
    centers: np.ndarray
    variances: np.ndarray
    displacements: Dict[int, float] = Field(default_factory=dict)
    edge_occupation_max: float = Field(..., ge=0)
    edge_threshold: float = Field(..., ge=0)
    edge_ok: bool
    trace_drift: float = Field(..., ge=0)

    chain: ChainSpec
    profile: CouplingProfile
    packet: WavePacketSpec
    integrator: IntegratorConfig

    @field_validator("times", "occupations", "centers", "variances", mode="before")
    @classmethod
    def as_array(cls, value):
        return readonly_array(value, dtype=float)

    @model_validator(mode="after")
    def check_trajectory(self):
        n_snapshots = self.times.shape[0]
        if self.occupations.shape != (n_snapshots, self.chain.n_nodes):
            raise ValueError("occupations must have one row per snapshot and one column per node")
        if self.centers.shape != (n_snapshots,) or self.variances.shape != (n_snapshots,):
            raise ValueError("centers and variances need one entry per snapshot")
        if np.any(np.abs(self.occupations.sum(axis=1) - 1.0) > ROW_SUM_TOLERANCE):
            raise ValueError("occupation rows must sum to 1")
        if np.any(self.occupations < -OCCUPATION_SLACK) or np.any(self.occupations > 1 + OCCUPATION_SLACK):
            raise ValueError("occupations must lie in [0, 1]")
        if np.any(self.centers < 1 - ROW_SUM_TOLERANCE) or np.any(self.centers > self.chain.n_nodes + ROW_SUM_TOLERANCE):
            raise ValueError("centers must lie on the chain")
        return self

    @property
    def edge_guard(self) -> EdgeGuardResult:
        return EdgeGuardResult(
            passed=self.edge_ok,
            max_edge_occupation=self.edge_occupation_max,
            threshold=self.edge_threshold,
        )
