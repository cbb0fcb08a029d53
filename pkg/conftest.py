"""
Test configuration and fixtures
"""
import json
import os

import pytest

# Quiet, deterministic test environment
os.environ["BLOCHCHAIN_ENVIRONMENT"] = "test"
os.environ.setdefault("BLOCHCHAIN_LOG_LEVEL", "WARNING")
os.environ.setdefault("BLOCHCHAIN_SWEEP_JOBS", "1")

from blochchain.constants import (
    REFERENCE_AMPLITUDE,
    REFERENCE_FIELD_STRENGTH,
    REFERENCE_FREQUENCY,
    REFERENCE_MEAN_EIGENMODE_AMPLITUDE,
    REFERENCE_N_NODES,
    REFERENCE_PACKET_WIDTH,
    STATIC_DEMO_CENTER,
    SWEEP_CENTER,
)
from blochchain.schemas import ChainSpec, CouplingProfile, WavePacketSpec


@pytest.fixture
def reference_chain() -> ChainSpec:
    """N = 103, V = 1, f = 0.2, no dephasing"""
    return ChainSpec(n_nodes=REFERENCE_N_NODES, dipolar_prefactor=1.0, field_strength=REFERENCE_FIELD_STRENGTH)


@pytest.fixture
def small_chain() -> ChainSpec:
    """Short chain for fast integrator checks"""
    return ChainSpec(n_nodes=12, dipolar_prefactor=1.0, field_strength=0.5)


@pytest.fixture
def static_profile() -> CouplingProfile:
    return CouplingProfile.static()


@pytest.fixture
def uniform_profile() -> CouplingProfile:
    """a = 0.1 at resonance ω = f = 0.2, φ = 0"""
    return CouplingProfile.uniform(REFERENCE_AMPLITUDE, REFERENCE_FREQUENCY, 0.0)


@pytest.fixture
def eigenmode_profile() -> CouplingProfile:
    """Lowest eigenmode, ā₁ = 0.04, ω₁ = f = 0.2, φ = 0"""
    return CouplingProfile.eigenmode(REFERENCE_MEAN_EIGENMODE_AMPLITUDE, REFERENCE_FREQUENCY, 0.0, 1)


@pytest.fixture
def static_packet() -> WavePacketSpec:
    return WavePacketSpec(center=STATIC_DEMO_CENTER, width=REFERENCE_PACKET_WIDTH)


@pytest.fixture
def sweep_packet() -> WavePacketSpec:
    return WavePacketSpec(center=SWEEP_CENTER, width=REFERENCE_PACKET_WIDTH)


@pytest.fixture
def run_config_data() -> dict:
    """Small uniform-chain run config as parsed JSON"""
    return {
        "chain": {"n_nodes": 61, "dipolar_prefactor": 1.0, "field_strength": 0.5},
        "coupling": {"variant": "uniform", "amplitude": 0.05, "angular_frequency": 0.5, "phase": 0.0},
        "packet": {"center": 31, "width": 3.0},
        "integrator": {"steps_per_period": 2000, "periods": 1, "snapshot_stride": 50},
        "output": {"periods": [1]},
    }


@pytest.fixture
def config_file(tmp_path, run_config_data):
    """Write a run config to a temporary file and return its path"""

    def _write(data=None, name="config.json"):
        path = tmp_path / name
        path.write_text(json.dumps(run_config_data if data is None else data), encoding="utf-8")
        return path

    return _write
