# blochchain Schemas Package
from .analytics import AmplitudeFitResult, ApproxParams, FitResult
from .chain import ChainSpec, CouplingProfile, CouplingVariant, EigenmodeParameters, HamiltonianMatrix
from .observables import EdgeGuardResult, TrajectoryRecord
from .propagation import IntegratorConfig, IntegratorSettings, QuantumState, StateVariant, WavePacketSpec
from .run_config import OutputSettings, RunConfig, StateMode
from .sweeps import SweepParameter, SweepResult, SweepRow, SweepSpec
