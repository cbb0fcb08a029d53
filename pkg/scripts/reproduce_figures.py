#!/usr/bin/env python3
"""
Script to regenerate the sweep tables behind the displacement plots
"""
import argparse
import math
import sys
from pathlib import Path
from typing import Callable, Dict, List, Sequence

# Add parent directory to path to import blochchain modules
sys.path.append(str(Path(__file__).parent.parent))

import numpy as np
import structlog

from blochchain.constants import (
    EIGENMODE_ALT_CENTERS,
    REFERENCE_AMPLITUDE,
    REFERENCE_FIELD_STRENGTH,
    REFERENCE_FREQUENCY,
    REFERENCE_MEAN_EIGENMODE_AMPLITUDE,
    REFERENCE_N_NODES,
    REFERENCE_PACKET_WIDTH,
    SWEEP_CENTER,
    TWO_PERIOD_CENTER,
    default_phase_grid,
)
from blochchain.schemas import (
    ChainSpec,
    CouplingProfile,
    IntegratorSettings,
    SweepParameter,
    SweepSpec,
    WavePacketSpec,
)
from blochchain.services.analytics import fit_displacement_model
from blochchain.services.export_service import ExportService
from blochchain.services.sweep_service import SweepService
from blochchain.utils.logging import setup_logging

logger = structlog.get_logger()

SWEEP_PHASES = {"phi0": 0.0, "phi_half_pi": math.pi / 2, "phi_pi": math.pi}


def _spec(
    profile: CouplingProfile,
    parameter: SweepParameter,
    grid,
    center: int = SWEEP_CENTER,
    record_periods: Sequence[int] = (1,),
) -> SweepSpec:
    return SweepSpec(
        chain=ChainSpec(n_nodes=REFERENCE_N_NODES, field_strength=REFERENCE_FIELD_STRENGTH),
        profile=profile,
        packet=WavePacketSpec(center=center, width=REFERENCE_PACKET_WIDTH),
        integrator=IntegratorSettings(periods=max(record_periods)),
        parameter=parameter,
        grid=[float(v) for v in grid],
        record_periods=list(record_periods),
        analytic_overlay=True,
    )


def uniform_phase() -> Dict[str, SweepSpec]:
    profile = CouplingProfile.uniform(REFERENCE_AMPLITUDE, REFERENCE_FREQUENCY)
    return {"uniform_phase": _spec(profile, SweepParameter.PHASE, default_phase_grid())}


def uniform_amplitude() -> Dict[str, SweepSpec]:
    grid = np.linspace(0.0, 0.15, 16)
    return {
        f"uniform_amplitude_{name}": _spec(
            CouplingProfile.uniform(REFERENCE_AMPLITUDE, REFERENCE_FREQUENCY, phase), SweepParameter.AMPLITUDE, grid
        )
        for name, phase in SWEEP_PHASES.items()
    }


def uniform_detuning() -> Dict[str, SweepSpec]:
    grid = REFERENCE_FREQUENCY * np.linspace(0.5, 1.5, 41)
    profile = CouplingProfile.uniform(REFERENCE_AMPLITUDE, REFERENCE_FREQUENCY)
    return {
        "uniform_detuning": _spec(
            profile, SweepParameter.FIELD_STRENGTH, grid, center=TWO_PERIOD_CENTER, record_periods=(1, 2)
        )
    }


def eigenmode_phase() -> Dict[str, SweepSpec]:
    profile = CouplingProfile.eigenmode(REFERENCE_MEAN_EIGENMODE_AMPLITUDE, REFERENCE_FREQUENCY)
    return {
        f"eigenmode_phase_n{center}": _spec(profile, SweepParameter.PHASE, default_phase_grid(), center=center)
        for center in (SWEEP_CENTER, *EIGENMODE_ALT_CENTERS)
    }


def eigenmode_amplitude() -> Dict[str, SweepSpec]:
    grid = np.linspace(0.0, 0.06, 13)
    return {
        f"eigenmode_amplitude_{name}": _spec(
            CouplingProfile.eigenmode(REFERENCE_MEAN_EIGENMODE_AMPLITUDE, REFERENCE_FREQUENCY, phase),
            SweepParameter.AMPLITUDE,
            grid,
        )
        for name, phase in SWEEP_PHASES.items()
    }


SWEEPS: Dict[str, Callable[[], Dict[str, SweepSpec]]] = {
    "uniform-phase": uniform_phase,
    "uniform-amplitude": uniform_amplitude,
    "uniform-detuning": uniform_detuning,
    "eigenmode-phase": eigenmode_phase,
    "eigenmode-amplitude": eigenmode_amplitude,
}


def write_phase_fit(result, mean_amplitude: float, path: Path, export: ExportService) -> None:
    """Cosine fit of every recorded period of a phase sweep"""
    rows = [row for row in result.rows if not row.failed]
    fits = {
        l: fit_displacement_model([(row.value, row.displacements[l]) for row in rows], mean_amplitude, l)
        for l in result.spec.record_periods
    }
    first = fits[min(fits)]
    first = first.model_copy(update={"per_l": {l: (fit.alpha_l, fit.beta_l) for l, fit in fits.items()}})
    export.write_fit_json(first, path)


def reproduce(names: List[str], output: Path, jobs=None) -> None:
    export = ExportService()
    service = SweepService(jobs)
    for name in names:
        for label, spec in SWEEPS[name]().items():
            logger.info("Running sweep", sweep=label, points=len(spec.grid))
            result = service.run_sweep(spec)
            export.write_sweep_csv(result, output / f"{label}.csv")

            if spec.parameter == SweepParameter.PHASE:
                write_phase_fit(result, spec.profile.amplitude, output / f"{label}_fit.json", export)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--output", default="figures", help="Directory for the CSV and fit files")
    parser.add_argument("--jobs", type=int, help="Worker processes per sweep")
    parser.add_argument("--only", nargs="+", choices=sorted(SWEEPS), help="Subset of sweeps to run")
    args = parser.parse_args()

    setup_logging()
    reproduce(args.only or list(SWEEPS), Path(args.output), args.jobs)
    logger.info("All sweeps written", output=args.output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
