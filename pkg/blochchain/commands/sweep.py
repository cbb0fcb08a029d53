"""
`sweep`: vary one parameter over a grid and write the sweep table
"""
import argparse
from pathlib import Path

from blochchain.constants import default_phase_grid
from blochchain.exceptions import ChainError, ConfigurationError, EdgeGuardError
from blochchain.schemas.run_config import RunConfig
from blochchain.schemas.sweeps import SweepParameter, SweepSpec
from blochchain.services.export_service import ExportService
from blochchain.services.sweep_service import SweepService
from blochchain.utils.grid import parse_grid
from blochchain.utils.logging import get_command_logger


def add_parser(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("sweep", help="Sweep phase, amplitude or field strength")
    parser.add_argument("--config", required=True, help="Base run config JSON")
    parser.add_argument("--param", required=True, choices=["phi", "amplitude", "field"])
    parser.add_argument("--grid", help="start:stop:steps (inclusive) or a comma list; phi defaults to 33 points over [0, 2pi)")
    parser.add_argument("--jobs", type=int, help="Worker processes (default: available processors)")
    parser.add_argument("--output", help="Sweep CSV path (default: output.sweep_path of the config)")
    parser.add_argument("--strict-edges", action="store_true", help="Exit with code 3 when any point fails the edge guard")
    parser.set_defaults(handler=handle)
    return parser


def _grid(args: argparse.Namespace, parameter: SweepParameter):
    if args.grid is not None:
        return parse_grid(args.grid)
    if parameter == SweepParameter.PHASE:
        return default_phase_grid()
    raise ConfigurationError(f"--grid is required when sweeping {args.param}")


def handle(args: argparse.Namespace) -> int:
    logger = get_command_logger("sweep")
    if args.jobs is not None and args.jobs < 1:
        raise ConfigurationError("--jobs must be at least 1")

    config = RunConfig.load(args.config)
    parameter = SweepParameter.from_cli(args.param)
    spec = SweepSpec.from_run_config(config, parameter, _grid(args, parameter))

    result = SweepService(args.jobs).run_sweep(spec)
    path = ExportService().write_sweep_csv(result, args.output or Path(config.output.sweep_path))

    failed = [row for row in result.rows if row.failed]
    if failed:
        first = failed[0]
        raise ChainError(
            f"{len(failed)} of {len(result.rows)} sweep points failed; first at {first.value:g}: {first.error}",
            exit_code=first.error_code,
        )
    if args.strict_edges and not all(row.edge_ok for row in result.rows):
        values = [row.value for row in result.rows if not row.edge_ok]
        raise EdgeGuardError(f"edge guard failed at {', '.join(f'{v:g}' for v in values)}")

    logger.info("Sweep written", path=str(path), points=len(result.rows))
    return 0
