"""
`run`: propagate one configuration and write occupations + summary
"""
import argparse
from pathlib import Path

from blochchain.exceptions import EdgeGuardError
from blochchain.schemas.run_config import RunConfig
from blochchain.services.export_service import ExportService
from blochchain.services.run_service import RunService
from blochchain.utils.logging import get_command_logger


def add_parser(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("run", help="Propagate a single configuration")
    parser.add_argument("--config", required=True, help="Run config JSON (or a previous summary JSON)")
    parser.add_argument("--output", default=".", help="Directory for the output files")
    parser.add_argument("--strict-edges", action="store_true", help="Exit with code 3 when the edge guard fails")
    parser.set_defaults(handler=handle)
    return parser


def handle(args: argparse.Namespace) -> int:
    logger = get_command_logger("run")
    config = RunConfig.load(args.config)

    runner = RunService()
    record = runner.simulate(config)

    output_dir = Path(args.output)
    export = ExportService()
    occupations_path = export.write_occupations_csv(record, output_dir / config.output.occupations_path)
    export.write_summary_json(
        record,
        output_dir / config.output.summary_path,
        config=config,
        half_period_excursion=runner.excursion(record),
    )
    if config.output.gnuplot_script:
        export.write_gnuplot_script(
            occupations_path,
            occupations_path.with_suffix(".gp"),
            n_nodes=config.chain.n_nodes,
        )

    if args.strict_edges and not record.edge_ok:
        raise EdgeGuardError(
            f"edge occupation {record.edge_occupation_max:.3g} exceeds {record.edge_threshold:.3g}"
        )

    logger.info("Run written", output=str(output_dir), displacements=record.displacements)
    return 0
