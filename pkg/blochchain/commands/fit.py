"""
`fit`: fit the cosine displacement model to a phase sweep
"""
import argparse

from blochchain.exceptions import ConfigurationError
from blochchain.services.analytics import fit_displacement_model
from blochchain.services.export_service import ExportService


def add_parser(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("fit", help="Fit alpha_l and beta_l to a phase-sweep CSV")
    parser.add_argument("sweep_csv", help="CSV written by `sweep --param phi`")
    parser.add_argument("--abar", type=float, required=True, help="Mean eigenmode amplitude of the sweep")
    parser.add_argument("--l", type=int, default=1, help="Period whose fit is reported at top level")
    parser.add_argument("--output", help="Fit JSON path (default: stdout)")
    parser.set_defaults(handler=handle)
    return parser


def handle(args: argparse.Namespace) -> int:
    export = ExportService()
    frame = export.read_sweep_csv(args.sweep_csv)
    frame = frame.dropna(subset=["param", "l", "delta_n"])

    available = sorted(int(l) for l in frame["l"].unique())
    if args.l not in available:
        raise ConfigurationError(f"sweep has no rows for l={args.l} (available: {available})")

    fits = {}
    for l in available:
        rows = frame[frame["l"] == l]
        fits[l] = fit_displacement_model(list(zip(rows["param"], rows["delta_n"])), args.abar, l)

    requested = fits[args.l]
    result = requested.model_copy(
        update={"per_l": {l: (fit.alpha_l, fit.beta_l) for l, fit in fits.items()}}
    )
    text = export.write_fit_json(result, args.output)
    if args.output is None:
        print(text, end="")
    return 0
