"""
`analytic`: print the continuum displacement estimate
"""
import argparse

from blochchain.schemas.analytics import ApproxParams
from blochchain.services.analytics import approx_displacement, static_displacement


def add_parser(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser("analytic", help="Evaluate the displacement approximation")
    parser.add_argument("--V", type=float, default=1.0, help="Dipolar prefactor")
    parser.add_argument("--f", type=float, required=True, help="Field strength")
    parser.add_argument("--omega", type=float, help="Chain frequency (default: f, the resonance)")
    parser.add_argument("--a", type=float, default=0.0, help="Coupling modulation amplitude")
    parser.add_argument("--phi", type=float, default=0.0, help="Phase of the chain motion")
    parser.add_argument("--l", type=int, default=1, help="Number of Bloch periods")
    parser.add_argument("--time", type=float, help="Print the static-chain excursion at this time instead")
    parser.set_defaults(handler=handle)
    return parser


def format_value(value: float) -> str:
    # + 0.0 turns -0.0 into 0
    return f"{value + 0.0:.10g}"


def handle(args: argparse.Namespace) -> int:
    params = ApproxParams(
        V=args.V,
        f=args.f,
        omega=args.f if args.omega is None else args.omega,
        a=args.a,
        phi=args.phi,
        l=args.l,
    )
    if args.time is not None:
        value = static_displacement(args.time, params.V, params.f)
    else:
        value = approx_displacement(params)
    print(format_value(value))
    return 0
