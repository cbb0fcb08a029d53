"""
Command-line entry point: ``blochchain {run,sweep,analytic,fit}``
"""
import argparse
import sys
from typing import List, Optional

import structlog
from pydantic import ValidationError

from blochchain import __version__
from blochchain.commands import SUBCOMMANDS
from blochchain.exceptions import ChainError, ConfigurationError
from blochchain.utils.logging import setup_logging

logger = structlog.get_logger()


class CliParser(argparse.ArgumentParser):
    """Usage errors are configuration errors (exit code 1)"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise ConfigurationError(f"{self.prog}: {message}")


def build_parser() -> CliParser:
    parser = CliParser(
        prog="blochchain",
        description="Excitation transport on vibrating chains under a constant field",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)
    for command in SUBCOMMANDS:
        command.add_parser(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand and return its exit code"""
    setup_logging()
    try:
        args = build_parser().parse_args(argv)
        return args.handler(args)
    except ValidationError as e:
        logger.error("Invalid configuration", errors=e.errors(include_url=False))
        return ConfigurationError.exit_code
    except ChainError as e:
        logger.error("Command failed", error=e.detail, error_type=type(e).__name__, exit_code=e.exit_code)
        return e.exit_code
    except Exception as e:
        logger.error("Unhandled exception", exc_info=e)
        return 2


if __name__ == "__main__":
    sys.exit(main())
