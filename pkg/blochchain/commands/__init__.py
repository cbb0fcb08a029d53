"""
CLI subcommands; each module exposes ``add_parser`` and ``handle``
"""
from blochchain.commands import analytic, fit, run, sweep

SUBCOMMANDS = (run, sweep, analytic, fit)
