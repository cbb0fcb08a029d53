"""
Error hierarchy; every error knows the exit code the CLI reports for it
"""
from typing import Optional


class ChainError(Exception):
    """Base error for chain simulations"""

    exit_code = 2

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code


class ConfigurationError(ChainError, ValueError):
    """Invalid parameters or input files"""

    exit_code = 1


class NumericalError(ChainError, ArithmeticError):
    """Quadrature failure, non-finite state or a violated numerical identity"""

    exit_code = 2


class EdgeGuardError(ChainError):
    """Wave packet reached the chain ends while edges are strict"""

    exit_code = 3
