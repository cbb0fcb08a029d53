"""
Parsing of parameter grids given on the command line
"""
from typing import List

import numpy as np

from blochchain.exceptions import ConfigurationError


def parse_grid(text: str) -> List[float]:
    """Parse ``start:stop:steps`` (inclusive linspace) or a comma list.

    Examples:
        >>> parse_grid("0:1:3")
        [0.0, 0.5, 1.0]
        >>> parse_grid("0.18,0.22")
        [0.18, 0.22]
    """
    if text is None or not text.strip():
        raise ConfigurationError("Grid cannot be empty")

    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) != 3:
                raise ConfigurationError(f"Grid range must be start:stop:steps, got {text!r}")
            start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
            if steps < 1:
                raise ConfigurationError("Grid needs at least one step")
            if steps == 1:
                return [start]
            return [float(v) for v in np.linspace(start, stop, steps)]

        values = [float(item) for item in text.split(",") if item.strip()]
        if not values:
            raise ConfigurationError("Grid cannot be empty")
        return values
    except ValueError as e:
        if isinstance(e, ConfigurationError):
            raise
        raise ConfigurationError(f"Invalid grid {text!r}: {e}")
