"""
Reference parameters of the vibrating-chain transport study
"""
import math

# Chain
REFERENCE_N_NODES = 103
REFERENCE_DIPOLAR_PREFACTOR = 1.0
REFERENCE_FIELD_STRENGTH = 0.2
REFERENCE_DEPHASING_RATE = 0.05

# Initial wave packet
REFERENCE_PACKET_WIDTH = 6.0
STATIC_DEMO_CENTER = 78
SWEEP_CENTER = 52
EIGENMODE_ALT_CENTERS = (42, 78)
# Two periods of downward drift from the middle reach node 1
TWO_PERIOD_CENTER = 78

# Oscillating chain
REFERENCE_AMPLITUDE = 0.1
REFERENCE_FREQUENCY = 0.2
REFERENCE_MEAN_EIGENMODE_AMPLITUDE = 0.04

# Sweeps
DEFAULT_PHASE_POINTS = 33
DEFAULT_RECORD_PERIODS = (1, 2)

# The eigenmode detuning comparison reuses the uniform-chain curve, halved
EIGENMODE_OVERLAY_SCALE = 0.5
EIGENMODE_OVERLAY_AMPLITUDE = 0.1

# Coupling denominators 1 - 2a sin(...) must stay away from zero
MAX_MODULATION = 0.999

TWO_PI = 2.0 * math.pi


def default_phase_grid(points: int = DEFAULT_PHASE_POINTS) -> list:
    """Evenly spaced phases on [0, 2π)"""
    return [TWO_PI * k / points for k in range(points)]
