"""
blochchain: excitation transport on vibrating chains under a constant field
"""
__version__ = "1.0.0"
