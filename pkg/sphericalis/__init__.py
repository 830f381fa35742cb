"""
Sphericalis
Exact unramified spherical functions, L-values and volumes of affine spherical varieties.
"""

__version__ = "0.1.0"
