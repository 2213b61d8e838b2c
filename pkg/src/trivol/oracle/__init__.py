"""Brute-force volume oracles that never touch the closed forms."""

from .hull3d import hull3d_volume
from .lp import batch_membership, lp_membership
from .montecarlo import McEstimate, oracle_volume_montecarlo
from .quadrature import oracle_volume_quadrature, slice_points, slice_volume

__all__ = [
    "McEstimate",
    "batch_membership",
    "hull3d_volume",
    "lp_membership",
    "oracle_volume_montecarlo",
    "oracle_volume_quadrature",
    "slice_points",
    "slice_volume",
]
