"""Exact 4D volume of the convex hull of the graph of x1*x2*x3 over a box."""

from .boxdom import BoxDomain3, DomainError, Interval, Normalization, interval_from_bounds, normalize, ratios
from .formula import VolumeReport, classify, hull_volume, hull_volume_any, hull_volume_nonneg, table1_subcases

__version__ = "0.1.0"

__all__ = [
    "BoxDomain3",
    "DomainError",
    "Interval",
    "Normalization",
    "VolumeReport",
    "classify",
    "hull_volume",
    "hull_volume_any",
    "hull_volume_nonneg",
    "interval_from_bounds",
    "normalize",
    "ratios",
    "table1_subcases",
]
