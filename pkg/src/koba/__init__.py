"""Estimates of the Kobayashi metric and distance on convex domains from planar slice geometry."""

from .bounds import MetricBoundReport, Regime, graham_bounds, improved_metric_upper
from .domains_nd import Ball, Planar, ball_exact_metric, bound_report_nd, slice_geometry
from .inscribed import InscribedSolution, max_disk_radius_through
from .region2d import Disk, HalfPlane, Hull, Intersection, disk_region, polygon, rectangle

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "Disk",
    "HalfPlane",
    "Hull",
    "InscribedSolution",
    "Intersection",
    "MetricBoundReport",
    "Planar",
    "Regime",
    "ball_exact_metric",
    "bound_report_nd",
    "disk_region",
    "graham_bounds",
    "improved_metric_upper",
    "max_disk_radius_through",
    "polygon",
    "rectangle",
    "slice_geometry",
]
