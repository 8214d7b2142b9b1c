"""Numerical experiments on boundary decay of holomorphic maps.

The lens experiment erodes the lens by ``d(t)``, the depth of the point
``c - t`` next to a vertex, maps the eroded set to the disk with the explicit
Riemann map, and measures how far the image stays from the unit circle. The
result decays like ``t**alpha`` with the lens exponent ``alpha = pi / 2A``, which
is compared against the exponential comparator
``dist_b * exp(-2 mu / min(r, dist_a))``.

The regime scan runs the metric pipeline over the window ``U`` of the
ice-cream-cone domain ``hull(unit disk, 2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .bounds import MetricBoundReport, Regime
from .domains_nd import Planar, bound_report_nd
from .errors import DegenerateFit, DomainError, EmptyErosion
from .oracles import LensMap
from .region2d import ConvexRegion2D, Disk, Hull

__all__ = [
    "lens_params",
    "vertex_gap",
    "vertex_gap_series",
    "eroded_image_distance",
    "fit_exponent",
    "bernal_gonzalez_bound",
    "schwarz_pick_disk_bound",
    "ExperimentRow",
    "ExperimentSeries",
    "run_lens_experiment",
    "ice_cream_cone",
    "CONE_WINDOW",
    "regime_scan",
    "regime_scan_example23",
]


def lens_params(h: float) -> LensMap:
    return LensMap(float(h))


def _check_t(lens: LensMap, t: float) -> None:
    if not (0 < t < lens.c):
        raise DomainError(f"t={t} outside (0, c={lens.c})")


def vertex_gap(lens: LensMap, t: float) -> tuple[float, float]:
    """``(d(t), d'(t))``: depth of ``c - t`` in the lens and ``1 - phi(c - t)``."""
    _check_t(lens, t)
    c, a = lens.c, lens.alpha
    d = t * (2 * c - t) / (1 + math.sqrt(t * t - 2 * c * t + 1))
    u, v = (2 * c * t) ** a, (2 * c - t) ** a
    return d, 2 * u / (v + u)


def vertex_gap_series(lens: LensMap, t_values: Iterable[float]) -> list[tuple[float, float, float]]:
    return [(float(t), *vertex_gap(lens, float(t))) for t in t_values]


def _eroded_boundary(lens: LensMap, d: float, n_samples: int) -> np.ndarray:
    k = 1 - lens.h
    rad = 1 - d
    x = math.sqrt(rad * rad - k * k)  # vertices of the eroded lens sit at +-x
    th0 = math.atan2(k, x)
    m = max(n_samples // 2, 2)
    th = np.linspace(th0, math.pi - th0, m)
    upper = -1j * k + rad * np.exp(1j * th)
    return np.concatenate([upper, upper.conj()])


def eroded_image_distance(lens: LensMap, t: float, n_samples: int = 10_000) -> float:
    """Sampled ``min (1 - |phi|)`` over the boundary of the lens eroded by ``d(t)``."""
    d, _ = vertex_gap(lens, t)
    if d >= lens.h:
        raise EmptyErosion(f"d(t)={d} >= inradius {lens.h}")
    return float(np.min(lens.gap(_eroded_boundary(lens, d, n_samples))))


def fit_exponent(rows: Iterable[Sequence[float]]) -> tuple[float, float]:
    """Least-squares fit of ``gap = C t**alpha`` in log-log coordinates; returns ``(alpha, C)``."""
    arr = np.asarray([(r[0], r[1]) for r in rows], dtype=float)
    if len(arr) < 5:
        raise DegenerateFit("need at least 5 rows")
    if np.any(arr <= 0) or not np.all(np.isfinite(arr)):
        raise DegenerateFit("rows must be positive and finite")
    x, y = np.log(arr[:, 0]), np.log(arr[:, 1])
    if np.ptp(x) == 0:
        raise DegenerateFit("all t values are equal")
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(math.exp(intercept))


def bernal_gonzalez_bound(dist_b: float, mu_a: float, dist_a: float, r: float) -> float:
    """``dist_b * exp(-2 mu_a / min(r, dist_a))``."""
    if min(dist_b, mu_a, dist_a, r) <= 0:
        raise DomainError("all arguments must be positive")
    return dist_b * math.exp(-2 * mu_a / min(r, dist_a))


def schwarz_pick_disk_bound(dist_a: float, dist_b: float, s: float) -> float:
    """``(1 - s) dist_a dist_b / 4``."""
    if not (0 <= s < 1) or dist_a <= 0 or dist_b <= 0:
        raise DomainError("need 0 <= s < 1 and positive distances")
    return (1 - s) * dist_a * dist_b / 4


class ExperimentRow(NamedTuple):
    t: float
    d_t: float
    dprime_t: float
    empirical_image_dist: float
    bg_bound: float
    power_bound: float


@dataclass(frozen=True)
class ExperimentSeries:
    h: float
    rows: tuple[ExperimentRow, ...]
    fitted_alpha: float
    fitted_C: float


def run_lens_experiment(h: float, t_values: Iterable[float], n_samples: int = 10_000) -> ExperimentSeries:
    """Tabulate vertex gaps, eroded image distances and both comparators.

    The power law ``C d(t)**alpha`` is fitted to the empirical image distances.
    The comparator uses ``a = 0``, ``b = phi(0)``, ``mu(a) = c`` and
    ``dist(a) = h``.
    """
    lens = lens_params(h)
    ts = sorted(float(t) for t in t_values)
    gaps = vertex_gap_series(lens, ts)
    emp = [eroded_image_distance(lens, t, n_samples) for t in ts]
    alpha_hat, c_hat = fit_exponent([(d, e) for (_, d, _), e in zip(gaps, emp)])
    dist_b = 1 - abs(lens.phi(0))
    rows = tuple(
        ExperimentRow(t, d, dp, e, bernal_gonzalez_bound(dist_b, lens.c, lens.h, d), c_hat * d ** alpha_hat)
        for (t, d, dp), e in zip(gaps, emp)
    )
    return ExperimentSeries(lens.h, rows, alpha_hat, c_hat)


def ice_cream_cone() -> Hull:
    return Hull((Disk(0j, 1.0), Disk(2 + 0j, 0.0)))


_Y = 5 / (7 * math.sqrt(3))
CONE_WINDOW = (math.sqrt(3) / 2, 1.0, -_Y, _Y)


def regime_scan(region: ConvexRegion2D, n_grid: int,
                window: Optional[tuple[float, float, float, float]] = None
                ) -> list[tuple[float, float, MetricBoundReport]]:
    """Run the metric pipeline at ``(z, 1)`` on cell centres of an ``n_grid`` square grid.

    The grid covers ``window`` (default: the bounding box); points not
    interior to ``region`` are skipped. Rows come out in row-major order.
    """
    if n_grid < 1:
        raise DomainError("n_grid must be positive")
    x0, x1, y0, y1 = window if window is not None else region.bbox
    xs = x0 + (np.arange(n_grid) + 0.5) * (x1 - x0) / n_grid
    ys = y0 + (np.arange(n_grid) + 0.5) * (y1 - y0) / n_grid
    dom = Planar(region)
    out = []
    for y in ys:
        for x in xs:
            z = complex(x, y)
            if region.contains(z):
                out.append((float(x), float(y), bound_report_nd(dom, z, 1.0)))
    return out


def regime_scan_example23(n_grid: int) -> dict[complex, Regime]:
    """Regimes over the window ``U`` of the ice-cream cone, restricted to the unit disk."""
    if n_grid < 10:
        raise DomainError("n_grid must be >= 10")
    cone = ice_cream_cone()
    rows = regime_scan(cone, n_grid, CONE_WINDOW)
    return {complex(x, y): rep.regime for x, y, rep in rows if abs(complex(x, y)) < 1}
