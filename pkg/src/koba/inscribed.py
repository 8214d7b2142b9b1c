"""Largest disk inside a planar convex region whose closure contains a given point.

For ``p`` in a region ``Omega`` the quantity of interest is

    r_hat(p) = sup { delta(zeta) : |zeta - p| <= delta(zeta) }

together with the set ``S(p)`` of optimal centers and its point nearest ``p``.
Feasibility of a candidate radius ``r`` is monotone in ``r`` (move the center
toward ``p`` and use concavity of ``delta``), so ``r_hat`` is found by
bisection; each test projects ``p`` exactly onto the superlevel set
``{delta >= r}`` and compares the distance with ``r``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InfeasibleLevelSet, NotInterior, SolverDiverged
from .region2d import ConvexRegion2D, project_onto_level_set

__all__ = [
    "InscribedSolution",
    "max_disk_radius_through",
    "nearest_max_center",
    "interpolated_disk",
    "brute_force_inscribed",
]

MAX_BISECTIONS = 10_000


@dataclass(frozen=True)
class InscribedSolution:
    r_hat: float
    q: complex
    dist_pq: float
    certificate: dict = field(default_factory=dict, compare=False)


def _feasible(region, p, r, slack):
    q = project_onto_level_set(region, p, r)
    if q is None or abs(q - p) > r + slack:
        return None
    return q


def max_disk_radius_through(region: ConvexRegion2D, p: complex, rtol: float = 1e-14) -> InscribedSolution:
    """Solve for ``r_hat``, the optimal center nearest ``p``, and its distance to ``p``.

    ``rtol`` is the bisection bracket width relative to the region's size.
    Raises :class:`NotInterior` if ``p`` is not interior and
    :class:`SolverDiverged` if the bracket fails to close within the cap.
    """
    p = complex(p)
    delta_p = region.boundary_distance(p)
    scale = max(region.scale, 1.0)
    slack = 1e-13 * scale
    width = rtol * scale
    lo, q_lo = delta_p, p
    hi = region.inradius
    iterations = 0
    if hi > lo:
        q = _feasible(region, p, hi, slack)
        if q is not None:
            lo, q_lo = hi, q
        else:
            while hi - lo > width:
                if iterations >= MAX_BISECTIONS:
                    raise SolverDiverged(f"bisection bracket [{lo}, {hi}] did not close")
                iterations += 1
                mid = 0.5 * (lo + hi)
                q = _feasible(region, p, mid, slack)
                if q is None:
                    hi = mid
                else:
                    lo, q_lo = mid, q
    cert = {
        "iterations": iterations,
        "bracket": hi - lo if hi > lo else 0.0,
        "level_residual": float(region.margin(q_lo)) - lo,
        "disk_residual": abs(q_lo - p) - lo,
    }
    return InscribedSolution(lo, q_lo, abs(q_lo - p), cert)


def nearest_max_center(region: ConvexRegion2D, p: complex, r_hat: float, tol: float = 1e-9) -> complex:
    """Projection of ``p`` onto ``{delta >= r_hat}``; retried at ``r_hat - tol`` before giving up."""
    q = project_onto_level_set(region, complex(p), r_hat)
    if q is None:
        q = project_onto_level_set(region, complex(p), r_hat - tol)
    if q is None:
        raise InfeasibleLevelSet(f"no point of depth >= {r_hat}")
    return q


def interpolated_disk(p: complex, Rp: float, z: complex, Rz: float, t: float) -> tuple[complex, float]:
    """Center and radius of the disk interpolating ``D(p, Rp)`` and ``D(z, Rz)`` at parameter ``t``."""
    return (1 - t) * p + t * z, (1 - t) * Rp + t * Rz


def _grid_margin(region, xs, ys, chunk=400_000):
    zz = (xs[None, :] + 1j * ys[:, None]).ravel()
    out = np.empty(zz.shape)
    for k in range(0, len(zz), chunk):
        out[k:k + chunk] = region.margin(zz[k:k + chunk])
    return zz, out


def brute_force_inscribed(region: ConvexRegion2D, p: complex, grid_step: float,
                          refine: int = 3, max_side: int = 1500) -> InscribedSolution:
    """Grid-scan oracle for :func:`max_disk_radius_through`.

    The first pass scans the whole bounding box at ``grid_step``. Each of the
    ``refine`` further passes rescans, at a finer step, the box around the grid
    points that are near-optimal at the previous level (this box provably
    contains every optimal center). No projections or bisection are used.
    """
    p = complex(p)
    if not region.contains(p):
        raise NotInterior(f"{p} is not interior to the region")
    x0, x1, y0, y1 = region.bbox
    step = float(grid_step)
    r_est = q_est = None
    levels = []
    for level in range(refine + 1):
        xs = np.arange(x0, x1 + 0.5 * step, step)
        ys = np.arange(y0, y1 + 0.5 * step, step)
        zz, dz = _grid_margin(region, xs, ys)
        gap = np.abs(zz - p)
        inside = dz > 0
        feas = inside & (gap <= dz)
        if not feas.any():
            break
        r_est = float(dz[feas].max())
        top = inside & (dz >= r_est - step)
        q_est = complex(zz[top][np.argmin(gap[top])])
        levels.append({"step": step, "points": int(zz.size), "r_hat": r_est})
        near = top & (gap <= dz + 2 * step)
        pad = 2 * step
        nx0, nx1 = zz[near].real.min() - pad, zz[near].real.max() + pad
        ny0, ny1 = zz[near].imag.min() - pad, zz[near].imag.max() + pad
        x0, x1 = max(nx0, region.bbox[0]), min(nx1, region.bbox[1])
        y0, y1 = max(ny0, region.bbox[2]), min(ny1, region.bbox[3])
        step = max(step / 10, max(x1 - x0, y1 - y0) / max_side)
    return InscribedSolution(r_est, q_est, abs(q_est - p), {"levels": levels})
