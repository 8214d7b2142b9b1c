"""Domains in C^n that reduce to planar slices: Euclidean balls and planar regions.

The complex line through ``p`` in direction ``e = xi/|xi|`` meets a domain ``D`` in
``D(xi) = {z : p + z e in D}``, a planar convex region containing 0. Metric
bounds for ``D`` at ``(p, xi)`` are then read off the slice geometry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from .bounds import MetricBoundReport, make_report
from .errors import NotInterior, ZeroDirection
from .inscribed import InscribedSolution, max_disk_radius_through
from .oracles import poincare_metric
from .region2d import BOUNDARY_EPS, ConvexRegion2D, Disk, Intersection, disk_region

__all__ = [
    "Ball",
    "Planar",
    "DomainND",
    "SliceGeometry",
    "slice_geometry",
    "slice",
    "unitary_reduce",
    "ball_exact_metric",
    "bound_report_nd",
]

_N_MEMBERSHIP = 256


@dataclass(frozen=True)
class Ball:
    center: tuple
    radius: float

    def __post_init__(self):
        c = tuple(complex(v) for v in np.atleast_1d(np.asarray(self.center, dtype=complex)))
        if not c:
            raise ValueError("ball center must have at least one coordinate")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise ValueError(f"radius must be positive, got {self.radius}")
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))

    @property
    def dim(self) -> int:
        return len(self.center)

    def margin(self, points) -> np.ndarray:
        """``radius - |x - center|`` for each row of ``points``."""
        pts = np.asarray(points, dtype=complex).reshape(-1, self.dim)
        return self.radius - np.linalg.norm(pts - np.asarray(self.center), axis=1)

    def contains(self, point) -> bool:
        return bool(self.margin(point)[0] > BOUNDARY_EPS)


def _disk_oracle(disk: Disk) -> Callable[[complex, complex], float]:
    def metric(z, xi):
        return poincare_metric((complex(z) - disk.center) / disk.radius, complex(xi) / disk.radius)
    return metric


@dataclass(frozen=True)
class Planar:
    """A planar region viewed as a domain in C. A single disk gets the Poincare oracle automatically."""

    region: ConvexRegion2D
    exact_metric: Optional[Callable[[complex, complex], float]] = field(default=None, compare=False)

    def __post_init__(self):
        r = self.region
        if self.exact_metric is None and isinstance(r, Intersection) and not r.halfplanes and len(r.disks) == 1:
            object.__setattr__(self, "exact_metric", _disk_oracle(r.disks[0]))

    @property
    def dim(self) -> int:
        return 1

    def contains(self, point) -> bool:
        return self.region.contains(_scalar(point))


DomainND = Union[Ball, Planar]


@dataclass(frozen=True)
class SliceGeometry:
    slice: ConvexRegion2D
    r: float
    r_hat: float
    q_planar: complex
    dist_pq: float
    solution: Optional[InscribedSolution] = field(default=None, compare=False)


def _scalar(v) -> complex:
    a = np.atleast_1d(np.asarray(v, dtype=complex))
    if a.size != 1:
        raise ValueError(f"expected a single complex coordinate, got {a.size}")
    return complex(a[0])


def _vec(v, n) -> np.ndarray:
    a = np.atleast_1d(np.asarray(v, dtype=complex)).ravel()
    if a.size != n:
        raise ValueError(f"expected {n} complex coordinates, got {a.size}")
    return a


def _unit(xi: np.ndarray) -> np.ndarray:
    nrm = float(np.linalg.norm(xi))
    if nrm == 0 or not math.isfinite(nrm):
        raise ZeroDirection("direction must be a nonzero finite vector")
    return xi / nrm


def _ball_slice(ball: Ball, p: np.ndarray, e: np.ndarray) -> Intersection:
    w0 = p - np.asarray(ball.center)
    mu = complex(np.vdot(e, w0))
    rho2 = ball.radius ** 2 - float(np.vdot(w0, w0).real) + abs(mu) ** 2
    rho = math.sqrt(max(rho2, 0.0))
    # the slice is a disk of radius rho; settle the center by testing membership
    rng = np.random.default_rng(12345)
    ang = rng.uniform(0, 2 * math.pi, _N_MEMBERSHIP)
    rad = rho * rng.uniform(0, 2, _N_MEMBERSHIP)
    for center in (-mu, -mu.conjugate()):
        z = center + rad * np.exp(1j * ang)
        planar = rho - np.abs(z - center)
        direct = ball.margin(p[None, :] + z[:, None] * e[None, :])
        clear = np.abs(direct) > 1e-9
        if np.all((planar[clear] > 0) == (direct[clear] > 0)):
            return disk_region(center, rho)
    raise RuntimeError("no slice-disk center passed the membership check")


def slice_geometry(domain: DomainND, p, xi) -> SliceGeometry:
    """Slice ``domain`` along ``p + C xi`` and solve the inscribed-disk problem in it."""
    if isinstance(domain, Ball):
        pv, e = _vec(p, domain.dim), _unit(_vec(xi, domain.dim))
        if not domain.contains(pv):
            raise NotInterior("p is not interior to the ball")
        region = _ball_slice(domain, pv, e)
    elif isinstance(domain, Planar):
        pz, e = _scalar(p), _unit(_vec(xi, 1))
        if not domain.region.contains(pz):
            raise NotInterior(f"{pz} is not interior to the region")
        region = domain.region.pullback(pz, complex(e[0]))
    else:
        raise TypeError(f"unsupported domain type {type(domain).__name__}")
    r = region.boundary_distance(0j)
    sol = max_disk_radius_through(region, 0j)
    return SliceGeometry(region, r, sol.r_hat, sol.q, sol.dist_pq, sol)


slice = slice_geometry


def unitary_reduce(p, xi) -> tuple[np.ndarray, np.ndarray]:
    """Apply a unitary ``U`` with ``U xi = (|xi|, 0, ..., 0)``; return ``(U p, U xi)``."""
    xi = np.atleast_1d(np.asarray(xi, dtype=complex)).ravel()
    p = _vec(p, xi.size)
    e = _unit(xi)
    n = xi.size
    q, _ = np.linalg.qr(np.column_stack([e, np.eye(n, dtype=complex)]))
    q = q[:, :n]
    q[:, 0] *= np.vdot(q[:, 0], e)  # phase so that the first column is exactly e
    u = q.conj().T
    v = np.zeros(n, dtype=complex)
    v[0] = np.linalg.norm(xi)
    return u @ p, v


def ball_exact_metric(x, v) -> float:
    """Kobayashi metric of the unit ball at ``x`` in direction ``v``."""
    x = np.atleast_1d(np.asarray(x, dtype=complex)).ravel()
    v = _vec(v, x.size)
    s = 1 - float(np.vdot(x, x).real)
    if s <= 0:
        raise NotInterior("|x| >= 1")
    return math.sqrt(float(np.vdot(v, v).real) / s + abs(np.vdot(x, v)) ** 2 / (s * s))


def bound_report_nd(domain: DomainND, p, xi) -> MetricBoundReport:
    """Slice, solve and bound; attaches the exact metric when an oracle is available."""
    g = slice_geometry(domain, p, xi)
    xi_norm = float(np.linalg.norm(np.atleast_1d(np.asarray(xi, dtype=complex))))
    exact = None
    if isinstance(domain, Ball):
        a = np.asarray(domain.center)
        exact = ball_exact_metric((_vec(p, domain.dim) - a) / domain.radius,
                                  _vec(xi, domain.dim) / domain.radius)
    elif domain.exact_metric is not None:
        exact = float(domain.exact_metric(_scalar(p), _scalar(xi)))
    return make_report(g.r, g.r_hat, g.dist_pq, xi_norm, exact)
