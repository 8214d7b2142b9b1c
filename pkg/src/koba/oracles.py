"""Exact metrics and distances on model domains, used as ground truth.

Covers the unit disk, the upper half-plane, the lens
``D(i(1-h), 1) & D(-i(1-h), 1)`` with its explicit Riemann map, and the
domains ``Lambda_alpha = {(w + 1)**(1/alpha) : |w| < 1}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import BranchViolation, DomainError, NotInterior
from .region2d import Disk, Intersection

__all__ = [
    "poincare_metric",
    "disk_distance",
    "halfplane_distance",
    "LensMap",
    "lens_exact_metric",
    "LambdaAlpha",
    "lambda_alpha_gap_scan",
]


def poincare_metric(z: complex, xi: complex) -> float:
    a = abs(z)
    if a >= 1:
        raise NotInterior(f"|z| = {a} >= 1")
    return abs(xi) / ((1 - a) * (1 + a))


def disk_distance(z: complex, w: complex) -> float:
    if abs(z) >= 1 or abs(w) >= 1:
        raise NotInterior("points must lie in the unit disk")
    rho = abs((z - w) / (1 - z.conjugate() * w))
    return math.atanh(min(rho, 1.0))


def halfplane_distance(z: complex, w: complex) -> float:
    if z.imag <= 0 or w.imag <= 0:
        raise NotInterior("points must lie in the upper half-plane")
    rho = abs((z - w) / (z - w.conjugate()))
    return math.atanh(min(rho, 1.0))


@dataclass(frozen=True)
class LensMap:
    """Riemann map of the lens onto the unit disk, sending the vertex ``c`` to 1.

    With ``c = sqrt(2h - h^2)`` and interior angle ``2A`` at the vertices,
    ``w = (z + c) / (2c (c - z))`` maps the lens onto a sector of opening ``2A``
    around the positive axis, ``W = w**alpha`` with ``alpha = pi / 2A`` opens it
    to the right half-plane, and ``(W - 1) / (W + 1)`` lands in the disk.
    """

    h: float

    def __post_init__(self):
        if not (0 < self.h < 1):
            raise DomainError(f"h must lie in (0, 1), got {self.h}")

    @property
    def c(self) -> float:
        return math.sqrt(2 * self.h - self.h * self.h)

    @property
    def half_angle(self) -> float:
        return math.atan(self.c / (1 - self.h))

    @property
    def alpha(self) -> float:
        return math.pi / (2 * self.half_angle)

    @cached_property
    def region(self) -> Intersection:
        k = 1 - self.h
        return Intersection(disks=(Disk(1j * k, 1.0), Disk(-1j * k, 1.0)))

    def _wW(self, z):
        z = np.asarray(z, dtype=complex)
        c = self.c
        w = (z + c) / (2 * c * (c - z))
        if np.any(w.real <= 0):
            raise BranchViolation("point maps outside the right half-plane")
        return z, w, np.power(w, self.alpha)

    def phi(self, z):
        _, _, W = self._wW(z)
        out = (W - 1) / (W + 1)
        return complex(out) if out.ndim == 0 else out

    def dphi(self, z):
        z, w, W = self._wW(z)
        out = 2 * self.alpha * W / ((W + 1) ** 2 * w * (self.c - z) ** 2)
        return complex(out) if out.ndim == 0 else out

    def gap(self, z):
        """``1 - |phi(z)|`` without cancellation near the circle."""
        _, _, W = self._wW(z)
        one_minus_sq = 4 * W.real / np.abs(W + 1) ** 2
        out = one_minus_sq / (1 + np.abs((W - 1) / (W + 1)))
        return float(out) if out.ndim == 0 else out


def lens_exact_metric(lens: LensMap, z: complex, xi: complex) -> float:
    """Kobayashi metric of the lens, pulled back from the disk through ``phi``."""
    z = complex(z)
    if not lens.region.contains(z):
        raise NotInterior(f"{z} is not inside the lens")
    _, w, W = lens._wW(z)
    w, W = complex(w), complex(W)
    return lens.alpha * abs(xi) * abs(W) / (2 * abs(w) * abs(lens.c - z) ** 2 * W.real)


@dataclass(frozen=True)
class LambdaAlpha:
    """The image of the unit disk under ``f(w) = (w + 1)**(1/alpha)``, alpha >= 1.

    In polar form the boundary is ``R(psi) = (2 cos(alpha psi))**(1/alpha)``
    for ``|psi| <= pi / (2 alpha)``, with a corner of opening ``pi/alpha`` at 0.
    """

    alpha: float

    def __post_init__(self):
        if not self.alpha >= 1:
            raise DomainError("alpha must be >= 1")

    def f(self, w):
        return np.power(np.asarray(w, dtype=complex) + 1, 1 / self.alpha)

    def boundary(self, psi):
        psi = np.asarray(psi, dtype=float)
        rad = np.power(np.maximum(2 * np.cos(self.alpha * psi), 0.0), 1 / self.alpha)
        return rad * np.exp(1j * psi)

    def boundary_distance(self, z: complex, n_samples: int = 4096) -> float:
        a = math.pi / (2 * self.alpha)
        psi = np.linspace(-a, a, n_samples)
        d2 = np.abs(self.boundary(psi) - z) ** 2
        k = int(np.argmin(d2))
        lo, hi = psi[max(k - 1, 0)], psi[min(k + 1, n_samples - 1)]
        res = minimize_scalar(lambda s: abs(complex(self.boundary(s)) - z) ** 2,
                              bounds=(lo, hi), method="bounded", options={"xatol": 1e-15})
        return math.sqrt(min(float(res.fun), float(d2[k])))


_GAP_DTYPE = np.dtype([("rho", float), ("theta", float), ("gap", float)])


def lambda_alpha_gap_scan(alpha: float, n_samples: int, rho_max: float = 1 - 1e-6,
                          seed: int = 0) -> tuple[float, np.ndarray]:
    """Sample ``k(f(0), z) - (alpha/2) log(1/delta(z))`` over ``Lambda_alpha``.

    Points are ``f(rho e^{i theta})`` with ``1 - rho`` log-uniform on
    ``[1 - rho_max, 1]`` and ``theta`` uniform. The distance from ``f(0) = 1`` is
    exact, ``atanh(rho)``. Returns the maximum gap and a record array with
    fields ``rho``, ``theta``, ``gap``.
    """
    if not (0 < rho_max < 1):
        raise DomainError("rho_max must lie in (0, 1)")
    dom = LambdaAlpha(alpha)
    rng = np.random.default_rng(seed)
    rho = 1 - np.power(1 - rho_max, rng.uniform(0, 1, n_samples))
    theta = rng.uniform(-math.pi, math.pi, n_samples)
    out = np.empty(n_samples, dtype=_GAP_DTYPE)
    out["rho"], out["theta"] = rho, theta
    for i in range(n_samples):
        z = complex(dom.f(rho[i] * np.exp(1j * theta[i])))
        delta = dom.boundary_distance(z)
        out["gap"][i] = math.atanh(rho[i]) - 0.5 * alpha * math.log(1 / delta)
    return float(out["gap"].max()), out
