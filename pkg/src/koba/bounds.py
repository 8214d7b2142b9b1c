"""Closed-form Kobayashi metric and distance bounds from planar slice geometry.

Inputs are the slice quantities r = delta(0), r_hat and |q - p| computed by
``inscribed``. All metric values are per unit direction unless ``xi_norm`` is
given, in which case they are multiplied by it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .errors import DegenerateGeometry, DomainError

__all__ = [
    "Regime",
    "MetricBoundReport",
    "graham_bounds",
    "improved_metric_upper",
    "phi_zeta",
    "phi_zeta_min",
    "kob_dist_lower",
    "kob_dist_upper_compact",
    "make_report",
]

# relative tolerance for inputs that are equal up to solver precision
_REL = 1e-12


class Regime(str, enum.Enum):
    CASE2 = "Case2"
    CASE3 = "Case3"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class MetricBoundReport:
    r: float
    r_hat: float
    dist_pq: float
    beta: float
    gamma: float
    regime: Regime
    graham_lower: float
    graham_upper: float
    improved_upper: float
    xi_norm: float = 1.0
    exact: Optional[float] = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["regime"] = self.regime.value
        return d


def graham_bounds(r: float, xi_norm: float = 1.0) -> tuple[float, float]:
    """Return ``(|xi| / 2r, |xi| / r)``."""
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    return xi_norm / (2 * r), xi_norm / r


def _split(r, r_hat, dist_pq):
    if not r > 0:
        raise DomainError(f"r must be positive, got {r}")
    if r_hat < r * (1 - _REL):
        raise DomainError(f"r_hat={r_hat} < r={r}")
    if dist_pq < 0 or dist_pq > r_hat * (1 + _REL):
        raise DomainError(f"dist_pq={dist_pq} outside [0, r_hat]")
    beta = max(r_hat - r, 0.0)
    d = min(dist_pq, r_hat)
    # gamma < 0 happens when |q - p| < beta; that routes to Case2
    return beta, d, (d - beta) * (d + beta)


def _regime(r, beta, gamma):
    # ties, gamma <= 0 and beta == 0 (q = p up to tolerance) go to Case2
    if beta <= 0 or gamma <= 0 or (2 * r + beta) * gamma <= beta * r * r:
        return Regime.CASE2
    return Regime.CASE3


def improved_metric_upper(r: float, r_hat: float, dist_pq: float,
                          xi_norm: float = 1.0) -> tuple[float, Regime]:
    """Improved upper bound for the metric and the regime that produced it."""
    beta, d, gamma = _split(r, r_hat, dist_pq)
    if beta <= _REL * r_hat and d > 1e-9 * r_hat:
        raise DegenerateGeometry(f"r_hat == r but |q - p| = {d} > 0")
    regime = _regime(r, beta, gamma)
    if regime is Regime.CASE2:
        den = (r_hat - d) * (r_hat + d)
        if den <= 0:
            raise DegenerateGeometry("r_hat^2 - |q - p|^2 vanishes")
        return xi_norm * r_hat / den, regime
    # beta^2 / (d (d - sqrt(gamma))) / 2r, rationalised
    return xi_norm * (1 + math.sqrt(gamma) / d) / (2 * r), regime


def make_report(r: float, r_hat: float, dist_pq: float, xi_norm: float = 1.0,
                exact: Optional[float] = None) -> MetricBoundReport:
    beta, d, gamma = _split(r, r_hat, dist_pq)
    lo, hi = graham_bounds(r, xi_norm)
    upper, regime = improved_metric_upper(r, r_hat, dist_pq, xi_norm)
    return MetricBoundReport(r, r_hat, dist_pq, beta, gamma, regime, lo, hi, upper, xi_norm, exact)


def phi_zeta(t, delta_p: float, delta_zeta: float, alpha: float):
    """r_t / (r_t^2 - t^2 alpha^2) with r_t = (1-t) delta_p + t delta_zeta. Accepts arrays in ``t``."""
    t = np.asarray(t, dtype=float)
    rt = (1 - t) * delta_p + t * delta_zeta
    den = rt * rt - (t * alpha) ** 2
    if np.any(den <= 0):
        raise DomainError("phi_zeta denominator is not positive")
    out = rt / den
    return float(out) if out.ndim == 0 else out


def phi_zeta_min(delta_p: float, delta_zeta: float, alpha: float) -> tuple[float, float]:
    """Minimiser and minimum of :func:`phi_zeta` on ``[0, 1]``. Returns ``(t_star, value)``."""
    if not (delta_zeta > delta_p > 0):
        raise DomainError("need delta_zeta > delta_p > 0")
    if not (0 <= alpha <= delta_zeta):
        raise DomainError("need 0 <= alpha <= delta_zeta")
    beta = delta_zeta - delta_p
    disc = alpha * alpha - beta * beta
    if disc * (2 * delta_p + beta) <= beta * delta_p * delta_p:
        den = delta_zeta * delta_zeta - alpha * alpha
        if den <= 0:
            raise DomainError("alpha == delta_zeta leaves phi_zeta unbounded at t = 1")
        return 1.0, delta_zeta / den
    s = math.sqrt(disc)
    t_star = delta_p * beta / (s * (alpha + s))
    return t_star, (alpha + s) / (2 * delta_p * alpha)


def kob_dist_lower(delta_z: float, delta_w: float) -> float:
    """Supporting-half-plane lower bound ``0.5 log(delta_w / delta_z)``."""
    if not (delta_z > 0 and delta_w > 0):
        raise DomainError("boundary distances must be positive")
    return 0.5 * math.log(delta_w / delta_z)


def kob_dist_upper_compact(z, w, dist_K: float) -> float:
    """Upper bound ``|z - w| / dist(K, complement)`` for z, w in a convex compact K."""
    if not dist_K > 0:
        raise DomainError("dist_K must be positive")
    diff = np.atleast_1d(np.asarray(z, dtype=complex) - np.asarray(w, dtype=complex))
    return float(np.linalg.norm(diff)) / dist_K
