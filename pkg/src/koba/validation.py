"""Acceptance checks shared by ``koba validate`` and the test suite.

Each check returns a :class:`CriterionResult`; none of them raises on failure.
All randomness is seeded.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .bounds import Regime, phi_zeta, phi_zeta_min, kob_dist_lower, kob_dist_upper_compact
from .domains_nd import Ball, Planar, ball_exact_metric, bound_report_nd, unitary_reduce
from .inscribed import brute_force_inscribed, max_disk_radius_through
from .oracles import disk_distance, lambda_alpha_gap_scan, lens_exact_metric
from .region2d import Disk, HalfPlane, Intersection, disk_region, polygon
from .schwarz_lab import (
    bernal_gonzalez_bound, eroded_image_distance, fit_exponent, lens_params,
    regime_scan_example23, vertex_gap,
)

__all__ = ["CriterionResult", "CRITERIA", "run_all"]


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {self.detail}"


def _unit_ball_points(rng, n, dim, rmax=0.99):
    g = rng.normal(size=(n, dim)) + 1j * rng.normal(size=(n, dim))
    g /= np.linalg.norm(g, axis=1)[:, None]
    return g * (rmax * rng.uniform(0, 1, n) ** (1 / (2 * dim)))[:, None]


def _directions(rng, n, dim):
    v = rng.normal(size=(n, dim)) + 1j * rng.normal(size=(n, dim))
    return v / np.linalg.norm(v, axis=1)[:, None]


def _interior_points(rng, region, n, min_margin=1e-3):
    x0, x1, y0, y1 = region.bbox
    out = []
    while len(out) < n:
        z = complex(rng.uniform(x0, x1), rng.uniform(y0, y1))
        if region.margin(z) > min_margin:
            out.append(z)
    return out


def check_disk_exactness() -> CriterionResult:
    dom = Planar(disk_region())
    worst, strict = 0.0, True
    for p in np.arange(1, 10) / 10:
        rep = bound_report_nd(dom, p, 1.0)
        worst = max(worst, abs(rep.improved_upper - 1 / (1 - p * p)))
        strict &= rep.graham_upper > rep.improved_upper
    ok = worst <= 1e-9 and strict
    return CriterionResult(1, "disk exactness", ok, f"max error {worst:.2e}, graham strictly larger: {strict}")


def check_ball_exactness(n: int = 1000) -> CriterionResult:
    rng = np.random.default_rng(2)
    ball = Ball((0, 0), 1.0)
    xs, xis = _unit_ball_points(rng, n, 2), _directions(rng, n, 2)
    worst = worst_gamma = 0.0
    case2 = True
    for p, xi in zip(xs, xis):
        x, v = unitary_reduce(p, xi)
        rep = bound_report_nd(ball, x, v)
        worst = max(worst, abs(rep.improved_upper - ball_exact_metric(x, v)))
        worst_gamma = max(worst_gamma, abs(rep.gamma))
        case2 &= rep.regime is Regime.CASE2
    ok = worst <= 1e-8 and worst_gamma <= 1e-10 and case2
    return CriterionResult(2, "ball exactness", ok,
                           f"max error {worst:.2e}, max |gamma| {worst_gamma:.2e}, all Case2: {case2}")


def check_sandwich(n: int = 200) -> CriterionResult:
    rng = np.random.default_rng(3)
    slack = 1e-6
    lens = lens_params(0.5)
    cases = []
    disk = Planar(disk_region())
    for z in _interior_points(rng, disk.region, n):
        cases.append((disk, z, complex(np.exp(1j * rng.uniform(0, 2 * math.pi)))))
    ball = Ball((0, 0), 1.0)
    for p, xi in zip(_unit_ball_points(rng, n, 2), _directions(rng, n, 2)):
        cases.append((ball, p, xi))
    lens_dom = Planar(lens.region, functools.partial(lens_exact_metric, lens))
    for z in _interior_points(rng, lens.region, n):
        cases.append((lens_dom, z, complex(np.exp(1j * rng.uniform(0, 2 * math.pi)))))
    bad = nonstrict = 0
    for dom, p, xi in cases:
        rep = bound_report_nd(dom, p, xi)
        chain = (rep.graham_lower <= rep.exact + slack and rep.exact <= rep.improved_upper + slack
                 and rep.improved_upper <= rep.graham_upper + slack)
        bad += not chain
        if rep.dist_pq > 1e-6 and not rep.improved_upper < rep.graham_upper:
            nonstrict += 1
    ok = bad == 0 and nonstrict == 0
    return CriterionResult(3, "sandwich property", ok,
                           f"{len(cases)} samples, {bad} chain violations, {nonstrict} non-strict")


def check_lens_exponent() -> CriterionResult:
    ts = np.logspace(-4, -2, 20)
    parts, ok = [], True
    for h in (0.5, 0.25, 0.1):
        lens = lens_params(h)
        target = math.pi / (2 * math.atan(math.sqrt(2 * h - h * h) / (1 - h)))
        rows = [(t, vertex_gap(lens, t)[1]) for t in ts]
        alpha_hat, _ = fit_exponent(rows)
        close = abs(alpha_hat - target) <= 0.02 * target
        ratios = []
        for t in ts[::-1]:
            d = vertex_gap(lens, t)[0]
            ratios.append(eroded_image_distance(lens, t) / d ** (target - 0.2))
        # ratios run from the largest t to the smallest; they must shrink towards 0
        shrinks = all(b < a for a, b in zip(ratios, ratios[1:])) and ratios[-1] < 0.5 * ratios[0]
        ok &= close and shrinks
        parts.append(f"h={h}: alpha_hat={alpha_hat:.4f} vs {target:.4f}, ratio drop {ratios[-1] / ratios[0]:.3f}")
    return CriterionResult(4, "lens exponent", ok, "; ".join(parts))


def check_bound_comparison() -> CriterionResult:
    lens = lens_params(0.5)
    d, _ = vertex_gap(lens, 0.1)
    bg = bernal_gonzalez_bound(1.0, lens.c, 0.5, d)
    measured = eroded_image_distance(lens, 0.1)
    ok = abs(bg - 1.49e-9) < 0.01e-9 and measured > 1e-3
    return CriterionResult(5, "bound comparison", ok, f"comparator {bg:.4e}, measured {measured:.4e}")


def check_regime3(n_grid: int = 50) -> CriterionResult:
    scan = regime_scan_example23(n_grid)
    all3 = bool(scan) and all(r is Regime.CASE3 for r in scan.values())
    from .schwarz_lab import ice_cream_cone  # local: only needed here
    rep = bound_report_nd(Planar(ice_cream_cone()), 0.9, 1.0)
    v_ok = rep.regime is Regime.CASE3 and abs(rep.improved_upper - 1.696387) <= 1e-6
    ok = all3 and v_ok and rep.improved_upper < 1 / rep.r
    return CriterionResult(6, "regime-3 region", ok,
                           f"{len(scan)} grid points all Case3: {all3}; z=0.9 bound {rep.improved_upper:.7f} < {1 / rep.r:.6f}")


def check_phi_zeta(n: int = 1000) -> CriterionResult:
    rng = np.random.default_rng(7)
    t = np.linspace(0.0, 1.0, 1_000_001)
    worst_v = worst_t = 0.0
    below = True
    for _ in range(n):
        dp = rng.uniform(0.1, 1.0)
        dz = dp + rng.uniform(0.05, 1.0)
        a = rng.uniform(0, 0.99) * dz
        t_star, val = phi_zeta_min(dp, dz, a)
        phi = phi_zeta(t, dp, dz, a)
        k = int(np.argmin(phi))
        worst_v = max(worst_v, abs(val - phi[k]))
        worst_t = max(worst_t, abs(t_star - t[k]))
        below &= val < 1 / dp
    ok = worst_v <= 1e-7 and worst_t <= 1e-4 and below
    return CriterionResult(7, "phi_zeta closed form", ok,
                           f"max value error {worst_v:.2e}, max t error {worst_t:.2e}, all below 1/delta_p: {below}")


def random_test_regions(seed: int = 8, n: int = 50):
    """Half random convex polygons, half intersections of disks (sometimes with a half-plane)."""
    rng = np.random.default_rng(seed)
    regions = []
    for i in range(n):
        if i % 2 == 0:
            k = rng.integers(4, 9)
            ang = np.sort(rng.uniform(0, 2 * math.pi, k))
            rad = rng.uniform(0.3, 0.6, k)
            regions.append(polygon(rad * np.exp(1j * ang)))
        else:
            disks = tuple(Disk(complex(*rng.uniform(-0.3, 0.3, 2)), rng.uniform(0.45, 0.7))
                          for _ in range(rng.integers(2, 4)))
            hps = ()
            if rng.uniform() < 0.5:
                hps = (HalfPlane(complex(np.exp(1j * rng.uniform(0, 2 * math.pi))), rng.uniform(0.0, 0.3)),)
            try:
                regions.append(Intersection(hps, disks))
            except ValueError:
                regions.append(Intersection((), disks[:1]))
    return rng, regions


def check_inscribed_vs_grid(n: int = 50, step: float = 1e-3) -> CriterionResult:
    rng, regions = random_test_regions(n=n)
    worst_r = worst_q = 0.0
    for region in regions:
        (p,) = _interior_points(rng, region, 1, min_margin=0.0)
        sol = max_disk_radius_through(region, p)
        ref = brute_force_inscribed(region, p, step)
        worst_r = max(worst_r, abs(sol.r_hat - ref.r_hat))
        worst_q = max(worst_q, abs(sol.q - ref.q))
    ok = worst_r <= 3 * step and worst_q <= 5 * step
    return CriterionResult(8, "inscribed solver vs grid", ok,
                           f"{len(regions)} regions, max r_hat diff {worst_r:.2e}, max q diff {worst_q:.2e}")


def check_distance_bounds(n: int = 1000) -> CriterionResult:
    rng = np.random.default_rng(9)
    zs = _unit_ball_points(rng, n, 1, rmax=0.999)[:, 0]
    ws = _unit_ball_points(rng, n, 1, rmax=0.999)[:, 0]
    lower_bad = upper_bad = 0
    for z, w in zip(zs, ws):
        k = disk_distance(z, w)
        if kob_dist_lower(1 - abs(z), 1 - abs(w)) > k + 1e-12:
            lower_bad += 1
        # two compact disks containing z and w: centred at the origin, and at the midpoint
        m, rad = (z + w) / 2, abs(z - w) / 2
        for dist_k in (1 - max(abs(z), abs(w)), 1 - abs(m) - rad):
            if dist_k > 0 and k > kob_dist_upper_compact(z, w, dist_k) + 1e-12:
                upper_bad += 1
    ok = lower_bad == 0 and upper_bad == 0
    return CriterionResult(9, "distance bounds", ok, f"{n} pairs, {lower_bad} lower and {upper_bad} upper violations")


def check_lambda_alpha(n: int = 1000) -> CriterionResult:
    ok, parts = True, []
    for alpha in (1.5, 2.0):
        top, gaps = lambda_alpha_gap_scan(alpha, n, rho_max=1 - 1e-6, seed=10)
        coarse = float(gaps["gap"][gaps["rho"] <= 1 - 1e-3].max())
        growth = top - coarse
        ok &= growth <= 1.0
        parts.append(f"alpha={alpha}: growth {growth:.3f}")
    return CriterionResult(10, "Lambda_alpha boundedness", ok, "; ".join(parts))


CRITERIA: tuple[Callable[[], CriterionResult], ...] = (
    check_disk_exactness,
    check_ball_exactness,
    check_sandwich,
    check_lens_exponent,
    check_bound_comparison,
    check_regime3,
    check_phi_zeta,
    check_inscribed_vs_grid,
    check_distance_bounds,
    check_lambda_alpha,
)


def run_all() -> list[CriterionResult]:
    return [check() for check in CRITERIA]
