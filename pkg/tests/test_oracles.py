import math

import numpy as np
import pytest

from koba.errors import BranchViolation, DomainError, NotInterior
from koba.oracles import (
    LambdaAlpha, LensMap, disk_distance, halfplane_distance, lambda_alpha_gap_scan,
    lens_exact_metric, poincare_metric,
)


class TestDiskAndHalfPlane:
    @pytest.mark.parametrize("z,xi,want", [(0, 1, 1.0), (0.5, 1, 4 / 3), (0.5j, 2, 8 / 3)])
    def test_poincare(self, z, xi, want):
        assert poincare_metric(z, xi) == pytest.approx(want)

    def test_poincare_outside(self):
        with pytest.raises(NotInterior):
            poincare_metric(1.0, 1)

    @pytest.mark.parametrize("z,w,want", [(0.3j, 0.3j, 0.0), (0, 0.5, 0.5 * math.log(3)), (0.2, -0.2, 0.405465)])
    def test_disk_distance(self, z, w, want):
        assert disk_distance(z, w) == pytest.approx(want, abs=1e-6)

    @pytest.mark.parametrize("z,w,want", [(1j, 1j, 0.0), (1j, 2j, 0.5 * math.log(2)), (1j, 1 + 1j, 0.481212)])
    def test_halfplane_distance(self, z, w, want):
        assert halfplane_distance(z, w) == pytest.approx(want, abs=1e-6)

    def test_cayley_consistency(self):
        # the Cayley map carries the half-plane distance to the disk distance
        rng = np.random.default_rng(0)
        for _ in range(100):
            z, w = (complex(rng.normal(), rng.uniform(0.1, 3)) for _ in range(2))
            cz, cw = (z - 1j) / (z + 1j), (w - 1j) / (w + 1j)
            assert halfplane_distance(z, w) == pytest.approx(disk_distance(cz, cw), rel=1e-9)

    def test_disk_distance_triangle(self):
        rng = np.random.default_rng(1)
        pts = 0.9 * np.sqrt(rng.uniform(size=(200, 3))) * np.exp(2j * math.pi * rng.uniform(size=(200, 3)))
        for a, b, c in pts:
            assert disk_distance(a, c) <= disk_distance(a, b) + disk_distance(b, c) + 1e-12


class TestLens:
    def test_parameters(self):
        L = LensMap(0.5)
        assert L.c == pytest.approx(0.866025, abs=1e-6)
        assert L.half_angle == pytest.approx(math.pi / 3)
        assert L.alpha == pytest.approx(1.5)

    def test_alpha_values(self):
        # values computed independently from the vertex angle of the two circles
        for h, want in [(0.25, 2.1734079041462837), (0.1, 3.4827116386696226)]:
            k = 1 - h
            c = math.sqrt(1 - k * k)
            tangent = 1j * (c + 1j * k)  # perpendicular to the radius at the vertex
            theta = abs(np.angle(tangent))
            half_angle = min(theta, math.pi - theta)  # angle between the tangent line and the axis
            assert LensMap(h).alpha == pytest.approx(want, rel=1e-12)
            assert math.pi / (2 * half_angle) == pytest.approx(want, rel=1e-12)
        assert LensMap(0.999).alpha < 1.03

    def test_bad_h(self):
        with pytest.raises(DomainError):
            LensMap(1.0)

    def test_boundary_goes_to_circle(self):
        L = LensMap(0.3)
        k = 1 - L.h
        th0 = math.atan2(k, L.c)
        th = np.linspace(th0 + 1e-3, math.pi - th0 - 1e-3, 200)
        arc = -1j * k + (1 - 1e-10) * np.exp(1j * th)
        assert np.all(L.gap(arc) < 1e-8)
        assert np.all(L.gap(arc.conj()) < 1e-8)

    def test_vertex_gap_closed_form(self):
        L = LensMap(0.5)
        c, a = L.c, L.alpha
        for t in (0.1, 0.01, 1e-3):
            closed = 2 * (2 * c * t) ** a / ((2 * c - t) ** a + (2 * c * t) ** a)
            assert L.gap(c - t) == pytest.approx(closed, abs=1e-10)
        assert L.gap(c - 0.01) == pytest.approx(0.0020154, abs=1e-7)

    def test_dphi_finite_difference(self):
        rng = np.random.default_rng(2)
        L = LensMap(0.5)
        n = 0
        while n < 1000:
            z = complex(rng.uniform(-0.86, 0.86), rng.uniform(-0.5, 0.5))
            if not L.region.contains(z) or float(L.region.margin(z)) < 1e-2:
                continue
            h = 1e-6
            fd = (L.phi(z + h) - L.phi(z - h)) / (2 * h)
            assert L.dphi(z) == pytest.approx(fd, rel=1e-7)
            exact = lens_exact_metric(L, z, 1.0)
            assert exact == pytest.approx(abs(fd) / (1 - abs(L.phi(z)) ** 2), rel=1e-7)
            n += 1

    def test_metric_examples(self):
        L = LensMap(0.5)
        v = lens_exact_metric(L, 0, 1)
        assert 1.0 <= v <= 2.0
        d01 = 0.0852350470
        assert lens_exact_metric(L, L.c - 0.1, 1) >= 1 / (2 * d01)

    def test_metric_outside(self):
        with pytest.raises(NotInterior):
            lens_exact_metric(LensMap(0.5), 1.0, 1)

    def test_branch_guard(self):
        with pytest.raises(BranchViolation):
            LensMap(0.5).phi(-2.0)


class TestLambdaAlpha:
    def test_boundary_distance_vs_dense(self):
        dom = LambdaAlpha(2.0)
        a = math.pi / 4
        dense = dom.boundary(np.linspace(-a, a, 2_000_001))
        for w in (0.0, 0.5, 0.9 + 0.05j, -0.7j, 0.99):
            z = complex(dom.f(w))
            assert dom.boundary_distance(z) == pytest.approx(np.min(np.abs(dense - z)), abs=1e-6)

    def test_boundary_is_image_of_circle(self):
        dom = LambdaAlpha(1.5)
        th = np.linspace(-3, 3, 50)
        pts = dom.f(np.exp(1j * th))
        psi = np.angle(pts)
        assert np.allclose(np.abs(pts), np.abs(dom.boundary(psi)), atol=1e-12)

    @pytest.mark.parametrize("alpha", [1.5, 2.0])
    def test_gap_bounded(self, alpha):
        top, gaps = lambda_alpha_gap_scan(alpha, 1000, rho_max=1 - 1e-6, seed=3)
        coarse = gaps["gap"][gaps["rho"] <= 1 - 1e-3].max()
        assert math.isfinite(top)
        assert top - coarse < 1.0

    def test_reproducible(self):
        a = lambda_alpha_gap_scan(2.0, 100, rho_max=0.5, seed=4)
        b = lambda_alpha_gap_scan(2.0, 100, rho_max=0.5, seed=4)
        assert a[0] == pytest.approx(b[0], abs=1e-9)
        assert np.all(a[1]["rho"] <= 0.5)
