import math

import numpy as np
import pytest

from koba.errors import InfeasibleLevelSet, NotInterior
from koba.inscribed import (
    brute_force_inscribed, interpolated_disk, max_disk_radius_through, nearest_max_center,
)
from koba.region2d import Disk, Hull, Intersection, disk_region, polygon, rectangle


def lens(h):
    k = 1 - h
    return Intersection(disks=(Disk(1j * k, 1.0), Disk(-1j * k, 1.0)))


def cone():
    return Hull((Disk(0j, 1.0), Disk(2 + 0j, 0.0)))


class TestSolverExamples:
    def test_unit_disk(self):
        s = max_disk_radius_through(disk_region(), 0.5)
        assert s.r_hat == pytest.approx(1.0, abs=1e-12)
        assert abs(s.q) < 1e-12
        assert s.dist_pq == pytest.approx(0.5, abs=1e-12)

    def test_lens_centre(self):
        s = max_disk_radius_through(lens(0.5), 0)
        assert s.r_hat == pytest.approx(0.5, abs=1e-12)
        assert abs(s.q) < 1e-12

    @pytest.mark.parametrize("p", [0.9, 0.95, 0.88 + 0.2j])
    def test_cone_window(self, p):
        s = max_disk_radius_through(cone(), p)
        assert s.r_hat == pytest.approx(1.0, abs=1e-12)
        assert abs(s.q) < 1e-12

    def test_not_interior(self):
        with pytest.raises(NotInterior):
            max_disk_radius_through(disk_region(), 1.2)

    def test_off_centre_disk_intersection(self):
        # two overlapping disks: the optimum can be strictly inside (r_hat < inradius)
        reg = Intersection(disks=(Disk(0j, 1.0), Disk(1.2 + 0j, 1.0)))
        p = 0.6 + 0.35j
        s = max_disk_radius_through(reg, p)
        ref = brute_force_inscribed(reg, p, 1e-3)
        assert s.r_hat == pytest.approx(ref.r_hat, abs=3e-3)
        assert abs(s.q - ref.q) < 5e-3


class TestNearestMaxCenter:
    def test_disk(self):
        assert abs(nearest_max_center(disk_region(), 0.5, 1.0)) < 1e-12

    def test_lens(self):
        assert abs(nearest_max_center(lens(0.5), 0, 0.5)) < 1e-12

    def test_square(self):
        assert abs(nearest_max_center(rectangle(-1, 1, -1, 1), 0.9, 1.0)) < 1e-12

    def test_infeasible(self):
        with pytest.raises(InfeasibleLevelSet):
            nearest_max_center(disk_region(), 0.5, 1.1)


class TestInterpolatedDisk:
    @pytest.mark.parametrize("t,want", [(0, (0, 1)), (1, (2, 3)), (0.5, (1, 2))])
    def test_examples(self, t, want):
        c, r = interpolated_disk(0, 1, 2, 3, t)
        assert c == pytest.approx(want[0])
        assert r == pytest.approx(want[1])

    def test_containment(self):
        # convex combinations of inscribed disks stay inscribed
        rng = np.random.default_rng(4)
        regions = [lens(0.4), cone(), polygon([0, 2, 2.5 + 1j, 1 + 1.6j, -0.3 + 1j])]
        for reg in regions:
            x0, x1, y0, y1 = reg.bbox
            for _ in range(10):
                p, z = (complex(rng.uniform(x0, x1), rng.uniform(y0, y1)) for _ in range(2))
                if not (reg.contains(p) and reg.contains(z)):
                    continue
                Rp, Rz = float(reg.margin(p)), float(reg.margin(z))
                ang = rng.uniform(0, 2 * math.pi, 256)
                rad = np.sqrt(rng.uniform(0, 1, 256))
                for t in np.linspace(0, 1, 11):
                    c, r = interpolated_disk(p, Rp, z, Rz, t)
                    pts = c + 0.999999 * r * rad * np.exp(1j * ang)
                    assert np.all(reg.margin(pts) > 0)


class TestInvariants:
    def test_random_points(self):
        rng = np.random.default_rng(5)
        P = polygon([0, 3, 3.5 + 1j, 1 + 2j, -0.5 + 1j])
        for _ in range(40):
            x0, x1, y0, y1 = P.bbox
            p = complex(rng.uniform(x0, x1), rng.uniform(y0, y1))
            if not P.contains(p):
                continue
            s = max_disk_radius_through(P, p)
            dp = P.boundary_distance(p)
            assert s.r_hat >= dp - 1e-12
            assert float(P.margin(s.q)) == pytest.approx(s.r_hat, abs=1e-9)
            assert s.dist_pq <= s.r_hat + 1e-9
            if s.r_hat - dp < 1e-12:
                assert s.dist_pq < 1e-9

    def test_chebyshev_centre_is_fixed(self):
        P = polygon([0, 2, 1 + 3j])
        w = P.witness
        s = max_disk_radius_through(P, w)
        # the witness is itself a bisection result, accurate to about 1e-11
        assert s.r_hat == pytest.approx(P.boundary_distance(w), abs=1e-9)
        assert abs(s.q - w) < 1e-6


class TestOracle:
    def test_unit_disk(self):
        b = brute_force_inscribed(disk_region(), 0.5, 1e-3)
        assert b.r_hat == pytest.approx(1.0, abs=2e-3)
        assert abs(b.q) < 2e-3

    def test_lens(self):
        b = brute_force_inscribed(lens(0.5), 0, 1e-3)
        assert b.r_hat == pytest.approx(0.5, abs=2e-3)

    def test_cone(self):
        b = brute_force_inscribed(cone(), 0.95, 1e-3)
        assert b.r_hat == pytest.approx(1.0, abs=2e-3)
        assert abs(b.q) < 2e-3

    def test_not_interior(self):
        with pytest.raises(NotInterior):
            brute_force_inscribed(disk_region(), 2, 1e-2)
