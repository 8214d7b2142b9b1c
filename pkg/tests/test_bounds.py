import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from koba.bounds import (
    Regime, graham_bounds, improved_metric_upper, kob_dist_lower, kob_dist_upper_compact,
    make_report, phi_zeta, phi_zeta_min,
)
from koba.errors import DegenerateGeometry, DomainError
from koba.oracles import disk_distance


class TestGraham:
    @pytest.mark.parametrize("r,xi,want", [(0.5, 1, (1.0, 2.0)), (1, 2, (1.0, 2.0)),
                                           (0.55, 1, (0.909091, 1.818182))])
    def test_examples(self, r, xi, want):
        assert graham_bounds(r, xi) == pytest.approx(want, abs=1e-6)

    def test_bad_r(self):
        with pytest.raises(DomainError):
            graham_bounds(0.0)


class TestImprovedUpper:
    def test_disk(self):
        v, reg = improved_metric_upper(0.5, 1.0, 0.5)
        assert reg is Regime.CASE2
        assert v == pytest.approx(4 / 3, abs=1e-12)

    def test_ball_slice(self):
        v, reg = improved_metric_upper(math.sqrt(0.75) - 0.5, math.sqrt(0.75), 0.5)
        assert reg is Regime.CASE2
        assert v == pytest.approx(math.sqrt(3), abs=1e-12)

    def test_cone(self):
        v, reg = improved_metric_upper(0.55, 1.0, 0.9)
        assert reg is Regime.CASE3
        assert v == pytest.approx(1.696387, abs=1e-6)

    def test_cone_against_phi_grid(self):
        # independent route: the Case3 value is the minimum of phi_zeta over t
        t = np.linspace(0, 1, 1_000_001)
        assert improved_metric_upper(0.55, 1.0, 0.9)[0] == pytest.approx(phi_zeta(t, 0.55, 1.0, 0.9).min(), abs=1e-9)

    def test_homogeneous(self):
        assert improved_metric_upper(0.55, 1.0, 0.9, 3.0)[0] == pytest.approx(3 * improved_metric_upper(0.55, 1.0, 0.9)[0])

    def test_q_equals_p(self):
        v, reg = improved_metric_upper(0.5, 0.5, 0.0)
        assert reg is Regime.CASE2 and v == pytest.approx(2.0)

    def test_beta_zero_with_offset(self):
        with pytest.raises(DegenerateGeometry):
            improved_metric_upper(0.5, 0.5, 0.2)

    def test_negative_gamma_routes_to_case2(self):
        rep = make_report(0.5, 1.0, 0.2)
        assert rep.gamma < 0
        assert rep.regime is Regime.CASE2
        assert rep.improved_upper == pytest.approx(1 / (1 - 0.04))

    def test_tie_goes_to_case2(self):
        # (2r + beta) gamma == beta r^2 with r = 1, beta = 1: gamma = 1/3
        r, beta = 1.0, 1.0
        d = math.sqrt(beta ** 2 + beta * r * r / (2 * r + beta))
        assert improved_metric_upper(r, r + beta, d)[1] is Regime.CASE2

    @settings(max_examples=300, deadline=None)
    @given(st.floats(0.05, 2), st.floats(0, 2), st.floats(0, 1))
    def test_sandwich_and_strictness(self, r, beta, frac):
        r_hat = r + beta
        d = beta + frac * (r_hat - beta)  # d in [beta, r_hat], the geometrically reachable range
        assume(beta > 1e-9 or d < 1e-9)
        assume(r_hat - d > 1e-9)
        lo, hi = graham_bounds(r)
        rep = make_report(r, r_hat, d)
        v = rep.improved_upper
        assert lo - 1e-12 <= v <= hi + 1e-12
        # hi - v is about hi * beta^2 / (4 d^2); below that it rounds to hi
        if d > 1e-6 and beta * beta > 1e-12 * d * d:
            assert v < hi
        if rep.regime is Regime.CASE3:
            assert rep.gamma > 0

    def test_case3_two_forms_agree(self):
        rng = np.random.default_rng(11)
        n = 0
        while n < 10_000:
            r = rng.uniform(0.1, 1)
            beta = rng.uniform(0.05, 1) * r
            r_hat = r + beta
            d = rng.uniform(beta, r_hat)
            v, reg = improved_metric_upper(r, r_hat, d)
            if reg is not Regime.CASE3:
                continue
            g = d * d - beta * beta
            literal = beta ** 2 / (d * (d - math.sqrt(g))) / (2 * r)
            assert v == pytest.approx(literal, rel=1e-12)
            n += 1


class TestPhiZeta:
    def test_t0(self):
        assert phi_zeta(0, 0.7, 1.3, 0.4) == pytest.approx(1 / 0.7)

    def test_midpoint(self):
        assert phi_zeta(0.5, 0.5, 1.0, 0.5) == pytest.approx(1.5)

    def test_case3_point(self):
        assert phi_zeta(0.189078, 0.55, 1.0, 0.9) == pytest.approx(1.696387, abs=1e-6)

    def test_bad_denominator(self):
        with pytest.raises(DomainError):
            phi_zeta(1.0, 0.5, 1.0, 1.0)

    @pytest.mark.parametrize("args,want", [((0.5, 1, 0.5), (1, 1 / 0.75)), ((0.55, 1, 0.9), (0.189078, 1.696387)),
                                           ((0.5, 1, 0.3), (1, 1 / 0.91))])
    def test_min_examples(self, args, want):
        t, v = phi_zeta_min(*args)
        assert t == pytest.approx(want[0], abs=1e-6)
        assert v == pytest.approx(want[1], abs=1e-6)

    def test_min_stable_matches_literal(self):
        # the minimiser is coded in rationalised form; compare with the textbook form
        rng = np.random.default_rng(12)
        for _ in range(2000):
            dp, beta = rng.uniform(0.1, 1), rng.uniform(0.05, 1)
            a = rng.uniform(0, 0.99) * (dp + beta)
            t, v = phi_zeta_min(dp, dp + beta, a)
            disc = a * a - beta * beta
            if t == 1.0 and disc * (2 * dp + beta) <= beta * dp * dp:
                continue
            lit_t = dp * (-disc + a * math.sqrt(disc)) / (disc * beta)
            lit_v = beta ** 2 / (a * (a - math.sqrt(disc))) / (2 * dp)
            assert t == pytest.approx(lit_t, rel=1e-9)
            assert v == pytest.approx(lit_v, rel=1e-9)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(0.1, 1), st.floats(0.05, 1), st.floats(0, 0.99))
    def test_min_below_graham(self, dp, beta, frac):
        t = np.linspace(0, 1, 20_001)
        dz = dp + beta
        a = frac * dz
        ts, v = phi_zeta_min(dp, dz, a)
        assert v < 1 / dp
        assert v <= phi_zeta(t, dp, dz, a).min() + 1e-12
        assert v == pytest.approx(phi_zeta(ts, dp, dz, a), rel=1e-12)

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            phi_zeta_min(1.0, 0.5, 0.1)
        with pytest.raises(DomainError):
            phi_zeta_min(0.5, 1.0, 1.5)


class TestDistanceBounds:
    def test_lower_examples(self):
        assert kob_dist_lower(0.3, 0.3) == 0
        assert kob_dist_lower(0.1, 0.5) == pytest.approx(0.804719, abs=1e-6)
        assert kob_dist_lower(0.5, 0.1) == pytest.approx(-0.804719, abs=1e-6)

    def test_upper_examples(self):
        assert kob_dist_upper_compact(0.3, 0.3, 0.5) == 0
        assert kob_dist_upper_compact(0, 0.5, 0.5) == pytest.approx(1.0)
        assert kob_dist_upper_compact(0.2, -0.2, 0.5) == pytest.approx(0.8)
        assert disk_distance(0.2, -0.2) < 0.8

    def test_upper_vectors(self):
        assert kob_dist_upper_compact([0, 0], [0.3, 0.4j], 0.5) == pytest.approx(1.0)

    @settings(max_examples=200, deadline=None)
    @given(st.complex_numbers(max_magnitude=0.999), st.complex_numbers(max_magnitude=0.999))
    def test_lower_below_disk_distance(self, z, w):
        assume(abs(z) < 0.999 and abs(w) < 0.999)
        assert kob_dist_lower(1 - abs(z), 1 - abs(w)) <= disk_distance(z, w) + 1e-12
