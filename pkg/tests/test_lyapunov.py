"""Tests for Lyapunov-exponent estimation and the quadrature reference."""

import math

import pytest

from perronpoly.density import from_masses
from perronpoly.lyapunov import (
    default_quad_points,
    lyapunov_estimate,
    lyapunov_reference,
)
from perronpoly.maps import registry
from perronpoly.transfer import compute_invariant_density

LOG2 = math.log(2.0)


class TestReference:
    def test_g1_is_log_two(self):
        assert lyapunov_reference(registry("g1")) == pytest.approx(LOG2, abs=1e-10)

    def test_tent_is_log_two(self):
        assert lyapunov_reference(registry("tent")) == pytest.approx(LOG2, abs=1e-12)

    def test_g2_matches_registry_attribute(self):
        m = registry("g2")
        if m.reference_lyapunov is not None:
            assert lyapunov_reference(m) == pytest.approx(
                m.reference_lyapunov, abs=1e-10
            )

    def test_g3_is_finite_despite_critical_point(self):
        # g3 has derivative zero inside a branch; the integrable log
        # singularity must still give a finite value
        val = lyapunov_reference(registry("g3"))
        assert math.isfinite(val)
        assert 0.0 < val < 2.0


class TestEstimate:
    def test_tent_uniform_density_gives_log_two(self):
        m = registry("tent")
        pd = from_masses([0.25] * 4, 0)
        res = lyapunov_estimate(m, pd)
        assert res.sigma == pytest.approx(LOG2, abs=1e-13)
        assert res.N == 4 and res.n == 0

    def test_g1_converges_to_log_two(self):
        m = registry("g1")
        pd = compute_invariant_density(m, 33, 2)
        assert lyapunov_estimate(m, pd).sigma == pytest.approx(LOG2, abs=1e-7)

    def test_error_decreases_with_refinement(self):
        m = registry("g1")
        errs = []
        for N in (8, 16, 32):
            pd = compute_invariant_density(m, N, 1)
            errs.append(abs(lyapunov_estimate(m, pd).sigma - LOG2))
        assert errs[0] > errs[1] > errs[2]

    def test_quad_point_floor(self):
        m = registry("g1")
        pd = compute_invariant_density(m, 8, 3)
        with pytest.raises(ValueError):
            lyapunov_estimate(m, pd, m=1)

    def test_result_insensitive_to_extra_quad_points(self):
        m = registry("g1")
        pd = compute_invariant_density(m, 18, 2)
        lo = lyapunov_estimate(m, pd, m=default_quad_points(2)).sigma
        hi = lyapunov_estimate(m, pd, m=24).sigma
        assert lo == pytest.approx(hi, abs=1e-12)

    def test_g3_estimate_finite_near_interior_singularity(self):
        m = registry("g3")
        pd = compute_invariant_density(m, 12, 2)
        sigma = lyapunov_estimate(m, pd).sigma
        assert math.isfinite(sigma)
        assert sigma == pytest.approx(lyapunov_reference(m), abs=1e-6)


def test_default_quad_points_floor_and_growth():
    assert default_quad_points(0) == 6
    assert default_quad_points(3) == 6
    assert default_quad_points(12) == 7
