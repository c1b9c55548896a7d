"""Tests for the measure-preserving bilinear basis on the square."""

import numpy as np
import pytest

from perronpoly.bilinear2d import (
    QUADRANTS,
    BilinearPoly,
    bilinear_basis,
    reconstruct_bilinear,
)
from perronpoly.polybasis import build_basis


class TestBilinearPoly:
    def test_eval(self):
        b = BilinearPoly(1.0, 2.0, 3.0, 4.0)
        assert b(0.5, -0.5) == pytest.approx(1.0 + 1.0 - 1.5 - 1.0)

    def test_integral_of_constant(self):
        b = BilinearPoly(1.0, 0.0, 0.0, 0.0)
        assert b.integral(-1.0, 1.0, -1.0, 1.0) == pytest.approx(4.0)

    def test_integral_against_sampling(self):
        rng = np.random.default_rng(2)
        b = BilinearPoly(*rng.uniform(-1.0, 1.0, 4))
        # 2-point Gauss per axis is exact for bilinear integrands
        g = 1.0 / np.sqrt(3.0)
        got = sum(b(s * g, u * g) for s in (-1, 1) for u in (-1, 1))
        assert b.integral(-1.0, 1.0, -1.0, 1.0) == pytest.approx(got, abs=1e-14)


def test_quadrant_integrals_form_identity():
    basis = bilinear_basis()
    for row, key_fn in enumerate(QUADRANTS):
        for col, key_q in enumerate(QUADRANTS):
            got = basis[key_fn].quadrant_integral(*key_q)
            assert got == pytest.approx(1.0 if row == col else 0.0, abs=1e-14)


def test_tensor_product_of_linear_basis():
    """Each quadrant function is the product of two 1D degree-1 functions."""
    one_d = build_basis(1).polys
    basis = bilinear_basis()
    for (i, j), b in basis.items():
        pt = one_d[j - 1]  # factor in t
        pu = one_d[i - 1]  # factor in tau
        for t in (-0.7, 0.0, 0.4, 1.0):
            for tau in (-1.0, -0.3, 0.6):
                assert b(t, tau) == pytest.approx(pt(t) * pu(tau), abs=1e-14)


def test_marginal_consistency():
    """Integrating l_{1,1,1} over tau gives the 1D function l_{1,0}."""
    b = bilinear_basis()[(1, 1)]
    c0, c1 = b.integrate_over_tau()
    expected = build_basis(1).polys[0].coeffs
    assert c0 == pytest.approx(expected[0], abs=1e-15)
    assert c1 == pytest.approx(expected[1], abs=1e-15)


class TestReconstruct:
    def test_uniform_masses(self):
        b = reconstruct_bilinear([0.25] * 4)
        for t in (-1.0, 0.0, 1.0):
            for tau in (-1.0, 0.5):
                assert b(t, tau) == pytest.approx(0.25)

    def test_round_trip(self):
        rng = np.random.default_rng(8)
        masses = dict(zip(QUADRANTS, rng.uniform(0.0, 1.0, 4)))
        b = reconstruct_bilinear(masses)
        for key in QUADRANTS:
            assert b.quadrant_integral(*key) == pytest.approx(masses[key], abs=1e-14)

    def test_accepts_mapping_and_sequence(self):
        seq = reconstruct_bilinear([0.1, 0.2, 0.3, 0.4])
        mapping = reconstruct_bilinear(dict(zip(QUADRANTS, [0.1, 0.2, 0.3, 0.4])))
        assert seq == mapping
