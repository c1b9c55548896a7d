"""Measure-preserving bilinear basis on [-1, 1]^2.

Four basis functions, one per quadrant: each integrates to 1 over its own
quadrant and to 0 over the other three, so a bilinear density is recovered
from the four quadrant masses by a plain linear combination.
"""

from __future__ import annotations

from dataclasses import dataclass

QUADRANTS = ((1, 1), (1, 2), (2, 1), (2, 2))
# quadrant (i, j): tau in [tau_{i-1}, tau_i], t in [t_{j-1}, t_j]
_BOUNDS = {1: (-1.0, 0.0), 2: (0.0, 1.0)}


@dataclass(frozen=True)
class BilinearPoly:
    """c + c_t t + c_tau tau + c_tt t tau."""

    c: float
    c_t: float
    c_tau: float
    c_ttau: float

    def __call__(self, t: float, tau: float) -> float:
        return self.c + self.c_t * t + self.c_tau * tau + self.c_ttau * t * tau

    def integral(self, t_lo: float, t_hi: float, tau_lo: float, tau_hi: float) -> float:
        """Exact integral over an axis-aligned rectangle."""
        it0 = t_hi - t_lo
        it1 = 0.5 * (t_hi**2 - t_lo**2)
        iu0 = tau_hi - tau_lo
        iu1 = 0.5 * (tau_hi**2 - tau_lo**2)
        return self.c * it0 * iu0 + self.c_t * it1 * iu0 + self.c_tau * it0 * iu1 + self.c_ttau * it1 * iu1

    def quadrant_integral(self, i: int, j: int) -> float:
        tau_lo, tau_hi = _BOUNDS[i]
        t_lo, t_hi = _BOUNDS[j]
        return self.integral(t_lo, t_hi, tau_lo, tau_hi)

    def integrate_over_tau(self) -> tuple[float, float]:
        """Coefficients (constant, t) of the tau-marginal over [-1, 1]."""
        return (2.0 * self.c, 2.0 * self.c_t)


def bilinear_basis() -> dict[tuple[int, int], BilinearPoly]:
    """The four quadrant basis functions, keyed by (i, j)."""
    return {
        (1, 1): BilinearPoly(0.25, -0.5, -0.5, 1.0),
        (1, 2): BilinearPoly(0.25, 0.5, -0.5, -1.0),
        (2, 1): BilinearPoly(0.25, -0.5, 0.5, -1.0),
        (2, 2): BilinearPoly(0.25, 0.5, 0.5, 1.0),
    }


def reconstruct_bilinear(masses) -> BilinearPoly:
    """Bilinear density whose quadrant integrals equal the given masses.

    ``masses`` maps (i, j) -> mass, or is a flat iterable in QUADRANTS order.
    """
    if not hasattr(masses, "get"):
        masses = dict(zip(QUADRANTS, masses))
    basis = bilinear_basis()
    coeffs = [0.0, 0.0, 0.0, 0.0]
    for key in QUADRANTS:
        b = basis[key]
        m = float(masses[key])
        coeffs[0] += m * b.c
        coeffs[1] += m * b.c_t
        coeffs[2] += m * b.c_tau
        coeffs[3] += m * b.c_ttau
    return BilinearPoly(*coeffs)
