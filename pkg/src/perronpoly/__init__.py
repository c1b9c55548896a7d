"""Invariant densities and Lyapunov exponents of 1D chaotic interval maps.

Approximates the invariant density of a piecewise-monotone map with a
discontinuous piecewise-polynomial basis whose defining property is that
it preserves the measure on each cell of a uniform partition, then
computes the Lyapunov exponent by integrating log|g'| against the
approximate density.
"""

from .bilinear2d import BilinearPoly, bilinear_basis, reconstruct_bilinear
from .density import (
    Partition,
    PiecewiseDensity,
    from_masses,
    project_density,
)
from .lyapunov import LyapunovResult, lyapunov_estimate, lyapunov_reference
from .maps import Branch, MapModel, Segment, registry
from .polybasis import (
    BasisSet,
    Polynomial,
    basis_integral,
    build_basis,
    build_basis_via_measure,
    reconstruct,
)
from .quadrature import QuadratureRule, gauss_legendre, integrate, integrate_adaptive
from .transfer import (
    TransferMatrix,
    build_transfer_matrix,
    compute_invariant_density,
    solve_invariant_masses,
)

__version__ = "0.1.0"

__all__ = [
    "BasisSet",
    "BilinearPoly",
    "Branch",
    "LyapunovResult",
    "MapModel",
    "Partition",
    "PiecewiseDensity",
    "Polynomial",
    "QuadratureRule",
    "Segment",
    "TransferMatrix",
    "basis_integral",
    "bilinear_basis",
    "build_basis",
    "build_basis_via_measure",
    "build_transfer_matrix",
    "compute_invariant_density",
    "from_masses",
    "gauss_legendre",
    "integrate",
    "integrate_adaptive",
    "lyapunov_estimate",
    "lyapunov_reference",
    "project_density",
    "reconstruct",
    "reconstruct_bilinear",
    "registry",
    "solve_invariant_masses",
]
