"""Discretised Frobenius-Perron operator and its invariant mass vector.

The operator is assembled row by row: the mass received by cell I_i is the
integral of the density over the preimage of I_i, and that integral is
exact once the density is the piecewise measure-preserving polynomial --
each preimage piece contributes antiderivative integrals of the basis
functions on its group.  With n = 0 this is exactly Ulam's method.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import PiecewiseDensity, check_grouping, from_masses
from .maps import MapModel
from .polybasis import build_basis

_SNAP = 1e-14  # endpoints this close to a group boundary are snapped to it
RESIDUAL_TOL = 1e-10
COLUMN_SUM_TOL = 1e-10


class SolverError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class AmbiguousFixedPointError(RuntimeError):
    """More than one eigenvalue within tolerance of 1."""


@dataclass(frozen=True)
class TransferMatrix:
    N: int
    n: int
    entries: np.ndarray  # row i = receiving cell; m <- A m

    def column_sum_defect(self) -> float:
        return float(np.max(np.abs(self.entries.sum(axis=0) - 1.0)))


def build_transfer_matrix(map_model: MapModel, N: int, n: int) -> TransferMatrix:
    check_grouping(N, n)
    basis = build_basis(n)
    anti = [p.antiderivative() for p in basis.polys]
    w = (n + 1) / N
    A = np.zeros((N, N))
    knots = np.arange(N + 1) / N
    for i in range(N):
        for seg in map_model.preimage_segments(knots[i], knots[i + 1]):
            _accumulate_segment(A, i, seg.lo, seg.hi, w, n, anti)
    return TransferMatrix(N=N, n=n, entries=A)


def _accumulate_segment(A, i, lo, hi, w, n, anti):
    """Split [lo, hi] at group boundaries and add the basis integrals."""
    g_lo = int(np.floor(lo / w + _SNAP / w))
    g_hi = int(np.ceil(hi / w - _SNAP / w)) - 1
    g_hi = max(g_hi, g_lo)
    num_groups = A.shape[0] // (n + 1)
    for g in range(g_lo, min(g_hi, num_groups - 1) + 1):
        a = max(lo, g * w)
        b = min(hi, (g + 1) * w)
        if b - a <= _SNAP:
            continue
        t_l = max(-1.0, -1.0 + 2.0 * (a - g * w) / w)
        t_r = min(1.0, -1.0 + 2.0 * (b - g * w) / w)
        for k in range(n + 1):
            A[i, g * (n + 1) + k] += anti[k](t_r) - anti[k](t_l)


def solve_invariant_masses(A: TransferMatrix, check_simple: bool = True) -> np.ndarray:
    """Mass vector m with A m = m and sum(m) = 1.

    The fixed point is computed from (A - I) with one row replaced by the
    normalisation row of ones; shifted inverse power iteration is the
    fallback if that bordered system is near-singular.
    """
    defect = A.column_sum_defect()
    if defect > COLUMN_SUM_TOL:
        raise ValueError(f"matrix is not column-stochastic (defect {defect:.3e})")
    M = A.entries
    N = A.N
    B = M - np.eye(N)
    B[-1, :] = 1.0
    rhs = np.zeros(N)
    rhs[-1] = 1.0
    try:
        m = np.linalg.solve(B, rhs)
        if not np.all(np.isfinite(m)):
            raise np.linalg.LinAlgError("non-finite solution")
        # iterative refinement with extended-precision residual; the tiny
        # Lyapunov errors at large N sit close to the double roundoff floor
        Bl = B.astype(np.longdouble)
        rl = rhs.astype(np.longdouble)
        for _ in range(2):
            res = (rl - Bl @ m.astype(np.longdouble)).astype(float)
            m = m + np.linalg.solve(B, res)
    except np.linalg.LinAlgError:
        m = _inverse_power(M)
    m = m / m.sum()
    residual = float(np.max(np.abs(M @ m - m)))
    if residual > RESIDUAL_TOL * np.max(np.abs(m)):
        m = _inverse_power(M)
        m = m / m.sum()
        residual = float(np.max(np.abs(M @ m - m)))
        if residual > RESIDUAL_TOL * np.max(np.abs(m)):
            raise SolverError(
                f"fixed-point solve did not converge (residual {residual:.3e})",
                residual=residual,
            )
    if check_simple:
        _check_simple_unit_eigenvalue(M)
    return m


def _inverse_power(M: np.ndarray, shift: float = 1.0 + 1e-8, max_iter: int = 500):
    N = M.shape[0]
    B = M - shift * np.eye(N)
    v = np.full(N, 1.0 / N)
    prev = None
    for _ in range(max_iter):
        v = np.linalg.solve(B, v)
        v = v / np.linalg.norm(v, np.inf)
        if prev is not None and np.max(np.abs(v - prev)) < 1e-13:
            break
        prev = v.copy()
    else:
        raise SolverError("inverse power iteration did not converge", residual=np.inf)
    if v.sum() < 0:
        v = -v
    return v


def _check_simple_unit_eigenvalue(M: np.ndarray, tol: float = 1e-8) -> None:
    eigs = np.linalg.eigvals(M)
    near_one = np.sum(np.abs(eigs - 1.0) < tol)
    if near_one != 1:
        raise AmbiguousFixedPointError(
            f"{near_one} eigenvalues within {tol} of 1; fixed point is not unique"
        )


def compute_invariant_density(map_model: MapModel, N: int, n: int) -> PiecewiseDensity:
    """Build the operator, solve for the masses, reconstruct the density."""
    A = build_transfer_matrix(map_model, N, n)
    m = solve_invariant_masses(A)
    return from_masses(m, n)


def ulam_matrix(map_model: MapModel, N: int) -> np.ndarray:
    """Classical Ulam matrix: preimage overlap lengths divided by h.

    Independent of the basis machinery; oracle for the n = 0 case.
    """
    knots = np.arange(N + 1) / N
    A = np.zeros((N, N))
    for i in range(N):
        for seg in map_model.preimage_segments(knots[i], knots[i + 1]):
            j_lo = int(np.floor(seg.lo * N))
            for j in range(j_lo, N):
                a = max(seg.lo, knots[j])
                b = min(seg.hi, knots[j + 1])
                if b <= a:
                    if knots[j] > seg.hi:
                        break
                    continue
                A[i, j] += (b - a) * N
    return A
