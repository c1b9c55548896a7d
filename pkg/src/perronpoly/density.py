"""Discontinuous piecewise-polynomial densities on a uniform partition.

The N cells of [0, 1] are grouped into blocks of n+1; each group carries
one degree-n polynomial stored in the local coordinate
t = -1 + 2 (x - x_lo) / ((n+1) h), where the polynomial value equals the
density value d(x(t)).  A cell mass is therefore (group width)/2 times the
polynomial's integral over the corresponding t sub-cell.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .polybasis import BasisSet, Polynomial, build_basis, reconstruct
from .quadrature import integrate_adaptive

PROJECT_TOL = 1e-13  # per-cell mass quadrature
L1_TOL = 1e-12  # per-cell error quadrature


@dataclass(frozen=True)
class Partition:
    N: int

    @property
    def h(self) -> float:
        return 1.0 / self.N

    def knot(self, i: int) -> float:
        return i / self.N

    def knots(self) -> np.ndarray:
        return np.arange(self.N + 1) / self.N


def check_grouping(N: int, n: int) -> None:
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    if N < n + 1 or N % (n + 1) != 0:
        raise ValueError(f"cell count {N} must be a positive multiple of n+1 = {n + 1}")


@dataclass(frozen=True)
class PiecewiseDensity:
    partition: Partition
    n: int
    group_polys: tuple[Polynomial, ...]

    @property
    def num_groups(self) -> int:
        return len(self.group_polys)

    @property
    def group_width(self) -> float:
        return (self.n + 1) / self.partition.N

    def group_bounds(self, g: int) -> tuple[float, float]:
        w = self.group_width
        return g * w, (g + 1) * w

    def _locate(self, x: float) -> int:
        if not (0.0 <= x <= 1.0):
            raise ValueError(f"point {x} outside [0, 1]")
        w = self.group_width
        # left group owns a shared boundary, except x = 0
        g = int(np.ceil(x / w)) - 1
        g = min(max(g, 0), self.num_groups - 1)
        return g

    def __call__(self, x: float) -> float:
        g = self._locate(x)
        lo, _ = self.group_bounds(g)
        t = -1.0 + 2.0 * (x - lo) / self.group_width
        return self.group_polys[g](t)

    def total_mass(self) -> float:
        w = self.group_width
        return 0.5 * w * sum(p.definite_integral(-1.0, 1.0) for p in self.group_polys)

    def cell_masses(self) -> np.ndarray:
        """Exact per-cell masses via groupwise antiderivatives."""
        n, N = self.n, self.partition.N
        w = self.group_width
        t = -1.0 + 2.0 * np.arange(n + 2) / (n + 1)
        out = np.empty(N)
        for g, p in enumerate(self.group_polys):
            for j in range(n + 1):
                out[g * (n + 1) + j] = 0.5 * w * p.definite_integral(t[j], t[j + 1])
        return out

    def l1_distance(self, d_ref) -> float:
        """L1 distance to a reference density, cell by cell."""
        total = 0.0
        knots = self.partition.knots()
        for i in range(self.partition.N):
            a, b = knots[i], knots[i + 1]
            total += integrate_adaptive(lambda x: abs(d_ref(x) - self(x)), a, b, L1_TOL)
        return total


def from_masses(masses, n: int, basis: BasisSet | None = None) -> PiecewiseDensity:
    """Assemble the piecewise density reproducing the given cell masses."""
    masses = np.asarray(masses, dtype=float)
    N = masses.size
    check_grouping(N, n)
    if basis is None:
        basis = build_basis(n)
    w = (n + 1) / N
    polys = []
    for g in range(N // (n + 1)):
        local = masses[g * (n + 1) : (g + 1) * (n + 1)]
        # reconstruct works in t-masses; d(x(t)) carries the 2/w Jacobian
        polys.append(reconstruct(basis, local * (2.0 / w)))
    return PiecewiseDensity(Partition(N), n, tuple(polys))


def project_density(d, N: int, n: int) -> PiecewiseDensity:
    """Petrov-Galerkin projection: match the exact mass of every cell."""
    check_grouping(N, n)
    knots = Partition(N).knots()
    masses = np.array(
        [integrate_adaptive(d, knots[i], knots[i + 1], PROJECT_TOL) for i in range(N)]
    )
    return from_masses(masses, n)


def density_csv_rows(pd: PiecewiseDensity):
    """Rows (group_index, x_lo, x_hi, c0..cn) for CSV serialisation."""
    for g, p in enumerate(pd.group_polys):
        lo, hi = pd.group_bounds(g)
        yield (g, lo, hi, *p.coeffs)
