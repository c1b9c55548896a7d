"""Measure-preserving polynomial basis on the reference interval [-1, 1].

A degree-n basis consists of n+1 polynomials ell_{n,k} defined by the
conditions

    integral of ell_{n,k} over [t_j, t_{j+1}] = delta_{jk},  j = 0..n,

where t_j = -1 + 2j/(n+1) are equispaced nodes.  A density polynomial with
prescribed masses M_0..M_n on the n+1 sub-cells is then simply
sum_k M_k ell_{n,k}.

Two independent constructions are provided: a direct linear solve for the
coefficients, and differentiation of the Lagrange interpolant of the
cumulative measure.  They must produce identical polynomials (the
measure-preservation conditions determine the polynomial uniquely).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_DEGREE = 12


class DegreeError(ValueError):
    """Requested basis degree is negative or above the conditioning guard."""


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial in the monomial basis, p(t) = sum c_j t^j."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            object.__setattr__(self, "coeffs", (0.0,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        """Horner evaluation; accepts scalars or arrays."""
        acc = np.zeros_like(np.asarray(t, dtype=float))
        for c in reversed(self.coeffs):
            acc = acc * t + c
        if np.ndim(t) == 0:
            return float(acc)
        return acc

    def derivative(self) -> "Polynomial":
        if len(self.coeffs) == 1:
            return Polynomial((0.0,))
        return Polynomial(tuple(j * c for j, c in enumerate(self.coeffs) if j > 0))

    def antiderivative(self) -> "Polynomial":
        return Polynomial((0.0,) + tuple(c / (j + 1) for j, c in enumerate(self.coeffs)))

    def definite_integral(self, a: float, b: float) -> float:
        """Exact integral over [a, b] via the antiderivative (no quadrature)."""
        F = self.antiderivative()
        return F(b) - F(a)

    def scale(self, s: float) -> "Polynomial":
        return Polynomial(tuple(s * c for c in self.coeffs))

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0.0] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0.0] * (n - len(other.coeffs))
        return Polynomial(tuple(x + y for x, y in zip(a, b)))


def subcell_nodes(n: int) -> np.ndarray:
    """Equispaced nodes t_0..t_{n+1} on [-1, 1]."""
    return -1.0 + 2.0 * np.arange(n + 2) / (n + 1)


@dataclass(frozen=True)
class BasisSet:
    """The n+1 measure-preserving basis polynomials of degree n."""

    n: int
    nodes: tuple[float, ...]
    polys: tuple[Polynomial, ...]

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, k: int) -> Polynomial:
        return self.polys[k]


@dataclass(frozen=True)
class MeasureInterpolant:
    """Degree n+1 interpolant of the cumulative measure at the nodes.

    node_values[j] is the cumulative mass up to node t_j; its derivative is
    the measure-preserving density polynomial.
    """

    n: int
    node_values: tuple[float, ...]
    q: Polynomial


def _check_degree(n: int) -> None:
    if n < 0:
        raise DegreeError(f"degree must be non-negative, got {n}")
    if n > MAX_DEGREE:
        raise DegreeError(
            f"degree {n} unsupported: equispaced-node construction is "
            f"ill-conditioned above n = {MAX_DEGREE}"
        )


def build_basis(n: int) -> BasisSet:
    """Construct the basis by solving the sub-cell integral conditions.

    Row j of the system integrates the monomials exactly over
    [t_j, t_{j+1}]; the right-hand side for basis function k is the k-th
    unit vector, so all n+1 coefficient vectors come from one matrix solve.
    """
    _check_degree(n)
    t = subcell_nodes(n)
    B = np.empty((n + 1, n + 1))
    for j in range(n + 1):
        for p in range(n + 1):
            B[j, p] = (t[j + 1] ** (p + 1) - t[j] ** (p + 1)) / (p + 1)
    coeffs = np.linalg.solve(B, np.eye(n + 1))
    polys = tuple(Polynomial(tuple(coeffs[:, k])) for k in range(n + 1))
    return BasisSet(n=n, nodes=tuple(t), polys=polys)


def _lagrange_cardinal(nodes: np.ndarray, j: int) -> Polynomial:
    """Cardinal polynomial equal to 1 at nodes[j] and 0 at the others."""
    others = np.delete(nodes, j)
    coeffs = np.poly(others)[::-1]  # np.poly returns highest degree first
    denom = np.prod(nodes[j] - others)
    return Polynomial(tuple(coeffs / denom))


def measure_interpolant(n: int, masses) -> MeasureInterpolant:
    """Interpolate the cumulative measure of the given sub-cell masses."""
    _check_degree(n)
    masses = np.asarray(masses, dtype=float)
    if masses.shape != (n + 1,):
        raise ValueError(f"expected {n + 1} masses, got {masses.shape}")
    t = subcell_nodes(n)
    values = np.concatenate(([0.0], np.cumsum(masses)))
    q = Polynomial((0.0,))
    for j in range(n + 2):
        if values[j] != 0.0:
            q = q + _lagrange_cardinal(t, j).scale(values[j])
    # pad to full degree n+1 so downstream shapes are stable
    c = list(q.coeffs) + [0.0] * (n + 2 - len(q.coeffs))
    q = Polynomial(tuple(c[: n + 2]))
    return MeasureInterpolant(n=n, node_values=tuple(values), q=q)


def build_basis_via_measure(n: int) -> BasisSet:
    """Construct the basis by differentiating cumulative-measure interpolants.

    Basis function k comes from unit mass on sub-cell k and zero elsewhere;
    this is the independent oracle for build_basis.
    """
    _check_degree(n)
    t = subcell_nodes(n)
    polys = []
    for k in range(n + 1):
        masses = np.zeros(n + 1)
        masses[k] = 1.0
        q = measure_interpolant(n, masses).q
        d = q.derivative()
        c = list(d.coeffs) + [0.0] * (n + 1 - len(d.coeffs))
        polys.append(Polynomial(tuple(c[: n + 1])))
    return BasisSet(n=n, nodes=tuple(t), polys=tuple(polys))


def reconstruct(basis: BasisSet, masses) -> Polynomial:
    """Density polynomial with the given masses on the n+1 sub-cells."""
    masses = np.asarray(masses, dtype=float)
    if masses.shape != (basis.n + 1,):
        raise ValueError(f"expected {basis.n + 1} masses, got {masses.shape}")
    coeffs = np.zeros(basis.n + 1)
    for k, p in enumerate(basis.polys):
        coeffs += masses[k] * np.asarray(p.coeffs)
    return Polynomial(tuple(coeffs))


def basis_integral(basis: BasisSet, k: int, a: float, b: float) -> float:
    """Exact integral of basis function k over [a, b] inside [-1, 1]."""
    if not (0 <= k <= basis.n):
        raise ValueError(f"basis index {k} out of range 0..{basis.n}")
    if not (-1.0 - 1e-12 <= a <= b <= 1.0 + 1e-12):
        raise ValueError(f"invalid integration bounds [{a}, {b}]")
    return basis.polys[k].definite_integral(a, b)
