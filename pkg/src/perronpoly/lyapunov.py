"""Lyapunov exponents from piecewise-polynomial invariant densities.

The estimate is the integral of log|g'| against the approximate density,
done group by group with Gauss quadrature.  Branch joints always subdivide
a group (log|g'| may lose smoothness there even when |g'| is continuous),
and pieces ending at a point where g' vanishes or blows up are refined
geometrically toward it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .density import PiecewiseDensity
from .maps import MapModel
from .quadrature import integrate_adaptive

_GEOM_RATIO = 0.25
_GEOM_LEVELS = 40
REFERENCE_TOL = 1e-12

# The n = 3 errors at large N sit at the 1e-15 scale; nodes, function
# evaluations and sums are kept in extended precision so that evaluation
# roundoff does not pollute the measured convergence slopes.
_LD = np.longdouble


@lru_cache(maxsize=None)
def _gauss_longdouble(m: int):
    """Gauss-Legendre nodes/weights on [-1, 1] in extended precision."""
    if m == 1:
        return np.array([0.0], dtype=_LD), np.array([2.0], dtype=_LD)
    k = np.arange(1, m + 1, dtype=_LD)
    x = np.cos(np.pi * (k - 0.25) / (m + 0.5)).astype(_LD)
    for _ in range(200):
        p0 = np.ones_like(x)
        p1 = x.copy()
        for j in range(1, m):
            p0, p1 = p1, ((2 * j + 1) * x * p1 - j * p0) / (j + 1)
        dp = m * (x * p1 - p0) / (x * x - 1)
        dx = p1 / dp
        x = x - dx
        if np.max(np.abs(dx)) < np.finfo(_LD).eps * 4:
            break
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(1, m):
        p0, p1 = p1, ((2 * j + 1) * x * p1 - j * p0) / (j + 1)
    dp = m * (x * p1 - p0) / (x * x - 1)
    w = 2 / ((1 - x * x) * dp * dp)
    order = np.argsort(x)
    return x[order], w[order]


def _horner(coeffs, t):
    acc = _LD(0.0)
    for c in reversed(coeffs):
        acc = acc * t + _LD(c)
    return acc


class LyapunovError(RuntimeError):
    pass


@dataclass(frozen=True)
class LyapunovResult:
    sigma: float
    N: int
    n: int
    quad_points: int


def default_quad_points(n: int) -> int:
    """At least k+1 points for degree n in {2k-1, 2k}, with headroom."""
    k = (n + 1) // 2
    return max(k + 1, 6)


def _split_points(lo: float, hi: float, map_model: MapModel) -> list[float]:
    cuts = {lo, hi}
    for br in map_model.branches:
        for x in br.domain:
            if lo < x < hi:
                cuts.add(x)
    for x in map_model.critical_points:
        if lo < x < hi:
            cuts.add(x)
    return sorted(cuts)


def _is_singular(map_model: MapModel, x: float) -> bool:
    # listed critical points are singular by construction even when
    # floating-point rounding keeps the derivative finite and non-zero there
    if any(x == c for c in map_model.critical_points):
        return True
    try:
        d = map_model.deriv(x)
    except ValueError:
        return True
    return d == 0.0 or not math.isfinite(d)


def _gauss_panel(f, a, b, nodes, weights):
    a, b = _LD(a), _LD(b)
    half = (b - a) / 2
    mid = (a + b) / 2
    acc = _LD(0.0)
    for x, w in zip(nodes, weights):
        acc += w * f(mid + half * x)
    return half * acc


def _piece_integral(f, a, b, nodes, weights, singular_left, singular_right):
    if b <= a:
        return _LD(0.0)
    if not (singular_left or singular_right):
        return _gauss_panel(f, a, b, nodes, weights)
    if singular_left and singular_right:
        mid = (a + b) / 2
        return _piece_integral(f, a, mid, nodes, weights, True, False) + _piece_integral(
            f, mid, b, nodes, weights, False, True
        )
    # geometric panels shrinking toward the singular endpoint
    total = _LD(0.0)
    width = b - a
    inner = _LD(a) if singular_left else _LD(b)
    outer = _LD(b) if singular_left else _LD(a)
    prev = outer
    for level in range(1, _GEOM_LEVELS + 1):
        cut = inner + (outer - inner) * _LD(_GEOM_RATIO) ** level
        if cut == inner or cut == prev:
            break  # no longer representable away from the singularity
        lo, hi = (min(prev, cut), max(prev, cut))
        total += _gauss_panel(f, lo, hi, nodes, weights)
        prev = cut
        if abs(cut - inner) < 1e-30 * max(1.0, width):
            break
    if not np.isfinite(total):
        raise LyapunovError(f"non-finite integrand near x = {float(inner)}")
    return total


def lyapunov_estimate(
    map_model: MapModel, pd: PiecewiseDensity, m: int | None = None
) -> LyapunovResult:
    """sigma_N^n = integral of log|g'| times the piecewise density."""
    if m is None:
        m = default_quad_points(pd.n)
    min_m = (pd.n + 1) // 2 + 1
    if m < min_m:
        raise ValueError(f"need at least {min_m} quadrature points for degree {pd.n}")
    nodes, weights = _gauss_longdouble(m)

    pieces = []
    w = _LD(pd.group_width)
    for g in range(pd.num_groups):
        lo, hi = pd.group_bounds(g)
        coeffs = pd.group_polys[g].coeffs
        lo_ld = _LD(lo)

        def f(x, coeffs=coeffs, lo_ld=lo_ld):
            t = -1 + 2 * (x - lo_ld) / w
            return np.log(np.abs(_LD(map_model.deriv(x)))) * _horner(coeffs, t)

        cuts = _split_points(lo, hi, map_model)
        for a, b in zip(cuts[:-1], cuts[1:]):
            pieces.append(
                _piece_integral(
                    f, a, b, nodes, weights,
                    _is_singular(map_model, a), _is_singular(map_model, b),
                )
            )
    sigma = _LD(0.0)
    for p in pieces:
        sigma += p
    sigma = float(sigma)
    if not math.isfinite(sigma):
        raise LyapunovError("Lyapunov integral is not finite")
    return LyapunovResult(sigma=sigma, N=pd.partition.N, n=pd.n, quad_points=m)


def lyapunov_reference(map_model: MapModel) -> float:
    """Exponent from the known density, branch by branch via adaptive quadrature."""
    if map_model.reference_density is None:
        raise ValueError(f"map {map_model.name!r} has no reference density")
    d = map_model.reference_density

    def f(x):
        return math.log(abs(map_model.deriv(x))) * d(x)

    parts = []
    for br in map_model.branches:
        a, b = br.domain
        for lo, hi in _subdivide_at_criticals(a, b, map_model.critical_points):
            parts.append(integrate_adaptive(f, lo, hi, REFERENCE_TOL))
    return math.fsum(parts)


def _subdivide_at_criticals(a, b, criticals):
    cuts = [a] + [x for x in sorted(criticals) if a < x < b] + [b]
    return list(zip(cuts[:-1], cuts[1:]))
