"""Piecewise-monotone interval maps on [0, 1] and their preimages.

A map is a list of monotone branches covering [0, 1].  The built-in
registry provides the benchmark maps used throughout: two maps with known
smooth invariant densities (``g1``, ``g2``), a non-expanding map with an
exactly quadratic density (``g3``), and the tent map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

SQRT2M1 = math.sqrt(2.0) - 1.0


@dataclass(frozen=True)
class Branch:
    domain: tuple[float, float]
    increasing: bool
    eval: Callable[[float], float]
    deriv: Callable[[float], float]
    inverse: Optional[Callable[[float], float]] = None

    @property
    def range(self) -> tuple[float, float]:
        a, b = self.domain
        ya, yb = self.eval(a), self.eval(b)
        return (min(ya, yb), max(ya, yb))

    def invert(self, y: float) -> float:
        """Unique preimage of y within the branch domain."""
        lo, hi = self.range
        if not (lo - 1e-12 <= y <= hi + 1e-12):
            raise ValueError(f"value {y} outside branch range [{lo}, {hi}]")
        y = min(max(y, lo), hi)
        if self.inverse is not None:
            x = self.inverse(y)
            a, b = self.domain
            return min(max(x, a), b)
        return self._invert_numeric(y)

    def _invert_numeric(self, y: float) -> float:
        a, b = self.domain
        fa = self.eval(a) - y
        lo, hi = a, b
        if not self.increasing:
            fa = -fa
        # bisection on the (sign-adjusted) monotone residual
        while hi - lo > 1e-14:
            mid = 0.5 * (lo + hi)
            fm = self.eval(mid) - y
            if not self.increasing:
                fm = -fm
            if (fa <= 0) == (fm <= 0):
                lo, fa = mid, fm
            else:
                hi = mid
        x = 0.5 * (lo + hi)
        for _ in range(2):  # Newton polish
            d = self.deriv(x)
            if d != 0 and math.isfinite(d):
                x = x - (self.eval(x) - y) / d
                x = min(max(x, a), b)
        return x


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    branch_index: int


@dataclass(frozen=True)
class MapModel:
    name: str
    branches: tuple[Branch, ...]
    reference_density: Optional[Callable[[float], float]] = None
    reference_lyapunov: Optional[float] = None
    # points inside branch domains where |g'| is 0 or infinite
    critical_points: tuple[float, ...] = field(default=())

    def _branch_at(self, x: float) -> Branch:
        if not (0.0 <= x <= 1.0):
            raise ValueError(f"point {x} outside [0, 1]")
        # left branch owns a shared endpoint, except x = 0
        for br in self.branches:
            a, b = br.domain
            if a < x <= b or (x == 0.0 and a == 0.0):
                return br
        raise ValueError(f"no branch covers {x}")

    def __call__(self, x: float) -> float:
        return self._branch_at(x).eval(x)

    def deriv(self, x: float) -> float:
        return self._branch_at(x).deriv(x)

    def preimage_segments(self, lo: float, hi: float) -> list[Segment]:
        """Preimage of [lo, hi] as disjoint segments, one per branch hit."""
        if not (0.0 <= lo <= hi <= 1.0):
            raise ValueError(f"invalid interval [{lo}, {hi}]")
        segs = []
        for idx, br in enumerate(self.branches):
            rlo, rhi = br.range
            ylo, yhi = max(lo, rlo), min(hi, rhi)
            if ylo > yhi:
                continue
            xa, xb = br.invert(ylo), br.invert(yhi)
            if xa > xb:
                xa, xb = xb, xa
            segs.append(Segment(xa, xb, idx))
        return segs


def _g1() -> MapModel:
    def inv1(y):
        # solve y x^2 + 2x - y = 0 on the increasing branch
        if y == 0.0:
            return 0.0
        return (-1.0 + math.sqrt(1.0 + y * y)) / y

    def inv2(y):
        # solve x^2 + 2 y x - 1 = 0 on the decreasing branch
        return -y + math.sqrt(y * y + 1.0)

    b1 = Branch(
        domain=(0.0, SQRT2M1),
        increasing=True,
        eval=lambda x: 2.0 * x / (1.0 - x * x),
        deriv=lambda x: 2.0 * (1.0 + x * x) / (1.0 - x * x) ** 2,
        inverse=inv1,
    )
    b2 = Branch(
        domain=(SQRT2M1, 1.0),
        increasing=False,
        eval=lambda x: (1.0 - x * x) / (2.0 * x),
        deriv=lambda x: -(1.0 + x * x) / (2.0 * x * x),
        inverse=inv2,
    )
    return MapModel(
        name="g1",
        branches=(b1, b2),
        reference_density=lambda x: 4.0 / (math.pi * (1.0 + x * x)),
        reference_lyapunov=math.log(2.0),
    )


def _g2() -> MapModel:
    b1 = Branch(
        domain=(0.0, 1.0 / 3.0),
        increasing=True,
        eval=lambda x: 2.0 * x / (1.0 - x),
        deriv=lambda x: 2.0 / (1.0 - x) ** 2,
        inverse=lambda y: y / (2.0 + y),
    )
    b2 = Branch(
        domain=(1.0 / 3.0, 1.0),
        increasing=False,
        eval=lambda x: (1.0 - x) / (2.0 * x),
        deriv=lambda x: -1.0 / (2.0 * x * x),
        inverse=lambda y: 1.0 / (2.0 * y + 1.0),
    )
    return MapModel(
        name="g2",
        branches=(b1, b2),
        reference_density=lambda x: 2.0 / (1.0 + x) ** 2,
    )


def _cbrt(v: float) -> float:
    return math.copysign(abs(v) ** (1.0 / 3.0), v)


def _g3() -> MapModel:
    def f(x):
        return _cbrt(0.125 - 2.0 * abs(x - 0.5) ** 3) + 0.5

    def df(x):
        u = abs(x - 0.5)
        inner = 0.125 - 2.0 * u ** 3
        if inner == 0.0:
            return math.copysign(math.inf, 0.5 - x)
        s = 1.0 if x <= 0.5 else -1.0
        return s * 2.0 * u * u * abs(inner) ** (-2.0 / 3.0)

    def inv_left(y):
        u = _cbrt((0.125 - (y - 0.5) ** 3) / 2.0)
        return 0.5 - u

    def inv_right(y):
        u = _cbrt((0.125 - (y - 0.5) ** 3) / 2.0)
        return 0.5 + u

    b1 = Branch(domain=(0.0, 0.5), increasing=True, eval=f, deriv=df, inverse=inv_left)
    b2 = Branch(domain=(0.5, 1.0), increasing=False, eval=f, deriv=df, inverse=inv_right)
    c = 2.0 ** (-4.0 / 3.0)
    return MapModel(
        name="g3",
        branches=(b1, b2),
        reference_density=lambda x: 12.0 * (x - 0.5) ** 2,
        critical_points=(0.5 - c, 0.5, 0.5 + c),
    )


def _tent() -> MapModel:
    b1 = Branch(
        domain=(0.0, 0.5),
        increasing=True,
        eval=lambda x: 2.0 * x,
        deriv=lambda x: 2.0,
        inverse=lambda y: 0.5 * y,
    )
    b2 = Branch(
        domain=(0.5, 1.0),
        increasing=False,
        eval=lambda x: 2.0 - 2.0 * x,
        deriv=lambda x: -2.0,
        inverse=lambda y: 1.0 - 0.5 * y,
    )
    return MapModel(
        name="tent",
        branches=(b1, b2),
        reference_density=lambda x: 1.0,
        reference_lyapunov=math.log(2.0),
    )


_REGISTRY = {"g1": _g1, "g2": _g2, "g3": _g3, "tent": _tent}

MAP_NAMES = tuple(sorted(_REGISTRY))


def registry(name: str) -> MapModel:
    """Look up a built-in map by name (g1, g2, g3, tent)."""
    try:
        return _REGISTRY[name]()
    except KeyError:
        raise KeyError(f"unknown map {name!r}; available: {', '.join(MAP_NAMES)}") from None
