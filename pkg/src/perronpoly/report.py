"""Figure rendering for study and density output files.

Figures are written next to the delimited output with matplotlib's Agg
backend; nothing here is needed by the numerical pipeline.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .density import PiecewiseDensity
from .maps import MapModel

_MARKERS = ("o", "s", "^", "d", "v", "*")


def render_study_figure(rows, target: str, out_path: str, map_name: str) -> None:
    """Log-log error-vs-N plot, one line per polynomial degree."""
    key = "lyapunov_error" if target == "lyapunov" else "l1_error"
    fig, ax = plt.subplots(figsize=(6, 5))
    degrees = sorted({r.n for r in rows})
    for i, n in enumerate(degrees):
        pts = [(r.N, getattr(r, key)) for r in rows if r.n == n and getattr(r, key)]
        if not pts:
            continue
        Ns, errs = zip(*pts)
        ax.loglog(Ns, errs, marker=_MARKERS[i % len(_MARKERS)], label=f"n = {n}")
    ax.set_xlabel("N")
    ylabel = "|sigma - sigma_N^n|" if target == "lyapunov" else "L1 density error"
    ax.set_ylabel(ylabel)
    ax.set_title(f"{map_name}: {target} convergence")
    ax.grid(True, which="both", alpha=0.3)
    if ax.get_legend_handles_labels()[0]:
        ax.legend()
    fig.savefig(out_path, bbox_inches="tight", dpi=150)
    plt.close(fig)


def render_density_figure(
    pd: PiecewiseDensity, out_path: str, map_model: MapModel | None = None
) -> None:
    """Plot the piecewise density (per group, so discontinuities show)."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for g in range(pd.num_groups):
        lo, hi = pd.group_bounds(g)
        xs = np.linspace(lo, hi, 32)
        ax.plot(xs, [pd(x) for x in xs], "b-", lw=1.2)
    if map_model is not None and map_model.reference_density is not None:
        xs = np.linspace(0.0, 1.0, 400)
        ax.plot(xs, [map_model.reference_density(x) for x in xs], "k--", lw=0.8,
                label="reference")
        ax.legend()
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    ax.grid(True, alpha=0.3)
    fig.savefig(out_path, bbox_inches="tight", dpi=150)
    plt.close(fig)
