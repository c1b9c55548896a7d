"""Convergence-study harness: error tables, slope fits, CSV output.

A study runs the full pipeline (operator -> fixed point -> density) over a
grid of degrees and cell counts and records, per row, the L1 density error
and/or the Lyapunov-exponent error against the map's reference values.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .lyapunov import lyapunov_estimate, lyapunov_reference
from .maps import MapModel, registry
from .transfer import compute_invariant_density

# errors below this are treated as exactly-representable cases when fitting slopes
EXACT_FLOOR = 1e-12


@dataclass(frozen=True)
class StudyRow:
    map_name: str
    N: int
    n: int
    l1_error: Optional[float]
    lyapunov_error: Optional[float]
    sigma: Optional[float]
    wall_time_seconds: float


@dataclass(frozen=True)
class SlopeReport:
    n: int
    final_segment: Optional[float]
    least_squares: Optional[float]
    exact: bool


def default_cells(n: int, base=(16, 32, 64, 128, 256)) -> list[int]:
    """Dyadic grid adjusted so every N is a multiple of n+1."""
    start = (n + 1) * math.ceil(base[0] / (n + 1))
    return [start * (N // base[0]) for N in base]


def max_threads() -> int:
    env = os.environ.get("PERRONPOLY_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _run_row(map_name: str, N: int, n: int, target: str) -> StudyRow:
    map_model = registry(map_name)
    started = time.perf_counter()
    pd = compute_invariant_density(map_model, N, n)
    l1 = None
    lyap_err = None
    sigma = None
    if target in ("density", "both") and map_model.reference_density is not None:
        l1 = pd.l1_distance(map_model.reference_density)
    if target in ("lyapunov", "both"):
        sigma = lyapunov_estimate(map_model, pd).sigma
        ref = map_model.reference_lyapunov
        if ref is None and map_model.reference_density is not None:
            ref = lyapunov_reference(map_model)
        if ref is not None:
            lyap_err = abs(sigma - ref)
    return StudyRow(
        map_name=map_name,
        N=N,
        n=n,
        l1_error=l1,
        lyapunov_error=lyap_err,
        sigma=sigma,
        wall_time_seconds=time.perf_counter() - started,
    )


def run_study(map_name, degrees, cells=None, target="density") -> list[StudyRow]:
    """One row per valid (n, N) pair; invalid pairs are skipped."""
    if target not in ("density", "lyapunov", "both"):
        raise ValueError(f"unknown study target {target!r}")
    registry(map_name)  # fail fast on bad names
    jobs = []
    for n in degrees:
        grid = cells if cells is not None else default_cells(n)
        for N in grid:
            if N % (n + 1) == 0:
                jobs.append((n, N))
    with ThreadPoolExecutor(max_workers=max_threads()) as pool:
        rows = list(pool.map(lambda j: _run_row(map_name, j[1], j[0], target), jobs))
    rows.sort(key=lambda r: (r.n, r.N))
    return rows


def _error_of(row: StudyRow, target: str) -> Optional[float]:
    return row.lyapunov_error if target == "lyapunov" else row.l1_error


def slope_report(rows, target="density") -> list[SlopeReport]:
    """Final-segment and least-squares slopes of log error vs log N, per degree."""
    reports = []
    for n in sorted({r.n for r in rows}):
        pts = [
            (r.N, _error_of(r, target))
            for r in rows
            if r.n == n and _error_of(r, target) is not None
        ]
        if all(e < EXACT_FLOOR for _, e in pts):
            reports.append(SlopeReport(n=n, final_segment=None, least_squares=None, exact=True))
            continue
        pts = [(N, e) for N, e in pts if e > 0]
        if len(pts) < 2:
            reports.append(SlopeReport(n=n, final_segment=None, least_squares=None, exact=False))
            continue
        logN = np.log([N for N, _ in pts])
        logE = np.log([e for _, e in pts])
        final = (logE[-1] - logE[-2]) / (logN[-1] - logN[-2])
        lsq = float(np.polyfit(logN, logE, 1)[0])
        reports.append(
            SlopeReport(n=n, final_segment=float(final), least_squares=lsq, exact=False)
        )
    return reports


def final_segment_slope(map_name, n, cells, target="density") -> float:
    """Convenience wrapper: run a study for one degree and return its final slope."""
    rows = run_study(map_name, [n], cells, target=target)
    (report,) = slope_report(rows, target=target)
    if report.final_segment is None:
        raise RuntimeError("slope undefined: errors at roundoff or too few points")
    return report.final_segment


def _fmt(v) -> str:
    if v is None:
        return ""
    return f"{v:.16e}"


STUDY_HEADER = "map_name,N,n,l1_error,lyapunov_error,sigma,wall_time_seconds"


def study_csv_lines(rows) -> list[str]:
    lines = [STUDY_HEADER]
    for r in rows:
        lines.append(
            f"{r.map_name},{r.N},{r.n},{_fmt(r.l1_error)},{_fmt(r.lyapunov_error)},"
            f"{_fmt(r.sigma)},{_fmt(r.wall_time_seconds)}"
        )
    return lines
