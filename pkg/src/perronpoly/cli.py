"""Command-line driver.

Subcommands:
  basis     print the measure-preserving basis polynomials for a degree
  basis2d   print the four bilinear quadrant basis functions
  density   compute an invariant density, write its CSV (+ figure)
  lyapunov  compute a Lyapunov-exponent estimate
  study     run a convergence study: CSV, slope report, figure

Exit codes: 0 success, 2 argument error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction

from . import bilinear2d, polybasis
from .density import PiecewiseDensity, Partition, density_csv_rows, from_masses
from .lyapunov import LyapunovError, lyapunov_estimate, lyapunov_reference
from .maps import MAP_NAMES, registry
from .polybasis import DegreeError, Polynomial
from .quadrature import QuadratureError
from .study import run_study, slope_report, study_csv_lines
from .transfer import AmbiguousFixedPointError, SolverError, compute_invariant_density

EXIT_NUMERICAL = 3


def _fraction_str(c: float) -> str:
    frac = Fraction(c).limit_denominator(10**6)
    if abs(float(frac) - c) < 1e-10:
        return str(frac)
    return f"{c:.12g}"


def _poly_str(coeffs, var="t") -> str:
    terms = []
    for j, c in enumerate(coeffs):
        if c == 0 and len(coeffs) > 1:
            continue
        cs = _fraction_str(c)
        if j == 0:
            terms.append(cs)
        elif j == 1:
            terms.append(f"{cs}*{var}")
        else:
            terms.append(f"{cs}*{var}^{j}")
    return " + ".join(terms).replace("+ -", "- ") or "0"


def cmd_basis(args) -> int:
    basis = polybasis.build_basis(args.n)
    for k, p in enumerate(basis.polys):
        print(f"l_{{{args.n},{k}}}(t) = {_poly_str(p.coeffs)}")
    return 0


def cmd_basis2d(args) -> int:
    for (i, j), b in bilinear2d.bilinear_basis().items():
        coeffs = (b.c, b.c_t, b.c_tau, b.c_ttau)
        names = ("", "t", "tau", "t*tau")
        terms = []
        for c, name in zip(coeffs, names):
            cs = _fraction_str(c)
            terms.append(f"{cs}*{name}" if name else cs)
        print(f"l_{{1,{i},{j}}}(t,tau) = " + " + ".join(terms).replace("+ -", "- "))
    return 0


def write_density_csv(pd: PiecewiseDensity, path: str) -> None:
    with open(path, "w") as fh:
        cols = ",".join(f"c{j}" for j in range(pd.n + 1))
        fh.write(f"group_index,x_lo,x_hi,{cols}\n")
        for row in density_csv_rows(pd):
            g, lo, hi, *coeffs = row
            vals = ",".join(f"{c:.16e}" for c in coeffs)
            fh.write(f"{g},{lo:.16e},{hi:.16e},{vals}\n")


def read_density_csv(path: str) -> PiecewiseDensity:
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        n = len(header) - 4
        polys = []
        for line in fh:
            parts = line.strip().split(",")
            polys.append(Polynomial(tuple(float(v) for v in parts[3:])))
    N = len(polys) * (n + 1)
    return PiecewiseDensity(Partition(N), n, tuple(polys))


def _figure_path(csv_path: str) -> str:
    root, _ = os.path.splitext(csv_path)
    return root + ".png"


def cmd_density(args) -> int:
    map_model = registry(args.map)
    pd = compute_invariant_density(map_model, args.cells, args.degree)
    print(f"map={args.map} N={args.cells} n={args.degree}")
    print(f"total_mass = {pd.total_mass():.16e}")
    if map_model.reference_density is not None:
        err = pd.l1_distance(map_model.reference_density)
        print(f"l1_error = {err:.16e}")
    if args.out:
        try:
            write_density_csv(pd, args.out)
        except OSError as exc:
            print(f"error writing {args.out}: {exc}", file=sys.stderr)
            return EXIT_NUMERICAL
        from .report import render_density_figure

        render_density_figure(pd, _figure_path(args.out), map_model)
        print(f"wrote {args.out} and {_figure_path(args.out)}")
    return 0


def cmd_lyapunov(args) -> int:
    map_model = registry(args.map)
    pd = compute_invariant_density(map_model, args.cells, args.degree)
    result = lyapunov_estimate(map_model, pd, args.quad)
    print(f"map={args.map} N={args.cells} n={args.degree} m={result.quad_points}")
    print(f"sigma = {result.sigma:.16e}")
    ref = map_model.reference_lyapunov
    if ref is None and map_model.reference_density is not None:
        ref = lyapunov_reference(map_model)
    if ref is not None:
        print(f"reference = {ref:.16e}")
        print(f"abs_error = {abs(result.sigma - ref):.16e}")
    return 0


def cmd_study(args) -> int:
    degrees = [int(v) for v in args.degrees.split(",")]
    cells = [int(v) for v in args.cells.split(",")] if args.cells else None
    if cells is not None:
        for n in degrees:
            skipped = [N for N in cells if N % (n + 1) != 0]
            for N in skipped:
                print(f"warning: skipping N={N} for n={n} (not divisible by {n + 1})")
    rows = run_study(args.map, degrees, cells, target=args.target)
    lines = study_csv_lines(rows)
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    for rep in slope_report(rows, target=args.target):
        if rep.exact:
            print(f"n={rep.n}: exact (errors at roundoff)")
        elif rep.final_segment is None:
            print(f"n={rep.n}: slope undefined (too few points)")
        else:
            print(
                f"n={rep.n}: final-segment slope {rep.final_segment:+.3f}, "
                f"least-squares slope {rep.least_squares:+.3f}"
            )
    from .report import render_study_figure

    render_study_figure(rows, args.target, _figure_path(args.out), args.map)
    print(f"wrote {args.out} and {_figure_path(args.out)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="perronpoly", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("basis", help="print basis polynomials")
    p.add_argument("--n", type=int, required=True, help="polynomial degree")
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("basis2d", help="print the bilinear quadrant basis")
    p.set_defaults(func=cmd_basis2d)

    p = sub.add_parser("density", help="compute an invariant density")
    p.add_argument("--map", required=True, choices=MAP_NAMES)
    p.add_argument("--cells", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--out", help="CSV output path (figure written alongside)")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("lyapunov", help="estimate the Lyapunov exponent")
    p.add_argument("--map", required=True, choices=MAP_NAMES)
    p.add_argument("--cells", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--quad", type=int, default=None, help="Gauss points per piece")
    p.set_defaults(func=cmd_lyapunov)

    p = sub.add_parser("study", help="run a convergence study")
    p.add_argument("--map", required=True, choices=MAP_NAMES)
    p.add_argument("--degrees", required=True, help="comma-separated degrees")
    p.add_argument("--cells", default=None, help="comma-separated cell counts")
    p.add_argument("--target", choices=("density", "lyapunov", "both"), default="density")
    p.add_argument("--out", required=True, help="CSV output path")
    p.set_defaults(func=cmd_study)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DegreeError, ValueError, KeyError) as exc:
        parser.exit(2, f"error: {exc}\n")
    except (SolverError, AmbiguousFixedPointError, QuadratureError, LyapunovError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
