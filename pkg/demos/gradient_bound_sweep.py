"""Fitted constants of the logarithmic gradient bound along an ancient run.

Builds a perturbed approximation of an ancient solution on the sphere,
evaluates |grad u| / u against the structural factor S * (1 + log(D/u)) for
the local, global, and ancient window variants, and prints the fitted
constants.  The degenerate case (structural factor zero) is shown last.

    python3 demos/gradient_bound_sweep.py --eps 0.05
"""

import argparse
import csv
import os

import numpy as np

from semiheat import (
    EstimateParams,
    ancient_approximation,
    build_manifold,
    check_gradient_estimate,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--resolution", type=int, default=192)
    ap.add_argument("--eps", type=float, default=0.05)
    ap.add_argument("--out-dir", default=".")
    args = ap.parse_args()

    m = build_manifold("sphere_zonal", 2, 1.0, args.resolution)
    run = ancient_approximation(m, 2.0, 0.0, -12.0, args.eps, 1)
    window = run.slice_time(-12.0, -9.0)
    D = float(np.max(window.snapshots)) * 1.0000001

    print(f"perturbed ancient run, eps = {args.eps:g}, window [-12, -9], D = {D:.5f}")
    print(f"{'variant':>8} {'C_fit':>12} {'max at t':>9}")
    reports = {}
    for variant, params in [
        ("local", EstimateParams(D=D, R=1.0, T=3.0)),
        ("global", EstimateParams(D=D, T=3.0)),
        ("ancient", EstimateParams(D=D)),
    ]:
        rep = check_gradient_estimate(window, params, variant, 2.0)
        reports[variant] = rep
        print(f"{variant:>8} {rep.c_fit:12.6f} {rep.diagnostics['max_time']:9.3f}")

    os.makedirs(args.out_dir, exist_ok=True)
    path = os.path.join(args.out_dir, "gradient_ratio_global.csv")
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "lhs", "structural_rhs", "ratio"])
        writer.writerows(reports["global"].csv_rows())
    print(f"per-snapshot ratios written to {path}")

    # late slice where the solution sits below the curvature threshold:
    # S = 0 and the bound degenerates to plain gradient smallness
    late = run.slice_time(-6.0, -5.0)
    rep = check_gradient_estimate(late, EstimateParams(D=0.4), "ancient", 2.0)
    print(
        f"degenerate branch on [-6, -5]: max|grad u| = {rep.c_fit:.3e}"
        f" (tolerance {rep.c_cap:g}, {'pass' if rep.passed else 'fail'})"
    )


if __name__ == "__main__":
    main()
