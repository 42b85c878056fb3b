"""Residual of the explicit static radial solution under grid refinement.

The profile (n(n-2)/(n(n-2)+r^2))^((n-2)/2) solves Lap u + u^((n+2)/(n-2)) = 0
exactly, so the discrete residual measures pure discretization error.  The
radial stencil is fourth order, so the table shows roughly 16x decrease per
grid doubling until roundoff takes over.

    python3 demos/static_profile_refinement.py --n 4
"""

import argparse

from semiheat import talenti_residual


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=4, help="space dimension, at least 3")
    ap.add_argument("--r-max", type=float, default=40.0)
    args = ap.parse_args()

    print(f"static profile residual, n = {args.n}, R_max = {args.r_max:g}")
    print(f"{'grid':>6} {'residual':>12} {'ratio':>7}")
    prev = None
    for grid in (500, 1000, 2000, 4000, 8000):
        res = talenti_residual(args.n, grid, args.r_max)
        ratio = "" if prev is None else f"{prev / res:7.2f}"
        print(f"{grid:>6} {res:12.3e} {ratio:>7}")
        prev = res


if __name__ == "__main__":
    main()
