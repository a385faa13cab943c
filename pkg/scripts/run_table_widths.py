"""Widths of the polar duals of the builtin convex bodies.

The mollified radial of a convex body doubles as the gauge of its polar
body, so maximizing the sum of reciprocals at antipodal points gives the
maximal breadth (width) of the dual: octahedron, double cone, and smoothed
tetrahedron for cube, cylinder, and elliptope respectively.
"""

import argparse
import time

import numpy as np

from polystar.bodies import by_name
from polystar.harmonics import mollified_approx
from polystar.optimize import width
from polystar.quadrature import cached_sphere_rule

DUAL = {"cube": "octahedron", "cylinder": "double cone",
        "elliptope": "smoothed tetrahedron"}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=15)
    ap.add_argument("--m", type=int, default=None)
    ap.add_argument("--restarts", type=int, default=16)
    args = ap.parse_args()
    k = args.k
    m = args.m if args.m is not None else 2 * k

    print(f"{'dual body':<22} {'width':>8} {'exact':>6} "
          f"{'direction':>28} {'secs':>6}")
    for name, dual in DUAL.items():
        rule = cached_sphere_rule(3, max((2 * k + m + 1) // 2, 2 * k,
                                         25 if name == "elliptope" else 0))
        start = time.perf_counter()
        e = mollified_approx(by_name(name).eval, k, m, rule, filter_k=2 * k)
        res = width(e, restarts=args.restarts)
        secs = time.perf_counter() - start
        d = np.round(res.direction, 4)
        print(f"{dual:<22} {res.value:>8.4f} {2.0:>6.1f} "
              f"{str(d):>28} {secs:>6.1f}")


if __name__ == "__main__":
    main()
