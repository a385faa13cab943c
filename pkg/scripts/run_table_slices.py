"""Largest central hyperplane slices of the builtin bodies.

Builds a degree-2k polynomial approximation of each intersection body and
maximizes it over the sphere, printing the slice volume and direction next
to the known exact maximum.
"""

import argparse
import time

import numpy as np

from polystar.bodies import by_name
from polystar.optimize import largest_slice
from polystar.quadrature import cached_sphere_rule

EXACT = {
    "cube": 4 * np.sqrt(2),
    "cylinder": np.pi * np.sqrt(2),
    "tin-can": np.pi * np.sqrt(2),
    "elliptope": 8 * np.sqrt(2) / 3,
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=15, help="truncation half-degree")
    ap.add_argument("--m", type=int, default=None,
                    help="quadrature oversampling (default 2k)")
    ap.add_argument("--restarts", type=int, default=16)
    args = ap.parse_args()
    k = args.k
    m = args.m if args.m is not None else 2 * k

    print(f"{'body':<12} {'slice max':>10} {'exact':>8} {'gap':>8} "
          f"{'direction':>28} {'secs':>6}")
    for name in ("cube", "cylinder", "tin-can", "elliptope"):
        rule = cached_sphere_rule(3, max((2 * k + m + 1) // 2, 2 * k,
                                         25 if name == "elliptope" else 0))
        start = time.perf_counter()
        res = largest_slice(by_name(name), k, m, rule, restarts=args.restarts)
        secs = time.perf_counter() - start
        d = np.round(res.direction, 4)
        print(f"{name:<12} {res.value:>10.4f} {EXACT[name]:>8.4f} "
              f"{res.value - EXACT[name]:>+8.4f} {str(d):>28} {secs:>6.1f}")


if __name__ == "__main__":
    main()
