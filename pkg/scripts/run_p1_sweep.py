#!/usr/bin/env python3
"""Sweep p1 along the canonical line (p2, s1, s2) = (-1, -0.5, 1.2).

Writes out/p1_sweep.csv with the region class, discriminant, and sign
conditions at 101 nodes, and optionally (pass --with-cycles) a second file
out/p1_cycles.csv with the cycle scan at a handful of interesting nodes.
"""

import sys
from pathlib import Path

import numpy as np

from equicycle import Params, find_limit_cycles, sigma_A
from equicycle.cli import _sweep_node
from equicycle.report import emit_sweep_grid

P2, S1, S2 = -1.0, -0.5, 1.2
OUT = Path(__file__).resolve().parent.parent / "out"


def main():
    OUT.mkdir(exist_ok=True)
    grid = np.linspace(-1.0, 4.0, 101)
    rows = [
        _sweep_node((float(p1), P2, S1, S2, False, 512, 1e-10, 1e-12, 1_000_000, 1e-4))
        for p1 in grid
    ]
    path = OUT / "p1_sweep.csv"
    path.write_text(emit_sweep_grid(rows), encoding="utf-8")
    transitions = [
        (a.p1, b.p1, a.region, b.region)
        for a, b in zip(rows, rows[1:])
        if a.region != b.region
    ]
    sa = sigma_A(Params(0.0, P2, S1, S2))
    print(f"wrote {path} ({len(rows)} nodes)")
    print(f"discriminant roots: {sa.sigma_minus:.6f}, {sa.sigma_plus:.6f}")
    for lo, hi, ra, rb in transitions:
        print(f"region {ra} -> {rb} between p1 = {lo:.2f} and {hi:.2f}")

    if "--with-cycles" not in sys.argv:
        print("pass --with-cycles to also scan for cycles at selected nodes")
        return
    nodes = [2.0, 2.4, 2.8, 3.0, sa.sigma_plus, 3.5]
    lines = ["p1,cycles,x_star,multiplier,enclosed"]
    for p1 in nodes:
        cycles = find_limit_cycles(Params(p1, P2, S1, S2), n_scan=192)
        if cycles:
            c = cycles[0]
            lines.append(f"{p1:.6f},{len(cycles)},{c.abel_fixed_point:.12f},{c.multiplier:.6e},{c.enclosed_count}")
            print(f"p1={p1:.4f}: cycle at x*={c.abel_fixed_point:.9f} enclosing {c.enclosed_count}")
        else:
            lines.append(f"{p1:.6f},0,,,")
            print(f"p1={p1:.4f}: no cycle")
    cyc_path = OUT / "p1_cycles.csv"
    cyc_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {cyc_path}")


if __name__ == "__main__":
    main()
