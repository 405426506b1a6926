#!/usr/bin/env python3
"""Render the three canonical phase portraits as SVG.

One portrait per region class on the line (p2, s1, s2) = (-1, -0.5, 1.2):
p1 = 3.5 (one equilibrium), p1 at the positive discriminant root (13,
with saddle-nodes), and p1 = 2.0 (25).  Output lands in out/.
"""

from pathlib import Path

from equicycle import Params, sigma_A
from equicycle.cli import main as cli_main

OUT = Path(__file__).resolve().parent.parent / "out"
BASE = ["--p2", "-1", "--s1", "-0.5", "--s2", "1.2", "--scan-nodes", "192"]


def main():
    OUT.mkdir(exist_ok=True)
    sa_plus = sigma_A(Params(0.0, -1.0, -0.5, 1.2)).sigma_plus
    jobs = [
        ("portrait_one.svg", "3.5"),
        ("portrait_thirteen.svg", f"{sa_plus:.15g}"),
        ("portrait_twentyfive.svg", "2.0"),
    ]
    for name, p1 in jobs:
        path = OUT / name
        code = cli_main(["portrait", "--p1", p1, *BASE, "--output", str(path)])
        assert code == 0, f"portrait failed for p1 = {p1}"
        print(f"wrote {path} (p1 = {p1})")


if __name__ == "__main__":
    main()
