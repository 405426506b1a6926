#!/usr/bin/env python3
"""Re-derive the Abel coefficients symbolically and check them against the library.

Starting from the rescaled polar system

    dr/dtheta = 2 r (p1 + r (s1 - cos 12 theta)) / (p2 + r c(theta)),
    c(theta)  = s2 + sin 12 theta,

the change of variable x = r / (p2 + r c) turns the equation into
dx/dtheta = A x^3 + B x^2 + C x.  This script performs that substitution with
sympy, collects the polynomial coefficients, prints their closed forms, and
verifies them against equicycle.abel.derive_coeffs at 2000 random points.
"""

import numpy as np
import sympy as sp

from equicycle import Params, derive_coeffs


def symbolic_coefficients():
    p1, p2, s1, s2, th, x = sp.symbols("p1 p2 s1 s2 theta x", real=True)
    g = sp.cos(12 * th)
    c = s2 + sp.sin(12 * th)
    cp = sp.diff(c, th)

    r = p2 * x / (1 - c * x)
    num = 2 * r * (p1 + r * (s1 - g))
    den = p2 + r * c
    # quotient rule for x = r/(p2 + r c): dx = (p2 dr - r^2 c') / (p2 + r c)^2
    dxdth = (p2 * num / den - r**2 * cp) / den**2
    poly = sp.Poly(sp.cancel(sp.together(dxdth)), x)
    coeffs = {deg[0]: sp.simplify(coef) for deg, coef in poly.terms()}
    assert set(coeffs) <= {1, 2, 3}, f"unexpected powers of x: {sorted(coeffs)}"
    return (p1, p2, s1, s2, th), coeffs


def main():
    symbols, coeffs = symbolic_coefficients()
    p1, p2, s1, s2, th = symbols
    names = {3: "A", 2: "B", 1: "C"}
    print("Derived Abel coefficients (dx/dtheta = A x^3 + B x^2 + C x):")
    for deg in (3, 2, 1):
        print(f"  {names[deg]}(theta) = {sp.simplify(coeffs[deg])}")

    g = sp.cos(12 * th)
    c = s2 + sp.sin(12 * th)
    expected = {
        3: (2 * p1 / p2) * c**2 - 2 * c * (s1 - g),
        2: -(4 * p1 / p2) * c + 2 * s1 - 14 * g,
        1: 2 * p1 / p2,
    }
    for deg in (3, 2, 1):
        diff = sp.simplify(sp.expand_trig(sp.expand(coeffs[deg] - expected[deg])))
        status = "matches" if diff == 0 else f"DIFFERS by {diff}"
        print(f"  {names[deg]} {status} the closed form used by the library")

    rng = np.random.default_rng(0)
    fns = {deg: sp.lambdify(symbols, coeffs[deg], "numpy") for deg in (3, 2, 1)}
    worst = 0.0
    for _ in range(2000):
        vals = (
            rng.uniform(-4, 4),
            rng.choice([-1, 1]) * rng.uniform(0.3, 2.0),
            rng.uniform(-2, 2),
            rng.choice([-1, 1]) * rng.uniform(1.05, 3.0),
        )
        theta = rng.uniform(0.0, 2 * np.pi)
        co = derive_coeffs(Params(*map(float, vals)))
        lib = {3: co.A(theta), 2: co.B(theta), 1: co.C(theta)}
        for deg in (3, 2, 1):
            sym = float(fns[deg](*vals, theta))
            worst = max(worst, abs(sym - lib[deg]) / (1.0 + abs(sym)))
    print(f"numeric check at 2000 random (params, theta): worst relative gap {worst:.3e}")
    assert worst < 1e-12, "symbolic and library coefficients disagree"
    print("ok")


if __name__ == "__main__":
    main()
