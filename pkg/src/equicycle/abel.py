"""Reduction of the polar system to an Abel equation on the angular variable.

On any region where the angular speed p2 + r c(theta) does not vanish
(c(theta) = s2 + sin 12 theta), the change of variable

    x = r / (p2 + r c(theta)),        r = p2 x / (1 - c(theta) x)

carries the rescaled polar system to the Abel equation

    dx/dtheta = A(theta) x^3 + B(theta) x^2 + C(theta) x,

with (g = cos 12 theta)

    A(theta) = (2 p1 / p2) c(theta)^2 - 2 c(theta) (s1 - g),
    B(theta) = -(4 p1 / p2) c(theta) + 2 s1 - 14 g,
    C        = 2 p1 / p2.

These closed forms are obtained by carrying the substitution through the
polar system (see scripts/derive_abel_coefficients.py for an independent
symbolic re-derivation); the trajectory-conjugacy tests certify them
numerically.  x = 0 is the image of the origin and x = 1/c(theta) the image
of infinity; both are exact solutions, which pins the identity

    A/c^3 + B/c^2 + C/c = -c'/c^2.

Periodic orbits of the plane system that avoid the critical set correspond
one-to-one with 2pi-periodic solutions of the Abel equation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    AtInfinity,
    InadmissibleParameters,
    OnCriticalSet,
    PreconditionNotMet,
)
from .model import Params, require_admissible

TWO_PI = 2.0 * math.pi
PERIOD = math.pi / 6.0  # A, B, C have this angular period


def _c(params: Params, theta):
    return params.s2 + np.sin(12.0 * theta)


@dataclass(frozen=True)
class AbelCoeffs:
    """Evaluators for the Abel coefficients of a fixed parameter tuple."""

    params: Params

    def A(self, theta):
        c = _c(self.params, theta)
        g = np.cos(12.0 * theta)
        return (2.0 * self.params.p1 / self.params.p2) * c * c - 2.0 * c * (self.params.s1 - g)

    def B(self, theta):
        c = _c(self.params, theta)
        g = np.cos(12.0 * theta)
        return -(4.0 * self.params.p1 / self.params.p2) * c + 2.0 * self.params.s1 - 14.0 * g

    def C(self, theta):
        return (2.0 * self.params.p1 / self.params.p2) * np.ones_like(np.asarray(theta, dtype=float))


def derive_coeffs(params: Params) -> AbelCoeffs:
    """Abel coefficients for admissible parameters.

    A cheap grid assertion of the exact-solution identity for x = 1/c(theta)
    guards the closed forms against regressions.
    """
    require_admissible(params)
    coeffs = AbelCoeffs(params)
    th = np.linspace(0.0, PERIOD, 64, endpoint=False)
    c = _c(params, th)
    cp = 12.0 * np.cos(12.0 * th)
    lhs = coeffs.A(th) / c**3 + coeffs.B(th) / c**2 + coeffs.C(th) / c
    assert np.max(np.abs(lhs + cp / c**2)) < 1e-10 * max(1.0, abs(params.p1 / params.p2)), (
        "Abel coefficients violate the infinity-solution identity"
    )
    return coeffs


def cherkas_forward(params: Params, r: float, theta: float) -> float:
    """x = r / (p2 + r c(theta)); rejects points on the critical set."""
    den = params.p2 + r * float(_c(params, theta))
    if abs(den) < 1e-12:
        raise OnCriticalSet(f"p2 + r c(theta) = {den!r} at (r={r!r}, theta={theta!r})")
    return r / den


def cherkas_inverse(params: Params, x: float, theta: float) -> float:
    """r = p2 x / (1 - c(theta) x); rejects the image of infinity."""
    den = 1.0 - x * float(_c(params, theta))
    if abs(den) < 1e-12:
        raise AtInfinity(f"1 - x c(theta) = {den!r} at (x={x!r}, theta={theta!r})")
    return params.p2 * x / den


def infinity_solution(params: Params, theta):
    """The exact Abel solution x = 1/c(theta), the image of infinity."""
    return 1.0 / _c(params, theta)


def infinity_solution_multiplier(params: Params) -> float:
    """Multiplier of the infinity solution over one period.

    Equals exp(-sgn(s2) 4 pi s1 / sqrt(s2^2 - 1)), the exponential of the
    same integral that decides the stability of infinity.
    """
    if params.s2 * params.s2 <= 1.0:
        raise InadmissibleParameters("the infinity solution requires s2^2 > 1")
    return math.exp(
        -math.copysign(1.0, params.s2) * 4.0 * math.pi * params.s1 / math.sqrt(params.s2**2 - 1.0)
    )


@dataclass(frozen=True)
class SignRegion:
    """p1-interval outside which a coefficient keeps constant sign."""

    sigma_minus: float
    sigma_plus: float
    p1_inside: bool

    def __post_init__(self) -> None:
        assert self.sigma_minus <= self.sigma_plus


def sigma_A(params: Params) -> SignRegion:
    """Endpoints of the p1-interval on which A(theta) changes sign.

    Sigma_A(-/+) = (p2 s1 s2 -/+ sqrt(p2^2 (s1^2 + s2^2 - 1))) / (s2^2 - 1).
    A keeps one sign iff p1 lies outside the open interval; the endpoints are
    exactly the zero set of the quadratic form Q in p1.
    """
    if params.s2 * params.s2 <= 1.0:
        raise InadmissibleParameters("sigma_A requires s2^2 > 1")
    den = params.s2 * params.s2 - 1.0
    disc = math.sqrt(params.p2 * params.p2 * (params.s1**2 + params.s2**2 - 1.0))
    mid = params.p2 * params.s1 * params.s2
    sm = (mid - disc) / den
    sp = (mid + disc) / den
    return SignRegion(sm, sp, sm < params.p1 < sp)


def sigma_B(params: Params) -> SignRegion:
    """Halved sigma_A endpoints, the interval used by condition (ii).

    The halved interval is a contract, not the exact sign-change boundary of
    the derived B(theta); use changes_sign_on_grid for a direct check.
    """
    sa = sigma_A(params)
    sm, sp = sa.sigma_minus / 2.0, sa.sigma_plus / 2.0
    return SignRegion(sm, sp, sm < params.p1 < sp)


def theorem_conditions(params: Params) -> dict[str, bool]:
    """cond_i: p1 outside the sigma_A interval; cond_ii: outside the halved one."""
    if not params.s2 > 1.0:
        raise InadmissibleParameters("the uniqueness conditions are stated for s2 > 1")
    if params.p2 == 0.0:
        raise InadmissibleParameters("p2 = 0")
    return {"cond_i": not sigma_A(params).p1_inside, "cond_ii": not sigma_B(params).p1_inside}


def changes_sign_on_grid(fn, n: int = 4096) -> bool:
    """Dense-grid sign check of a pi/6-periodic coefficient over one period.

    Samples n points, then refines near the extremum closest to zero; a zero
    value counts as a sign change.
    """
    th = np.linspace(0.0, PERIOD, n, endpoint=False)
    v = np.asarray(fn(th), dtype=float)
    if v.min() < 0.0 < v.max():
        return True
    if v.min() == 0.0 or v.max() == 0.0:
        return True
    # one sign so far: refine around the sample nearest zero
    i = int(np.argmin(np.abs(v)))
    h = PERIOD / n
    fine = np.linspace(th[i] - 2.0 * h, th[i] + 2.0 * h, 1024)
    vf = np.asarray(fn(fine), dtype=float)
    lo, hi = float(min(v.min(), vf.min())), float(max(v.max(), vf.max()))
    return lo <= 0.0 <= hi


def llibre_bound_check(coeffs: AbelCoeffs, periodic_solutions: list[float]) -> bool:
    """Verify the three-solution bound for Abel equations with A or B of one sign.

    The supplied list holds the nontrivial periodic solutions found; the two
    structural solutions x = 0 and x = 1/c(theta) complete the count.  Not
    applicable in the center case (p1 = s1 = 0), where periodic solutions
    form a continuum.
    """
    p = coeffs.params
    if p.p1 == 0.0 and p.s1 == 0.0:
        raise PreconditionNotMet("center case: periodic solutions form a continuum, the bound is not applicable")
    a_const = not changes_sign_on_grid(coeffs.A)
    b_const = not changes_sign_on_grid(coeffs.B)
    if not (a_const or b_const):
        raise PreconditionNotMet("both A(theta) and B(theta) change sign on the grid")
    return len(periodic_solutions) + 2 <= 3
