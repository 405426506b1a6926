"""Closed-form enumeration and classification of equilibria.

Away from the origin, equilibria of the rescaled polar system satisfy

    p1 + r (s1 - cos 12 theta) = 0,
    p2 + r (s2 + sin 12 theta) = 0,

and eliminating r turns the angular condition into a quadratic in
t = tan(6 theta).  Real roots exist iff the quadratic form

    Q(p1, p2) = p1^2 + p2^2 - (p1 s2 - p2 s1)^2

is nonnegative, which splits parameter space into regions with 1, 13, or 25
equilibria (the origin, plus 12 rotated copies of each fundamental root).
The radius is r = -p2 / c(theta) with c(theta) = s2 + sin 12 theta; since
|s2| > 1 keeps c of one sign, the r > 0 condition holds for all roots at
once, exactly when p2 s2 < 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDenominator,
    DegenerateInfinity,
    InadmissibleParameters,
    UnresolvedClassification,
)
from .model import (
    Params,
    PlanePoint,
    PolarPoint,
    polar_rates,
    require_admissible,
    to_plane,
)

TWO_PI = 2.0 * math.pi
SECTOR = math.pi / 6.0  # angular period of the non-origin equilibrium lattice

# |Q| below this relative threshold is treated as the double-root boundary.
Q_TOL_REL = 1e-9


class EquilibriumKind(enum.Enum):
    FOCUS = "Focus"
    CENTER = "Center"
    NODE = "Node"
    SADDLE = "Saddle"
    SADDLE_NODE = "SaddleNode"


class Branch(enum.Enum):
    ORIGIN = "Origin"
    PLUS = "Plus"
    MINUS = "Minus"


class OriginKind(enum.Enum):
    STABLE_FOCUS = "StableFocus"
    UNSTABLE_FOCUS = "UnstableFocus"
    CENTER = "Center"


class InfinityBehavior(enum.Enum):
    HAS_EQUILIBRIA = "HasEquilibria"
    ATTRACTOR = "Attractor"
    REPELLOR = "Repellor"
    # Not part of the three-way contract of infinity_analysis: used by
    # classify_region to report the undecided s1 = 0, |s2| > 1 case instead
    # of failing the whole region report.
    DEGENERATE = "Degenerate"


class RegionCount(enum.Enum):
    ONE = "One"
    THIRTEEN = "Thirteen"
    TWENTY_FIVE = "TwentyFive"

    @property
    def as_int(self) -> int:
        return {"One": 1, "Thirteen": 13, "TwentyFive": 25}[self.value]


@dataclass(frozen=True)
class Equilibrium:
    polar: PolarPoint
    plane: PlanePoint
    eigenvalues: tuple[complex, complex]
    kind: EquilibriumKind
    index: int
    branch: Branch


@dataclass(frozen=True)
class RegionClass:
    count: RegionCount
    q_value: float
    origin_kind: OriginKind
    infinity: InfinityBehavior


def quadratic_form(params: Params) -> float:
    """Q(p1, p2) = p1^2 + p2^2 - (p1 s2 - p2 s1)^2.

    Both algebraic forms (factored and expanded) are evaluated and checked
    against each other; they must agree to 1e-12 of the input scale.
    """
    p1, p2, s1, s2 = params.p1, params.p2, params.s1, params.s2
    cross = p1 * s2 - p2 * s1
    q_a = p1 * p1 + p2 * p2 - cross * cross
    q_b = (1.0 - s2 * s2) * p1 * p1 + (1.0 - s1 * s1) * p2 * p2 + 2.0 * s1 * s2 * p1 * p2
    scale = p1 * p1 + p2 * p2 + cross * cross + 1.0
    assert abs(q_a - q_b) <= 1e-12 * scale, "the two forms of Q disagree"
    return q_a


def _branch_angle(p1: float, su: float, d_tan: float, d_cot: float) -> float:
    """Angle theta solving tan(6 theta) = (p1 + su)/d_tan, su = signed sqrt(Q).

    The cotangent chart cot(6 theta) = (-p1 + su)/d_cot covers the case
    |tan| > 1 or d_tan = 0; charts agree where both apply, and the one with
    |tan(6 theta)| <= 1 is preferred for conditioning.
    """
    num_tan = p1 + su
    num_cot = -p1 + su
    use_tan = d_tan != 0.0 and (abs(num_tan) <= abs(d_tan) or d_cot == 0.0)
    if use_tan:
        theta6 = math.atan(num_tan / d_tan)
    elif d_cot != 0.0:
        theta6 = 0.5 * math.pi - math.atan(num_cot / d_cot)
    else:
        raise DegenerateDenominator("both angular charts degenerate: p2 - p1 s2 + p2 s1 = p2 + p1 s2 - p2 s1 = 0")
    return theta6 / 6.0


def fundamental_equilibria(params: Params) -> list[tuple[PolarPoint, Branch]]:
    """Non-origin equilibria in the fundamental sector theta in [-pi/12, pi/12).

    Returns 0, 1 (double root when Q is on the boundary), or 2 points; roots
    with r <= 0 or complex sqrt(Q) are filtered out.  The stored theta is the
    [0, 2pi) representative of the sector angle.
    """
    require_admissible(params)
    p1, p2, s1, s2 = params.p1, params.p2, params.s1, params.s2
    q = quadratic_form(params)
    scale = p1 * p1 + p2 * p2
    if q < -Q_TOL_REL * scale:
        return []
    u = math.sqrt(q) if q > Q_TOL_REL * scale else 0.0
    d_tan = p2 - p1 * s2 + p2 * s1
    d_cot = p2 + p1 * s2 - p2 * s1
    signed = [(-u, Branch.MINUS), (u, Branch.PLUS)] if u > 0.0 else [(0.0, Branch.PLUS)]
    out: list[tuple[PolarPoint, Branch]] = []
    for su, branch in signed:
        theta = _branch_angle(p1, su, d_tan, d_cot)
        # reduce modulo the lattice period into [-pi/12, pi/12)
        theta = (theta + SECTOR / 2.0) % SECTOR - SECTOR / 2.0
        c = s2 + math.sin(12.0 * theta)
        r = -p2 / c
        if r <= 0.0:
            continue
        dr, dth = polar_rates(params, r, theta)
        assert math.hypot(dr, dth) < 1e-8 * max(1.0, r * r), "closed-form root fails the field residual"
        out.append((PolarPoint(r, theta), branch))
    return out


def jacobian(params: Params, pt: PolarPoint) -> np.ndarray:
    """Jacobian of the rescaled polar field at pt."""
    g = math.cos(12.0 * pt.theta)
    s12 = math.sin(12.0 * pt.theta)
    r = pt.r
    return np.array(
        [
            [2.0 * params.p1 + 4.0 * r * (params.s1 - g), 24.0 * r * r * s12],
            [params.s2 + s12, 12.0 * r * g],
        ]
    )


def origin_stability(params: Params) -> tuple[float, float, OriginKind]:
    """Return-map constants (V1, V2) at the origin and its stability in time.

    V1 = exp(4 pi p1/p2) - 1 and V2 = 4 pi s1 are the leading constants of
    the angular return map; V2 decides only when V1 = 0.  The reported kind
    is stability in original time: the angular direction reverses with the
    sign of p2, so in time the origin is unstable iff p1 > 0, and for p1 = 0
    iff s1 > 0.  It is a center exactly when p1 = s1 = 0.
    """
    if params.p2 == 0.0:
        raise InadmissibleParameters("p2 = 0; the origin return map is undefined")
    v1 = math.exp(4.0 * math.pi * params.p1 / params.p2) - 1.0
    v2 = 4.0 * math.pi * params.s1
    if params.p1 == 0.0 and params.s1 == 0.0:
        kind = OriginKind.CENTER
    elif params.p1 != 0.0:
        kind = OriginKind.UNSTABLE_FOCUS if params.p1 > 0.0 else OriginKind.STABLE_FOCUS
    else:
        kind = OriginKind.UNSTABLE_FOCUS if params.s1 > 0.0 else OriginKind.STABLE_FOCUS
    return v1, v2, kind


def classify_equilibrium(params: Params, pt: PolarPoint, branch: Branch | None = None) -> Equilibrium:
    """Classify an equilibrium from the numerical eigenvalues of the Jacobian.

    pt must satisfy the equilibrium equations to residual 1e-8.  The origin is
    monodromic (r dtheta/dt > 0 nearby, never a node) and is classified by
    origin_stability instead of its degenerate Jacobian.
    """
    dr, dth = polar_rates(params, pt.r, pt.theta)
    if pt.r > 0.0 and math.hypot(dr, dth) > 1e-8 * max(1.0, pt.r * pt.r):
        raise ValueError(f"point (r={pt.r!r}, theta={pt.theta!r}) is not an equilibrium")
    if pt.r == 0.0:
        _, _, okind = origin_stability(params)
        kind = EquilibriumKind.CENTER if okind is OriginKind.CENTER else EquilibriumKind.FOCUS
        eigs = (complex(2.0 * params.p1), 0.0j)
        return Equilibrium(pt, PlanePoint(0.0, 0.0), eigs, kind, +1, Branch.ORIGIN)

    lam = np.linalg.eigvals(jacobian(params, pt))
    lam = sorted((complex(v) for v in lam), key=lambda v: (v.real, v.imag))
    tol_zero = 1e-6 * max(abs(lam[0]), abs(lam[1]), 1.0)
    if abs(lam[0]) < tol_zero and abs(lam[1]) < tol_zero:
        raise UnresolvedClassification(f"both eigenvalues {lam} within {tol_zero:g} of zero")
    if min(abs(lam[0]), abs(lam[1])) < tol_zero:
        kind, index = EquilibriumKind.SADDLE_NODE, 0
    elif abs(lam[0].imag) > tol_zero:
        kind, index = EquilibriumKind.FOCUS, +1
    elif lam[0].real * lam[1].real < 0.0:
        kind, index = EquilibriumKind.SADDLE, -1
    else:
        kind, index = EquilibriumKind.NODE, +1
    if branch is None:
        branch = _match_branch(params, pt)
    return Equilibrium(pt, to_plane(pt), (lam[0], lam[1]), kind, index, branch)


def _match_branch(params: Params, pt: PolarPoint) -> Branch:
    for fpt, br in fundamental_equilibria(params):
        dth = (pt.theta - fpt.theta) % SECTOR
        dth = min(dth, SECTOR - dth)
        if dth < 1e-6 and abs(pt.r - fpt.r) < 1e-6 * (1.0 + fpt.r):
            return br
    raise ValueError("point does not match any fundamental equilibrium branch")


def all_equilibria(params: Params) -> list[Equilibrium]:
    """Origin plus the 12 rotated copies of each fundamental equilibrium."""
    require_admissible(params)
    out = [classify_equilibrium(params, PolarPoint(0.0, 0.0))]
    for fpt, branch in fundamental_equilibria(params):
        for k in range(12):
            rotated = PolarPoint(fpt.r, fpt.theta + k * SECTOR)
            out.append(classify_equilibrium(params, rotated, branch=branch))
    return out


def infinity_analysis(params: Params) -> InfinityBehavior:
    """Behavior of the circle at infinity under Poincare compactification.

    Infinity carries equilibria iff |s2| <= 1.  Otherwise its stability is the
    sign of the integral -sgn(s2) 4 pi s1 / sqrt(s2^2 - 1): negative means
    attractor, positive repellor.  s1 = 0 leaves the integral zero and is
    reported as degenerate rather than guessed.
    """
    if abs(params.s2) <= 1.0:
        return InfinityBehavior.HAS_EQUILIBRIA
    if params.s1 == 0.0:
        raise DegenerateInfinity("s1 = 0 with |s2| > 1: the stability integral vanishes")
    integral = -math.copysign(1.0, params.s2) * 4.0 * math.pi * params.s1 / math.sqrt(params.s2**2 - 1.0)
    return InfinityBehavior.ATTRACTOR if integral < 0.0 else InfinityBehavior.REPELLOR


def classify_region(params: Params) -> RegionClass:
    """Region summary: equilibrium count, Q, origin stability, infinity behavior."""
    require_admissible(params)
    q = quadratic_form(params)
    n = len(fundamental_equilibria(params))
    count = {0: RegionCount.ONE, 1: RegionCount.THIRTEEN, 2: RegionCount.TWENTY_FIVE}[n]
    _, _, origin_kind = origin_stability(params)
    try:
        inf = infinity_analysis(params)
    except DegenerateInfinity:
        inf = InfinityBehavior.DEGENERATE
    return RegionClass(count, q, origin_kind, inf)


def numeric_equilibria(params: Params, grid_n: int = 32) -> list[PolarPoint]:
    """Independent Newton-grid oracle for the non-origin equilibria.

    Seeds a grid_n x grid_n grid over (0, r_max] x [0, 2pi) with
    r_max = 2 |p2| / (|s2| - 1), runs undamped Newton on the rescaled polar
    field, and deduplicates converged roots at distance 1e-6.
    """
    require_admissible(params)
    if grid_n < 24:
        raise ValueError("grid_n must be at least 24")
    p1, p2, s1, s2 = params.p1, params.p2, params.s1, params.s2
    r_max = 2.0 * abs(p2) / (abs(s2) - 1.0)
    rs = np.linspace(r_max / grid_n, r_max, grid_n)
    ths = np.linspace(0.0, TWO_PI, grid_n, endpoint=False)
    R, T = (a.ravel().astype(float) for a in np.meshgrid(rs, ths))
    with np.errstate(all="ignore"):
        for _ in range(80):
            g = np.cos(12.0 * T)
            s12 = np.sin(12.0 * T)
            c = s2 + s12
            f1 = 2.0 * R * p1 + 2.0 * R * R * (s1 - g)
            f2 = p2 + R * c
            ja = 2.0 * p1 + 4.0 * R * (s1 - g)
            jb = 24.0 * R * R * s12
            jd = 12.0 * R * g
            det = ja * jd - jb * c
            R = R - (jd * f1 - jb * f2) / det
            T = T - (ja * f2 - c * f1) / det
            bad = ~np.isfinite(R) | ~np.isfinite(T) | (np.abs(R) > 10.0 * r_max)
            R[bad] = np.nan
        f1, f2 = polar_rates(params, R, T)
        res = np.hypot(f1, f2)
    ok = np.isfinite(res) & (res < 1e-10) & (R > 0.0)
    roots: list[tuple[float, float]] = []
    for r, th in zip(R[ok], T[ok] % TWO_PI):
        for r0, th0 in roots:
            dth = abs(th - th0) % TWO_PI
            dth = min(dth, TWO_PI - dth)
            if math.hypot(r - r0, dth) < 1e-6:
                break
        else:
            roots.append((float(r), float(th)))
    roots.sort(key=lambda rt: (rt[1], rt[0]))
    return [PolarPoint(r, th) for r, th in roots]


def exclusion_check(params: Params) -> bool:
    """No simultaneous equilibria on both symmetry axes theta = 0 and theta = pi/12 (mod pi/6)."""
    if abs(params.s2) <= 1.0:
        raise InadmissibleParameters("exclusion check requires |s2| > 1")
    on_zero = False
    on_half = False
    for eq in all_equilibria(params):
        if eq.branch is Branch.ORIGIN:
            continue
        t = eq.polar.theta % SECTOR
        if min(t, SECTOR - t) < 1e-9:
            on_zero = True
        if abs(t - SECTOR / 2.0) < 1e-9:
            on_half = True
    return not (on_zero and on_half)
