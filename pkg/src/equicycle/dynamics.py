"""Return maps, fixed-point location, limit-cycle reconstruction, enclosure counts.

The Poincare section is theta = 0.  Periodic orbits that surround the origin
cannot meet the critical set Theta = {p2 + r c(theta) = 0}, so along them the
angular speed keeps one sign and the return map of the Abel equation

    dx/dtheta = A x^3 + B x^2 + C x

is well defined.  Fixed points x* of the return map Pi with positive section
radius r* = p2 x*/(1 - s2 x*) are limit cycles of the plane system; the
multiplier Pi'(x*) comes from co-integrating the variational equation.

Two charts are used when scanning for fixed points.  Initial data whose
section radius is positive are integrated in the radial chart dr/dtheta
(bounded along cycles, where the x chart can spike near 1/c(theta)); initial
data on the r < 0 sheet are integrated directly in x.  At a fixed point the
two charts give the same multiplier, and away from one the chain rule
converts derivatives exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .abel import AbelCoeffs, derive_coeffs
from .equilibria import Equilibrium, all_equilibria
from .errors import AtInfinity, BlowUp, OpenCurve
from .model import Params, PlanePoint, require_admissible

TWO_PI = 2.0 * math.pi
X_BOUND = 1e6  # |x| beyond this is escape
N_DENSE = 721  # dense-output samples over one revolution
HYPERBOLICITY_TOL = 1e-6  # |multiplier - 1| must exceed this


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_steps: int = 1_000_000
    initial_step: float = 1e-4

    def __post_init__(self) -> None:
        if not (self.rel_tol > 0.0 and self.abs_tol > 0.0 and self.initial_step > 0.0):
            raise ValueError("tolerances and initial step must be positive")
        if self.max_steps < 1000:
            raise ValueError("max_steps must be at least 1000")


@dataclass(frozen=True)
class AbelTrajectory:
    theta: np.ndarray
    x: np.ndarray


@dataclass(frozen=True)
class PlaneTrajectory:
    t: np.ndarray
    points: np.ndarray  # shape (n, 2)


@dataclass(frozen=True)
class ReturnMapSample:
    x0: float
    x_end: float
    dPi: float


@dataclass(frozen=True)
class CycleResult:
    abel_fixed_point: float
    multiplier: float
    stable: bool
    hyperbolic: bool
    plane_samples: list[PlanePoint] = field(repr=False)
    enclosed_count: int
    enclosed_index_sum: int


def _solve(rhs, y0, theta_end, cfg: IntegratorConfig, events=()):
    """solve_ivp wrapper: RK45, dense output, step budget, failure -> BlowUp."""
    sol = solve_ivp(
        rhs,
        (0.0, theta_end),
        y0,
        method="RK45",
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        first_step=min(cfg.initial_step, abs(theta_end) / 10.0),
        dense_output=True,
        events=list(events),
    )
    if sol.status == -1:
        raise BlowUp(f"integration failed at theta = {sol.t[-1]:.6g}: {sol.message}")
    if len(sol.t) - 1 > cfg.max_steps:
        raise BlowUp(f"step budget exceeded ({len(sol.t) - 1} > {cfg.max_steps})")
    return sol


def _abel_rhs(coeffs: AbelCoeffs):
    # state is (x, u) with u = log of the variational factor; keeping the
    # factor in log form stays relatively accurate even when the derivative
    # of the return map is exp(4 pi p1/p2) ~ 1e-17
    p = coeffs.params
    k1 = 2.0 * p.p1 / p.p2
    k2 = 4.0 * p.p1 / p.p2

    def rhs(th, y):
        x = y[0]
        c = p.s2 + math.sin(12.0 * th)
        g = math.cos(12.0 * th)
        a = k1 * c * c - 2.0 * c * (p.s1 - g)
        b = -k2 * c + 2.0 * p.s1 - 14.0 * g
        return (
            ((a * x + b) * x + k1) * x,
            (3.0 * a * x + 2.0 * b) * x + k1,
        )

    return rhs


def _safe_exp(u: float) -> float:
    try:
        return math.exp(u)
    except OverflowError:
        return math.inf


def _radial_rhs(params: Params):
    p1, p2, s1, s2 = params.p1, params.p2, params.s1, params.s2

    def rhs(th, y):
        r, v = y
        g = math.cos(12.0 * th)
        c = s2 + math.sin(12.0 * th)
        den = p2 + r * c
        num = 2.0 * r * (p1 + r * (s1 - g))
        f = num / den
        dfdr = (2.0 * (p1 + 2.0 * r * (s1 - g)) * den - num * c) / (den * den)
        return (f, dfdr * v)

    return rhs


def _x_escape_event():
    def ev(th, y):
        return abs(y[0]) - X_BOUND

    ev.terminal = True
    ev.direction = 1
    return ev


def _chart_exit_event(params: Params):
    def ev(th, y):
        return params.p2 + y[0] * (params.s2 + math.sin(12.0 * th))

    ev.terminal = True
    ev.direction = 0
    return ev


def _r_escape_event(params: Params):
    cap = 1e8 * max(1.0, abs(params.p2))

    def ev(th, y):
        return abs(y[0]) - cap

    ev.terminal = True
    ev.direction = 1
    return ev


def integrate_abel(coeffs: AbelCoeffs, x0: float, cfg: IntegratorConfig | None = None) -> AbelTrajectory:
    """Solve the Abel equation on [0, 2pi] with dense output at N_DENSE angles."""
    cfg = cfg or IntegratorConfig()
    if not math.isfinite(x0):
        raise ValueError("x0 must be finite")
    sol = _solve(_abel_rhs(coeffs), (x0, 0.0), TWO_PI, cfg, events=[_x_escape_event()])
    if sol.status == 1:
        raise BlowUp(f"|x| reached {X_BOUND:g} at theta = {sol.t[-1]:.6g}")
    th = np.linspace(0.0, TWO_PI, N_DENSE)
    return AbelTrajectory(th, sol.sol(th)[0])


def return_map(coeffs: AbelCoeffs, x0: float, cfg: IntegratorConfig | None = None) -> ReturnMapSample:
    """Pi(x0) = x(2pi) and its derivative dPi via the variational equation."""
    cfg = cfg or IntegratorConfig()
    sol = _solve(_abel_rhs(coeffs), (x0, 0.0), TWO_PI, cfg, events=[_x_escape_event()])
    if sol.status == 1:
        raise BlowUp(f"|x| reached {X_BOUND:g} at theta = {sol.t[-1]:.6g}")
    x_end, u_end = sol.y[:, -1]
    return ReturnMapSample(x0, float(x_end), _safe_exp(float(u_end)))


def _scan_bracket(s2: float) -> tuple[float, float]:
    # the physical annulus in x is bounded by 0 and the extreme of 1/c(theta),
    # widened by 10 percent; mirrored for s2 < -1
    if s2 > 1.0:
        return 1e-6, 1.1 / (s2 - 1.0)
    return 1.1 / (s2 + 1.0), -1e-6


def _section_gap(coeffs: AbelCoeffs, x0: float, cfg: IntegratorConfig):
    """(Pi(x0) - x0, dPi(x0)) on the theta = 0 section, or None if the node is invalid.

    Chart choice: positive section radius -> radial chart (with chart-exit and
    escape guards), negative -> direct x chart.  Derivatives are converted to
    x units exactly.
    """
    p = coeffs.params
    den0 = 1.0 - p.s2 * x0
    if abs(den0) < 1e-9:
        return None
    r0 = p.p2 * x0 / den0
    try:
        if r0 > 0.0:
            sol = _solve(
                _radial_rhs(p),
                (r0, 1.0),
                TWO_PI,
                cfg,
                events=[_chart_exit_event(p), _r_escape_event(p)],
            )
            if sol.status == 1:
                return None
            r_end, v_end = sol.y[:, -1]
            den_end = p.p2 + p.s2 * r_end
            if abs(den_end) < 1e-12:
                return None
            x_end = r_end / den_end
            dpi = (p.p2 / den_end**2) * v_end * (p.p2 / den0**2)
        else:
            sol = _solve(_abel_rhs(coeffs), (x0, 0.0), TWO_PI, cfg, events=[_x_escape_event()])
            if sol.status == 1:
                return None
            x_end, u_end = sol.y[:, -1]
            dpi = _safe_exp(float(u_end))
    except BlowUp:
        return None
    return float(x_end) - x0, float(dpi)


def _refine_root(coeffs, xa, ga, xb, gb, cfg_scan, cfg):
    """Bisection on the section gap, then Newton polish at full tolerance."""
    for _ in range(48):
        xm = 0.5 * (xa + xb)
        if xb - xa < 1e-12 * max(1.0, abs(xm)):
            break
        res = _section_gap(coeffs, xm, cfg_scan)
        if res is None:
            return None
        gm = res[0]
        if gm == 0.0:
            xa = xb = xm
            break
        if (gm > 0.0) == (ga > 0.0):
            xa, ga = xm, gm
        else:
            xb, gb = xm, gm
    x = 0.5 * (xa + xb)
    gap, dpi = math.inf, 1.0
    for _ in range(8):
        res = _section_gap(coeffs, x, cfg)
        if res is None:
            return None
        gap, dpi = res
        if abs(gap) < 1e-11 * max(1.0, abs(x)) or abs(dpi - 1.0) < 1e-12:
            break
        x = x - gap / (dpi - 1.0)
    return x, dpi, abs(gap)


def find_fixed_points(
    coeffs: AbelCoeffs, cfg: IntegratorConfig | None = None, n_scan: int = 512
) -> list[tuple[float, float]]:
    """Nontrivial fixed points of the return map with their multipliers.

    Scans n_scan nodes across the section bracket, excluding a cell around
    the image of infinity x = 1/s2 (the solutions x = 0 and x = 1/c(theta)
    are known and not reported).  Sign changes of Pi(x) - x between adjacent
    valid nodes are refined by bisection and Newton.  The bracketing pass
    runs at a relaxed tolerance; roots are certified at cfg tolerance.
    """
    cfg = cfg or IntegratorConfig()
    require_admissible(coeffs.params)
    cfg_scan = IntegratorConfig(
        rel_tol=max(cfg.rel_tol, 1e-8),
        abs_tol=max(cfg.abs_tol, 1e-10),
        max_steps=cfg.max_steps,
        initial_step=cfg.initial_step,
    )
    lo, hi = _scan_bracket(coeffs.params.s2)
    xs = np.linspace(lo, hi, n_scan)
    x_inf = 1.0 / coeffs.params.s2
    cell = 2.5 * (hi - lo) / (n_scan - 1)
    gaps: list[tuple[float, float] | None] = [
        None if abs(x0 - x_inf) < cell else _section_gap(coeffs, float(x0), cfg_scan) for x0 in xs
    ]
    if all(g is None for g in gaps):
        # zero valid nodes means the integrator never completed an orbit, not
        # that no cycle exists; reporting an empty list would be a false claim
        raise BlowUp("no scan node produced a valid return map; raise max_steps or loosen tolerances")
    roots: list[tuple[float, float]] = []
    for i in range(n_scan - 1):
        ga, gb = gaps[i], gaps[i + 1]
        if ga is None or gb is None:
            continue
        if ga[0] == 0.0:
            refined = _refine_root(coeffs, float(xs[i]), -1.0, float(xs[i]), 1.0, cfg_scan, cfg)
        elif ga[0] * gb[0] < 0.0:
            refined = _refine_root(coeffs, float(xs[i]), ga[0], float(xs[i + 1]), gb[0], cfg_scan, cfg)
        else:
            continue
        if refined is None:
            raise BlowUp(
                f"bracketed fixed point in ({xs[i]:.9g}, {xs[i + 1]:.9g}) failed to certify "
                "at the requested tolerance; raise max_steps or loosen tolerances"
            )
        x_star, dpi, resid = refined
        if resid > 1e-9 * max(1.0, abs(x_star)):
            continue
        if all(abs(x_star - x0) > 1e-8 * (1.0 + abs(x_star)) for x0, _ in roots):
            roots.append((x_star, dpi))
    roots.sort(key=lambda p: p[0])
    return roots


def find_limit_cycles(
    params: Params, cfg: IntegratorConfig | None = None, n_scan: int = 512
) -> list[CycleResult]:
    """Limit cycles of the plane system, certified through the Abel return map.

    Fixed points whose section radius is positive are reconstructed along
    theta in [0, 2pi] in the radial chart, sampled at N_DENSE plane points,
    and checked against the equilibrium list for enclosure counts and index
    sums.  stable iff multiplier < 1; hyperbolic iff |multiplier - 1| exceeds
    the certificate threshold.
    """
    cfg = cfg or IntegratorConfig()
    require_admissible(params)
    coeffs = derive_coeffs(params)
    fixed = find_fixed_points(coeffs, cfg, n_scan)
    if not fixed:
        return []
    eqs = all_equilibria(params)
    out: list[CycleResult] = []
    for x_star, mult in fixed:
        den0 = 1.0 - params.s2 * x_star
        if abs(den0) < 1e-12:
            raise AtInfinity(f"fixed point x = {x_star!r} sits on the image of infinity")
        r0 = params.p2 * x_star / den0
        if r0 <= 0.0:
            continue  # periodic on the r < 0 sheet; not a plane orbit
        sol = _solve(
            _radial_rhs(params),
            (r0, 1.0),
            TWO_PI,
            cfg,
            events=[_chart_exit_event(params), _r_escape_event(params)],
        )
        if sol.status == 1:
            raise BlowUp(f"cycle reconstruction left the chart at theta = {sol.t[-1]:.6g}")
        th = np.linspace(0.0, TWO_PI, N_DENSE)
        r = sol.sol(th)[0]
        rad = np.sqrt(r)
        pts = [PlanePoint(float(a), float(b)) for a, b in zip(rad * np.cos(th), rad * np.sin(th))]
        count, index_sum = enclosed_equilibria(pts, eqs)
        out.append(
            CycleResult(
                abel_fixed_point=x_star,
                multiplier=mult,
                stable=mult < 1.0,
                hyperbolic=abs(mult - 1.0) > HYPERBOLICITY_TOL,
                plane_samples=pts,
                enclosed_count=count,
                enclosed_index_sum=index_sum,
            )
        )
    return out


def cycle_period(params: Params, cycle: CycleResult) -> float:
    """Original-time period, by periodic quadrature of dt = dtheta / (r^4 (p2 + r c))."""
    pts = cycle.plane_samples
    th = np.linspace(0.0, TWO_PI, len(pts))
    r = np.array([p.x * p.x + p.y * p.y for p in pts])
    den = params.p2 + r * (params.s2 + np.sin(12.0 * th))
    return float(np.trapezoid(1.0 / (r**4 * den), th))


def integrate_plane(
    params: Params,
    start: PlanePoint,
    t_span: float,
    cfg: IntegratorConfig | None = None,
    rescaled: bool = False,
    clip_on_escape: bool = False,
) -> PlaneTrajectory:
    """Integrate the cartesian field from start for t_span time units.

    By default time is the original t; with rescaled=True the orbit-equivalent
    time ds = r^4 dt is used instead (the original field is O(r^4.5) near the
    origin, so raw time barely moves there).  Negative t_span integrates
    backward.  Escape beyond 10x the largest equilibrium radius raises BlowUp,
    unless clip_on_escape is set, in which case the trajectory is truncated at
    the escape event (useful when rendering unbounded separatrices).
    """
    cfg = cfg or IntegratorConfig()
    require_admissible(params)
    p, s = params.p, params.s
    radii = [math.hypot(e.plane.x, e.plane.y) for e in all_equilibria(params)]
    r_escape = 10.0 * max(radii + [1.0])

    def rhs(t, y):
        z = complex(y[0], y[1])
        w = (z * z.conjugate()).real
        if rescaled:
            if w == 0.0:
                return (0.0, 0.0)
            f = p * (z * w**4) + s * (z * w**5) - z.conjugate() ** 11
            f /= w**4
        else:
            f = p * (z * w**4) + s * (z * w**5) - z.conjugate() ** 11
        return (f.real, f.imag)

    def escape(t, y):
        return math.hypot(y[0], y[1]) - r_escape

    escape.terminal = True
    escape.direction = 1

    sol = solve_ivp(
        rhs,
        (0.0, t_span),
        (start.x, start.y),
        method="RK45",
        rtol=cfg.rel_tol,
        atol=cfg.abs_tol,
        dense_output=True,
        events=[escape],
    )
    if sol.status == -1:
        raise BlowUp(f"plane integration failed at t = {sol.t[-1]:.6g}: {sol.message}")
    t_end = t_span
    if sol.status == 1:
        if not clip_on_escape:
            raise BlowUp(f"orbit escaped past radius {r_escape:.6g} at t = {sol.t[-1]:.6g}")
        t_end = sol.t[-1]
    if len(sol.t) - 1 > cfg.max_steps:
        raise BlowUp(f"step budget exceeded ({len(sol.t) - 1} > {cfg.max_steps})")
    t = np.linspace(0.0, t_end, max(N_DENSE, 1001))
    y = sol.sol(t)
    return PlaneTrajectory(t, np.ascontiguousarray(y.T))


def point_in_polygon_winding(point: PlanePoint, samples: list[PlanePoint]) -> bool:
    """Winding-number membership test (nonzero rule) for a closed polyline."""
    pts = np.array([(q.x, q.y) for q in samples])
    d = pts - (point.x, point.y)
    ang = np.arctan2(d[:, 1], d[:, 0])
    dd = np.diff(ang, append=ang[:1])
    dd = (dd + math.pi) % TWO_PI - math.pi
    return round(float(np.sum(dd)) / TWO_PI) != 0


def point_in_polygon_raycast(point: PlanePoint, samples: list[PlanePoint]) -> bool:
    """Even-odd crossing test along the ray to x = +infinity; second opinion."""
    inside = False
    n = len(samples)
    for i in range(n):
        a = samples[i]
        b = samples[(i + 1) % n]
        if (a.y > point.y) != (b.y > point.y):
            x_cross = a.x + (point.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x_cross > point.x:
                inside = not inside
    return inside


def enclosed_equilibria(
    cycle_samples: list[PlanePoint], eqs: list[Equilibrium]
) -> tuple[int, int]:
    """(count, index sum) of the equilibria enclosed by a closed curve."""
    if len(cycle_samples) < 3:
        raise OpenCurve("need at least three samples")
    first, last = cycle_samples[0], cycle_samples[-1]
    if math.hypot(first.x - last.x, first.y - last.y) > 1e-6:
        raise OpenCurve(f"endpoints differ by {math.hypot(first.x - last.x, first.y - last.y):.3g}")
    count = 0
    index_sum = 0
    for eq in eqs:
        if point_in_polygon_winding(eq.plane, cycle_samples):
            count += 1
            index_sum += eq.index
    return count, index_sum


def distance_to_polyline(point: PlanePoint, samples: list[PlanePoint]) -> float:
    """Minimum distance from a point to a sampled curve, segment-wise."""
    pts = np.array([(q.x, q.y) for q in samples])
    p = np.array((point.x, point.y))
    a = pts[:-1]
    b = pts[1:]
    ab = b - a
    denom = np.einsum("ij,ij->i", ab, ab)
    denom[denom == 0.0] = 1.0
    t = np.clip(np.einsum("ij,ij->i", p - a, ab) / denom, 0.0, 1.0)
    proj = a + t[:, None] * ab
    return float(np.min(np.hypot(*(p - proj).T)))
