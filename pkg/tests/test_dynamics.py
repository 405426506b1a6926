import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from equicycle import (
    BlowUp,
    IntegratorConfig,
    OpenCurve,
    Params,
    PlanePoint,
    all_equilibria,
    cycle_period,
    derive_coeffs,
    enclosed_equilibria,
    find_fixed_points,
    find_limit_cycles,
    integrate_abel,
    integrate_plane,
    return_map,
)
from equicycle.dynamics import (
    distance_to_polyline,
    point_in_polygon_raycast,
    point_in_polygon_winding,
)
from tests.conftest import canon


@pytest.fixture(scope="module")
def cycle_35():
    cycles = find_limit_cycles(canon(3.5), n_scan=192)
    assert len(cycles) == 1
    return cycles[0]


def test_integrator_config_validation():
    with pytest.raises(ValueError):
        IntegratorConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        IntegratorConfig(abs_tol=-1e-12)
    with pytest.raises(ValueError):
        IntegratorConfig(max_steps=100)
    with pytest.raises(ValueError):
        IntegratorConfig(initial_step=0.0)


def test_zero_solution_is_invariant():
    tr = integrate_abel(derive_coeffs(canon(1.7)), 0.0)
    assert np.max(np.abs(tr.x)) == 0.0
    assert len(tr.theta) >= 720


def test_infinity_solution_is_invariant():
    # the curve 1/c repels at rate exp(4 pi |s1|/sqrt(s2^2-1)) ~ 1.3e4 here,
    # so integrator noise is amplified; 5e-5 leaves that headroom
    P = canon(1.0)
    co = derive_coeffs(P)
    tr = integrate_abel(co, 1.0 / P.s2)
    drift = np.abs(tr.x - 1.0 / (P.s2 + np.sin(12.0 * tr.theta)))
    assert np.max(drift) < 5e-5


def test_return_map_agrees_with_scan(cycle_35):
    co = derive_coeffs(canon(3.5))
    x_star = cycle_35.abel_fixed_point
    sample = return_map(co, x_star)
    assert abs(sample.x_end - x_star) < 1e-9
    assert abs(sample.dPi - cycle_35.multiplier) < 1e-3 * cycle_35.multiplier + 1e-12


def test_scan_finds_unique_fixed_point():
    roots = find_fixed_points(derive_coeffs(canon(3.5)), n_scan=192)
    assert len(roots) == 1
    x_star, mult = roots[0]
    assert abs(x_star - 0.994504060) < 1e-6
    assert abs(mult - 3.917198e-07) < 1e-3 * 3.917198e-07


def test_no_fixed_points_deep_inside_twentyfive_region():
    assert find_fixed_points(derive_coeffs(canon(2.0)), n_scan=192) == []


def test_cycle_certificate_fields(cycle_35):
    c = cycle_35
    assert c.stable and c.hyperbolic
    assert c.enclosed_count == 1
    assert c.enclosed_index_sum == 1
    assert abs(c.multiplier - 1.0) > 1e-6
    pts = c.plane_samples
    assert len(pts) >= 720
    assert math.hypot(pts[0].x - pts[-1].x, pts[0].y - pts[-1].y) < 1e-6
    radii = [p.x * p.x + p.y * p.y for p in pts]
    assert min(radii) > 0.0


def test_cycle_closes_in_original_time(cycle_35):
    P = canon(3.5)
    T = cycle_period(P, cycle_35)
    assert 0.0 < T < 1.0
    start = cycle_35.plane_samples[0]
    traj = integrate_plane(P, start, T)
    end = traj.points[-1]
    assert math.hypot(end[0] - start.x, end[1] - start.y) < 1e-5


def test_plane_escape_raises():
    # infinity repels at these parameters, so escape happens in backward time
    with pytest.raises(BlowUp):
        integrate_plane(canon(3.5), PlanePoint(3.0, 0.0), -10.0, rescaled=True)


def test_plane_escape_clips_when_asked():
    traj = integrate_plane(canon(3.5), PlanePoint(3.0, 0.0), -10.0, rescaled=True, clip_on_escape=True)
    assert abs(traj.t[-1]) <= 10.0
    assert np.isfinite(traj.points).all()


def test_plane_origin_fixed_in_rescaled_time():
    traj = integrate_plane(canon(3.5), PlanePoint(0.0, 0.0), 5.0, rescaled=True)
    assert np.max(np.abs(traj.points)) == 0.0


star_angles = st.lists(st.floats(0.0, 2.0 * math.pi, exclude_max=True), min_size=4, max_size=24, unique=True)


@given(star_angles, st.floats(0.0, 2.9), st.floats(0.0, 2.0 * math.pi, exclude_max=True))
def test_two_enclosure_algorithms_agree(angles, rho, phi):
    angles = sorted(angles)
    radii = [1.0 + 0.8 * math.sin(3.0 * a) ** 2 for a in angles]
    poly = [PlanePoint(r * math.cos(a), r * math.sin(a)) for r, a in zip(radii, angles)]
    poly.append(poly[0])
    pt = PlanePoint(rho * math.cos(phi), rho * math.sin(phi))
    if distance_to_polyline(pt, poly) < 1e-3:
        return
    assert point_in_polygon_winding(pt, poly) == point_in_polygon_raycast(pt, poly)


def test_enclosure_truth_on_dense_star():
    angles = np.linspace(0.0, 2.0 * math.pi, 400)
    radii = 1.0 + 0.8 * np.sin(3.0 * angles) ** 2
    poly = [PlanePoint(r * math.cos(a), r * math.sin(a)) for r, a in zip(radii, angles)]
    for rho, inside in ((0.0, True), (0.5, True), (0.95, True), (1.85, False), (2.5, False)):
        for phi in np.linspace(0.0, 2.0 * math.pi, 13):
            pt = PlanePoint(rho * math.cos(phi), rho * math.sin(phi))
            assert point_in_polygon_winding(pt, poly) is inside
            assert point_in_polygon_raycast(pt, poly) is inside


def _circle(plane_radius: float, n: int = 256) -> list[PlanePoint]:
    return [
        PlanePoint(plane_radius * math.cos(t), plane_radius * math.sin(t))
        for t in np.linspace(0.0, 2.0 * math.pi, n)
    ]


def test_enclosure_counts_against_ring_structure():
    eqs = all_equilibria(canon(2.0))
    # inner ring at squared radius 1.4797 (plane 1.216), outer at 4.897 (plane 2.213)
    assert enclosed_equilibria(_circle(1.0), eqs) == (1, 1)
    assert enclosed_equilibria(_circle(1.5), eqs) == (13, -11)
    assert enclosed_equilibria(_circle(3.0), eqs) == (25, 1)


def test_open_curve_rejected():
    arc = _circle(1.0)[:200]
    with pytest.raises(OpenCurve):
        enclosed_equilibria(arc, all_equilibria(canon(2.0)))


def test_polyline_distance():
    square = [PlanePoint(0.0, 0.0), PlanePoint(1.0, 0.0), PlanePoint(1.0, 1.0),
              PlanePoint(0.0, 1.0), PlanePoint(0.0, 0.0)]
    assert abs(distance_to_polyline(PlanePoint(0.5, 0.5), square) - 0.5) < 1e-12
    assert abs(distance_to_polyline(PlanePoint(2.0, 0.5), square) - 1.0) < 1e-12
    assert abs(distance_to_polyline(PlanePoint(0.5, -0.25), square) - 0.25) < 1e-12
