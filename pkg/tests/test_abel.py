import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from equicycle import (
    AtInfinity,
    InadmissibleParameters,
    OnCriticalSet,
    Params,
    PreconditionNotMet,
    cherkas_forward,
    cherkas_inverse,
    derive_coeffs,
    infinity_solution,
    infinity_solution_multiplier,
    llibre_bound_check,
    sigma_A,
    sigma_B,
    theorem_conditions,
    quadratic_form,
)
from equicycle.abel import changes_sign_on_grid
from tests.conftest import admissible_params, canon


def test_constant_coefficient_value():
    co = derive_coeffs(canon(3.0))
    th = np.linspace(0.0, 2.0 * math.pi, 17)
    assert np.allclose(co.C(th), 2.0 * 3.0 / -1.0, rtol=0, atol=1e-14)


@given(admissible_params(), st.floats(0.0, 2.0 * math.pi, exclude_max=True))
def test_infinity_solution_satisfies_coefficient_identity(params, theta):
    # x = 1/c solves the scalar equation, equivalently A/c^3 + B/c^2 + C/c = -c'/c^2
    co = derive_coeffs(params)
    c = params.s2 + math.sin(12.0 * theta)
    cp = 12.0 * math.cos(12.0 * theta)
    lhs = co.A(theta) / c**3 + co.B(theta) / c**2 + co.C(theta) / c
    rhs = -cp / c**2
    scale = 1.0 + abs(co.A(theta)) + abs(co.B(theta)) + abs(rhs)
    assert abs(lhs - rhs) <= 1e-10 * scale


@given(admissible_params(), st.floats(0.05, 8.0), st.floats(0.0, 2.0 * math.pi, exclude_max=True))
def test_cherkas_round_trip(params, r, theta):
    den = params.p2 + r * (params.s2 + math.sin(12.0 * theta))
    if abs(den) < 1e-3:
        r *= 2.0
    x = cherkas_forward(params, r, theta)
    back = cherkas_inverse(params, x, theta)
    assert abs(back - r) <= 1e-10 * (1.0 + r)


def test_cherkas_forward_rejects_critical_set():
    P = canon(1.0)
    # r on the curve p2 + r c(theta) = 0
    theta = 0.3
    r = -P.p2 / (P.s2 + math.sin(12.0 * theta))
    with pytest.raises(OnCriticalSet):
        cherkas_forward(P, r, theta)


def test_cherkas_inverse_rejects_infinity_image():
    P = canon(1.0)
    theta = 0.3
    x = 1.0 / (P.s2 + math.sin(12.0 * theta))
    with pytest.raises(AtInfinity):
        cherkas_inverse(P, x, theta)


def test_infinity_solution_curve():
    P = canon(1.0)
    th = np.linspace(0.0, 2.0 * math.pi, 25)
    assert np.allclose(infinity_solution(P, th), 1.0 / (1.2 + np.sin(12.0 * th)))


def test_infinity_solution_multiplier_value():
    # exp(-sgn(s2) 4 pi s1 / sqrt(s2^2 - 1)) at s1 = -0.5, s2 = 1.2
    want = math.exp(4.0 * math.pi * 0.5 / math.sqrt(0.44))
    got = infinity_solution_multiplier(canon(3.0))
    assert abs(got - want) <= 1e-9 * want
    assert abs(got - 12994.198284162114) <= 1e-3


def test_sigma_interval_values():
    sa = sigma_A(canon(0.0))
    assert abs(sa.sigma_minus - -0.5242326961177443) < 1e-12
    assert abs(sa.sigma_plus - 3.2515054233904714) < 1e-12
    sb = sigma_B(canon(0.0))
    assert abs(sb.sigma_minus - sa.sigma_minus / 2.0) < 1e-12
    assert abs(sb.sigma_plus - sa.sigma_plus / 2.0) < 1e-12


def test_sigma_membership():
    assert sigma_A(canon(2.0)).p1_inside
    assert not sigma_A(canon(3.5)).p1_inside
    assert not sigma_B(canon(2.0)).p1_inside


@given(admissible_params())
def test_discriminant_vanishes_at_interval_endpoints(params):
    if params.s2 <= 1.0:
        return
    sa = sigma_A(params)
    scale = max(params.p2 * params.p2, 1e-6)
    for endpoint in (sa.sigma_minus, sa.sigma_plus):
        trial = Params(endpoint, params.p2, params.s1, params.s2)
        assert abs(quadratic_form(trial)) <= 1e-8 * (endpoint * endpoint + scale)


def test_sigma_requires_wide_s2():
    with pytest.raises(InadmissibleParameters):
        sigma_A(Params(1.0, -1.0, 0.1, 0.9))


def test_theorem_conditions_canonical():
    assert theorem_conditions(canon(3.5)) == {"cond_i": True, "cond_ii": True}
    assert theorem_conditions(canon(3.0)) == {"cond_i": False, "cond_ii": True}
    assert theorem_conditions(canon(1.0)) == {"cond_i": False, "cond_ii": False}
    assert theorem_conditions(canon(-0.4)) == {"cond_i": False, "cond_ii": True}


def test_theorem_conditions_need_positive_wide_s2():
    with pytest.raises(InadmissibleParameters):
        theorem_conditions(Params(3.5, -1.0, -0.5, -1.2))


def test_coefficient_sign_patterns():
    # B keeps its sign while A crosses zero at large |p1|, and vice versa
    co = derive_coeffs(Params(-400.0, -1.0, 100.0, 1.2))
    assert changes_sign_on_grid(co.A)
    assert not changes_sign_on_grid(co.B)
    co = derive_coeffs(canon(3.5))
    assert changes_sign_on_grid(co.B)
    assert not changes_sign_on_grid(co.A)


def test_periodic_solution_bound_when_applicable():
    co = derive_coeffs(canon(3.5))
    assert llibre_bound_check(co, [0.9945])
    assert llibre_bound_check(co, [])


def test_periodic_solution_bound_preconditions():
    with pytest.raises(PreconditionNotMet):
        llibre_bound_check(derive_coeffs(Params(0.0, -1.0, 0.0, 1.2)), [])
    with pytest.raises(PreconditionNotMet):
        # both leading coefficients change sign here
        llibre_bound_check(derive_coeffs(Params(0.0, -1.0, 0.5, 1.2)), [])
