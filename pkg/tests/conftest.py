import math

from hypothesis import HealthCheck, assume, settings, strategies as st

from equicycle import Params

settings.register_profile(
    "ci",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("ci")

CANON = dict(p2=-1.0, s1=-0.5, s2=1.2)


def canon(p1: float) -> Params:
    """Canonical admissible parameter line used throughout the suite."""
    return Params(p1, **CANON)


@st.composite
def admissible_params(draw, physical_rings: bool | None = None, q_margin: float = 0.0):
    """Random admissible Params.

    physical_rings=True forces p2 s2 < 0 (the non-origin equilibria, when the
    discriminant allows them, have positive squared radius); False forces the
    opposite; None leaves the signs free.  q_margin > 0 keeps the discriminant
    Q away from zero relative to p1^2 + p2^2.
    """
    s2_sign = draw(st.sampled_from((-1.0, 1.0)))
    s2 = s2_sign * draw(st.floats(1.05, 2.5))
    if physical_rings is None:
        p2_sign = draw(st.sampled_from((-1.0, 1.0)))
    else:
        p2_sign = -s2_sign if physical_rings else s2_sign
    p2 = p2_sign * draw(st.floats(0.4, 1.8))
    s1 = draw(st.floats(-1.5, 1.5))
    p1 = draw(st.floats(-3.0, 4.5))
    params = Params(p1, p2, s1, s2)
    if q_margin > 0.0:
        from equicycle import quadratic_form

        q = quadratic_form(params)
        if abs(q) <= q_margin * (p1 * p1 + p2 * p2):
            # nudge p1 outward until the margin holds; reject the draw if impossible
            for scale in (1.5, 2.5, 4.0):
                trial = Params(p1 * scale if p1 != 0 else scale, p2, s1, s2)
                if abs(quadratic_form(trial)) > q_margin * (trial.p1**2 + p2 * p2):
                    return trial
            assume(False)
    return params


def angle_distance(a: float, b: float) -> float:
    d = abs(a - b) % (2.0 * math.pi)
    return min(d, 2.0 * math.pi - d)
