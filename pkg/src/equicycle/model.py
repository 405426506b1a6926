"""Evaluation of a degree-11 planar vector field in its equivalent coordinate forms.

The field on the plane (z = x + i y) is

    dz/dt = p z^5 zbar^4 + s z^6 zbar^5 - zbar^11,    p = p1 + i p2,  s = s1 + i s2.

It commutes with rotation by pi/6, so the phase portrait is invariant under
the order-12 rotation group.

Polar coordinates throughout this package use the squared radius:
z = sqrt(r) e^{i theta}, r = x^2 + y^2.  Writing g = cos(12 theta) and
c(theta) = s2 + sin(12 theta), the field becomes

    dr/dt     = 2 r^5 (p1 + r (s1 - g)),
    dtheta/dt = r^4 (p2 + r c(theta)),

and after removing the common positive factor r^4 (an orbit-preserving
time rescaling)

    dr/ds     = 2 r p1 + 2 r^2 (s1 - g),
    dtheta/ds = p2 + r c(theta).

All functions here are pure; the dataclasses are frozen and safe to share
across threads and processes.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import polynomial as npp

from .errors import InadmissibleParameters

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Params:
    """The four real parameters p = p1 + i p2, s = s1 + i s2."""

    p1: float
    p2: float
    s1: float
    s2: float

    def __post_init__(self) -> None:
        for name in ("p1", "p2", "s1", "s2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"parameter {name} must be finite")

    @property
    def p(self) -> complex:
        return complex(self.p1, self.p2)

    @property
    def s(self) -> complex:
        return complex(self.s1, self.s2)

    @property
    def admissible(self) -> bool:
        """True when the global analysis applies: |s2| > 1 and p2 != 0."""
        return abs(self.s2) > 1.0 and self.p2 != 0.0


def require_admissible(params: Params) -> None:
    """Reject parameters outside the analysis region, naming the violation."""
    if abs(params.s2) <= 1.0:
        raise InadmissibleParameters(f"|s2| <= 1 (s2 = {params.s2!r}); infinity carries equilibria")
    if params.p2 == 0.0:
        raise InadmissibleParameters("p2 = 0; the origin is not monodromic in the angular chart")


@dataclass(frozen=True)
class PlanePoint:
    """Cartesian coordinates of z = x + i y."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("plane coordinates must be finite")

    @property
    def z(self) -> complex:
        return complex(self.x, self.y)


@dataclass(frozen=True)
class PolarPoint:
    """Squared-radius polar coordinates: r = x^2 + y^2, theta normalized to [0, 2pi)."""

    r: float
    theta: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.r) and math.isfinite(self.theta)):
            raise ValueError("polar coordinates must be finite")
        if self.r < 0.0:
            raise ValueError(f"r = {self.r!r} < 0; r is a squared radius")
        object.__setattr__(self, "theta", self.theta % TWO_PI)


def eval_complex_field(params: Params, z: complex) -> complex:
    """dz/dt = p z^5 zbar^4 + s z^6 zbar^5 - zbar^11."""
    zb = z.conjugate()
    w = (z * zb).real  # |z|^2
    return params.p * (z * w**4) + params.s * (z * w**5) - zb**11


# Coefficient matrices for the parameter-independent monomials, expanded once
# into real-power form: entry [i, j] multiplies x^i y^j.
def _pmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0] - 1, a.shape[1] + b.shape[1] - 1), dtype=complex)
    for i in range(a.shape[0]):
        for j in range(a.shape[1]):
            v = a[i, j]
            if v != 0.0:
                out[i : i + b.shape[0], j : j + b.shape[1]] += v * b
    return out


def _ppow(a: np.ndarray, n: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for _ in range(n):
        out = _pmul(out, a)
    return out


def _pad(a: np.ndarray, n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=complex)
    out[: a.shape[0], : a.shape[1]] = a
    return out


_Z = np.array([[0.0, 1.0j], [1.0, 0.0]], dtype=complex)  # x + i y
_ZB = np.array([[0.0, -1.0j], [1.0, 0.0]], dtype=complex)  # x - i y
_M54 = _pad(_pmul(_ppow(_Z, 5), _ppow(_ZB, 4)), 12)
_M65 = _pmul(_ppow(_Z, 6), _ppow(_ZB, 5))
_M11 = _ppow(_ZB, 11)


@lru_cache(maxsize=128)
def _cartesian_coeffs(params: Params) -> tuple[np.ndarray, np.ndarray]:
    f = params.p * _M54 + params.s * _M65 - _M11
    return np.ascontiguousarray(f.real), np.ascontiguousarray(f.imag)


def eval_cartesian_field(params: Params, pt: PlanePoint) -> tuple[float, float]:
    """(dx/dt, dy/dt) as real bivariate polynomials, expanded from the complex form.

    The coefficient route is independent of complex arithmetic and is held to
    agree with eval_complex_field to 1e-12 relative.
    """
    cp, cq = _cartesian_coeffs(params)
    return float(npp.polyval2d(pt.x, pt.y, cp)), float(npp.polyval2d(pt.x, pt.y, cq))


def polar_rates(params: Params, r, theta):
    """Rescaled polar rates (dr/ds, dtheta/ds); accepts scalars or arrays."""
    g = np.cos(12.0 * theta)
    c = params.s2 + np.sin(12.0 * theta)
    return 2.0 * r * params.p1 + 2.0 * r * r * (params.s1 - g), params.p2 + r * c


def eval_polar_field(params: Params, pt: PolarPoint) -> tuple[float, float]:
    """(dr/ds, dtheta/ds) of the rescaled polar system."""
    dr, dth = polar_rates(params, pt.r, pt.theta)
    return float(dr), float(dth)


def eval_polar_field_raw(params: Params, pt: PolarPoint) -> tuple[float, float]:
    """(dr/dt, dtheta/dt) in original time: r^4 times the rescaled rates."""
    dr, dth = polar_rates(params, pt.r, pt.theta)
    r4 = pt.r**4
    return float(r4 * dr), float(r4 * dth)


def is_hamiltonian(params: Params) -> bool:
    """True iff p1 = 0 and s1 = 0 (exact; the criterion is algebraic)."""
    return params.p1 == 0.0 and params.s1 == 0.0


def divergence(params: Params, pt: PlanePoint) -> float:
    """Divergence of the cartesian field: 2 Re(df/dz) = 10 p1 w^4 + 12 s1 w^5, w = |z|^2.

    Identically zero exactly when is_hamiltonian holds.
    """
    w = pt.x * pt.x + pt.y * pt.y
    return 10.0 * params.p1 * w**4 + 12.0 * params.s1 * w**5


def plane_jacobian(params: Params, pt: PlanePoint) -> np.ndarray:
    """Jacobian of the cartesian field, from the Wirtinger derivatives.

    With f_z = 5 p w^4 + 6 s w^5 and f_zb = 4 p z^5 zbar^3 + 5 s z^6 zbar^4 - 11 zbar^10:
    Px = Re(f_z + f_zb), Py = -Im(f_z - f_zb), Qx = Im(f_z + f_zb), Qy = Re(f_z - f_zb).
    """
    z = pt.z
    zb = z.conjugate()
    w = (z * zb).real
    f_z = 5.0 * params.p * w**4 + 6.0 * params.s * w**5
    f_zb = 4.0 * params.p * z**5 * zb**3 + 5.0 * params.s * z**6 * zb**4 - 11.0 * zb**10
    a = f_z + f_zb
    b = f_z - f_zb
    return np.array([[a.real, -b.imag], [a.imag, b.real]])


def rotate(obj, k: int):
    """Rotate by 2 pi k / 12; accepts complex, PlanePoint, or PolarPoint."""
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise ValueError(f"k must be an integer, got {k!r}")
    if not 0 <= k < 12:
        raise ValueError(f"k = {k!r} out of range [0, 12)")
    if isinstance(obj, PolarPoint):
        return PolarPoint(obj.r, obj.theta + k * math.pi / 6.0)
    gamma = cmath.exp(2.0j * math.pi * k / 12.0)
    if isinstance(obj, PlanePoint):
        w = obj.z * gamma
        return PlanePoint(w.real, w.imag)
    if isinstance(obj, complex):
        return obj * gamma
    raise TypeError(f"cannot rotate {type(obj).__name__}")


def to_polar(pt: PlanePoint) -> PolarPoint:
    """r = x^2 + y^2 (squared radius), theta = atan2(y, x) normalized."""
    return PolarPoint(pt.x * pt.x + pt.y * pt.y, math.atan2(pt.y, pt.x))


def to_plane(pt: PolarPoint) -> PlanePoint:
    """Inverse of to_polar: z = sqrt(r) e^{i theta}."""
    rad = math.sqrt(pt.r)
    return PlanePoint(rad * math.cos(pt.theta), rad * math.sin(pt.theta))
