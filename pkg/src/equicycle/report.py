"""Serialization of analyses to CSV, JSON, and SVG.

All emitters are deterministic functions of their inputs: floats are printed
at 15 significant digits in CSV, key order in JSON is fixed, and SVG geometry
is formatted identically on every run.  Plane rendering uses z-plane
coordinates (the radial coordinate r elsewhere is x^2 + y^2).
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from dataclasses import dataclass

import numpy as np

from . import __version__
from .abel import SignRegion, derive_coeffs, sigma_A, sigma_B, theorem_conditions
from .dynamics import CycleResult, IntegratorConfig, PlaneTrajectory, find_limit_cycles
from .equilibria import Equilibrium, RegionClass, all_equilibria, classify_region
from .errors import InadmissibleParameters
from .model import Params

FLOAT_FMT = "%.15g"
N_THETA_SAMPLES = 721

CSV_COLUMNS = [
    "row_type",
    "p1",
    "p2",
    "s1",
    "s2",
    "r",
    "theta",
    "x",
    "y",
    "eig1_re",
    "eig1_im",
    "eig2_re",
    "eig2_im",
    "kind",
    "index",
    "branch",
    "abel_fixed_point",
    "multiplier",
    "stable",
    "hyperbolic",
    "enclosed_count",
    "enclosed_index_sum",
]


@dataclass(frozen=True)
class AnalysisReport:
    params: Params
    region: RegionClass
    sigma_a: SignRegion
    sigma_b: SignRegion
    conditions: dict[str, bool | None]
    equilibria: list[Equilibrium]
    cycles: list[CycleResult]
    provenance: dict[str, str]


def config_hash(params: Params, cfg: IntegratorConfig) -> str:
    blob = f"{params!r}|{cfg!r}".encode()
    return hashlib.sha256(blob).hexdigest()[:12]


def build_report(
    params: Params,
    cfg: IntegratorConfig | None = None,
    with_cycles: bool = True,
    n_scan: int = 512,
) -> AnalysisReport:
    """Assemble the full analysis for one parameter tuple."""
    cfg = cfg or IntegratorConfig()
    region = classify_region(params)
    try:
        conditions: dict[str, bool | None] = dict(theorem_conditions(params))
    except InadmissibleParameters:
        # s2 < -1 is admissible for the equilibrium analysis but outside the
        # stated range of the uniqueness conditions
        conditions = {"cond_i": None, "cond_ii": None}
    cycles = find_limit_cycles(params, cfg, n_scan) if with_cycles else []
    return AnalysisReport(
        params=params,
        region=region,
        sigma_a=sigma_A(params),
        sigma_b=sigma_B(params),
        conditions=conditions,
        equilibria=all_equilibria(params),
        cycles=cycles,
        provenance={"version": __version__, "config_hash": config_hash(params, cfg)},
    )


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return FLOAT_FMT % value
    return str(value)


def emit_csv(report: AnalysisReport) -> str:
    """One header, one row per equilibrium, one row per cycle; RFC-4180 quoting."""
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(CSV_COLUMNS)
    p = report.params
    base = [p.p1, p.p2, p.s1, p.s2]
    for eq in report.equilibria:
        w.writerow(
            [_cell(v) for v in ["equilibrium", *base, eq.polar.r, eq.polar.theta, eq.plane.x, eq.plane.y,
                                eq.eigenvalues[0].real, eq.eigenvalues[0].imag,
                                eq.eigenvalues[1].real, eq.eigenvalues[1].imag,
                                eq.kind.value, eq.index, eq.branch.value,
                                None, None, None, None, None, None]]
        )
    for cyc in report.cycles:
        w.writerow(
            [_cell(v) for v in ["cycle", *base, None, None, None, None, None, None, None, None,
                                None, None, None,
                                cyc.abel_fixed_point, cyc.multiplier, cyc.stable, cyc.hyperbolic,
                                cyc.enclosed_count, cyc.enclosed_index_sum]]
        )
    return buf.getvalue()


def emit_json(report: AnalysisReport) -> str:
    """UTF-8 JSON with stable key order."""
    doc = {
        "params": {"p1": report.params.p1, "p2": report.params.p2, "s1": report.params.s1, "s2": report.params.s2},
        "region": {
            "count": report.region.count.value,
            "q_value": report.region.q_value,
            "origin_kind": report.region.origin_kind.value,
            "infinity": report.region.infinity.value,
        },
        "sigma_A": {"minus": report.sigma_a.sigma_minus, "plus": report.sigma_a.sigma_plus,
                    "p1_inside": report.sigma_a.p1_inside},
        "sigma_B": {"minus": report.sigma_b.sigma_minus, "plus": report.sigma_b.sigma_plus,
                    "p1_inside": report.sigma_b.p1_inside},
        "conditions": report.conditions,
        "equilibria": [
            {
                "r": eq.polar.r,
                "theta": eq.polar.theta,
                "x": eq.plane.x,
                "y": eq.plane.y,
                "eigenvalues": [[eq.eigenvalues[0].real, eq.eigenvalues[0].imag],
                                [eq.eigenvalues[1].real, eq.eigenvalues[1].imag]],
                "kind": eq.kind.value,
                "index": eq.index,
                "branch": eq.branch.value,
            }
            for eq in report.equilibria
        ],
        "cycles": [
            {
                "abel_fixed_point": cyc.abel_fixed_point,
                "multiplier": cyc.multiplier,
                "stable": cyc.stable,
                "hyperbolic": cyc.hyperbolic,
                "enclosed_count": cyc.enclosed_count,
                "enclosed_index_sum": cyc.enclosed_index_sum,
            }
            for cyc in report.cycles
        ],
        "provenance": dict(report.provenance),
    }
    return json.dumps(doc, indent=2)


@dataclass(frozen=True)
class SweepRow:
    p1: float
    p2: float
    s1: float
    s2: float
    q: float
    region: str
    cond_i: bool | None
    cond_ii: bool | None
    cycle_count: int | None


def emit_sweep_grid(rows: list[SweepRow]) -> str:
    """One CSV row per grid node, in the given (monotone) order."""
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["p1", "p2", "s1", "s2", "Q", "region", "cond_i", "cond_ii", "cycles"])
    for row in rows:
        w.writerow(
            [_cell(v) for v in [row.p1, row.p2, row.s1, row.s2, row.q, row.region,
                                row.cond_i, row.cond_ii, row.cycle_count]]
        )
    return buf.getvalue()


def _svg_num(v: float) -> str:
    return "%.6g" % v


_GLYPH_SIZE_FRAC = 0.018


def _glyph(kind: str, x: float, y: float, size: float) -> str:
    f = _svg_num
    if kind == "Saddle":
        return (
            f'<path class="eq-saddle" d="M {f(x - size)} {f(y - size)} L {f(x + size)} {f(y + size)} '
            f'M {f(x - size)} {f(y + size)} L {f(x + size)} {f(y - size)}" '
            'stroke="#b40426" stroke-width="1.5" fill="none"/>'
        )
    if kind == "SaddleNode":
        return (
            f'<polygon class="eq-saddlenode" points="{f(x)},{f(y - size)} {f(x + size)},{f(y + size)} '
            f'{f(x - size)},{f(y + size)}" fill="#7a3b8f"/>'
        )
    if kind == "Node":
        return f'<circle class="eq-node" cx="{f(x)}" cy="{f(y)}" r="{f(size)}" fill="#1f6fb4"/>'
    if kind == "Center":
        return (
            f'<g class="eq-center"><circle cx="{f(x)}" cy="{f(y)}" r="{f(size)}" fill="none" '
            f'stroke="#2a8a3c" stroke-width="1.2"/>'
            f'<circle cx="{f(x)}" cy="{f(y)}" r="{f(size / 4)}" fill="#2a8a3c"/></g>'
        )
    # Focus
    return (
        f'<circle class="eq-focus" cx="{f(x)}" cy="{f(y)}" r="{f(size)}" fill="none" '
        'stroke="#1f6fb4" stroke-width="1.5"/>'
    )


def _polyline(points: np.ndarray, cls: str, style: str) -> str:
    coords = " ".join(f"{_svg_num(px)},{_svg_num(-py)}" for px, py in points)
    return f'<polyline class="{cls}" points="{coords}" fill="none" {style}/>'


def emit_svg_portrait(report: AnalysisReport, trajectories: list[PlaneTrajectory]) -> str:
    """SVG 1.1 portrait: equilibrium glyphs by kind, cycles, separatrices, dashed Theta.

    The y axis is flipped into SVG screen coordinates; all coordinates are in
    the z plane (so distances from the origin are sqrt(r)).
    """
    p = report.params
    xs: list[float] = []
    ys: list[float] = []
    for eq in report.equilibria:
        xs.append(eq.plane.x)
        ys.append(eq.plane.y)
    for cyc in report.cycles:
        xs.extend(q.x for q in cyc.plane_samples)
        ys.extend(q.y for q in cyc.plane_samples)
    for tr in trajectories:
        xs.extend(tr.points[:, 0])
        ys.extend(tr.points[:, 1])

    theta_curve = None
    if p.p2 * p.s2 < 0.0:
        th = np.linspace(0.0, 2.0 * math.pi, N_THETA_SAMPLES)
        r = -p.p2 / (p.s2 + np.sin(12.0 * th))
        rad = np.sqrt(r)
        theta_curve = np.column_stack([rad * np.cos(th), rad * np.sin(th)])
        xs.extend(theta_curve[:, 0])
        ys.extend(theta_curve[:, 1])

    x0, x1 = (min(xs), max(xs)) if xs else (-1.0, 1.0)
    y0, y1 = (min(ys), max(ys)) if ys else (-1.0, 1.0)
    span = max(x1 - x0, y1 - y0, 1e-6)
    margin = 0.1 * span
    view = (x0 - margin, -(y1 + margin), (x1 - x0) + 2 * margin, (y1 - y0) + 2 * margin)
    size = _GLYPH_SIZE_FRAC * span

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_svg_num(view[0])} {_svg_num(view[1])} {_svg_num(view[2])} {_svg_num(view[3])}" '
        'width="720" height="720">',
        "<desc>Phase portrait in z-plane coordinates (x, y); the polar radial "
        "coordinate used elsewhere is r = x^2 + y^2.</desc>",
    ]
    if theta_curve is not None:
        parts.append(
            _polyline(theta_curve, "theta-set", 'stroke="#888888" stroke-width="0.8" stroke-dasharray="4 3"')
        )
    for tr in trajectories:
        parts.append(_polyline(tr.points, "separatrix", 'stroke="#444444" stroke-width="0.7"'))
    for cyc in report.cycles:
        pts = np.array([(q.x, q.y) for q in cyc.plane_samples])
        coords = " L ".join(f"{_svg_num(px)} {_svg_num(-py)}" for px, py in pts[:-1])
        parts.append(
            f'<path class="cycle" d="M {coords} Z" fill="none" stroke="#c96a00" stroke-width="1.8"/>'
        )
    for eq in report.equilibria:
        parts.append(_glyph(eq.kind.value, eq.plane.x, -eq.plane.y, size))
    parts.append("</svg>")
    return "\n".join(parts)
