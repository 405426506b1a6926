"""Command-line front end: classify, equilibria, cycles, sweep, portrait.

Exit codes: 0 success, 2 bad input (inadmissible or unparseable), 3 numerical
failure, 4 I/O failure.  Parameters may come from flags or from a key=value
config file given with --config; flags win on conflict.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .abel import sigma_A, sigma_B, theorem_conditions
from .dynamics import IntegratorConfig, PlaneTrajectory, integrate_plane
from .equilibria import EquilibriumKind, classify_region, quadratic_form
from .errors import (
    AtInfinity,
    BlowUp,
    DegenerateDenominator,
    EquicycleError,
    InadmissibleParameters,
    OnCriticalSet,
    UnresolvedClassification,
)
from .model import Params, PlanePoint, plane_jacobian
from .report import SweepRow, build_report, emit_csv, emit_json, emit_sweep_grid, emit_svg_portrait

_DEFAULTS = IntegratorConfig()
_PARAM_KEYS = ("p1", "p2", "s1", "s2")
_CONFIG_KEYS = _PARAM_KEYS + ("rel_tol", "abs_tol", "max_steps", "initial_step", "jobs")

_FMT = "%.15g"


def _fmt_bool(v: bool | None) -> str:
    if v is None:
        return "n/a"
    return "true" if v else "false"


def _read_config(path: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        out[key] = value
    return out


def _merged(args, key: str, cast, default=None):
    flag = getattr(args, key, None)
    if flag is not None:
        return flag
    filed = getattr(args, "_config_values", {}).get(key)
    if filed is not None:
        try:
            return cast(filed)
        except ValueError as exc:
            raise ValueError(f"config value for {key}: {exc}") from exc
    return default


def _params_from_args(args, skip: str | None = None) -> Params:
    values = {}
    for key in _PARAM_KEYS:
        if key == skip:
            values[key] = 0.0
            continue
        v = _merged(args, key, float)
        if v is None:
            raise ValueError(f"missing parameter {key} (use --{key} or --config)")
        values[key] = v
    return Params(**values)


def _cfg_from_args(args) -> IntegratorConfig:
    return IntegratorConfig(
        rel_tol=_merged(args, "rel_tol", float, _DEFAULTS.rel_tol),
        abs_tol=_merged(args, "abs_tol", float, _DEFAULTS.abs_tol),
        max_steps=int(_merged(args, "max_steps", int, _DEFAULTS.max_steps)),
        initial_step=_merged(args, "initial_step", float, _DEFAULTS.initial_step),
    )


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _resolve_jobs(flag_value: int | None) -> int:
    if flag_value is not None:
        return max(1, flag_value)
    env = os.environ.get("EQUICYCLE_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise ValueError(f"EQUICYCLE_JOBS must be an integer, got {env!r}") from exc
    return os.cpu_count() or 1


def cmd_classify(args) -> int:
    params = _params_from_args(args)
    region = classify_region(params)
    sa = sigma_A(params)
    sb = sigma_B(params)
    try:
        conds = theorem_conditions(params)
    except InadmissibleParameters:
        conds = {"cond_i": None, "cond_ii": None}
    lines = [
        "params: p1=%s p2=%s s1=%s s2=%s" % tuple(_FMT % v for v in (params.p1, params.p2, params.s1, params.s2)),
        f"Q: {_FMT % region.q_value}",
        f"region: {region.count.value}",
        f"sigma_A: ({_FMT % sa.sigma_minus}, {_FMT % sa.sigma_plus})",
        f"sigma_B: ({_FMT % sb.sigma_minus}, {_FMT % sb.sigma_plus})",
        f"cond_i: {_fmt_bool(conds['cond_i'])}",
        f"cond_ii: {_fmt_bool(conds['cond_ii'])}",
        f"origin: {region.origin_kind.value}",
        f"infinity: {region.infinity.value}",
    ]
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    return 0


def cmd_equilibria(args) -> int:
    params = _params_from_args(args)
    report = build_report(params, _cfg_from_args(args), with_cycles=False)
    text = emit_json(report) + "\n" if args.format == "json" else emit_csv(report)
    _write_output(text, args.output)
    return 0


def cmd_cycles(args) -> int:
    params = _params_from_args(args)
    report = build_report(params, _cfg_from_args(args), with_cycles=True, n_scan=args.scan_nodes)
    lines = [f"cycles found: {len(report.cycles)}"]
    for cyc in report.cycles:
        lines.append(
            "cycle: x=%s multiplier=%s stable=%s hyperbolic=%s enclosed=%d index_sum=%d"
            % (
                _FMT % cyc.abel_fixed_point,
                "%.6e" % cyc.multiplier,
                _fmt_bool(cyc.stable),
                _fmt_bool(cyc.hyperbolic),
                cyc.enclosed_count,
                cyc.enclosed_index_sum,
            )
        )
    sys.stdout.write("\n".join(lines) + "\n")
    if args.output:
        text = emit_json(report) + "\n" if args.format == "json" else emit_csv(report)
        Path(args.output).write_text(text, encoding="utf-8")
    return 0


def _sweep_node(task) -> SweepRow:
    p1, p2, s1, s2, with_cycles, n_scan, rel_tol, abs_tol, max_steps, initial_step = task
    params = Params(p1, p2, s1, s2)
    cfg = IntegratorConfig(rel_tol, abs_tol, max_steps, initial_step)
    try:
        region = classify_region(params)
        region_name = region.count.value
        q = region.q_value
    except InadmissibleParameters:
        return SweepRow(p1, p2, s1, s2, quadratic_form(params), "inadmissible", None, None, None)
    try:
        conds = theorem_conditions(params)
    except InadmissibleParameters:
        conds = {"cond_i": None, "cond_ii": None}
    cycle_count: int | None = None
    if with_cycles:
        from .dynamics import find_limit_cycles

        try:
            cycle_count = len(find_limit_cycles(params, cfg, n_scan))
        except EquicycleError:
            cycle_count = None
    return SweepRow(p1, p2, s1, s2, q, region_name, conds["cond_i"], conds["cond_ii"], cycle_count)


def cmd_sweep(args) -> int:
    if args.steps < 2:
        raise ValueError("--steps must be at least 2")
    base = _params_from_args(args, skip=args.axis)
    cfg = _cfg_from_args(args)
    jobs = _resolve_jobs(_merged(args, "jobs", int))
    grid = np.linspace(args.start, args.stop, args.steps)
    tasks = []
    for v in grid:
        values = {k: getattr(base, k) for k in _PARAM_KEYS}
        values[args.axis] = float(v)
        tasks.append(
            (
                values["p1"],
                values["p2"],
                values["s1"],
                values["s2"],
                args.with_cycles,
                args.scan_nodes,
                cfg.rel_tol,
                cfg.abs_tol,
                cfg.max_steps,
                cfg.initial_step,
            )
        )
    if jobs == 1:
        rows = [_sweep_node(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_node, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    _write_output(emit_sweep_grid(rows), args.output)
    return 0


def _separatrices(params: Params, report, cfg: IntegratorConfig, horizon: float) -> list[PlaneTrajectory]:
    out: list[PlaneTrajectory] = []
    for eq in report.equilibria:
        if eq.kind not in (EquilibriumKind.SADDLE, EquilibriumKind.SADDLE_NODE):
            continue
        w, vecs = np.linalg.eig(plane_jacobian(params, eq.plane))
        lam_scale = max(1.0, float(np.max(np.abs(w))))
        for i in range(2):
            if abs(w[i].imag) > 1e-8 * lam_scale:
                continue
            v = np.real(vecs[:, i])
            v = v / np.hypot(*v)
            lam = w[i].real
            if lam > 1e-8 * lam_scale:
                spans = [horizon]
            elif lam < -1e-8 * lam_scale:
                spans = [-horizon]
            else:
                spans = [horizon, -horizon]
            for sign in (1.0, -1.0):
                seed = PlanePoint(eq.plane.x + 1e-5 * sign * v[0], eq.plane.y + 1e-5 * sign * v[1])
                for span in spans:
                    out.append(
                        integrate_plane(params, seed, span, cfg, rescaled=True, clip_on_escape=True)
                    )
    return out


def cmd_portrait(args) -> int:
    params = _params_from_args(args)
    cfg = _cfg_from_args(args)
    report = build_report(params, cfg, with_cycles=True, n_scan=args.scan_nodes)
    # separatrices tolerate looser error control; they are decoration, not certificates
    cfg_sep = IntegratorConfig(max(cfg.rel_tol, 1e-8), max(cfg.abs_tol, 1e-10), cfg.max_steps, cfg.initial_step)
    trajectories = _separatrices(params, report, cfg_sep, args.horizon)
    _write_output(emit_svg_portrait(report, trajectories), args.output)
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    for key in _PARAM_KEYS:
        sub.add_argument(f"--{key}", type=float, default=None, help=f"parameter {key}")
    sub.add_argument("--config", default=None, help="key=value config file; flags win on conflict")
    sub.add_argument("--rel-tol", dest="rel_tol", type=float, default=None,
                     help=f"integrator relative tolerance (default {_DEFAULTS.rel_tol:g})")
    sub.add_argument("--abs-tol", dest="abs_tol", type=float, default=None,
                     help=f"integrator absolute tolerance (default {_DEFAULTS.abs_tol:g})")
    sub.add_argument("--max-steps", dest="max_steps", type=int, default=None,
                     help=f"integrator step budget (default {_DEFAULTS.max_steps})")
    sub.add_argument("--initial-step", dest="initial_step", type=float, default=None,
                     help=f"integrator initial step (default {_DEFAULTS.initial_step:g})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equicycle",
        description="Equilibria, sign regions, and limit-cycle certificates for the "
        "Z12-equivariant degree-11 planar system dz/dt = p z^5 zbar^4 + s z^6 zbar^5 - zbar^11.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    sub = subs.add_parser("classify", help="region class, Q, sigma intervals, conditions, stability")
    _add_common(sub)
    sub.add_argument("--output", default=None, help="also write the text report to this file")
    sub.set_defaults(func=cmd_classify)

    sub = subs.add_parser("equilibria", help="equilibrium table as CSV or JSON")
    _add_common(sub)
    sub.add_argument("--format", choices=("csv", "json"), default="csv")
    sub.add_argument("--output", default=None, help="output path (default stdout)")
    sub.set_defaults(func=cmd_equilibria)

    sub = subs.add_parser("cycles", help="locate and certify limit cycles")
    _add_common(sub)
    sub.add_argument("--format", choices=("csv", "json"), default="csv",
                     help="file format when --output is given (stdout is always text)")
    sub.add_argument("--output", default=None, help="also write the full report to this file")
    sub.add_argument("--scan-nodes", dest="scan_nodes", type=int, default=512,
                     help="nodes in the fixed-point scan (default 512)")
    sub.set_defaults(func=cmd_cycles)

    sub = subs.add_parser("sweep", help="parameter sweep along one axis, CSV per node")
    _add_common(sub)
    sub.add_argument("--axis", choices=_PARAM_KEYS, required=True)
    sub.add_argument("--from", dest="start", type=float, required=True)
    sub.add_argument("--to", dest="stop", type=float, required=True)
    sub.add_argument("--steps", type=int, required=True, help="grid nodes (at least 2)")
    sub.add_argument("--jobs", type=int, default=None,
                     help="worker processes (default: EQUICYCLE_JOBS or logical processors)")
    sub.add_argument("--with-cycles", dest="with_cycles", action="store_true",
                     help="also run the cycle scan per node (slow)")
    sub.add_argument("--scan-nodes", dest="scan_nodes", type=int, default=512)
    sub.add_argument("--output", default=None, help="output path (default stdout)")
    sub.set_defaults(func=cmd_sweep)

    sub = subs.add_parser("portrait", help="SVG phase portrait")
    _add_common(sub)
    sub.add_argument("--output", required=True, help="SVG output path")
    sub.add_argument("--scan-nodes", dest="scan_nodes", type=int, default=512)
    sub.add_argument("--horizon", type=float, default=30.0,
                     help="separatrix integration horizon in rescaled time (default 30)")
    sub.set_defaults(func=cmd_portrait)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.config:
            args._config_values = _read_config(args.config)
        else:
            args._config_values = {}
        return args.func(args)
    except InadmissibleParameters as exc:
        print(f"error: inadmissible parameters: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BlowUp, OnCriticalSet, AtInfinity, DegenerateDenominator, UnresolvedClassification) as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
