"""Analysis toolkit for the Z12-equivariant planar system

    dz/dt = p z^5 zbar^4 + s z^6 zbar^5 - zbar^11,    p = p1 + i p2, s = s1 + i s2.

Modules: model (field evaluation, coordinates), equilibria (location and
linear classification), abel (scalar periodic reduction and parameter sign
regions), dynamics (integration, return maps, cycle certificates), report
(CSV/JSON/SVG emission), cli (command-line front end).
"""

__version__ = "0.1.0"

from .abel import (
    AbelCoeffs,
    SignRegion,
    cherkas_forward,
    cherkas_inverse,
    derive_coeffs,
    infinity_solution,
    infinity_solution_multiplier,
    llibre_bound_check,
    sigma_A,
    sigma_B,
    theorem_conditions,
)
from .dynamics import (
    AbelTrajectory,
    CycleResult,
    IntegratorConfig,
    PlaneTrajectory,
    ReturnMapSample,
    cycle_period,
    enclosed_equilibria,
    find_fixed_points,
    find_limit_cycles,
    integrate_abel,
    integrate_plane,
    return_map,
)
from .equilibria import (
    Branch,
    Equilibrium,
    EquilibriumKind,
    InfinityBehavior,
    OriginKind,
    RegionClass,
    RegionCount,
    all_equilibria,
    classify_equilibrium,
    classify_region,
    exclusion_check,
    fundamental_equilibria,
    infinity_analysis,
    jacobian,
    numeric_equilibria,
    origin_stability,
    quadratic_form,
)
from .errors import (
    AtInfinity,
    BlowUp,
    DegenerateDenominator,
    DegenerateInfinity,
    EquicycleError,
    InadmissibleParameters,
    OnCriticalSet,
    OpenCurve,
    PreconditionNotMet,
    UnresolvedClassification,
)
from .model import (
    Params,
    PlanePoint,
    PolarPoint,
    divergence,
    eval_cartesian_field,
    eval_complex_field,
    eval_polar_field,
    eval_polar_field_raw,
    is_hamiltonian,
    plane_jacobian,
    rotate,
    to_plane,
    to_polar,
)
from .report import AnalysisReport, SweepRow, build_report, emit_csv, emit_json, emit_sweep_grid, emit_svg_portrait

__all__ = [name for name in dir() if not name.startswith("_")]
