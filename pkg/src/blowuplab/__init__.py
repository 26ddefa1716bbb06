"""Method-of-lines simulator and diagnostics for finite-time blow-up in
u_t = u_xx + |u|^p - b(x)|u_x|^q on (-1, 1) with zero Dirichlet boundary.
"""

from .diagnostics import (
    BlowupPoint,
    BlowupReport,
    BlowupTimeBounds,
    ConvergenceReport,
    NoBlowupTrend,
    blowup_point,
    blowup_time_bounds,
    build_report,
    convergence_study,
    estimate_blowup_time,
    fit_rate_exponent,
)
from .grid import (
    Grid,
    backward_difference,
    build_grid,
    central_difference,
    discrete_norm,
    forward_difference,
    mesh_rule,
    sample,
    second_difference,
)
from .integrator import (
    IntegratorConfig,
    Monitors,
    Status,
    Trajectory,
    integrate,
    resume,
    with_horizon,
)
from .model import (
    CriteriaReport,
    CriticalConstants,
    ProblemSpec,
    check_blowup_criteria,
    critical_constants,
    energy,
    lipschitz_bound,
    q_critical,
    rhs,
)
from .presets import PRESETS, Preset, get_preset

__version__ = "0.1.0"

__all__ = [
    "BlowupPoint",
    "BlowupReport",
    "BlowupTimeBounds",
    "ConvergenceReport",
    "CriteriaReport",
    "CriticalConstants",
    "Grid",
    "IntegratorConfig",
    "Monitors",
    "NoBlowupTrend",
    "PRESETS",
    "Preset",
    "ProblemSpec",
    "Status",
    "Trajectory",
    "backward_difference",
    "blowup_point",
    "blowup_time_bounds",
    "build_grid",
    "build_report",
    "central_difference",
    "check_blowup_criteria",
    "convergence_study",
    "critical_constants",
    "discrete_norm",
    "energy",
    "estimate_blowup_time",
    "fit_rate_exponent",
    "forward_difference",
    "get_preset",
    "integrate",
    "lipschitz_bound",
    "mesh_rule",
    "q_critical",
    "resume",
    "rhs",
    "sample",
    "second_difference",
    "with_horizon",
]
