"""Post-processing of trajectories: blow-up time estimation and bounds,
rate-exponent fitting, blow-up point identification, convergence studies.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.interpolate import CubicSpline

from .grid import Grid, build_grid, discrete_norm
from .integrator import IntegratorConfig, Monitors, Status, Trajectory, integrate
from .model import CriteriaReport, ProblemSpec, check_blowup_criteria, critical_constants

# The rate law is asymptotic near the blow-up time; fits use the monitors
# in the top decade of sup-norm growth.
FIT_WINDOW_FRACTION = 0.1
MIN_FIT_POINTS = 10


class NoBlowupTrend(RuntimeError):
    """Monitor series does not exhibit a blow-up trend usable for fitting."""


@dataclass(frozen=True)
class BlowupTimeBounds:
    """Closed-form bounds on the blow-up time from the initial data.

    t_lower uses the unweighted node sum of squares, t_upper the h-weighted
    2-norm; the mismatch mirrors the two differential inequalities they come
    from and is intentional. t_upper is None (with a reason) when the
    coefficient k_tilde is not positive.
    """

    t_lower: float
    t_upper: float | None
    k_tilde: float
    reason: str | None = None


def blowup_time_bounds(spec: ProblemSpec, g: Grid) -> BlowupTimeBounds:
    u0 = spec.u0_samples
    p = spec.p
    sum_sq = float(np.sum(u0[1:-1] ** 2))
    if sum_sq == 0.0:
        raise ValueError("lower bound undefined for identically zero initial data")
    t_lower = 1.0 / ((p - 1.0) * sum_sq ** ((p - 1.0) / 2.0))

    consts = critical_constants(spec)
    norm_p1 = discrete_norm(u0, g, p + 1.0)
    k_tilde = (p - 1.0) / (p + 1.0) - consts.c * norm_p1 ** (-consts.beta)
    if k_tilde > 0.0:
        norm2 = discrete_norm(u0, g, 2.0)
        t_upper = 1.0 / ((p - 1.0) * k_tilde * norm2 ** (p - 1.0))
        reason = None
    else:
        t_upper = None
        reason = "k_tilde <= 0: blow-up hypotheses not met for an upper bound"
    return BlowupTimeBounds(t_lower=t_lower, t_upper=t_upper, k_tilde=k_tilde, reason=reason)


def _fit_window(monitors: Monitors) -> np.ndarray:
    sup = monitors.sup_norm
    if len(sup) == 0:
        raise NoBlowupTrend("empty monitor series")
    return np.flatnonzero(sup >= FIT_WINDOW_FRACTION * sup[-1])


def estimate_blowup_time(monitors: Monitors, p: float) -> float:
    """Extrapolated blow-up time from the transformed-linearity of the rate law.

    sup_norm^-(p-1) is asymptotically linear in t near blow-up; the estimate
    is the root of the least-squares line through the top-decade monitors.
    """
    idx = _fit_window(monitors)
    if len(idx) < MIN_FIT_POINTS:
        raise NoBlowupTrend(
            f"need at least {MIN_FIT_POINTS} monitor points in the final decade, got {len(idx)}"
        )
    t = monitors.t[idx]
    z = monitors.sup_norm[idx] ** (-(p - 1.0))
    if not z[-1] < z[0]:
        raise NoBlowupTrend("transformed sup-norm series is not decreasing")
    t0 = t.mean()
    slope, intercept = np.polyfit(t - t0, z, 1)
    if not slope < 0.0:
        raise NoBlowupTrend("transformed sup-norm series is not decreasing")
    return float(t0 - intercept / slope)


def fit_rate_exponent(monitors: Monitors, t_est: float) -> float:
    """Least-squares slope of log(sup_norm) against log(t_est - t).

    The expected value is -1/(p-1).
    """
    idx = _fit_window(monitors)
    if len(idx) < MIN_FIT_POINTS:
        raise NoBlowupTrend(
            f"need at least {MIN_FIT_POINTS} monitor points in the final decade, got {len(idx)}"
        )
    t = monitors.t[idx]
    gap = t_est - t
    if np.any(gap <= 0.0):
        raise NoBlowupTrend("estimated blow-up time does not exceed the fit window")
    slope, _ = np.polyfit(np.log(gap), np.log(monitors.sup_norm[idx]), 1)
    return float(slope)


@dataclass(frozen=True)
class BlowupPoint:
    index: int
    x: float
    tie: bool


def blowup_point(traj: Trajectory) -> BlowupPoint:
    """Argmax node of the final state; ties resolve to the lowest index."""
    if traj.status is not Status.BLEW_UP:
        raise RuntimeError(f"trajectory did not blow up (status {traj.status.value})")
    u = traj.final_state
    top = np.max(u)
    ties = np.flatnonzero(u == top)
    idx = int(ties[0])
    return BlowupPoint(index=idx, x=float(traj.grid.nodes[idx]), tie=len(ties) > 1)


@dataclass
class BlowupReport:
    """Summary of one run: stop data, time bounds, fitted rate, blow-up node."""

    status: Status
    t_stop: float
    t_est: float | None
    t_lower: float | None
    t_upper: float | None
    k_tilde: float | None
    rate_exponent: float | None
    rate_expected: float
    blowup_node: int | None
    blowup_x: float | None
    blowup_tie: bool
    criteria: CriteriaReport

    def __post_init__(self):
        if self.status is Status.BLEW_UP and self.t_est is not None:
            if self.t_est < self.t_stop * (1.0 - 1e-12):
                raise ValueError(
                    f"estimated blow-up time {self.t_est} precedes stop time {self.t_stop}"
                )
            if (
                self.k_tilde is not None
                and self.k_tilde > 0.0
                and self.t_lower is not None
                and self.t_lower > self.t_est
            ):
                raise ValueError(
                    f"lower bound {self.t_lower} exceeds estimated blow-up time {self.t_est}"
                )


def build_report(traj: Trajectory, spec: ProblemSpec) -> BlowupReport:
    """Assemble the blow-up report for a finished trajectory."""
    g = traj.grid
    criteria = check_blowup_criteria(spec, g)
    try:
        bounds = blowup_time_bounds(spec, g)
        t_lower, t_upper, k_tilde = bounds.t_lower, bounds.t_upper, bounds.k_tilde
    except ValueError:
        t_lower = t_upper = k_tilde = None

    t_est = rate = None
    node = x = None
    tie = False
    if traj.status is Status.BLEW_UP:
        point = blowup_point(traj)
        node, x, tie = point.index, point.x, point.tie
        try:
            t_est = estimate_blowup_time(traj.monitors, spec.p)
            rate = fit_rate_exponent(traj.monitors, t_est)
        except NoBlowupTrend:
            t_est = rate = None

    return BlowupReport(
        status=traj.status,
        t_stop=traj.t_stop,
        t_est=t_est,
        t_lower=t_lower,
        t_upper=t_upper,
        k_tilde=k_tilde,
        rate_exponent=rate,
        rate_expected=-1.0 / (spec.p - 1.0),
        blowup_node=node,
        blowup_x=x,
        blowup_tie=tie,
        criteria=criteria,
    )


@dataclass
class ConvergenceReport:
    """Per-grid sup-norm errors against a finer reference and observed orders."""

    n_values: list[int]
    h_values: list[float]
    errors: list[float]
    orders: list[float]
    flags: list[str]
    t_check: float
    n_reference: int


def _state_at(spec_family, n: int, t_check: float, cfg: IntegratorConfig):
    g = build_grid(n)
    spec = spec_family(g)
    run_cfg = replace(cfg, t_max=t_check, snapshot_times=())
    traj = integrate(spec, g, run_cfg)
    ok = traj.status is Status.REACHED_HORIZON
    return g, traj.final_state, ok


def convergence_study(
    spec_family,
    N_list,
    t_check: float,
    cfg: IntegratorConfig | None = None,
    ref_refine: int = 4,
) -> ConvergenceReport:
    """Sup-norm errors at t_check on a family of grids against a finer reference.

    spec_family maps a Grid to the ProblemSpec sampled on it, so every grid
    samples the same closed-form data exactly. The reference grid refines the
    finest requested grid by ref_refine; reference values are restricted to
    each grid's nodes exactly when the grids nest and by cubic spline
    otherwise. Runs that stop before t_check are flagged and excluded.
    """
    if len(N_list) < 3:
        raise ValueError("need at least 3 grids for observed orders")
    if t_check <= 0.0:
        raise ValueError("t_check must be positive")
    cfg = cfg or IntegratorConfig(rel_tol=1e-9, abs_tol=1e-11)

    n_ref = ref_refine * (max(N_list) + 1) - 1
    g_ref, u_ref, ok = _state_at(spec_family, n_ref, t_check, cfg)
    if not ok:
        raise RuntimeError("reference run stopped before t_check; no reference available")
    spline = CubicSpline(g_ref.nodes, u_ref)

    errors, h_values, flags = [], [], []
    for n in N_list:
        g, u, ok = _state_at(spec_family, n, t_check, cfg)
        h_values.append(g.h)
        if not ok:
            errors.append(float("nan"))
            flags.append(f"N={n}: run stopped before t_check")
            continue
        if (n_ref + 1) % (n + 1) == 0:
            stride = (n_ref + 1) // (n + 1)
            restricted = u_ref[::stride]
        else:
            restricted = spline(g.nodes)
        errors.append(float(np.max(np.abs(u - restricted))))

    orders = []
    for i in range(len(N_list) - 1):
        e0, e1 = errors[i], errors[i + 1]
        h0, h1 = h_values[i], h_values[i + 1]
        if not (np.isfinite(e0) and np.isfinite(e1)) or e0 <= 0.0 or e1 <= 0.0 or h0 == h1:
            orders.append(float("nan"))
            flags.append(f"order {N_list[i]}->{N_list[i + 1]}: undefined")
        else:
            orders.append(float(np.log(e0 / e1) / np.log(h0 / h1)))

    return ConvergenceReport(
        n_values=list(N_list),
        h_values=h_values,
        errors=errors,
        orders=orders,
        flags=flags,
        t_check=t_check,
        n_reference=n_ref,
    )
