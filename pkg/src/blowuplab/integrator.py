"""Adaptive explicit time integration of the semidiscrete system.

Uses the Dormand-Prince embedded 5(4) pair with a PI step-size controller.
The state vector holds interior nodes only, so the zero Dirichlet boundary
is enforced by construction at every stage. Integration stops when the sup
norm reaches the blow-up threshold, the horizon is reached, or the step
size underflows (blow-up too fast to resolve at the given tolerances).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace

import numpy as np

from .grid import Grid
from .model import ProblemSpec, energy, rhs_interior

# Dormand-Prince 5(4) tableau (FSAL: stage 7 is the next step's stage 1).
_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)
_E = _B5 - _B4

_SAFETY = 0.9
_MIN_FACTOR = 0.2
_MAX_FACTOR = 5.0
# PI controller exponents for a 4th-order error estimate
_ERR_EXP = 0.7 / 5.0
_PREV_EXP = 0.4 / 5.0


class Status(enum.Enum):
    BLEW_UP = "BlewUp"
    REACHED_HORIZON = "ReachedHorizon"
    STEP_UNDERFLOW = "StepUnderflow"


@dataclass(frozen=True)
class IntegratorConfig:
    rel_tol: float = 1e-6
    abs_tol: float = 1e-8
    dt_init: float = 1e-9
    dt_min: float = 1e-22
    t_max: float = 1.0
    blowup_threshold: float = 1e8
    snapshot_times: tuple[float, ...] = ()
    monitor_stride: int = 1

    def __post_init__(self):
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.dt_init <= 0.0 or self.dt_min <= 0.0:
            raise ValueError("step sizes must be positive")
        if self.dt_min > self.dt_init:
            raise ValueError("dt_min must not exceed dt_init")
        if self.blowup_threshold <= 0.0:
            raise ValueError("blowup_threshold must be positive")
        if self.monitor_stride < 1:
            raise ValueError("monitor_stride must be >= 1")
        times = tuple(sorted({float(s) for s in self.snapshot_times}))
        object.__setattr__(self, "snapshot_times", times)


@dataclass
class Monitors:
    """Per-step scalar series: times, sup norm, energy, min value, argmax node."""

    t: np.ndarray
    sup_norm: np.ndarray
    energy: np.ndarray
    min_value: np.ndarray
    argmax_node: np.ndarray

    def __len__(self) -> int:
        return len(self.t)


@dataclass
class Trajectory:
    grid: Grid
    monitors: Monitors
    snapshots: list[tuple[float, np.ndarray]]
    status: Status
    t_stop: float
    final_state: np.ndarray = field(repr=False)
    n_accepted: int = 0
    n_rejected: int = 0


class _Recorder:
    def __init__(self):
        self.rows = []

    def record(self, t, full, g, p):
        self.rows.append(
            (
                t,
                float(np.max(np.abs(full))),
                energy(full, g, p),
                float(np.min(full)),
                int(np.argmax(full)),
            )
        )

    def monitors(self) -> Monitors:
        arr = np.array(self.rows, dtype=float).reshape(-1, 5)
        return Monitors(
            t=arr[:, 0],
            sup_norm=arr[:, 1],
            energy=arr[:, 2],
            min_value=arr[:, 3],
            argmax_node=arr[:, 4].astype(int),
        )


def _full_state(ui: np.ndarray, g: Grid) -> np.ndarray:
    full = np.zeros(g.n_interior + 2)
    full[1:-1] = ui
    return full


def _error_norm(err, y_old, y_new, cfg) -> float:
    scale = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(y_old), np.abs(y_new))
    ratio = err / scale
    return float(np.sqrt(np.mean(ratio * ratio)))


def _integrate_from(t0, ui, spec, g, cfg, recorder, snapshots, record_initial):
    """March from (t0, ui) until a stop condition; returns (status, t, y, acc, rej)."""
    t = t0
    y = np.asarray(ui, dtype=float).copy()
    full = _full_state(y, g)
    pending = [s for s in cfg.snapshot_times if s > t0]
    if record_initial:
        recorder.record(t, full, g, spec.p)
        if t0 in cfg.snapshot_times:
            snapshots.append((t0, full.copy()))
    last_record_t = t0

    dt = cfg.dt_init
    k = np.empty((7, y.size))
    k[0] = rhs_interior(y, spec, g)
    err_prev = 1e-4
    n_acc = n_rej = 0
    steps_since_record = 0
    status = None

    while True:
        if t >= cfg.t_max:
            status = Status.REACHED_HORIZON
            break
        # controller-driven underflow, before any clamping to targets
        if dt < cfg.dt_min or t + dt == t:
            status = Status.STEP_UNDERFLOW
            break
        dt_step = dt
        t_target = None
        if t + dt_step >= cfg.t_max:
            dt_step = cfg.t_max - t
            t_target = cfg.t_max
        if pending and t + dt_step > pending[0]:
            dt_step = pending[0] - t
            t_target = pending[0]

        bad = False
        for i in range(1, 7):
            yi = y + dt_step * (k[:i].T @ _A[i])
            if not np.all(np.isfinite(yi)):
                bad = True
                break
            k[i] = rhs_interior(yi, spec, g)
            if not np.all(np.isfinite(k[i])):
                bad = True
                break
        if not bad:
            y_new = y + dt_step * (k.T @ _B5)  # stage-7 argument (FSAL)
            bad = not np.all(np.isfinite(y_new))
        if bad:
            n_rej += 1
            dt = 0.5 * dt_step
            continue
        err = _error_norm(dt_step * (k.T @ _E), y, y_new, cfg)
        if not np.isfinite(err):
            n_rej += 1
            dt = 0.5 * dt_step
            continue
        if err > 1.0:
            n_rej += 1
            dt = dt_step * max(_MIN_FACTOR, _SAFETY * err ** -0.2)
            continue

        # accepted
        n_acc += 1
        steps_since_record += 1
        t = t_target if t_target is not None else t + dt_step
        y = y_new
        k[0] = k[6]
        full = _full_state(y, g)

        if pending and t >= pending[0]:
            snapshots.append((t, full.copy()))
            pending.pop(0)
        if steps_since_record >= cfg.monitor_stride:
            recorder.record(t, full, g, spec.p)
            last_record_t = t
            steps_since_record = 0

        if float(np.max(np.abs(full))) >= cfg.blowup_threshold:
            status = Status.BLEW_UP
            break

        if err == 0.0:
            factor = _MAX_FACTOR
        else:
            factor = _SAFETY * err ** -_ERR_EXP * err_prev**_PREV_EXP
            factor = min(_MAX_FACTOR, max(_MIN_FACTOR, factor))
        err_prev = max(err, 1e-10)
        dt = dt_step * factor

    if t > last_record_t:
        recorder.record(t, full, g, spec.p)
    return status, t, y, n_acc, n_rej


def integrate(spec: ProblemSpec, g: Grid, cfg: IntegratorConfig) -> Trajectory:
    """Integrate the semidiscrete system from the spec's initial data."""
    u0 = np.asarray(spec.u0_samples, dtype=float)
    if u0.shape != (g.n_interior + 2,):
        raise ValueError("initial data is not aligned with the grid")
    sup0 = float(np.max(np.abs(u0)))
    if cfg.blowup_threshold <= sup0:
        raise ValueError(
            f"blowup_threshold ({cfg.blowup_threshold}) must exceed the "
            f"initial sup norm ({sup0})"
        )
    recorder = _Recorder()
    snapshots: list[tuple[float, np.ndarray]] = []
    status, t, y, n_acc, n_rej = _integrate_from(
        0.0, u0[1:-1], spec, g, cfg, recorder, snapshots, record_initial=True
    )
    final = _full_state(y, g)
    if not snapshots or snapshots[-1][0] < t:
        snapshots.append((t, final.copy()))
    return Trajectory(
        grid=g,
        monitors=recorder.monitors(),
        snapshots=snapshots,
        status=status,
        t_stop=t,
        final_state=final,
        n_accepted=n_acc,
        n_rejected=n_rej,
    )


def resume(traj: Trajectory, spec: ProblemSpec, g: Grid, cfg: IntegratorConfig) -> Trajectory:
    """Continue a horizon-limited trajectory under a new configuration.

    Monitor and snapshot series are concatenated; nothing is re-recorded at
    the junction time.
    """
    if traj.status is not Status.REACHED_HORIZON:
        raise RuntimeError(
            f"can only resume a ReachedHorizon trajectory, got {traj.status.value}"
        )
    sup = float(np.max(np.abs(traj.final_state)))
    if cfg.blowup_threshold <= sup:
        raise ValueError("blowup_threshold must exceed the current sup norm")
    recorder = _Recorder()
    snapshots: list[tuple[float, np.ndarray]] = []
    status, t, y, n_acc, n_rej = _integrate_from(
        traj.t_stop,
        traj.final_state[1:-1],
        spec,
        g,
        cfg,
        recorder,
        snapshots,
        record_initial=False,
    )
    final = _full_state(y, g)
    old = traj.monitors
    if recorder.rows:
        new = recorder.monitors()
        monitors = Monitors(
            t=np.concatenate([old.t, new.t]),
            sup_norm=np.concatenate([old.sup_norm, new.sup_norm]),
            energy=np.concatenate([old.energy, new.energy]),
            min_value=np.concatenate([old.min_value, new.min_value]),
            argmax_node=np.concatenate([old.argmax_node, new.argmax_node]),
        )
    else:
        monitors = old
    all_snapshots = list(traj.snapshots) + snapshots
    if not all_snapshots or all_snapshots[-1][0] < t:
        all_snapshots.append((t, final.copy()))
    return Trajectory(
        grid=g,
        monitors=monitors,
        snapshots=all_snapshots,
        status=status,
        t_stop=t,
        final_state=final,
        n_accepted=traj.n_accepted + n_acc,
        n_rejected=traj.n_rejected + n_rej,
    )


def with_horizon(cfg: IntegratorConfig, t_max: float) -> IntegratorConfig:
    """Copy of cfg with a new horizon."""
    return replace(cfg, t_max=t_max)
