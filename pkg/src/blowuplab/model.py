"""Problem data for u_t = u_xx + |u|^p - b(x)|u_x|^q with zero Dirichlet boundary.

Holds the exponents, the sampled damping coefficient and initial data, the
semidiscrete right-hand side, the discrete energy, the critical constants
of the blow-up theorem, and the local Lipschitz bound of the nonlinearity.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .grid import Grid, central_difference, discrete_norm, sample, second_difference

# Relative slack when deciding whether q sits exactly at the critical exponent.
_Q_CRIT_RTOL = 1e-12


@dataclass(frozen=True)
class ProblemSpec:
    """Exponents p, q plus nodal samples of b(x) and the initial data."""

    p: float
    q: float
    b_samples: np.ndarray = field(repr=False)
    u0_samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.p <= 1.0:
            raise ValueError(f"p must exceed 1, got {self.p}")
        if self.q <= 1.0:
            raise ValueError(f"q must exceed 1, got {self.q}")
        b = np.asarray(self.b_samples, dtype=float)
        u0 = np.asarray(self.u0_samples, dtype=float)
        if b.shape != u0.shape:
            raise ValueError("b_samples and u0_samples must have equal length")
        if np.any(b < 0.0):
            raise ValueError("b must be nonnegative")
        if np.any(u0 < 0.0):
            raise ValueError("initial data must be nonnegative")
        if u0[0] != 0.0 or u0[-1] != 0.0:
            raise ValueError("initial data must vanish on the boundary")
        object.__setattr__(self, "b_samples", b)
        object.__setattr__(self, "u0_samples", u0)
        q_crit = 2.0 * self.p / (self.p + 1.0)
        if self.q > q_crit * (1.0 + _Q_CRIT_RTOL):
            warnings.warn(
                f"q={self.q} exceeds the critical exponent 2p/(p+1)={q_crit:.6g}; "
                "the blow-up theorem does not apply",
                stacklevel=2,
            )

    @property
    def b_inf(self) -> float:
        return float(np.max(self.b_samples))

    @classmethod
    def from_functions(cls, p, q, b_fn, u0_fn, g: Grid) -> "ProblemSpec":
        """Sample b(x) and u0(x) on the grid nodes (u0 gets exact zero boundary)."""
        return cls(
            p=float(p),
            q=float(q),
            b_samples=sample(b_fn, g, dirichlet=False),
            u0_samples=sample(u0_fn, g, dirichlet=True),
        )


def q_critical(p: float) -> float:
    """Critical gradient exponent 2p/(p+1)."""
    return 2.0 * p / (p + 1.0)


def is_critical_q(p: float, q: float) -> bool:
    return math.isclose(q, q_critical(p), rel_tol=_Q_CRIT_RTOL)


@dataclass(frozen=True)
class CriticalConstants:
    """Constants entering the blow-up criteria.

    norm_threshold is None when beta <= 0: at the critical exponent the
    size condition on the initial data is replaced by the bound on b_inf.
    """

    q_crit: float
    b_crit: float
    c: float
    beta: float
    norm_threshold: float | None

    @classmethod
    def from_parameters(cls, p: float, q: float, b_inf: float) -> "CriticalConstants":
        if p <= 1.0 or q <= 1.0:
            raise ValueError("constants require p > 1 and q > 1")
        q_crit = q_critical(p)
        b_crit = 0.5 * (p - 1.0) * (2.0 / (p + 1.0)) ** (1.0 / (p + 1.0))
        c = b_inf * (2.0 / (p + 1.0)) ** (q / 2.0)
        beta = p - q * (p + 1.0) / 2.0
        if is_critical_q(p, q):
            beta = 0.0
        if beta > 0.0:
            threshold = (c * (p + 1.0) / (p - 1.0)) ** (1.0 / beta)
        else:
            threshold = None
        return cls(q_crit=q_crit, b_crit=b_crit, c=c, beta=beta, norm_threshold=threshold)


def critical_constants(spec: ProblemSpec) -> CriticalConstants:
    return CriticalConstants.from_parameters(spec.p, spec.q, spec.b_inf)


def rhs(u: np.ndarray, spec: ProblemSpec, g: Grid) -> np.ndarray:
    """Semidiscrete right-hand side on the interior nodes.

    Entry j is d2_x u_j + |u_j|^p - b_j |d_x u_j|^q for j = 1..N; the
    boundary entries of u are taken as given (zero for Dirichlet states).
    """
    u = np.asarray(u, dtype=float)
    if not np.all(np.isfinite(u)):
        raise RuntimeError("non-finite state passed to rhs")
    diff = second_difference(u, g)
    grad = central_difference(u, g)
    ui = u[1:-1]
    return diff + np.abs(ui) ** spec.p - spec.b_samples[1:-1] * np.abs(grad) ** spec.q


def rhs_interior(ui: np.ndarray, spec: ProblemSpec, g: Grid) -> np.ndarray:
    """rhs for an interior-only state vector, zero boundary implied.

    This is the integrator's hot path; it skips finiteness validation
    (the step controller rejects non-finite results).
    """
    h = g.h
    b = spec.b_samples[1:-1]
    n = ui.size
    du = np.empty_like(ui)
    grad = np.empty_like(ui)
    # stencils with zero boundary entries folded in
    if n == 1:
        du[0] = -2.0 * ui[0]
        grad[0] = 0.0
    else:
        du[0] = ui[1] - 2.0 * ui[0]
        du[-1] = ui[-2] - 2.0 * ui[-1]
        grad[0] = ui[1]
        grad[-1] = -ui[-2]
        if n > 2:
            du[1:-1] = ui[2:] - 2.0 * ui[1:-1] + ui[:-2]
            grad[1:-1] = ui[2:] - ui[:-2]
    du /= h * h
    grad /= 2.0 * h
    return du + np.abs(ui) ** spec.p - b * np.abs(grad) ** spec.q


def energy(u: np.ndarray, g: Grid, p: float) -> float:
    """Discrete energy 1/2 sum (u_j - u_{j-1})^2/h - 1/(p+1) sum h |u_j|^{p+1}.

    Both sums run over j = 1..N+1. |u|^{p+1} keeps the potential term
    finite for transient negative values at non-integer p; it coincides
    with u^{p+1} on nonnegative states.
    """
    u = np.asarray(u, dtype=float)
    jumps = np.diff(u)
    grad_part = 0.5 * float(np.sum(jumps * jumps)) / g.h
    pot_part = g.h * float(np.sum(np.abs(u[1:]) ** (p + 1.0))) / (p + 1.0)
    return grad_part - pot_part


@dataclass(frozen=True)
class CriteriaReport:
    """Measured blow-up criteria for a problem instance.

    b_below_crit applies only at the critical exponent, norm_above_threshold
    only below it; the inapplicable one is None. theorem_applies records
    whether the sufficient conditions as a whole are met.
    """

    J0: float
    J0_negative: bool
    q_regime: str  # "subcritical" | "critical" | "supercritical"
    b_inf: float
    b_crit: float
    b_below_crit: bool | None
    norm_p1: float
    norm_threshold: float | None
    norm_above_threshold: bool | None
    initial_derivative_min: float
    initial_derivative_nonneg: bool
    theorem_applies: bool
    constants: CriticalConstants

    def summary_lines(self) -> list[str]:
        c = self.constants
        lines = [
            f"J(0) = {self.J0:.6g}  [{'PASS' if self.J0_negative else 'FAIL'}] J(0) < 0",
            f"q regime: {self.q_regime} (q_crit = {c.q_crit:.6g})",
            f"c = {c.c:.6g}, beta = {c.beta:.6g}, b_crit = {self.b_crit:.6g}",
        ]
        if self.b_below_crit is not None:
            lines.append(
                f"b_inf = {self.b_inf:.6g}  "
                f"[{'PASS' if self.b_below_crit else 'FAIL'}] b_inf < b_crit"
            )
        if self.norm_above_threshold is not None:
            lines.append(
                f"||U0||_(p+1) = {self.norm_p1:.6g} vs threshold {self.norm_threshold:.6g}  "
                f"[{'PASS' if self.norm_above_threshold else 'FAIL'}] norm above threshold"
            )
        lines.append(
            f"min_j dU/dt(0) = {self.initial_derivative_min:.6g}  "
            f"[{'PASS' if self.initial_derivative_nonneg else 'FAIL'}] initial derivative >= 0"
        )
        lines.append(f"sufficient blow-up conditions met: {self.theorem_applies}")
        return lines


def check_blowup_criteria(spec: ProblemSpec, g: Grid) -> CriteriaReport:
    """Evaluate the sufficient blow-up conditions on the initial data.

    Nothing is raised on failure; every condition is reported with its
    measured quantity.
    """
    consts = critical_constants(spec)
    j0 = energy(spec.u0_samples, g, spec.p)
    j0_negative = bool(j0 < 0.0)
    norm_p1 = discrete_norm(spec.u0_samples, g, spec.p + 1.0)
    du0 = rhs(spec.u0_samples, spec, g)
    du0_min = float(du0.min()) if du0.size else 0.0
    sign_ok = bool(du0_min >= 0.0)

    if is_critical_q(spec.p, spec.q):
        regime = "critical"
        b_ok = bool(spec.b_inf < consts.b_crit)
        norm_ok = None
        applies = j0_negative and b_ok
    elif spec.q < consts.q_crit:
        regime = "subcritical"
        b_ok = None
        norm_ok = bool(norm_p1 > consts.norm_threshold)
        applies = j0_negative and norm_ok
    else:
        regime = "supercritical"
        b_ok = None
        norm_ok = None
        applies = False

    return CriteriaReport(
        J0=j0,
        J0_negative=j0_negative,
        q_regime=regime,
        b_inf=spec.b_inf,
        b_crit=consts.b_crit,
        b_below_crit=b_ok,
        norm_p1=norm_p1,
        norm_threshold=consts.norm_threshold,
        norm_above_threshold=norm_ok,
        initial_derivative_min=du0_min,
        initial_derivative_nonneg=sign_ok,
        theorem_applies=applies,
        constants=consts,
    )


def lipschitz_bound(radius: float, center_norm2: float, g: Grid, spec: ProblemSpec) -> float:
    """Local Lipschitz constant of the semidiscrete nonlinearity on a ball.

    4/h + (p/h^((p-1)/2) + q*b_inf/h^((3q-1)/2)) * (2*center_norm2 + radius)^(p-1),
    where center_norm2 is the h-weighted 2-norm of the ball's center.
    """
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    h = g.h
    p, q = spec.p, spec.q
    growth = (2.0 * center_norm2 + radius) ** (p - 1.0)
    return 4.0 / h + (p / h ** ((p - 1.0) / 2.0) + q * spec.b_inf / h ** ((3.0 * q - 1.0) / 2.0)) * growth
