"""Uniform 1-D grid on [-1, 1], finite-difference operators and discrete norms.

Grid functions are plain numpy arrays of length N + 2 aligned with the
grid nodes; entries 0 and N + 1 sit on the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Uniform grid x_j = -1 + j*h, j = 0..N+1, with h = 2/(N+1)."""

    n_interior: int
    h: float
    nodes: np.ndarray = field(repr=False)

    @property
    def n_nodes(self) -> int:
        return self.n_interior + 2

    @property
    def interior_nodes(self) -> np.ndarray:
        return self.nodes[1:-1]


def build_grid(n_interior: int) -> Grid:
    """Build the uniform grid with `n_interior` interior nodes.

    The endpoints land on -1 and 1 exactly; the spacing is h = 2/(N+1).
    """
    if n_interior < 1:
        raise ValueError(f"n_interior must be >= 1, got {n_interior}")
    n = int(n_interior)
    h = 2.0 / (n + 1)
    nodes = -1.0 + h * np.arange(n + 2)
    nodes[0] = -1.0
    nodes[-1] = 1.0
    return Grid(n_interior=n, h=h, nodes=nodes)


def sample(fn, g: Grid, dirichlet: bool = True) -> np.ndarray:
    """Sample a callable fn(x) on the grid nodes.

    With dirichlet=True the boundary entries are forced to exactly zero,
    which the Dirichlet-constrained operations require.
    """
    u = np.asarray(fn(g.nodes), dtype=float).copy()
    if u.shape != g.nodes.shape:
        raise ValueError("sampled function must return one value per node")
    if dirichlet:
        u[0] = 0.0
        u[-1] = 0.0
    return u


def _check_aligned(u: np.ndarray, g: Grid) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if u.shape != (g.n_interior + 2,):
        raise ValueError(
            f"grid function has length {u.shape}, expected ({g.n_interior + 2},)"
        )
    return u


def second_difference(u: np.ndarray, g: Grid) -> np.ndarray:
    """Three-point second difference (u_{j+1} - 2u_j + u_{j-1})/h^2 on interior nodes."""
    u = _check_aligned(u, g)
    return (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (g.h * g.h)


def central_difference(u: np.ndarray, g: Grid) -> np.ndarray:
    """Central first difference (u_{j+1} - u_{j-1})/(2h) on interior nodes."""
    u = _check_aligned(u, g)
    return (u[2:] - u[:-2]) / (2.0 * g.h)


def forward_difference(u: np.ndarray, g: Grid) -> np.ndarray:
    """One-sided difference (u_{j+1} - u_j)/h on interior nodes."""
    u = _check_aligned(u, g)
    return (u[2:] - u[1:-1]) / g.h


def backward_difference(u: np.ndarray, g: Grid) -> np.ndarray:
    """One-sided difference (u_j - u_{j-1})/h on interior nodes."""
    u = _check_aligned(u, g)
    return (u[1:-1] - u[:-2]) / g.h


def discrete_norm(u: np.ndarray, g: Grid, alpha: float) -> float:
    """Discrete norm of a grid function.

    For finite alpha >= 1 this is the h-weighted interior sum
    (sum_{j=1..N} h |u_j|^alpha)^(1/alpha); alpha = inf gives the sup norm
    over all nodes including the boundary.
    """
    u = _check_aligned(u, g)
    if math.isinf(alpha):
        return float(np.max(np.abs(u)))
    if alpha < 1.0:
        raise ValueError(f"alpha must be >= 1 or inf, got {alpha}")
    interior = np.abs(u[1:-1])
    if not interior.size:
        return 0.0
    top = interior.max()
    if top == 0.0:
        return 0.0
    # factor out the peak to avoid overflow for large solution values
    s = float(np.sum((interior / top) ** alpha)) * g.h
    return top * s ** (1.0 / alpha)


def mesh_rule(h0: float, b_inf: float, q: float, M: float) -> float:
    """Advisory mesh-size rule min(h0, ((2/(b_inf*q)) * M^(1-q))^(1/(2-q))).

    Degenerate without gradient damping: b_inf = 0 returns h0.
    """
    if h0 <= 0.0:
        raise ValueError("h0 must be positive")
    if q >= 2.0:
        raise ValueError(f"mesh rule requires q < 2, got q={q}")
    if M <= 0.0:
        raise ValueError("M must be positive")
    if b_inf < 0.0:
        raise ValueError("b_inf must be nonnegative")
    if b_inf == 0.0:
        return h0
    bound = ((2.0 / (b_inf * q)) * M ** (1.0 - q)) ** (1.0 / (2.0 - q))
    return min(h0, bound)
