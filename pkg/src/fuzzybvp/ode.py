"""Crisp machinery: RK4 integration, fundamental bases, weight functions, BVPs.

A linear ODE of order n,

    x^(n) + a_1(t) x^(n-1) + ... + a_n(t) x = f(t),

is integrated as a first-order companion system with classical fixed-step
RK4.  A fundamental basis is generated from canonical initial states; the
boundary matrix collects basis values at the boundary points, and the
weight functions are the basis combined with the inverse boundary matrix.
The value of any solution at time t is then the weight vector at t applied
to the boundary values, which is what the fuzzy layer builds on.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .expressions import ZERO, Expression

DEFAULT_STEPS = 1000
SINGULARITY_RTOL = 1e-12
KRONECKER_TOL = 1e-9


class NonUniqueCrispSolution(Exception):
    """The boundary matrix is numerically singular: the crisp two-point
    problem has no unique solution, so no fuzzy band is produced."""


class IntegrationError(Exception):
    """The integrator produced a non-finite state."""


@dataclass(frozen=True)
class LinearODE:
    """Order-n linear ODE with expression coefficients and forcing."""

    order: int
    coeffs: tuple[Expression, ...]
    forcing: Expression

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 1:
            raise ValueError(f"order must be a positive integer, got {self.order}")
        coeffs = tuple(self.coeffs)
        if len(coeffs) != self.order:
            raise ValueError(f"expected {self.order} coefficient expressions, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_strings(cls, order: int, coeffs: Sequence[str], forcing: str) -> "LinearODE":
        from .expressions import parse

        return cls(order, tuple(parse(c) for c in coeffs), parse(forcing))

    def homogeneous(self) -> "LinearODE":
        return replace(self, forcing=ZERO)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid of num_points nodes on [t0, t_end]."""

    t0: float
    t_end: float
    num_points: int

    def __post_init__(self):
        if not self.t_end > self.t0:
            raise ValueError(f"need t_end > t0, got [{self.t0}, {self.t_end}]")
        if self.num_points < 2:
            raise ValueError(f"need at least 2 grid points, got {self.num_points}")

    @property
    def step(self) -> float:
        return (self.t_end - self.t0) / (self.num_points - 1)

    def nodes(self) -> np.ndarray:
        return np.linspace(self.t0, self.t_end, self.num_points)

    def contains(self, t: float) -> bool:
        slack = 1e-12 * (self.t_end - self.t0)
        return self.t0 - slack <= t <= self.t_end + slack


def _hermite_segment(grid: TimeGrid, t: float) -> tuple[int, float]:
    """Segment index and normalized offset for cubic Hermite evaluation."""
    if not grid.contains(t):
        raise ValueError(f"t = {t} outside the grid interval [{grid.t0}, {grid.t_end}]")
    h = grid.step
    i = int(np.floor((t - grid.t0) / h))
    i = min(max(i, 0), grid.num_points - 2)
    s = (t - (grid.t0 + i * h)) / h
    return i, s


def _hermite_weights(s: float) -> tuple[float, float, float, float]:
    s2, s3 = s * s, s * s * s
    return (2.0 * s3 - 3.0 * s2 + 1.0, s3 - 2.0 * s2 + s,
            -2.0 * s3 + 3.0 * s2, s3 - s2)


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution: per-node state vectors (x, x', ..., x^(n-1)).

    ``slopes`` holds d/dt of the value channel so that off-node values can
    be interpolated with cubic Hermite polynomials (4th-order accurate,
    matching the integrator).
    """

    grid: TimeGrid
    states: np.ndarray = field(repr=False)
    slopes: np.ndarray = field(repr=False)

    def __post_init__(self):
        states = np.array(self.states, dtype=float)
        if states.ndim != 2 or states.shape[0] != self.grid.num_points:
            raise ValueError("states must have one row per grid node")
        slopes = np.array(self.slopes, dtype=float)
        if slopes.shape != (self.grid.num_points,):
            raise ValueError("slopes must hold one value per grid node")
        if not np.isfinite(states).all() or not np.isfinite(slopes).all():
            raise ValueError("trajectory contains non-finite entries")
        states.flags.writeable = False
        slopes.flags.writeable = False
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "slopes", slopes)

    @property
    def order(self) -> int:
        return self.states.shape[1]

    @property
    def values(self) -> np.ndarray:
        return self.states[:, 0]

    def value(self, t: float) -> float:
        """Solution value at t (exact at nodes, cubic Hermite in between)."""
        i, s = _hermite_segment(self.grid, t)
        if s == 0.0:
            return float(self.states[i, 0])
        h = self.grid.step
        w0, w1, w2, w3 = _hermite_weights(s)
        return float(w0 * self.states[i, 0] + w1 * h * self.slopes[i]
                     + w2 * self.states[i + 1, 0] + w3 * h * self.slopes[i + 1])


def integrate_ivp(ode: LinearODE, initial_state, grid: TimeGrid) -> Trajectory:
    """Integrate the companion first-order system with classical RK4.

    Coefficients and forcing are evaluated once on the half-step lattice
    (where all RK4 stage times fall for a fixed step), so the stepping loop
    is pure arithmetic.  Raises IntegrationError when a state stops being
    finite.
    """
    n = ode.order
    state = np.array(initial_state, dtype=float)
    if state.shape != (n,):
        raise ValueError(f"initial state must have {n} components, got shape {state.shape}")

    steps = grid.num_points - 1
    h = grid.step
    half_times = grid.t0 + 0.5 * h * np.arange(2 * steps + 1)
    half_times[-1] = grid.t_end
    coeff_vals = np.array([[c.evaluate(float(t)) for t in half_times] for c in ode.coeffs])
    force_vals = np.array([ode.forcing.evaluate(float(t)) for t in half_times])

    def rhs(s: np.ndarray, k: int) -> np.ndarray:
        d = np.empty(n)
        d[: n - 1] = s[1:]
        d[n - 1] = force_vals[k] - coeff_vals[:, k] @ s[::-1]
        return d

    states = np.empty((grid.num_points, n))
    states[0] = state
    sixth = h / 6.0
    # overflow is detected via the finiteness check, not numpy warnings
    with np.errstate(over="ignore", invalid="ignore"):
        for j in range(steps):
            k = 2 * j
            d1 = rhs(state, k)
            d2 = rhs(state + 0.5 * h * d1, k + 1)
            d3 = rhs(state + 0.5 * h * d2, k + 1)
            d4 = rhs(state + h * d3, k + 2)
            state = state + sixth * (d1 + 2.0 * (d2 + d3) + d4)
            if not np.isfinite(state).all():
                raise IntegrationError(
                    f"integration blew up at node {j + 1} (t = {half_times[k + 2]:g})")
            states[j + 1] = state

    if n >= 2:
        slopes = states[:, 1].copy()
    else:
        slopes = force_vals[::2] - coeff_vals[0, ::2] * states[:, 0]
    return Trajectory(grid, states, slopes)


def homogeneous_basis(ode: LinearODE, grid: TimeGrid) -> tuple[Trajectory, ...]:
    """n fundamental solutions from canonical initial states e_1, ..., e_n.

    The state matrix at t0 is the identity, so the set is linearly
    independent (unit Wronskian at t0).
    """
    homogeneous = ode.homogeneous()
    return tuple(integrate_ivp(homogeneous, np.eye(ode.order)[i], grid)
                 for i in range(ode.order))


def boundary_matrix(basis: Sequence[Trajectory], points: Sequence[float]) -> np.ndarray:
    """Matrix with entry [j, i] = value of basis solution i at boundary point j."""
    grid = basis[0].grid
    mat = np.empty((len(points), len(basis)))
    for j, p in enumerate(points):
        if not grid.contains(p):
            raise ValueError(f"boundary point {p} outside [{grid.t0}, {grid.t_end}]")
        for i, traj in enumerate(basis):
            mat[j, i] = traj.value(p)
    return mat


def require_invertible(mat: np.ndarray) -> None:
    """Scale-invariant singularity test; raises NonUniqueCrispSolution."""
    n = mat.shape[0]
    det = float(np.linalg.det(mat))
    scale = float(np.abs(mat).sum(axis=1).max()) ** n
    if abs(det) <= SINGULARITY_RTOL * scale:
        raise NonUniqueCrispSolution(
            f"boundary matrix is numerically singular (|det| = {abs(det):.3e}, "
            f"threshold {SINGULARITY_RTOL * scale:.3e}); the crisp problem has "
            f"no unique solution")


@dataclass(frozen=True)
class WeightBasis:
    """Fundamental basis together with per-node weight functions.

    ``weights[k, i]`` is the i-th weight at grid node k; the weight vector
    at t maps the boundary values to the homogeneous solution value at t,
    so weight i equals 1 at boundary point i and 0 at the others.
    """

    grid: TimeGrid
    basis: tuple[Trajectory, ...]
    boundary_points: tuple[float, ...]
    matrix: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    weight_slopes: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.basis)

    def weight_at(self, t: float) -> np.ndarray:
        """Weight vector at t (cubic Hermite off the nodes)."""
        i, s = _hermite_segment(self.grid, t)
        if s == 0.0:
            return self.weights[i].copy()
        h = self.grid.step
        w0, w1, w2, w3 = _hermite_weights(s)
        return (w0 * self.weights[i] + w1 * h * self.weight_slopes[i]
                + w2 * self.weights[i + 1] + w3 * h * self.weight_slopes[i + 1])


def weight_functions(basis: Sequence[Trajectory], boundary_points: Sequence[float]) -> WeightBasis:
    """Weight functions: basis values combined with the inverse boundary matrix."""
    basis = tuple(basis)
    points = tuple(float(p) for p in boundary_points)
    mat = boundary_matrix(basis, points)
    require_invertible(mat)
    inv = np.linalg.inv(mat)
    values = np.column_stack([traj.values for traj in basis])
    slopes = np.column_stack([traj.slopes for traj in basis])
    weights = values @ inv
    weight_slopes = slopes @ inv
    for arr in (mat, weights, weight_slopes):
        arr.flags.writeable = False
    wb = WeightBasis(basis[0].grid, basis, points, mat, weights, weight_slopes)
    for j, p in enumerate(points):
        unit = np.zeros(len(points))
        unit[j] = 1.0
        if np.max(np.abs(wb.weight_at(p) - unit)) > KRONECKER_TOL:
            raise RuntimeError(
                f"weight functions fail the unit property at boundary point {p}")
    return wb


def _validate_boundary(order: int, boundary) -> tuple[list[float], np.ndarray]:
    points = [float(p) for p, _ in boundary]
    values = np.array([float(v) for _, v in boundary])
    if len(points) != order:
        raise ValueError(f"expected {order} boundary conditions, got {len(points)}")
    if len(set(points)) != len(points):
        raise ValueError(f"boundary points must be distinct, got {points}")
    return points, values


def combine(particular: Trajectory, basis: Sequence[Trajectory],
            coefficients: np.ndarray) -> Trajectory:
    """Particular solution plus a linear combination of basis solutions."""
    states = particular.states.copy()
    slopes = particular.slopes.copy()
    for c, traj in zip(coefficients, basis):
        states += c * traj.states
        slopes += c * traj.slopes
    return Trajectory(particular.grid, states, slopes)


def solve_crisp_bvp(ode: LinearODE, boundary, grid: TimeGrid) -> Trajectory:
    """Solve the non-homogeneous problem with n point-value conditions.

    ``boundary`` is a sequence of (point, value) pairs; the points must be
    distinct and inside the grid interval.  A particular solution is
    integrated from a zero initial state and corrected by the basis
    combination that matches the boundary values.
    """
    points, values = _validate_boundary(ode.order, boundary)
    basis = homogeneous_basis(ode, grid)
    particular = integrate_ivp(ode, np.zeros(ode.order), grid)
    mat = boundary_matrix(basis, points)
    require_invertible(mat)
    residual = values - np.array([particular.value(p) for p in points])
    coefficients = np.linalg.solve(mat, residual)
    return combine(particular, basis, coefficients)
