"""Box-constrained minimization of the summed squared modal coordinates.

The objective F(x) = sum_i L_i(x)^2 over the fitted quadratic surfaces L_i is
a smooth quartic; it is minimized by polishing a dense grid of starts with
projected gradient descent (closed-form gradient, Armijo backtracking). All
starts are advanced in lockstep with vectorized array ops, and the reduction
to a single winner is ordered, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .doe import FactorSpace, to_physical
from .errors import NumericError, ValidationError
from .rsm import QuadraticModel, model_matrix, predict

DEFAULT_GRID_PER_AXIS = 21
_ARMIJO_C1 = 1e-4
_STEP_TOL = 1e-16
_GRAD_TOL = 1e-11


def default_bounds(n_factors: int) -> np.ndarray:
    """The factorial cube [-1, +1] per factor."""
    return np.array([[-1.0, 1.0]] * n_factors)


@dataclass(frozen=True)
class ObjectiveSpec:
    """Models to square-and-sum plus the normalized search box."""

    models: tuple[QuadraticModel, ...]
    bounds: np.ndarray = None  # (n_factors, 2); defaults to [-1, 1] per factor

    def __post_init__(self):
        models = tuple(self.models)
        if not models:
            raise ValidationError("objective needs at least one model")
        f = len(models[0].factor_names)
        if any(len(m.factor_names) != f for m in models):
            raise ValidationError("all models must share the same factor count")
        object.__setattr__(self, "models", models)
        bounds = self.bounds
        if bounds is None:
            bounds = default_bounds(f)
        bounds = np.asarray(bounds, dtype=float)
        if bounds.shape != (f, 2) or np.any(bounds[:, 0] >= bounds[:, 1]):
            raise ValidationError(f"bounds must be ({f}, 2) with lo < hi")
        object.__setattr__(self, "bounds", bounds)

    @property
    def n_factors(self) -> int:
        return len(self.models[0].factor_names)

    def coefficient_stack(self) -> np.ndarray:
        """Model coefficients as one (n_terms, n_models) array."""
        return np.column_stack([m.coefficients for m in self.models])


@dataclass(frozen=True)
class ConvergenceReport:
    starts: int
    iterations: int        # accepted descent steps summed over all starts
    gradient_norm: float   # projected gradient norm at the returned point


@dataclass(frozen=True)
class Optimum:
    point: np.ndarray             # normalized coordinates, inside the box
    f_value: float
    predicted: np.ndarray         # model values L_i at the optimum
    report: ConvergenceReport
    physical: np.ndarray | None = None  # physical coordinates when a space is given


def _f_batch(coef: np.ndarray, points: np.ndarray) -> np.ndarray:
    l = model_matrix(points) @ coef
    return np.einsum("ij,ij->i", l, l)


def _grad_batch(coef: np.ndarray, points: np.ndarray) -> np.ndarray:
    """Gradient of F at each point: 2 * sum_i L_i * dL_i/dx."""
    x = np.atleast_2d(points)
    n, f = x.shape
    l = model_matrix(x) @ coef  # (n, n_models)
    grad = np.empty((n, f))
    pairs = [(i, j) for i in range(f) for j in range(i + 1, f)]
    for k in range(f):
        dmm = np.zeros((n, coef.shape[0]))
        dmm[:, 1 + k] = 1.0
        for p, (i, j) in enumerate(pairs):
            if i == k:
                dmm[:, 1 + f + p] = x[:, j]
            elif j == k:
                dmm[:, 1 + f + p] = x[:, i]
        dmm[:, 1 + f + len(pairs) + k] = 2.0 * x[:, k]
        dl = dmm @ coef
        grad[:, k] = 2.0 * np.einsum("ij,ij->i", l, dl)
    return grad


def objective_f(spec: ObjectiveSpec, point) -> float:
    """F = sum of squared model predictions; defined for any point."""
    point = np.asarray(point, dtype=float)
    if point.ndim != 1 or point.size != spec.n_factors:
        raise ValidationError(
            f"point length {point.size} != factor count {spec.n_factors}")
    return float(_f_batch(spec.coefficient_stack(), point[None, :])[0])


def objective_gradient(spec: ObjectiveSpec, point) -> np.ndarray:
    """Closed-form gradient of F at one point."""
    point = np.asarray(point, dtype=float)
    if point.ndim != 1 or point.size != spec.n_factors:
        raise ValidationError(
            f"point length {point.size} != factor count {spec.n_factors}")
    return _grad_batch(spec.coefficient_stack(), point[None, :])[0]


def _grid_points(bounds: np.ndarray, per_axis: int) -> np.ndarray:
    axes = [np.linspace(lo, hi, per_axis) for lo, hi in bounds]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=1)


def minimize(spec: ObjectiveSpec, space: FactorSpace | None = None,
             grid_per_axis: int = DEFAULT_GRID_PER_AXIS,
             max_iterations: int = 500) -> Optimum:
    """Multi-start projected gradient descent over the box.

    Seeds a uniform grid (grid_per_axis points per factor), polishes every
    seed with backtracking gradient descent projected onto the box, and
    returns the best polished point. Exactly tied objective values are broken
    toward the lexicographically smallest coordinates.
    """
    if grid_per_axis < 2:
        raise ValidationError(f"grid_per_axis must be >= 2, got {grid_per_axis}")
    coef = spec.coefficient_stack()
    lo = spec.bounds[:, 0]
    hi = spec.bounds[:, 1]
    x = _grid_points(spec.bounds, grid_per_axis)
    f_cur = _f_batch(coef, x)
    if not np.all(np.isfinite(f_cur)):
        bad = x[int(np.flatnonzero(~np.isfinite(f_cur))[0])]
        raise NumericError(f"objective is not finite at seed {bad.tolist()}")
    n_starts = x.shape[0]
    alive = np.ones(n_starts, dtype=bool)
    step = np.ones(n_starts)
    prev_x = np.full_like(x, np.nan)
    prev_g = np.full_like(x, np.nan)
    accepted_steps = 0
    for _ in range(max_iterations):
        idx = np.flatnonzero(alive)
        if idx.size == 0:
            break
        xa = x[idx]
        g = _grad_batch(coef, xa)
        pg = xa - np.clip(xa - g, lo, hi)
        done = np.sqrt(np.einsum("ij,ij->i", pg, pg)) <= _GRAD_TOL
        if done.any():
            alive[idx[done]] = False
            idx = idx[~done]
            if idx.size == 0:
                continue
            xa = xa[~done]
            g = g[~done]
        fa = f_cur[idx]
        # spectral (Barzilai-Borwein) initial step where curvature info exists,
        # safeguarded by the Armijo backtracking below
        s = xa - prev_x[idx]
        y = g - prev_g[idx]
        sy = np.einsum("ij,ij->i", s, y)
        yy = np.einsum("ij,ij->i", y, y)
        t = step[idx].copy()
        with np.errstate(invalid="ignore", divide="ignore"):
            t_bb = sy / yy
        usable = np.isfinite(t_bb) & (t_bb > 0)
        t[usable] = np.clip(t_bb[usable], 1e-10, 1e10)
        prev_x[idx] = xa
        prev_g[idx] = g
        searching = np.ones(idx.size, dtype=bool)
        while searching.any():
            cand = np.clip(xa - t[:, None] * g, lo, hi)
            fc = _f_batch(coef, cand)
            if not np.all(np.isfinite(fc[searching])):
                bad = cand[searching][int(np.flatnonzero(
                    ~np.isfinite(fc[searching]))[0])]
                raise NumericError(
                    f"objective is not finite at {bad.tolist()} during polish")
            decrease = np.einsum("ij,ij->i", g, xa - cand)
            ok = searching & (fc <= fa - _ARMIJO_C1 * decrease)
            if ok.any():
                rows = idx[ok]
                x[rows] = cand[ok]
                f_cur[rows] = fc[ok]
                step[rows] = t[ok] * 2.0
                accepted_steps += int(ok.sum())
                # a start whose objective no longer moves has converged
                stalled = ok & (fa - fc <= 1e-15 * (1.0 + np.abs(fa)))
                if stalled.any():
                    alive[idx[stalled]] = False
                searching &= ~ok
            t[searching] *= 0.5
            exhausted = searching & (t < _STEP_TOL)
            if exhausted.any():
                alive[idx[exhausted]] = False
                searching &= ~exhausted
    f_min = float(np.min(f_cur))
    tie = np.flatnonzero(f_cur <= f_min + 1e-12 * (1.0 + abs(f_min)))
    order = np.lexsort(tuple(x[tie, k] for k in reversed(range(x.shape[1]))))
    winner = tie[order[0]]
    point = x[winner].copy()
    g_win = _grad_batch(coef, point[None, :])[0]
    pg_win = point - np.clip(point - g_win, lo, hi)
    report = ConvergenceReport(
        starts=n_starts,
        iterations=accepted_steps,
        gradient_norm=float(np.sqrt(np.sum(pg_win * pg_win))),
    )
    predicted = np.array([predict(m, point) for m in spec.models])
    physical = to_physical(space, point) if space is not None else None
    return Optimum(point=point, f_value=float(f_cur[winner]),
                   predicted=predicted, report=report, physical=physical)


def grid_oracle(spec: ObjectiveSpec, resolution: int) -> tuple[np.ndarray, float]:
    """Exhaustive argmin of F over a uniform grid; independent check for tests.

    Scans in C order, so among exact ties the lexicographically smallest grid
    point wins.
    """
    if resolution < 3:
        raise ValidationError(f"grid resolution must be >= 3, got {resolution}")
    pts = _grid_points(spec.bounds, resolution)
    f = _f_batch(spec.coefficient_stack(), pts)
    i = int(np.argmin(f))
    return pts[i].copy(), float(f[i])
