"""Maximization of sphere polynomials and derived objectives (slices, widths).

Multi-start projected gradient ascent: a dense coarse scan over quadrature
nodes plus a Fibonacci lattice, followed by backtracking-line-search ascent
from the best candidates.
"""

from dataclasses import dataclass

import numpy as np

from .bodies import StarBody
from .errors import DomainError, OptimizationError, PositivityError
from .harmonics import (
    HarmonicExpansion,
    eval_expansion,
    eval_expansion_gradient,
    eval_expansion_many,
    fibonacci_sphere,
)
from .intersect import intersection_body_approx
from .quadrature import SphereRule, cached_sphere_rule

__all__ = [
    "SphereMaximum",
    "maximize_on_sphere",
    "largest_slice",
    "width",
]

_ARMIJO = 1e-4
_SHRINK = 0.5
_INITIAL_STEP = 0.1
_GRAD_TOL = 1e-8
_MAX_ITER = 500


@dataclass(frozen=True)
class SphereMaximum:
    value: float
    direction: np.ndarray
    refinement_residual: float


class _Objective:
    """Uniform view of an objective: vectorized values plus tangent gradient."""

    def __init__(self, value_many, value_one, gradient):
        self.value_many = value_many
        self.value_one = value_one
        self.gradient = gradient


def _wrap_objective(obj) -> _Objective:
    if isinstance(obj, _Objective):
        return obj
    if isinstance(obj, HarmonicExpansion):
        return _Objective(
            lambda pts: eval_expansion_many(obj, pts),
            lambda x: eval_expansion(obj, x),
            lambda x: eval_expansion_gradient(obj, x),
        )
    if callable(obj):
        def value_many(pts):
            return np.array([float(obj(p)) for p in pts])

        def gradient(x, h=1e-6):
            base = np.asarray(x, dtype=float)
            g = np.empty_like(base)
            for i in range(base.size):
                step = np.zeros_like(base)
                step[i] = h
                up = (base + step) / np.linalg.norm(base + step)
                dn = (base - step) / np.linalg.norm(base - step)
                g[i] = (float(obj(up)) - float(obj(dn))) / (2.0 * h)
            return g - (g @ base) * base

        return _Objective(value_many, lambda x: float(obj(x)), gradient)
    raise DomainError(f"cannot interpret {type(obj).__name__} as a sphere objective")


def _refine(objective: _Objective, start: np.ndarray):
    """Projected gradient ascent with Armijo backtracking; returns
    (value, point, residual, made_progress)."""
    x = np.asarray(start, dtype=float)
    x = x / np.linalg.norm(x)
    value = objective.value_one(x)
    progressed = False
    grad_norm = np.inf
    for _ in range(_MAX_ITER):
        grad = objective.gradient(x)
        grad_norm = float(np.linalg.norm(grad))
        if grad_norm <= _GRAD_TOL:
            break
        step = _INITIAL_STEP
        accepted = False
        while step > 1e-15:
            trial = x + step * grad
            trial /= np.linalg.norm(trial)
            trial_value = objective.value_one(trial)
            if trial_value >= value + _ARMIJO * step * grad_norm * grad_norm:
                x, value = trial, trial_value
                accepted = progressed = True
                break
            step *= _SHRINK
        if not accepted:
            break
    return value, x, grad_norm, progressed


def _canonical_sign(direction: np.ndarray) -> np.ndarray:
    for coord in direction:
        if abs(coord) > 1e-9:
            return direction if coord > 0 else -direction
    return direction


def maximize_on_sphere(obj, restarts: int = 32, grid_k: int = 40,
                       canonicalize_sign: bool = False) -> SphereMaximum:
    """Coarse scan plus multi-start refinement; returns the best refined point."""
    if restarts < 1:
        raise DomainError(f"restarts must be >= 1, got {restarts}")
    objective = _wrap_objective(obj)
    grid = np.vstack([
        cached_sphere_rule(3, grid_k).nodes,
        fibonacci_sphere(4 * (grid_k + 1) ** 2),
    ])
    coarse = objective.value_many(grid)
    order = np.argsort(-coarse, kind="stable")[:restarts]
    best_coarse_value = float(coarse[order[0]])
    best = None
    any_progress = False
    for idx in order:
        value, point, residual, progressed = _refine(objective, grid[idx])
        any_progress = any_progress or progressed
        candidate = (value, tuple(point), residual)
        if best is None or candidate[:2] > best[:2]:
            best = candidate
    value, point, residual = best
    converged = residual <= 1e-7 * (1.0 + abs(value))
    if not converged and not any_progress and value < best_coarse_value:
        raise OptimizationError(
            "all refinements stalled below the coarse scan",
            best_value=best_coarse_value,
            best_direction=grid[order[0]],
        )
    direction = np.asarray(point)
    if canonicalize_sign:
        direction = _canonical_sign(direction)
    return SphereMaximum(float(value), direction, float(residual))


def largest_slice(b: StarBody, k: int, m: int, rule: SphereRule,
                  restarts: int = 32, grid_k: int = 40,
                  filter_k: int | None = None) -> SphereMaximum:
    """Largest-volume central slice via the intersection-body approximation.

    Uses mollifier order filter_k (default 2k, the pairing behind the
    reference slice tables: mollifier degree twice the output degree).
    """
    if filter_k is None:
        filter_k = 2 * k
    expansion = intersection_body_approx(b, k, m, rule, filter_k=filter_k)
    return maximize_on_sphere(expansion, restarts=restarts, grid_k=grid_k,
                              canonicalize_sign=True)


def width(polar_radial: HarmonicExpansion, restarts: int = 32,
          grid_k: int = 40) -> SphereMaximum:
    """Maximize 1/e(x) + 1/e(-x) where e approximates the polar radial function."""
    e = polar_radial

    def _check_positive(values, points):
        bad = np.nonzero(values <= 0.0)[0]
        if bad.size:
            point = np.asarray(points)[bad[0]]
            raise PositivityError(
                f"expansion nonpositive ({values[bad[0]]}) at {point}",
                point=point,
            )

    def value_many(pts):
        fwd = eval_expansion_many(e, pts)
        bwd = eval_expansion_many(e, -np.asarray(pts))
        _check_positive(fwd, pts)
        _check_positive(bwd, -np.asarray(pts))
        return 1.0 / fwd + 1.0 / bwd

    def value_one(x):
        return float(value_many(np.asarray(x, dtype=float)[None, :])[0])

    def gradient(x):
        x = np.asarray(x, dtype=float)
        fwd = eval_expansion(e, x)
        bwd = eval_expansion(e, -x)
        _check_positive(np.array([fwd, bwd]), np.array([x, -x]))
        g_fwd = eval_expansion_gradient(e, x)
        g_bwd = eval_expansion_gradient(e, -x)
        g = -g_fwd / fwd**2 + g_bwd / bwd**2
        return g - (g @ x) * x

    objective = _Objective(value_many, value_one, gradient)
    return maximize_on_sphere(objective, restarts=restarts, grid_k=grid_k,
                              canonicalize_sign=True)
