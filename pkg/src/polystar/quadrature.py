"""Quadrature rules: Gauss-Gegenbauer on [-1, 1] and product rules on spheres.

The sphere rule is built recursively: an equispaced rule on the circle, then
one Gauss-Gegenbauer factor per additional dimension.  A rule for S^{n-1}
exact in degree 2k has 2(k+1)^(n-1) nodes.
"""

import json
import math
import os
import tempfile
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from .errors import DomainError, NumericError
from .gegenbauer import jacobi_offdiagonal, sphere_surface_area

__all__ = [
    "IntervalRule",
    "SphereRule",
    "gauss_gegenbauer",
    "circle_rule",
    "sphere_rule",
    "cached_sphere_rule",
    "moment_oracle",
    "sphere_area",
    "interval_weight_mass",
    "interval_moment",
    "save_rule",
    "load_rule",
]

RULE_FORMAT = "polystar-rule-v1"


def sphere_area(n: int) -> float:
    """mu(S^{n-1}) = 2 pi^(n/2) / Gamma(n/2)."""
    return sphere_surface_area(n)


def interval_weight_mass(alpha: float) -> float:
    """Total mass of the weight (1-t^2)^(alpha-1/2) on [-1, 1]."""
    return math.exp(
        0.5 * math.log(math.pi) + gammaln(alpha + 0.5) - gammaln(alpha + 1.0)
    )


def interval_moment(alpha: float, p: int) -> float:
    """Exact moment of t^p against (1-t^2)^(alpha-1/2) on [-1, 1]."""
    if p % 2 == 1:
        return 0.0
    return math.exp(
        gammaln((p + 1) / 2.0) + gammaln(alpha + 0.5) - gammaln(p / 2.0 + alpha + 1.0)
    )


@dataclass(frozen=True)
class IntervalRule:
    """Nodes and weights on (-1, 1) for a fixed Gegenbauer weight."""

    alpha: float
    nodes: np.ndarray
    weights: np.ndarray
    exact_degree: int

    def integrate(self, values: np.ndarray) -> float:
        return float(self.weights @ values)


def gauss_gegenbauer(alpha: float, count: int) -> IntervalRule:
    """Golub-Welsch rule with `count` nodes, exact in degree 2*count - 1."""
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if count < 1:
        raise DomainError(f"node count must be >= 1, got {count}")
    if count == 1:
        nodes = np.zeros(1)
        vec0_sq = np.ones(1)
    else:
        try:
            nodes, vectors = eigh_tridiagonal(
                np.zeros(count), jacobi_offdiagonal(alpha, count - 1)
            )
        except np.linalg.LinAlgError as exc:
            raise NumericError(
                f"tridiagonal eigensolver failed (alpha={alpha}, N={count})"
            ) from exc
        vec0_sq = vectors[0] ** 2
    # w_i p(t_i)^T p(t_i) = 1 for orthonormal p with p_0 = 1/sqrt(mass)
    # collapses to mass * (first eigenvector component)^2.
    weights = interval_weight_mass(alpha) * vec0_sq
    rule = IntervalRule(alpha, nodes, weights, 2 * count - 1)
    _verify_interval_exactness(rule)
    return rule


def _verify_interval_exactness(rule: IntervalRule) -> None:
    powers = np.arange(rule.exact_degree + 1)
    vandermonde = rule.nodes[None, :] ** powers[:, None]
    sums = vandermonde @ rule.weights
    for p, got in zip(powers, sums):
        want = interval_moment(rule.alpha, int(p))
        tol = 1e-11 * max(1.0, abs(want))
        if abs(got - want) > tol:
            raise NumericError(
                f"interval rule failed exactness at degree {p}: {got} vs {want}"
            )


@dataclass(frozen=True)
class SphereRule:
    """Positive-weight nodes on S^{n-1}, exact on polynomials of degree <= 2k."""

    n: int
    k: int
    nodes: np.ndarray  # shape (count, n)
    weights: np.ndarray
    exact_degree: int

    def integrate(self, values: np.ndarray) -> float:
        return float(self.weights @ values)


def circle_rule(k: int) -> SphereRule:
    """2(k+1) equispaced nodes on S^1 with equal weights pi/(k+1)."""
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    count = 2 * (k + 1)
    angles = 2.0 * math.pi * np.arange(count) / count
    nodes = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    weights = np.full(count, math.pi / (k + 1))
    return SphereRule(2, k, nodes, weights, 2 * k)


def sphere_rule(n: int, k: int) -> SphereRule:
    """Product rule on S^{n-1} exact in degree 2k with 2(k+1)^(n-1) nodes."""
    if n < 2:
        raise DomainError(f"ambient dimension must be >= 2, got {n}")
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    rule = circle_rule(k)
    for ell in range(3, n + 1):
        interval = gauss_gegenbauer((ell - 2) / 2.0, k + 1)
        count = interval.nodes.size * rule.nodes.shape[0]
        nodes = np.empty((count, ell))
        weights = np.empty(count)
        idx = 0
        for z, wz in zip(interval.nodes, interval.weights):
            scale = math.sqrt(max(1.0 - z * z, 0.0))
            block = rule.nodes.shape[0]
            nodes[idx:idx + block, 0] = z
            nodes[idx:idx + block, 1:] = scale * rule.nodes
            weights[idx:idx + block] = wz * rule.weights
            idx += block
        rule = SphereRule(ell, k, nodes, weights, 2 * k)
    total = rule.weights.sum()
    want = sphere_area(n)
    if abs(total - want) > 1e-10 * want:
        raise NumericError(
            f"sphere rule mass {total} deviates from {want} (n={n}, k={k})"
        )
    return rule


def moment_oracle(n: int, exponents) -> float:
    """Exact monomial moment over S^{n-1}, from the Gamma-function closed form."""
    exponents = list(exponents)
    if len(exponents) != n:
        raise DomainError(
            f"need {n} exponents, got {len(exponents)}"
        )
    if any(a < 0 for a in exponents):
        raise DomainError("exponents must be nonnegative")
    if any(a % 2 == 1 for a in exponents):
        return 0.0
    log_val = sum(gammaln((a + 1) / 2.0) for a in exponents)
    log_val -= gammaln((sum(exponents) + n) / 2.0)
    return 2.0 * math.exp(log_val)


# --- serialization -----------------------------------------------------------

def save_rule(rule: SphereRule, path) -> None:
    payload = {
        "format": RULE_FORMAT,
        "n": rule.n,
        "k": rule.k,
        "nodes": rule.nodes.tolist(),
        "weights": rule.weights.tolist(),
    }
    _atomic_write_json(payload, path)


def load_rule(path) -> SphereRule:
    with open(path) as handle:
        payload = json.load(handle)
    if payload.get("format") != RULE_FORMAT:
        raise DomainError(f"unrecognized rule format in {path}")
    return SphereRule(
        n=int(payload["n"]),
        k=int(payload["k"]),
        nodes=np.asarray(payload["nodes"], dtype=float),
        weights=np.asarray(payload["weights"], dtype=float),
        exact_degree=2 * int(payload["k"]),
    )


def _atomic_write_json(payload, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            json.dump(payload, handle)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _default_cache_dir() -> Path:
    env = os.environ.get("POLYSTAR_CACHE_DIR")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "polystar"


@lru_cache(maxsize=32)
def _memo_sphere_rule(n: int, k: int) -> SphereRule:
    return sphere_rule(n, k)


def cached_sphere_rule(n: int, k: int, use_disk: bool = False) -> SphereRule:
    """Sphere rule with in-memory memoization and optional disk cache."""
    if not use_disk:
        return _memo_sphere_rule(n, k)
    path = _default_cache_dir() / f"rule-n{n}-k{k}.json"
    if path.exists():
        rule = load_rule(path)
        if rule.n == n and rule.exact_degree == 2 * k:
            return rule
    rule = _memo_sphere_rule(n, k)
    save_rule(rule, path)
    return rule
