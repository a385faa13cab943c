"""Starbodies as black-box radial/gauge evaluators.

Every evaluator accepts a vector, renormalizes it to the unit sphere, and
returns a strictly positive value.  Factories probe positivity (and the
advertised Lipschitz constant, when present) at construction.
"""

import json
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import DomainError, NumericError
from .harmonics import fibonacci_sphere
from .quadrature import SphereRule

__all__ = [
    "StarBody",
    "FacetPolytope",
    "ConvexityResult",
    "polytope_gauge",
    "polytope_radial",
    "ball",
    "cube",
    "triangle",
    "cylinder",
    "dented_tin_can",
    "elliptope",
    "reciprocal",
    "lipschitz_from_kernel",
    "volume",
    "convexity_check_2d",
    "radial_by_bisection",
    "elliptope_member",
    "cube_member",
    "cylinder_member",
    "by_name",
    "builtin_names",
    "load_facets",
]

_PROBE_COUNT = 10_000


@dataclass(frozen=True)
class StarBody:
    """A positive function on S^{n-1}: radial or gauge, with metadata."""

    n: int
    kind: str  # "radial" or "gauge"
    eval: Callable[[np.ndarray], float]
    lipschitz: Optional[float] = None
    name: str = ""

    def __post_init__(self):
        if self.kind not in ("radial", "gauge"):
            raise DomainError(f"kind must be 'radial' or 'gauge', got {self.kind!r}")

    def __call__(self, x) -> float:
        return self.eval(x)


def _probe_points(n: int, count: int, seed: int = 12345) -> np.ndarray:
    if n == 3:
        return fibonacci_sphere(count)
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((count, n))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def _checked(body: StarBody, probe: int = _PROBE_COUNT) -> StarBody:
    points = _probe_points(body.n, probe)
    values = np.array([body.eval(p) for p in points])
    if np.any(values <= 0.0):
        bad = points[int(np.argmin(values))]
        raise DomainError(
            f"{body.name or 'body'}: nonpositive value at probe point {bad}"
        )
    if body.lipschitz is not None and body.lipschitz > 0:
        pairs = probe
        a = points
        b = np.roll(points, 1, axis=0)
        gaps = np.abs(values - np.roll(values, 1))
        dists = np.linalg.norm(a - b, axis=1)
        mask = dists > 1e-12
        slack = gaps[mask] - body.lipschitz * dists[mask]
        if np.any(slack > 1e-9 * max(1.0, float(np.max(np.abs(values))))):
            raise DomainError(
                f"{body.name or 'body'}: Lipschitz constant "
                f"{body.lipschitz} violated on probe pairs ({pairs} sampled)"
            )
    return body


def _unit(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise DomainError(f"expected a point in R^{n}, got shape {x.shape}")
    norm = np.linalg.norm(x)
    if norm == 0.0:
        raise DomainError("cannot renormalize the zero vector")
    return x / norm


@dataclass(frozen=True)
class FacetPolytope:
    """{x : <H_i, x> <= 1 for all i}; bounded with 0 interior when used here."""

    facets: np.ndarray  # shape (count, n)

    @property
    def n(self) -> int:
        return self.facets.shape[1]


def polytope_gauge(p: FacetPolytope, probe: int = _PROBE_COUNT) -> StarBody:
    facets = np.asarray(p.facets, dtype=float)
    n = p.n

    def gauge(x):
        return float(np.max(facets @ _unit(x, n)))

    kappa = float(np.max(np.linalg.norm(facets, axis=1)))
    return _checked(
        StarBody(n, "gauge", gauge, lipschitz=kappa, name="polytope-gauge"),
        probe,
    )


def polytope_radial(p: FacetPolytope, probe: int = _PROBE_COUNT,
                    lipschitz: Optional[float] = None) -> StarBody:
    facets = np.asarray(p.facets, dtype=float)
    n = p.n

    def radial(x):
        dots = facets @ _unit(x, n)
        top = np.max(dots)
        if top <= 0.0:
            raise DomainError(f"polytope unbounded in direction {x}")
        return float(1.0 / top)

    if lipschitz is None:
        # kernel radius from facet distances, outer radius from a probe
        r = float(1.0 / np.max(np.linalg.norm(facets, axis=1)))
        points = _probe_points(n, 1000)
        big = max(radial(q) for q in points)
        lipschitz = lipschitz_from_kernel(r, big, "radial")
    return _checked(
        StarBody(n, "radial", radial, lipschitz=lipschitz, name="polytope-radial"),
        probe,
    )


def ball(n: int = 3) -> StarBody:
    return StarBody(n, "radial", lambda x: 1.0, lipschitz=None, name="ball")


def cube() -> StarBody:
    facets = np.vstack([np.eye(3), -np.eye(3)])
    # the min_i 1/|x_i| form is 1-Lipschitz, sharper than the kernel bound
    body = polytope_radial(FacetPolytope(facets), lipschitz=1.0)
    return StarBody(3, "radial", body.eval, lipschitz=1.0, name="cube")


def triangle() -> StarBody:
    """The planar triangle conv{(-1,-1), (1,-1), (0,1)}, as a radial body."""
    facets = np.array([[0.0, -1.0], [2.0, 1.0], [-2.0, 1.0]])
    body = polytope_radial(FacetPolytope(facets))
    return StarBody(2, "radial", body.eval, lipschitz=body.lipschitz,
                    name="triangle")


def cylinder() -> StarBody:
    """Cylinder of revolution around the vertical axis, radius and half-height 1."""

    def radial(x):
        x = _unit(x, 3)
        z = x[2]
        lateral_sq = x[0] * x[0] + x[1] * x[1]
        candidates = []
        if z * z >= lateral_sq - 1e-12 and abs(z) > 0.0:
            candidates.append(1.0 / abs(z))
        if z * z <= lateral_sq + 1e-12:
            candidates.append(1.0 / math.sqrt(max(1.0 - z * z, 1e-300)))
        return float(min(candidates))

    return _checked(StarBody(3, "radial", radial, lipschitz=2.0, name="cylinder"))


def _tin_can_cap(az: float) -> float:
    # the closed form cancels catastrophically near the pole; mpmath bridges
    # the gap and the pole itself takes the analytic limit 1/sqrt(2)
    if az >= 1.0 - 1e-12:
        return 1.0 / math.sqrt(2.0)
    arg = 2.0 * az * az - 1.0
    if arg < -1e-12:
        raise DomainError(f"cap branch invoked outside its cone (|x3|={az})")
    if az > 0.999:
        import mpmath as mp

        with mp.workdps(40):
            z = mp.mpf(az)
            s = mp.sqrt(2 * z * z - 1)
            val = mp.sqrt(
                (1 - z * z + z * (-1 + s)) / (z * (-1 + z) * (z * z - s))
            )
            return float(val)
    s = math.sqrt(max(arg, 0.0))
    return math.sqrt(
        (1.0 - az * az + az * (-1.0 + s)) / (az * (-1.0 + az) * (az * az - s))
    )


def dented_tin_can() -> StarBody:
    """Cylinder with concave top and bottom; its intersection body is a cylinder."""

    def radial(x):
        x = _unit(x, 3)
        z = x[2]
        az = abs(z)
        lateral_sq = x[0] * x[0] + x[1] * x[1]
        candidates = []
        if az * az >= lateral_sq - 1e-12:
            candidates.append(_tin_can_cap(az))
        if az * az <= lateral_sq + 1e-12:
            candidates.append(1.0 / math.sqrt(max(1.0 - z * z, 1e-300)))
        return float(min(candidates))

    return _checked(StarBody(3, "radial", radial, name="tin-can"))


def elliptope_member(x: np.ndarray, lam: float) -> bool:
    """Is lam * x a correlation matrix (unit diagonal, PSD)?"""
    a, b, c = lam * np.asarray(x, dtype=float)
    if max(abs(a), abs(b), abs(c)) > 1.0:
        return False
    return 1.0 + 2.0 * a * b * c - a * a - b * b - c * c >= -1e-15


def cube_member(x: np.ndarray, lam: float) -> bool:
    return bool(np.max(np.abs(lam * np.asarray(x, dtype=float))) <= 1.0)


def cylinder_member(x: np.ndarray, lam: float) -> bool:
    p = lam * np.asarray(x, dtype=float)
    return p[0] * p[0] + p[1] * p[1] <= 1.0 and abs(p[2]) <= 1.0


def radial_by_bisection(member, x, hi: float = 8.0, iterations: int = 80) -> float:
    """sup{lam : member(x, lam)} for a monotone membership predicate."""
    lo = 0.0
    while member(x, hi):
        hi *= 2.0
        if hi > 1e12:
            raise NumericError(f"membership set unbounded along {x}")
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        if member(x, mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def elliptope() -> StarBody:
    """Correlation matrices of size 3, seen as a starbody in the off-diagonals."""

    def radial(x):
        x = _unit(x, 3)
        p = float(x[0] * x[1] * x[2])
        if abs(p) < 1e-8:
            # coordinate planes: the closed form degenerates to 0/0
            return radial_by_bisection(elliptope_member, x, hi=4.0)
        c2 = p * p
        im = 6.0 * math.sqrt(3.0) * math.sqrt(max(c2 * (1.0 - 27.0 * c2), 0.0))
        theta = math.atan2(im, 54.0 * c2 - 1.0)
        if p > 0:
            return (1.0 + math.cos(theta / 3.0)
                    - math.sqrt(3.0) * math.sin(theta / 3.0)) / (6.0 * p)
        return (1.0 - 2.0 * math.cos(theta / 3.0)) / (6.0 * p)

    return _checked(StarBody(3, "radial", radial, name="elliptope"))


def reciprocal(b: StarBody) -> StarBody:
    """Swap radial and gauge representations pointwise."""
    kind = "gauge" if b.kind == "radial" else "radial"
    inner = b.eval

    def flipped(x):
        return 1.0 / inner(x)

    kappa = None
    if b.lipschitz is not None:
        top = max(flipped(p) for p in _probe_points(b.n, 1000))
        kappa = b.lipschitz * top * top
    return StarBody(b.n, kind, flipped, lipschitz=kappa,
                    name=f"reciprocal({b.name})" if b.name else "")


def lipschitz_from_kernel(r: float, big_r: float, kind: str) -> float:
    """Lipschitz constant from kernel radius r and outer radius R."""
    if r <= 0:
        raise DomainError(f"kernel radius must be positive, got {r}")
    if kind == "gauge":
        return 1.0 / r
    if kind == "radial":
        return big_r * big_r / r
    raise DomainError(f"kind must be 'radial' or 'gauge', got {kind!r}")


def volume(b: StarBody, rule: SphereRule) -> float:
    """(1/n) * quadrature sum of rho^n; the integrand is generally not polynomial,
    so the rule degree controls accuracy only heuristically."""
    if b.kind != "radial":
        raise DomainError("volume needs a radial body")
    if b.n != rule.n:
        raise DomainError(f"body dimension {b.n} does not match rule {rule.n}")
    values = np.array([b.eval(z) ** b.n for z in rule.nodes])
    return float(rule.weights @ values) / b.n


@dataclass(frozen=True)
class ConvexityResult:
    convex: bool
    witness: Optional[float] = None


def convexity_check_2d(p, grid_size: int = 4096, kind: str = "gauge"
                       ) -> ConvexityResult:
    """Planar curvature criterion: a gauge p(theta) bounds a convex body iff
    p + p'' >= 0; for a radial q the criterion applies to 1/q."""
    if kind not in ("gauge", "radial"):
        raise DomainError(f"kind must be 'radial' or 'gauge', got {kind!r}")
    theta = np.linspace(0.0, 2.0 * math.pi, grid_size, endpoint=False)
    values = np.array([float(p(t)) for t in theta])
    if kind == "radial":
        values = 1.0 / values
    h = 2.0 * math.pi / grid_size
    second = (np.roll(values, -1) - 2.0 * values + np.roll(values, 1)) / (h * h)
    curvature = values + second
    threshold = -1e-6 * float(np.max(np.abs(values)))
    bad = np.nonzero(curvature < threshold)[0]
    if bad.size == 0:
        return ConvexityResult(convex=True)
    worst = bad[int(np.argmin(curvature[bad]))]
    return ConvexityResult(convex=False, witness=float(theta[worst]))


_BUILTINS = {
    "cube": cube,
    "cylinder": cylinder,
    "tin-can": dented_tin_can,
    "elliptope": elliptope,
    "ball": ball,
    "triangle": triangle,
}


def builtin_names() -> list[str]:
    return sorted(_BUILTINS)


def by_name(name: str) -> StarBody:
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise DomainError(
            f"unknown body {name!r}; available: {', '.join(builtin_names())}"
        ) from None
    return factory()


def load_facets(path) -> FacetPolytope:
    with open(path) as handle:
        payload = json.load(handle)
    facets = np.asarray(payload["facets"], dtype=float)
    if facets.ndim != 2 or facets.shape[1] != int(payload["n"]):
        raise DomainError(f"facet matrix in {path} does not match n={payload['n']}")
    return FacetPolytope(facets)
