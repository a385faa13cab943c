"""Harmonic component extraction, the concentrating filter, and sphere polynomials.

A sphere polynomial is stored as quadrature samples plus per-degree zonal
coefficients; evaluation goes through a cached univariate kernel so the cost
is O(#nodes * max_degree) per point regardless of how many degrees are active.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NumericError
from .gegenbauer import (
    GegenbauerBasis,
    eval_gegenbauer,
    gegenbauer_table,
    harmonic_dim,
    largest_root,
)
from .quadrature import (
    SphereRule,
    gauss_gegenbauer,
    sphere_area,
    _atomic_write_json,
)

__all__ = [
    "HarmonicExpansion",
    "Filter",
    "harmonic_component",
    "newman_shapiro_filter",
    "mollified_approx",
    "eval_expansion",
    "eval_expansion_many",
    "eval_expansion_component",
    "eval_expansion_gradient",
    "nonnegativity_probe",
    "fibonacci_sphere",
    "sample_on_rule",
    "save_expansion",
    "load_expansion",
]

EXPANSION_FORMAT = "polystar-expansion-v1"


def fibonacci_sphere(count: int) -> np.ndarray:
    """Quasi-uniform lattice of `count` points on S^2."""
    i = np.arange(count)
    z = 1.0 - (2.0 * i + 1.0) / count
    r = np.sqrt(np.maximum(1.0 - z * z, 0.0))
    theta = math.pi * (3.0 - math.sqrt(5.0)) * i
    return np.stack([r * np.cos(theta), r * np.sin(theta), z], axis=1)


def sample_on_rule(f, rule: SphereRule) -> np.ndarray:
    """Weighted samples W(z_i) * f(z_i) over the rule nodes."""
    values = np.array([float(f(z)) for z in rule.nodes])
    return rule.weights * values


@dataclass(frozen=True)
class HarmonicExpansion:
    """Polynomial on S^{n-1} of the form x -> sum_i s_i K(<x, z_i>).

    `degrees` lists the active zonal coefficients (j, mu_j); the kernel is
    K(t) = sum_j mu_j Z_j(t), cached as Gegenbauer-basis coefficients.
    """

    n: int
    degrees: tuple  # of (j, mu_j)
    nodes: np.ndarray  # (count, n)
    samples: np.ndarray  # (count,), already weight-multiplied
    kernel_coeffs: np.ndarray = field(init=False)  # Gegenbauer basis, len max_degree+1

    def __post_init__(self):
        if self.n < 3:
            raise DomainError(f"expansions need n >= 3, got {self.n}")
        degs = tuple((int(j), float(mu)) for j, mu in self.degrees)
        object.__setattr__(self, "degrees", degs)
        max_degree = max((j for j, _ in degs), default=0)
        basis = self.basis
        area = sphere_area(self.n)
        coeffs = np.zeros(max_degree + 1)
        for j, mu in degs:
            c_one = eval_gegenbauer(basis, j, 1.0)
            coeffs[j] += mu * harmonic_dim(self.n, j) / (area * c_one)
        object.__setattr__(self, "kernel_coeffs", coeffs)

    @property
    def basis(self) -> GegenbauerBasis:
        return GegenbauerBasis((self.n - 2) / 2.0)

    @property
    def max_degree(self) -> int:
        active = [j for j, mu in self.degrees if mu != 0.0]
        return max(active, default=0)

    def kernel_at(self, t: np.ndarray) -> np.ndarray:
        """K(t) accumulated alongside the Gegenbauer recurrence."""
        return _accumulate_series(self.kernel_coeffs, self.basis.alpha, t)

    def kernel_derivative_at(self, t: np.ndarray) -> np.ndarray:
        # d/dt C_j^(a) = 2a C_{j-1}^(a+1), so the derivative kernel lives in
        # the alpha+1 basis with shifted coefficients.
        a = self.basis.alpha
        if self.kernel_coeffs.size < 2:
            return np.zeros_like(np.asarray(t, dtype=float))
        shifted = 2.0 * a * self.kernel_coeffs[1:]
        return _accumulate_series(shifted, a + 1.0, t)

    def __call__(self, x):
        return eval_expansion(self, x)


def _accumulate_series(coeffs: np.ndarray, alpha: float, t) -> np.ndarray:
    """sum_j coeffs[j] C_j^(alpha)(t) in one pass of the recurrence."""
    t = np.asarray(t, dtype=float)
    c_prev = np.ones_like(t)
    acc = coeffs[0] * c_prev
    if coeffs.size == 1:
        return acc
    c_cur = 2.0 * alpha * t
    acc = acc + coeffs[1] * c_cur
    for j in range(2, coeffs.size):
        c_prev, c_cur = c_cur, (
            2.0 * t * (j + alpha - 1.0) * c_cur - (j + 2.0 * alpha - 2.0) * c_prev
        ) / j
        if coeffs[j] != 0.0:
            acc = acc + coeffs[j] * c_cur
    return acc


def _as_unit(x, n: int) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise DomainError(f"expected a point in R^{n}, got shape {x.shape}")
    norm = np.linalg.norm(x)
    if norm == 0.0:
        raise DomainError("cannot renormalize the zero vector")
    return x / norm


def eval_expansion(e: HarmonicExpansion, x) -> float:
    x = _as_unit(x, e.n)
    t = np.clip(e.nodes @ x, -1.0, 1.0)
    return float(e.samples @ e.kernel_at(t))


def eval_expansion_many(e: HarmonicExpansion, points: np.ndarray,
                        chunk: int = 2048) -> np.ndarray:
    """Vectorized evaluation at unit points of shape (count, n)."""
    points = np.asarray(points, dtype=float)
    points = points / np.linalg.norm(points, axis=1, keepdims=True)
    out = np.empty(points.shape[0])
    for start in range(0, points.shape[0], chunk):
        block = points[start:start + chunk]
        t = np.clip(block @ e.nodes.T, -1.0, 1.0)
        out[start:start + chunk] = e.kernel_at(t) @ e.samples
    return out


def eval_expansion_component(e: HarmonicExpansion, j: int, x) -> float:
    """The degree-j term mu_j * sum_i s_i Z_j(<x, z_i>) on its own."""
    mu = dict(e.degrees).get(j)
    if mu is None:
        return 0.0
    x = _as_unit(x, e.n)
    t = np.clip(e.nodes @ x, -1.0, 1.0)
    basis = e.basis
    c_one = eval_gegenbauer(basis, j, 1.0)
    zonal = harmonic_dim(e.n, j) / (sphere_area(e.n) * c_one) * eval_gegenbauer(
        basis, j, t
    )
    return float(mu * (e.samples @ zonal))


def eval_expansion_gradient(e: HarmonicExpansion, x) -> np.ndarray:
    """Tangent gradient at x of the ambient extension sum_i s_i K(<x, z_i>)."""
    x = _as_unit(x, e.n)
    t = np.clip(e.nodes @ x, -1.0, 1.0)
    weights = e.samples * e.kernel_derivative_at(t)
    ambient = e.nodes.T @ weights
    return ambient - (ambient @ x) * x


def harmonic_component(f, d: int, rule: SphereRule, m: int | None = None
                       ) -> HarmonicExpansion:
    """Quadrature estimate of the degree-d harmonic component of f."""
    if d < 0:
        raise DomainError(f"degree must be nonnegative, got {d}")
    needed = max(d + m, 2 * d) if m is not None else 2 * d
    if rule.exact_degree < needed:
        raise DomainError(
            f"rule exact in degree {rule.exact_degree} < required {needed}"
        )
    samples = sample_on_rule(f, rule)
    return HarmonicExpansion(rule.n, ((d, 1.0),), rule.nodes, samples)


@dataclass(frozen=True)
class Filter:
    """Zonal-basis coefficients lambda_0..lambda_2k of the concentrating filter."""

    n: int
    k: int
    coeffs: np.ndarray

    @property
    def degree(self) -> int:
        return 2 * self.k


def _deflate_gegenbauer(alpha: float, k1: int, root: float
                        ) -> tuple[np.ndarray, float]:
    """Coefficients of C_{k1}(t)/(t - root) in the Gegenbauer basis.

    Division happens directly in the orthogonal basis via the multiplication
    rule t C_j = A_j C_{j+1} + B_j C_{j-1}; a monomial-basis synthetic
    division loses ~8 digits by k1 ~ 30 and is useless here.  Returns the
    quotient coefficients b_0..b_{k1-1} and the division remainder.
    """
    def a_coef(j):
        return (j + 1.0) / (2.0 * (j + alpha))

    def b_coef(j):
        return (j + 2.0 * alpha - 1.0) / (2.0 * (j + alpha))

    b = np.zeros(k1)
    b[k1 - 1] = 1.0 / a_coef(k1 - 1)
    if k1 >= 2:
        b[k1 - 2] = root * b[k1 - 1] / a_coef(k1 - 2)
    for i in range(k1 - 2, 0, -1):
        b[i - 1] = (root * b[i] - b_coef(i + 1) * b[i + 1]) / a_coef(i - 1)
    remainder = -root * b[0] + (b_coef(1) * b[1] if k1 >= 2 else 0.0)
    return b, remainder


def newman_shapiro_filter(n: int, k: int) -> Filter:
    """Zonal coefficients of the squared deflated Gegenbauer filter of degree 2k."""
    if n < 3:
        raise DomainError(f"filter needs n >= 3, got {n}")
    if k < 0:
        raise DomainError(f"k must be nonnegative, got {k}")
    alpha = (n - 2) / 2.0
    basis = GegenbauerBasis(alpha)
    root = largest_root(basis, k + 1)
    quotient, remainder = _deflate_gegenbauer(alpha, k + 1, root)
    grid = np.linspace(-1.0, 1.0, 1001)
    scale = np.max(np.abs(eval_gegenbauer(basis, k + 1, grid)))
    if abs(remainder) > 1e-8 * scale:
        raise NumericError(
            f"deflation residual {abs(remainder)} too large for (n={n}, k={k})"
        )
    # the integrands q(t)^2 C_j(t) have degree <= 4k, within reach of 2k+1 nodes
    rule = gauss_gegenbauer(alpha, 2 * k + 1)
    q_table = gegenbauer_table(basis, k, rule.nodes)
    u_values = (quotient @ q_table) ** 2
    table = gegenbauer_table(basis, 2 * k, rule.nodes)
    ones = gegenbauer_table(basis, 2 * k, np.array([1.0]))[:, 0]
    raw = (table / ones[:, None]) @ (rule.weights * u_values)
    coeffs = raw / raw[0]
    return Filter(n, k, coeffs)


def mollified_approx(f, k: int, m: int, rule: SphereRule,
                     filt: Filter | None = None,
                     filter_k: int | None = None) -> HarmonicExpansion:
    """Filtered degree-2k polynomial approximation of f from one sample pass.

    filter_k selects the mollifier order (coefficients come from u_{2*filter_k});
    it defaults to k, so the mollifier degree matches the output degree.
    Larger filter_k keeps the retained harmonics closer to the raw projection.
    """
    if k < 0 or m < 1:
        raise DomainError(f"need k >= 0 and m >= 1, got k={k}, m={m}")
    needed = max(2 * k + m, 4 * k)
    if rule.exact_degree < needed:
        raise DomainError(
            f"rule exact in degree {rule.exact_degree} < required {needed}"
        )
    if filter_k is None:
        filter_k = k
    if filter_k < k:
        raise DomainError(f"filter_k must be >= k, got {filter_k} < {k}")
    if filt is None:
        filt = newman_shapiro_filter(rule.n, filter_k)
    elif (filt.n, filt.k) != (rule.n, filter_k):
        raise DomainError("filter does not match the requested (n, filter_k)")
    samples = sample_on_rule(f, rule)
    degrees = tuple((j, float(filt.coeffs[j])) for j in range(2 * k + 1))
    return HarmonicExpansion(rule.n, degrees, rule.nodes, samples)


def nonnegativity_probe(e: HarmonicExpansion, sample_count: int,
                        seed: int = 0) -> tuple[float, np.ndarray]:
    """Sampled minimum of the expansion over quasi-uniform points.

    When the expansion came from a filtered approximation of a function that
    is nonnegative at all rule nodes, the true minimum is >= 0; the probe
    checks the sampled surrogate of that guarantee.
    """
    if e.n != 3:
        raise DomainError("probe sampling is implemented for n = 3")
    half = sample_count // 2
    rng = np.random.default_rng(seed)
    gauss = rng.standard_normal((sample_count - half, 3))
    gauss /= np.linalg.norm(gauss, axis=1, keepdims=True)
    points = np.vstack([fibonacci_sphere(half), gauss])
    values = eval_expansion_many(e, points)
    idx = int(np.argmin(values))
    return float(values[idx]), points[idx]


# --- serialization -----------------------------------------------------------

def save_expansion(e: HarmonicExpansion, path) -> None:
    payload = {
        "format": EXPANSION_FORMAT,
        "n": e.n,
        "degrees": [{"j": j, "coeff": mu} for j, mu in e.degrees],
        "nodes": e.nodes.tolist(),
        "samples": e.samples.tolist(),
    }
    _atomic_write_json(payload, path)


def load_expansion(path) -> HarmonicExpansion:
    with open(path) as handle:
        payload = json.load(handle)
    if payload.get("format") != EXPANSION_FORMAT:
        raise DomainError(f"unrecognized expansion format in {path}")
    return HarmonicExpansion(
        n=int(payload["n"]),
        degrees=tuple((d["j"], d["coeff"]) for d in payload["degrees"]),
        nodes=np.asarray(payload["nodes"], dtype=float),
        samples=np.asarray(payload["samples"], dtype=float),
    )
