"""Gegenbauer (ultraspherical) polynomials and the zonal reproducing kernel.

All sphere-side computations in the package reduce to univariate work with
the family C_j^(alpha), alpha = (n-2)/2.  Values are computed by the forward
three-term recurrence, which is stable on [-1, 1] for the degrees used here.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal
from scipy.special import gammaln

from .errors import DomainError, NumericError

__all__ = [
    "GegenbauerBasis",
    "ZonalKernel",
    "eval_gegenbauer",
    "gegenbauer_table",
    "gegenbauer_norm_sq",
    "largest_root",
    "harmonic_dim",
    "zonal_eval",
    "legendre_at_zero",
    "eval_gegenbauer_derivative",
    "jacobi_offdiagonal",
    "sphere_surface_area",
]

_T_TOL = 1e-12


def sphere_surface_area(n: int) -> float:
    """Surface measure of the unit sphere S^{n-1} in R^n."""
    if n < 2:
        raise DomainError(f"ambient dimension must be >= 2, got {n}")
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


@dataclass(frozen=True)
class GegenbauerBasis:
    """The family C_j^(alpha) with alpha = (n-2)/2 > 0, i.e. n >= 3."""

    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")


def _check_t(t):
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) > 1.0 + _T_TOL):
        bad = t[np.abs(t) > 1.0 + _T_TOL]
        raise DomainError(f"argument outside [-1, 1]: {bad.flat[0]}")
    return t


def eval_gegenbauer(basis: GegenbauerBasis, j: int, t):
    """C_j^(alpha)(t) by forward recurrence; t scalar or array in [-1, 1]."""
    if j < 0:
        raise DomainError(f"degree must be nonnegative, got {j}")
    t = _check_t(t)
    a = basis.alpha
    c_prev = np.ones_like(t)
    if j == 0:
        return c_prev if c_prev.ndim else float(c_prev)
    c_cur = 2.0 * a * t
    for i in range(2, j + 1):
        c_prev, c_cur = c_cur, (
            2.0 * t * (i + a - 1.0) * c_cur - (i + 2.0 * a - 2.0) * c_prev
        ) / i
    return c_cur if c_cur.ndim else float(c_cur)


def gegenbauer_table(basis: GegenbauerBasis, jmax: int, t) -> np.ndarray:
    """Stacked values C_0..C_jmax at t; shape (jmax+1,) + t.shape."""
    t = np.atleast_1d(_check_t(t))
    a = basis.alpha
    out = np.empty((jmax + 1,) + t.shape)
    out[0] = 1.0
    if jmax >= 1:
        out[1] = 2.0 * a * t
    for i in range(2, jmax + 1):
        out[i] = (2.0 * t * (i + a - 1.0) * out[i - 1]
                  - (i + 2.0 * a - 2.0) * out[i - 2]) / i
    return out


def gegenbauer_norm_sq(basis: GegenbauerBasis, j: int) -> float:
    """Integral of C_j^2 against the weight (1-t^2)^(alpha-1/2) on [-1, 1]."""
    if j < 0:
        raise DomainError(f"degree must be nonnegative, got {j}")
    a = basis.alpha
    # log-Gamma form: the direct Gamma(j + 2a) overflows past j ~ 150.
    log_val = (
        math.log(math.pi)
        + (1.0 - 2.0 * a) * math.log(2.0)
        + gammaln(j + 2.0 * a)
        - gammaln(j + 1.0)
        - math.log(j + a)
        - 2.0 * gammaln(a)
    )
    return math.exp(log_val)


def jacobi_offdiagonal(alpha: float, count: int) -> np.ndarray:
    """Off-diagonal entries beta_1..beta_count of the symmetric Jacobi matrix."""
    j = np.arange(1, count + 1, dtype=float)
    return 0.5 * np.sqrt(
        j * (j + 2.0 * alpha - 1.0) / ((j + alpha - 1.0) * (j + alpha))
    )


def largest_root(basis: GegenbauerBasis, j: int) -> float:
    """Largest root of C_j^(alpha), via the symmetric tridiagonal eigenproblem."""
    if j < 1:
        raise DomainError(f"degree must be >= 1, got {j}")
    if j == 1:
        return 0.0
    try:
        eigs = eigvalsh_tridiagonal(
            np.zeros(j), jacobi_offdiagonal(basis.alpha, j - 1)
        )
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise NumericError(f"tridiagonal eigensolver failed for j={j}") from exc
    root = float(eigs[-1])
    if not -1.0 < root < 1.0:
        raise NumericError(f"largest root {root} outside (-1, 1) for j={j}")
    return root


def harmonic_dim(n: int, d: int) -> int:
    """Dimension of the space of degree-d spherical harmonics on S^{n-1}."""
    if n < 2 or d < 0:
        raise DomainError(f"need n >= 2 and d >= 0, got n={n}, d={d}")
    first = math.comb(n + d - 2, d)
    second = math.comb(n + d - 3, d - 1) if d >= 1 and n + d - 3 >= 0 else 0
    return first + second


@dataclass(frozen=True)
class ZonalKernel:
    """Z_d(t), the reproducing kernel of degree-d harmonics on S^{n-1}."""

    n: int
    d: int
    norm_factor: float = field(init=False)

    def __post_init__(self):
        if self.n < 3:
            raise DomainError(f"zonal kernel needs n >= 3, got {self.n}")
        if self.d < 0:
            raise DomainError(f"degree must be nonnegative, got {self.d}")
        basis = GegenbauerBasis((self.n - 2) / 2.0)
        # C_d(1) via the same recurrence used for evaluation, so the
        # normalization and the evaluation path cannot drift apart.
        c_at_one = eval_gegenbauer(basis, self.d, 1.0)
        factor = harmonic_dim(self.n, self.d) / (
            sphere_surface_area(self.n) * c_at_one
        )
        object.__setattr__(self, "norm_factor", factor)

    @property
    def basis(self) -> GegenbauerBasis:
        return GegenbauerBasis((self.n - 2) / 2.0)


def zonal_eval(kernel: ZonalKernel, t):
    """Z_d(t) = norm_factor * C_d^(alpha)(t)."""
    return kernel.norm_factor * eval_gegenbauer(kernel.basis, kernel.d, t)


def legendre_at_zero(j: int) -> float:
    """P_j(0): zero for odd j, (-1)^(j/2) (j-1)!! / j!! for even j."""
    if j < 0:
        raise DomainError(f"degree must be nonnegative, got {j}")
    if j % 2 == 1:
        return 0.0
    value = 1.0
    for i in range(2, j + 1, 2):
        value *= (i - 1) / i
    return value if (j // 2) % 2 == 0 else -value


def eval_gegenbauer_derivative(basis: GegenbauerBasis, j: int, t):
    """d/dt C_j^(alpha)(t) = 2 alpha C_{j-1}^(alpha+1)(t)."""
    if j < 1:
        raise DomainError(f"derivative needs j >= 1, got {j}")
    shifted = GegenbauerBasis(basis.alpha + 1.0)
    return 2.0 * basis.alpha * eval_gegenbauer(shifted, j - 1, t)
