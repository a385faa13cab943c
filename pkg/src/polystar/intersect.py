"""Polynomial approximation of 3D intersection bodies.

The radial function of the intersection body is the spherical Radon transform
of rho^2 / 2, which acts degree-by-degree with the multipliers P_j(0); odd
degrees vanish, so the result is even.
"""

from dataclasses import dataclass

import numpy as np

from .bodies import StarBody
from .errors import DomainError
from .gegenbauer import legendre_at_zero
from .harmonics import (
    Filter,
    HarmonicExpansion,
    newman_shapiro_filter,
    sample_on_rule,
)
from .quadrature import SphereRule

__all__ = [
    "RadonMultipliers",
    "radon_multipliers",
    "intersection_body_approx",
    "slice_volume_oracle",
]


@dataclass(frozen=True)
class RadonMultipliers:
    """c_j = P_j(0) for j = 0..d; the Radon multipliers on S^2 harmonics."""

    values: np.ndarray


def radon_multipliers(d: int) -> RadonMultipliers:
    if d < 0:
        raise DomainError(f"degree must be nonnegative, got {d}")
    return RadonMultipliers(np.array([legendre_at_zero(j) for j in range(d + 1)]))


def intersection_body_approx(b: StarBody, k: int, m: int, rule: SphereRule,
                             filt: Filter | None = None,
                             filter_k: int | None = None) -> HarmonicExpansion:
    """Degree-2k filtered approximation of the intersection-body radial function.

    filter_k selects the mollifier order u_{2*filter_k} whose zonal
    coefficients damp the retained harmonics; it defaults to k.
    """
    if b.n != 3:
        raise DomainError(
            "intersection bodies are implemented for n = 3 only"
        )
    if b.kind != "radial":
        raise DomainError("intersection body needs a radial evaluator")
    if rule.n != 3:
        raise DomainError(f"rule dimension {rule.n} does not match the body")
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
        filt = newman_shapiro_filter(3, filter_k)
    elif (filt.n, filt.k) != (3, filter_k):
        raise DomainError("filter does not match the requested (n, filter_k)")
    body_eval = b.eval
    samples = sample_on_rule(lambda x: 0.5 * body_eval(x) ** 2, rule)
    # the great-circle transform scales degree-j harmonics by 2*pi*P_j(0):
    # the multiplier P_j(0) is the average over the circle, and the slice
    # integral carries the circumference on top of it
    multipliers = 2.0 * np.pi * radon_multipliers(2 * k).values
    degrees = tuple(
        (j, float(multipliers[j] * filt.coeffs[j]))
        for j in range(0, 2 * k + 1, 2)
    )
    return HarmonicExpansion(3, degrees, rule.nodes, samples)


def slice_volume_oracle(b: StarBody, x, angles: int = 4096) -> float:
    """Brute-force central-slice area: trapezoid rule on the great circle x-perp.

    The integrand is periodic, so the equispaced rule converges spectrally for
    smooth bodies and remains adequate for piecewise-smooth ones.
    """
    if b.n != 3 or b.kind != "radial":
        raise DomainError("slice oracle needs a 3D radial body")
    x = np.asarray(x, dtype=float)
    x = x / np.linalg.norm(x)
    helper = np.array([1.0, 0.0, 0.0])
    if abs(x[0]) > 0.9:
        helper = np.array([0.0, 1.0, 0.0])
    u = np.cross(x, helper)
    u /= np.linalg.norm(u)
    v = np.cross(x, u)
    phi = 2.0 * np.pi * np.arange(angles) / angles
    points = np.outer(np.cos(phi), u) + np.outer(np.sin(phi), v)
    values = np.array([0.5 * b.eval(p) ** 2 for p in points])
    return float(values.mean() * 2.0 * np.pi)
