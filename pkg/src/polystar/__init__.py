"""polystar: polynomial approximation of starshaped bodies on the sphere.

Approximates radial/gauge functions by polynomials via quadrature-sampled,
filtered harmonic expansions, and uses the approximations to compute
intersection bodies, largest central slices, and widths.
"""

from .bodies import (
    FacetPolytope,
    StarBody,
    ball,
    by_name,
    convexity_check_2d,
    cube,
    cylinder,
    dented_tin_can,
    elliptope,
    polytope_gauge,
    polytope_radial,
    reciprocal,
    triangle,
    volume,
)
from .errors import DomainError, NumericError, OptimizationError, PositivityError
from .gegenbauer import (
    GegenbauerBasis,
    ZonalKernel,
    eval_gegenbauer,
    harmonic_dim,
    largest_root,
    legendre_at_zero,
)
from .harmonics import (
    Filter,
    HarmonicExpansion,
    eval_expansion,
    eval_expansion_gradient,
    harmonic_component,
    load_expansion,
    mollified_approx,
    newman_shapiro_filter,
    nonnegativity_probe,
    save_expansion,
)
from .intersect import intersection_body_approx, radon_multipliers
from .mesh import export_mesh
from .optimize import SphereMaximum, largest_slice, maximize_on_sphere, width
from .quadrature import (
    IntervalRule,
    SphereRule,
    circle_rule,
    gauss_gegenbauer,
    moment_oracle,
    sphere_area,
    sphere_rule,
)

__version__ = "0.1.0"
