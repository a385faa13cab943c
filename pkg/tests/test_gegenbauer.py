import numpy as np
import pytest
import scipy.integrate
import scipy.special
from hypothesis import given, settings, strategies as st

from polystar.errors import DomainError
from polystar.gegenbauer import (
    GegenbauerBasis,
    ZonalKernel,
    eval_gegenbauer,
    eval_gegenbauer_derivative,
    gegenbauer_norm_sq,
    gegenbauer_table,
    harmonic_dim,
    jacobi_offdiagonal,
    largest_root,
    legendre_at_zero,
    sphere_surface_area,
    zonal_eval,
)


def test_matches_scipy_reference(rng):
    t = rng.uniform(-1.0, 1.0, size=64)
    for alpha in (0.5, 1.0, 1.7, 3.25):
        basis = GegenbauerBasis(alpha)
        for j in (0, 1, 2, 5, 13, 25):
            expected = scipy.special.eval_gegenbauer(j, alpha, t)
            np.testing.assert_allclose(eval_gegenbauer(basis, j, t), expected,
                                       rtol=1e-11, atol=1e-11)


def test_table_rows_match_single_evaluations(rng):
    basis = GegenbauerBasis(0.5)
    t = rng.uniform(-1.0, 1.0, size=17)
    table = gegenbauer_table(basis, 12, t)
    assert table.shape == (13, 17)
    for j in range(13):
        np.testing.assert_allclose(table[j], eval_gegenbauer(basis, j, t))


@given(alpha=st.floats(0.3, 3.0), j=st.integers(0, 40),
       t=st.floats(-1.0, 1.0))
@settings(max_examples=200, deadline=None)
def test_bounded_by_value_at_one(alpha, j, t):
    # the weight alpha > 0 regime: |C_j| attains its max on [-1,1] at t = 1
    basis = GegenbauerBasis(alpha)
    at_t = abs(float(eval_gegenbauer(basis, j, t)))
    at_one = float(eval_gegenbauer(basis, j, 1.0))
    assert at_t <= at_one * (1.0 + 1e-12) + 1e-12


def test_rejects_points_outside_interval():
    basis = GegenbauerBasis(0.5)
    with pytest.raises(DomainError):
        eval_gegenbauer(basis, 3, 1.5)


def test_rejects_nonpositive_alpha():
    with pytest.raises(DomainError):
        GegenbauerBasis(0.0)


def test_norm_against_quadrature():
    for alpha in (0.5, 1.0, 2.5):
        basis = GegenbauerBasis(alpha)
        for j in (0, 1, 4, 9):
            integral, _ = scipy.integrate.quad(
                lambda t: scipy.special.eval_gegenbauer(j, alpha, t) ** 2
                * (1 - t * t) ** (alpha - 0.5),
                -1.0, 1.0)
            assert gegenbauer_norm_sq(basis, j) == pytest.approx(integral,
                                                                 rel=1e-9)


def test_largest_root_is_a_root():
    for alpha in (0.5, 1.0, 2.0):
        basis = GegenbauerBasis(alpha)
        for j in (2, 5, 16, 31):
            root = largest_root(basis, j)
            assert -1.0 < root < 1.0
            assert abs(float(eval_gegenbauer(basis, j, root))) < 1e-8
            # nothing of the same polynomial vanishes to the right of it
            tail = np.linspace(root + 1e-4, 1.0, 200)
            assert np.all(eval_gegenbauer(basis, j, tail) > 0.0)


def test_largest_root_degree_two_closed_form():
    # C_2 = 2 alpha (1 + alpha) t^2 - alpha vanishes at sqrt(1/(2 (1 + alpha)))
    for alpha in (0.5, 1.0, 3.0):
        expected = np.sqrt(1.0 / (2.0 * (1.0 + alpha)))
        assert largest_root(GegenbauerBasis(alpha), 2) == pytest.approx(expected)


def test_jacobi_offdiagonal_chebyshev_like():
    # alpha = 1 gives Chebyshev U with constant off-diagonal 1/2
    np.testing.assert_allclose(jacobi_offdiagonal(1.0, 6), 0.5 * np.ones(6))


def test_harmonic_dimensions():
    assert [harmonic_dim(3, d) for d in range(5)] == [1, 3, 5, 7, 9]
    assert harmonic_dim(2, 0) == 1
    assert all(harmonic_dim(2, d) == 2 for d in range(1, 6))
    assert harmonic_dim(4, 2) == 9


def test_surface_areas():
    assert sphere_surface_area(2) == pytest.approx(2 * np.pi)
    assert sphere_surface_area(3) == pytest.approx(4 * np.pi)
    assert sphere_surface_area(4) == pytest.approx(2 * np.pi ** 2)


def test_zonal_kernel_diagonal_value():
    # the reproducing kernel evaluated on the diagonal is dim / area
    for n, d in ((3, 0), (3, 4), (4, 3)):
        kernel = ZonalKernel(n, d)
        expected = harmonic_dim(n, d) / sphere_surface_area(n)
        assert float(zonal_eval(kernel, 1.0)) == pytest.approx(expected)


def test_legendre_at_zero_values():
    assert legendre_at_zero(0) == 1.0
    assert legendre_at_zero(1) == 0.0
    assert legendre_at_zero(2) == pytest.approx(-0.5)
    assert legendre_at_zero(4) == pytest.approx(3.0 / 8.0)
    for j in range(12):
        assert legendre_at_zero(j) == pytest.approx(
            float(scipy.special.eval_legendre(j, 0.0)), abs=1e-14)


def test_derivative_by_finite_differences(rng):
    basis = GegenbauerBasis(0.5)
    t = rng.uniform(-0.9, 0.9, size=32)
    h = 1e-6
    for j in (1, 3, 8, 15):
        fd = (eval_gegenbauer(basis, j, t + h)
              - eval_gegenbauer(basis, j, t - h)) / (2 * h)
        np.testing.assert_allclose(eval_gegenbauer_derivative(basis, j, t), fd,
                                   rtol=1e-6, atol=1e-6)
