import numpy as np
import pytest

from polystar.bodies import StarBody, ball, cube, cylinder, reciprocal
from polystar.errors import DomainError
from polystar.harmonics import eval_expansion_many, fibonacci_sphere
from polystar.intersect import (
    intersection_body_approx,
    radon_multipliers,
    slice_volume_oracle,
)


def test_multiplier_values():
    vals = radon_multipliers(6).values
    np.testing.assert_allclose(vals, [1, 0, -0.5, 0, 0.375, 0, -0.3125])


def test_ball_intersection_body_is_constant_pi(rule60):
    e = intersection_body_approx(ball(3), 10, 20, rule60)
    pts = fibonacci_sphere(500)
    np.testing.assert_allclose(eval_expansion_many(e, pts), np.pi, atol=1e-10)


def test_scaled_ball_intersection_body(rule60):
    two_ball = StarBody(n=3, kind="radial", eval=lambda x: 2.0,
                        lipschitz=1.0, name="two-ball")
    e = intersection_body_approx(two_ball, 10, 20, rule60)
    pts = fibonacci_sphere(500)
    np.testing.assert_allclose(eval_expansion_many(e, pts), 4 * np.pi,
                               atol=1e-5)


def test_even_symmetry(rule60):
    e = intersection_body_approx(cube(), 8, 16, rule60)
    pts = fibonacci_sphere(200)
    np.testing.assert_allclose(eval_expansion_many(e, pts),
                               eval_expansion_many(e, -pts), atol=1e-10)


def test_rejects_gauge_and_wrong_dimension(rule60):
    with pytest.raises(DomainError):
        intersection_body_approx(reciprocal(cube()), 5, 10, rule60)
    flat = StarBody(n=2, kind="radial", eval=lambda x: 1.0, lipschitz=1.0,
                    name="disk")
    with pytest.raises(DomainError):
        intersection_body_approx(flat, 5, 10, rule60)


def test_oracle_cube_axis_and_diagonal():
    b = cube()
    assert slice_volume_oracle(b, [0, 0, 1]) == pytest.approx(4.0, rel=1e-3)
    assert slice_volume_oracle(b, [1, -1, 0]) == pytest.approx(4 * np.sqrt(2),
                                                               rel=1e-3)


def test_oracle_cylinder_values():
    b = cylinder()
    assert slice_volume_oracle(b, [0, 0, 1]) == pytest.approx(np.pi, rel=1e-6)
    assert slice_volume_oracle(b, [1, 0, 0]) == pytest.approx(4.0, rel=1e-3)
    assert slice_volume_oracle(b, [1, 0, 1]) == pytest.approx(
        np.pi * np.sqrt(2), rel=1e-6)


def test_oracle_ball_any_direction(rng):
    b = ball(3)
    for _ in range(5):
        x = rng.standard_normal(3)
        assert slice_volume_oracle(b, x) == pytest.approx(np.pi, rel=1e-12)


def test_expansion_tracks_oracle_on_cube(rule60, rng):
    e = intersection_body_approx(cube(), 15, 30, rule60, filter_k=30)
    for _ in range(10):
        x = rng.standard_normal(3)
        x /= np.linalg.norm(x)
        oracle = slice_volume_oracle(cube(), x)
        assert float(e(x)) == pytest.approx(oracle, rel=0.05)
