import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from polystar.errors import DomainError
from polystar.quadrature import (
    cached_sphere_rule,
    circle_rule,
    gauss_gegenbauer,
    interval_moment,
    interval_weight_mass,
    load_rule,
    moment_oracle,
    save_rule,
    sphere_area,
    sphere_rule,
)


def test_gauss_nodes_and_weights_shape():
    rule = gauss_gegenbauer(0.5, 7)
    assert rule.exact_degree == 13
    assert np.all(rule.weights > 0)
    assert np.all((-1 < rule.nodes) & (rule.nodes < 1))
    # symmetric weight, symmetric rule
    np.testing.assert_allclose(np.sort(rule.nodes), -np.sort(rule.nodes)[::-1],
                               atol=1e-14)


def test_gauss_two_points_legendre():
    rule = gauss_gegenbauer(0.5, 2)
    np.testing.assert_allclose(np.sort(rule.nodes),
                               [-1 / np.sqrt(3), 1 / np.sqrt(3)], atol=1e-14)
    np.testing.assert_allclose(rule.weights, [1.0, 1.0], atol=1e-14)


@given(alpha=st.floats(0.25, 3.0), count=st.integers(1, 12),
       power=st.integers(0, 23))
@settings(max_examples=150, deadline=None)
def test_gauss_monomial_exactness(alpha, count, power):
    if power > 2 * count - 1:
        power = 2 * count - 1
    rule = gauss_gegenbauer(alpha, count)
    got = float(rule.weights @ rule.nodes ** power)
    want = interval_moment(alpha, power)
    assert got == pytest.approx(want, rel=1e-10, abs=1e-12)


def test_interval_mass_closed_form():
    assert interval_weight_mass(0.5) == pytest.approx(2.0)
    assert interval_weight_mass(1.0) == pytest.approx(np.pi / 2)


def test_circle_rule_structure():
    rule = circle_rule(3)
    assert rule.n == 2
    assert len(rule.weights) == 8
    np.testing.assert_allclose(rule.weights, np.pi / 4)
    assert rule.weights.sum() == pytest.approx(2 * np.pi)
    # trig exactness: integral of cos^2 over the circle is pi
    assert rule.integrate(rule.nodes[:, 0] ** 2) == pytest.approx(np.pi)


def test_sphere_rule_node_count_and_mass():
    for n, k in ((2, 4), (3, 1), (3, 6), (4, 3)):
        rule = sphere_rule(n, k)
        assert len(rule.weights) == 2 * (k + 1) ** (n - 1)
        assert rule.weights.sum() == pytest.approx(sphere_area(n), rel=1e-10)
        np.testing.assert_allclose(np.linalg.norm(rule.nodes, axis=1), 1.0,
                                   atol=1e-12)


def test_sphere_rule_random_monomials(rng):
    rule = sphere_rule(3, 8)
    for _ in range(100):
        exponents = rng.integers(0, 6, size=3)
        while exponents.sum() > 16:
            exponents = rng.integers(0, 6, size=3)
        got = float(rule.weights @ np.prod(rule.nodes ** exponents, axis=1))
        want = moment_oracle(3, exponents)
        if want == 0.0:
            assert abs(got) < 1e-12
        else:
            assert got == pytest.approx(want, rel=1e-9)


def test_sphere_rule_dimension_four(rng):
    rule = sphere_rule(4, 3)
    for exponents in ([2, 0, 0, 0], [2, 2, 0, 0], [0, 2, 2, 2], [1, 1, 2, 0]):
        got = float(rule.weights @ np.prod(rule.nodes ** np.asarray(exponents),
                                           axis=1))
        want = moment_oracle(4, exponents)
        assert got == pytest.approx(want, rel=1e-9, abs=1e-12)


def test_moment_oracle_odd_exponent_vanishes():
    assert moment_oracle(3, [1, 2, 0]) == 0.0
    assert moment_oracle(3, [0, 0, 0]) == pytest.approx(4 * np.pi)
    assert moment_oracle(3, [2, 0, 0]) == pytest.approx(4 * np.pi / 3)


def test_coarea_consistency(rng):
    # summing a univariate polynomial of the cosine against the sphere rule
    # equals the circumference of the equator times the interval integral
    k = 8
    rule = sphere_rule(3, k)
    gauss = gauss_gegenbauer(0.5, 2 * k)
    coeffs = rng.standard_normal(2 * k + 1)
    x = rng.standard_normal(3)
    x /= np.linalg.norm(x)
    cosines = rule.nodes @ x
    got = float(rule.weights @ np.polyval(coeffs, cosines))
    want = 2 * np.pi * float(gauss.weights @ np.polyval(coeffs, gauss.nodes))
    assert got == pytest.approx(want, rel=1e-9)


def test_save_load_roundtrip(tmp_path):
    rule = sphere_rule(3, 4)
    path = tmp_path / "rule.json"
    save_rule(rule, path)
    payload = json.loads(path.read_text())
    assert payload["format"] == "polystar-rule-v1"
    back = load_rule(path)
    assert back.n == rule.n
    assert back.exact_degree == rule.exact_degree
    np.testing.assert_allclose(back.nodes, rule.nodes)
    np.testing.assert_allclose(back.weights, rule.weights)


def test_load_rejects_unknown_format(tmp_path):
    path = tmp_path / "bogus.json"
    path.write_text(json.dumps({"format": "not-a-rule"}))
    with pytest.raises(DomainError):
        load_rule(path)


def test_disk_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("POLYSTAR_CACHE_DIR", str(tmp_path))
    first = cached_sphere_rule(3, 5, use_disk=True)
    files = list(tmp_path.glob("*.json"))
    assert len(files) == 1
    second = cached_sphere_rule(3, 5, use_disk=True)
    np.testing.assert_allclose(first.nodes, second.nodes)
    np.testing.assert_allclose(first.weights, second.weights)


def test_rejects_bad_arguments():
    with pytest.raises(DomainError):
        sphere_rule(1, 3)
    with pytest.raises(DomainError):
        sphere_rule(3, -1)
    with pytest.raises(DomainError):
        gauss_gegenbauer(0.5, 0)
