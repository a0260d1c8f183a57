import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from anyonbounds.conformal import (
    EyeDomain, conformal_map, derivative_ratio_fd, eye_sample_grid, gamma_of_r,
    halton_eye_points, hardy_weight, in_eye, inverse_conformal_map, weight_table_csv,
)

radii = st.floats(0, 0.95)


def test_gamma_values():
    assert gamma_of_r(0) == 1
    assert gamma_of_r(0.5) == pytest.approx(2 / 3)
    assert gamma_of_r(math.sqrt(2) / 2) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        gamma_of_r(1.0)
    with pytest.raises(ValueError):
        gamma_of_r(-0.1)


@given(radii, radii)
def test_gamma_decreasing(a, b):
    if a < b:
        assert gamma_of_r(a) >= gamma_of_r(b)
    assert 0 < gamma_of_r(a) <= 1


def test_gamma_closes_the_eye_as_r_approaches_one():
    assert gamma_of_r(1 - 1e-12) == pytest.approx(0, abs=1e-5)


def test_identity_at_gamma_one():
    z = halton_eye_points(0.0, 500)
    assert np.max(np.abs(conformal_map(z, 1.0) - z)) <= 1e-12
    assert conformal_map(0j, 0.7) == 0


def test_corners_and_outside_rejected():
    with pytest.raises(ValueError):
        conformal_map(1.0, 0.8)
    with pytest.raises(ValueError):
        conformal_map(0.9j, 0.5)
    assert not in_eye(0.9j, 0.5) and in_eye(0.1j, 0.5)


@pytest.mark.parametrize("big_r", [0.0, 0.3, 0.5, 0.6, 0.9])
def test_maps_into_disk_and_antisymmetric(big_r):
    g = gamma_of_r(big_r)
    z = halton_eye_points(big_r, 1000)
    F = conformal_map(z, g)
    assert np.all(np.abs(F) < 1 - 1e-9)
    assert np.max(np.abs(conformal_map(-z, g) + F)) <= 1e-12
    assert np.max(np.abs(inverse_conformal_map(F, g) - z)) <= 1e-10


@settings(max_examples=50)
@given(radii, st.floats(0, 0.99), st.floats(0, 2 * math.pi))
def test_inverse_lands_in_eye(big_r, rad, ang):
    g = gamma_of_r(big_r)
    zeta = rad * complex(math.cos(ang), math.sin(ang))
    z = inverse_conformal_map(zeta, g)
    if rad < 0.98:
        assert in_eye(z, g)
        assert abs(conformal_map(z, g) - zeta) <= 1e-9


def test_weight_examples():
    assert hardy_weight(0.0, 0.5) == pytest.approx(4.0)
    assert hardy_weight(0.0, 0.5j) == pytest.approx(4.0)
    with pytest.raises(ValueError):
        hardy_weight(0.3, 0j)


def test_weight_reduces_to_inverse_square_at_zero_offset():
    z = halton_eye_points(0.0, 1000)
    assert np.max(np.abs(hardy_weight(0.0, z) * np.abs(z) ** 2 - 1)) <= 1e-10


@pytest.mark.parametrize("big_r", [0.0, 0.3, 0.6, 0.9])
def test_derivative_identity(big_r):
    g = gamma_of_r(big_r)
    z = eye_sample_grid(big_r, 20)
    assert len(z) > 100
    ref = (1 - big_r**2) * hardy_weight(big_r, z)
    assert np.all(ref > 0)
    assert np.max(np.abs(derivative_ratio_fd(z, g) / ref - 1)) <= 1e-6


def test_halton_points_deterministic_and_inside():
    a = halton_eye_points(0.6, 200, seed=4)
    assert np.array_equal(a, halton_eye_points(0.6, 200, seed=4))
    assert np.all(in_eye(a, EyeDomain(0.6).gamma))


def test_weight_csv():
    text = weight_table_csv(0.3, [0.1 + 0.1j, -0.2])
    lines = text.splitlines()
    assert lines[0] == "x,y,f" and len(lines) == 3
    assert float(lines[1].split(",")[2]) == pytest.approx(hardy_weight(0.3, 0.1 + 0.1j))
