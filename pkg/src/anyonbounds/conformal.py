"""Conformal map of the eye domain onto the unit disk and the Hardy weight f.

The eye for opening gamma is the lens through the corners -1 and +1,

    {z : |arg((1 + z) / (1 - z))| < gamma pi / 2},

which is the unit disk for gamma = 1. F is the composition
z -> (1+z)/(1-z) -> (.)^(1/gamma) -> (w-1)/(w+1), all on principal branches.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc


def gamma_of_r(big_r: float) -> float:
    if not 0 <= big_r < 1:
        raise ValueError(f"R must lie in [0, 1), got {big_r}")
    return 1 - 2 / math.pi * math.asin(big_r)


@dataclass(frozen=True)
class EyeDomain:
    big_r: float

    def __post_init__(self):
        gamma_of_r(self.big_r)

    @property
    def gamma(self) -> float:
        return gamma_of_r(self.big_r)

    @property
    def half_height(self) -> float:
        """Half-width of the lens along the imaginary axis."""
        return math.tan(self.gamma * math.pi / 4)


def _check_gamma(gamma: float) -> None:
    if not 0 < gamma <= 1:
        raise ValueError(f"gamma must lie in (0, 1], got {gamma}")


def in_eye(z, gamma: float, margin: float = 0.0):
    """Boolean mask of points strictly inside the eye (angular margin)."""
    _check_gamma(gamma)
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        ang = np.abs(np.angle((1 + z) / (1 - z)))
    ok = (ang < gamma * math.pi / 2 - margin) & (z != 1) & (z != -1)
    return ok if ok.ndim else bool(ok)


def conformal_map(z, gamma: float):
    """F(z) = (a - b)/(a + b), a = (1+z)^(1/gamma), b = (1-z)^(1/gamma)."""
    _check_gamma(gamma)
    arr = np.asarray(z, dtype=complex)
    if np.any((arr == 1) | (arr == -1)):
        raise ValueError("the corners z = +-1 are excluded")
    if not np.all(in_eye(arr, gamma)):
        raise ValueError("point outside the eye domain")
    a = (1 + arr) ** (1 / gamma)
    b = (1 - arr) ** (1 / gamma)
    out = (a - b) / (a + b)
    return out if out.ndim else complex(out)


def inverse_conformal_map(zeta, gamma: float):
    """Inverse of :func:`conformal_map` on the open unit disk."""
    _check_gamma(gamma)
    arr = np.asarray(zeta, dtype=complex)
    if np.any(np.abs(arr) >= 1):
        raise ValueError("point outside the open unit disk")
    w = ((1 + arr) / (1 - arr)) ** gamma
    out = (w - 1) / (w + 1)
    return out if out.ndim else complex(out)


def hardy_weight(big_r: float, r_tilde):
    """f(R, z) = 16 / (gamma^2 (1 - R^2)) |(1+z)^(1+1/g)(1-z)^(1-1/g)
    - (1-z)^(1+1/g)(1+z)^(1-1/g)|^(-2), gamma = gamma(R).

    ``r_tilde`` is taken in the frame where the pair axis is imaginary.
    """
    g = gamma_of_r(big_r)
    z = np.asarray(r_tilde, dtype=complex)
    if np.any(z == 0):
        raise ValueError("the weight is singular at r_tilde = 0")
    if not np.all(in_eye(z, g)):
        raise ValueError("point outside the eye domain")
    p, m = 1 + 1 / g, 1 - 1 / g
    d = (1 + z) ** p * (1 - z) ** m - (1 - z) ** p * (1 + z) ** m
    f = 16 / (g * g * (1 - big_r**2)) / np.abs(d) ** 2
    return f if f.ndim else float(f)


def derivative_ratio_fd(z, gamma: float, step: float = 1e-6):
    """|F'(z)|^2 / |F(z)|^2 with F' from a central difference along the real
    axis (F is holomorphic, so one direction suffices)."""
    z = np.asarray(z, dtype=complex)
    dF = (conformal_map(z + step, gamma) - conformal_map(z - step, gamma)) / (2 * step)
    return np.abs(dF) ** 2 / np.abs(conformal_map(z, gamma)) ** 2


def eye_sample_grid(big_r: float, size: int = 20, shrink: float = 0.9,
                    margin: float = 0.05) -> np.ndarray:
    """Points of a size x size Cartesian grid over the shrunken bounding box
    that lie in the eye with an angular margin, excluding the origin."""
    eye = EyeDomain(big_r)
    xs = np.linspace(-shrink, shrink, size)
    ys = np.linspace(-shrink, shrink, size) * eye.half_height
    z = (xs[None, :] + 1j * ys[:, None]).ravel()
    keep = in_eye(z, eye.gamma, margin) & (np.abs(z) > 1e-3)
    return z[keep]


def halton_eye_points(big_r: float, count: int = 1000, seed: int = 0,
                      margin: float = 1e-3) -> np.ndarray:
    """``count`` scrambled-Halton points in the eye (rejection from the box)."""
    eye = EyeDomain(big_r)
    sampler = qmc.Halton(d=2, scramble=True, seed=seed)
    h = eye.half_height
    out: list[complex] = []
    while len(out) < count:
        u = sampler.random(2 * count)
        z = (2 * u[:, 0] - 1) + 1j * (2 * u[:, 1] - 1) * h
        out.extend(z[in_eye(z, eye.gamma, margin)].tolist())
    return np.array(out[:count])


def weight_table_csv(big_r: float, points) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y", "f"])
    pts = np.asarray(points, dtype=complex)
    for z, f in zip(pts, np.atleast_1d(hardy_weight(big_r, pts))):
        w.writerow([f"{z.real:.12g}", f"{z.imag:.12g}", f"{f:.12g}"])
    return buf.getvalue()
