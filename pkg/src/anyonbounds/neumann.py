"""Lieb-Thirring inequalities on cubes with Neumann boundary conditions.

C_d bounds the Neumann eigenvalue counting sum on a cube of side L:

    #{k in Z_{>=0}^d \\ {0} : pi^2 |k|^2 / L^2 < e} * 2^d / L^d <= C_d e^{d/2}.

Unit cubes [k, k+1) of the counted lattice points sit inside the quarter
ball of radius R + sqrt(d) (R = L sqrt(e) / pi), and R > 1 as soon as the
count is nonzero, which gives C_d = vol_d (1 + sqrt(d))^d / pi^d.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .grid import DensityGrid

SUPPORTED_DIMENSIONS = (1, 2, 3)


class VacuousBoundWarning(UserWarning):
    pass


@dataclass(frozen=True)
class CubeSpec:
    dimension: int
    side: float

    def __post_init__(self):
        _check_dimension(self.dimension)
        if not self.side > 0:
            raise ValueError("cube side must be positive")

    @property
    def volume(self) -> float:
        return self.side**self.dimension


def _check_dimension(d: int) -> None:
    if d not in SUPPORTED_DIMENSIONS:
        raise ValueError(f"dimension {d} not supported (use 1, 2 or 3)")


def unit_ball_volume(d: int) -> float:
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


def lattice_count_constant(d: int) -> float:
    _check_dimension(d)
    return unit_ball_volume(d) * (1 + math.sqrt(d)) ** d / math.pi**d


def c_d_prime(d: int) -> float:
    """d^2 C_d^{-2/d} / ((d + 2)(d + 4))."""
    c_d = lattice_count_constant(d)
    return d**2 * c_d ** (-2 / d) / ((d + 2) * (d + 4))


def neumann_count(e: float, d: int, side: float = 1.0) -> int:
    """Exact number of nonzero k in Z_{>=0}^d with pi^2 |k|^2 / side^2 < e.

    |k|^2 < t for integer |k|^2 is |k|^2 <= ceil(t) - 1, so everything
    below stays in integer arithmetic once ceil(t) is known.
    """
    _check_dimension(d)
    if e <= 0:
        return 0
    bound = math.ceil(e * side**2 / math.pi**2) - 1  # max allowed |k|^2
    if bound < 0:
        return 0

    def count_upto(b: int, dims: int) -> int:
        # lattice points in Z_{>=0}^dims with |k|^2 <= b
        if b < 0:
            return 0
        if dims == 1:
            return math.isqrt(b) + 1
        return sum(count_upto(b - k * k, dims - 1) for k in range(math.isqrt(b) + 1))

    return count_upto(bound, d) - 1


def _bracket_power(d: int) -> float:
    return 2 * (d + 2) / d


def lt_rhs(rho, cube: CubeSpec | None = None, orthonormal: bool = False) -> float:
    """Right side of the Neumann Lieb-Thirring inequality on a cube.

    ``rho`` is a :class:`DensityGrid` (d = 2) or an array of cell values with
    shape (n,)*d together with ``cube``. Integrals are exact cell sums.
    Non-orthonormal form:
        C_d' (int rho)^{-2/d} int [rho^{1/2} - (int rho / |Q|)^{1/2}]_+^{2(d+2)/d}
    Orthonormal form:
        C_d' int [rho^{1/2} - |Q|^{-1/2}]_+^{2(d+2)/d}
    """
    if isinstance(rho, DensityGrid):
        values, d, volume = rho.values, 2, rho.area
        if cube is not None and not math.isclose(cube.side, rho.side):
            raise ValueError("cube does not match the grid side")
    else:
        if cube is None:
            raise ValueError("an array density needs a cube")
        values = np.asarray(rho, dtype=float)
        d, volume = cube.dimension, cube.volume
        if values.ndim != d or len(set(values.shape)) != 1:
            raise ValueError(f"expected an array of shape (n,)*{d}")
    if np.any(values < 0):
        raise ValueError("negative density")
    cell = volume / values.size
    mass = float(values.sum() * cell)
    power = _bracket_power(d)
    if orthonormal:
        level, prefactor = volume ** -0.5, 1.0
    else:
        if mass == 0:
            warnings.warn("zero total mass: the bound is vacuous", VacuousBoundWarning)
            return 0.0
        level, prefactor = math.sqrt(mass / volume), mass ** (-2 / d)
    bracket = np.maximum(0.0, np.sqrt(values) - level)
    return c_d_prime(d) * prefactor * float(np.sum(bracket**power) * cell)


def neumann_mode(k: tuple[int, int], side: float, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """L^2-normalized Neumann eigenfunction cos(pi k1 x/L) cos(pi k2 y/L)."""
    def factor(kk, t):
        norm = math.sqrt(1 / side) if kk == 0 else math.sqrt(2 / side)
        return norm * np.cos(math.pi * kk * t / side)
    return factor(k[0], x) * factor(k[1], y)


def modes_by_eigenvalue(count: int) -> list[tuple[int, int]]:
    """The first ``count`` Neumann modes of a square ordered by k1^2 + k2^2."""
    r = int(math.isqrt(4 * count)) + 2
    modes = [(a, b) for a in range(r) for b in range(r)]
    modes.sort(key=lambda k: (k[0] ** 2 + k[1] ** 2, k))
    return modes[:count]


def verify_on_neumann_family(
    cube: CubeSpec, mode_set: Sequence[tuple[int, int]], resolution: int = 256
) -> tuple[float, float, float]:
    """(lhs, rhs, margin) for an orthonormal family of Neumann eigenfunctions.

    lhs is the exact kinetic energy sum pi^2 (k1^2 + k2^2) / L^2; rhs is the
    orthonormal lt_rhs of the density sampled at cell midpoints.
    """
    if cube.dimension != 2:
        raise ValueError("verification is implemented for d = 2")
    if resolution < 64:
        raise ValueError("resolution must be >= 64")
    modes = [tuple(int(v) for v in k) for k in mode_set]
    if len(set(modes)) != len(modes):
        raise ValueError("duplicate modes")
    if any(v < 0 for k in modes for v in k):
        raise ValueError("mode indices must be nonnegative")
    L = cube.side
    t = (np.arange(resolution) + 0.5) * L / resolution
    x, y = np.meshgrid(t, t)
    rho = np.zeros_like(x)
    for k in modes:
        rho += neumann_mode(k, L, x, y) ** 2
    lhs = sum(math.pi**2 * (k1 * k1 + k2 * k2) / L**2 for k1, k2 in modes)
    rhs = lt_rhs(rho, cube, orthonormal=True)
    return lhs, rhs, lhs - rhs


def log_energies(count: int = 1000, lo: float = 1e-2, hi: float = 1e6) -> np.ndarray:
    return np.logspace(math.log10(lo), math.log10(hi), count)


def lattice_violations(d: int, energies: Iterable[float], side: float = 1.0) -> list[float]:
    """Energies at which count(e) 2^d / L^d > C_d e^{d/2}."""
    c_d = lattice_count_constant(d)
    return [e for e in energies
            if neumann_count(e, d, side) * 2**d / side**d > c_d * e ** (d / 2)]
