"""Magnetic Hardy constants on annuli and the many-anyon Hardy coefficient.

The Rayleigh-quotient oracle discretizes the angular-mode radial form

    int (|v'|^2 + (l + Phi/2pi)^2 |v|^2 / r^2) r dr  /  int |v|^2 / r^2 r dr

with P1 elements and mass lumping, natural (free) conditions at both radii.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .constants import StatisticsParameter, as_statistics, c_alpha_n


class SymmetryClass(enum.Enum):
    ANTIPODAL_SYMMETRIC = "AntipodalSymmetric"
    ANTIPODAL_ANTISYMMETRIC = "AntipodalAntisymmetric"

    @property
    def parity(self) -> int:
        return 0 if self is SymmetryClass.ANTIPODAL_SYMMETRIC else 1


@dataclass(frozen=True)
class AnnulusSpec:
    r_inner: float
    r_outer: float
    flux: float

    def __post_init__(self):
        if not (0 <= self.r_inner < self.r_outer):
            raise ValueError(
                f"need 0 <= r_inner < r_outer, got {self.r_inner}, {self.r_outer}"
            )
        if not math.isfinite(self.flux):
            raise ValueError("flux must be finite")


@dataclass(frozen=True)
class AnnularDecomposition:
    breakpoints: tuple[float, ...]
    counts: tuple[int, ...]


def _distance_to_parity(t: float, parity: int) -> float:
    y = (t - parity) / 2.0
    lo = math.floor(y)
    return 2.0 * min(y - lo, lo + 1 - y)


def hardy_mode_constant(flux: float, cls: SymmetryClass) -> float:
    """Squared distance of flux/2pi to the nearest even (symmetric) or odd
    (antisymmetric) integer."""
    if not math.isfinite(flux):
        raise ValueError("flux must be finite")
    return _distance_to_parity(flux / (2 * math.pi), cls.parity) ** 2


def pair_exchange_flux(alpha: float, enclosed: int) -> float:
    """Flux 2 pi alpha (1 + 2p) seen by a pair exchange around p particles."""
    if enclosed < 0:
        raise ValueError("enclosed particle count must be >= 0")
    return 2 * math.pi * float(alpha) * (1 + 2 * enclosed)


def many_anyon_hardy_constant(alpha: StatisticsParameter, n: int):
    """Coefficient 4 C(alpha, n)^2 / n of the pairwise inverse-square term."""
    c = c_alpha_n(alpha, n)
    if isinstance(c, Fraction):
        return 4 * c * c / n
    return 4.0 * c * c / n


def annular_decomposition(
    center_distance: float,
    particle_distances: Sequence[float],
    boundary_distance: float,
) -> AnnularDecomposition:
    """Split (0, boundary_distance) at the distances of the other particles.

    ``center_distance`` is accepted for interface symmetry and unused: all
    distances are measured from the pair's center of mass. Particles lying
    exactly on a breakpoint count as enclosed by the closed inner disk.
    """
    if boundary_distance <= 0:
        raise ValueError("boundary_distance must be positive")
    dists = np.asarray(particle_distances, dtype=float)
    if dists.size and dists.min() < 0:
        raise ValueError("distances must be nonnegative")
    inner = sorted({d for d in dists.tolist() if 0 < d < boundary_distance})
    breaks = [0.0, *inner, float(boundary_distance)]
    counts = tuple(int(np.count_nonzero(dists <= b)) for b in breaks[:-1])
    return AnnularDecomposition(tuple(breaks), counts)


def _allowed_modes(cls: SymmetryClass, mode_cut: int) -> np.ndarray:
    modes = np.arange(-mode_cut, mode_cut + 1)
    return modes[(modes % 2) == cls.parity]


def radial_pencil(r_inner: float, r_outer: float, mesh_points: int):
    """Tridiagonal stiffness (weight r) and lumped mass (weight 1/r) for P1
    elements on a uniform radial mesh.

    Returns (diag_K, offdiag_K, lumped_M).
    """
    r = np.linspace(r_inner, r_outer, mesh_points)
    h = np.diff(r)
    # int_e phi_i' phi_j' r dr = r_mid / h on each element
    k_el = 0.5 * (r[:-1] + r[1:]) / h
    diag = np.zeros(mesh_points)
    diag[:-1] += k_el
    diag[1:] += k_el
    off = -k_el
    # lumped row sums of the consistent 1/r mass: int_e phi_i / r dr
    a, b = r[:-1], r[1:]
    log_ratio = np.log(b / a)
    left = (b * log_ratio - h) / h  # int_a^b (b - r)/(h r) dr
    right = (h - a * log_ratio) / h  # int_a^b (r - a)/(h r) dr
    mass = np.zeros(mesh_points)
    mass[:-1] += left
    mass[1:] += right
    return diag, off, mass


def mode_eigenvalues(
    annulus: AnnulusSpec, mode: int, mesh_points: int, count: int = 1
) -> np.ndarray:
    """Lowest ``count`` generalized eigenvalues for angular mode ``mode``."""
    diag, off, mass = radial_pencil(annulus.r_inner, annulus.r_outer, mesh_points)
    shift = (mode + annulus.flux / (2 * math.pi)) ** 2
    s = 1.0 / np.sqrt(mass)
    d = diag * s * s + shift
    e = off * s[:-1] * s[1:]
    try:
        w = eigh_tridiagonal(d, e, eigvals_only=True, select="i",
                             select_range=(0, count - 1))
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"radial eigensolver failed for mode {mode}") from exc
    if not np.all(np.isfinite(w)):
        raise RuntimeError(f"radial eigensolver returned non-finite values for mode {mode}")
    return w


def rayleigh_oracle(
    annulus: AnnulusSpec, cls: SymmetryClass, mode_cut: int, mesh_points: int
) -> float:
    """Minimum discrete Rayleigh quotient over allowed modes |l| <= mode_cut."""
    if mesh_points < 16:
        raise ValueError("mesh too coarse: need at least 16 points")
    if mode_cut < 1:
        raise ValueError("mode_cut must be >= 1")
    if annulus.r_inner <= 0:
        raise ValueError("oracle needs r_inner > 0")
    modes = _allowed_modes(cls, mode_cut)
    t = annulus.flux / (2 * math.pi)
    # quotients grow like (l + t)^2; the best mode must be inside the cut
    best = min(modes, key=lambda l: abs(l + t))
    if abs(best + t) > 1.0 + 1e-12:
        raise ValueError(
            f"mode_cut={mode_cut} too small for flux/2pi={t:.6g}"
        )
    return float(min(mode_eigenvalues(annulus, int(l), mesh_points)[0] for l in modes))


def eigen_roundoff(annulus: AnnulusSpec, mesh_points: int, mode_cut: int = 8) -> float:
    """Floating-point resolution of the discrete eigenvalues: a small multiple
    of machine epsilon times a Gershgorin bound on the scaled matrix."""
    diag, off, mass = radial_pencil(annulus.r_inner, annulus.r_outer, mesh_points)
    s = 1.0 / np.sqrt(mass)
    t = abs(annulus.flux / (2 * math.pi)) + mode_cut
    d = diag * s * s + t * t
    e = np.abs(off * s[:-1] * s[1:])
    radius = d.copy()
    radius[:-1] += e
    radius[1:] += e
    return 8 * np.finfo(float).eps * float(radius.max())


def mesh_deficit(annulus: AnnulusSpec, cls: SymmetryClass, mode_cut: int,
                 mesh_points: int) -> float:
    """How far the oracle falls below the exact mode constant, with
    differences under :func:`eigen_roundoff` counted as zero."""
    target = hardy_mode_constant(annulus.flux, cls)
    value = rayleigh_oracle(annulus, cls, mode_cut, mesh_points)
    gap = target - value
    return gap if gap > eigen_roundoff(annulus, mesh_points, mode_cut) else 0.0
