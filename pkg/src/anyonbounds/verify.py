"""Invariant suites, one per module, used by the ``verify`` command.

Each suite returns a list of :class:`Check`. Suites are deterministic: random
inputs come from fixed seeds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from . import conformal, constants, exclusion, hardy, neumann, splitting
from .grid import DensityGrid, uniform_density


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    passed: bool
    detail: str = ""


def _check(suite, name, cond, detail="") -> Check:
    return Check(suite, name, bool(cond), detail)


def core_constants_suite() -> list[Check]:
    s = "core_constants"
    out = []
    ones = all(constants.c_alpha_n(1, n) == 1 for n in range(2, 201))
    out.append(_check(s, "alpha=1 gives 1 for N<=200", ones))
    bad = []
    for nu in range(1, 51):
        for mu in range(0, 2 * nu):
            a = Fraction(mu, nu)
            if a.denominator != nu:
                continue
            limit, cls = constants.c_alpha_limit(a)
            prof = constants.c_alpha_profile(a, 2 * nu + 2)
            if prof[-1] != limit:
                bad.append(str(a))
                continue
            if cls is constants.FractionClass.ODD_NUMERATOR:
                p, _ = constants.odd_numerator_witness(a)
                if prof[min(p, len(prof) - 1)] != limit:
                    bad.append(str(a))
            else:
                first = prof.index(0) + 2
                if first != constants.positivity_threshold(a):
                    bad.append(str(a))
    out.append(_check(s, "limit and first attainment for nu<=50", not bad, ",".join(bad[:5])))
    rng = np.random.default_rng(1)
    mismatch = 0
    for _ in range(200):
        nu = int(rng.integers(1, 1001))
        mu = int(rng.integers(0, 2 * nu))
        n = int(rng.integers(2, 1001))
        a = Fraction(mu, nu)
        if abs(float(constants.c_alpha_n(a, n)) - constants.c_alpha_n(float(a), n)) > 1e-12:
            mismatch += 1
    out.append(_check(s, "exact vs float agreement", mismatch == 0, f"{mismatch} mismatches"))
    pairs_ok = True
    for a in range(1, 60, 2):
        for b in range(2, 60):
            if math.gcd(a, b) == 1:
                x, y = constants.bezout_odd_even(a, b)
                pairs_ok &= a * x + b * y == 1 and x % 2 == 1 and y % 2 == 0
    out.append(_check(s, "bezout parities", pairs_ok))
    return out


def magnetic_hardy_suite() -> list[Check]:
    s = "magnetic_hardy"
    ann = hardy.AnnulusSpec(0.1, 1.0, 2 * math.pi / 3)
    sym = hardy.SymmetryClass.ANTIPODAL_SYMMETRIC
    target = hardy.hardy_mode_constant(ann.flux, sym)
    v400 = hardy.rayleigh_oracle(ann, sym, 8, 400)
    d400 = hardy.mesh_deficit(ann, sym, 8, 400)
    d800 = hardy.mesh_deficit(ann, sym, 8, 800)
    # the ground mode is resolved exactly; refinement is visible one level up
    second = [hardy.mode_eigenvalues(ann, 0, m, 2)[1] for m in (200, 400, 800)]
    shrink = abs(second[1] - second[0]) / abs(second[2] - second[1])
    return [
        _check(s, "oracle >= (1/3)^2 - 0.02 at mesh 400", v400 >= target - 0.02, f"{v400:.12g}"),
        _check(s, "deficit halves at mesh 800", d800 <= d400 / 2,
               f"{d400:.3g} -> {d800:.3g} (beyond round-off)"),
        _check(s, "second eigenvalue converges", shrink >= 2, f"ratio {shrink:.3g}"),
        _check(s, "flux period", all(
            math.isclose(hardy.hardy_mode_constant(f + 4 * math.pi, c),
                         hardy.hardy_mode_constant(f, c), abs_tol=1e-12)
            for f in np.linspace(-7, 7, 41) for c in hardy.SymmetryClass)),
        _check(s, "4C^2/n identity", all(
            hardy.many_anyon_hardy_constant(Fraction(1, q), n) * n / 4
            == constants.c_alpha_n(Fraction(1, q), n) ** 2
            for q in range(1, 12) for n in range(2, 12))),
    ]


def local_exclusion_suite() -> list[Check]:
    s = "local_exclusion"
    D, S = exclusion.DomainKind.DISK, exclusion.DomainKind.SQUARE
    xi = exclusion.bessel_xi()
    disk = exclusion.exclusion_lower_bound(D, exclusion.PUBLISHED_PARAMS[D])
    square = exclusion.exclusion_lower_bound(S, exclusion.PUBLISHED_PARAMS[S])
    od = exclusion.optimize_exclusion(D)
    osq = exclusion.optimize_exclusion(S)
    quad = [exclusion.pfp_quadrature_check(k, d, r) for k, d, r in
            ((D, 0.54899, 0.54396), (D, 0.9, 0.1), (S, 0.5451, 0.531))]
    return [
        _check(s, "xi near 1.8412", abs(xi - 1.8412) <= 5e-4, f"{xi:.12g}"),
        _check(s, "J1'(xi) = 0", abs(exclusion.bessel_j1_prime(xi)) <= 1e-10),
        _check(s, "disk published parameters >= 0.304", disk >= 0.304, f"{disk:.6f}"),
        _check(s, "square published parameters >= 0.179", square >= 0.179, f"{square:.6f}"),
        _check(s, "optimizer >= published (disk)", od.bound_per_c2 >= disk and od.c_omega >= 0.477,
               f"{od.bound_per_c2:.6f}"),
        _check(s, "optimizer >= published (square)", osq.bound_per_c2 >= square and osq.c_omega >= 0.358,
               f"{osq.bound_per_c2:.6f}"),
        _check(s, "PfP quadrature <= 1e-3", max(quad) <= 1e-3, f"max {max(quad):.2e}"),
    ]


def neumann_lt_suite() -> list[Check]:
    s = "neumann_lt"
    energies = neumann.log_energies(1000)
    v1 = neumann.lattice_violations(1, energies)
    v2 = neumann.lattice_violations(2, energies)
    cube = neumann.CubeSpec(2, 1.0)
    _, _, margin = neumann.verify_on_neumann_family(cube, neumann.modes_by_eigenvalue(20), 256)
    return [
        _check(s, "lattice count d=1", not v1, f"{len(v1)} violations"),
        _check(s, "lattice count d=2", not v2, f"{len(v2)} violations"),
        _check(s, "Neumann family margin (20 modes)", margin >= -1e-9, f"{margin:.6g}"),
    ]


def random_density(rng: np.random.Generator, n: int = 32, max_mass: float = 1000.0) -> DensityGrid:
    """Sparse lumpy density with total mass up to ``max_mass`` and no cell
    holding 8 or more particles."""
    total = rng.uniform(0, max_mass)
    w = rng.exponential(size=(n, n)) * (rng.random((n, n)) < rng.uniform(0.05, 1))
    if w.sum() == 0:
        w[0, 0] = 1
    cell = total * w / w.sum()
    cell = np.minimum(cell, 7.9)
    return DensityGrid(0.0, 0.0, 1.0, cell * n * n)


def density_splitting_suite(samples: int = 100) -> list[Check]:
    s = "density_splitting"
    out = []
    t4 = splitting.split_tree(uniform_density(4.0))
    t16 = splitting.split_tree(uniform_density(16.0))
    out.append(_check(s, "uniform mass 4: single B leaf",
                      t4.mark is splitting.Mark.B and not t4.children))
    out.append(_check(s, "uniform mass 16: four level-1 B leaves",
                      [(l.mark, l.level) for l in t16.leaves()] == [(splitting.Mark.B, 1)] * 4))
    rng = np.random.default_rng(7)
    marks = cover = absorb = area = 0
    for _ in range(samples):
        rho = random_density(rng)
        tree = splitting.classify_leaves(splitting.split_tree(rho))
        marks += bool(splitting.mark_violations(tree))
        cover += bool(tree.children and splitting.uncovered_a_leaves(tree))
        absorb += any(l > r for _, l, r in splitting.absorption_slack(tree))
        area += splitting.leaf_area_total(tree) != rho.area
    out.append(_check(s, "mark invariants", marks == 0, f"{marks} bad grids"))
    out.append(_check(s, "coverage", cover == 0, f"{cover} bad grids"))
    out.append(_check(s, "absorption", absorb == 0, f"{absorb} bad grids"))
    out.append(_check(s, "leaves partition the root", area == 0, f"{area} bad grids"))
    xs = np.linspace(2, 8, 1000, endpoint=False)
    out.append(_check(s, "x - 1 >= 7x^2/64 on [2,8)",
                      all(splitting.exclusion_polynomial_holds(x) for x in xs)))
    cert = splitting.assemble_certificate()
    out.append(_check(s, "c_K > 0 and 4 c_K c_LT = 1",
                      cert.c_K > 0 and math.isclose(4 * cert.c_K * cert.c_LT, 1, rel_tol=1e-15)))
    return out


def conformal_hardy_suite() -> list[Check]:
    s = "conformal_hardy"
    out = []
    z0 = conformal.halton_eye_points(0.0)
    out.append(_check(s, "gamma=1 identity",
                      np.max(np.abs(conformal.conformal_map(z0, 1.0) - z0)) <= 1e-12))
    out.append(_check(s, "f(0,z)|z|^2 = 1",
                      np.max(np.abs(conformal.hardy_weight(0.0, z0) * np.abs(z0) ** 2 - 1)) <= 1e-10))
    worst_anti = worst_id = 0.0
    inside = True
    for big_r in (0.0, 0.3, 0.6, 0.9):
        g = conformal.gamma_of_r(big_r)
        pts = conformal.halton_eye_points(big_r)
        F = conformal.conformal_map(pts, g)
        inside &= bool(np.all(np.abs(F) < 1 - 1e-9))
        worst_anti = max(worst_anti, float(np.max(np.abs(conformal.conformal_map(-pts, g) + F))))
        grid = conformal.eye_sample_grid(big_r)
        ratio = conformal.derivative_ratio_fd(grid, g)
        ref = (1 - big_r**2) * conformal.hardy_weight(big_r, grid)
        worst_id = max(worst_id, float(np.max(np.abs(ratio / ref - 1))))
    out.append(_check(s, "F maps into the unit disk", inside))
    out.append(_check(s, "antipodal antisymmetry", worst_anti <= 1e-12, f"{worst_anti:.2e}"))
    out.append(_check(s, "derivative identity", worst_id <= 1e-6, f"{worst_id:.2e}"))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "core_constants": core_constants_suite,
    "magnetic_hardy": magnetic_hardy_suite,
    "local_exclusion": local_exclusion_suite,
    "neumann_lt": neumann_lt_suite,
    "density_splitting": density_splitting_suite,
    "conformal_hardy": conformal_hardy_suite,
}


def run_suites(name: str = "all") -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return SUITES[name]()
