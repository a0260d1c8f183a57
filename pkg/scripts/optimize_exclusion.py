"""Compare the published exclusion parameters with the compass-search optimum
and an independent differential-evolution run."""
import argparse

from scipy.optimize import differential_evolution

from anyonbounds.exclusion import (
    C_OMEGA_FACTOR, PUBLISHED_PARAMS, DomainKind, ExclusionParams,
    exclusion_lower_bound, optimize_exclusion,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--restarts", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    for kind in DomainKind:
        pub = exclusion_lower_bound(kind, PUBLISHED_PARAMS[kind])
        cert = optimize_exclusion(kind, restarts=args.restarts, seed=args.seed)
        de = differential_evolution(
            lambda x: -exclusion_lower_bound(kind, ExclusionParams(*x)),
            [(1e-3, 1 - 1e-3)] * 4, seed=args.seed, tol=1e-12, maxiter=1000)
        print(f"{kind.value:6s} published {pub:.6f} (c_Omega {pub * C_OMEGA_FACTOR[kind]:.4f})")
        print(f"       compass   {cert.bound_per_c2:.6f} (c_Omega {cert.c_omega:.4f}) "
              f"at {tuple(round(v, 5) for v in cert.params.as_tuple())}")
        print(f"       diff-evol {-de.fun:.6f} at {tuple(round(float(v), 5) for v in de.x)}")


if __name__ == "__main__":
    main()
