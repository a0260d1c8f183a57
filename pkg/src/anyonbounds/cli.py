"""Command-line front end.

Exit status: 0 success, 1 usage error, 2 validation error, 3 a requested
verification failed.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import constants, exclusion, splitting
from .grid import GridError, load_density, load_potential
from .verify import SUITES, run_suites

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_FAILED = 0, 1, 2, 3

DERIVED = "implementation-derived"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _number(x):
    if isinstance(x, Fraction):
        return {"exact": str(x), "value": float(x)}
    return float(x)


def _digest(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _alpha(text: str):
    alpha = constants.parse_statistics(text)
    if isinstance(alpha, float):
        print(f"warning: alpha={text} parsed as a real number; exact "
              "classification is unavailable", file=sys.stderr)
    return alpha


def _constant_provenance() -> dict:
    return {"C_2": DERIVED, "C_2_prime": DERIVED, "c1": DERIVED, "c2": DERIVED,
            "c_K": DERIVED, "c_LT": DERIVED,
            "kappa_coupling": splitting.DERIVED_NOTE}


def cmd_constants(args) -> dict:
    alpha = _alpha(args.alpha)
    out = {"alpha": _number(alpha), "n": args.n,
           "c_alpha_n": _number(constants.c_alpha_n(alpha, args.n)),
           "class": constants.classify(alpha).value}
    if isinstance(alpha, Fraction):
        limit, _ = constants.c_alpha_limit(alpha)
        out["c_alpha_limit"] = _number(limit)
        if alpha.numerator % 2 == 0:
            out["threshold"] = constants.positivity_threshold(alpha)
        else:
            p, q = constants.odd_numerator_witness(alpha)
            out["witness"] = {"p": p, "q": q}
    return out


def cmd_scan(args) -> str:
    if args.steps < 2:
        raise ValueError("--steps must be >= 2")
    grid = np.linspace(args.lo, args.hi, args.steps)
    return constants.scan_to_csv(constants.calpha_scan(args.n, grid))


def cmd_exclusion(args) -> dict:
    kind = exclusion.DomainKind(args.domain)
    xi2 = exclusion.bessel_xi() ** 2 if args.computed_xi else None
    if args.optimize:
        cert = exclusion.optimize_exclusion(kind, restarts=args.restarts, xi_squared=xi2,
                                            seed=args.seed)
        source = DERIVED
    else:
        params = exclusion.PUBLISHED_PARAMS[kind]
        bound = exclusion.exclusion_lower_bound(kind, params, xi2)
        cert = exclusion.ExclusionCertificate(kind, params, bound,
                                              bound * exclusion.C_OMEGA_FACTOR[kind])
        source = "published parameters"
    out = cert.to_dict()
    out["xi_squared"] = xi2 if xi2 is not None else exclusion.XI_SQUARED_CERTIFIED
    out["provenance"] = {"parameters": source,
                         "bound_per_c2": DERIVED if args.optimize else "evaluated",
                         "c_omega": DERIVED if args.optimize else "evaluated"}
    return out


def _kinetic_payload(bound: splitting.KineticBound) -> dict:
    return {"value": bound.value, "n": bound.n, "c_alpha_n": bound.c_alpha_n,
            "rho_squared": bound.rho_squared, "gas_coefficient": bound.gas_coefficient,
            "uniform_value": bound.uniform_value}


def cmd_split(args) -> dict:
    rho = load_density(args.density)
    alpha = _alpha(args.alpha)
    tree, cert, bound = splitting.certify_density(rho, alpha)
    return {"tree": tree.to_dict(), "certificate": cert.to_dict(),
            "kinetic_bound": _kinetic_payload(bound),
            "provenance": _constant_provenance()}


def cmd_bound(args) -> dict:
    alpha = _alpha(args.alpha)
    cert = splitting.assemble_certificate()
    out = {"certificate": cert.to_dict(), "provenance": _constant_provenance()}
    n = args.n
    if args.density:
        rho = load_density(args.density)
        bound = splitting.kinetic_bound(rho, alpha, cert)
        out["kinetic_bound"] = _kinetic_payload(bound)
        n = n or bound.n
    if args.potential:
        if n is None:
            raise ValueError("the LT bound needs --n or --density to fix N")
        v = load_potential(args.potential)
        lt = {"n": n, "value": splitting.lt_bound(v, alpha, n, cert)}
        if constants.classify(alpha) is constants.FractionClass.ODD_NUMERATOR:
            lt["uniform_value"] = splitting.lt_bound_uniform(v, alpha, cert)
        out["lt_bound"] = lt
    if not (args.density or args.potential):
        raise ValueError("give --density and/or --potential")
    return out


def cmd_verify(args):
    checks = run_suites(args.suite)
    return {"checks": [{"suite": c.suite, "name": c.name, "passed": c.passed,
                        "detail": c.detail} for c in checks],
            "passed": all(c.passed for c in checks)}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="anyonbounds", description="Kinetic-energy and LT bounds for anyons.")
    p.add_argument("--out", help="write the report here instead of stdout")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("constants", help="C(alpha, N), its limit and class")
    c.add_argument("--alpha", required=True, help="P/Q, integer or decimal")
    c.add_argument("--n", type=int, required=True)

    s = sub.add_parser("scan", help="CSV of C(alpha, N) over an alpha grid")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--steps", type=int, default=201)
    s.add_argument("--lo", type=float, default=0.0)
    s.add_argument("--hi", type=float, default=2.0)

    e = sub.add_parser("exclusion", help="local exclusion constant for a disk or square")
    e.add_argument("--domain", choices=["disk", "square"], required=True)
    e.add_argument("--optimize", action="store_true")
    e.add_argument("--restarts", type=int, default=16)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--computed-xi", action="store_true",
                   help="use the computed Bessel zero instead of xi^2 = 3.389")

    sp = sub.add_parser("split", help="splitting tree, certificate and kinetic bound")
    sp.add_argument("--density", required=True)
    sp.add_argument("--alpha", required=True)

    b = sub.add_parser("bound", help="kinetic and Lieb-Thirring bounds")
    b.add_argument("--density")
    b.add_argument("--potential")
    b.add_argument("--alpha", required=True)
    b.add_argument("--n", type=int, help="particle number for the LT bound")

    v = sub.add_parser("verify", help="run invariant suites")
    v.add_argument("--suite", default="all", choices=["all", *SUITES])
    return p


HANDLERS = {"constants": cmd_constants, "scan": cmd_scan, "exclusion": cmd_exclusion,
            "split": cmd_split, "bound": cmd_bound, "verify": cmd_verify}


def dispatch(args) -> tuple[str, int]:
    """Run one command; returns (report text, exit status)."""
    result = HANDLERS[args.command](args)
    if isinstance(result, str):
        return result, EXIT_OK
    echo = {k: v for k, v in sorted(vars(args).items()) if k != "out"}
    inputs = {}
    for key in ("density", "potential"):
        path = getattr(args, key, None)
        if path:
            inputs[key] = {"path": str(path), "sha256": _digest(path)}
    report = {"command": echo, "inputs": inputs, "result": result}
    status = EXIT_FAILED if args.command == "verify" and not result["passed"] else EXIT_OK
    return json.dumps(report, sort_keys=True, indent=2) + "\n", status


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    try:
        text, status = dispatch(args)
    except GridError as exc:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, TypeError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
