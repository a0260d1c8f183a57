"""Statistics constants for anyons.

The central quantity is

    C(alpha, N) = min_{p = 0..N-2} min_{q in Z} |(2p+1) alpha - 2q|,

together with its fermionic-reference twin (distance to odd integers) and the
large-N limit C(alpha) = inf_N C(alpha, N).

Rational statistics parameters are handled in exact integer arithmetic via
:class:`fractions.Fraction`; floats are evaluated in floating point.
"""
from __future__ import annotations

import csv
import enum
import io
import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

StatisticsParameter = Union[Fraction, int, float]


class FractionClass(enum.Enum):
    ODD_NUMERATOR = "OddNumerator"
    EVEN_NUMERATOR = "EvenNumerator"
    IRRATIONAL_OR_UNCLASSIFIED = "IrrationalOrUnclassified"


def as_statistics(alpha: StatisticsParameter) -> Fraction | float:
    """Normalize a statistics parameter: ints/Fractions become reduced
    Fractions, floats must be finite."""
    if isinstance(alpha, bool):
        raise TypeError("statistics parameter must be a number, not bool")
    if isinstance(alpha, (int, Fraction)):
        return Fraction(alpha)
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise ValueError(f"statistics parameter must be finite, got {alpha!r}")
    return alpha


def parse_statistics(text: str) -> Fraction | float:
    """Parse ``"P/Q"`` (or a bare integer) as an exact rational, anything else
    as a float."""
    text = text.strip()
    if "/" in text:
        p, q = text.split("/", 1)
        return reduce_and_classify(int(p), int(q))[0]
    try:
        return Fraction(int(text))
    except ValueError:
        return as_statistics(float(text))


def classify(alpha: StatisticsParameter) -> FractionClass:
    alpha = as_statistics(alpha)
    if isinstance(alpha, float):
        return FractionClass.IRRATIONAL_OR_UNCLASSIFIED
    if alpha.numerator % 2:
        return FractionClass.ODD_NUMERATOR
    return FractionClass.EVEN_NUMERATOR


def reduce_and_classify(p: int, q: int) -> tuple[Fraction, FractionClass]:
    if q == 0:
        raise ZeroDivisionError("denominator must be nonzero")
    if q < 0:
        raise ValueError(f"denominator must be positive, got {q}")
    alpha = Fraction(p, q)
    return alpha, classify(alpha)


def _check_n(n: int) -> None:
    if n < 2:
        raise ValueError(f"particle number must be >= 2, got {n}")


def _residues(alpha: Fraction, n: int, odd_target: bool) -> list[int]:
    """Integer residues nu * min_q |(2p+1) alpha - target_q| for p = 0..n-2.

    The sequence is periodic in p with period nu, so at most nu terms are
    ever needed for a minimum.
    """
    mu, nu = alpha.numerator, alpha.denominator
    shift = nu if odd_target else 0
    out = []
    for p in range(n - 1):
        m = ((2 * p + 1) * mu - shift) % (2 * nu)
        out.append(min(m, 2 * nu - m))
    return out


def _float_distance(x: np.ndarray, odd_target: bool) -> np.ndarray:
    """Distance of x to the nearest even (or odd) integer, checking both
    rounding candidates."""
    y = (x - 1.0) / 2.0 if odd_target else x / 2.0
    lo = np.floor(y)
    return 2.0 * np.minimum(np.abs(y - lo), np.abs(y - (lo + 1.0)))


def _statistics_min(alpha, n: int, odd_target: bool):
    _check_n(n)
    alpha = as_statistics(alpha)
    if isinstance(alpha, Fraction):
        nu = alpha.denominator
        # period nu in p: terms beyond p = nu - 1 repeat
        res = _residues(alpha, min(n, nu + 1), odd_target)
        return Fraction(min(res), nu)
    odd = 2.0 * np.arange(n - 1) + 1.0
    return float(_float_distance(odd * alpha, odd_target).min())


def c_alpha_n(alpha: StatisticsParameter, n: int):
    """min over p in {0..n-2}, q in Z of |(2p+1) alpha - 2q|.

    Exact (a Fraction) for rational alpha, a float otherwise.
    """
    return _statistics_min(alpha, n, odd_target=False)


def c_beta_n(beta: StatisticsParameter, n: int):
    """Fermionic-reference constant: min over p, q of |(2p+1) beta - (2q+1)|."""
    return _statistics_min(beta, n, odd_target=True)


def c_alpha_profile(alpha: StatisticsParameter, n_max: int) -> list:
    """[c_alpha_n(alpha, N) for N = 2..n_max] via a single running minimum."""
    _check_n(n_max)
    alpha = as_statistics(alpha)
    if isinstance(alpha, Fraction):
        nu = alpha.denominator
        res = _residues(alpha, min(n_max, nu + 1), odd_target=False)
        out, cur = [], None
        for r in res:
            cur = r if cur is None else min(cur, r)
            out.append(Fraction(cur, nu))
        out.extend([out[-1]] * (n_max - 1 - len(out)))
        return out
    odd = 2.0 * np.arange(n_max - 1) + 1.0
    return list(np.minimum.accumulate(_float_distance(odd * alpha, False)))


def c_alpha_limit(alpha: StatisticsParameter) -> tuple[Fraction, FractionClass]:
    """inf_N C(alpha, N) for rational alpha: 1/nu for odd numerators, else 0."""
    alpha = as_statistics(alpha)
    if isinstance(alpha, float):
        raise TypeError(
            "c_alpha_limit needs an exact rational; use diophantine_witness "
            "for real statistics parameters"
        )
    cls = classify(alpha)
    if cls is FractionClass.ODD_NUMERATOR:
        return Fraction(1, alpha.denominator), cls
    return Fraction(0), cls


def positivity_threshold(alpha: StatisticsParameter) -> int:
    """Smallest N with C(alpha, N) = 0 for an even-numerator fraction,
    namely (nu + 3) / 2."""
    alpha = as_statistics(alpha)
    if isinstance(alpha, float):
        raise TypeError("positivity_threshold needs an exact rational")
    if classify(alpha) is FractionClass.ODD_NUMERATOR:
        raise ValueError(
            f"{alpha} has an odd numerator: C(alpha, N) >= 1/nu > 0 for all N"
        )
    return (alpha.denominator + 3) // 2


def _extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def bezout_odd_even(a: int, b: int) -> tuple[int, int]:
    """Integers (x, y) with a*x + b*y = 1, x odd and y even.

    Requires a odd and gcd(a, b) = 1. Starting from extended Euclid, the
    shift (x, y) -> (x + k b, y - k a) with k odd repairs wrong parities.
    """
    if a % 2 == 0:
        raise ValueError(f"a must be odd, got {a}")
    if b == 0:
        raise ValueError("b must be nonzero")
    g, x, y = _extended_gcd(a, b)
    if g < 0:
        g, x, y = -g, -x, -y
    if g != 1:
        raise ValueError(f"a={a} and b={b} are not coprime (gcd {g})")
    if x % 2 == 0 or y % 2 == 1:
        x, y = x + b, y - a
    assert a * x + b * y == 1 and x % 2 == 1 and y % 2 == 0
    return x, y


def odd_numerator_witness(alpha: Fraction) -> tuple[int, int]:
    """(p, q) with |(2p+1) alpha - 2q| = 1/nu for an odd-numerator fraction.

    Built from bezout_odd_even(mu, nu); p >= 0 always.
    """
    alpha = Fraction(alpha)
    mu, nu = alpha.numerator, alpha.denominator
    if mu % 2 == 0:
        raise ValueError(f"{alpha} does not have an odd numerator")
    x, y = bezout_odd_even(mu, nu)
    # mu*x + nu*y = 1  =>  |(|x|) mu - sign(x)(-y) nu| = 1 with -y even
    if x < 0:
        x, y = -x, -y
    return (x - 1) // 2, -y // 2


def _convergents(x: float, depth: int = 64) -> Iterable[tuple[int, int]]:
    h0, h1, k0, k1 = 0, 1, 1, 0
    frac = Fraction(x)
    for _ in range(depth):
        a = math.floor(frac)
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        yield h1, k1
        rest = frac - a
        if rest == 0:
            return
        frac = 1 / rest


def diophantine_witness(
    alpha: float, tol: float, p_max: int
) -> tuple[int, int] | None:
    """Search for (p, q) with |(2p+1) alpha - 2q| < tol and 0 <= p <= p_max.

    Candidates come from continued-fraction convergents and mediants with odd
    denominators, plus brute force over every p <= p_max. The witness with
    the smallest p is returned; None means the search bound was exhausted.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if p_max < 1:
        raise ValueError("p_max must be >= 1")
    alpha = float(alpha)
    found: set[tuple[int, int]] = set()

    def consider(num: int, den: int) -> None:
        if den <= 0 or den % 2 == 0 or num % 2:
            return
        p, q = (den - 1) // 2, num // 2
        if p <= p_max and abs(den * alpha - num) < tol:
            found.add((p, q))

    prev = (1, 0)
    for h, k in _convergents(alpha):
        if k > 2 * p_max + 1:
            break
        consider(h, k)
        # mediants with the previous convergent reach odd denominators
        # when the convergent itself has an even one
        for j in (1, 2):
            consider(h + j * prev[0], k + j * prev[1])
        prev = (h, k)

    odd = 2 * np.arange(p_max + 1) + 1
    q = np.rint(odd * alpha / 2.0)
    for cand in (q - 1, q, q + 1):
        hit = np.flatnonzero(np.abs(odd * alpha - 2 * cand) < tol)
        found.update((int(p), int(cand[p])) for p in hit)
    return min(found) if found else None


def calpha_scan(n: int, alpha_grid: Sequence[StatisticsParameter]) -> list[tuple]:
    """Pointwise (alpha, c_alpha_n(alpha, n)) in input order."""
    _check_n(n)
    return [(a, c_alpha_n(a, n)) for a in alpha_grid]


def scan_to_csv(rows: Iterable[tuple]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["alpha", "c_alpha_n"])
    for a, c in rows:
        w.writerow([f"{float(a):.12g}", f"{float(c):.12g}"])
    return buf.getvalue()
