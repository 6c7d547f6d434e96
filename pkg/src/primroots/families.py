"""Structural prime families and totient extremes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .arith import MAX_INT, euler_phi, factorize, omega, primes_upto
from .errors import RangeError

FAMILIES = ("fermat", "germain_like", "coprimorial", "primorial", "average")
RUN_CLASSES = ("short", "medium", "long")
ENVELOPE_CONSTANT = 5


@dataclass(frozen=True)
class PrimeFamily:
    p: int
    family: str
    omega_pm1: int
    totient_ratio: Fraction


def _is_fermat(p: int) -> bool:
    m = p - 1
    if m < 1 or m & (m - 1):
        return False
    e = m.bit_length() - 1
    return e >= 1 and e & (e - 1) == 0


def _is_germain_like(factors) -> bool:
    return len(factors) == 2 and factors[0] == (2, factors[0][1]) and factors[1][1] == 1


def _running_product(n: int, start: int) -> bool:
    """True iff n is the product of all primes in [start, q] for some prime q >= start."""
    prod = 1
    for r in primes_upto(max(64, n.bit_length() * 2)).tolist():
        if r < start:
            continue
        prod *= r
        if prod == n:
            return True
        if prod > n:
            return False
    return False


def classify_prime(p: int) -> PrimeFamily:
    """Assign exactly one family, fermat > germain_like > coprimorial > primorial > average."""
    if p < 2:
        raise ValueError("p must be prime")
    f = factorize(p - 1)
    if _is_fermat(p):
        family = "fermat"
    elif _is_germain_like(f.factors):
        family = "germain_like"
    elif p > 3 and _running_product(p - 2, 3):
        family = "coprimorial"
    elif _running_product(p - 1, 2):
        family = "primorial"
    else:
        family = "average"
    return PrimeFamily(p, family, omega(f), Fraction(euler_phi(f), p - 1))


def predicted_run_class(p: int) -> str:
    """Qualitative maximal-run class from omega(p-1).

    long when omega(p-1) <= 2, short when omega(p-1) >= log p / (2 log log p),
    medium otherwise.  The first test wins when both hold.
    """
    if p < 5:
        raise ValueError("run classes are defined for p >= 5")
    w = omega(factorize(p - 1))
    if w <= 2:
        return "long"
    lp = math.log(p)
    if w >= lp / (2 * math.log(lp)):
        return "short"
    return "medium"


@dataclass(frozen=True)
class ExtremeTotient:
    n: int
    ratio_n: Fraction
    ratio_next: Fraction
    bound_n: float
    bound_next: float
    ok_n: bool
    ok_next: bool


def extreme_totient_check(x: float) -> ExtremeTotient:
    """phi(n)/n and phi(n+1)/(n+1) for n = 1 + prod_{q <= log x} q.

    Passes when |phi(n)/n - 1| <= 5/log log n and
    |phi(n+1)/(n+1) - 1/2| <= 5/log n.
    """
    lx = math.log(x)
    if lx < 2:
        raise ValueError("need log x >= 2")
    prod = 1
    for q in primes_upto(int(lx)).tolist():
        prod *= q
    n = prod + 1
    if n + 1 > MAX_INT:
        raise RangeError(f"primorial over q <= {lx:.2f} exceeds 64 bits")
    r0 = Fraction(euler_phi(factorize(n)), n)
    r1 = Fraction(euler_phi(factorize(n + 1)), n + 1)
    b0 = ENVELOPE_CONSTANT / math.log(math.log(n))
    b1 = ENVELOPE_CONSTANT / math.log(n)
    return ExtremeTotient(
        n, r0, r1, b0, b1, abs(float(r0) - 1) <= b0, abs(float(r1) - 0.5) <= b1
    )


def totient_lower_bound(n: int, dps: int = 40) -> mpmath.mpf:
    """1 / (e^gamma log log n + 5 / (2 log log n)) for n >= 3."""
    with mpmath.workdps(dps):
        ll = mpmath.log(mpmath.log(n))
        return 1 / (mpmath.exp(mpmath.euler) * ll + mpmath.mpf(5) / (2 * ll))


def totient_lower_bound_violations(nmax: int) -> list[int]:
    """n in [3, nmax] with phi(n)/n <= the explicit lower bound.

    phi(n)/n is exact; the bound is evaluated at 40 digits and compared as
    ``phi(n) > n * bound``.
    """
    bad = []
    with mpmath.workdps(40):
        gamma_exp = mpmath.exp(mpmath.euler)
        for n in range(3, nmax + 1):
            phi = euler_phi(factorize(n))
            ll = mpmath.log(mpmath.log(n))
            if not phi * (gamma_exp * ll + 5 / (2 * ll)) > n:
                bad.append(n)
    return bad
