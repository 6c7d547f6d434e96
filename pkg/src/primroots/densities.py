"""Euler products, local densities and main-term predictors.

Every infinite product over primes is truncated at a cutoff Q and evaluated
as an exact rational product carried in 60-digit fixed point, so rounding
cannot drift across the ~78 000 factors below 10**6.  Results are returned
as :class:`decimal.Decimal` at 50 significant digits.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from .arith import euler_phi, factorize, primes_upto
from .specs import TupleSpec

DEFAULT_CUTOFF = 10**6
PRECISION = 50
_GUARD = 60
_SCALE = 10**_GUARD

# 24-digit reference values of the five constants.
REFERENCE_CONSTANTS = {
    "squarefree_density": "0.607988295164627617135754",
    "pair_density": "0.322699054242535576161483",
    "triple_density": "0.125524878896821220184683",
    "pair_correction": "0.872985953449313618771745",
    "triple_correction": "0.558526979127689105533330",
}


def _ctx() -> decimal.Context:
    return decimal.Context(prec=PRECISION)


def to_decimal(x) -> decimal.Decimal:
    ctx = _ctx()
    if isinstance(x, Fraction):
        return ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))
    return ctx.plus(decimal.Decimal(x))


def _fixed_product(factors) -> decimal.Decimal:
    """prod num/den over an iterable of integer pairs; 0 if any numerator is 0."""
    acc = _SCALE
    for num, den in factors:
        if num <= 0:
            return decimal.Decimal(0)
        acc = acc * num // den
    return _ctx().divide(decimal.Decimal(acc), decimal.Decimal(_SCALE))


def truncated_euler_product(rho: Callable[[int], int], s: int, Q: int = DEFAULT_CUTOFF) -> decimal.Decimal:
    """prod_{q <= Q prime} (1 - rho(q) / q**s)."""
    if s < 2:
        raise ValueError("s must be >= 2")

    def factors():
        for q in primes_upto(Q).tolist():
            qs = q**s
            yield qs - min(rho(q), qs), qs

    return _fixed_product(factors())


def zeta_reciprocal(s: int, Q: int = DEFAULT_CUTOFF) -> decimal.Decimal:
    """prod_{q <= Q} (1 - q**-s), the truncated Euler product of 1/zeta(s)."""
    return truncated_euler_product(lambda q: 1, s, Q)


def dependence_correction_consecutive(j: int, Q: int = DEFAULT_CUTOFF) -> decimal.Decimal:
    """Ratio of the j-consecutive squarefree density to (6/pi^2)**j, j in {2, 3}."""
    if j == 2:
        # (1 + 1/(q^2 (q^2-2)))^-1 = q^2 (q^2-2) / (q^2-1)^2
        gen = ((q * q * (q * q - 2), (q * q - 1) ** 2) for q in primes_upto(Q).tolist())
    elif j == 3:
        # (1 + (3q^2-1)/(q^4 (q^2-3)))^-1 = q^4 (q^2-3) / (q^2-1)^3
        gen = ((q**4 * (q * q - 3), (q * q - 1) ** 3) for q in primes_upto(Q).tolist())
    else:
        raise ValueError("j must be 2 or 3")
    return _fixed_product(gen)


def tuple_local_density(offsets, p: int, s: int = 2) -> int:
    """Number of residues mod p**s hit by -a_i; the Euler factor is 1 - rho/p**s."""
    offsets = list(offsets)
    if not offsets:
        raise ValueError("offsets must be non-empty")
    m = p**s
    return len({(-a) % m for a in offsets})


def coprime_tuple_density(q: int, offsets) -> Fraction:
    """Exact density of n mod q with every n + a_i coprime to q."""
    if q < 1:
        raise ValueError("q must be >= 1")
    out = Fraction(1)
    for r in factorize(q).primes:
        out *= 1 - Fraction(len({a % r for a in offsets}), r)
    return out


def coprime_pair_density(q: int, a: int) -> Fraction:
    """Density of n mod q with gcd(n, q) = gcd(n + a, q) = 1."""
    return coprime_tuple_density(q, (0, a))


def totient_ratio(n: int) -> Fraction:
    return Fraction(euler_phi(factorize(n)), n)


def dependence_correction_coprime(q: int, offsets) -> Fraction:
    """c(q, a): joint coprime density over the independent guess (phi(q)/q)**(k+1)."""
    offsets = tuple(offsets)
    return coprime_tuple_density(q, offsets) / totient_ratio(q) ** len(offsets)


@lru_cache(maxsize=64)
def _tuple_product(offsets: tuple[int, ...], s: int, Q: int, skip: int) -> decimal.Decimal:
    # Primes dividing ``skip`` are excluded (their local factor is handled exactly elsewhere).
    span = offsets[-1] - offsets[0]
    full = len(offsets)

    def rho(q):
        if skip % q == 0:
            return 0
        if q**s > span:
            return full
        return tuple_local_density(offsets, q, s)

    return truncated_euler_product(rho, s, Q)


def tuple_euler_product(offsets, s: int = 2, Q: int = DEFAULT_CUTOFF, exclude_divisors_of: int = 1) -> decimal.Decimal:
    """prod_q (1 - rho(q)/q**s) for the tuple, optionally skipping q | exclude_divisors_of."""
    offs = tuple(sorted(int(a) for a in offsets))
    shift = offs[0]
    return _tuple_product(tuple(a - shift for a in offs), s, Q, exclude_divisors_of)


COMPONENT_LABELS = (
    "euler_product_value",
    "totient_ratio",
    "totient_ratio_exponent",
    "coprime_factor",
    "correction_factor",
)


@dataclass(frozen=True)
class DensityModel:
    """Predicted main term for a configuration at one prime, with its factors."""

    spec: TupleSpec
    p: int
    population: int
    main_term: decimal.Decimal
    components: tuple[tuple[str, object], ...]

    def component(self, label: str):
        return dict(self.components)[label]

    def recompute(self) -> decimal.Decimal:
        c = dict(self.components)
        with decimal.localcontext(_ctx()):
            ratio = to_decimal(c["totient_ratio"]) ** c["totient_ratio_exponent"]
            out = c["euler_product_value"] * ratio
            out *= to_decimal(c["coprime_factor"]) * to_decimal(c["correction_factor"])
            return +(out * self.population)


def predict_main_term(
    spec: TupleSpec,
    p: int,
    Q: int = DEFAULT_CUTOFF,
    totient_exponent: int | None = None,
    population: int | None = None,
) -> DensityModel:
    """Main term of the count of ``spec`` configurations in F_p.

    The count of n (out of ``population``, default p) is predicted as
    ``E * (phi(p-1)/(p-1))**e * C * c * population`` where E is the Euler
    product of the power-free condition, C = (phi(q)/q)**(k+1) and c the
    exact coprime dependence correction.  ``totient_exponent`` overrides
    the default e = k + 1.
    """
    if not isinstance(spec, TupleSpec):
        raise TypeError("spec must be a TupleSpec")
    if p < 2:
        raise ValueError("p must be prime")
    k1 = len(spec.offsets)
    exponent = k1 if totient_exponent is None else totient_exponent
    ratio = totient_ratio(p - 1)

    euler = decimal.Decimal(1)
    s = spec.sieve_s
    if s is not None:
        skip = spec.q if spec.restriction == "squarefree_coprime" else 1
        euler = tuple_euler_product(spec.offsets, s, Q, exclude_divisors_of=skip)

    coprime = Fraction(1)
    correction = Fraction(1)
    if spec.uses_coprime:
        coprime = totient_ratio(spec.q) ** k1
        correction = dependence_correction_coprime(spec.q, spec.offsets)

    pop = p if population is None else population
    components = (
        ("euler_product_value", euler),
        ("totient_ratio", ratio),
        ("totient_ratio_exponent", exponent),
        ("coprime_factor", coprime),
        ("correction_factor", correction),
    )
    model = DensityModel(spec, p, pop, decimal.Decimal(0), components)
    return DensityModel(spec, p, pop, model.recompute(), components)


def named_constant_values(Q: int = DEFAULT_CUTOFF) -> dict[str, decimal.Decimal]:
    """The five named constants as truncated products at cutoff Q."""
    return {
        "squarefree_density": truncated_euler_product(lambda q: 1, 2, Q),
        "pair_density": truncated_euler_product(lambda q: 2, 2, Q),
        "triple_density": truncated_euler_product(lambda q: 3, 2, Q),
        "pair_correction": dependence_correction_consecutive(2, Q),
        "triple_correction": dependence_correction_consecutive(3, Q),
    }
