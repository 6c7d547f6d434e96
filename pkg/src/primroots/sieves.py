"""Interval sieves for mu, mu^2, mu_s and omega, and their sums over [1, x]."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .arith import primes_upto
from .errors import ContractError, ResourceError

SIEVE_BUDGET = 10**8


@dataclass(frozen=True, eq=False)
class ArithSieve:
    """Arrays indexed by n = 0..x_max; index 0 is a placeholder."""

    x_max: int
    mobius: np.ndarray = field(repr=False)
    smallest_prime_factor: np.ndarray = field(repr=False)
    omega: np.ndarray = field(repr=False)

    @cached_property
    def squarefree(self) -> np.ndarray:
        return self.mobius != 0

    def spowerfree(self, s: int) -> np.ndarray:
        """Boolean mu_s over 0..x_max (entry 0 is False)."""
        if s < 2:
            raise ValueError("s must be >= 2")
        if s == 2:
            return self.squarefree
        mask = np.ones(self.x_max + 1, dtype=bool)
        mask[0] = False
        for p in primes_upto(int(round(self.x_max ** (1.0 / s))) + 1):
            ps = int(p) ** s
            if ps > self.x_max:
                break
            mask[ps::ps] = False
        return mask

    def factor(self, n: int) -> list[tuple[int, int]]:
        out = []
        while n > 1:
            p = int(self.smallest_prime_factor[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return out


def build_sieve(x_max: int, budget: int = SIEVE_BUDGET) -> ArithSieve:
    if x_max < 1:
        raise ValueError("x_max must be positive")
    if x_max > budget:
        raise ResourceError(f"x_max = {x_max} exceeds the sieve budget {budget}")
    n = x_max + 1
    spf = np.zeros(n, dtype=np.int32 if x_max < 2**31 else np.int64)
    mob = np.ones(n, dtype=np.int8)
    om = np.zeros(n, dtype=np.int8)
    mob[0] = 0
    primes = primes_upto(x_max)
    # Descending order so the smallest prime writes last.
    for p in primes[::-1]:
        p = int(p)
        spf[p::p] = p
    for p in primes:
        p = int(p)
        mob[p::p] *= -1
        om[p::p] += 1
        if p * p <= x_max:
            mob[p * p :: p * p] = 0
    for arr in (spf, mob, om):
        arr.setflags(write=False)
    return ArithSieve(x_max=x_max, mobius=mob, smallest_prime_factor=spf, omega=om)


def _need(sieve: ArithSieve, x: int) -> None:
    if x > sieve.x_max:
        raise ResourceError(f"x = {x} exceeds sieve range {sieve.x_max}")


def mu_s_divisor_sum(sieve: ArithSieve, s: int, n: int) -> int:
    """sum_{d^s | n} mu(d)."""
    total = 0
    d = 1
    while d**s <= n:
        if n % d**s == 0:
            total += int(sieve.mobius[d])
        d += 1
    return total


def mu_s(sieve: ArithSieve, s: int, n: int) -> int:
    """1 if n is s-power free, else 0; checked against the divisor-sum expansion."""
    if s < 2:
        raise ValueError("s must be >= 2")
    if n < 1:
        raise ValueError("n must be positive")
    _need(sieve, n)
    direct = int(all(e < s for _, e in sieve.factor(n)))
    if direct != mu_s_divisor_sum(sieve, s, n):
        raise ContractError(f"mu_s({n}) disagrees with its divisor-sum expansion")
    return direct


def summatory_squarefree(sieve: ArithSieve, x: int) -> int:
    _need(sieve, x)
    return int(np.count_nonzero(sieve.squarefree[1 : x + 1]))


def summatory_spowerfree(sieve: ArithSieve, s: int, x: int) -> int:
    _need(sieve, x)
    return int(np.count_nonzero(sieve.spowerfree(s)[1 : x + 1]))


def _progression(x: int, q: int, a: int) -> slice:
    if q < 1:
        raise ValueError("q must be >= 1")
    a %= q
    return slice(a if a >= 1 else q, x + 1, q)


def summatory_squarefree_progression(sieve: ArithSieve, x: int, q: int, a: int) -> int:
    """Number of squarefree n <= x with n = a (mod q)."""
    _need(sieve, x)
    return int(np.count_nonzero(sieve.squarefree[_progression(x, q, a)]))


def coprime_mask(values: np.ndarray, q: int) -> np.ndarray:
    return np.gcd(values, q) == 1


def summatory_squarefree_coprime(sieve: ArithSieve, x: int, q: int) -> int:
    _need(sieve, x)
    if q < 1:
        raise ValueError("q must be >= 1")
    n = np.arange(1, x + 1, dtype=np.int64)
    return int(np.count_nonzero(sieve.squarefree[1 : x + 1] & coprime_mask(n, q)))


def tuple_mask(base: np.ndarray, x: int, offsets) -> np.ndarray:
    """``out[n-1] = all(base[n + a] for a in offsets)`` for n = 1..x."""
    out = np.ones(x, dtype=bool)
    for a in offsets:
        out &= base[1 + a : x + 1 + a]
    return out


def correlation_spowerfree(sieve: ArithSieve, x: int, offsets, s: int = 2) -> int:
    offsets = list(offsets)
    if len(set(offsets)) != len(offsets) or min(offsets) < 0:
        raise ValueError("offsets must be distinct and non-negative")
    _need(sieve, x + max(offsets))
    return int(np.count_nonzero(tuple_mask(sieve.spowerfree(s), x, offsets)))


def correlation_squarefree(sieve: ArithSieve, x: int, offsets) -> int:
    """sum_{n <= x} prod_i mu^2(n + a_i)."""
    return correlation_spowerfree(sieve, x, offsets, 2)


def correlation_squarefree_coprime(sieve: ArithSieve, x: int, a: int, q: int, s: int = 2) -> int:
    """Pairs n, n+a with both s-power free and both coprime to q, n <= x."""
    _need(sieve, x + a)
    n = np.arange(1, x + 1, dtype=np.int64)
    free = sieve.spowerfree(s)
    mask = free[1 : x + 1] & free[1 + a : x + 1 + a]
    mask &= coprime_mask(n, q) & coprime_mask(n + a, q)
    return int(np.count_nonzero(mask))


def omega_progression_sum(sieve: ArithSieve, x: int, q: int, a: int) -> int:
    """sum of omega(n) over n <= x, n = a (mod q); q = 1 sums every n."""
    _need(sieve, x)
    return int(sieve.omega[_progression(x, q, a)].sum(dtype=np.int64))


def omega_leading_term(x: float, q: int) -> float:
    """x log log x / q: the progression has about x/q terms, each with omega near log log x."""
    if q < 1:
        raise ValueError("q must be >= 1")
    return x * math.log(math.log(x)) / q
