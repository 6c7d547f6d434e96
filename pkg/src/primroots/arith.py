"""Exact integer arithmetic: primality, factorization, totients, modular powers."""

from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

import numpy as np

from .errors import RangeError

MAX_INT = 2**63
TRIAL_LIMIT = 10**6
FACTOR_SEED = 20150927

# Deterministic for every n < 3.3 * 10**24, which covers the 64-bit range.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=8)
def _prime_table(limit: int) -> np.ndarray:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    out = np.flatnonzero(sieve)
    out.setflags(write=False)
    return out


def primes_upto(limit: int) -> np.ndarray:
    """Sorted int64 array of all primes <= limit (read-only, cached)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    return _prime_table(int(limit))


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in primes_upto(TRIAL_LIMIT))


def _check_width(n: int) -> None:
    if n > MAX_INT:
        raise RangeError(f"{n} exceeds the supported width 2**63")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin test for 0 <= n <= 2**63."""
    if n < 0:
        raise ValueError("is_prime expects a non-negative integer")
    _check_width(n)
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeFactorization:
    """Prime decomposition of ``value`` as ascending (prime, exponent) pairs."""

    factors: tuple[tuple[int, int], ...]
    value: int

    def __post_init__(self):
        prod = 1
        last = 0
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __str__(self):
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" for p, e in self.factors)


def _pollard_brent(n: int, rng: random.Random) -> int:
    """Return a non-trivial factor of the odd composite n."""
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, rng: random.Random, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, rng, out)
        _split(r, rng, out)
        return
    d = _pollard_brent(n, rng)
    _split(d, rng, out)
    _split(n // d, rng, out)


class FactorCache:
    """Line-oriented factorization cache, one ``n:p1^e1*p2^e2`` record per line.

    Lookups are lock-free; appends go through a single lock so concurrent
    scans never interleave partial lines.
    """

    def __init__(self, path):
        self.path = Path(path)
        self._table: dict[int, PrimeFactorization] = {}
        self._lock = threading.Lock()
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                line = line.strip()
                if line:
                    f = parse_factor_record(line)
                    self._table[f.value] = f

    def __len__(self):
        return len(self._table)

    def get(self, n: int) -> PrimeFactorization | None:
        return self._table.get(n)

    def add(self, f: PrimeFactorization) -> None:
        with self._lock:
            if f.value in self._table:
                return
            self._table[f.value] = f
            with self.path.open("a") as fh:
                fh.write(format_factor_record(f) + "\n")


def format_factor_record(f: PrimeFactorization) -> str:
    return f"{f.value}:{f}"


def parse_factor_record(line: str) -> PrimeFactorization:
    n_text, _, body = line.partition(":")
    n = int(n_text)
    factors = []
    if body and body != "1":
        for item in body.split("*"):
            p, _, e = item.partition("^")
            factors.append((int(p), int(e or 1)))
    return PrimeFactorization(tuple(factors), n)


_active_cache: FactorCache | None = None


def use_factor_cache(path) -> FactorCache | None:
    """Install (or with ``None`` remove) the process-wide factorization cache."""
    global _active_cache
    _active_cache = FactorCache(path) if path is not None else None
    return _active_cache


def factorize(n: int, seed: int = FACTOR_SEED) -> PrimeFactorization:
    """Factor 1 <= n <= 2**63.

    Trial division by primes up to 10**6, then Brent's variant of Pollard rho
    driven by a seeded generator, so results and timings are reproducible.
    """
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    _check_width(n)
    cache = _active_cache
    if cache is not None:
        hit = cache.get(n)
        if hit is not None:
            return hit

    out: dict[int, int] = {}
    m = n
    for p in _trial_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out[p] = e
    if m > 1:
        if m < TRIAL_LIMIT * TRIAL_LIMIT or is_prime(m):
            out[m] = out.get(m, 0) + 1
        else:
            _split(m, random.Random(seed), out)
    result = PrimeFactorization(tuple(sorted(out.items())), n)
    if cache is not None:
        cache.add(result)
    return result


def euler_phi(f: PrimeFactorization) -> int:
    phi = f.value
    for p, _ in f.factors:
        phi = phi // p * (p - 1)
    return phi


def omega(f: PrimeFactorization) -> int:
    return len(f.factors)


def pow_mod(base: int, exp: int, modulus: int) -> int:
    if modulus < 2:
        raise ValueError("modulus must be >= 2")
    if exp < 0:
        raise ValueError("exponent must be non-negative")
    _check_width(modulus)
    return pow(base, exp, modulus)


def totient_gap(n: int) -> int:
    """phi(n+1) - phi(n)."""
    if n < 1:
        raise ValueError("totient_gap expects n >= 1")
    return euler_phi(factorize(n + 1)) - euler_phi(factorize(n))
