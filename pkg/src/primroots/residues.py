"""Primitive roots in F_p.

Two independent membership routes are provided:

* the order test, ``u`` is a primitive root iff ``u**((p-1)/r) != 1`` for
  every prime ``r | p-1``;
* the generator route, ``{tau**n : gcd(n, p-1) = 1}`` for a generator tau
  found by brute-force order computation (no factorization involved).

``scan_field`` uses the first, ``primroots_by_generator`` the second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import PrimeFactorization, factorize, is_prime
from .errors import ContractError, ResourceError

SCAN_CEILING = 2**31
_CHUNK = 1 << 20


def is_primitive_root(p: int, fm1: PrimeFactorization, u: int) -> bool:
    if fm1.value != p - 1:
        raise ContractError(f"factorization of {fm1.value} does not match p-1 = {p - 1}")
    u %= p
    if u == 0:
        return False
    return all(pow(u, (p - 1) // r, p) != 1 for r in fm1.primes)


def least_primitive_root(p: int) -> int:
    if not is_prime(p):
        raise ValueError("p must be prime")
    fm1 = factorize(p - 1)
    u = 1
    while not is_primitive_root(p, fm1, u):
        u += 1
    return u


def _pow_array(base: np.ndarray, exp: int, p: int) -> np.ndarray:
    # p < 2**31 keeps every product below 2**62.
    result = np.ones_like(base)
    b = base.copy()
    while exp:
        if exp & 1:
            result = result * b % p
        exp >>= 1
        if exp:
            b = b * b % p
    return result


def _order_test_mask(p: int, fm1: PrimeFactorization) -> np.ndarray:
    # Smallest r first: r = 2 already rejects half the residues, later
    # exponentiations only touch survivors.
    mask = np.zeros(p, dtype=bool)
    for lo in range(1, p, _CHUNK):
        alive = np.arange(lo, min(lo + _CHUNK, p), dtype=np.int64)
        for r in fm1.primes:
            alive = alive[_pow_array(alive, (p - 1) // r, p) != 1]
        mask[alive] = True
    return mask


@dataclass(frozen=True)
class FieldScan:
    """Primitive-root bitmap of F_p, packed one bit per residue 0..p-1."""

    p: int
    packed: np.ndarray = field(repr=False)
    primroot_count: int
    tau: int

    @property
    def is_primroot(self) -> np.ndarray:
        """Unpacked boolean view indexed by residue."""
        return np.unpackbits(self.packed, count=self.p, bitorder="little").view(bool)

    def __contains__(self, u: int) -> bool:
        u %= self.p
        return bool(self.packed[u >> 3] >> (u & 7) & 1)

    def roots(self) -> list[int]:
        return np.flatnonzero(self.is_primroot).tolist()


def scan_field(p: int, ceiling: int = SCAN_CEILING) -> FieldScan:
    """Run the order test on every residue of F_p."""
    if not is_prime(p):
        raise ValueError("p must be prime")
    if p > ceiling:
        raise ResourceError(f"p = {p} exceeds the scan ceiling {ceiling}")
    mask = _order_test_mask(p, factorize(p - 1))
    hits = np.flatnonzero(mask)
    packed = np.packbits(mask, bitorder="little")
    packed.setflags(write=False)
    return FieldScan(p=p, packed=packed, primroot_count=int(hits.size), tau=int(hits[0]))


def _brute_order(u: int, p: int) -> int:
    x, d = u % p, 1
    while x != 1:
        x = x * u % p
        d += 1
    return d


def primroots_by_generator(p: int) -> set[int]:
    """Primitive roots of F_p as the coprime powers of a brute-force generator."""
    if p < 3:
        raise ValueError("primroots_by_generator expects p >= 3")
    tau = next(u for u in range(2, p) if _brute_order(u, p) == p - 1)
    out = set()
    x = 1
    for n in range(1, p - 1):
        x = x * tau % p
        if math.gcd(n, p - 1) == 1:
            out.add(x)
    return out
