"""Exact enumeration of primitive-root configurations in F_p."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arith import primes_upto
from .densities import tuple_local_density
from .errors import ResourceError
from .residues import FieldScan, scan_field
from .sieves import ArithSieve, coprime_mask
from .specs import TupleSpec


@dataclass(frozen=True)
class RunStats:
    p: int
    max_run: int
    merit: float
    witness: int


def member_mask(scan: FieldScan, spec: TupleSpec, sieve: ArithSieve | None = None) -> np.ndarray:
    """Residues 0..p-1 that are primitive roots and satisfy the restriction."""
    p = scan.p
    mask = scan.is_primroot.copy()
    s = spec.sieve_s
    if s is not None:
        if sieve is None or sieve.x_max < p - 1:
            raise ResourceError(f"restriction needs a sieve covering 1..{p - 1}")
        mask &= sieve.spowerfree(s)[:p]
    if spec.uses_coprime and spec.q > 1:
        mask &= coprime_mask(np.arange(p, dtype=np.int64), spec.q)
    return mask


def count_tuples(
    scan: FieldScan,
    spec: TupleSpec,
    sieve: ArithSieve | None = None,
    subset: tuple[int, int] | None = None,
) -> int:
    """Number of n in F_p with every n + a_i a (restricted) primitive root.

    With ``wraparound`` the members are reduced mod p; otherwise n + a_i must
    itself lie in 1..p-1.  ``subset=(lo, hi)`` restricts the base n to that
    closed interval.
    """
    p = scan.p
    ok = member_mask(scan, spec, sieve)
    hit = np.ones(p, dtype=bool)
    n = np.arange(p, dtype=np.int64)
    for a in spec.offsets:
        idx = n + a
        if spec.wraparound:
            hit &= ok[idx % p]
        else:
            inside = (idx >= 1) & (idx <= p - 1)
            hit &= inside & ok[np.clip(idx, 0, p - 1)]
    if subset is not None:
        lo, hi = subset
        hit = hit[max(lo, 0) : min(hi, p - 1) + 1]
    return int(np.count_nonzero(hit))


def max_run(scan: FieldScan) -> RunStats:
    """Longest block of consecutive integers in 1..p-1 that are all primitive roots."""
    p = scan.p
    bits = scan.is_primroot[1:p].astype(np.int8)
    edges = np.diff(np.concatenate(([0], bits, [0])))
    starts = np.flatnonzero(edges == 1)
    ends = np.flatnonzero(edges == -1)
    if starts.size == 0:
        return RunStats(p, 0, 0.0, 0)
    lengths = ends - starts
    i = int(np.argmax(lengths))  # first maximum, i.e. leftmost witness
    k = int(lengths[i])
    return RunStats(p, k, k / math.log(p), int(starts[i]) + 1)


def least_prime_with_run(k: int, p_ceiling: int) -> int | None:
    """Smallest odd prime p <= p_ceiling whose maximal run is exactly k.

    F_2 is skipped: its only unit 1 is trivially a primitive root.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    for p in primes_upto(p_ceiling).tolist()[1:]:
        if max_run(scan_field(p)).max_run == k:
            return p
    return None


def least_primes_with_runs(kmax: int, p_ceiling: int) -> dict[int, int | None]:
    """``least_prime_with_run`` for k = 1..kmax in a single pass over the primes."""
    out: dict[int, int | None] = {k: None for k in range(1, kmax + 1)}
    missing = set(out)
    for p in primes_upto(p_ceiling).tolist()[1:]:
        if not missing:
            break
        k = max_run(scan_field(p)).max_run
        if k in missing:
            out[k] = p
            missing.discard(k)
    return out


def is_admissible_prime_tuple(offsets) -> bool:
    """True iff the offsets miss some residue class modulo every prime p <= k+1."""
    offsets = list(offsets)
    if len(set(offsets)) != len(offsets):
        raise ValueError("offsets must be distinct")
    for p in primes_upto(len(offsets)).tolist():
        if len({a % p for a in offsets}) == p:
            return False
    return True


def is_squarefree_feasible(offsets, s: int = 2) -> bool:
    """True iff no prime p has the offsets covering every class mod p**s."""
    offsets = list(offsets)
    if len(set(offsets)) != len(offsets):
        raise ValueError("offsets must be distinct")
    if s < 2:
        raise ValueError("s must be >= 2")
    # Covering all p**s classes needs at least p**s offsets.
    limit = math.floor(len(offsets) ** (1.0 / s)) + 1
    for p in primes_upto(limit).tolist():
        if p**s <= len(offsets) and tuple_local_density(offsets, p, s) == p**s:
            return False
    return True
