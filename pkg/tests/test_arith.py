import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primroots.arith import (
    FactorCache,
    PrimeFactorization,
    euler_phi,
    factorize,
    format_factor_record,
    is_prime,
    omega,
    parse_factor_record,
    pow_mod,
    primes_upto,
    totient_gap,
    use_factor_cache,
)
from primroots.errors import RangeError

from conftest import naive_is_prime, naive_phi


@pytest.mark.parametrize("n,expected", [(2, True), (1187, True), (561, False), (0, False), (1, False)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_sieve_below_1e6():
    marks = np.zeros(10**6 + 1, dtype=bool)
    marks[primes_upto(10**6)] = True
    got = np.array([is_prime(n) for n in range(10**6 + 1)])
    assert np.array_equal(got, marks)


def test_primes_upto_small():
    assert primes_upto(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert [n for n in range(2, 2000) if naive_is_prime(n)] == primes_upto(1999).tolist()


def test_is_prime_large():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**31 + 11))
    # strong pseudoprime to bases 2..11
    assert not is_prime(3825123056546413051)
    with pytest.raises(RangeError):
        is_prime(2**63 + 1)
    with pytest.raises(ValueError):
        is_prime(-3)


@pytest.mark.parametrize(
    "n,factors",
    [(1, ()), (1186, ((2, 1), (593, 1))), (16, ((2, 4),)), (1187 - 1, ((2, 1), (593, 1)))],
)
def test_factorize_examples(n, factors):
    assert factorize(n).factors == factors


def test_factorize_semiprime_beyond_trial_range():
    p, q = 1000003, 2147483647
    f = factorize(p * q * 4)
    assert f.factors == ((2, 2), (p, 1), (q, 1))
    big = (2**31 - 1) * (2**31 + 11)
    assert factorize(big).primes == (2**31 - 1, 2**31 + 11)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=1, max_value=2**62))
def test_factorize_reconstructs(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.factors) == n
    assert all(is_prime(p) for p in f.primes)
    assert list(f.primes) == sorted(set(f.primes))


def test_factorize_reconstructs_all_small():
    for n in range(1, 10**5 + 1):
        assert math.prod(p**e for p, e in factorize(n).factors) == n


def test_factorize_rejects():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(RangeError):
        factorize(2**63 + 1)
    with pytest.raises(ValueError):
        PrimeFactorization(((3, 1), (2, 1)), 6)
    with pytest.raises(ValueError):
        PrimeFactorization(((2, 1),), 3)


@pytest.mark.parametrize("n,phi,w", [(1, 1, 0), (16, 8, 1), (30, 8, 3)])
def test_phi_omega_examples(n, phi, w):
    f = factorize(n)
    assert euler_phi(f) == phi
    assert omega(f) == w


def test_phi_matches_gcd_count():
    # the direct count is quadratic, so the full range uses a gcd sieve oracle
    for n in range(1, 600):
        assert euler_phi(factorize(n)) == naive_phi(n)
    nmax = 10**5
    phi = np.arange(nmax + 1, dtype=np.int64)
    for p in primes_upto(nmax).tolist():
        phi[p::p] -= phi[p::p] // p
    for n in range(1, nmax + 1):
        assert euler_phi(factorize(n)) == phi[n]


def test_omega_primorial():
    n = math.prod(primes_upto(50).tolist())
    w = omega(factorize(n))
    assert w == 15
    assert w <= 2 * math.log(n) / math.log(math.log(n))


@pytest.mark.parametrize("b,e,m,r", [(3, 8, 17, 16), (5, 0, 7, 1), (2, 10, 1024, 0)])
def test_pow_mod_examples(b, e, m, r):
    assert pow_mod(b, e, m) == r


def test_pow_mod_matches_repeated_multiplication():
    for m in range(2, 98):
        for b in range(m):
            acc = 1 % m
            for e in range(51):
                assert pow_mod(b, e, m) == acc
                acc = acc * b % m
    with pytest.raises(ValueError):
        pow_mod(2, 3, 1)


@pytest.mark.parametrize("n,gap", [(3, 0), (31, -14), (1, 0)])
def test_totient_gap(n, gap):
    assert totient_gap(n) == gap


def test_factor_record_roundtrip():
    f = factorize(2**10 * 3 * 593)
    line = format_factor_record(f)
    assert line == f"{f.value}:2^10*3^1*593^1"
    assert parse_factor_record(line) == f
    assert str(factorize(1)) == "1"


def test_factor_cache_persists(tmp_path):
    path = tmp_path / "factors.txt"
    try:
        cache = use_factor_cache(path)
        f = factorize(1000003 * 999983)
        assert len(cache) == 1
        assert cache.get(f.value) == f
        reloaded = FactorCache(path)
        assert reloaded.get(f.value) == f
    finally:
        use_factor_cache(None)
