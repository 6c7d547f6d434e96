import math

import pytest

from primroots.sieves import build_sieve


def naive_phi(n):
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def naive_is_prime(n):
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def naive_primroots(p):
    """Residues whose multiplicative order is p - 1, by listing powers."""
    out = set()
    for u in range(1, p):
        seen, x = set(), 1
        for _ in range(p - 1):
            x = x * u % p
            seen.add(x)
        if len(seen) == p - 1:
            out.add(u)
    return out


@pytest.fixture(scope="session")
def sieve_1e6():
    return build_sieve(10**6 + 10)


@pytest.fixture(scope="session")
def sieve_1e5():
    return build_sieve(10**5 + 10)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        ok, detail = RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
