import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primroots.arith import euler_phi, factorize, primes_upto
from primroots.errors import ContractError, ResourceError
from primroots.residues import (
    is_primitive_root,
    least_primitive_root,
    primroots_by_generator,
    scan_field,
)

from conftest import naive_primroots

ROOTS_17 = [3, 5, 6, 7, 10, 11, 12, 14]
ROOTS_31 = [3, 11, 12, 13, 17, 21, 22, 24]


@pytest.mark.parametrize("u,expected", [(3, True), (2, False), (1, False), (17, False)])
def test_is_primitive_root_17(u, expected):
    assert is_primitive_root(17, factorize(16), u) is expected


def test_is_primitive_root_one_never():
    for p in primes_upto(500).tolist()[1:]:
        assert not is_primitive_root(p, factorize(p - 1), 1)


def test_is_primitive_root_contract():
    with pytest.raises(ContractError):
        is_primitive_root(17, factorize(15), 3)


@pytest.mark.parametrize("p,tau", [(17, 3), (2, 1), (31, 3), (7, 3), (23, 5), (41, 6)])
def test_least_primitive_root(p, tau):
    assert least_primitive_root(p) == tau


@pytest.mark.parametrize("p,roots", [(17, ROOTS_17), (31, ROOTS_31), (3, [2]), (2, [1])])
def test_scan_field_examples(p, roots):
    scan = scan_field(p)
    assert scan.roots() == roots
    assert scan.primroot_count == len(roots)
    assert scan.tau == roots[0]
    assert all(u in scan for u in roots)
    assert scan.is_primroot.shape == (p,)


def test_generator_examples():
    assert primroots_by_generator(17) == set(ROOTS_17)
    assert primroots_by_generator(5) == {2, 3}
    assert primroots_by_generator(7) == {3, 5}


def test_scan_matches_naive_powers():
    for p in primes_upto(300).tolist()[1:]:
        assert set(scan_field(p).roots()) == naive_primroots(p)


def test_dual_oracle_and_cardinality_below_2000():
    for p in primes_upto(2000).tolist()[1:]:
        scan = scan_field(p)
        assert set(scan.roots()) == primroots_by_generator(p)
        assert scan.primroot_count == euler_phi(factorize(p - 1))


def test_coprime_power_closure_and_nonresidues():
    for p in primes_upto(500).tolist()[1:]:
        scan = scan_field(p)
        mask = scan.is_primroot
        for u in scan.roots()[:5]:
            for j in range(1, p - 1):
                if math.gcd(j, p - 1) == 1:
                    assert mask[pow(u, j, p)]
        squares = {v * v % p for v in range(1, p)}
        if p > 3:
            assert not any(mask[s] for s in squares)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(primes_upto(200_000).tolist()[1000:]))
def test_scan_agrees_with_scalar_test(p):
    scan = scan_field(p)
    fm1 = factorize(p - 1)
    rng = np.random.default_rng(p)
    for u in rng.integers(1, p, 50).tolist():
        assert (u in scan) == is_primitive_root(p, fm1, u)
    assert scan.primroot_count == euler_phi(fm1)


def test_scan_rejects():
    with pytest.raises(ResourceError):
        scan_field(101, ceiling=100)
    with pytest.raises(ValueError):
        scan_field(15)
    with pytest.raises(ValueError):
        primroots_by_generator(2)


def test_scan_is_read_only():
    scan = scan_field(101)
    with pytest.raises(ValueError):
        scan.packed[0] = 0
