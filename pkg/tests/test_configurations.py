import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from primroots.arith import euler_phi, factorize, primes_upto
from primroots.configurations import (
    count_tuples,
    is_admissible_prime_tuple,
    is_squarefree_feasible,
    least_prime_with_run,
    least_primes_with_runs,
    max_run,
)
from primroots.densities import tuple_euler_product
from primroots.errors import ResourceError
from primroots.residues import scan_field
from primroots.sieves import build_sieve
from primroots.specs import TupleSpec

from conftest import naive_primroots

SMALL_PRIMES = primes_upto(400).tolist()[1:]


@pytest.fixture(scope="module")
def sieve():
    return build_sieve(2000)


def brute_count(p, spec, subset=None):
    roots = naive_primroots(p)

    def member(u):
        if u not in roots:
            return False
        if spec.sieve_s is not None and any(e >= spec.sieve_s for _, e in factorize(u).factors):
            return False
        return not spec.uses_coprime or math.gcd(u, spec.q) == 1

    lo, hi = subset if subset else (0, p - 1)
    total = 0
    for n in range(max(lo, 0), min(hi, p - 1) + 1):
        members = [n + a for a in spec.offsets]
        if spec.wraparound:
            members = [m % p for m in members]
        elif not all(1 <= m <= p - 1 for m in members):
            continue
        total += all(member(m) for m in members)
    return total


@pytest.mark.parametrize(
    "p,offsets,expected", [(17, (0, 1), 4), (17, (0, 1, 2, 3), 0), (31, (0, 1, 2), 1)]
)
def test_count_examples(p, offsets, expected):
    assert count_tuples(scan_field(p), TupleSpec(offsets)) == expected


@settings(max_examples=80, deadline=None)
@given(
    st.sampled_from(SMALL_PRIMES),
    st.lists(st.integers(0, 8), min_size=1, max_size=3, unique=True),
    st.sampled_from(["none", "squarefree", "spowerfree", "coprime", "squarefree_coprime"]),
    st.integers(2, 3),
    st.integers(2, 12),
    st.booleans(),
)
def test_count_matches_brute_force(p, offsets, restriction, s, q, wrap):
    spec = TupleSpec(tuple(sorted(offsets)), restriction, s=s, q=q, wraparound=wrap)
    sieve = build_sieve(400)
    assert count_tuples(scan_field(p), spec, sieve) == brute_count(p, spec)


def test_count_subset(sieve):
    spec = TupleSpec((0, 1))
    for p in (101, 211, 1009):
        m = math.ceil(p**0.8)
        assert count_tuples(scan_field(p), spec, subset=(1, m)) == brute_count(p, spec, (1, m))


def test_single_count_is_phi():
    for p in primes_upto(2000).tolist():
        assert count_tuples(scan_field(p), TupleSpec((0,))) == euler_phi(factorize(p - 1))


def test_run_count_duality():
    for p in primes_upto(600).tolist()[1:]:
        scan = scan_field(p)
        k = 1
        while count_tuples(scan, TupleSpec(tuple(range(k + 1)), wraparound=False)) > 0:
            k += 1
        assert max_run(scan).max_run == k


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from(primes_upto(1500).tolist()[1:]),
    st.lists(st.integers(0, 10), min_size=1, max_size=3, unique=True),
    st.integers(0, 10),
)
def test_adding_offset_or_restriction_never_increases(p, offsets, extra):
    sieve = build_sieve(1500)
    scan = scan_field(p)
    base = TupleSpec(tuple(sorted(offsets)))
    plain = count_tuples(scan, base)
    bigger = tuple(sorted(set(offsets) | {extra}))
    assert count_tuples(scan, TupleSpec(bigger)) <= plain
    for restriction in ("squarefree", "spowerfree", "coprime"):
        spec = TupleSpec(base.offsets, restriction, s=3, q=6)
        assert count_tuples(scan, spec, sieve) <= plain


def test_infeasible_specs_count_zero(sieve):
    for offsets in ([0, 1, 2, 3], [0, 1, 2, 3, 5], [0, 2, 3, 5]):
        feasible = is_squarefree_feasible(offsets)
        for p in primes_upto(2000).tolist()[100::30]:
            n = count_tuples(scan_field(p), TupleSpec(tuple(offsets), "squarefree"), sieve)
            if not feasible:
                assert n == 0


def test_restriction_needs_sieve():
    with pytest.raises(ResourceError):
        count_tuples(scan_field(101), TupleSpec((0,), "squarefree"))
    with pytest.raises(ResourceError):
        count_tuples(scan_field(101), TupleSpec((0,), "squarefree"), build_sieve(50))


@pytest.mark.parametrize("p,k,merit", [(17, 3, 1.058868), (11, 3, 1.251097), (3, 1, 0.910239)])
def test_max_run_examples(p, k, merit):
    run = max_run(scan_field(p))
    assert run.max_run == k
    assert run.merit == pytest.approx(merit, abs=1e-6)


def test_max_run_witness_is_leftmost():
    run = max_run(scan_field(31))
    assert (run.max_run, run.witness) == (3, 11)
    assert max_run(scan_field(17)).witness == 5
    for p in primes_upto(800).tolist()[1:]:
        roots = naive_primroots(p)
        run = max_run(scan_field(p))
        assert all(run.witness + i in roots for i in range(run.max_run))
        assert not any(all(n + i in roots for i in range(run.max_run)) for n in range(1, run.witness))


def test_merit_bounded_below_1e5():
    # empirical: the merit stays small; sampled every 25th prime below 10^5
    worst = max(max_run(scan_field(p)).merit for p in primes_upto(10**5).tolist()[1::25])
    assert worst <= 3


@pytest.mark.parametrize("k,p", [(4, 37), (7, 83), (12, 1187), (1, 3)])
def test_least_prime_with_run(k, p):
    assert least_prime_with_run(k, 1300) == p


def test_least_prime_not_found():
    assert least_primes_with_runs(9, 100)[9] is None
    assert least_prime_with_run(9, 100) is None
    with pytest.raises(ValueError):
        least_prime_with_run(0, 100)


@pytest.mark.parametrize("offsets,expected", [([0, 2, 4], False), ([0, 2, 6], True), ([0], True), ([0, 1], False), ([0, 4, 6, 10], True)])
def test_admissible(offsets, expected):
    assert is_admissible_prime_tuple(offsets) is expected


@pytest.mark.parametrize(
    "offsets,s,expected",
    [([0, 1, 2, 3], 2, False), ([0, 1, 2], 2, True), ([0, 1, 3, 5], 2, True), (list(range(8)), 3, False), (list(range(7)), 3, True)],
)
def test_squarefree_feasible(offsets, s, expected):
    assert is_squarefree_feasible(offsets, s) is expected


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 30), min_size=1, max_size=12, unique=True), st.integers(2, 3))
def test_feasible_iff_product_positive(offsets, s):
    assert is_squarefree_feasible(offsets, s) == (tuple_euler_product(offsets, s, 100) > 0)


def test_tuple_spec_validation():
    with pytest.raises(ValueError):
        TupleSpec(())
    with pytest.raises(ValueError):
        TupleSpec((1, 0))
    with pytest.raises(ValueError):
        TupleSpec((0,), "cubefree")
    with pytest.raises(ValueError):
        TupleSpec((0,), s=1)
    assert TupleSpec((0, 1), "coprime", q=3).summary() == "[0 1] coprime(q=3)"
