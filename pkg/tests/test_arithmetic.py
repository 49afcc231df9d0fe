import math

import pytest

from mondrian_sieve.arithmetic import (
    ArithmeticCache,
    PrimeFactorization,
    divisors,
    factorize,
    is_square,
    is_squarefree,
    primes_upto,
    smallest_nonunit_divisor,
    tau2,
    tau2_star,
)

from naive import divisors_by_trial, squarefree_mask, tau2_star_by_pairs


def test_primes_upto():
    assert list(primes_upto(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_upto(1)) == 0
    assert len(primes_upto(10**6)) == 78498


def test_factorize_examples():
    assert factorize(1).factors == ()
    assert factorize(6).factors == ((2, 1), (3, 1))
    assert factorize(18).factors == ((2, 1), (3, 2))
    assert factorize(2**31 + 11).value == 2**31 + 11


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_cache_matches_trial(cache):
    for n in range(1, 2001):
        assert factorize(n, cache) == factorize(n)


def test_prime_factorization_invariants():
    with pytest.raises(ValueError):
        PrimeFactorization(12, ((3, 1), (2, 2)))  # primes out of order
    with pytest.raises(ValueError):
        PrimeFactorization(12, ((2, 0), (3, 1)))  # zero exponent
    with pytest.raises(ValueError):
        PrimeFactorization(13, ((2, 2), (3, 1)))  # product mismatch
    fz = factorize(12)
    assert fz.squared().value == 144
    assert fz.squared().factors == ((2, 4), (3, 2))


def test_tau2_examples():
    assert tau2(6) == 4
    assert tau2(1) == 1
    assert tau2(36) == 9


def test_tau2_multiplicative():
    for a in range(1, 60):
        for b in range(1, 60):
            if math.gcd(a, b) == 1:
                assert tau2(a * b) == tau2(a) * tau2(b)


def test_tau2_monotone_under_divisibility(cache):
    for n in range(1, 2001):
        tau_n = tau2(n, cache)
        assert all(tau2(d, cache) <= tau_n for d in divisors(n, cache))


def test_tau2_star_examples():
    assert tau2_star(6) == 2
    assert tau2_star(1) == 1
    assert tau2_star(18) == 3
    assert tau2_star(8) == 2


def test_tau2_star_relation_and_pair_count(cache):
    for n in range(1, 5001):
        star = tau2_star(n, cache)
        assert star == (tau2(n, cache) + (1 if is_square(n) else 0)) // 2
    for n in list(range(1, 400)) + [9991, 10000]:
        assert tau2_star(n) == tau2_star_by_pairs(n)


def test_square_and_squarefree():
    assert is_square(36)
    assert not is_square(35)
    assert not is_squarefree(18)
    assert is_squarefree(30)
    assert is_squarefree(1)


def test_squarefree_count_small(cache):
    by_library = sum(1 for n in range(1, 10**4 + 1) if is_squarefree(n, cache))
    by_mask = int(squarefree_mask(10**4)[1:].sum())
    assert by_library == by_mask == 6083


def test_divisors_examples():
    assert divisors(6) == [1, 2, 3, 6]
    assert divisors(1) == [1]
    assert divisors(36) == [1, 2, 3, 4, 6, 9, 12, 18, 36]


def test_divisors_against_trial(cache):
    for n in range(1, 401):
        divs = divisors(n, cache)
        assert divs == divisors_by_trial(n)
        assert len(divs) == tau2(n, cache)
        assert all(n % d == 0 for d in divs)


def test_smallest_nonunit_divisor():
    assert smallest_nonunit_divisor(35) == 5
    assert smallest_nonunit_divisor(2) == 2
    with pytest.raises(ValueError):
        smallest_nonunit_divisor(1)


def test_smallest_nonunit_divisor_is_prime(cache):
    prime_set = set(int(p) for p in primes_upto(2000))
    for n in range(2, 2001):
        assert smallest_nonunit_divisor(n, cache) in prime_set


def test_smallest_divisor_invariant_under_squaring():
    # roughness of n and n^2 coincide: D(n) = D(n^2)
    for n in range(2, 1001):
        assert smallest_nonunit_divisor(n) == smallest_nonunit_divisor(n * n)


def test_cache_rejects_out_of_range():
    small = ArithmeticCache(100)
    with pytest.raises(ValueError):
        small.factor_pairs(101)
    assert small.factor_pairs(100) == [(2, 2), (5, 2)]
    assert smallest_nonunit_divisor(101, small) == 101  # falls back to trial


def test_cache_spf_table(cache):
    for k in range(2, 2001):
        p = cache.smallest_prime_factor(k)
        assert k % p == 0
        assert all(k % q for q in range(2, p))
