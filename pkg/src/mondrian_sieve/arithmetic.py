"""Exact integer arithmetic: factorization, divisor functions, prime sieves.

Everything downstream (criterion evaluation, rough counting, tiling search)
is built on the functions in this module.  All operations are pure; the
smallest-prime-factor cache is immutable after construction and safe to
share across worker processes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Operations that square their argument must stay within 64-bit range;
# desk-scale scans never approach this.
MAX_SQUARABLE = 3_000_000_000

DEFAULT_CACHE_LIMIT = 10_000_000


class BudgetExceededError(RuntimeError):
    """A computation was aborted because it exceeded its resource budget."""


def primes_upto(limit: int) -> np.ndarray:
    """All primes <= limit, ascending, as an int64 array (Eratosthenes)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return np.flatnonzero(mask).astype(np.int64)


class ArithmeticCache:
    """Smallest-prime-factor table enabling O(log n) factorization in bulk scans.

    Construction sieves up to `limit`; lookups beyond the limit fall back to
    trial division in the functions that accept a cache.
    """

    def __init__(self, limit: int = DEFAULT_CACHE_LIMIT):
        if limit < 2:
            raise ValueError("cache limit must be at least 2")
        self.limit = int(limit)
        spf = np.zeros(self.limit + 1, dtype=np.int64)
        for p in range(2, math.isqrt(self.limit) + 1):
            if spf[p] == 0:
                stride = spf[p * p :: p]
                stride[stride == 0] = p
        # everything still unmarked above 1 is prime
        unmarked = np.flatnonzero(spf[2:] == 0) + 2
        spf[unmarked] = unmarked
        self._spf = spf

    def smallest_prime_factor(self, n: int) -> int:
        if not 2 <= n <= self.limit:
            raise ValueError(f"n={n} outside cache range [2, {self.limit}]")
        return int(self._spf[n])

    def factor_pairs(self, n: int) -> list[tuple[int, int]]:
        """Factorization of n as [(prime, exponent), ...] via table walk."""
        if not 1 <= n <= self.limit:
            raise ValueError(f"n={n} outside cache range [1, {self.limit}]")
        spf = self._spf
        pairs: list[tuple[int, int]] = []
        m = n
        while m > 1:
            p = int(spf[m])
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            pairs.append((p, e))
        return pairs


@dataclass(frozen=True)
class PrimeFactorization:
    """Exponent-form factorization: value = prod(p**e) with primes ascending."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.value < 1:
            raise ValueError("value must be a positive integer")
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be >= 1")
            prod *= p**e
            last = p
        if prod != self.value:
            raise ValueError(f"factors reconstruct {prod}, not {self.value}")

    def squared(self) -> "PrimeFactorization":
        """Factorization of value**2 (exponents doubled, no refactoring)."""
        return PrimeFactorization(
            self.value * self.value,
            tuple((p, 2 * e) for p, e in self.factors),
        )


def _trial_factor_pairs(n: int) -> list[tuple[int, int]]:
    pairs: list[tuple[int, int]] = []
    m = n
    for p in (2, 3):
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e:
            pairs.append((p, e))
    f = 5
    while f * f <= m:
        for p in (f, f + 2):
            if p * p > m:
                break
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            if e:
                pairs.append((p, e))
        f += 6
    if m > 1:
        pairs.append((m, 1))
    return pairs


def factor_pairs(n: int, cache: ArithmeticCache | None = None) -> list[tuple[int, int]]:
    """Factorization of n >= 1 as a plain [(prime, exponent), ...] list."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n == 1:
        return []
    if cache is not None and n <= cache.limit:
        return cache.factor_pairs(n)
    return _trial_factor_pairs(n)


def factorize(n: int, cache: ArithmeticCache | None = None) -> PrimeFactorization:
    """Unique factorization of n >= 1; trial division when no cache applies."""
    return PrimeFactorization(n, tuple(factor_pairs(n, cache)))


def tau2(n: int, cache: ArithmeticCache | None = None) -> int:
    """Number of divisors of n: prod(e + 1) over the factorization."""
    return math.prod(e + 1 for _, e in factor_pairs(n, cache))


def is_square(n: int) -> bool:
    """Exact square test via integer square root (no factorization)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    r = math.isqrt(n)
    return r * r == n


def tau2_star(n: int, cache: ArithmeticCache | None = None) -> int:
    """Number of unordered factorizations n = a*b, i.e. (tau2(n) + [n square]) / 2."""
    return (tau2(n, cache) + (1 if is_square(n) else 0)) // 2


def is_squarefree(n: int, cache: ArithmeticCache | None = None) -> bool:
    """True iff no prime divides n twice."""
    return all(e == 1 for _, e in factor_pairs(n, cache))


def divisors(n: int, cache: ArithmeticCache | None = None) -> list[int]:
    """All divisors of n, ascending; generated from the factorization."""
    divs = [1]
    for p, e in factor_pairs(n, cache):
        divs = [d * p**a for a in range(e + 1) for d in divs]
    divs.sort()
    return divs


def smallest_nonunit_divisor(n: int, cache: ArithmeticCache | None = None) -> int:
    """Smallest divisor of n exceeding 1; always prime."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if cache is not None and n <= cache.limit:
        return cache.smallest_prime_factor(n)
    for p in (2, 3):
        if n % p == 0:
            return p
    f = 5
    while f * f <= n:
        if n % f == 0:
            return f
        if n % (f + 2) == 0:
            return f + 2
        f += 6
    return n
