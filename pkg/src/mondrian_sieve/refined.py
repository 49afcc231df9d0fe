"""Refined counting of criterion members via squarefree almost-primes.

The set {n : every k > 1 dividing n exceeds tau2(n^2)} is rewritten through
indicator functions (tau2(n^2) = j paired with j-roughness of n), restricted
to squarefree n, and reindexed by j = 3^r.  What remains is, for each r, the
count of products of exactly r distinct primes all exceeding 3^r, an exact
and enumerable quantity.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass

from .arithmetic import (
    ArithmeticCache,
    factor_pairs,
    is_squarefree,
    primes_upto,
    tau2,
)
from .criterion import DEFAULT_EPSILON, g_eps
from .rough import is_rough


def indicator_tau2(n: int, j: int, cache: ArithmeticCache | None = None) -> int:
    """1 if tau2(n) equals j, else 0."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return 1 if tau2(n, cache) == j else 0


def indicator_rough(n: int, z: float, cache: ArithmeticCache | None = None) -> int:
    """1 if every prime factor of n exceeds z, else 0."""
    return 1 if is_rough(n, z, cache) else 0


@dataclass(frozen=True)
class IndicatorSpec:
    """A named indicator: kind "tau2" tests tau2(n) = parameter, kind "rough"
    tests that n is parameter-rough."""

    kind: str
    parameter: float

    def __post_init__(self) -> None:
        if self.kind not in ("tau2", "rough"):
            raise ValueError(f"unknown indicator kind {self.kind!r}")
        if self.parameter < 1:
            raise ValueError("parameter must be >= 1")

    def evaluate(self, n: int, cache: ArithmeticCache | None = None) -> int:
        if self.kind == "tau2":
            return indicator_tau2(n, int(self.parameter), cache)
        return indicator_rough(n, self.parameter, cache)


@dataclass(frozen=True)
class RefinedTermRecord:
    """Count of n <= x that are products of exactly r distinct primes > 3^r."""

    r: int
    x: int
    count: int


def count_r_term(x: int, r: int, primes: list[int] | None = None) -> RefinedTermRecord:
    """Exact term count by ordered enumeration of increasing prime tuples.

    Tuples (p_1 < ... < p_r) with every p_i > 3^r and product <= x; the
    recursion prunes a branch as soon as the cheapest completion (all
    remaining primes at least as large as the current one) overshoots x.
    """
    if x < 1:
        raise ValueError("x must be a positive integer")
    if r < 1:
        raise ValueError("r must be a positive integer")
    floor = 3**r
    if primes is None:
        primes = [int(p) for p in primes_upto(x)]
    start = bisect.bisect_right(primes, floor)
    eligible = primes[start:]

    def rec(i: int, remaining: int, budget: int) -> int:
        # budget = x // (product so far); a prime fits iff p <= budget
        if remaining == 1:
            return max(0, bisect.bisect_right(eligible, budget, lo=i) - i)
        total = 0
        for j in range(i, len(eligible)):
            p = eligible[j]
            if p**remaining > budget:
                break
            total += rec(j + 1, remaining - 1, budget // p)
        return total

    return RefinedTermRecord(r=r, x=x, count=rec(0, r, x))


def term_cap(x: int, epsilon: float = DEFAULT_EPSILON) -> int:
    """Largest admissible r: floor of log base 3 of g_eps(x^2)."""
    if x < 16:
        raise ValueError("x must be at least 16")
    return int(math.floor(math.log(g_eps(x * x, epsilon)) / math.log(3.0)))


def refined_total(
    x: int, epsilon: float = DEFAULT_EPSILON, primes: list[int] | None = None
) -> int:
    """Sum of count_r_term(x, r) for r = 1 .. term_cap(x, epsilon)."""
    if primes is None:
        primes = [int(p) for p in primes_upto(x)]
    return sum(
        count_r_term(x, r, primes).count for r in range(1, term_cap(x, epsilon) + 1)
    )


def verify_identity_tau_square(n: int, cache: ArithmeticCache | None = None) -> bool:
    """For squarefree n with w prime factors: tau2(n^2) = 3^w and tau2(n) = 2^w.

    Always true; exercised in bulk as a pipeline probe over factorization
    and the divisor-count identity.
    """
    if not is_squarefree(n, cache):
        raise ValueError("n must be squarefree")
    pairs = factor_pairs(n, cache)
    w = len(pairs)
    tau_n = math.prod(e + 1 for _, e in pairs)
    tau_n2 = math.prod(2 * e + 1 for _, e in pairs)
    return tau_n == 2**w and tau_n2 == 3**w
