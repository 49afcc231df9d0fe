"""Counting z-rough integers (no prime factor <= z), exactly and asymptotically.

The exact count F(x, z) runs either through the Legendre phi recurrence
phi(x, k) = phi(x, k-1) - phi(x // p_k, k-1) or through a segmented sieve
that strikes multiples of every prime <= z; both paths must agree exactly.
The asymptotic side is the sieve main term x * prod_{p<=z}(1 - 1/p) with its
error envelope exp(-log x / (2 log z)), plus the closed-form lower-bound
expression C_eps * x * log log x / log x.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from .arithmetic import (
    MAX_SQUARABLE,
    ArithmeticCache,
    BudgetExceededError,
    primes_upto,
    smallest_nonunit_divisor,
)

# Euler-Mascheroni constant, 30-digit literal (never computed at runtime).
EULER_GAMMA = 0.577215664901532860606512090082

# Legendre path refuses prime lists beyond this size; the segmented path or a
# bigger budget has to be chosen explicitly for such extreme (x, z) pairs.
MAX_LEGENDRE_PRIMES = 20_000
DEFAULT_MEMO_BUDGET = 6_000_000

_SIEVE_CROSSOVER = 4_000_000


def is_rough(n: int, z: float, cache: ArithmeticCache | None = None) -> bool:
    """True iff every prime factor of n exceeds z (vacuously true for n = 1)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    return n == 1 or smallest_nonunit_divisor(n, cache) > z


def _primes_leq(z: float) -> list[int]:
    if z < 2:
        return []
    return [int(p) for p in primes_upto(int(math.floor(z)))]


def rough_count_sieve(x: int, z: float, segment_size: int = 1 << 22) -> int:
    """F(x, z) by striking multiples of every prime <= z, segment by segment."""
    _check_rough_args(x, z)
    ps = _primes_leq(z)
    if not ps:
        return x
    count = 0
    for lo in range(1, x + 1, segment_size):
        hi = min(x, lo + segment_size - 1)
        mask = np.ones(hi - lo + 1, dtype=bool)
        for p in ps:
            start = max(p, ((lo + p - 1) // p) * p)
            if start <= hi:
                mask[start - lo :: p] = False
        count += int(np.count_nonzero(mask))
    return count


def rough_count_legendre(
    x: int, z: float, memo_budget: int = DEFAULT_MEMO_BUDGET
) -> int:
    """F(x, z) by the memoized Legendre phi recurrence."""
    _check_rough_args(x, z)
    ps = _primes_leq(z)
    if not ps:
        return x
    if len(ps) > MAX_LEGENDRE_PRIMES:
        raise BudgetExceededError(
            f"{len(ps)} sieving primes exceed the Legendre budget of {MAX_LEGENDRE_PRIMES}"
        )
    memo: dict[tuple[int, int], int] = {}

    def phi(m: int, k: int) -> int:
        if k == 0:
            return m
        if m == 0:
            return 0
        if ps[k - 1] >= m:
            return 1  # only n = 1 survives once all primes < m are struck
        key = (m, k)
        cached = memo.get(key)
        if cached is not None:
            return cached
        result = phi(m, k - 1) - phi(m // ps[k - 1], k - 1)
        if len(memo) >= memo_budget:
            raise BudgetExceededError("Legendre phi memo budget exceeded")
        memo[key] = result
        return result

    depth = len(ps) + 50
    old_limit = sys.getrecursionlimit()
    if old_limit < depth + 100:
        sys.setrecursionlimit(depth + 100)
    try:
        return phi(x, len(ps))
    finally:
        sys.setrecursionlimit(old_limit)


def rough_count_exact(x: int, z: float, method: str = "auto") -> int:
    """Exact |{n <= x : n is z-rough}|, n = 1 included.

    method: "auto" picks the segmented sieve for small x and the Legendre
    recurrence beyond the crossover; "sieve" / "legendre" force a path.
    """
    _check_rough_args(x, z)
    if method == "sieve":
        return rough_count_sieve(x, z)
    if method == "legendre":
        return rough_count_legendre(x, z)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if x <= _SIEVE_CROSSOVER:
        return rough_count_sieve(x, z)
    return rough_count_legendre(x, z)


def _check_rough_args(x: int, z: float) -> None:
    if not 1 <= x <= MAX_SQUARABLE:
        raise ValueError(f"x must lie in [1, {MAX_SQUARABLE}]")
    if z < 0:
        raise ValueError("z must be nonnegative")


def _product_over_primes(z: float) -> float:
    # exp of a compensated sum of log1p(-1/p); empty product is 1.
    return math.exp(math.fsum(math.log1p(-1.0 / p) for p in _primes_leq(z)))


def mertens_product(z: float) -> float:
    """prod_{p <= z} (1 - 1/p), primes enumerated exactly."""
    if z < 2:
        raise ValueError("z must be at least 2")
    return _product_over_primes(z)


def prime_reciprocal_sum(z: float) -> float:
    """sum_{p <= z} 1/p; reporting hook for second-Mertens comparisons."""
    if z < 2:
        raise ValueError("z must be at least 2")
    return math.fsum(1.0 / p for p in _primes_leq(z))


@dataclass(frozen=True)
class RoughEstimate:
    """Sieve main term for F(x, z) with its error envelope kept separate."""

    main_term: float
    error_envelope: float


def rough_count_estimate(x: int, z: float) -> RoughEstimate:
    """Main term x * prod_{p<=z}(1 - 1/p) and envelope exp(-log x / (2 log z)).

    The envelope is never folded into the main term: the implied constant of
    the error term is unspecified, so callers compare against exact counts
    with the envelope reported alongside.
    """
    if x <= 2:
        raise ValueError("x must exceed 2")
    if not 1 < z <= x:
        raise ValueError("z must satisfy 1 < z <= x")
    main = x * _product_over_primes(z)
    envelope = math.exp(-math.log(x) / (2.0 * math.log(z)))
    return RoughEstimate(main_term=main, error_envelope=envelope)


@dataclass(frozen=True)
class RoughCountResult:
    """Exact F(x, z) next to the sieve estimate and Mertens product."""

    x: int
    z: float
    exact: int
    mertens_product: float
    estimate: float
    ratio: float
    envelope: float


def rough_count_result(x: int, z: float, method: str = "auto") -> RoughCountResult:
    """Bundle the exact count with the estimate pieces for reporting."""
    exact = rough_count_exact(x, z, method=method)
    est = rough_count_estimate(x, z)
    product = _product_over_primes(z)
    ratio = exact / est.main_term if est.main_term > 0 else math.nan
    return RoughCountResult(
        x=x,
        z=z,
        exact=exact,
        mertens_product=product,
        estimate=est.main_term,
        ratio=ratio,
        envelope=est.error_envelope,
    )


@dataclass(frozen=True)
class BoundConstants:
    """gamma, epsilon and the derived constant 1 / (e^gamma * (2 log 2 + epsilon))."""

    gamma: float
    epsilon: float
    c_eps: float

    @classmethod
    def for_epsilon(cls, epsilon: float) -> "BoundConstants":
        if epsilon <= 0:
            raise ValueError("epsilon must be positive")
        return cls(gamma=EULER_GAMMA, epsilon=epsilon, c_eps=_c_eps(EULER_GAMMA, epsilon))

    def recomputed_c_eps(self) -> float:
        """Fresh evaluation from the stored fields; must match c_eps tightly."""
        return _c_eps(self.gamma, self.epsilon)


def _c_eps(gamma: float, epsilon: float) -> float:
    return 1.0 / (math.exp(gamma) * (2.0 * math.log(2.0) + epsilon))


def lower_bound_estimate(x: int, epsilon: float = 0.1) -> float:
    """Closed-form lower-bound value C_eps * x * log log x / log x."""
    if x < 16:
        raise ValueError("x must be at least 16")
    constants = BoundConstants.for_epsilon(epsilon)
    return constants.c_eps * x * math.log(math.log(x)) / math.log(x)


@dataclass(frozen=True)
class LowerBoundComparison:
    """Closed-form bound next to the exact rough count at the matching cutoff."""

    x: int
    epsilon: float
    cutoff_z: float
    bound: float
    rough_exact: int


def lower_bound_comparison(
    x: int, epsilon: float = 0.1, method: str = "auto"
) -> LowerBoundComparison:
    """Evaluate the bound formula and the companion count F(x, g_eps(x^2))."""
    from .criterion import g_eps

    bound = lower_bound_estimate(x, epsilon)
    cutoff = g_eps(float(x) * x, epsilon)
    exact = rough_count_exact(x, cutoff, method=method)
    return LowerBoundComparison(
        x=x, epsilon=epsilon, cutoff_z=cutoff, bound=bound, rough_exact=exact
    )
