"""The divisor criterion for n x n squares and its chain of relaxations.

A square side n >= 3 satisfies the criterion when every proper divisor d of
n^2 obeys d * tau2_star(d) < n^2; such n admit no perfect tiling into
incongruent equal-area integer rectangles.  The criterion is progressively
relaxed, one testable set at a time, until membership depends only on the
smallest prime factor of n clearing a smooth cutoff g_eps(n^2), the bridge
to rough-number counting.

Chain sets, from smallest to largest:

    G_EPS_CUTOFF   every k > 1 dividing n      exceeds g_eps(n^2)
    TAU2_ON_N      every k > 1 dividing n      exceeds tau2(n^2)
    TAU2_GLOBAL    every k > 1 dividing n^2    exceeds tau2(n^2)
    TAU2_RELAXED   every k > 1 dividing n^2    satisfies tau2(n^2 / k) < k
    DUAL           every k > 1 dividing n^2    satisfies tau2_star(n^2 / k) < k
    DIRECT         every divisor d < n^2 of n^2 satisfies d * tau2_star(d) < n^2

DUAL and DIRECT are the same set under the bijection d = n^2 / k; the
G_EPS_CUTOFF inclusion additionally needs the divisor bound
tau2(n^2) <= g_eps(n^2), which is checked pointwise rather than assumed.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .arithmetic import (
    DEFAULT_CACHE_LIMIT,
    MAX_SQUARABLE,
    ArithmeticCache,
    _trial_factor_pairs,
    factor_pairs,
)

DEFAULT_EPSILON = 0.1
DEFAULT_SPAN_BUDGET = 10_000_000

_LOG2 = math.log(2.0)


class ChainSet(Enum):
    """Identifiers for the six membership predicates of the inclusion chain."""

    DIRECT = "direct"
    DUAL = "dual"
    TAU2_RELAXED = "tau2-relaxed"
    TAU2_GLOBAL = "tau2-global"
    TAU2_ON_N = "tau2-on-n"
    G_EPS_CUTOFF = "g-eps-cutoff"


# Inclusion order: membership in an earlier set implies membership in every
# later one (the first step only where the divisor bound holds pointwise).
CHAIN_ORDER = (
    ChainSet.G_EPS_CUTOFF,
    ChainSet.TAU2_ON_N,
    ChainSet.TAU2_GLOBAL,
    ChainSet.TAU2_RELAXED,
    ChainSet.DUAL,
    ChainSet.DIRECT,
)


@dataclass(frozen=True)
class CriterionRecord:
    """Verdict for one n; on failure, witness is a divisor d < n^2 of n^2
    with d * tau2_star(d) >= n^2."""

    n: int
    holds: bool
    witness: int | None = None


def g_eps(x: float, epsilon: float = DEFAULT_EPSILON) -> float:
    """The divisor-bound cutoff x ** ((log 2 + epsilon) / log log x).

    Defined for x > e; increasing only for x > e^e, so callers comparing
    across arguments should stay at or above 16.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if x <= math.e:
        raise ValueError("g_eps is undefined for x <= e")
    return math.exp(math.log(x) * (_LOG2 + epsilon) / math.log(math.log(x)))


def _check_n(n: int) -> None:
    if n < 3:
        raise ValueError("n must be at least 3")
    if n > MAX_SQUARABLE:
        raise ValueError(f"n must not exceed {MAX_SQUARABLE} (n^2 guard)")


def _doubled(pairs: list[tuple[int, int]]) -> list[tuple[int, int]]:
    return [(p, 2 * e) for p, e in pairs]


def _tau_of(pairs: list[tuple[int, int]]) -> int:
    return math.prod(e + 1 for _, e in pairs)


def _cofactor_views(
    pairs: list[tuple[int, int]], bound: int
) -> Iterator[tuple[int, int, bool]]:
    """Yield (k, tau2(N/k), N/k is square) over divisors k <= bound of N,
    N given by its factor pairs.  N/k is square iff every exponent taken
    into k is even, because N here always has even exponents."""

    def rec(i: int, k: int, t: int, sq: bool) -> Iterator[tuple[int, int, bool]]:
        if i == len(pairs):
            yield k, t, sq
            return
        p, e = pairs[i]
        pk = 1
        for a in range(e + 1):
            nk = k * pk
            if nk > bound:
                break
            yield from rec(i + 1, nk, t * (e - a + 1), sq and a % 2 == 0)
            pk *= p

    return rec(0, 1, 1, True)


def criterion_direct(n: int, cache: ArithmeticCache | None = None) -> CriterionRecord:
    """Evaluate the criterion by full ascending enumeration of n^2's divisors.

    The witness, when the criterion fails, is the smallest failing divisor.
    """
    _check_n(n)
    pairs2 = _doubled(factor_pairs(n, cache))
    n2 = n * n
    stats = [(1, 1, True)]
    for p, e in pairs2:
        nxt = []
        for d, t, sq in stats:
            pk = 1
            for a in range(e + 1):
                nxt.append((d * pk, t * (a + 1), sq and a % 2 == 0))
                pk *= p
        stats = nxt
    stats.sort()
    for d, t, sq in stats:
        if d >= n2:
            break
        if d * ((t + (1 if sq else 0)) // 2) >= n2:
            return CriterionRecord(n=n, holds=False, witness=d)
    return CriterionRecord(n=n, holds=True)


def criterion_dual(n: int, cache: ArithmeticCache | None = None) -> CriterionRecord:
    """Evaluate the criterion in cofactor form: tau2_star(n^2 / k) < k for all
    k > 1 dividing n^2.

    Any failing k satisfies k <= tau2_star(n^2/k) <= (tau2(n^2) + 1) / 2, so
    only the divisors up to that bound are enumerated.  The witness is mapped
    back to divisor form, d = n^2 / k for the smallest failing k.
    """
    _check_n(n)
    pairs2 = _doubled(factor_pairs(n, cache))
    n2 = n * n
    bound = (_tau_of(pairs2) + 1) // 2
    for k, t, sq in sorted(_cofactor_views(pairs2, bound)):
        if k == 1:
            continue
        if (t + (1 if sq else 0)) // 2 >= k:
            return CriterionRecord(n=n, holds=False, witness=n2 // k)
    return CriterionRecord(n=n, holds=True)


def member(
    set_id: ChainSet,
    n: int,
    epsilon: float = DEFAULT_EPSILON,
    cache: ArithmeticCache | None = None,
) -> bool:
    """Exact membership of n in the identified chain set."""
    _check_n(n)
    return _member_from_pairs(set_id, n, factor_pairs(n, cache), epsilon)


def _member_from_pairs(
    set_id: ChainSet, n: int, pairs: list[tuple[int, int]], epsilon: float
) -> bool:
    pairs2 = _doubled(pairs)
    tau_n2 = _tau_of(pairs2)
    if set_id in (ChainSet.DIRECT, ChainSet.DUAL):
        # d * tau2_star(d) < n^2 for d = n^2/k is literally tau2_star(n^2/k) < k
        bound = (tau_n2 + 1) // 2
        return all(
            (t + (1 if sq else 0)) // 2 < k
            for k, t, sq in _cofactor_views(pairs2, bound)
            if k > 1
        )
    if set_id is ChainSet.TAU2_RELAXED:
        # k > tau2(n^2) passes automatically since tau2(n^2/k) <= tau2(n^2)
        return all(t < k for k, t, _ in _cofactor_views(pairs2, tau_n2) if k > 1)
    if set_id is ChainSet.TAU2_GLOBAL:
        return tau_n2 < pairs2[0][0]
    if set_id is ChainSet.TAU2_ON_N:
        return tau_n2 < pairs[0][0]
    if set_id is ChainSet.G_EPS_CUTOFF:
        return g_eps(n * n, epsilon) < pairs[0][0]
    raise ValueError(f"unknown chain set {set_id!r}")


def divisor_bound_holds(
    n: int, epsilon: float = DEFAULT_EPSILON, cache: ArithmeticCache | None = None
) -> bool:
    """Pointwise check tau2(n^2) <= g_eps(n^2); no asymptotic threshold assumed."""
    _check_n(n)
    pairs2 = _doubled(factor_pairs(n, cache))
    return _tau_of(pairs2) <= g_eps(n * n, epsilon)


def divisor_bound_violations(
    lo: int,
    hi: int,
    epsilon: float = DEFAULT_EPSILON,
    cache: ArithmeticCache | None = None,
) -> list[int]:
    """All n in [lo, hi] where tau2(n^2) > g_eps(n^2)."""
    if not 3 <= lo <= hi <= MAX_SQUARABLE:
        raise ValueError("need 3 <= lo <= hi within the squarable range")
    cache = _resolve_cache(cache, hi)
    out = []
    for n in range(lo, hi + 1):
        pairs = cache.factor_pairs(n) if n <= cache.limit else _trial_factor_pairs(n)
        tau_n2 = math.prod(2 * e + 1 for _, e in pairs)
        if tau_n2 > g_eps(n * n, epsilon):
            out.append(n)
    return out


def observed_bound_floor(
    x: int, epsilon: float = DEFAULT_EPSILON, cache: ArithmeticCache | None = None
) -> int:
    """Empirical n0*: above it the divisor bound held for every n <= x.

    Clamped below at 16 because g_eps is only monotone from argument 16^2 on.
    """
    violations = divisor_bound_violations(3, x, epsilon, cache)
    return max(16, violations[-1] + 1 if violations else 0)


_scan_cache: ArithmeticCache | None = None


def _resolve_cache(cache: ArithmeticCache | None, hi: int) -> ArithmeticCache:
    global _scan_cache
    if cache is not None:
        return cache
    limit = min(hi, DEFAULT_CACHE_LIMIT)
    if _scan_cache is None or _scan_cache.limit < limit:
        _scan_cache = ArithmeticCache(limit)
    return _scan_cache


def scan(
    lo: int,
    hi: int,
    set_id: ChainSet,
    epsilon: float = DEFAULT_EPSILON,
    cache: ArithmeticCache | None = None,
    span_budget: int = DEFAULT_SPAN_BUDGET,
    workers: int = 1,
) -> int:
    """Count members of the given chain set over [lo, hi].

    Sharding across workers changes nothing observable: per-n evaluation is
    pure and the shard counts are summed in range order.
    """
    if not 3 <= lo <= hi <= MAX_SQUARABLE:
        raise ValueError("need 3 <= lo <= hi within the squarable range")
    if hi - lo + 1 > span_budget:
        raise ValueError(f"range of {hi - lo + 1} exceeds span budget {span_budget}")
    if workers > 1:
        shards = _split_range(lo, hi, workers)
        args = [(a, b, set_id.value, epsilon) for a, b in shards]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return sum(pool.map(_scan_shard, args))
    cache = _resolve_cache(cache, hi)
    count = 0
    for n in range(lo, hi + 1):
        pairs = cache.factor_pairs(n) if n <= cache.limit else _trial_factor_pairs(n)
        if _member_from_pairs(set_id, n, pairs, epsilon):
            count += 1
    return count


def _split_range(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    span = hi - lo + 1
    parts = min(parts, span)
    step = span // parts
    bounds = []
    start = lo
    for i in range(parts):
        end = hi if i == parts - 1 else start + step - 1
        bounds.append((start, end))
        start = end + 1
    return bounds


def _scan_shard(args: tuple[int, int, str, float]) -> int:
    lo, hi, set_value, epsilon = args
    return scan(lo, hi, ChainSet(set_value), epsilon, workers=1)
