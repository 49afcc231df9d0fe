"""Number theory around the perfect Mondrian tiling question.

The package evaluates the divisor criterion that rules out perfect tilings
of an n x n square, materializes every relaxation step down to rough-number
membership, counts rough integers exactly and asymptotically, enumerates the
refined squarefree almost-prime terms, and cross-validates the criterion
against an exhaustive tiling search at small n.
"""

__version__ = "0.1.0"

from .arithmetic import (
    ArithmeticCache,
    BudgetExceededError,
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
from .criterion import (
    CHAIN_ORDER,
    ChainSet,
    CriterionRecord,
    criterion_direct,
    criterion_dual,
    divisor_bound_holds,
    g_eps,
    member,
    observed_bound_floor,
    scan,
)
from .refined import (
    IndicatorSpec,
    RefinedTermRecord,
    count_r_term,
    indicator_rough,
    indicator_tau2,
    refined_total,
    verify_identity_tau_square,
)
from .report import ScanReport
from .rough import (
    BoundConstants,
    EULER_GAMMA,
    LowerBoundComparison,
    RoughCountResult,
    RoughEstimate,
    is_rough,
    lower_bound_comparison,
    lower_bound_estimate,
    mertens_product,
    rough_count_estimate,
    rough_count_exact,
    rough_count_legendre,
    rough_count_result,
    rough_count_sieve,
)
from .tiling import (
    CriterionValidation,
    Placement,
    RectangleShape,
    SearchStatus,
    TilingInstance,
    TilingSearchResult,
    candidate_areas,
    find_perfect_tiling,
    find_perfect_tiling_naive,
    validate_criterion,
)

__all__ = [
    "ArithmeticCache",
    "BoundConstants",
    "BudgetExceededError",
    "CHAIN_ORDER",
    "ChainSet",
    "CriterionRecord",
    "CriterionValidation",
    "EULER_GAMMA",
    "IndicatorSpec",
    "LowerBoundComparison",
    "Placement",
    "PrimeFactorization",
    "RectangleShape",
    "RefinedTermRecord",
    "RoughCountResult",
    "RoughEstimate",
    "ScanReport",
    "SearchStatus",
    "TilingInstance",
    "TilingSearchResult",
    "candidate_areas",
    "count_r_term",
    "criterion_direct",
    "criterion_dual",
    "divisor_bound_holds",
    "divisors",
    "factorize",
    "find_perfect_tiling",
    "find_perfect_tiling_naive",
    "g_eps",
    "indicator_rough",
    "indicator_tau2",
    "is_rough",
    "is_square",
    "is_squarefree",
    "lower_bound_comparison",
    "lower_bound_estimate",
    "member",
    "mertens_product",
    "observed_bound_floor",
    "primes_upto",
    "refined_total",
    "rough_count_estimate",
    "rough_count_exact",
    "rough_count_legendre",
    "rough_count_result",
    "rough_count_sieve",
    "scan",
    "smallest_nonunit_divisor",
    "tau2",
    "tau2_star",
    "validate_criterion",
    "verify_identity_tau_square",
]
