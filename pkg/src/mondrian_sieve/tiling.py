"""Exhaustive search for perfect tilings of an n x n square.

A perfect tiling uses pairwise incongruent integer-sided rectangles of one
common area d.  Necessity pins d down hard: d must divide n^2, be smaller
than n^2, and admit at least n^2/d incongruent shapes (d * tau2_star(d) >=
n^2), each fitting the square.  The search fills the topmost-leftmost empty
cell first, trying every unused shape in both orientations; a node budget
turns an unfinished search into an explicit INDETERMINATE, never a silent
"no tiling".

Congruence ignores orientation: a b x h rectangle equals h x b, so shapes
are normalized to base >= height and rotation is a placement-time choice.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

from .arithmetic import ArithmeticCache, divisors, tau2_star
from .criterion import CriterionRecord, criterion_direct

MAX_SIDE = 32
DEFAULT_NODE_BUDGET = 2_000_000


@dataclass(frozen=True, order=True)
class RectangleShape:
    """Integer rectangle normalized to base >= height >= 1."""

    base: int
    height: int

    def __post_init__(self) -> None:
        if not self.base >= self.height >= 1:
            raise ValueError("need base >= height >= 1")

    @classmethod
    def normalized(cls, width: int, height: int) -> "RectangleShape":
        return cls(max(width, height), min(width, height))

    @property
    def area(self) -> int:
        return self.base * self.height


@dataclass(frozen=True)
class Placement:
    """A shape anchored at (col, row), optionally rotated 90 degrees."""

    shape: RectangleShape
    col: int
    row: int
    rotated: bool

    @property
    def width(self) -> int:
        return self.shape.height if self.rotated else self.shape.base

    @property
    def depth(self) -> int:
        return self.shape.base if self.rotated else self.shape.height


@dataclass
class TilingInstance:
    """A complete candidate tiling of the n x n square by area-d rectangles."""

    n: int
    area: int
    placements: list[Placement] = field(default_factory=list)

    def validate(self) -> None:
        """Check every structural invariant; raises ValueError on violation."""
        covered = [[False] * self.n for _ in range(self.n)]
        shapes_seen = set()
        for pl in self.placements:
            if pl.shape.area != self.area:
                raise ValueError(f"shape {pl.shape} does not have area {self.area}")
            if pl.shape in shapes_seen:
                raise ValueError(f"congruent shapes used twice: {pl.shape}")
            shapes_seen.add(pl.shape)
            if not (0 <= pl.col and pl.col + pl.width <= self.n):
                raise ValueError("placement exceeds grid horizontally")
            if not (0 <= pl.row and pl.row + pl.depth <= self.n):
                raise ValueError("placement exceeds grid vertically")
            for r in range(pl.row, pl.row + pl.depth):
                for c in range(pl.col, pl.col + pl.width):
                    if covered[r][c]:
                        raise ValueError(f"overlap at ({c}, {r})")
                    covered[r][c] = True
        total = sum(pl.shape.area for pl in self.placements)
        if total != self.n * self.n:
            raise ValueError(f"covered area {total} != {self.n * self.n}")
        if len(self.placements) * self.area != self.n * self.n:
            raise ValueError("placement count inconsistent with common area")
        if len(self.placements) > tau2_star(self.area):
            raise ValueError("more placements than unordered factor pairs of d")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "area": self.area,
            "placements": [
                {
                    "base": pl.shape.base,
                    "height": pl.shape.height,
                    "col": pl.col,
                    "row": pl.row,
                    "rotated": pl.rotated,
                }
                for pl in self.placements
            ],
        }

    def to_json(self) -> str:
        # compact separators keep the string safe inside report header lines
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "TilingInstance":
        return cls(
            n=data["n"],
            area=data["area"],
            placements=[
                Placement(
                    shape=RectangleShape(item["base"], item["height"]),
                    col=item["col"],
                    row=item["row"],
                    rotated=item["rotated"],
                )
                for item in data["placements"]
            ],
        )

    @classmethod
    def from_json(cls, text: str) -> "TilingInstance":
        return cls.from_dict(json.loads(text))


class SearchStatus(Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted"
    INDETERMINATE = "indeterminate"


@dataclass
class TilingSearchResult:
    n: int
    status: SearchStatus
    instance: TilingInstance | None
    nodes: int


def _check_side(n: int) -> None:
    if not 3 <= n <= MAX_SIDE:
        raise ValueError(f"n must lie in [3, {MAX_SIDE}]")


def _fitting_shapes(d: int, n: int) -> list[RectangleShape]:
    shapes = []
    for h in range(1, math.isqrt(d) + 1):
        if d % h == 0 and d // h <= n and h <= n:
            shapes.append(RectangleShape(d // h, h))
    return sorted(shapes)


def candidate_areas(
    n: int, cache: ArithmeticCache | None = None
) -> list[tuple[int, list[RectangleShape]]]:
    """Every area d that could support a perfect tiling of the n x n square.

    Filters, in order: d | n^2 with d < n^2; the pigeonhole necessity
    d * tau2_star(d) >= n^2; and at least n^2/d incongruent shapes of area d
    fitting inside the square.
    """
    _check_side(n)
    n2 = n * n
    out = []
    for d in divisors(n2, cache):
        if d >= n2:
            continue
        if d * tau2_star(d, cache) < n2:
            continue
        shapes = _fitting_shapes(d, n)
        if len(shapes) >= n2 // d:
            out.append((d, shapes))
    return out


class _BudgetExhausted(Exception):
    pass


class _SearchState:
    def __init__(self, node_budget: int):
        self.nodes = 0
        self.budget = node_budget

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted


def _empty_cell_raster(grid: bytearray, n: int) -> int:
    return grid.find(0)


def _empty_cell_column_major(grid: bytearray, n: int) -> int:
    for c in range(n):
        for r in range(n):
            if not grid[r * n + c]:
                return r * n + c
    return -1


def _search_one_area(
    n: int,
    d: int,
    shapes: list[RectangleShape],
    state: _SearchState,
    column_major: bool = False,
    prune_supply: bool = True,
) -> list[Placement] | None:
    """Backtracking fill; returns a complete placement list or None."""
    n2 = n * n
    grid = bytearray(n2)
    used = [False] * len(shapes)
    placements: list[Placement] = []
    tau_star_d = tau2_star(d)
    find_empty = _empty_cell_column_major if column_major else _empty_cell_raster

    def fill(covered: int) -> bool:
        assert covered == d * len(placements)
        assert len(placements) <= tau_star_d
        idx = find_empty(grid, n)
        if idx < 0:
            return True
        if prune_supply:
            needed = (n2 - covered) // d
            if sum(1 for u in used if not u) < needed:
                return False
        row, col = divmod(idx, n)
        for i, shape in enumerate(shapes):
            if used[i]:
                continue
            orientations = [(shape.base, shape.height)]
            if shape.base != shape.height:
                orientations.append((shape.height, shape.base))
            for w, h in orientations:
                if col + w > n or row + h > n:
                    continue
                if any(
                    grid[r * n + c]
                    for r in range(row, row + h)
                    for c in range(col, col + w)
                ):
                    continue
                state.tick()
                for r in range(row, row + h):
                    base = r * n
                    for c in range(col, col + w):
                        grid[base + c] = 1
                used[i] = True
                placements.append(
                    Placement(shape=shape, col=col, row=row, rotated=w == shape.height and w != h)
                )
                if fill(covered + d):
                    return True
                placements.pop()
                used[i] = False
                for r in range(row, row + h):
                    base = r * n
                    for c in range(col, col + w):
                        grid[base + c] = 0
        return False

    if fill(0):
        return list(placements)
    return None


def find_perfect_tiling(
    n: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    cache: ArithmeticCache | None = None,
) -> TilingSearchResult:
    """Decide by exhaustive search whether any perfect tiling of n x n exists.

    Tries every candidate area in ascending order; the search over shape
    subsets is implicit in the backtracking (each shape used at most once).
    """
    _check_side(n)
    state = _SearchState(node_budget)
    hit_budget = False
    for d, shapes in candidate_areas(n, cache):
        # wider shapes first: they constrain the fill sooner
        ordered = sorted(shapes, key=lambda s: (-s.base, -s.height))
        try:
            placements = _search_one_area(n, d, ordered, state)
        except _BudgetExhausted:
            hit_budget = True
            continue
        if placements is not None:
            instance = TilingInstance(n=n, area=d, placements=placements)
            instance.validate()
            return TilingSearchResult(n, SearchStatus.FOUND, instance, state.nodes)
    status = SearchStatus.INDETERMINATE if hit_budget else SearchStatus.EXHAUSTED
    return TilingSearchResult(n, status, None, state.nodes)


def find_perfect_tiling_naive(
    n: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> TilingSearchResult:
    """Independent cross-check: column-major fill order, no pigeonhole or
    supply pruning, every divisor d < n^2 of n^2 attempted."""
    _check_side(n)
    n2 = n * n
    state = _SearchState(node_budget)
    hit_budget = False
    for d in divisors(n2)[:-1]:
        shapes = _fitting_shapes(d, n)
        if not shapes:
            continue
        try:
            placements = _search_one_area(
                n, d, shapes, state, column_major=True, prune_supply=False
            )
        except _BudgetExhausted:
            hit_budget = True
            continue
        if placements is not None:
            instance = TilingInstance(n=n, area=d, placements=placements)
            instance.validate()
            return TilingSearchResult(n, SearchStatus.FOUND, instance, state.nodes)
    status = SearchStatus.INDETERMINATE if hit_budget else SearchStatus.EXHAUSTED
    return TilingSearchResult(n, status, None, state.nodes)


@dataclass
class CriterionValidation:
    """Tally of criterion verdicts against exhaustive tiling searches."""

    n_max: int
    rows: list[tuple[int, bool, str, int]]
    criterion_true: int
    confirmed_absent: int
    indeterminate: int
    violations: list[int]


def _validate_one(args: tuple[int, int]) -> tuple[int, bool, str, int]:
    n, node_budget = args
    record: CriterionRecord = criterion_direct(n)
    if not record.holds:
        return (n, False, "skipped", 0)
    result = find_perfect_tiling(n, node_budget)
    return (n, True, result.status.value, result.nodes)


def validate_criterion(
    n_max: int,
    node_budget: int = DEFAULT_NODE_BUDGET,
    workers: int = 1,
) -> CriterionValidation:
    """For every n <= n_max where the criterion holds, confirm by search that
    no perfect tiling exists.

    A FOUND tiling for such n would be a fatal correctness finding.  n with
    a false criterion are skipped: the implication runs one way only.
    Searches for distinct n are independent; workers > 1 runs them in a
    process pool with rows assembled in n order either way.
    """
    if n_max > MAX_SIDE:
        raise ValueError(f"n_max must not exceed {MAX_SIDE}")
    jobs = [(n, node_budget) for n in range(3, n_max + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_validate_one, jobs))
    else:
        rows = [_validate_one(job) for job in jobs]
    criterion_true = confirmed = indet = 0
    violations: list[int] = []
    for n, holds, status, _ in rows:
        if not holds:
            continue
        criterion_true += 1
        if status == SearchStatus.EXHAUSTED.value:
            confirmed += 1
        elif status == SearchStatus.INDETERMINATE.value:
            indet += 1
        else:
            violations.append(n)
    return CriterionValidation(
        n_max=n_max,
        rows=rows,
        criterion_true=criterion_true,
        confirmed_absent=confirmed,
        indeterminate=indet,
        violations=violations,
    )
