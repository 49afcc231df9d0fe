"""Command-line surface: reproducible experiment runs emitting CSV/JSON reports.

Exit codes: 0 all rows definitive, 2 report contains INDETERMINATE rows,
1 usage or domain error (and a FOUND perfect tiling for a criterion-true n,
which would be a fatal correctness finding).
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .arithmetic import BudgetExceededError, primes_upto
from .criterion import (
    ChainSet,
    DEFAULT_EPSILON,
    criterion_direct,
    g_eps,
    observed_bound_floor,
    scan,
)
from .refined import count_r_term, term_cap
from .report import ScanReport
from .rough import (
    lower_bound_comparison,
    lower_bound_estimate,
    prime_reciprocal_sum,
    rough_count_estimate,
    rough_count_exact,
)
from .tiling import (
    DEFAULT_NODE_BUDGET,
    SearchStatus,
    find_perfect_tiling,
    validate_criterion,
)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INDETERMINATE = 2

_SET_CHOICES = [s.value for s in ChainSet]


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1; code 2 is reserved for indeterminate results
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON,
                        help="epsilon for the divisor-bound cutoff (default 0.1)")
    common.add_argument("--out", default=None, help="write the report to this file")
    common.add_argument("--workers", type=int, default=1,
                        help="worker processes for range scans")
    common.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET,
                        dest="budget_nodes", help="node budget for tiling searches")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--plot", default=None,
                        help="also render a figure of the report to this file")

    parser = _Parser(prog="mondrian-sieve",
                     description="criterion scans, rough-number counts and "
                                 "tiling searches around perfect Mondrian tilings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("criterion-scan", parents=[common],
                       help="count chain-set members over a range")
    p.add_argument("lo", type=int)
    p.add_argument("hi", type=int)
    p.add_argument("--set", action="append", dest="sets",
                   choices=_SET_CHOICES + ["all"],
                   help="chain set to scan (repeatable; default direct)")

    p = sub.add_parser("rough-count", parents=[common],
                       help="exact and estimated rough-number counts")
    p.add_argument("--x", action="append", dest="xs", type=int, required=True,
                   help="count up to this bound (repeatable)")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--z", type=float, default=None, help="roughness cutoff")
    group.add_argument("--cutoff-gseps", action="store_true",
                       help="use z = g_eps(x^2) per row")

    p = sub.add_parser("lower-bound-table", parents=[common],
                       help="closed-form bound vs rough count vs criterion count")
    p.add_argument("--x", action="append", dest="xs", type=int, required=True)

    p = sub.add_parser("refined", parents=[common],
                       help="per-r counts of squarefree products of r primes > 3^r")
    p.add_argument("--x", dest="x", type=int, required=True)

    p = sub.add_parser("verify-perfect", parents=[common],
                       help="exhaustive tiling search vs the criterion")
    p.add_argument("n", type=int, nargs="?", default=None)
    p.add_argument("--upto", type=int, default=None,
                   help="validate every n up to this side length")

    return parser


def _meta(args: argparse.Namespace, **extra: str) -> dict[str, str]:
    meta = {"version": __version__, "epsilon": repr(args.epsilon)}
    meta.update(extra)
    return meta


def _cmd_criterion_scan(args) -> tuple[ScanReport, int]:
    chosen = args.sets or ["direct"]
    sets: list[ChainSet] = []
    for value in chosen:
        if value == "all":
            sets.extend(ChainSet)
        else:
            sets.append(ChainSet(value))
    rows = []
    for set_id in sets:
        count = scan(args.lo, args.hi, set_id, epsilon=args.epsilon,
                     workers=args.workers)
        rows.append((set_id.value, args.lo, args.hi, count))
    report = ScanReport(
        command="criterion-scan",
        parameters={"lo": str(args.lo), "hi": str(args.hi),
                    "sets": "+".join(s.value for s in sets)},
        columns=["set", "lo", "hi", "count"],
        rows=rows,
        metadata=_meta(args, workers=str(args.workers)),
    )
    return report, EXIT_OK


def _rough_row(job: tuple[int, float | None, float]) -> tuple:
    x, fixed_z, epsilon = job
    z = fixed_z if fixed_z is not None else g_eps(x * x, epsilon)
    try:
        exact = rough_count_exact(x, z)
    except BudgetExceededError:
        return (x, z, "indeterminate", "", "", "", "indeterminate")
    try:
        est = rough_count_estimate(x, z)
        return (x, z, exact, est.main_term, exact / est.main_term,
                est.error_envelope, "ok")
    except ValueError:
        # estimate undefined (z outside (1, x]); exact count still reported
        return (x, z, exact, "", "", "", "ok")


def _cmd_rough_count(args) -> tuple[ScanReport, int]:
    jobs = [(x, args.z, args.epsilon) for x in sorted(args.xs)]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(_rough_row, jobs))
    else:
        rows = [_rough_row(job) for job in jobs]
    report = ScanReport(
        command="rough-count",
        parameters={"x": "+".join(str(x) for x in sorted(args.xs)),
                    "z": "g_eps(x^2)" if args.z is None else repr(args.z)},
        columns=["x", "z", "exact", "estimate", "ratio", "envelope", "status"],
        rows=rows,
        metadata=_meta(args),
    )
    code = EXIT_INDETERMINATE if report.has_indeterminate else EXIT_OK
    return report, code


def _cmd_lower_bound_table(args) -> tuple[ScanReport, int]:
    rows = []
    for x in sorted(args.xs):
        z = g_eps(x * x, args.epsilon)
        bound = lower_bound_estimate(x, args.epsilon)
        try:
            comparison = lower_bound_comparison(x, args.epsilon)
            crit = scan(3, x, ChainSet.DIRECT, epsilon=args.epsilon,
                        workers=args.workers)
            floor = observed_bound_floor(x, args.epsilon)
            rows.append((x, z, bound, comparison.rough_exact, crit, floor, "ok"))
        except BudgetExceededError:
            rows.append((x, z, bound, "indeterminate", "indeterminate", "",
                         "indeterminate"))
    report = ScanReport(
        command="lower-bound-table",
        parameters={"x": "+".join(str(x) for x in sorted(args.xs))},
        columns=["x", "cutoff_z", "bound", "rough_exact", "criterion_count",
                 "n0_star", "status"],
        rows=rows,
        metadata=_meta(args, workers=str(args.workers)),
    )
    code = EXIT_INDETERMINATE if report.has_indeterminate else EXIT_OK
    return report, code


def _cmd_refined(args) -> tuple[ScanReport, int]:
    x = args.x
    cap = term_cap(x, args.epsilon)
    primes = [int(p) for p in primes_upto(x)]
    rows = []
    total = 0
    for r in range(1, cap + 1):
        record = count_r_term(x, r, primes)
        total += record.count
        rows.append((r, 3**r, record.count))
    report = ScanReport(
        command="refined",
        parameters={"x": str(x)},
        columns=["r", "prime_floor", "count"],
        rows=rows,
        metadata=_meta(
            args,
            term_cap=str(cap),
            total=str(total),
            sum_1_over_p=repr(prime_reciprocal_sum(x)),
            log_log_x=repr(math.log(math.log(x))),
        ),
    )
    return report, EXIT_OK


def _cmd_verify_perfect(args) -> tuple[ScanReport, int]:
    if (args.n is None) == (args.upto is None):
        raise ValueError("give exactly one of: a single n, or --upto N_MAX")
    rows = []
    metadata = _meta(args, node_budget=str(args.budget_nodes))
    code = EXIT_OK
    if args.upto is not None:
        validation = validate_criterion(args.upto, node_budget=args.budget_nodes,
                                        workers=args.workers)
        rows = [(n, holds, status, nodes)
                for n, holds, status, nodes in validation.rows]
        metadata["criterion_true"] = str(validation.criterion_true)
        metadata["confirmed_absent"] = str(validation.confirmed_absent)
        metadata["indeterminate"] = str(validation.indeterminate)
        if validation.violations:
            metadata["violations"] = "+".join(map(str, validation.violations))
            print(f"mondrian-sieve: FATAL: perfect tiling found for criterion-true "
                  f"n in {validation.violations}", file=sys.stderr)
            code = EXIT_ERROR
        elif validation.indeterminate:
            code = EXIT_INDETERMINATE
        parameters = {"upto": str(args.upto)}
    else:
        record = criterion_direct(args.n)
        result = find_perfect_tiling(args.n, node_budget=args.budget_nodes)
        rows = [(args.n, record.holds, result.status.value, result.nodes)]
        parameters = {"n": str(args.n)}
        if result.status is SearchStatus.FOUND:
            metadata["tiling"] = result.instance.to_json()
            if record.holds:
                print(f"mondrian-sieve: FATAL: perfect tiling found for "
                      f"criterion-true n={args.n}", file=sys.stderr)
                code = EXIT_ERROR
        elif result.status is SearchStatus.INDETERMINATE:
            code = EXIT_INDETERMINATE
    report = ScanReport(
        command="verify-perfect",
        parameters=parameters,
        columns=["n", "criterion", "status", "nodes"],
        rows=rows,
        metadata=metadata,
    )
    return report, code


_COMMANDS = {
    "criterion-scan": _cmd_criterion_scan,
    "rough-count": _cmd_rough_count,
    "lower-bound-table": _cmd_lower_bound_table,
    "refined": _cmd_refined,
    "verify-perfect": _cmd_verify_perfect,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report, code = _COMMANDS[args.command](args)
    except (ValueError, BudgetExceededError) as exc:
        print(f"mondrian-sieve: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    text = report.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        from .plots import render_report, save_figure

        save_figure(render_report(report), args.plot)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
