"""Render report figures to files next to the delimited output.

Import order matters: the Agg backend is selected before pyplot so rendering
works headless.  Saved files carry no creation dates, keeping figure bytes
reproducible run to run.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
matplotlib.rcParams["svg.hashsalt"] = "mondrian-sieve"  # stable SVG element ids

import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.figure import Figure  # noqa: E402

from .report import ScanReport  # noqa: E402

_FIG_SIZE = (7.0, 4.4)


def render_report(report: ScanReport) -> Figure:
    """Build the figure matching the report's command."""
    fig, ax = plt.subplots(figsize=_FIG_SIZE)
    renderer = {
        "criterion-scan": _render_bars_by_label,
        "rough-count": _render_count_curves,
        "lower-bound-table": _render_bound_curves,
        "refined": _render_refined_bars,
        "verify-perfect": _render_verify_bars,
    }.get(report.command)
    if renderer is None:
        raise ValueError(f"no figure defined for command {report.command!r}")
    renderer(report, ax)
    fig.tight_layout()
    return fig


def save_figure(fig: Figure, path: str) -> str:
    """Write the figure to path; format follows the extension."""
    metadata = {}
    if path.endswith(".svg"):
        metadata = {"Date": None}
    elif path.endswith(".pdf"):
        metadata = {"CreationDate": None}
    fig.savefig(path, metadata=metadata)
    plt.close(fig)
    return path


def _column(report: ScanReport, name: str) -> list:
    idx = report.columns.index(name)
    return [row[idx] for row in report.rows]


def _numeric_rows(report: ScanReport, names: list[str]) -> list[list]:
    cols = [_column(report, name) for name in names]
    keep = [
        i
        for i in range(len(report.rows))
        if all(isinstance(col[i], (int, float)) for col in cols)
    ]
    return [[col[i] for i in keep] for col in cols]


def _render_bars_by_label(report: ScanReport, ax) -> None:
    labels = [str(v) for v in _column(report, "set")]
    counts = _column(report, "count")
    ax.bar(range(len(labels)), counts, color="tab:blue")
    ax.set_xticks(range(len(labels)), labels, rotation=20, ha="right")
    ax.set_ylabel("members")
    lo, hi = report.parameters.get("lo"), report.parameters.get("hi")
    ax.set_title(f"chain-set members on [{lo}, {hi}]")


def _render_count_curves(report: ScanReport, ax) -> None:
    xs, exact, estimate = _numeric_rows(report, ["x", "exact", "estimate"])
    ax.plot(xs, exact, "o-", label="exact")
    ax.plot(xs, estimate, "s--", label="sieve main term")
    if len(xs) > 1 and min(xs) > 0 and max(xs) / max(min(xs), 1) > 50:
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.set_xlabel("x")
    ax.set_ylabel("rough integers up to x")
    ax.set_title("rough-number counts")
    ax.legend()


def _render_bound_curves(report: ScanReport, ax) -> None:
    xs, bound, rough, crit = _numeric_rows(
        report, ["x", "bound", "rough_exact", "criterion_count"]
    )
    ax.plot(xs, crit, "o-", label="criterion members")
    ax.plot(xs, rough, "s-", label="rough count at cutoff")
    ax.plot(xs, bound, "^--", label="closed-form bound")
    if len(xs) > 1 and max(xs) / max(min(xs), 1) > 50:
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.set_xlabel("x")
    ax.set_ylabel("count")
    ax.set_title("lower-bound comparison")
    ax.legend()


def _render_refined_bars(report: ScanReport, ax) -> None:
    rs = _column(report, "r")
    counts = _column(report, "count")
    ax.bar(rs, counts, color="tab:green")
    ax.set_xlabel("r (distinct primes, each > 3^r)")
    ax.set_ylabel("count")
    ax.set_title(f"refined terms at x = {report.parameters.get('x')}")


def _render_verify_bars(report: ScanReport, ax) -> None:
    ns = _column(report, "n")
    nodes = _column(report, "nodes")
    status = [str(v) for v in _column(report, "status")]
    palette = {
        "exhausted": "tab:blue",
        "skipped": "tab:gray",
        "indeterminate": "tab:orange",
        "found": "tab:red",
    }
    colors = [palette.get(s, "tab:purple") for s in status]
    ax.bar(ns, [max(v, 1) for v in nodes], color=colors)
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("search nodes (log)")
    ax.set_title("tiling searches per side length")
