"""Figure rendering for reports and scans.

Everything goes through the Agg backend so rendering works headless; each
function writes one PNG and returns its path.  Figures are a presentation
layer only: they are derived from the same dicts the JSON output carries,
never from separate computation.
"""

from __future__ import annotations

import os
from typing import Any, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def classify_figure(report: dict[str, Any], path: str) -> str:
    """Bar chart of the structural subset sizes of one ring."""
    sizes = report["subset_sizes"]
    names = list(sizes.keys())
    values = [sizes[n] for n in names]
    fig, ax = plt.subplots(figsize=(7, 3.5))
    ax.bar(range(len(names)), values, color="#4878a8")
    ax.axhline(report["order"], color="#a84848", ls="--", lw=1,
               label=f"order = {report['order']}")
    ax.set_xticks(range(len(names)))
    ax.set_xticklabels(names, rotation=30, ha="right", fontsize=8)
    ax.set_ylabel("elements")
    ax.set_title(f"{report['spec']}: structural subsets")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def scan_figure(records: Sequence[dict[str, Any]], path: str) -> str:
    """Heatmap of predicate outcomes across scanned rings."""
    rows = [r for r in records if "predicates" in r]
    if not rows:
        return _empty_figure(path, "no scan records with predicates")
    kinds = list(rows[0]["predicates"].keys())
    labels = [r.get("spec") or f"{r['ring']} ; {r['group']}" for r in rows]
    grid = [[1 if r["predicates"][k]["holds"] else 0 for k in kinds]
            for r in rows]
    fig, ax = plt.subplots(
        figsize=(max(4.0, 0.55 * len(kinds) + 2),
                 max(2.5, 0.28 * len(rows) + 1.2)))
    ax.imshow(grid, cmap="RdYlGn", vmin=0, vmax=1, aspect="auto")
    ax.set_xticks(range(len(kinds)))
    ax.set_xticklabels(kinds, rotation=45, ha="right", fontsize=7)
    ax.set_yticks(range(len(labels)))
    ax.set_yticklabels(labels, fontsize=7)
    ax.set_title("predicate outcomes (green = holds)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def tfine_figure(summary: dict[str, Any], path: str) -> str:
    """Histograms of unit orders and nilpotency indices over one M_n(R)."""
    orders = summary.get("unit_orders", [])
    indices = summary.get("nilpotency_indices", [])
    fig, axes = plt.subplots(1, 2, figsize=(8, 3))
    for ax, data, title in ((axes[0], orders, "torsion-unit order"),
                            (axes[1], indices, "nilpotency index")):
        if data:
            lo, hi = min(data), max(data)
            ax.hist(data, bins=range(lo, hi + 2), color="#4878a8",
                    rwidth=0.9, align="left")
        ax.set_title(title, fontsize=9)
        ax.set_xlabel("value", fontsize=8)
        ax.set_ylabel("matrices", fontsize=8)
    fig.suptitle(summary.get("spec", ""), fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def _empty_figure(path: str, message: str) -> str:
    fig, ax = plt.subplots(figsize=(4, 2))
    ax.text(0.5, 0.5, message, ha="center", va="center")
    ax.set_axis_off()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def figure_path(out: str | None, stem: str) -> str:
    """PNG path next to the main output file, or in the cwd."""
    if out:
        base, _ = os.path.splitext(out)
        return f"{base}.{stem}.png"
    return f"{stem}.png"
