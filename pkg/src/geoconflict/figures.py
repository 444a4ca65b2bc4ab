"""Figure rendering for the report paths (headless, PNG files)."""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .evaluation import MethodResult, SweepRow


def save_category_figure(counts: dict[str, int], path: str | Path) -> None:
    """Bar chart of conflict reports per category."""
    fig, ax = plt.subplots(figsize=(6, 4))
    names = list(counts)
    values = [counts[n] for n in names]
    bars = ax.bar(names, values, color="#4878a8")
    ax.bar_label(bars)
    ax.set_ylabel("objects")
    ax.set_title("Conflicts by category")
    ax.tick_params(axis="x", labelrotation=20)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_tuning_figure(rows: Sequence[SweepRow], path: str | Path) -> None:
    """Precision/recall against the search radius."""
    radii = [r.radius_m for r in rows]
    precision = [r.metrics.precision_pct if r.metrics.precision_pct is not None else 0.0 for r in rows]
    recall = [r.metrics.recall_pct for r in rows]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(radii, precision, marker="o", label="precision")
    ax.plot(radii, recall, marker="s", label="recall")
    ax.set_xlabel("search radius (m)")
    ax.set_ylabel("%")
    ax.set_title("Radius tuning")
    low = min(precision + recall)
    ax.set_ylim(max(0.0, low - 5.0), 101.0)
    ax.grid(True, alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_methods_figure(results: Sequence[MethodResult], path: str | Path) -> None:
    """Grouped bars comparing precision and recall per method."""
    fig, ax = plt.subplots(figsize=(6, 4))
    width = 0.35
    for i, result in enumerate(results):
        p = result.metrics.precision_pct or 0.0
        r = result.metrics.recall_pct
        bars = ax.bar([i - width / 2, i + width / 2], [p, r], width, label=None)
        ax.bar_label(bars, fmt="%.2f")
    ax.set_xticks(range(len(results)))
    ax.set_xticklabels([r.method for r in results])
    ax.set_ylabel("%")
    ax.set_ylim(0, 110)
    ax.set_title("Method comparison (left bar precision, right bar recall)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
