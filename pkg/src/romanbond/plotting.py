"""Campaign figures written next to the JSON-lines report."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

FIGSIZE = (6.0, 4.0)


def _style(ax, xlabel: str, ylabel: str, title: str) -> None:
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.set_title(title, fontsize=11)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)


def _as_float(x):
    if x is None:
        return None
    return float(Fraction(x)) if isinstance(x, str) else float(x)


def domination_histogram(rows, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=FIGSIZE)
    g_r = Counter(r["gamma_r"] for r in rows if r["gamma_r"] is not None)
    g = Counter(r["gamma"] for r in rows if r["gamma"] is not None)
    keys = sorted(set(g_r) | set(g))
    ax.bar([k - 0.2 for k in keys], [g.get(k, 0) for k in keys], width=0.4, label="domination number")
    ax.bar([k + 0.2 for k in keys], [g_r.get(k, 0) for k in keys], width=0.4, label="Roman domination number")
    ax.set_xticks(keys)
    ax.legend(frameon=False)
    _style(ax, "value", "graphs", "Domination numbers over the corpus")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def bondage_vs_bounds(rows, path: Path) -> Path:
    pts = [(r["b_r"], _as_float(r["bound_path"]), r["max_degree"]) for r in rows if r["b_r"] is not None]
    fig, ax = plt.subplots(figsize=FIGSIZE)
    if pts:
        b = [p[0] for p in pts]
        ax.scatter([p[1] for p in pts if p[1] is not None], [p[0] for p in pts if p[1] is not None],
                   s=14, alpha=0.5, label="path bound")
        ax.scatter([p[2] for p in pts], b, s=10, marker="x", alpha=0.5, label="max degree")
        top = max(max(b), max((p[1] or 0) for p in pts), max(p[2] for p in pts)) + 1
        ax.plot([0, top], [0, top], color="0.5", lw=0.8, ls="--")
        ax.legend(frameon=False)
    _style(ax, "upper bound", "exact Roman bondage number", "Exact bondage against bounds")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_campaign_figures(rows, directory: str | Path) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    return [
        domination_histogram(rows, out / "domination_histogram.png"),
        bondage_vs_bounds(rows, out / "bondage_vs_bounds.png"),
    ]
