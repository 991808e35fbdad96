"""Census figures written with matplotlib's Agg backend."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _classes(report):
    return list(report["minimal_vertices"])


def plot_counts(report, path):
    """Stacked bars: entries per vertex count, split by H1."""
    ns = sorted(report["h1_by_vertices"], key=int)
    classes = _classes(report)
    fig, ax = plt.subplots(figsize=(6, 4))
    bottom = [0] * len(ns)
    cmap = plt.get_cmap("tab10")
    for k, h in enumerate(classes):
        heights = [report["h1_by_vertices"][n].count(h) for n in ns]
        ax.bar(ns, heights, bottom=bottom, label=f"H1 = {h}", color=cmap(k % 10))
        bottom = [b + x for b, x in zip(bottom, heights)]
    ax.set_xlabel("spine vertices")
    ax.set_ylabel("positive flow-spines")
    ax.set_title("Positive flow-spines by vertex count")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_minimal(report, path):
    """First vertex count at which each H1 appears."""
    classes = _classes(report)
    values = [report["minimal_vertices"][h] for h in classes]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.scatter(range(len(classes)), values, s=60)
    for i, v in enumerate(values):
        ax.annotate(str(v), (i, v), textcoords="offset points", xytext=(0, 6), ha="center")
    ax.set_xticks(range(len(classes)))
    ax.set_xticklabels(classes)
    ax.set_yticks(sorted(set(values)))
    ax.set_ylim(0.5, max(values, default=1) + 0.7)
    ax.set_xlabel("H1")
    ax.set_ylabel("minimal vertices")
    ax.set_title("Smallest positive flow-spine per homology class")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_census_figures(report, out_dir) -> list:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    paths = [out_dir / "census_counts.png", out_dir / "census_minimal.png"]
    if not report["total"]:
        return []
    plot_counts(report, paths[0])
    plot_minimal(report, paths[1])
    return [str(p) for p in paths]
