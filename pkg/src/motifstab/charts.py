"""Static SVG charts: profile bars, occurrence scatter, grouped box plots."""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

CLASS_COLORS = {"I": "#4878cf", "II": "#ee854a", "III": "#d65f5f"}

_SAVE_KWARGS = {"format": "svg", "metadata": {"Date": None}}


def _setup():
    plt.rcParams["svg.hashsalt"] = "motifstab"


def _edge_boundaries(edge_counts: list[int]) -> list[float]:
    return [i - 0.5 for i in range(1, len(edge_counts)) if edge_counts[i] != edge_counts[i - 1]]


def _class_legend(ax, classes_present):
    handles = [
        plt.Rectangle((0, 0), 1, 1, color=CLASS_COLORS[c], label=f"class {c}")
        for c in ("I", "II", "III")
        if c in classes_present
    ]
    if handles:
        ax.legend(handles=handles, loc="best", fontsize=8)


def emit_size_charts(sr, out_dir: Path) -> list[Path]:
    _setup()
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    size = sr.size
    class_of = {p.motif: p.stability_class for p in sr.stability}
    motifs = [r.motif for r in sr.records]  # already (edge_count, id) sorted
    edge_counts = [r.edge_count for r in sr.records]
    xs = list(range(len(motifs)))
    written = []

    # (a) normalized Z profile
    fig, ax = plt.subplots(figsize=(max(6, len(motifs) * 0.35), 4) if size == 3 else (12, 4))
    bars = ax.bar(
        xs,
        [sr.profile.scores[m] for m in motifs],
        color=[CLASS_COLORS[class_of[m]] for m in motifs],
    )
    for bar, m in zip(bars, motifs):
        bar.set_gid(f"bar-{size}-{m.id}")
    for x in _edge_boundaries(edge_counts):
        ax.axvline(x, color="black", linestyle="--", linewidth=0.8)
    if size == 3:
        ax.set_xticks(xs)
        ax.set_xticklabels([str(m.id) for m in motifs], fontsize=7)
    else:
        step = max(1, len(xs) // 20)
        ax.set_xticks(xs[::step])
        ax.set_xticklabels([str(motifs[i].id) for i in xs[::step]], fontsize=6, rotation=90)
    ax.set_xlabel("motif id (sorted by edge count)")
    ax.set_ylabel("normalized Z score")
    ax.set_title(f"{size}-node motif significance profile")
    _class_legend(ax, set(class_of.values()))
    path = out_dir / f"profile_{size}.svg"
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
    written.append(path)

    # (b) occurrence scatter
    fig, ax = plt.subplots(figsize=(max(6, len(motifs) * 0.35), 4) if size == 3 else (12, 4))
    n_real = {r.motif: r.n_real for r in sr.records}
    ax.scatter(
        xs,
        [math.log10(n_real[m] + 1) for m in motifs],
        c=[CLASS_COLORS[class_of[m]] for m in motifs],
        s=18,
    )
    for x in _edge_boundaries(edge_counts):
        ax.axvline(x, color="black", linestyle="--", linewidth=0.8)
    if size == 3:
        ax.set_xticks(xs)
        ax.set_xticklabels([str(m.id) for m in motifs], fontsize=7)
    ax.set_xlabel("motif id (sorted by edge count)")
    ax.set_ylabel("log10(N_real + 1)")
    ax.set_title(f"{size}-node motif occurrence")
    _class_legend(ax, set(class_of.values()))
    path = out_dir / f"occurrence_{size}.svg"
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
    written.append(path)

    # (c) box plots per edge-count group, split by stability class
    groups = [ec for ec in sorted(sr.kw_by_edges) if any(
        sr.box_by_cell.get((ec, c)) is not None for c in ("I", "II", "III")
    )]
    if groups:
        fig, axes = plt.subplots(1, len(groups), figsize=(3.2 * len(groups), 4), squeeze=False)
        for ax, ec in zip(axes[0], groups):
            stats = []
            colors = []
            labels = []
            for cls in ("I", "II", "III"):
                box = sr.box_by_cell.get((ec, cls))
                if box is None:
                    continue
                stats.append(
                    {
                        "med": box.mean,  # red center line shows the mean
                        "q1": box.q1,
                        "q3": box.q3,
                        "whislo": box.whisker_low,
                        "whishi": box.whisker_high,
                        "fliers": list(box.outliers),
                        "label": cls,
                    }
                )
                colors.append(CLASS_COLORS[cls])
                labels.append(cls)
            artists = ax.bxp(
                stats,
                showmeans=False,
                medianprops={"color": "red"},
                flierprops={"marker": "o", "markerfacecolor": "red", "markersize": 4},
            )
            for patch_line, color in zip(artists["boxes"], colors):
                patch_line.set_color(color)
            kw = sr.kw_by_edges.get(ec)
            p_text = f"p = {kw[2]:.4g}" if kw is not None else "p: n/a"
            ax.set_title(f"{ec} edges ({p_text})", fontsize=9)
            ax.set_xlabel("stability class")
        axes[0][0].set_ylabel("Z score")
        fig.suptitle(f"{size}-node motif Z scores by stability class")
    else:
        fig, ax = plt.subplots(figsize=(4, 3))
        ax.text(0.5, 0.5, "no edge-count group has enough data", ha="center", va="center")
        ax.set_axis_off()
    path = out_dir / f"boxes_{size}.svg"
    fig.savefig(path, **_SAVE_KWARGS)
    plt.close(fig)
    written.append(path)
    return written
