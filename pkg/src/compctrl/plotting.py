"""Figures for synthesis reports: the composed state/input patterns with the chosen interconnections."""
from __future__ import annotations

from typing import Iterable, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.ticker import MaxNLocator  # noqa: E402

from .systems import CompositeSpec, Interconnection, global_index  # noqa: E402

INTRA_COLOR = "0.35"
LINK_COLOR = "tab:red"
INPUT_COLOR = "tab:blue"


def plot_composite(spec: CompositeSpec, links: Iterable[Interconnection], path: str,
                   title: Optional[str] = None, dpi: int = 150) -> str:
    """Write a pattern plot of (A', B) to ``path``; returns the path."""
    links = sorted(links)
    n_T, n_s = spec.n_T, spec.n_s
    width = max(4.0, min(12.0, 0.25 * n_T + 2))
    fig, (ax_a, ax_b) = plt.subplots(
        1, 2, figsize=(width + 1.5, width),
        gridspec_kw={"width_ratios": [n_T, max(spec.m, 1) + 1]},
    )
    ms = max(1.0, min(8.0, 150.0 / n_T))

    intra = [(n_s * i + r, n_s * i + c) for i in range(spec.k) for r, c in sorted(spec.a_s.stars)]
    if intra:
        rows, cols = zip(*intra)
        ax_a.plot(cols, rows, "s", color=INTRA_COLOR, ms=ms, label="subsystem")
    if links:
        rows = [global_index(l.target, n_s) for l in links]
        cols = [global_index(l.source, n_s) for l in links]
        ax_a.plot(cols, rows, "s", color=LINK_COLOR, ms=ms, label=f"interconnection ({len(links)})")
    for i in range(1, spec.k):
        edge = n_s * i + 0.5
        ax_a.axhline(edge, color="0.8", lw=0.6)
        ax_a.axvline(edge, color="0.8", lw=0.6)
    ax_a.set_xlim(0.5, n_T + 0.5)
    ax_a.set_ylim(n_T + 0.5, 0.5)
    ax_a.set_aspect("equal")
    ax_a.set_xlabel("source state")
    ax_a.set_ylabel("target state")
    ax_a.xaxis.set_major_locator(MaxNLocator(integer=True))
    ax_a.yaxis.set_major_locator(MaxNLocator(integer=True))
    ax_a.legend(loc="upper center", bbox_to_anchor=(0.5, -0.12), ncol=2, fontsize=7, frameon=False, markerscale=0.6)

    if spec.b.stars:
        rows, cols = zip(*sorted(spec.b.stars))
        ax_b.plot(cols, rows, "s", color=INPUT_COLOR, ms=ms)
    ax_b.set_xlim(0.5, spec.m + 0.5)
    ax_b.set_ylim(n_T + 0.5, 0.5)
    ax_b.set_xticks(range(1, spec.m + 1))
    ax_b.set_xlabel("input")
    ax_b.set_yticks([])

    fig.suptitle(title or f"k={spec.k}, n_s={n_s}, interconnections: {len(links)}")
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
