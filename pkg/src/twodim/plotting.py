"""Figures for CLI reports: projection spectra and run traces."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .core import BORDER, Word2D  # noqa: E402
from .projection import Axis, Spectrum  # noqa: E402
from .run import Trace  # noqa: E402


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    # drop version and date stamps so repeated renders are byte-identical
    metadata = {
        ".png": {"Software": None},
        ".svg": {"Date": None, "Creator": None},
        ".pdf": {"CreationDate": None, "Creator": None, "Producer": None},
    }.get(path.suffix.lower())
    fig.savefig(path, dpi=120, bbox_inches="tight", metadata=metadata)
    plt.close(fig)
    return path


def plot_spectrum(s: Spectrum, path: str | Path) -> Path:
    """Member lengths of a spectrum; one bar per length, height = member count."""
    bound = s.max_cols if s.axis is Axis.ROW else s.max_rows
    counts = [0] * (bound + 1)
    for m in s.members:
        counts[m if isinstance(m, int) else len(m)] += 1
    fig, ax = plt.subplots(figsize=(max(4.0, bound * 0.25), 2.6))
    xs = list(range(1, bound + 1))
    ax.bar(xs, counts[1:], color="#4c72b0", width=0.7)
    ax.set_xlim(0.3, bound + 0.7)
    ax.set_xlabel("row length" if s.axis is Axis.ROW else "column length")
    ax.set_ylabel("members")
    ax.set_title(f"{s.axis.value} projection within {s.max_rows}x{s.max_cols}")
    ax.spines[["top", "right"]].set_visible(False)
    return _save(fig, path)


def plot_trace(w: Word2D, t: Trace, path: str | Path) -> Path:
    """The framed word with the head's path drawn over it."""
    fig, ax = plt.subplots(figsize=(0.5 * (w.cols + 2) + 1, 0.5 * (w.rows + 2) + 1))
    for r in range(w.rows + 2):
        for c in range(w.cols + 2):
            sym = w.at(r, c)
            ax.add_patch(plt.Rectangle((c - 0.5, r - 0.5), 1, 1, fill=sym == BORDER,
                                       facecolor="#dddddd", edgecolor="#999999", lw=0.5))
            ax.text(c, r, sym, ha="center", va="center", fontsize=9,
                    color="#777777" if sym == BORDER else "black")
    cols = [c.col for c in t]
    rows = [c.row for c in t]
    ax.plot(cols, rows, "-o", color="#c44e52", ms=3, lw=1.2, alpha=0.8)
    ax.plot(cols[:1], rows[:1], "s", color="#55a868", ms=7)
    ax.plot(cols[-1:], rows[-1:], "*", color="#c44e52", ms=10)
    ax.set_xlim(-0.5, w.cols + 1.5)
    ax.set_ylim(w.rows + 1.5, -0.5)
    ax.set_aspect("equal")
    ax.axis("off")
    return _save(fig, path)
