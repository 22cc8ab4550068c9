"""Matplotlib figures (PNG) and CSV tables for scenario reports."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .group import Window  # noqa: E402
from .render import Layer, Slice, colour, layer_points  # noqa: E402

MARKERS = ["s", "o", "+", "x", "*", "D", "^", "v"]


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow(r)
    return path


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, (tuple, list)):
        return " ".join(str(a) for a in v)
    return v


def layers_csv(path, layers: Sequence[Layer], window: Window, slice_: Slice | None = None) -> Path:
    """One row per (layer, drawn point)."""
    xs, ys, grid, slice_ = layer_points(layers, window, slice_)
    rows = []
    for (x, y), hit in sorted(grid.items()):
        for i in hit:
            rows.append((layers[i].name, x, y))
    return write_csv(path, ("layer", "x", "y"), rows)


def witnesses_csv(path, witnesses: dict) -> Path:
    """``c -> x0`` minimality witnesses, or point -> (w, c) coverage witnesses."""
    rows = []
    for k, v in sorted(witnesses.items()):
        if isinstance(v, tuple) and v and isinstance(v[0], tuple):
            rows.append((_cell(k),) + tuple(_cell(a) for a in v))
        else:
            rows.append((_cell(k), _cell(v)))
    width = max((len(r) for r in rows), default=2)
    header = ("key", "value") if width == 2 else ("point", "w", "c")
    return write_csv(path, header, rows)


def plot_layers(path, layers: Sequence[Layer], window: Window, slice_: Slice | None = None,
                title: str | None = None) -> Path:
    xs, ys, grid, slice_ = layer_points(layers, window, slice_)
    fig, ax = plt.subplots(figsize=(6, 6), dpi=100)
    for i, L in enumerate(layers):
        pts = sorted(p for p, hit in grid.items() if i in hit)
        if pts:
            px, py = zip(*pts)
            ax.scatter(px, py, s=18, marker=MARKERS[i % len(MARKERS)], color=colour(i), label=L.name,
                       alpha=0.7)
    ax.set_xlim(xs[0] - 0.5, xs[-1] + 0.5)
    ax.set_ylim(ys[0] - 0.5, ys[-1] + 0.5)
    ax.set_aspect("equal")
    ax.axhline(0, color="#bbbbbb", lw=0.8, zorder=0)
    ax.axvline(0, color="#bbbbbb", lw=0.8, zorder=0)
    ax.set_xlabel(f"coordinate {slice_.axes[0]}")
    ax.set_ylabel(f"coordinate {slice_.axes[1]}")
    if title:
        ax.set_title(title)
    if layers:
        ax.legend(loc="upper right", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return Path(path)


def plot_moderation(path, report, title: str | None = None) -> Path:
    """Empirical maxima of ``u(x) + v(x0 - x)`` against the claimed bound, for 1-D x0."""
    rows = [r for r in report.rows if len(r.x0) == 1]
    fig, ax = plt.subplots(figsize=(6, 4), dpi=100)
    if rows:
        xs = [r.x0[0] for r in rows]
        ax.plot(xs, [r.empirical_max for r in rows], "o-", color=colour(0), ms=3, label="empirical max")
        if all(r.claimed is not None for r in rows):
            ax.plot(xs, [r.claimed for r in rows], "--", color=colour(1), label="bound m0(x0)")
        ax.set_xlabel("x0")
    else:
        idx = list(range(len(report.rows)))
        ax.plot(idx, [r.empirical_max for r in report.rows], "o", color=colour(0), ms=3, label="empirical max")
        if report.rows and all(r.claimed is not None for r in report.rows):
            ax.plot(idx, [r.claimed for r in report.rows], "_", color=colour(1), label="bound m0(x0)")
        ax.set_xlabel("x0 (lexicographic index)")
    ax.set_ylabel("max first coordinate of u(x) + v(x0 - x)")
    if title:
        ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return Path(path)


def moderation_csv(path, report) -> Path:
    rows = [(_cell(r.x0), r.empirical_max, _cell(r.argmax), _cell(r.claimed), _cell(r.growth))
            for r in report.rows]
    return write_csv(path, ("x0", "empirical_max", "argmax", "claimed", "growth"), rows)
