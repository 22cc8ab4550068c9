"""Deterministic ASCII and SVG renderings of sets on a 2-D window.

Every drawn cell is a point that the layer's set contains: the grid is
computed once by :func:`layer_points` and both formats draw from it, so
:func:`audit` can re-check the exact cells that appear.  Output depends only
on the inputs (no timestamps, fixed palette, fixed number formatting).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .group import GroupError, Window
from .sets import SymbolicSet

GLYPHS = "#o+x*@%=~^"
OVERLAP = "&"
EMPTY = "."
PALETTE = ["#1f4e9c", "#d0452f", "#2e8b57", "#8e44ad", "#d4a017", "#17a2b8", "#7f4f24", "#555555"]
CELL = 12


@dataclass(frozen=True)
class Slice:
    """Two displayed coordinates; the others are held at ``fixed``."""

    axes: tuple[int, int] = (0, 1)
    fixed: tuple[int, ...] = ()

    def embed(self, dim: int, x: int, y: int) -> tuple[int, ...]:
        p = list(self.fixed) if self.fixed else [0] * dim
        if len(p) != dim:
            raise GroupError(f"slice point has {len(p)} coordinates, group has {dim}")
        p[self.axes[0]] = x
        p[self.axes[1]] = y
        return tuple(p)

    @classmethod
    def parse(cls, text: str) -> "Slice":
        """``"0,1@0,0,5,0"``: axes 0 and 1, other coordinates from the point."""
        axes, _, fixed = text.partition("@")
        a = tuple(int(x) for x in axes.split(","))
        if len(a) != 2 or a[0] == a[1]:
            raise GroupError("a slice needs two distinct axes")
        f = tuple(int(x) for x in fixed.split(",")) if fixed else ()
        return cls(a, f)


@dataclass
class Layer:
    name: str
    set: SymbolicSet


def _ranges(window: Window) -> list[tuple[int, int]]:
    return list(window.bounds) + [(0, n - 1) for n in window.torsion]


def _plane(layers: Sequence[Layer], window: Window, slice_: Slice | None):
    if not layers:
        dim = window.dim
    else:
        dims = {L.set.group.dim for L in layers}
        if len(dims) != 1:
            raise GroupError("all layers must live in the same group")
        dim = dims.pop()
    ranges = _ranges(window)
    if len(ranges) != dim:
        raise GroupError(f"window has {len(ranges)} coordinates, group has {dim}")
    if slice_ is None:
        if dim != 2:
            raise GroupError(f"rendering needs a 2-D group or a slice; this group has dimension {dim}")
        slice_ = Slice()
    ax, ay = slice_.axes
    if max(ax, ay) >= dim:
        raise GroupError("slice axis out of range")
    return dim, slice_, ranges[ax], ranges[ay]


def layer_points(layers: Sequence[Layer], window: Window, slice_: Slice | None = None):
    """``(xs, ys, grid)`` with ``grid[(x, y)]`` the sorted layer indices present."""
    dim, slice_, (x0, x1), (y0, y1) = _plane(layers, window, slice_)
    xs = list(range(x0, x1 + 1))
    ys = list(range(y0, y1 + 1))
    grid: dict[tuple[int, int], tuple[int, ...]] = {}
    for x in xs:
        for y in ys:
            p = slice_.embed(dim, x, y)
            hit = tuple(i for i, L in enumerate(layers) if L.set.contains(p))
            if hit:
                grid[(x, y)] = hit
    return xs, ys, grid, slice_


def audit(layers: Sequence[Layer], window: Window, slice_: Slice | None = None) -> list[str]:
    """Cells whose drawn layers disagree with ``contains``; empty when clean."""
    xs, ys, grid, slice_ = layer_points(layers, window, slice_)
    dim = window.dim
    problems = []
    for (x, y), hit in grid.items():
        p = slice_.embed(dim, x, y)
        for i in hit:
            if not layers[i].set.contains(p):
                problems.append(f"{layers[i].name} drawn at {p} but does not contain it")
    return problems


def glyph(i: int) -> str:
    return GLYPHS[i % len(GLYPHS)]


def colour(i: int) -> str:
    return PALETTE[i % len(PALETTE)]


def render_ascii(layers: Sequence[Layer], window: Window, slice_: Slice | None = None,
                 title: str | None = None) -> str:
    xs, ys, grid, slice_ = layer_points(layers, window, slice_)
    lines = []
    if title:
        lines.append(title)
    for i, L in enumerate(layers):
        lines.append(f"{glyph(i)} {L.name}")
    if len(layers) > 1:
        lines.append(f"{OVERLAP} several")
    ax, ay = slice_.axes
    lines.append(f"x: coordinate {ax} in {xs[0]}..{xs[-1]}, y: coordinate {ay} in {ys[0]}..{ys[-1]}")
    w = max(len(str(ys[0])), len(str(ys[-1])))
    for y in reversed(ys):
        row = []
        for x in xs:
            hit = grid.get((x, y))
            row.append(EMPTY if not hit else glyph(hit[0]) if len(hit) == 1 else OVERLAP)
        lines.append(f"{y:>{w}} " + "".join(row))
    return "\n".join(lines) + "\n"


def render_svg(layers: Sequence[Layer], window: Window, slice_: Slice | None = None,
               title: str | None = None, cell: int = CELL) -> str:
    xs, ys, grid, slice_ = layer_points(layers, window, slice_)
    nx, ny = len(xs), len(ys)
    top = 24 if title else 4
    legend = 16 * len(layers) + 8
    width = nx * cell + 8
    height = top + ny * cell + legend
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
    ]
    if title:
        out.append(f'<text x="4" y="16" font-family="monospace" font-size="12">{_esc(title)}</text>')
    ox, oy = 4, top

    def cx(x):
        return ox + (x - xs[0]) * cell

    def cy(y):
        return oy + (ys[-1] - y) * cell

    out.append(f'<rect x="{ox}" y="{oy}" width="{nx * cell}" height="{ny * cell}" '
               f'fill="none" stroke="#cccccc" stroke-width="1"/>')
    if xs[0] <= 0 <= xs[-1]:
        x = cx(0) + cell // 2
        out.append(f'<line x1="{x}" y1="{oy}" x2="{x}" y2="{oy + ny * cell}" stroke="#bbbbbb" stroke-width="1"/>')
    if ys[0] <= 0 <= ys[-1]:
        y = cy(0) + cell // 2
        out.append(f'<line x1="{ox}" y1="{y}" x2="{ox + nx * cell}" y2="{y}" stroke="#bbbbbb" stroke-width="1"/>')
    for i, L in enumerate(layers):
        pts = sorted(p for p, hit in grid.items() if i in hit)
        out.append(f'<g id="layer{i}" fill="{colour(i)}" fill-opacity="0.65">')
        inset = i % 3
        size = cell - 2 * inset - 1
        for x, y in pts:
            out.append(f'<rect x="{cx(x) + inset}" y="{cy(y) + inset}" width="{size}" height="{size}"/>')
        out.append("</g>")
    ly = oy + ny * cell + 14
    for i, L in enumerate(layers):
        y = ly + 16 * i
        out.append(f'<rect x="4" y="{y - 9}" width="10" height="10" fill="{colour(i)}"/>')
        out.append(f'<text x="18" y="{y}" font-family="monospace" font-size="11">{_esc(L.name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def render(layers: Sequence[Layer], window: Window, fmt: str = "ascii", slice_: Slice | None = None,
           title: str | None = None) -> str:
    if fmt == "ascii":
        return render_ascii(layers, window, slice_, title)
    if fmt == "svg":
        return render_svg(layers, window, slice_, title)
    raise ValueError(f"unknown render format {fmt!r}")
