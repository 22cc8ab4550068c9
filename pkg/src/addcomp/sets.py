"""Membership-decidable descriptions of finite and infinite subsets.

Every variant answers ``contains`` exactly and can list its members inside a
finite :class:`~addcomp.group.Window`.  Sets over ``G1 x Z^k2`` (columns,
spikes, graphs) lay coordinates out as ``(base free, height, base torsion)``
so that the height coordinates are the last free ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .functions import IntFunction
from .group import (
    GroupElement,
    GroupError,
    GroupSpec,
    SublatticeSpec,
    UnimodularBasis,
    Window,
    as_coords,
)

BELOW = "below"
ABOVE = "above"
MAX_FILL = "max"
BASE_FILL = "base"
BOX_FILL = "box"


class SymbolicSet:
    group: GroupSpec

    def contains(self, p: tuple[int, ...]) -> bool:
        raise NotImplementedError

    def __contains__(self, g) -> bool:
        return self.contains(as_coords(g, self.group))

    def enumerate(self, window: Window) -> list[tuple[int, ...]]:
        return [p for p in window.points() if self.contains(p)]

    @property
    def is_finite(self) -> bool:
        return False


def contains(S: SymbolicSet, g) -> bool:
    return S.contains(as_coords(g, S.group))


def enumerate_in_window(S: SymbolicSet, w: Window) -> list[tuple[int, ...]]:
    """Members of ``S`` inside ``w`` in lexicographic order."""
    w = w.for_group(S.group) if w.torsion != S.group.torsion else w
    return sorted(S.enumerate(w))


# --------------------------------------------------------------------------
# column layout helpers


@dataclass(frozen=True)
class ColumnLayout:
    """Split of ``G1 x Z^k2`` coordinates into base and height parts."""

    base_group: GroupSpec
    k2: int

    @property
    def k1(self) -> int:
        return self.base_group.rank

    @property
    def ambient(self) -> GroupSpec:
        return GroupSpec(self.k1 + self.k2, self.base_group.torsion)

    def base(self, p: Sequence[int]) -> tuple[int, ...]:
        k1, k2 = self.k1, self.k2
        return tuple(p[:k1]) + tuple(p[k1 + k2:])

    def height(self, p: Sequence[int]) -> tuple[int, ...]:
        return tuple(p[self.k1: self.k1 + self.k2])

    def join(self, base: Sequence[int], height: Sequence[int]) -> tuple[int, ...]:
        k1 = self.k1
        return tuple(base[:k1]) + tuple(height) + tuple(base[k1:])

    def base_window(self, w: Window) -> Window:
        return Window(w.bounds[: self.k1], w.torsion)

    def height_ranges(self, w: Window) -> list[range]:
        return [range(lo, hi + 1) for lo, hi in w.bounds[self.k1: self.k1 + self.k2]]


def _layout(base: "SymbolicSet", k2: int) -> ColumnLayout:
    return ColumnLayout(base.group, k2)


def _as_height(v, k2: int) -> tuple[int, ...]:
    if k2 == 1 and not isinstance(v, tuple):
        return (v,)
    return tuple(v)


# --------------------------------------------------------------------------
# basic variants


@dataclass(frozen=True, eq=False)
class Finite(SymbolicSet):
    group: GroupSpec
    elements: frozenset

    def __init__(self, group: GroupSpec, elements: Iterable):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "elements", frozenset(as_coords(e, group) for e in elements))

    def contains(self, p) -> bool:
        return tuple(p) in self.elements

    def enumerate(self, window: Window) -> list[tuple[int, ...]]:
        return sorted(e for e in self.elements if e in window)

    @property
    def is_finite(self) -> bool:
        return True

    def sorted(self) -> list[tuple[int, ...]]:
        return sorted(self.elements)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True, eq=False)
class FullGroup(SymbolicSet):
    group: GroupSpec

    def contains(self, p) -> bool:
        return True

    def enumerate(self, window: Window) -> list[tuple[int, ...]]:
        return list(window.points())

    @property
    def is_finite(self) -> bool:
        return self.group.is_finite


@dataclass(frozen=True, eq=False)
class CoFinite(SymbolicSet):
    group: GroupSpec
    excluded: frozenset

    def __init__(self, group: GroupSpec, excluded: Iterable):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "excluded", frozenset(as_coords(e, group) for e in excluded))

    def contains(self, p) -> bool:
        return tuple(p) not in self.excluded


@dataclass(frozen=True, eq=False)
class RayComplement(SymbolicSet):
    """The group minus the ray ``{base + n*e_axis : n >= start}``."""

    group: GroupSpec
    base: tuple[int, ...]
    axis: int = 1
    start: int = 1

    def ray_index(self, p) -> int | None:
        for i, (x, b) in enumerate(zip(p, self.base)):
            if i != self.axis and x != b:
                return None
        n = p[self.axis] - self.base[self.axis]
        return n if n >= self.start else None

    def contains(self, p) -> bool:
        return self.ray_index(p) is None


@dataclass(frozen=True, eq=False)
class Lattice(SymbolicSet):
    """A sublattice of a free group, as a set."""

    group: GroupSpec
    sub: SublatticeSpec

    def contains(self, p) -> bool:
        return self.sub.contains(p)


# --------------------------------------------------------------------------
# column-structured variants


@dataclass(frozen=True, eq=False)
class TruncatedColumns(SymbolicSet):
    """Union over a in A of ``{a} x (-inf, u(a))`` (below) or ``{a} x (u(a), inf)`` (above)."""

    A: SymbolicSet
    u: IntFunction
    sign: str = BELOW

    def __post_init__(self):
        if self.sign not in (BELOW, ABOVE):
            raise ValueError(f"sign must be {BELOW!r} or {ABOVE!r}")

    @property
    def layout(self) -> ColumnLayout:
        return _layout(self.A, 1)

    @property
    def group(self) -> GroupSpec:
        return self.layout.ambient

    def contains(self, p) -> bool:
        L = self.layout
        a = L.base(p)
        if not self.A.contains(a):
            return False
        y = p[L.k1]
        t = self.u(a)
        return y < t if self.sign == BELOW else y > t

    def enumerate(self, window: Window) -> list[tuple[int, ...]]:
        L = self.layout
        (hr,) = L.height_ranges(window)
        out = []
        for a in self.A.enumerate(L.base_window(window)):
            t = self.u(a)
            ys = range(hr.start, min(hr.stop, t)) if self.sign == BELOW else range(max(hr.start, t + 1), hr.stop)
            out.extend(L.join(a, (y,)) for y in ys)
        return out


@dataclass(frozen=True, eq=False)
class Spiked(SymbolicSet):
    """Spiked subset of ``G1 x Z^k2`` with base B.

    ``fill="max"`` is the largest admissible set: full columns over B and,
    off B, every height strictly below ``u(x)`` in dictionary order.
    ``fill="base"`` is just ``B x Z^k2``.  ``fill="box"`` keeps, off B, the
    heights lying strictly below ``u(x)`` in every coordinate; it sits between
    the other two.
    """

    base: SymbolicSet
    u: IntFunction
    fill: str = MAX_FILL

    def __post_init__(self):
        if self.fill not in (MAX_FILL, BASE_FILL, BOX_FILL):
            raise ValueError(f"fill must be one of {MAX_FILL!r}, {BASE_FILL!r}, {BOX_FILL!r}")

    @property
    def k2(self) -> int:
        return self.u.dim

    @property
    def layout(self) -> ColumnLayout:
        return _layout(self.base, self.k2)

    @property
    def group(self) -> GroupSpec:
        return self.layout.ambient

    def contains(self, p) -> bool:
        L = self.layout
        b = L.base(p)
        if self.base.contains(b):
            return True
        if self.fill == BASE_FILL:
            return False
        h, top = L.height(p), _as_height(self.u(b), self.k2)
        if self.fill == BOX_FILL:
            return all(a < t for a, t in zip(h, top))
        return h < top

    def enumerate(self, window: Window) -> list[tuple[int, ...]]:
        L = self.layout
        hr = L.height_ranges(window)
        out = []
        for b in window_points(L.base_window(window)):
            if self.base.contains(b):
                out.extend(L.join(b, h) for h in itertools.product(*hr))
            elif self.fill != BASE_FILL:
                top = _as_height(self.u(b), self.k2)
                if self.k2 == 1:
                    out.extend(L.join(b, (y,)) for y in range(hr[0].start, min(hr[0].stop, top[0])))
                elif self.fill == BOX_FILL:
                    cut = [range(r.start, min(r.stop, t)) for r, t in zip(hr, top)]
                    out.extend(L.join(b, h) for h in itertools.product(*cut))
                else:
                    out.extend(L.join(b, h) for h in itertools.product(*hr) if h < top)
        return out


@dataclass(frozen=True, eq=False)
class Thm511Set(SymbolicSet):
    """Largest set allowed over a base B once a coset ``g2 + G2'`` is kept free.

    Off B a column holds every height below ``u(x)`` (dictionary order) plus
    every height outside ``g2 + G2'``.
    """

    base: SymbolicSet
    u: IntFunction
    sub: SublatticeSpec
    g2: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "g2", tuple(self.g2))
        if self.sub.ambient.rank != self.u.dim or self.sub.index is None:
            raise GroupError("G2' must be a finite-index sublattice of the height lattice")

    @property
    def k2(self) -> int:
        return self.u.dim

    @property
    def layout(self) -> ColumnLayout:
        return _layout(self.base, self.k2)

    @property
    def group(self) -> GroupSpec:
        return self.layout.ambient

    def in_free_coset(self, h: Sequence[int]) -> bool:
        return self.sub.contains([a - b for a, b in zip(h, self.g2)])

    def contains(self, p) -> bool:
        L = self.layout
        b = L.base(p)
        if self.base.contains(b):
            return True
        h = L.height(p)
        if h < _as_height(self.u(b), self.k2):
            return True
        return not self.in_free_coset(h)


@dataclass(frozen=True, eq=False)
class ColumnProgression(SymbolicSet):
    """Union over x in ``domain`` of ``{x} x (m_1(x) Z x ... x m_k2(x) Z)``."""

    domain: SymbolicSet
    modulus: IntFunction

    @property
    def k2(self) -> int:
        return self.modulus.dim

    @property
    def layout(self) -> ColumnLayout:
        return _layout(self.domain, self.k2)

    @property
    def group(self) -> GroupSpec:
        return self.layout.ambient

    def contains(self, p) -> bool:
        L = self.layout
        b = L.base(p)
        if not self.domain.contains(b):
            return False
        mods = _as_height(self.modulus(b), self.k2)
        return all(h % m == 0 for h, m in zip(L.height(p), mods))


@dataclass(frozen=True, eq=False)
class Graph(SymbolicSet):
    """``{(x, v(x)) : x in M}``.  ``bound`` optionally carries the moderation
    bound that makes windowed minimality checks exact."""

    M: SymbolicSet
    v: IntFunction
    bound: object = field(default=None, compare=False)
    moderates: object = field(default=None, compare=False)

    @property
    def k2(self) -> int:
        return self.v.dim

    @property
    def layout(self) -> ColumnLayout:
        return _layout(self.M, self.k2)

    @property
    def group(self) -> GroupSpec:
        return self.layout.ambient

    def point(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.layout.join(x, _as_height(self.v(tuple(x)), self.k2))

    def contains(self, p) -> bool:
        L = self.layout
        x = L.base(p)
        if not self.M.contains(x):
            return False
        return L.height(p) == _as_height(self.v(x), self.k2)

    def enumerate(self, window: Window) -> list[tuple[int, ...]]:
        L = self.layout
        out = []
        for x in self.M.enumerate(L.base_window(window)):
            p = self.point(x)
            if p in window:
                out.append(p)
        return out

    @property
    def is_finite(self) -> bool:
        return self.M.is_finite


# --------------------------------------------------------------------------
# combinators


@dataclass(frozen=True, eq=False)
class Translate(SymbolicSet):
    inner: SymbolicSet
    g: tuple[int, ...]

    @property
    def group(self) -> GroupSpec:
        return self.inner.group

    def contains(self, p) -> bool:
        return self.inner.contains(self.group.sub(p, self.g))

    def enumerate(self, window: Window) -> list[tuple[int, ...]]:
        G = self.group
        r = G.rank
        shifted = Window(tuple((lo - x, hi - x) for (lo, hi), x in zip(window.bounds, self.g[:r])),
                         window.torsion)
        return sorted(G.add(p, self.g) for p in self.inner.enumerate(shifted))

    @property
    def is_finite(self) -> bool:
        return self.inner.is_finite


@dataclass(frozen=True, eq=False)
class Union(SymbolicSet):
    parts: tuple[SymbolicSet, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("union of no sets; use an empty Finite instead")
        object.__setattr__(self, "parts", tuple(self.parts))
        groups = {p.group for p in self.parts}
        if len(groups) != 1:
            raise GroupError("union parts live in different groups")

    @property
    def group(self) -> GroupSpec:
        return self.parts[0].group

    def contains(self, p) -> bool:
        return any(s.contains(p) for s in self.parts)

    def enumerate(self, window: Window) -> list[tuple[int, ...]]:
        seen = set()
        for s in self.parts:
            seen.update(s.enumerate(window))
        return sorted(seen)

    @property
    def is_finite(self) -> bool:
        return all(s.is_finite for s in self.parts)


@dataclass(frozen=True, eq=False)
class BasisImage(SymbolicSet):
    """Pushforward of ``inner`` under a unimodular change of the free coordinates."""

    inner: SymbolicSet
    U: UnimodularBasis
    U_inv: UnimodularBasis = field(init=False, repr=False)

    def __post_init__(self):
        if self.U.size != self.inner.group.rank:
            raise GroupError("basis size does not match the free rank")
        object.__setattr__(self, "U_inv", self.U.inverse())

    @property
    def group(self) -> GroupSpec:
        return self.inner.group

    def pull(self, p) -> tuple[int, ...]:
        r = self.group.rank
        return self.U_inv.apply(p[:r]) + tuple(p[r:])

    def push(self, q) -> tuple[int, ...]:
        r = self.group.rank
        return self.U.apply(q[:r]) + tuple(q[r:])

    def contains(self, p) -> bool:
        return self.inner.contains(self.pull(p))

    @property
    def is_finite(self) -> bool:
        return self.inner.is_finite


class BoundedSpiked(BasisImage):
    """A ``(u, phi)``-bounded spiked set in Z^n given by subgroup bases.

    ``g1_basis`` spans G1 and ``g2_basis`` spans G2, together a basis of Z^n.
    ``phi`` is a unimodular matrix on G2-coordinates; ``u`` returns
    G2-coordinates and is compared after applying ``phi``.
    """

    def __init__(self, base: SymbolicSet, u: IntFunction, g1_basis, g2_basis,
                 phi: UnimodularBasis | None = None, fill: str = MAX_FILL):
        k2 = len(g2_basis)
        phi = phi or UnimodularBasis.identity(k2)
        if phi.size != k2:
            raise GroupError("phi must act on the G2 coordinates")
        from .functions import MemoFunction

        phi_u = MemoFunction(u.arity, lambda x: _phi_apply(phi, u(x), k2), dim=k2, name="phi∘u")
        inner = Spiked(base, phi_u, fill)
        # point = B1 t + B2 h with h = phi^{-1}(height coordinate)
        phi_inv = phi.inverse()
        cols = [tuple(c) for c in g1_basis]
        n = len(cols) + k2
        for j in range(k2):
            col = [0] * n
            for i in range(k2):
                # column j of B2 @ phi^{-1}
                for r in range(n):
                    col[r] += g2_basis[i][r] * phi_inv.matrix[i][j]
            cols.append(tuple(col))
        super().__init__(inner, UnimodularBasis.from_columns(*cols))
        object.__setattr__(self, "u_raw", u)
        object.__setattr__(self, "phi", phi)
        object.__setattr__(self, "g1_basis", tuple(map(tuple, g1_basis)))
        object.__setattr__(self, "g2_basis", tuple(map(tuple, g2_basis)))


def _phi_apply(phi: UnimodularBasis, v, k2: int):
    h = phi.apply(_as_height(v, k2))
    return h[0] if k2 == 1 else h


def window_points(w: Window):
    return w.points()


# --------------------------------------------------------------------------
# operations


def translate(S: SymbolicSet, g) -> SymbolicSet:
    g = as_coords(g, S.group)
    if not any(g):
        return S
    if isinstance(S, Finite):
        return Finite(S.group, (S.group.add(e, g) for e in S.elements))
    if isinstance(S, Translate):
        return translate(S.inner, S.group.add(S.g, g))
    return Translate(S, g)


def basis_image(S: SymbolicSet, U: UnimodularBasis) -> SymbolicSet:
    if not isinstance(U, UnimodularBasis):
        U = UnimodularBasis(U)
    if isinstance(S, Finite):
        r = S.group.rank
        return Finite(S.group, (U.apply(e[:r]) + e[r:] for e in S.elements))
    return BasisImage(S, U)


def union(*parts: SymbolicSet) -> SymbolicSet:
    flat: list[SymbolicSet] = []
    for p in parts:
        flat.extend(p.parts if isinstance(p, Union) else (p,))
    return flat[0] if len(flat) == 1 else Union(tuple(flat))


def empty(group: GroupSpec) -> Finite:
    return Finite(group, ())


def point(group: GroupSpec, *coords: int) -> tuple[int, ...]:
    return group.reduce(coords)


def element(g: GroupElement | Sequence[int]) -> tuple[int, ...]:
    return as_coords(g)
