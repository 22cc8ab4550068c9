"""Builders for minimal complements and for rotated truncated sets.

The minimal complement M of the base is always a caller input: the
constructions here turn "B has minimal complement M" into a complement of
the spiked set, they never search for M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import QuadraticNumber, floor_quadratic, sign_quadratic, sqrt_power
from .functions import IntFunction, IntPolynomial, MemoFunction, RationalPolyFloor
from .group import (
    FiniteSubgroup,
    GroupError,
    GroupSpec,
    SublatticeSpec,
    UnimodularBasis,
    Window,
    free_group,
    rational_rotation_basis,
)
from .moderation import ModerationBound, pair_bound, subgroup_valued_moderation
from .sets import (
    ABOVE,
    BELOW,
    MAX_FILL,
    BasisImage,
    Finite,
    FullGroup,
    Graph,
    Lattice,
    Spiked,
    SymbolicSet,
    Thm511Set,
    TruncatedColumns,
    translate,
    union,
)


@dataclass
class MinCompRecipe:
    tag: str
    inputs: dict
    result: SymbolicSet
    notes: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)


# --------------------------------------------------------------------------
# graphs of moderations


def graph_min_complement(B: SymbolicSet, M: SymbolicSet, v: IntFunction, u: IntFunction | None = None,
                         bound: ModerationBound | None = None) -> MinCompRecipe:
    """``{(x, v(x)) : x in M}``; attaches a moderation bound when one is known or derivable."""
    if v.arity != M.group.dim and v.arity != M.group.rank:
        raise GroupError("v must take base coordinates")
    notes = []
    if bound is None and u is not None:
        try:
            bound = pair_bound(u, v)
            notes.append("moderation bound computed exactly from the polynomial pair")
        except (TypeError, ValueError) as exc:
            notes.append(f"no bound attached: {exc}")
    G = Graph(M, v, bound=bound, moderates=u)
    return MinCompRecipe("graph", {"B": B, "M": M, "v": v, "u": u}, G, notes)


# --------------------------------------------------------------------------
# subgroups and cosets


def subgroup_restrict(M: SymbolicSet, H, scan: Window | None = None) -> SymbolicSet:
    """``M`` intersected with the subgroup ``H``.

    Supported: finite M, the full group, and graphs over a finite scan
    window of their base.  Anything else is refused with a diagnostic.
    """
    G = M.group
    if isinstance(M, Finite):
        return Finite(G, (m for m in M.elements if H.contains(m)))
    if isinstance(M, FullGroup):
        if isinstance(H, FiniteSubgroup):
            return Finite(G, H.elements)
        if isinstance(H, SublatticeSpec):
            return Lattice(G, H)
    if isinstance(M, Graph) and scan is not None:
        pts = (M.point(x) for x in M.M.enumerate(scan))
        return Finite(G, (p for p in pts if H.contains(p)))
    raise GroupError(
        f"cannot represent {type(M).__name__} intersected with {type(H).__name__}"
        + ("" if scan is not None else "; pass a scan window for graphs")
    )


def coset_lift(M: SymbolicSet, H, reps: Sequence[Sequence[int]], G: GroupSpec | None = None) -> SymbolicSet:
    """``union over g in reps of (M + g)``; reps must lie in distinct cosets of H."""
    G = G or M.group
    reps = [G.reduce(tuple(r)) for r in reps]
    for i, r in enumerate(reps):
        for s in reps[:i]:
            if H.contains(G.sub(r, s)):
                raise GroupError(f"representatives {list(s)} and {list(r)} lie in the same coset")
    parts = [translate(M, r) for r in reps]
    if all(isinstance(p, Finite) for p in parts):
        return Finite(G, (e for p in parts for e in p.elements))
    return union(*parts)


# --------------------------------------------------------------------------
# rotated truncated sets


@dataclass(frozen=True)
class Rotation:
    """Coordinates adapted to the direction (a, b).

    Every point is ``t * (p, q) + m * (a, b)`` with ``b p - a q = -1``.  The
    rotated frame has ``r = (b x - a y)/s = -t/s`` and
    ``h = (a x + b y)/s``, ``s = sqrt(a^2 + b^2)``, so ``h > f(r)`` exactly
    when ``m > alpha_t`` with ``alpha_t = f(-t/s)/s - (p a + q b) t / s^2``.
    """

    a: int
    b: int
    p: int
    q: int

    @classmethod
    def of(cls, a: int, b: int) -> "Rotation":
        _, _, _, (c, d) = rational_rotation_basis(b, a)
        return cls(a, b, d, c)

    @property
    def N(self) -> int:
        return self.a * self.a + self.b * self.b

    def basis(self, flip: bool = False) -> UnimodularBasis:
        sgn = -1 if flip else 1
        return UnimodularBasis.from_columns((self.p, self.q), (sgn * self.a, sgn * self.b))

    def alpha(self, f: RationalPolyFloor, t: int) -> QuadraticNumber:
        N = self.N
        total = QuadraticNumber(0, 0, N)
        if t == 0 and f.has_pole_at((0,)):
            total = total + f.real_value((0,)) * sqrt_power(-1, N)
        else:
            for (e,), coef in f.terms:
                total = total + coef * Fraction(-t) ** e * sqrt_power(-e - 1, N)
        return total - Fraction((self.p * self.a + self.q * self.b) * t, N)

    def floor_alpha(self, f: RationalPolyFloor, t: int) -> int:
        al = self.alpha(f, t)
        try:
            return floor_quadratic(al.rat, al.irr, al.radicand)
        except ArithmeticError as exc:
            raise ArithmeticError(f"could not resolve floor(alpha_t) at t={t}: {exc}") from exc

    def ceil_alpha(self, f: RationalPolyFloor, t: int) -> int:
        al = self.alpha(f, t)
        try:
            return -floor_quadratic(-al.rat, -al.irr, al.radicand)
        except ArithmeticError as exc:
            raise ArithmeticError(f"could not resolve ceil(alpha_t) at t={t}: {exc}") from exc


def _check_f(f: RationalPolyFloor):
    if not isinstance(f, RationalPolyFloor) or f.arity != 1:
        raise TypeError("f must be a univariate RationalPolyFloor")


def rotated_truncated_sets(f: RationalPolyFloor, a: int, b: int, side: str,
                           include_axis: bool = False) -> SymbolicSet:
    """Points above (``h > f(r)``) or below (``h < f(r)``) the rotated graph.

    ``(a, b)`` is the image of the vertical direction under the rotation, so
    ``tan(theta) = a / b``.  With ``include_axis`` the rotated vertical
    axis ``{b x = a y}`` is added and the result is a spiked set (full
    column at ``t = 0``) in rotated coordinates.  For ``(a, b) = (0, 1)``
    without the axis the plain truncated-column set is returned.
    """
    _check_f(f)
    if side not in (ABOVE, BELOW):
        raise ValueError(f"side must be {ABOVE!r} or {BELOW!r}")
    if (a, b) == (0, 1) and not include_axis:
        u = f.with_mode("floor" if side == ABOVE else "floor_ceil")
        return TruncatedColumns(FullGroup(free_group(1)), u, side)
    rot = Rotation.of(a, b)
    Z1 = free_group(1)
    if side == BELOW:
        u = MemoFunction(1, lambda x: rot.ceil_alpha(f, x[0]), name="ceil(alpha_t)",
                         recipe=_rot_recipe(f, a, b, "ceil"))
        flip = False
    else:
        u_raw = lambda x: rot.floor_alpha(f, x[0])
        if include_axis:
            u = MemoFunction(1, lambda x: -u_raw(x), name="-floor(alpha_t)",
                             recipe=_rot_recipe(f, a, b, "neg_floor"))
            flip = True
        else:
            u = MemoFunction(1, u_raw, name="floor(alpha_t)", recipe=_rot_recipe(f, a, b, "floor"))
            flip = False
    if include_axis:
        inner = Spiked(Finite(Z1, [(0,)]), u, MAX_FILL)
    else:
        inner = TruncatedColumns(FullGroup(Z1), u, side)
    return BasisImage(inner, rot.basis(flip))


def _rot_recipe(f, a, b, mode):
    return {"rotated_u": {"f": f.to_json(), "a": a, "b": b, "mode": mode}}


@dataclass(frozen=True, eq=False)
class RotatedDirect(SymbolicSet):
    """The same sets tested straight from ``h`` versus ``f(r)`` in Q(sqrt(N)).

    Independent of the alpha/floor pipeline: signs are decided exactly by
    squaring.
    """

    f: RationalPolyFloor
    a: int
    b: int
    side: str
    include_axis: bool = False

    @property
    def group(self) -> GroupSpec:
        return free_group(2)

    def contains(self, p) -> bool:
        x, y = p
        a, b = self.a, self.b
        N = a * a + b * b
        k = b * x - a * y
        if self.include_axis and k == 0:
            return True
        if k == 0 and self.f.has_pole_at((0,)):
            fr = QuadraticNumber(self.f.real_value((0,)), 0, N)
        else:
            fr = QuadraticNumber(0, 0, N)
            for (e,), coef in self.f.terms:
                fr = fr + coef * Fraction(k) ** e * sqrt_power(-e, N)
        h = (a * x + b * y) * sqrt_power(-1, N)
        d = h - fr
        s = sign_quadratic(d.rat, d.irr, N)
        return s > 0 if self.side == ABOVE else s < 0


# --------------------------------------------------------------------------
# the maximal set with a free coset


def thm511_max_set(B: SymbolicSet, u: IntFunction, sub: SublatticeSpec, g2: Sequence[int],
                   M: SymbolicSet, v: IntFunction, bound: ModerationBound | None = None) -> MinCompRecipe:
    """The largest X allowed with the coset ``g2 + G2'`` kept free, and ``M_{v'}``.

    ``v`` is a moderation of u; ``v'`` pushes it into G2' and the graph of
    ``v'`` over M is returned as the complement, X in ``extra["X"]``.
    """
    notes = []
    g2 = tuple(g2)
    g2n = sub.reduce(g2)
    if g2n != g2:
        notes.append(f"g2 normalised from {list(g2)} to {list(g2n)}")
    if sub.index is None:
        raise GroupError("G2' must have finite index")
    X = Thm511Set(B, u, sub, g2n)
    if bound is None:
        try:
            bound = pair_bound(u, v)
        except (TypeError, ValueError) as exc:
            notes.append(f"no bound attached: {exc}")
    if bound is not None:
        vp, bp = subgroup_valued_moderation(v, sub, bound)
    else:
        vp, bp = subgroup_valued_moderation(v, sub), None
    if sub.index == 1:
        notes.append("G2' = G2: the free-coset part is empty")
    graph = Graph(M, vp, bound=bp, moderates=u)
    return MinCompRecipe("thm511", {"B": B, "u": u, "sub": sub, "g2": g2n, "M": M, "v": v},
                         graph, notes, {"X": X})
