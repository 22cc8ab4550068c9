"""Named sets: every worked example as a ready-made SymbolicSet.

IDs follow the numbering of the source results (``cor4.8-W``) with a few
descriptive aliases (``parabola-below``).  ``catalog_pair`` bundles a set W
with its complement and whatever envelope or base window the minimality
check needs.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from .constructions import RotatedDirect, rotated_truncated_sets
from .functions import (
    IntPolynomial,
    RationalPolyFloor,
    VectorFunction,
    absolute_exponential,
    odd_prime_sequence,
)
from .group import SublatticeSpec, UnimodularBasis, Window, free_group
from .moderation import ball_moderation, pair_bound
from .sets import (
    ABOVE,
    BELOW,
    BOX_FILL,
    MAX_FILL,
    BasisImage,
    CoFinite,
    ColumnProgression,
    Finite,
    FullGroup,
    Graph,
    RayComplement,
    Spiked,
    SymbolicSet,
    Thm511Set,
    TruncatedColumns,
    Union,
)


class CatalogError(KeyError):
    pass


Z1, Z2, Z3, Z4 = (free_group(n) for n in (1, 2, 3, 4))

T2 = IntPolynomial.univariate([0, 0, 1])              # t^2
SQ2 = IntPolynomial.power_sum(2, 2)                   # s^2 + t^2


def _parabola_f() -> RationalPolyFloor:
    return RationalPolyFloor.univariate({2: 1})


def _inverse_square_f(at_zero: int = 3) -> RationalPolyFloor:
    return RationalPolyFloor.univariate({-2: 1}, overrides={0: at_zero})


def _graph(M, v, u) -> Graph:
    return Graph(M, v, bound=pair_bound(u, v), moderates=u)


# -- builders ---------------------------------------------------------------


def _lemma23_w():
    return RayComplement(Z2, (0, 0), axis=1, start=1)


def _lemma23_c():
    return Finite(Z2, [(0, 0), (1, 0)])


def _prop31_w():
    return TruncatedColumns(FullGroup(Z1), IntPolynomial.constant(1, 0), BELOW)


def _cor32(side):
    return TruncatedColumns(FullGroup(Z1), T2, side)


def _cor33(side):
    f = _inverse_square_f()
    return TruncatedColumns(FullGroup(Z1), f.with_mode("floor" if side == ABOVE else "floor_ceil"), side)


def _side_parabola(side):
    swap = UnimodularBasis.of((0, 1), (1, 0))
    return BasisImage(TruncatedColumns(FullGroup(Z1), T2, side), swap)


def _cor35(side):
    return rotated_truncated_sets(_parabola_f(), 1, 1, side)


def _cor35_direct(side):
    return RotatedDirect(_parabola_f(), 1, 1, side)


def _cor36(side):
    return TruncatedColumns(FullGroup(Z2), SQ2, side)


def _cor48_w():
    return Spiked(Finite(Z1, [(0,)]), T2, MAX_FILL)


def _cor48_m():
    return _graph(FullGroup(Z1), IntPolynomial.univariate([0, 0, -2]), T2)


def _cor49_w():
    return Spiked(Finite(Z2, [(0, 0)]), SQ2, MAX_FILL)


def _cor49_m():
    return _graph(FullGroup(Z2), IntPolynomial.power_sum(2, 2, -2), SQ2)


def _cor57_w(side):
    return rotated_truncated_sets(_parabola_f(), 1, 1, side, include_axis=True)


def _cor57_m(side):
    W = _cor57_w(side)
    v, bound = ball_moderation(W.inner.u)
    return BasisImage(Graph(FullGroup(Z1), v, bound=bound, moderates=W.inner.u), W.U)


def _ex59_u():
    return VectorFunction((SQ2, IntPolynomial.power_sum(2, 3)))


def _ex59_w():
    return Spiked(Finite(Z2, [(0, 0)]), _ex59_u(), BOX_FILL)


def _ex59_m():
    v = VectorFunction((IntPolynomial.power_sum(2, 2, -2), IntPolynomial.power_sum(2, 4, -1)))
    return _graph(FullGroup(Z2), v, _ex59_u())


def _ex61_w():
    return Union((_cor48_w(), ColumnProgression(FullGroup(Z1), absolute_exponential(3))))


def _ex61_m():
    return _graph(FullGroup(Z1), IntPolynomial.univariate([0, 0, -3]), T2)


def _ex61_envelope():
    return Thm511Set(Finite(Z1, [(0,)]), T2, SublatticeSpec.of((3,)), (1,))


def _ex62_w():
    cols = ColumnProgression(CoFinite(Z1, [(0,)]), odd_prime_sequence())
    return Union((_cor48_w(), cols))


def _ex63_u():
    return VectorFunction((T2, IntPolynomial.univariate([0, 0, 0, 1])))


def _ex63_w():
    spiked = Spiked(Finite(Z1, [(0,)]), _ex63_u(), BOX_FILL)
    mod = VectorFunction((absolute_exponential(3), absolute_exponential(4)))
    return Union((spiked, ColumnProgression(FullGroup(Z1), mod)))


def _ex63_m():
    v = VectorFunction((IntPolynomial.univariate([0, 0, -3]), IntPolynomial.univariate([0, 0, 0, 0, -4])))
    return _graph(FullGroup(Z1), v, _ex63_u())


def _ex63_envelope():
    return Thm511Set(Finite(Z1, [(0,)]), _ex63_u(), SublatticeSpec.of((3, 0), (0, 4)), (1, 0))


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    title: str
    build: Callable[[], SymbolicSet]


_ENTRIES = [
    CatalogEntry("lemma2.3-W", "plane minus the upward ray {(0,n) : n >= 1}", _lemma23_w),
    CatalogEntry("lemma2.3-C", "two points with distinct x: {(0,0), (1,0)}", _lemma23_c),
    CatalogEntry("prop3.1-W", "lower half-plane y < 0 as truncated columns", _prop31_w),
    CatalogEntry("cor3.2-W+", "points above the parabola y = x^2", lambda: _cor32(ABOVE)),
    CatalogEntry("cor3.2-W-", "points below the parabola y = x^2", lambda: _cor32(BELOW)),
    CatalogEntry("cor3.3-W+", "above y = x^-2 (value 3 at x = 0)", lambda: _cor33(ABOVE)),
    CatalogEntry("cor3.3-W-", "below y = x^-2 (value 3 at x = 0)", lambda: _cor33(BELOW)),
    CatalogEntry("side-parabola-W+", "right of the parabola x = y^2", lambda: _side_parabola(ABOVE)),
    CatalogEntry("side-parabola-W-", "left of the parabola x = y^2", lambda: _side_parabola(BELOW)),
    CatalogEntry("cor3.5-W+", "above the parabola rotated clockwise by 45 degrees", lambda: _cor35(ABOVE)),
    CatalogEntry("cor3.5-W-", "below the parabola rotated clockwise by 45 degrees", lambda: _cor35(BELOW)),
    CatalogEntry("cor3.5-W+-direct", "same set, decided directly in Q(sqrt 2)", lambda: _cor35_direct(ABOVE)),
    CatalogEntry("cor3.5-W--direct", "same set, decided directly in Q(sqrt 2)", lambda: _cor35_direct(BELOW)),
    CatalogEntry("cor3.6-W+", "above the paraboloid z = x^2 + y^2", lambda: _cor36(ABOVE)),
    CatalogEntry("cor3.6-W-", "below the paraboloid z = x^2 + y^2", lambda: _cor36(BELOW)),
    CatalogEntry("cor4.8-W", "below y = x^2 plus the y-axis", _cor48_w),
    CatalogEntry("cor4.8-M", "graph {(t, -2t^2)}", _cor48_m),
    CatalogEntry("cor4.9-W", "below z = x^2 + y^2 plus the z-axis", _cor49_w),
    CatalogEntry("cor4.9-M", "graph {(s, t, -2(s^2 + t^2))}", _cor49_m),
    CatalogEntry("cor5.7-W+", "above the 45-degree rotated parabola plus its axis", lambda: _cor57_w(ABOVE)),
    CatalogEntry("cor5.7-W-", "below the 45-degree rotated parabola plus its axis", lambda: _cor57_w(BELOW)),
    CatalogEntry("cor5.7-M+", "graph of a ball moderation in rotated coordinates", lambda: _cor57_m(ABOVE)),
    CatalogEntry("cor5.7-M-", "graph of a ball moderation in rotated coordinates", lambda: _cor57_m(BELOW)),
    CatalogEntry("ex5.9-W", "z < x^2 + y^2 and w < x^3 + y^3, plus {(0,0)} x Z^2", _ex59_w),
    CatalogEntry("ex5.9-M", "graph {(s, t, -2(s^2+t^2), -(s^4+t^4))}", _ex59_m),
    CatalogEntry("ex6.1-W", "cor4.8-W plus the columns {(m, 3^|m| n)}", _ex61_w),
    CatalogEntry("ex6.1-M", "graph {(t, -3t^2)}", _ex61_m),
    CatalogEntry("ex6.1-envelope", "largest set with the coset 1 + 3Z kept free", _ex61_envelope),
    CatalogEntry("ex6.2-W", "cor4.8-W plus the columns {(m, p_|m| n)}, m != 0", _ex62_w),
    CatalogEntry("ex6.2-M", "graph {(t, -2t^2)}", _cor48_m),
    CatalogEntry("ex6.3-W", "y < x^2, z < x^3, plus {0} x Z^2 and {(i, 3^|i| j, 4^|i| k)}", _ex63_w),
    CatalogEntry("ex6.3-M", "graph {(t, -3t^2, -4t^4)}", _ex63_m),
    CatalogEntry("ex6.3-envelope", "largest set with the coset (1,0) + 3Z x 4Z kept free", _ex63_envelope),
]

CATALOG = {e.id: e for e in _ENTRIES}

ALIASES = {
    "ray-complement": "lemma2.3-W",
    "lower-half-plane": "prop3.1-W",
    "parabola-above": "cor3.2-W+",
    "parabola-below": "cor3.2-W-",
    "rotated-parabola-above": "cor3.5-W+",
    "rotated-parabola-below": "cor3.5-W-",
    "paraboloid-above": "cor3.6-W+",
    "paraboloid-below": "cor3.6-W-",
    "spiked-parabola": "cor4.8-W",
    "spiked-paraboloid": "cor4.9-W",
    "fig8-W": "cor5.7-W-",
    "fig8-M": "cor5.7-M-",
}


def resolve_id(catalog_id: str) -> str:
    cid = ALIASES.get(catalog_id, catalog_id)
    if cid not in CATALOG:
        raise CatalogError(f"unknown catalog id {catalog_id!r}")
    return cid


@lru_cache(maxsize=None)
def named_sets(catalog_id: str) -> SymbolicSet:
    return CATALOG[resolve_id(catalog_id)].build()


@dataclass(frozen=True)
class CatalogPair:
    W: str
    M: str
    envelope: str | None
    base_window: str


PAIRS = {
    "lemma2.3": CatalogPair("lemma2.3-W", "lemma2.3-C", None, ""),
    "cor4.8": CatalogPair("cor4.8-W", "cor4.8-M", None, "-15..15"),
    "cor4.9": CatalogPair("cor4.9-W", "cor4.9-M", None, "-5..5,-5..5"),
    "cor5.7+": CatalogPair("cor5.7-W+", "cor5.7-M+", None, "-10..10"),
    "cor5.7-": CatalogPair("cor5.7-W-", "cor5.7-M-", None, "-10..10"),
    "ex5.9": CatalogPair("ex5.9-W", "ex5.9-M", None, "-3..3,-3..3"),
    "ex6.1": CatalogPair("ex6.1-W", "ex6.1-M", "ex6.1-envelope", "-8..8"),
    "ex6.2": CatalogPair("ex6.2-W", "ex6.2-M", None, "-8..8"),
    "ex6.3": CatalogPair("ex6.3-W", "ex6.3-M", "ex6.3-envelope", "-5..5"),
}


def catalog_ids() -> list[str]:
    return [e.id for e in _ENTRIES]


def describe(catalog_id: str) -> str:
    return CATALOG[resolve_id(catalog_id)].title


def default_window(S: SymbolicSet, half: int = 10) -> Window:
    return Window.cube(S.group.rank, -half, half, S.group.torsion)
