"""Moderations: functions v with ``x -> u(x) + v(x0 - x)`` bounded above.

Three constructions are offered.  :func:`ball_moderation` works for any u
and is table backed; :func:`poly_moderation` returns a polynomial v for a
polynomial u; :func:`subgroup_valued_moderation` pushes the values of a
moderation into a finite-index sublattice.  :func:`pair_bound` computes the
exact supremum for separable polynomial pairs, which is how the hand-picked
moderations (``v = -2 t^2`` against ``u = t^2`` and friends) are certified.

For vector-valued u the order on values is the dictionary order and only
the first coordinate of a bound is ever consumed.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .functions import IntFunction, IntPolynomial, MemoFunction, VectorFunction, _tup
from .group import GroupError, SublatticeSpec, Window, coset_representatives

SCAN_LIMIT = 200_000


@dataclass(frozen=True, eq=False)
class ModerationBound:
    """``x0 -> m0(x0)``: an upper bound for the first coordinate of ``u(x) + v(x0 - x)``."""

    fn: Callable[[tuple[int, ...]], int]
    kind: str
    description: str
    recipe: dict | None = field(default=None, compare=False)

    def __call__(self, x0) -> int:
        return int(self.fn(_tup(x0)))

    def to_json(self) -> dict:
        if self.recipe is None:
            raise TypeError("this bound was built in code and has no JSON form")
        return self.recipe


@dataclass(frozen=True)
class BallSpec:
    """``{y : ||center - y||^2 < n}`` in Z^k."""

    center: tuple[int, ...]
    n: int

    def points(self) -> list[tuple[int, ...]]:
        if self.n < 1:
            return []
        r = math.isqrt(self.n - 1)
        out = []
        for off in itertools.product(range(-r, r + 1), repeat=len(self.center)):
            if sum(o * o for o in off) < self.n:
                out.append(tuple(c + o for c, o in zip(self.center, off)))
        return out


def sq_norm(x: Sequence[int]) -> int:
    return sum(a * a for a in x)


def _first(v) -> int:
    return v[0] if isinstance(v, tuple) else v


def _neg(v):
    return tuple(-a for a in v) if isinstance(v, tuple) else -v


def _first_component(f: IntFunction) -> IntFunction:
    if isinstance(f, VectorFunction):
        return f.components[0]
    return f


# --------------------------------------------------------------------------
# ball moderation


def ball_moderation(u: IntFunction) -> tuple[MemoFunction, ModerationBound]:
    """``v(x) = -max u(B(-x, ||x||^2 + 1))``, with its bound.

    For ``||x||^2 >= ||x0||^2`` the point ``x0 - x`` lies in the ball around
    ``-x``, so ``u(x0 - x) + v(x) <= 0``; the finitely many remaining x are
    scanned.  The bound is therefore exact-by-construction, not sampled.
    """
    k = u.arity

    def v_fn(x):
        ball = BallSpec(tuple(-a for a in x), sq_norm(x) + 1)
        return _neg(max(u(y) for y in ball.points()))

    u_json = _json_or_none(u)
    v = MemoFunction(k, v_fn, dim=u.dim, name="ball-moderation",
                     recipe=None if u_json is None else {"ball_moderation": u_json})

    def m0(x0):
        n0 = sq_norm(x0)
        best = 0
        if n0:
            for x in BallSpec((0,) * k, n0).points():
                s = _first(v(x)) + _first(u(tuple(a - b for a, b in zip(x0, x))))
                best = max(best, s)
        return best

    return v, ModerationBound(m0, "ball", "max(0, max over ||x||^2 < ||x0||^2 of v(x) + u(x0 - x))",
                              None if u_json is None else {"kind": "ball", "u": u_json})


def _json_or_none(f):
    try:
        return f.to_json()
    except TypeError:
        return None


# --------------------------------------------------------------------------
# exact suprema for separable polynomial pairs


def _poly_shift(q: dict[int, int], t0: int) -> dict[int, int]:
    """Coefficients in t of ``q(t0 - t)``."""
    out: dict[int, int] = {}
    for e, c in q.items():
        for j in range(e + 1):
            coef = c * math.comb(e, j) * t0 ** (e - j) * (-1) ** j
            out[j] = out.get(j, 0) + coef
    return out


def univariate_sup(coeffs: dict[int, int]) -> int:
    """Exact ``max_{t in Z} h(t)`` for an integer polynomial h.

    Raises ValueError when h is unbounded above.  Integer maximisers lie
    within distance 1 of a real critical point; those are located by a
    Cauchy root bound scan when the range is small, else by numeric roots
    padded by a safety margin.
    """
    h = {e: c for e, c in coeffs.items() if c}
    if not h:
        return 0
    deg = max(h)
    if deg == 0:
        return h[0]
    lead = h[deg]
    if deg % 2 == 1 or lead > 0:
        raise ValueError("polynomial is unbounded above on Z")

    def ev(t: int) -> int:
        return sum(c * t ** e for e, c in h.items())

    dh = {e - 1: e * c for e, c in h.items() if e}
    dd = max(dh)
    R = 1 + max((Fraction(abs(c), abs(dh[dd])) for e, c in dh.items() if e != dd), default=Fraction(0))
    R = math.ceil(R) + 1
    if 2 * R + 1 <= SCAN_LIMIT:
        return max(ev(t) for t in range(-R, R + 1))
    poly = [float(dh.get(e, 0)) for e in range(dd, -1, -1)]
    cands = {0}
    for r in np.roots(poly):
        if abs(r.imag) <= 1e-6 * max(1.0, abs(r.real)):
            centre = int(math.floor(r.real))
            margin = 3 + int(abs(r.real) * 1e-9)
            cands.update(range(centre - margin, centre + margin + 1))
    return max(ev(t) for t in cands)


def pair_bound(u: IntFunction, v: IntFunction) -> ModerationBound:
    """Exact ``sup_x first(u(x) + v(x0 - x))`` for separable polynomial pairs."""
    u1, v1 = _first_component(u), _first_component(v)
    if not (isinstance(u1, IntPolynomial) and isinstance(v1, IntPolynomial)):
        raise TypeError("pair_bound needs polynomial first components")
    su, sv = u1.separable_parts(), v1.separable_parts()
    if su is None or sv is None:
        raise ValueError("pair_bound needs separable polynomials (no mixed monomials)")
    (pu, cu), (pv, cv) = su, sv

    def m0(x0):
        total = cu + cv
        for i, t0 in enumerate(x0):
            h = dict(pu[i])
            for e, c in _poly_shift(pv[i], t0).items():
                h[e] = h.get(e, 0) + c
            total += univariate_sup(h)
        return total

    recipe = {"kind": "pair", "u": u.to_json(), "v": v.to_json()}
    return ModerationBound(m0, "exact", "sum over coordinates of exact univariate suprema", recipe)


# --------------------------------------------------------------------------
# polynomial moderation


def poly_moderation(u: IntPolynomial) -> tuple[IntPolynomial, ModerationBound]:
    """Polynomial moderation ``v = -2K (X1^E + ... + Xn^E)``, ``E = 2 n d``.

    K is the sum of absolute values of the non-constant coefficients (at
    least 1).  Every non-constant monomial of degree <= d satisfies
    ``|x^I| <= sum x_i^E`` on integers, so ``u <= c0 + K sum x_i^E`` and the
    bound per coordinate is ``sup_t K t^E - 2K (t0 - t)^E``.  The constant
    term c0 is carried by the bound rather than by v.
    """
    if isinstance(u, VectorFunction):
        parts = [poly_moderation(c) for c in u.components]
        return VectorFunction(tuple(p[0] for p in parts)), parts[0][1]
    n = u.arity
    c0 = u.constant_term
    nonconst = [(e, c) for e, c in u.terms if any(e)]
    if not nonconst:
        zero = IntPolynomial(n, ())
        return zero, ModerationBound(lambda x0: c0, "analytic", f"u is the constant {c0}",
                                     {"kind": "const", "value": c0})
    d = u.degree
    E = 2 * n * d
    K = max(1, sum(abs(c) for _, c in nonconst))
    v = IntPolynomial.power_sum(n, E, -2 * K)
    cache: dict[int, int] = {}

    def beta(t0: int) -> int:
        if t0 not in cache:
            h = {E: K}
            for e, c in _poly_shift({E: -2 * K}, t0).items():
                h[e] = h.get(e, 0) + c
            cache[t0] = univariate_sup(h)
        return cache[t0]

    def m0(x0):
        return c0 + sum(beta(t) for t in x0)

    recipe = {"kind": "poly", "u": u.to_json()}
    return v, ModerationBound(m0, "analytic", f"u <= {c0} + {K}*sum x_i^{E}; per-coordinate exact sup", recipe)


def remark_chain(x: Sequence[int], exps: Sequence[int]) -> tuple[Fraction, ...]:
    """The five quantities of the monomial chain, left to right.

    ``x^I, prod |x_i|^{i_j}, (prod |x_i|)^{|I|}, (1/n) sum |x_i|^{n|I|}, (1/n) sum x_i^{2n|I|}``.
    """
    n = len(x)
    s = sum(exps)
    mono = math.prod(a ** e for a, e in zip(x, exps))
    absmono = math.prod(abs(a) ** e for a, e in zip(x, exps))
    prodabs = math.prod(abs(a) for a in x) ** s
    mean1 = Fraction(sum(abs(a) ** (n * s) for a in x), n)
    mean2 = Fraction(sum(a ** (2 * n * s) for a in x), n)
    return (Fraction(mono), Fraction(absmono), Fraction(prodabs), mean1, mean2)


# --------------------------------------------------------------------------
# sublattice-valued moderation


def subgroup_valued_moderation(v: IntFunction, sub: SublatticeSpec,
                               bound: ModerationBound | None = None):
    """``v'(x) = v(x) - c_x`` with ``c_x`` the canonical representative of ``v(x) + G2'``.

    Returns ``v'`` alone, or ``(v', bound')`` when a bound for v is given;
    the new bound adds the largest first coordinate among representatives.
    """
    if sub.index is None:
        raise GroupError("G2' must have finite index")
    if sub.ambient.rank != v.dim:
        raise GroupError("sublattice rank does not match the codomain of v")
    k2 = v.dim

    def fn(x):
        val = v(x)
        h = _tup(val)
        rep = sub.reduce(h)
        out = tuple(a - b for a, b in zip(h, rep))
        return out[0] if k2 == 1 else out

    v_json = _json_or_none(v)
    vp = MemoFunction(v.arity, fn, dim=k2, name="subgroup-valued",
                      recipe=None if v_json is None else
                      {"subgroup_valued": v_json, "sub": [list(b) for b in sub.basis]})
    if bound is None:
        return vp
    shift = max(abs(r[0]) for r in coset_representatives(sub))
    b2 = ModerationBound(lambda x0: bound(x0) + shift, bound.kind,
                         f"{bound.description}, plus {shift} for the coset shift",
                         None if bound.recipe is None else
                         {"kind": "shifted", "inner": bound.recipe, "shift": shift})
    return vp, b2


# --------------------------------------------------------------------------
# empirical check


@dataclass
class ModerationRow:
    x0: tuple[int, ...]
    empirical_max: int
    argmax: tuple[int, ...]
    claimed: int | None
    growth: tuple[int, ...] = ()

    @property
    def violated(self) -> bool:
        return self.claimed is not None and self.empirical_max > self.claimed

    @property
    def unbounded(self) -> bool:
        g = self.growth
        return len(g) >= 3 and all(a < b for a, b in zip(g, g[1:]))


@dataclass
class ModerationReport:
    rows: list[ModerationRow]
    probe_window: Window

    @property
    def violations(self) -> list[ModerationRow]:
        return [r for r in self.rows if r.violated]

    @property
    def unbounded(self) -> list[ModerationRow]:
        return [r for r in self.rows if r.unbounded]

    @property
    def ok(self) -> bool:
        return not self.violations and not self.unbounded

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "probe_window": str(self.probe_window),
            "violations": [list(r.x0) for r in self.violations],
            "unbounded_at": [list(r.x0) for r in self.unbounded],
            "rows": [
                {"x0": list(r.x0), "max": r.empirical_max, "argmax": list(r.argmax),
                 "claimed": r.claimed, "growth": list(r.growth)}
                for r in self.rows
            ],
        }


def _grid(window: Window) -> list[np.ndarray]:
    axes = [np.arange(lo, hi + 1, dtype=np.int64) for lo, hi in window.bounds]
    mesh = np.meshgrid(*axes, indexing="ij")
    return [m.ravel() for m in mesh]


def _box_boundary(window: Window) -> list[np.ndarray]:
    coords = _grid(window)
    on = np.zeros(coords[0].shape, dtype=bool)
    for c, (lo, hi) in zip(coords, window.bounds):
        on |= (c == lo) | (c == hi)
    return [c[on] for c in coords]


def _eval_sum(u1, v1, x0, coords: list[np.ndarray]) -> np.ndarray:
    if isinstance(u1, IntPolynomial) and isinstance(v1, IntPolynomial):
        shifted = [np.int64(a) - c for a, c in zip(x0, coords)]
        return u1.evaluate_array(coords) + v1.evaluate_array(shifted)
    pts = list(zip(*(c.tolist() for c in coords)))
    return np.array([_first(u1(p)) + _first(v1(tuple(a - b for a, b in zip(x0, p)))) for p in pts],
                    dtype=object)


def check_moderation(u: IntFunction, v: IntFunction, x0_window: Window, probe_window: Window,
                     bound: ModerationBound | None = None, growth_scales: int = 3) -> ModerationReport:
    """Empirical ``max_x first(u(x) + v(x0 - x))`` over the probe window for each x0.

    Each row also records the maxima on the boundaries of the probe window
    scaled by 2, 4, ...; a strictly increasing sequence there is reported as
    unbounded growth.
    """
    u1, v1 = _first_component(u), _first_component(v)
    coords = _grid(probe_window)
    rings = []
    for s in range(growth_scales + 1):
        f = 2 ** s
        w = Window(tuple((lo * f, hi * f) for lo, hi in probe_window.bounds))
        rings.append(_box_boundary(w))
    rows = []
    for x0 in x0_window.points():
        vals = _eval_sum(u1, v1, x0, coords)
        i = int(np.argmax(vals))
        emp = int(vals[i])
        arg = tuple(int(c[i]) for c in coords)
        growth = tuple(int(np.max(_eval_sum(u1, v1, x0, r))) for r in rings)
        claimed = bound(x0) if bound is not None else None
        rows.append(ModerationRow(tuple(x0), emp, arg, claimed, growth))
    return ModerationReport(rows, probe_window)


def translated_pair(u: IntFunction, v: IntFunction, g: Sequence[int]):
    """``(x -> u(x + g), x -> v(x - g))``; the second moderates the first with the same bound."""
    from .functions import Shifted

    g = tuple(g)
    return Shifted(u, g), Shifted(v, tuple(-a for a in g))
