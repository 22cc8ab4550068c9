"""Windowed sumsets, complement checks and minimality witnesses.

Verification here is a semi-decision procedure.  A recorded witness is
always a proof of coverage.  "Not covered" is only claimed when the search
was exhaustive: finite complements, or column-structured sets where a
moderation bound limits which elements can reach a point.  Everything else
comes back as unverified with a reason.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from .group import GroupSpec, SublatticeSpec, Window, linf_shell
from .sets import (
    BasisImage,
    Finite,
    FullGroup,
    Graph,
    Spiked,
    SymbolicSet,
    Thm511Set,
    Translate,
    TruncatedColumns,
    Union,
    BELOW,
)

COVERED = "covered"
NOT_COVERED = "not_covered"
UNVERIFIED = "unverified"
MINIMAL = "minimal"

DEFAULT_SEARCH = 16
DEFAULT_WITNESS_BOUND = 64


@dataclass(frozen=True)
class SearchRadius:
    """How far from a point complement elements are searched.

    A certified radius carries the moderation bound it came from: points of
    the column ``x0`` whose first height coordinate is at least
    ``min_height`` can only be covered through the listed ``candidates``.
    """

    radius: tuple[int, ...]
    certified: bool
    justification: str
    min_height: int | None = None
    candidates: tuple[tuple[int, ...], ...] | None = None

    @classmethod
    def heuristic(cls, r: int, dim: int) -> "SearchRadius":
        return cls((r,) * dim, False, f"user-supplied radius {r}")

    def to_json(self) -> dict:
        out = {"radius": list(self.radius), "certified": self.certified,
               "justification": self.justification}
        if self.min_height is not None:
            out["min_height"] = self.min_height
        if self.candidates is not None:
            out["candidates"] = [list(c) for c in self.candidates]
        return out


def _radius_value(radius, dim: int) -> int:
    if isinstance(radius, SearchRadius):
        return max(radius.radius, default=0)
    if isinstance(radius, int):
        return radius
    return DEFAULT_SEARCH


# --------------------------------------------------------------------------
# certificates


@dataclass
class CoverageCertificate:
    window: Window
    status: str
    point: tuple[int, ...] | None = None
    reason: str = ""
    witnesses: dict = field(default_factory=dict)

    @property
    def covered(self) -> bool:
        return self.status == COVERED

    def replay(self, W: SymbolicSet, C: SymbolicSet | None = None) -> bool:
        """Re-check every stored witness through plain membership."""
        G = W.group
        for p, c in self.witnesses.items():
            if not W.contains(G.sub(p, c)):
                return False
            if C is not None and not C.contains(c):
                return False
        if self.status == COVERED:
            return len(self.witnesses) == self.window.size
        return True

    def to_json(self, with_witnesses: bool = False) -> dict:
        out = {"window": str(self.window), "status": self.status, "points": self.window.size,
               "witnessed": len(self.witnesses)}
        if self.point is not None:
            out["point"] = list(self.point)
        if self.reason:
            out["reason"] = self.reason
        if with_witnesses:
            out["witnesses"] = [[list(p), list(c)] for p, c in sorted(self.witnesses.items())]
        return out


@dataclass
class MinimalityEntry:
    c: tuple[int, ...]
    x0: tuple[int, ...] | None
    radius: SearchRadius | None
    reason: str = ""

    @property
    def found(self) -> bool:
        return self.x0 is not None


@dataclass
class MinimalityCertificate:
    entries: list[MinimalityEntry]
    reason: str = ""

    @property
    def status(self) -> str:
        if self.entries and all(e.found for e in self.entries):
            return MINIMAL
        return UNVERIFIED

    @property
    def witnesses(self) -> dict:
        return {e.c: e.x0 for e in self.entries if e.found}

    def missing(self) -> list[tuple[int, ...]]:
        return [e.c for e in self.entries if not e.found]

    def to_json(self) -> dict:
        out = {"status": self.status, "tested": len(self.entries),
               "found": sum(e.found for e in self.entries)}
        if self.reason:
            out["reason"] = self.reason
        out["entries"] = [
            {"c": list(e.c), "x0": list(e.x0) if e.x0 else None, "reason": e.reason,
             **({"radius": e.radius.to_json()} if e.radius else {})}
            for e in self.entries
        ]
        return out


# --------------------------------------------------------------------------
# structural helpers


def column_envelope(W: SymbolicSet):
    """The spiked description behind W when it has one: (Spiked or Thm511Set, U or None)."""
    if isinstance(W, (Spiked, Thm511Set)):
        return W, None
    if isinstance(W, BasisImage) and isinstance(W.inner, (Spiked, Thm511Set)):
        return W.inner, W.U
    return None, None


def _same_basis(a: BasisImage, b: BasisImage) -> bool:
    return a.U.matrix == b.U.matrix


_member_cache: dict[int, tuple] = {}


def some_member(W: SymbolicSet, limit: int = DEFAULT_WITNESS_BOUND) -> tuple[int, ...] | None:
    key = id(W)
    hit = _member_cache.get(key)
    if hit is not None and hit[0] is W:
        return hit[1]
    G = W.group
    found = None
    if isinstance(W, Finite):
        found = min(W.elements) if W.elements else None
    else:
        for r in range(limit + 1):
            for f in linf_shell((0,) * G.rank, r):
                for t in itertools.product(*(range(n) for n in G.torsion)):
                    p = tuple(f) + t
                    if W.contains(p):
                        found = p
                        break
                if found is not None:
                    break
            if found is not None:
                break
    _member_cache[key] = (W, found)
    return found


def _shell_points(G: GroupSpec, center: Sequence[int], r: int):
    if G.rank == 0 and r > 0:
        return
    tors = list(itertools.product(*(range(n) for n in G.torsion)))
    for f in linf_shell(tuple(center[: G.rank]), r):
        for t in tors:
            yield tuple(f) + t


def find_cover(W: SymbolicSet, C: SymbolicSet, p: tuple[int, ...], radius="certified"):
    """Return ``(c, exhaustive)``: some ``c in C`` with ``p - c in W`` or None.

    ``exhaustive`` is True when a None answer is a proof that p is uncovered.
    """
    G = W.group
    if isinstance(C, Finite):
        for c in sorted(C.elements):
            if W.contains(G.sub(p, c)):
                return c, True
        return None, True
    if isinstance(C, FullGroup):
        w = some_member(W)
        if w is None:
            return None, False
        return G.sub(p, w), True
    if isinstance(C, Translate):
        c, ex = find_cover(W, C.inner, G.sub(p, C.g), radius)
        return (G.add(c, C.g) if c is not None else None), ex
    if isinstance(C, Union):
        exhaustive = True
        for part in C.parts:
            c, ex = find_cover(W, part, p, radius)
            if c is not None:
                return c, True
            exhaustive &= ex
        return None, exhaustive
    if isinstance(W, BasisImage):
        if isinstance(C, BasisImage) and _same_basis(W, C):
            c0, ex = find_cover(W.inner, C.inner, W.pull(p), radius)
            return (W.push(c0) if c0 is not None else None), ex
    if isinstance(C, Graph):
        c = _graph_cover(W, C, p, radius)
        if c is not None:
            return c, True
        return None, False
    # generic: search C around p
    r = _radius_value(radius, G.rank)
    for k in range(r + 1):
        for c in _shell_points(G, p, k):
            if C.contains(c) and W.contains(G.sub(p, c)):
                return c, True
    return None, False


def _graph_cover(W: SymbolicSet, C: Graph, p, radius):
    G = W.group
    L = C.layout
    env, U = column_envelope(W)
    pb = L.base(p)
    if env is not None and U is None and env.layout.k1 == L.k1 and env.k2 == L.k2:
        B = env.base
        if isinstance(B, Finite):
            for b in sorted(B.elements):
                x = L.base_group.sub(pb, b)
                if C.M.contains(x):
                    c = C.point(x)
                    if W.contains(G.sub(p, c)):
                        return c
    r = _radius_value(radius, L.k1)
    BG = L.base_group
    for k in range(r + 1):
        for x in _shell_points(BG, pb, k):
            if C.M.contains(x):
                c = C.point(x)
                if W.contains(G.sub(p, c)):
                    return c
    return None


# --------------------------------------------------------------------------
# sumsets and complements


@dataclass
class SumsetResult:
    points: frozenset
    complete: bool
    witnesses: dict

    def __contains__(self, p):
        return tuple(p) in self.points


def sumset_window(A: SymbolicSet, B: SymbolicSet, target: Window, radius="certified") -> SumsetResult:
    """``(A + B)`` restricted to ``target``.

    ``complete`` is True when every absent point was shown absent
    exhaustively; otherwise the result may be missing points.
    """
    if A.group != B.group:
        raise ValueError("sets live in different groups")
    target = target.for_group(A.group)
    pts, wit = set(), {}
    complete = True
    for p in target.points():
        b, ex = find_cover(A, B, p, radius)
        if b is not None:
            pts.add(p)
            wit[p] = b
        elif not ex:
            complete = False
    return SumsetResult(frozenset(pts), complete, wit)


def is_complement_on_window(W: SymbolicSet, C: SymbolicSet, target: Window,
                            radius="certified") -> CoverageCertificate:
    """Check ``W + C`` covers every point of ``target``.

    Stops at the first (lexicographic) point without a cover.  That point is
    reported as not covered only when the search for it was exhaustive.
    """
    if W.group != C.group:
        raise ValueError("W and C live in different groups")
    target = target.for_group(W.group)
    witnesses = {}
    for p in target.points():
        c, exhaustive = find_cover(W, C, p, radius)
        if c is None:
            if exhaustive:
                return CoverageCertificate(target, NOT_COVERED, p, "exhaustive search", witnesses)
            r = _radius_value(radius, W.group.rank)
            return CoverageCertificate(target, UNVERIFIED, p,
                                       f"no cover found within search radius {r}", witnesses)
        witnesses[p] = c
    return CoverageCertificate(target, COVERED, None, "", witnesses)


# --------------------------------------------------------------------------
# certified radius and minimality


def certified_radius(W: SymbolicSet, C: Graph, x0: Sequence[int], m0: int) -> SearchRadius:
    """Which complement elements can reach column ``x0`` at first height >= the bound.

    With ``k2 = 1`` the threshold is m0 itself (columns are open below
    ``u``, so non-base contributions land at most at ``m0 - 1``); with
    ``k2 > 1`` only the first coordinate is controlled and the threshold is
    ``m0 + 1``.
    """
    env, _ = column_envelope(W)
    x0 = tuple(x0)
    if env is None:
        return SearchRadius((), False, "W has no spiked description")
    B = env.base
    k2 = env.k2
    threshold = m0 if k2 == 1 else m0 + 1
    BG = env.layout.base_group
    if isinstance(B, Finite):
        cands = tuple(sorted(BG.sub(x0, b) for b in B.elements))
        rad = tuple(max((abs(b[i]) for b in B.elements), default=0) for i in range(BG.rank))
        return SearchRadius(rad, True, f"moderation bound m0={m0} at {list(x0)}", threshold, cands)
    return SearchRadius((), False, f"base set {type(B).__name__} is not finite")


def _coset_height(env, threshold: int, k2: int) -> tuple[int, ...]:
    h = (threshold,) + (0,) * (k2 - 1)
    if not isinstance(env, Thm511Set):
        return h
    sub: SublatticeSpec = env.sub
    rho = sub.reduce([a - b for a, b in zip(h, env.g2)])
    h = tuple(a - b for a, b in zip(h, rho))
    if h[0] < threshold:
        row = sub.hnf[0]
        h = tuple(a + b for a, b in zip(h, row))
    return h


def _finite_witness(W, C: Finite, c, bound: int):
    G = W.group
    rest = [d for d in sorted(C.elements) if d != c]
    for r in range(bound + 1):
        for x0 in _shell_points(G, c, r):
            if not W.contains(G.sub(x0, c)):
                continue
            if not any(W.contains(G.sub(x0, d)) for d in rest):
                return x0
        if G.rank == 0:
            break
    return None


def minimality_witnesses(W: SymbolicSet, C: SymbolicSet, base_window: Window | None = None,
                         radius="certified", envelope: SymbolicSet | None = None,
                         witness_bound: int | None = None, recheck: int = 6) -> MinimalityCertificate:
    """For each tested ``c in C`` find x0 outside ``W + (C minus c)``.

    Finite C: x0 is searched over expanding shells around c and checked
    exhaustively.  Graph C: needs a spiked envelope of W (W itself, or the
    ``envelope`` argument, which must contain W) with finite base and a
    moderation bound attached to the graph; x0 is then placed in a
    certified region of its column.  ``base_window`` restricts the graph
    elements tested (over the base coordinates).
    """
    G = W.group
    if isinstance(C, Finite):
        bound = witness_bound if witness_bound is not None else DEFAULT_WITNESS_BOUND
        elems = sorted(C.elements)
        if base_window is not None:
            elems = [c for c in elems if c in base_window]
        entries = []
        for c in elems:
            x0 = _finite_witness(W, C, c, bound)
            rad = SearchRadius((bound,) * G.rank, True, "finite complement, exhaustive")
            entries.append(MinimalityEntry(c, x0, rad, "" if x0 else f"no witness within shell {bound}"))
        return MinimalityCertificate(entries)

    env_set = envelope if envelope is not None else W
    if isinstance(W, BasisImage) and isinstance(C, BasisImage) and _same_basis(W, C):
        inner_env = env_set.inner if isinstance(env_set, BasisImage) else None
        cert = minimality_witnesses(W.inner, C.inner, base_window, radius, inner_env,
                                    witness_bound, recheck)
        for e in cert.entries:
            e.c = W.push(e.c)
            if e.x0 is not None:
                e.x0 = W.push(e.x0)
        return cert

    if not isinstance(C, Graph):
        return MinimalityCertificate([], f"no witness strategy for {type(C).__name__}")
    env, U = column_envelope(env_set)
    if env is None or U is not None:
        return MinimalityCertificate([], "W has no spiked envelope in these coordinates")
    if not isinstance(env.base, Finite):
        return MinimalityCertificate([], "spiked base is not finite")
    if C.bound is None:
        return MinimalityCertificate([], "graph carries no moderation bound")
    L = C.layout
    BG = L.base_group
    if base_window is None:
        raise ValueError("graph complements need a base window")
    B = sorted(env.base.elements)
    k2 = L.k2
    entries = []
    wb = witness_bound
    for xp in C.M.enumerate(base_window.for_group(BG)):
        c = C.point(xp)
        g0 = _base_gap(C.M, B, xp, BG, wb if wb is not None else DEFAULT_WITNESS_BOUND)
        if g0 is None:
            entries.append(MinimalityEntry(c, None, None, "no base point outside B + (M minus x')"))
            continue
        m0 = C.bound(g0)
        rad = certified_radius(env_set, C, g0, m0)
        h = _coset_height(env, rad.min_height, k2)
        x0 = L.join(g0, h)
        bad = _recheck(W, C, x0, xp, g0, BG, recheck)
        if bad is not None:
            entries.append(MinimalityEntry(c, None, rad, f"bound violated: covered via {list(bad)}"))
            continue
        entries.append(MinimalityEntry(c, x0, rad))
    return MinimalityCertificate(entries)


def _base_gap(M: SymbolicSet, B, xp, BG: GroupSpec, bound: int):
    """Some g0 not in B + (M minus xp), preferring g0 in xp + B."""

    def ok(g):
        for b in B:
            y = BG.sub(g, b)
            if y != xp and M.contains(y):
                return False
        return True

    for b in B:
        g = BG.add(xp, b)
        if ok(g):
            return g
    for r in range(bound + 1):
        for g in _shell_points(BG, xp, r):
            if ok(g):
                return g
        if BG.rank == 0:
            break
    return None


def _recheck(W, C: Graph, x0, xp, g0, BG: GroupSpec, r: int):
    """Direct scan: no c' of C minus c with base near g0 covers x0."""
    G = W.group
    for k in range(r + 1):
        for x in _shell_points(BG, g0, k):
            if x == xp or not C.M.contains(x):
                continue
            cp = C.point(x)
            if W.contains(G.sub(x0, cp)):
                return cp
    return None


# --------------------------------------------------------------------------
# shrinking demonstration


@dataclass
class ShrinkStep:
    removed: tuple[int, ...]
    status: str
    n_w: int | None = None
    w: tuple[int, ...] | None = None
    c_w: tuple[int, ...] | None = None


@dataclass
class ShrinkReport:
    steps: list[ShrinkStep]
    cumulative: bool

    @property
    def coverage_persists(self) -> bool:
        return bool(self.steps) and all(s.status == COVERED for s in self.steps)

    def to_json(self) -> dict:
        return {
            "cumulative": self.cumulative,
            "coverage_persists": self.coverage_persists,
            "steps": [
                {"removed": list(s.removed), "status": s.status,
                 "n_w": s.n_w, "w": list(s.w) if s.w else None, "c_w": list(s.c_w) if s.c_w else None}
                for s in self.steps
            ],
        }


def _up_direction(W: SymbolicSet):
    """Direction e such that w + n e leaves W eventually, with w - n e staying inside."""
    if isinstance(W, TruncatedColumns):
        k = W.layout.k1
        e = tuple(int(i == k) for i in range(W.group.rank))
        return e if W.sign == BELOW else tuple(-a for a in e)
    if isinstance(W, BasisImage):
        inner = _up_direction(W.inner)
        if inner is not None:
            return W.U.apply(inner)
    return None


def _n_w(W, w, e, limit: int = 10_000):
    G = W.group
    for n in range(1, limit + 1):
        if not W.contains(G.add(w, tuple(n * a for a in e))):
            return n
    return None


def shrink_complement_demo(W: SymbolicSet, C: Finite, target: Window, rounds: int | None = None,
                           removal_order: Sequence | None = None, cumulative: bool = True,
                           radius="certified") -> ShrinkReport:
    """Remove elements of C one at a time and re-verify coverage of ``target``.

    Default order: every element except the one furthest along the column
    direction, lowest first.  For truncated-column sets each step also
    records the replacement data of the argument: a point w covered by the
    removed c, the first n with ``w + n e`` outside W, and an element
    ``c_w`` of what is left that covers ``c + w + n e``.
    """
    G = W.group
    e = _up_direction(W)
    elems = sorted(C.elements)
    if removal_order is None:
        if e is not None:
            top = max(elems, key=lambda c: (sum(a * b for a, b in zip(c, e)), c))
            order = [c for c in elems if c != top]
        else:
            order = elems[:-1]
    else:
        order = [G.reduce(tuple(c)) for c in removal_order]
    if rounds is not None:
        order = order[:rounds]
    current = set(elems)
    steps = []
    target = target.for_group(G)
    for c in order:
        if c not in current and cumulative:
            raise ValueError(f"{list(c)} is not in the complement")
        remaining = (current - {c}) if cumulative else (set(elems) - {c})
        sub = Finite(G, remaining)
        cert = is_complement_on_window(W, sub, target, radius)
        step = ShrinkStep(c, cert.status)
        if e is not None and remaining:
            w = next((G.sub(p, c) for p in target.points() if W.contains(G.sub(p, c))), None)
            if w is not None:
                n = _n_w(W, w, e)
                if n is not None:
                    q = G.add(G.add(c, w), tuple(n * a for a in e))
                    cw, _ = find_cover(W, sub, q, radius)
                    step.n_w, step.w, step.c_w = n, w, cw
        steps.append(step)
        if cumulative:
            current = remaining
    return ShrinkReport(steps, cumulative)
