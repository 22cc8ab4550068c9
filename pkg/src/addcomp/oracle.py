"""Exhaustive ground truth in small finite abelian groups.

Subsets are N-bit masks over the elements listed in lexicographic order.
Coverage of every subset C at once is a doubling table
``cov[C] = cov[C without its top bit] | (W + top)``, built with numpy in
``N`` vectorised steps.  Minimality is single-element removal, which is
equivalent to the subset definition because coverage is monotone in C.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .group import FiniteSubgroup, GroupError, GroupSpec, coset_representatives

MAX_ORDER = 24


class FiniteGroupTable:
    """Addition table of a finite group, or of a subgroup listed by its elements."""

    def __init__(self, group: GroupSpec, elements: Sequence[Sequence[int]] | None = None):
        if group.rank:
            raise GroupError("the oracle needs a finite group")
        self.group = group
        elems = [group.reduce(e) for e in elements] if elements is not None else list(group.elements())
        elems = sorted(set(elems))
        self.N = len(elems)
        if self.N > MAX_ORDER:
            raise GroupError(f"order {self.N} exceeds the oracle cap {MAX_ORDER}")
        self.elements = elems
        self.index = {e: i for i, e in enumerate(elems)}
        add = np.empty((self.N, self.N), dtype=np.int64)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                s = group.add(a, b)
                if s not in self.index:
                    raise GroupError("element list is not closed under addition")
                add[i, j] = self.index[s]
        self.add = add
        self.full = (1 << self.N) - 1
        self._trans = None

    # masks <-> elements
    def mask(self, elems: Iterable[Sequence[int]]) -> int:
        m = 0
        for e in elems:
            m |= 1 << self.index[self.group.reduce(tuple(e))]
        return m

    def members(self, mask: int) -> list[tuple[int, ...]]:
        return [self.elements[i] for i in range(self.N) if mask >> i & 1]

    def shift(self, mask: int, g: int) -> int:
        """``mask + element g`` (g an index)."""
        out = 0
        for i in range(self.N):
            if mask >> i & 1:
                out |= 1 << int(self.add[i, g])
        return out

    def sumset(self, a: int, b: int) -> int:
        out = 0
        for j in range(self.N):
            if b >> j & 1:
                out |= self.shift(a, j)
        return out

    def is_complement(self, W: int, C: int) -> bool:
        return self.sumset(W, C) == self.full

    def is_minimal(self, W: int, C: int) -> bool:
        if not self.is_complement(W, C):
            return False
        for j in range(self.N):
            if C >> j & 1 and self.is_complement(W, C & ~(1 << j)):
                return False
        return True

    def coverage_table(self, W: int) -> np.ndarray:
        """``cov[C] = W + C`` for every mask C."""
        dtype = np.uint32 if self.N <= 32 else object
        cov = np.zeros(1 << self.N, dtype=dtype)
        for i in range(self.N):
            lo = 1 << i
            cov[lo: 2 * lo] = cov[:lo] | dtype(self.shift(W, i))
        return cov

    def translation_tables(self) -> np.ndarray:
        """``trans[g][C] = C + g`` for every element index g and mask C."""
        if self._trans is None:
            t = np.zeros((self.N, 1 << self.N), dtype=np.int64)
            for g in range(self.N):
                for i in range(self.N):
                    lo = 1 << i
                    t[g, lo: 2 * lo] = t[g, :lo] | (1 << int(self.add[i, g]))
            self._trans = t
        return self._trans


def all_complements(W: int, G: FiniteGroupTable) -> Iterator[int]:
    if not W:
        raise ValueError("W must be nonempty")
    cov = G.coverage_table(W)
    for m in np.nonzero(cov == G.full)[0]:
        yield int(m)


def minimal_complements(W: int, G: FiniteGroupTable, cov: np.ndarray | None = None) -> list[int]:
    if not W:
        raise ValueError("W must be nonempty")
    if cov is None:
        cov = G.coverage_table(W)
    comps = np.nonzero(cov == G.full)[0]
    keep = np.ones(comps.shape, dtype=bool)
    for i in range(G.N):
        bit = 1 << i
        has = (comps & bit) != 0
        keep &= ~has | (cov[comps ^ bit] != G.full)
    return sorted(int(m) for m in comps[keep])


def translation_closed(masks: Sequence[int], G: FiniteGroupTable) -> bool:
    if not masks:
        return True
    arr = np.asarray(masks, dtype=np.int64)
    trans = G.translation_tables()
    return all(bool(np.isin(trans[g][arr], arr).all()) for g in range(G.N))


def subgroups(group: GroupSpec) -> list[FiniteSubgroup]:
    """All subgroups, found by closing under one more generator at a time."""
    elems = list(group.elements())
    seen = {}
    frontier = [FiniteSubgroup.generated(group, [])]
    while frontier:
        H = frontier.pop()
        if H.elements in seen:
            continue
        seen[H.elements] = H
        hs = set(H.elements)
        for g in elems:
            if g not in hs:
                K = FiniteSubgroup.generated(group, _generators(H) + [g])
                if K.elements not in seen:
                    frontier.append(K)
    return sorted(seen.values(), key=lambda H: (len(H.elements), H.elements))


def _generators(H: FiniteSubgroup) -> list[tuple[int, ...]]:
    gens: list[tuple[int, ...]] = []
    span = {H.ambient.zero()}
    for h in H.elements:
        if h not in span:
            gens.append(h)
            span = set(FiniteSubgroup.generated(H.ambient, gens).elements)
    return gens


def small_groups(max_order: int = 12) -> list[GroupSpec]:
    """Cyclic groups and the non-cyclic products of order up to ``max_order``."""
    out = [GroupSpec(0, (n,)) for n in range(2, max_order + 1)]
    for t in [(2, 2), (2, 4), (2, 2, 2), (3, 3), (2, 6), (2, 8), (4, 4), (2, 2, 4), (2, 2, 2, 2),
              (3, 6), (2, 10), (2, 2, 6), (2, 12), (4, 6), (2, 2, 2, 3)]:
        g = GroupSpec(0, t)
        if g.order <= max_order:
            out.append(g)
    return out


# --------------------------------------------------------------------------
# subgroup confinement


@dataclass
class Thm24Report:
    group: GroupSpec
    subgroup: tuple
    W: tuple
    exists_in_G: bool
    exists_in_H: bool
    restrictions_checked: int = 0
    lifts_checked: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.exists_in_G == self.exists_in_H and not self.failures


def _rep_systems(G: GroupSpec, H: FiniteSubgroup, limit: int, rng: random.Random):
    canon = coset_representatives(H, G)
    cosets = [[G.add(r, h) for h in H.elements] for r in canon]
    total = 1
    for c in cosets:
        total *= len(c)
    if total <= limit:
        yield from itertools.product(*cosets)
        return
    yield tuple(canon)
    for _ in range(limit - 1):
        yield tuple(rng.choice(c) for c in cosets)


def _minimal_mask_array(cov: np.ndarray, masks: np.ndarray, N: int, full: int) -> np.ndarray:
    ok = cov[masks] == full
    for i in range(N):
        bit = 1 << i
        has = (masks & bit) != 0
        ok &= ~has | (cov[masks ^ bit] != full)
    return ok


def _embed(masks: np.ndarray, src: FiniteGroupTable, dst: FiniteGroupTable) -> np.ndarray:
    """Re-index masks from the element list of ``src`` to that of ``dst``."""
    out = np.zeros(masks.shape, dtype=np.int64)
    for i, e in enumerate(src.elements):
        j = dst.index.get(e)
        if j is not None:
            out |= ((masks >> i) & 1) << j
    return out


def thm24_check(group: GroupSpec, H: FiniteSubgroup, W: Sequence[Sequence[int]],
                rep_limit: int = 64, seed: int = 0, table: FiniteGroupTable | None = None,
                sub_table: FiniteGroupTable | None = None) -> Thm24Report:
    """Subgroup confinement on one triple.

    Checks that minimal complements exist in G exactly when they exist in
    H, that ``M cap H`` is minimal in H for every minimal M in G, and that
    every minimal complement in H lifted by a system of coset
    representatives is minimal in G (all systems, or ``rep_limit`` of them).
    """
    TG = table if table is not None and table.group == group else FiniteGroupTable(group)
    TH = sub_table if sub_table is not None else FiniteGroupTable(group, H.elements)
    W = [group.reduce(tuple(w)) for w in W]
    if not W or any(not H.contains(w) for w in W):
        raise ValueError("W must be a nonempty subset of H")
    WG, WH = TG.mask(W), TH.mask(W)
    covG = TG.coverage_table(WG)
    minG = np.array(minimal_complements(WG, TG, covG), dtype=np.int64)
    minH = np.array(minimal_complements(WH, TH), dtype=np.int64)
    rep = Thm24Report(group, H.elements, tuple(W), bool(minG.size), bool(minH.size))
    if minG.size:
        restricted = _embed(minG, TG, TH)
        rep.restrictions_checked = int(minG.size)
        bad = ~np.isin(restricted, minH)
        for M in minG[bad][:5]:
            rep.failures.append(f"restriction of {TG.members(int(M))} is not minimal in H")
    if minH.size:
        trans = TG.translation_tables()
        inG = _embed(minH, TH, TG)
        rng = random.Random(seed)
        systems = list(_rep_systems(group, H, rep_limit, rng))
        lifted = np.zeros((len(systems), inG.size), dtype=np.int64)
        for k, reps in enumerate(systems):
            for r in reps:
                lifted[k] |= trans[TG.index[r]][inG]
        ok = _minimal_mask_array(covG, lifted.ravel(), TG.N, TG.full).reshape(lifted.shape)
        rep.lifts_checked = int(lifted.size)
        for k, i in zip(*np.nonzero(~ok)):
            if len(rep.failures) >= 10:
                break
            rep.failures.append(f"lift of {TH.members(int(minH[i]))} by {list(systems[k])} is not minimal in G")
    return rep


def thm24_all(group: GroupSpec, rep_limit: int = 64, max_w: int | None = None) -> list[Thm24Report]:
    """Run :func:`thm24_check` on every subgroup H and every nonempty W in H."""
    out = []
    TG = FiniteGroupTable(group)
    for H in subgroups(group):
        hs = H.elements
        TH = FiniteGroupTable(group, hs)
        subsets = range(1, 1 << len(hs))
        for m in subsets:
            W = [hs[i] for i in range(len(hs)) if m >> i & 1]
            if max_w is not None and len(W) > max_w:
                continue
            out.append(thm24_check(group, H, W, rep_limit, table=TG, sub_table=TH))
    return out


def parse_subset(text: str, group: GroupSpec) -> list[tuple[int, ...]]:
    """``"0,0;1,0"`` -> [(0, 0), (1, 0)]."""
    out = []
    for part in text.split(";"):
        part = part.strip()
        if part:
            out.append(group.reduce(tuple(int(x) for x in part.split(","))))
    return out
