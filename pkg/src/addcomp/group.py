"""Finitely generated abelian groups Z^r x Z/n1 x ... x Z/nt.

Elements are stored as flat integer tuples: the ``rank`` free coordinates
first, then one reduced residue per torsion factor.  Most of the library
works on these raw tuples; :class:`GroupElement` is the checked public
wrapper around them.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupSpec:
    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(n) for n in self.torsion))
        if self.rank < 0:
            raise GroupError("rank must be non-negative")
        if self.rank + len(self.torsion) < 1:
            raise GroupError("group needs at least one factor")
        if any(n < 2 for n in self.torsion):
            raise GroupError(f"torsion orders must be >= 2, got {self.torsion}")

    @property
    def dim(self) -> int:
        return self.rank + len(self.torsion)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int | None:
        if self.rank:
            return None
        return math.prod(self.torsion)

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.dim

    def reduce(self, coords: Sequence[int]) -> tuple[int, ...]:
        if len(coords) != self.dim:
            raise GroupError(f"expected {self.dim} coordinates, got {len(coords)}")
        r = self.rank
        if not self.torsion:
            return tuple(int(c) for c in coords)
        return tuple(int(c) for c in coords[:r]) + tuple(
            int(c) % n for c, n in zip(coords[r:], self.torsion)
        )

    def add(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        s = [x + y for x, y in zip(a, b)]
        return self.reduce(s) if self.torsion else tuple(s)

    def sub(self, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
        s = [x - y for x, y in zip(a, b)]
        return self.reduce(s) if self.torsion else tuple(s)

    def neg(self, a: Sequence[int]) -> tuple[int, ...]:
        return self.reduce([-x for x in a])

    def element(self, free: Sequence[int] = (), tors: Sequence[int] = ()) -> "GroupElement":
        return GroupElement(self, tuple(free), tuple(tors))

    def elements(self) -> Iterator[tuple[int, ...]]:
        """All elements of a finite group in lexicographic order."""
        if self.rank:
            raise GroupError("cannot enumerate an infinite group")
        return itertools.product(*(range(n) for n in self.torsion))

    def split(self, coords: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(coords[: self.rank]), tuple(coords[self.rank :])

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> "GroupSpec":
        try:
            return cls(int(data["rank"]), tuple(data.get("torsion", ())))
        except (KeyError, TypeError) as exc:
            raise GroupError(f"bad group spec {data!r}") from exc

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        """Parse ``"Z4xZ2"``, ``"Z^2"``, ``"ZxZ3"`` or ``"Z^3xZ2"``."""
        rank = 0
        torsion = []
        for part in re.split(r"\s*[x×*]\s*", text.strip()):
            m = re.fullmatch(r"Z(?:\^(\d+))?", part)
            if m:
                rank += int(m.group(1) or 1)
                continue
            m = re.fullmatch(r"Z(?:/|_)?(\d+)", part)
            if m:
                torsion.append(int(m.group(1)))
                continue
            raise GroupError(f"cannot parse group factor {part!r} in {text!r}")
        return cls(rank, tuple(torsion))

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z{n}" for n in self.torsion)
        return "x".join(parts)


def free_group(rank: int) -> GroupSpec:
    return GroupSpec(rank, ())


@dataclass(frozen=True)
class GroupElement:
    group: GroupSpec
    free: tuple[int, ...] = ()
    tors: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.free) != self.group.rank or len(self.tors) != len(self.group.torsion):
            raise GroupError(f"element shape does not match {self.group}")
        object.__setattr__(self, "free", tuple(int(x) for x in self.free))
        object.__setattr__(
            self, "tors", tuple(int(x) % n for x, n in zip(self.tors, self.group.torsion))
        )

    @property
    def coords(self) -> tuple[int, ...]:
        return self.free + self.tors

    @classmethod
    def from_coords(cls, group: GroupSpec, coords: Sequence[int]) -> "GroupElement":
        c = group.reduce(coords)
        return cls(group, c[: group.rank], c[group.rank :])

    def _check(self, other: "GroupElement"):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise GroupError("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement.from_coords(self.group, self.group.add(self.coords, other.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return GroupElement.from_coords(self.group, self.group.sub(self.coords, other.coords))

    def __neg__(self) -> "GroupElement":
        return GroupElement.from_coords(self.group, self.group.neg(self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)


def add(a: GroupElement, b: GroupElement) -> GroupElement:
    return a + b


def as_coords(g, group: GroupSpec | None = None) -> tuple[int, ...]:
    """Accept a GroupElement, a tuple/list or a bare int and return raw coordinates."""
    if isinstance(g, GroupElement):
        if group is not None and g.group != group:
            raise GroupError(f"element of {g.group} used in {group}")
        return g.coords
    if isinstance(g, int):
        g = (g,)
    c = tuple(int(x) for x in g)
    if group is not None:
        return group.reduce(c)
    return c


# --------------------------------------------------------------------------
# windows


@dataclass(frozen=True)
class Window:
    """Inclusive box on the free coordinates; torsion coordinates are always full."""

    bounds: tuple[tuple[int, int], ...]
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        b = tuple((int(lo), int(hi)) for lo, hi in self.bounds)
        for lo, hi in b:
            if lo > hi:
                raise GroupError(f"empty window range {lo}..{hi}")
        object.__setattr__(self, "bounds", b)
        object.__setattr__(self, "torsion", tuple(self.torsion))

    @classmethod
    def cube(cls, dim: int, lo: int, hi: int, torsion: Sequence[int] = ()) -> "Window":
        return cls(((lo, hi),) * dim, tuple(torsion))

    @classmethod
    def parse(cls, text: str, torsion: Sequence[int] = ()) -> "Window":
        """``"-10..10,-10..10"``; an empty string gives a window with no free part."""
        text = text.strip()
        bounds = []
        if text:
            for part in text.split(","):
                m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", part)
                if not m:
                    raise GroupError(f"bad window range {part!r}")
                bounds.append((int(m.group(1)), int(m.group(2))))
        return cls(tuple(bounds), tuple(torsion))

    @classmethod
    def full(cls, group: GroupSpec) -> "Window":
        if group.rank:
            raise GroupError("only finite groups have a full window")
        return cls((), group.torsion)

    def for_group(self, group: GroupSpec) -> "Window":
        if len(self.bounds) != group.rank:
            raise GroupError(f"window has {len(self.bounds)} ranges, group rank is {group.rank}")
        return Window(self.bounds, group.torsion)

    @property
    def dim(self) -> int:
        return len(self.bounds) + len(self.torsion)

    @property
    def size(self) -> int:
        return math.prod(hi - lo + 1 for lo, hi in self.bounds) * math.prod(self.torsion)

    def points(self) -> Iterator[tuple[int, ...]]:
        ranges = [range(lo, hi + 1) for lo, hi in self.bounds]
        ranges += [range(n) for n in self.torsion]
        return itertools.product(*ranges)

    def __contains__(self, p) -> bool:
        for x, (lo, hi) in zip(p, self.bounds):
            if x < lo or x > hi:
                return False
        return True

    def shifted(self, g: Sequence[int]) -> "Window":
        return Window(tuple((lo + x, hi + x) for (lo, hi), x in zip(self.bounds, g)), self.torsion)

    def span(self) -> int:
        return max((hi - lo for lo, hi in self.bounds), default=0)

    def __str__(self):
        return ",".join(f"{lo}..{hi}" for lo, hi in self.bounds)


def linf_shell(center: Sequence[int], radius: int) -> Iterator[tuple[int, ...]]:
    """Points at L-infinity distance exactly ``radius`` from ``center``, lexicographic."""
    k = len(center)
    if radius == 0:
        yield tuple(center)
        return
    for off in itertools.product(range(-radius, radius + 1), repeat=k):
        if max(abs(o) for o in off) == radius:
            yield tuple(c + o for c, o in zip(center, off))


# --------------------------------------------------------------------------
# integer linear algebra


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x, nx, y, ny = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
    if a < 0:
        a, x, y = -a, -x, -y
    return a, x, y


def echelon_form(vectors: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Hermite normal form of the row lattice spanned by ``vectors``.

    Returns (rows, pivots): rows in row-echelon form with positive pivots and
    entries above each pivot reduced into ``[0, pivot)``.  Zero rows are dropped.
    """
    rows = [list(map(int, v)) for v in vectors]
    if not rows:
        return [], []
    n = len(rows[0])
    out: list[list[int]] = []
    pivots: list[int] = []
    work = rows
    for col in range(n):
        nz = [r for r in work if r[col] != 0]
        rest = [r for r in work if r[col] == 0]
        if not nz:
            continue
        # gcd-combine everything with a nonzero entry in this column into one pivot row
        piv = nz[0]
        for r in nz[1:]:
            a, b = piv[col], r[col]
            g, x, y = xgcd(a, b)
            new_piv = [x * p + y * q for p, q in zip(piv, r)]
            new_r = [(b // g) * p - (a // g) * q for p, q in zip(piv, r)]
            piv = new_piv
            if any(new_r):
                rest.append(new_r)
        if piv[col] < 0:
            piv = [-x for x in piv]
        out.append(piv)
        pivots.append(col)
        work = [r for r in rest if any(r)]
    for i, (row, col) in enumerate(zip(out, pivots)):
        p = row[col]
        for j in range(i):
            q = out[j][col] // p
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], row)]
    return out, pivots


def _rational_rank(vectors: Sequence[Sequence[int]]) -> int:
    m = [[Fraction(x) for x in v] for v in vectors]
    rank = 0
    if not m:
        return 0
    ncols = len(m[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class SublatticeSpec:
    """Subgroup of a free group Z^n spanned by linearly independent integer vectors."""

    ambient: GroupSpec
    basis: tuple[tuple[int, ...], ...]
    hnf: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    pivots: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.ambient.torsion:
            raise GroupError("sublattices live in torsion-free groups")
        basis = tuple(tuple(int(x) for x in v) for v in self.basis)
        object.__setattr__(self, "basis", basis)
        n = self.ambient.rank
        if any(len(v) != n for v in basis):
            raise GroupError("basis vectors must match the ambient rank")
        if _rational_rank(basis) != len(basis):
            raise GroupError("basis vectors are not linearly independent")
        rows, piv = echelon_form(basis) if basis else ([], [])
        object.__setattr__(self, "hnf", tuple(tuple(r) for r in rows))
        object.__setattr__(self, "pivots", tuple(piv))

    @classmethod
    def of(cls, *basis: Sequence[int]) -> "SublatticeSpec":
        return cls(free_group(len(basis[0])), tuple(tuple(b) for b in basis))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def index(self) -> int | None:
        """Index in the ambient group, None when infinite."""
        if self.rank < self.ambient.rank:
            return None
        return math.prod(row[c] for row, c in zip(self.hnf, self.pivots))

    def contains(self, v: Sequence[int]) -> bool:
        v = list(v)
        rows = dict(zip(self.pivots, self.hnf))
        for j in range(len(v)):
            if v[j] == 0:
                continue
            row = rows.get(j)
            if row is None:
                return False
            q, r = divmod(v[j], row[j])
            if r:
                return False
            v = [a - q * b for a, b in zip(v, row)]
        return True

    def reduce(self, v: Sequence[int]) -> tuple[int, ...]:
        """Canonical representative of ``v + H`` in the HNF fundamental domain.

        Coordinates at pivot columns land in ``[0, pivot)``; free (non-pivot)
        coordinates are left untouched.
        """
        v = list(v)
        for row, j in zip(self.hnf, self.pivots):
            q = v[j] // row[j]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)


def membership_in_sublattice(g, H: SublatticeSpec) -> bool:
    c = as_coords(g)
    if len(c) != H.ambient.rank:
        raise GroupError("ambient ranks differ")
    return H.contains(c)


@dataclass(frozen=True)
class FiniteSubgroup:
    """Subgroup of a finite group, stored as its sorted element list."""

    ambient: GroupSpec
    elements: tuple[tuple[int, ...], ...]

    @classmethod
    def generated(cls, ambient: GroupSpec, gens: Iterable[Sequence[int]]) -> "FiniteSubgroup":
        if ambient.rank:
            raise GroupError("finite subgroups need a finite ambient group")
        seen = {ambient.zero()}
        frontier = [ambient.zero()]
        gens = [ambient.reduce(g) for g in gens]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = ambient.add(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return cls(ambient, tuple(sorted(seen)))

    @property
    def index(self) -> int:
        return self.ambient.order // len(self.elements)

    def contains(self, v: Sequence[int]) -> bool:
        return self.ambient.reduce(v) in set(self.elements)


def _signed_sequence() -> Iterator[int]:
    yield 0
    n = 1
    while True:
        yield n
        yield -n
        n += 1


def _free_offsets(k: int) -> Iterator[tuple[int, ...]]:
    """Integer vectors in order of L-infinity shell, then by the 0,1,-1,2,-2 order."""
    if k == 0:
        yield ()
        return
    r = 0
    while True:
        seq = [0] + [s for n in range(1, r + 1) for s in (n, -n)]
        for off in itertools.product(seq, repeat=k):
            if max((abs(o) for o in off), default=0) == r:
                yield off
        r += 1


def coset_representatives(H, G: GroupSpec | None = None, limit: int | None = None) -> list[tuple[int, ...]]:
    """One representative per coset of ``H``.

    For a finite-index sublattice the representatives are the points of the
    Hermite-normal-form fundamental domain, in lexicographic order.  For an
    infinite-index sublattice a ``limit`` is required and the first ``limit``
    representatives are returned, ordered by L-infinity shell in the
    non-pivot coordinates.  Finite subgroups of finite groups take the
    lexicographically smallest element of every coset.
    """
    if isinstance(H, FiniteSubgroup):
        ambient = G or H.ambient
        reps = []
        covered: set = set()
        for g in ambient.elements():
            if g in covered:
                continue
            reps.append(g)
            covered.update(ambient.add(g, h) for h in H.elements)
        return reps[:limit] if limit is not None else reps
    if not isinstance(H, SublatticeSpec):
        raise GroupError(f"unsupported subgroup description {type(H).__name__}")
    n = H.ambient.rank
    pivot_ranges = {c: range(row[c]) for row, c in zip(H.hnf, H.pivots)}
    free_cols = [j for j in range(n) if j not in pivot_ranges]
    if not free_cols:
        ranges = [pivot_ranges[j] for j in range(n)]
        reps = [tuple(p) for p in itertools.product(*ranges)]
        return reps[:limit] if limit is not None else reps
    if limit is None:
        raise GroupError("sublattice has infinite index; pass a prefix limit")
    reps = []
    pivot_cols = sorted(pivot_ranges)
    for off in _free_offsets(len(free_cols)):
        for res in itertools.product(*(pivot_ranges[c] for c in pivot_cols)):
            v = [0] * n
            for c, x in zip(free_cols, off):
                v[c] = x
            for c, x in zip(pivot_cols, res):
                v[c] = x
            reps.append(tuple(v))
            if len(reps) >= limit:
                return reps
    return reps


# --------------------------------------------------------------------------
# unimodular changes of basis


@dataclass(frozen=True)
class UnimodularBasis:
    """Integer matrix with determinant +-1, acting on column vectors."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        object.__setattr__(self, "matrix", m)
        if any(len(row) != len(m) for row in m):
            raise GroupError("unimodular basis must be square")
        d = _det(m)
        if d not in (1, -1):
            raise GroupError(f"matrix {m} has determinant {d}, not +-1")

    @classmethod
    def of(cls, *rows: Sequence[int]) -> "UnimodularBasis":
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, n: int) -> "UnimodularBasis":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, *cols: Sequence[int]) -> "UnimodularBasis":
        n = len(cols)
        return cls(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))

    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def det(self) -> int:
        return _det(self.matrix)

    def columns(self) -> list[tuple[int, ...]]:
        n = self.size
        return [tuple(self.matrix[i][j] for i in range(n)) for j in range(n)]

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(a * x for a, x in zip(row, v)) for row in self.matrix)

    def inverse(self) -> "UnimodularBasis":
        n = self.size
        m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self.matrix)]
        for col in range(n):
            piv = next(i for i in range(col, n) if m[i][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            p = m[col][col]
            m[col] = [x / p for x in m[col]]
            for i in range(n):
                if i != col and m[i][col] != 0:
                    f = m[i][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[col])]
        inv = tuple(tuple(int(x) for x in row[n:]) for row in m)
        return UnimodularBasis(inv)

    def compose(self, other: "UnimodularBasis") -> "UnimodularBasis":
        """Matrix product ``self @ other`` (apply ``other`` first)."""
        n = self.size
        return UnimodularBasis(tuple(
            tuple(sum(self.matrix[i][k] * other.matrix[k][j] for k in range(n)) for j in range(n))
            for i in range(n)
        ))

    def to_json(self) -> list:
        return [list(r) for r in self.matrix]


def _det(m: Sequence[Sequence[int]]) -> int:
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        for i in range(col + 1, n):
            f = a[i][col] / a[col][col]
            a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return int(det)


def rational_rotation_basis(a: int, b: int) -> tuple[UnimodularBasis, SublatticeSpec, SublatticeSpec, tuple[int, int]]:
    """Split Z^2 along the line ``a x = b y``.

    Finds (c, d) with ``a*d - b*c = -1`` of smallest ``|c| + |d|`` (ties go to
    the larger c, then larger d).  G1 = {c x = d y} is generated by (d, c) and
    G2 = {a x = b y} by (b, a).  Returns the basis matrix with columns (d, c)
    and (b, a), the two sublattices and the pair (c, d).
    """
    if (a, b) == (0, 0):
        raise GroupError("(a, b) must be nonzero")
    g, x, y = xgcd(a, b)
    if g != 1:
        raise GroupError(f"gcd({a}, {b}) = {g}, expected 1")
    # a*x + b*y = 1  =>  d0 = -x, c0 = y solves a*d - b*c = -1
    d0, c0 = -x, y
    # general solution: d = d0 + k*b, c = c0 + k*a
    ks = set()
    for num, den in ((-d0, b), (-c0, a)):
        if den:
            q = Fraction(num, den)
            base = math.floor(q)
            ks.update(range(base - 1, base + 3))
    if not ks:
        ks = {0}
    best = min(
        ((c0 + k * a, d0 + k * b) for k in ks),
        key=lambda cd: (abs(cd[0]) + abs(cd[1]), -cd[0], -cd[1]),
    )
    c, d = best
    assert a * d - b * c == -1
    z2 = free_group(2)
    U = UnimodularBasis.from_columns((d, c), (b, a))
    return U, SublatticeSpec(z2, ((d, c),)), SublatticeSpec(z2, ((b, a),)), (c, d)
