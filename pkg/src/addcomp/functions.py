"""Integer-valued functions on Z^k (and Z^k x torsion).

Every function here is a callable taking a coordinate tuple.  ``dim`` is the
rank of the codomain: scalar functions return ``int``, functions with
``dim > 1`` return a tuple compared in dictionary order.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np


def _tup(x) -> tuple[int, ...]:
    if isinstance(x, int):
        return (x,)
    return tuple(x)


class IntFunction:
    arity: int
    dim: int = 1

    def __call__(self, x):
        raise NotImplementedError

    def first(self, x) -> int:
        """First coordinate of the value; the only one dictionary-order bounds consume."""
        v = self(x)
        return v[0] if self.dim > 1 else v

    def to_json(self) -> dict:
        raise TypeError(f"{type(self).__name__} has no JSON form")


@dataclass(frozen=True)
class IntPolynomial(IntFunction):
    """Integer polynomial given as ``((exponents, coefficient), ...)``."""

    arity: int
    terms: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self):
        merged: dict[tuple[int, ...], int] = {}
        for exps, coef in self.terms:
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.arity:
                raise ValueError(f"exponent vector {exps} does not have arity {self.arity}")
            if any(e < 0 for e in exps):
                raise ValueError("integer polynomials need non-negative exponents")
            merged[exps] = merged.get(exps, 0) + int(coef)
        terms = tuple(sorted((e, c) for e, c in merged.items() if c))
        object.__setattr__(self, "terms", terms)

    @property
    def dim(self) -> int:
        return 1

    @classmethod
    def from_dict(cls, arity: int, coeffs: Mapping[tuple[int, ...], int]) -> "IntPolynomial":
        return cls(arity, tuple(coeffs.items()))

    @classmethod
    def constant(cls, arity: int, c: int) -> "IntPolynomial":
        return cls(arity, (((0,) * arity, c),))

    @classmethod
    def univariate(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        """``coeffs[i]`` is the coefficient of t^i."""
        return cls(1, tuple(((i,), c) for i, c in enumerate(coeffs)))

    @classmethod
    def power_sum(cls, arity: int, exponent: int, coef: int = 1) -> "IntPolynomial":
        """``coef * (X1^e + ... + Xk^e)``."""
        return cls(arity, tuple((tuple(exponent if j == i else 0 for j in range(arity)), coef)
                                for i in range(arity)))

    def __call__(self, x) -> int:
        x = _tup(x)
        total = 0
        for exps, coef in self.terms:
            m = coef
            for xi, e in zip(x, exps):
                if e:
                    m *= xi ** e
            total += m
        return total

    def evaluate_array(self, coords: Sequence[np.ndarray]) -> np.ndarray:
        """Vectorised evaluation; falls back to Python ints when int64 could overflow."""
        coords = [np.asarray(c) for c in coords]
        bound = max((int(np.max(np.abs(c))) if c.size else 0 for c in coords), default=0)
        worst = sum(abs(c) * max(bound, 1) ** sum(e) for e, c in self.terms)
        dtype = np.int64 if worst < 2 ** 62 else object
        shape = np.broadcast(*coords).shape if coords else ()
        total = np.zeros(shape, dtype=dtype)
        for exps, coef in self.terms:
            m = np.full(shape, coef, dtype=dtype)
            for c, e in zip(coords, exps):
                if e:
                    m = m * c.astype(dtype) ** e
            total = total + m
        return total

    @property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    @property
    def constant_term(self) -> int:
        return dict(self.terms).get((0,) * self.arity, 0)

    def is_zero(self) -> bool:
        return not self.terms

    def separable_parts(self) -> tuple[list[dict[int, int]], int] | None:
        """Split into ``c + sum_i p_i(x_i)``; None if some monomial mixes variables."""
        parts: list[dict[int, int]] = [dict() for _ in range(self.arity)]
        const = 0
        for exps, coef in self.terms:
            nz = [i for i, e in enumerate(exps) if e]
            if not nz:
                const += coef
            elif len(nz) == 1:
                i = nz[0]
                parts[i][exps[i]] = parts[i].get(exps[i], 0) + coef
            else:
                return None
        return parts, const

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(self.arity, tuple((e, -c) for e, c in self.terms))

    def scaled(self, k: int) -> "IntPolynomial":
        return IntPolynomial(self.arity, tuple((e, k * c) for e, c in self.terms))

    def to_json(self) -> dict:
        return {"poly": [[list(e), c] for e, c in self.terms], "arity": self.arity}


@dataclass(frozen=True)
class RationalPolyFloor(IntFunction):
    """Rational-coefficient Laurent polynomial followed by a rounding mode.

    ``mode`` is ``"floor"``, ``"ceil"`` or ``"floor_ceil"``; the last is the
    composition ``floor(f) + ceil(f - floor(f))``, which rounds up.  Negative
    exponents are allowed; at a pole the caller-supplied ``overrides`` value is
    used instead of the formula.
    """

    arity: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...]
    mode: str = "floor"
    overrides: tuple[tuple[tuple[int, ...], Fraction], ...] = ()

    def __post_init__(self):
        if self.mode not in ("floor", "ceil", "floor_ceil"):
            raise ValueError(f"unknown rounding mode {self.mode!r}")
        terms = tuple((tuple(int(e) for e in exps), Fraction(c)) for exps, c in self.terms)
        object.__setattr__(self, "terms", tuple(t for t in terms if t[1]))
        object.__setattr__(self, "overrides",
                           tuple((tuple(k), Fraction(v)) for k, v in self.overrides))

    @property
    def dim(self) -> int:
        return 1

    @classmethod
    def univariate(cls, coeffs: Mapping[int, Fraction | int | str], mode="floor",
                   overrides: Mapping[int, Fraction | int | str] | None = None) -> "RationalPolyFloor":
        terms = tuple(((e,), Fraction(c)) for e, c in coeffs.items())
        ov = tuple(((k,), Fraction(v)) for k, v in (overrides or {}).items())
        return cls(1, terms, mode, ov)

    def has_pole_at(self, x) -> bool:
        x = _tup(x)
        return any(e < 0 and xi == 0 for exps, _ in self.terms for xi, e in zip(x, exps))

    def real_value(self, x) -> Fraction:
        x = _tup(x)
        ov = dict(self.overrides)
        if x in ov:
            return ov[x]
        if self.has_pole_at(x):
            raise ZeroDivisionError(f"pole at {x} and no override supplied")
        total = Fraction(0)
        for exps, coef in self.terms:
            m = coef
            for xi, e in zip(x, exps):
                if e:
                    m *= Fraction(xi) ** e
            total += m
        return total

    def __call__(self, x) -> int:
        f = self.real_value(x)
        if self.mode == "floor":
            return math.floor(f)
        if self.mode == "ceil":
            return math.ceil(f)
        fl = math.floor(f)
        return fl + math.ceil(f - fl)

    def with_mode(self, mode: str) -> "RationalPolyFloor":
        return RationalPolyFloor(self.arity, self.terms, mode, self.overrides)

    def to_json(self) -> dict:
        out = {
            "ratpoly": [[list(e), str(c)] for e, c in self.terms],
            "arity": self.arity,
            "mode": self.mode,
        }
        if self.overrides:
            out["overrides"] = [[list(k), str(v)] for k, v in self.overrides]
        return out


_MISSING = object()


@dataclass(frozen=True)
class Table(IntFunction):
    """Finite lookup table with an optional default (missing key raises otherwise)."""

    arity: int
    entries: tuple[tuple[tuple[int, ...], object], ...]
    default: object = None
    dim: int = 1
    _lookup: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_lookup", {tuple(k): v for k, v in self.entries})

    @classmethod
    def from_mapping(cls, arity: int, mapping: Mapping, default=None, dim: int = 1) -> "Table":
        return cls(arity, tuple((_tup(k), v) for k, v in sorted(mapping.items(), key=lambda kv: _tup(kv[0]))),
                   default, dim)

    def __call__(self, x):
        x = _tup(x)
        v = self._lookup.get(x, _MISSING)
        if v is _MISSING:
            if self.default is None:
                raise KeyError(f"table has no entry for {x}")
            return self.default
        return v

    def to_json(self) -> dict:
        out = {"table": [[list(k), list(v) if isinstance(v, tuple) else v] for k, v in self.entries],
               "arity": self.arity}
        if self.default is not None:
            out["default"] = list(self.default) if isinstance(self.default, tuple) else self.default
        if self.dim != 1:
            out["dim"] = self.dim
        return out


@dataclass(frozen=True)
class VectorFunction(IntFunction):
    """Z^k -> Z^m built from m scalar components."""

    components: tuple[IntFunction, ...]

    def __post_init__(self):
        ar = {c.arity for c in self.components}
        if len(ar) != 1:
            raise ValueError("vector components must share an arity")

    @property
    def arity(self) -> int:
        return self.components[0].arity

    @property
    def dim(self) -> int:
        return len(self.components)

    def __call__(self, x) -> tuple[int, ...]:
        return tuple(c(x) for c in self.components)

    def first(self, x) -> int:
        return self.components[0](x)

    def to_json(self) -> dict:
        return {"vector": [c.to_json() for c in self.components]}


class MemoFunction(IntFunction):
    """Wraps a Python callable with a lock-protected memo table."""

    def __init__(self, arity: int, fn: Callable, dim: int = 1, name: str = "fn", recipe: dict | None = None):
        self.arity = arity
        self.dim = dim
        self.name = name
        self.recipe = recipe
        self._fn = fn
        self._memo: dict = {}
        self._lock = threading.Lock()

    def __call__(self, x):
        x = _tup(x)
        with self._lock:
            if x in self._memo:
                return self._memo[x]
        v = self._fn(x)
        with self._lock:
            self._memo[x] = v
        return v

    def __repr__(self):
        return f"MemoFunction({self.name})"

    def to_json(self) -> dict:
        if self.recipe is None:
            return super().to_json()
        return self.recipe


class Shifted(IntFunction):
    """``x -> f(x + offset)``."""

    def __init__(self, f: IntFunction, offset: Sequence[int]):
        self.f = f
        self.offset = tuple(offset)
        self.arity = f.arity
        self.dim = f.dim

    def __call__(self, x):
        return self.f(tuple(a + b for a, b in zip(_tup(x), self.offset)))


def absolute_exponential(base: int) -> MemoFunction:
    """``m -> base ** |m|`` on Z."""
    return MemoFunction(1, lambda x: base ** abs(x[0]), name=f"{base}^|m|",
                        recipe={"exp_abs": base})


def odd_prime_table(extent: int) -> Table:
    """``m -> p_|m|`` for |m| <= extent, p_k the k-th odd prime (p_1 = 3); p_0 unused but set to 1."""
    need = extent + 1
    primes: list[int] = []
    n = 3
    while len(primes) < need:
        if all(n % p for p in primes if p * p <= n):
            primes.append(n)
        n += 2
    mapping = {m: (primes[abs(m) - 1] if m else 1) for m in range(-extent, extent + 1)}
    return Table.from_mapping(1, mapping)


def nth_odd_prime(k: int) -> int:
    """p_k with p_1 = 3, p_2 = 5, ...; p_0 is taken to be 1."""
    if k <= 0:
        return 1
    n, count = 1, 0
    while count < k:
        n += 2
        if all(n % d for d in range(3, math.isqrt(n) + 1, 2)):
            count += 1
    return n


def odd_prime_sequence() -> MemoFunction:
    """``m -> p_|m|`` on Z, unbounded and memoised."""
    return MemoFunction(1, lambda x: nth_odd_prime(abs(x[0])), name="p_|m|",
                        recipe={"odd_prime": True})
