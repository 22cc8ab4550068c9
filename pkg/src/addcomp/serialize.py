"""JSON descriptors for functions, bounds and symbolic sets.

Functions use the shapes their ``to_json`` methods emit (``{"poly": ...}``,
``{"ratpoly": ...}``, ...).  Sets are ``{"kind": ..., ...}`` objects; a
``{"kind": "catalog", "id": ...}`` node pulls a named set.  Both directions
are provided so recipes can be written out and replayed.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .functions import (
    IntFunction,
    IntPolynomial,
    RationalPolyFloor,
    Table,
    VectorFunction,
    absolute_exponential,
    odd_prime_sequence,
)
from .group import GroupError, GroupSpec, SublatticeSpec, UnimodularBasis
from .moderation import (
    ModerationBound,
    ball_moderation,
    pair_bound,
    poly_moderation,
    subgroup_valued_moderation,
)
from .sets import (
    BasisImage,
    BoundedSpiked,
    CoFinite,
    ColumnProgression,
    Finite,
    FullGroup,
    Graph,
    Lattice,
    RayComplement,
    Spiked,
    SymbolicSet,
    Thm511Set,
    Translate,
    TruncatedColumns,
    Union,
)


class DescriptorError(ValueError):
    pass


def _tuple(v):
    return tuple(int(a) for a in v)


def _value(v):
    return _tuple(v) if isinstance(v, list) else int(v)


# --------------------------------------------------------------------------
# functions


def function_from_json(d) -> IntFunction:
    if not isinstance(d, dict):
        raise DescriptorError(f"function descriptor must be an object, got {d!r}")
    try:
        if "poly" in d:
            return IntPolynomial(int(d["arity"]), tuple((_tuple(e), int(c)) for e, c in d["poly"]))
        if "ratpoly" in d:
            return RationalPolyFloor(
                int(d["arity"]),
                tuple((_tuple(e), Fraction(c)) for e, c in d["ratpoly"]),
                d.get("mode", "floor"),
                tuple((_tuple(k), Fraction(v)) for k, v in d.get("overrides", ())),
            )
        if "table" in d:
            default = d.get("default")
            return Table(int(d["arity"]), tuple((_tuple(k), _value(v)) for k, v in d["table"]),
                         None if default is None else _value(default), int(d.get("dim", 1)))
        if "vector" in d:
            return VectorFunction(tuple(function_from_json(c) for c in d["vector"]))
        if "exp_abs" in d:
            return absolute_exponential(int(d["exp_abs"]))
        if "odd_prime" in d:
            return odd_prime_sequence()
        if "rotated_u" in d:
            return _rotated_u(d["rotated_u"])
        if "ball_moderation" in d:
            return ball_moderation(function_from_json(d["ball_moderation"]))[0]
        if "poly_moderation" in d:
            return poly_moderation(function_from_json(d["poly_moderation"]))[0]
        if "subgroup_valued" in d:
            v = function_from_json(d["subgroup_valued"])
            return subgroup_valued_moderation(v, _sublattice(d["sub"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DescriptorError):
            raise
        raise DescriptorError(f"bad function descriptor {d!r}: {exc}") from exc
    raise DescriptorError(f"unknown function descriptor keys {sorted(d)}")


def function_to_json(f: IntFunction) -> dict:
    return f.to_json()


def _rotated_u(d) -> IntFunction:
    from .constructions import rotated_truncated_sets

    f = function_from_json(d["f"])
    mode = d["mode"]
    side = "below" if mode == "ceil" else "above"
    S = rotated_truncated_sets(f, int(d["a"]), int(d["b"]), side, include_axis=(mode == "neg_floor"))
    inner = S.inner
    return inner.u


def bound_from_json(d) -> ModerationBound:
    kind = d.get("kind")
    if kind == "pair":
        return pair_bound(function_from_json(d["u"]), function_from_json(d["v"]))
    if kind == "poly":
        return poly_moderation(function_from_json(d["u"]))[1]
    if kind == "ball":
        return ball_moderation(function_from_json(d["u"]))[1]
    if kind == "shifted":
        inner = bound_from_json(d["inner"])
        shift = int(d["shift"])
        return ModerationBound(lambda x0: inner(x0) + shift, inner.kind,
                               f"{inner.description}, plus {shift} for the coset shift", d)
    raise DescriptorError(f"unknown bound kind {kind!r}")


# --------------------------------------------------------------------------
# sets


def _group(d, default: GroupSpec | None = None) -> GroupSpec:
    g = d.get("group")
    if g is None:
        if default is None:
            raise DescriptorError("missing group")
        return default
    if isinstance(g, str):
        return GroupSpec.parse(g)
    return GroupSpec.from_json(g)


def _sublattice(basis) -> SublatticeSpec:
    if isinstance(basis, dict):
        basis = basis["basis"]
    return SublatticeSpec.of(*basis)


def set_from_json(d, group: GroupSpec | None = None) -> SymbolicSet:
    """Build a set from its descriptor; ``group`` is the fallback ambient group."""
    if not isinstance(d, dict) or "kind" not in d:
        raise DescriptorError(f"set descriptor needs a 'kind': {d!r}")
    try:
        return _set_from_json(d, group)
    except DescriptorError:
        raise
    except (KeyError, TypeError, ValueError, GroupError) as exc:
        raise DescriptorError(f"bad {d['kind']!r} descriptor: {exc}") from exc


def _set_from_json(d, group):
    from .catalog import CatalogError, named_sets

    kind = d["kind"]
    if kind == "catalog":
        try:
            return named_sets(d["id"])
        except CatalogError as exc:
            raise DescriptorError(str(exc)) from exc
    if kind == "finite":
        return Finite(_group(d, group), (_tuple(e) for e in d["elements"]))
    if kind == "full":
        return FullGroup(_group(d, group))
    if kind == "cofinite":
        return CoFinite(_group(d, group), frozenset(_tuple(e) for e in d["excluded"]))
    if kind == "ray_complement":
        return RayComplement(_group(d, group), _tuple(d["base"]), int(d.get("axis", 1)), int(d.get("start", 1)))
    if kind == "lattice":
        sub = _sublattice(d["basis"])
        return Lattice(sub.ambient, sub)
    if kind == "truncated":
        return TruncatedColumns(set_from_json(d["A"]), function_from_json(d["u"]), d.get("side", "below"))
    if kind == "spiked":
        return Spiked(set_from_json(d["base"]), function_from_json(d["u"]), d.get("fill", "max"))
    if kind == "thm511":
        return Thm511Set(set_from_json(d["base"]), function_from_json(d["u"]),
                         _sublattice(d["sub"]), _tuple(d["g2"]))
    if kind == "progression":
        return ColumnProgression(set_from_json(d["domain"]), function_from_json(d["modulus"]))
    if kind == "graph":
        M = set_from_json(d["M"])
        v = function_from_json(d["v"])
        u = function_from_json(d["u"]) if "u" in d else None
        if "bound" in d:
            bound = bound_from_json(d["bound"])
        elif u is not None:
            try:
                bound = pair_bound(u, v)
            except (TypeError, ValueError):
                bound = None
        else:
            bound = None
        return Graph(M, v, bound=bound, moderates=u)
    if kind == "translate":
        return Translate(set_from_json(d["inner"], group), _tuple(d["g"]))
    if kind == "union":
        return Union(tuple(set_from_json(p, group) for p in d["parts"]))
    if kind == "basis_image":
        return BasisImage(set_from_json(d["inner"]), UnimodularBasis.of(*d["U"]))
    if kind == "bounded_spiked":
        phi = UnimodularBasis.of(*d["phi"]) if "phi" in d else None
        return BoundedSpiked(set_from_json(d["base"]), function_from_json(d["u"]),
                             d["g1_basis"], d["g2_basis"], phi, d.get("fill", "max"))
    if kind in ("rotated", "rotated_direct"):
        from .constructions import RotatedDirect, rotated_truncated_sets

        f = function_from_json(d["f"])
        args = (f, int(d["a"]), int(d["b"]), d["side"], bool(d.get("axis", False)))
        return rotated_truncated_sets(*args) if kind == "rotated" else RotatedDirect(*args)
    raise DescriptorError(f"unknown set kind {kind!r}")


def set_to_json(S: SymbolicSet) -> dict:
    from .constructions import RotatedDirect

    if isinstance(S, Finite):
        return {"kind": "finite", "group": S.group.to_json(), "elements": [list(e) for e in sorted(S.elements)]}
    if isinstance(S, FullGroup):
        return {"kind": "full", "group": S.group.to_json()}
    if isinstance(S, CoFinite):
        return {"kind": "cofinite", "group": S.group.to_json(), "excluded": [list(e) for e in sorted(S.excluded)]}
    if isinstance(S, RayComplement):
        return {"kind": "ray_complement", "group": S.group.to_json(), "base": list(S.base),
                "axis": S.axis, "start": S.start}
    if isinstance(S, Lattice):
        return {"kind": "lattice", "basis": [list(b) for b in S.sub.basis]}
    if isinstance(S, TruncatedColumns):
        return {"kind": "truncated", "A": set_to_json(S.A), "u": S.u.to_json(), "side": S.sign}
    if isinstance(S, Spiked):
        return {"kind": "spiked", "base": set_to_json(S.base), "u": S.u.to_json(), "fill": S.fill}
    if isinstance(S, Thm511Set):
        return {"kind": "thm511", "base": set_to_json(S.base), "u": S.u.to_json(),
                "sub": [list(b) for b in S.sub.basis], "g2": list(S.g2)}
    if isinstance(S, ColumnProgression):
        return {"kind": "progression", "domain": set_to_json(S.domain), "modulus": S.modulus.to_json()}
    if isinstance(S, Graph):
        out = {"kind": "graph", "M": set_to_json(S.M), "v": S.v.to_json()}
        if S.moderates is not None:
            out["u"] = S.moderates.to_json()
        if S.bound is not None and S.bound.recipe is not None:
            out["bound"] = S.bound.recipe
        return out
    if isinstance(S, Translate):
        return {"kind": "translate", "inner": set_to_json(S.inner), "g": list(S.g)}
    if isinstance(S, Union):
        return {"kind": "union", "parts": [set_to_json(p) for p in S.parts]}
    if isinstance(S, BoundedSpiked):
        return {"kind": "bounded_spiked", "base": set_to_json(S.inner.base), "u": S.u_raw.to_json(),
                "g1_basis": [list(b) for b in S.g1_basis], "g2_basis": [list(b) for b in S.g2_basis],
                "phi": S.phi.to_json(), "fill": S.inner.fill}
    if isinstance(S, BasisImage):
        return {"kind": "basis_image", "inner": set_to_json(S.inner), "U": S.U.to_json()}
    if isinstance(S, RotatedDirect):
        return {"kind": "rotated_direct", "f": S.f.to_json(), "a": S.a, "b": S.b, "side": S.side,
                "axis": S.include_axis}
    raise TypeError(f"{type(S).__name__} has no JSON form")


def load_json(path) -> object:
    return json.loads(Path(path).read_text())


def load_set(path_or_obj, group: GroupSpec | None = None) -> SymbolicSet:
    """A set from a descriptor object, a JSON file path, or a catalog id string.

    Build outputs (``{"recipe": ..., "result": {...}}``) load as their result.
    """
    if not isinstance(path_or_obj, dict):
        text = str(path_or_obj)
        p = Path(text)
        if p.suffix != ".json" and not p.exists():
            return set_from_json({"kind": "catalog", "id": text})
        path_or_obj = load_json(p)
    if isinstance(path_or_obj, dict) and "kind" not in path_or_obj and "result" in path_or_obj:
        path_or_obj = path_or_obj["result"]
    return set_from_json(path_or_obj, group)


def dumps(obj) -> str:
    """Stable JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, default=_default) + "\n"


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    if hasattr(o, "item"):
        return o.item()
    raise TypeError(f"cannot serialise {type(o).__name__}")


__all__ = [
    "DescriptorError",
    "bound_from_json",
    "dumps",
    "function_from_json",
    "function_to_json",
    "load_json",
    "load_set",
    "set_from_json",
    "set_to_json",
]
