"""Minimal additive complements in finitely generated abelian groups."""

from .catalog import catalog_ids, named_sets
from .constructions import (
    coset_lift,
    graph_min_complement,
    rotated_truncated_sets,
    subgroup_restrict,
    thm511_max_set,
)
from .engine import (
    COVERED,
    MINIMAL,
    NOT_COVERED,
    UNVERIFIED,
    is_complement_on_window,
    minimality_witnesses,
    shrink_complement_demo,
    sumset_window,
)
from .functions import IntPolynomial, RationalPolyFloor, Table, VectorFunction
from .group import FiniteSubgroup, GroupSpec, SublatticeSpec, UnimodularBasis, Window
from .moderation import ball_moderation, check_moderation, pair_bound, poly_moderation
from .sets import contains, enumerate_in_window

__version__ = "0.1.0"

__all__ = [
    "COVERED",
    "FiniteSubgroup",
    "GroupSpec",
    "IntPolynomial",
    "MINIMAL",
    "NOT_COVERED",
    "RationalPolyFloor",
    "SublatticeSpec",
    "Table",
    "UNVERIFIED",
    "UnimodularBasis",
    "VectorFunction",
    "Window",
    "ball_moderation",
    "catalog_ids",
    "check_moderation",
    "contains",
    "coset_lift",
    "enumerate_in_window",
    "graph_min_complement",
    "is_complement_on_window",
    "minimality_witnesses",
    "named_sets",
    "pair_bound",
    "poly_moderation",
    "rotated_truncated_sets",
    "shrink_complement_demo",
    "subgroup_restrict",
    "sumset_window",
    "thm511_max_set",
]
