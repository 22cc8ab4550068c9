import pytest

from addcomp.catalog import named_sets
from addcomp.functions import IntPolynomial
from addcomp.group import GroupError, SublatticeSpec, UnimodularBasis, Window, free_group
from addcomp.sets import (
    ABOVE,
    BELOW,
    BOX_FILL,
    MAX_FILL,
    CoFinite,
    Finite,
    FullGroup,
    Lattice,
    RayComplement,
    Spiked,
    Thm511Set,
    TruncatedColumns,
    basis_image,
    contains,
    empty,
    enumerate_in_window,
    translate,
    union,
)

from helpers import window_agreement

Z1, Z2 = free_group(1), free_group(2)
T2 = IntPolynomial.univariate([0, 0, 1])


def test_finite_and_cofinite():
    F = Finite(Z2, [(0, 0), (1, 2)])
    assert contains(F, (1, 2)) and not contains(F, (2, 1))
    C = CoFinite(Z2, frozenset([(0, 0)]))
    assert not C.contains((0, 0)) and C.contains((5, 5))
    assert enumerate_in_window(empty(Z2), Window.parse("-2..2,-2..2")) == []


def test_ray_complement():
    W = RayComplement(Z2, (0, 0))
    assert W.contains((0, 0)) and not W.contains((0, 1)) and W.contains((1, 5))


def test_truncated_columns_sides():
    below = TruncatedColumns(FullGroup(Z1), T2, BELOW)
    above = TruncatedColumns(FullGroup(Z1), T2, ABOVE)
    assert below.contains((2, 3)) and not below.contains((2, 4))
    assert above.contains((2, 5)) and not above.contains((2, 4))


def test_spiked_fills():
    W = Spiked(Finite(Z1, [(0,)]), T2, MAX_FILL)
    assert W.contains((0, 10 ** 9)) and W.contains((3, 8)) and not W.contains((3, 9))
    u = IntPolynomial.univariate([1])
    from addcomp.functions import VectorFunction

    vec = VectorFunction((T2, u))
    B = Finite(Z1, [(0,)])
    box = Spiked(B, vec, BOX_FILL)
    mx = Spiked(B, vec, MAX_FILL)
    # (3, 8, 5): first coordinate below 9, second not below 1
    assert mx.contains((3, 8, 5)) and not box.contains((3, 8, 5))
    w = Window.parse("-2..2,-3..9,-2..2")
    assert set(box.enumerate(w)) <= set(mx.enumerate(w))


def test_thm511_set():
    X = Thm511Set(Finite(Z1, [(0,)]), T2, SublatticeSpec.of((3,)), (1,))
    assert X.contains((0, 100))
    assert X.contains((2, 3))       # below u
    assert X.contains((2, 5))       # not in 1 + 3Z
    assert not X.contains((2, 4))   # in 1 + 3Z at height >= 4


def test_translate_union_basis_image():
    F = Finite(Z2, [(0, 0)])
    assert translate(F, (2, 3)).contains((2, 3))
    U = union(F, Finite(Z2, [(1, 1)]))
    assert U.contains((1, 1)) and U.contains((0, 0))
    B = basis_image(Finite(Z2, [(1, 0)]), UnimodularBasis.of((1, 1), (0, 1)))
    assert B.contains((1, 0))
    L = Lattice(Z2, SublatticeSpec.of((2, 0), (0, 2)))
    assert L.contains((2, -4)) and not L.contains((1, 0))


def test_mixed_groups_rejected():
    with pytest.raises((GroupError, ValueError)):
        union(Finite(Z1, [(0,)]), Finite(Z2, [(0, 0)]))


def test_catalog_sets_have_expected_points():
    assert named_sets("cor4.8-M").contains((3, -18))
    # the origin lies on the rotated parabola, so on neither side
    assert not named_sets("cor3.5-W-").contains((0, 0))
    assert not named_sets("cor3.5-W+").contains((0, 0))
    assert named_sets("fig8-W").contains((5, 5))


def test_membership_enumeration_agreement():
    assert window_agreement(150, seed=11) == []
