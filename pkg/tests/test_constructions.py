import pytest

from addcomp import engine
from addcomp.constructions import (
    Rotation,
    RotatedDirect,
    coset_lift,
    graph_min_complement,
    rotated_truncated_sets,
    subgroup_restrict,
    thm511_max_set,
)
from addcomp.functions import IntPolynomial, RationalPolyFloor
from addcomp.group import FiniteSubgroup, GroupError, GroupSpec, SublatticeSpec, Window, free_group
from addcomp.oracle import FiniteGroupTable
from addcomp.sets import ABOVE, BELOW, Finite, FullGroup, Graph

Z1 = free_group(1)
T2 = IntPolynomial.univariate([0, 0, 1])
PARABOLA = RationalPolyFloor.univariate({2: 1})
INV_SQ = RationalPolyFloor.univariate({-2: 1}, overrides={0: 3})


def disagreements(f, a, b, side, axis, half):
    S = rotated_truncated_sets(f, a, b, side, include_axis=axis)
    D = RotatedDirect(f, a, b, side, axis)
    w = Window.parse(f"-{half}..{half},-{half}..{half}")
    return [p for p in w.points() if S.contains(p) != D.contains(p)]


@pytest.mark.parametrize("a,b", [(1, 1), (0, 1), (1, 0), (2, 3), (-1, 2), (3, 4)])
@pytest.mark.parametrize("side", [ABOVE, BELOW])
@pytest.mark.parametrize("axis", [False, True])
def test_rotated_pipeline_matches_direct(a, b, side, axis):
    assert disagreements(PARABOLA, a, b, side, axis, 8) == []


@pytest.mark.parametrize("side", [ABOVE, BELOW])
def test_rotated_pipeline_with_a_pole(side):
    assert disagreements(INV_SQ, 1, 2, side, False, 8) == []


def test_rotation_coordinates():
    r = Rotation.of(2, 3)
    assert r.b * r.p - r.a * r.q == -1
    assert r.N == 13


def test_graph_min_complement_attaches_bound():
    B = Finite(Z1, [(0,)])
    rec = graph_min_complement(B, FullGroup(Z1), IntPolynomial.univariate([0, 0, -2]), T2)
    assert isinstance(rec.result, Graph) and rec.result.bound((5,)) == 50


def test_coset_lift_in_finite_group():
    G = GroupSpec.parse("Z4xZ2")
    H = FiniteSubgroup.generated(G, [(1, 0)])
    W = [(0, 0), (1, 0)]
    MH = Finite(G, [(0, 0), (2, 0)])
    lifted = coset_lift(MH, H, [(0, 0), (3, 1)], G)
    T = FiniteGroupTable(G)
    assert T.is_minimal(T.mask(W), T.mask(lifted.elements))
    with pytest.raises(GroupError):
        coset_lift(MH, H, [(0, 0), (1, 0)], G)


def test_subgroup_restrict():
    G = GroupSpec.parse("Z6")
    H = FiniteSubgroup.generated(G, [(2,)])
    assert subgroup_restrict(Finite(G, [(0,), (1,), (4,)]), H).elements == frozenset({(0,), (4,)})
    assert subgroup_restrict(FullGroup(G), H).elements == frozenset(H.elements)
    M = Graph(FullGroup(Z1), IntPolynomial.univariate([0, 0, -2]))
    L = SublatticeSpec.of((2, 0), (0, 2))
    R = subgroup_restrict(M, L, scan=Window.parse("-4..4"))
    assert R.elements == frozenset({(t, -2 * t * t) for t in (-4, -2, 0, 2, 4)})
    with pytest.raises(GroupError):
        subgroup_restrict(M, L)


def test_thm511_builds_a_complement():
    B = Finite(Z1, [(0,)])
    rec = thm511_max_set(B, T2, SublatticeSpec.of((3,)), (1,), FullGroup(Z1), IntPolynomial.univariate([0, 0, -2]))
    X, C = rec.extra["X"], rec.result
    assert all(C.v((t,)) % 3 == 0 for t in range(-5, 6))
    cert = engine.is_complement_on_window(X, C, Window.parse("-6..6,-6..6"))
    assert cert.status == engine.COVERED
    g2 = thm511_max_set(B, T2, SublatticeSpec.of((3,)), (4,), FullGroup(Z1), IntPolynomial.univariate([0, 0, -2]))
    assert g2.inputs["g2"] == (1,) and g2.notes
