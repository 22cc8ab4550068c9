import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from addcomp.functions import IntPolynomial, VectorFunction
from addcomp.group import SublatticeSpec, Window
from addcomp.moderation import (
    ball_moderation,
    check_moderation,
    pair_bound,
    poly_moderation,
    remark_chain,
    subgroup_valued_moderation,
    univariate_sup,
)

T2 = IntPolynomial.univariate([0, 0, 1])
SQ2 = IntPolynomial.power_sum(2, 2)


def direct_ball_value(u, x):
    """-max u over integer y with (y + x)^2 < x^2 + 1, by a plain scan."""
    r = abs(x[0]) + 2
    best = max(u((y,)) for y in range(-x[0] - r, -x[0] + r + 1) if (y + x[0]) ** 2 < x[0] ** 2 + 1)
    return -best


def test_ball_moderation_of_square_is_minus_four_t_squared():
    v, _ = ball_moderation(T2)
    for t in range(-50, 51):
        assert v((t,)) == -4 * t * t == direct_ball_value(T2, (t,))


def test_ball_bound_holds():
    v, bound = ball_moderation(T2)
    rep = check_moderation(T2, v, Window.parse("-10..10"), Window.parse("-60..60"), bound)
    assert rep.ok


def test_pair_bound_values():
    assert pair_bound(T2, IntPolynomial.univariate([0, 0, -2]))((7,)) == 2 * 49
    b = pair_bound(SQ2, IntPolynomial.power_sum(2, 2, -2))
    assert b((3, -2)) == 2 * (9 + 4)
    assert pair_bound(T2, IntPolynomial.univariate([0, 0, -3]))((5,)) == (3 * 25) // 2


def test_univariate_sup():
    assert univariate_sup({2: -1, 1: 4}) == 4
    with pytest.raises(ValueError):
        univariate_sup({2: 1})


def test_poly_moderation_is_sound():
    u = IntPolynomial.from_dict(2, {(2, 1): 3, (0, 3): -1, (0, 0): 5})
    v, bound = poly_moderation(u)
    rep = check_moderation(u, v, Window.parse("-4..4,-4..4"), Window.parse("-30..30,-30..30"), bound)
    assert rep.ok and not rep.violations


def test_anti_example_is_unbounded():
    rep = check_moderation(T2, T2, Window.parse("-2..2"), Window.parse("-20..20"))
    assert len(rep.unbounded) == len(rep.rows)
    assert not rep.ok


def test_vector_moderation_componentwise():
    u = VectorFunction((SQ2, IntPolynomial.power_sum(2, 3)))
    v, bound = poly_moderation(u)
    assert v.dim == 2
    rep = check_moderation(u, v, Window.parse("-3..3,-3..3"), Window.parse("-20..20,-20..20"), bound)
    assert rep.ok


def test_subgroup_valued_moderation():
    v = IntPolynomial.univariate([0, 0, -2])
    vp, b = subgroup_valued_moderation(v, SublatticeSpec.of((3,)), pair_bound(T2, v))
    for t in range(-10, 11):
        assert vp((t,)) % 3 == 0
        assert 0 <= v((t,)) - vp((t,)) < 3
    assert b((4,)) == 2 * 16 + 2


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-6, 6).filter(bool), min_size=1, max_size=3),
       st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_remark_chain_on_nonzero_coordinates(x, exps):
    exps = exps[: len(x)]
    chain = remark_chain(x, exps)
    assert all(a <= b for a, b in zip(chain, chain[1:]))


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=1, max_size=3),
       st.lists(st.integers(0, 3), min_size=3, max_size=3))
def test_remark_chain_endpoints_everywhere(x, exps):
    exps = exps[: len(x)]
    if sum(exps) == 0:
        return
    # the averaged endpoint can fail at zero coordinates (x = (0, 1), I = (0, 1));
    # the moderation construction only needs the un-averaged sum
    chain = remark_chain(x, exps)
    assert abs(chain[0]) <= len(x) * chain[-1]


def test_averaged_endpoint_fails_at_a_zero_coordinate():
    chain = remark_chain((0, 1), (0, 1))
    assert chain[0] > chain[-1]
