import math
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from addcomp.exact import QuadraticNumber, floor_quadratic, sign_quadratic, sqrt_power


def _approx(a, b, n):
    # 60 digits of sqrt(n) via integer square root
    scale = 10 ** 60
    r = Fraction(math.isqrt(n * scale * scale), scale)
    return a + b * r


@settings(max_examples=200, deadline=None)
@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50), st.sampled_from([2, 3, 5, 7, 10, 13]))
def test_sign_and_floor_match_high_precision(a, b, n):
    x = _approx(a, b, n)
    s = sign_quadratic(a, b, n)
    if abs(x) > Fraction(1, 10 ** 40):
        assert s == (1 if x > 0 else -1)
    f = floor_quadratic(a, b, n)
    assert f <= x + Fraction(1, 10 ** 40) and x < f + 1


def test_exact_zero_and_square_radicand():
    assert sign_quadratic(Fraction(0), Fraction(0), 2) == 0
    assert floor_quadratic(Fraction(1, 2), Fraction(1), 4) == 2


def test_sqrt_power():
    s = sqrt_power(2, 2)
    assert (s.rat, s.irr) == (2, 0)
    inv = sqrt_power(-1, 2)
    prod = inv * sqrt_power(1, 2)
    assert (prod.rat, prod.irr) == (1, 0)
    assert isinstance(prod, QuadraticNumber)
