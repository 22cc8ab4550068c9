from fractions import Fraction

import numpy as np
import pytest

from addcomp.functions import (
    IntPolynomial,
    RationalPolyFloor,
    Table,
    VectorFunction,
    absolute_exponential,
    nth_odd_prime,
    odd_prime_sequence,
)


def test_polynomial_evaluation():
    p = IntPolynomial.power_sum(2, 2, -2)
    assert p((3, -1)) == -20
    xs = [np.array([3, 0]), np.array([-1, 2])]
    assert list(p.evaluate_array(xs)) == [-20, -8]
    assert p.degree == 2


def test_polynomial_exact_for_huge_inputs():
    p = IntPolynomial.univariate([0, 0, 0, 0, 1])
    assert p((10 ** 12,)) == 10 ** 48


def test_rational_floor_modes():
    f = RationalPolyFloor.univariate({-2: 1}, overrides={0: 3})
    assert f((0,)) == 3
    assert f((2,)) == 0
    assert f.with_mode("ceil")((2,)) == 1
    assert f.real_value((3,)) == Fraction(1, 9)


def test_table_and_vector():
    t = Table.from_mapping(1, {0: 5, 1: 7})
    assert t((1,)) == 7
    with pytest.raises(KeyError):
        t((2,))
    v = VectorFunction((IntPolynomial.univariate([1]), IntPolynomial.univariate([0, 1])))
    assert v((4,)) == (1, 4)
    assert v.first((4,)) == 1


def test_sequences():
    assert [nth_odd_prime(k) for k in range(5)] == [1, 3, 5, 7, 11]
    assert odd_prime_sequence()((-3,)) == 7
    assert absolute_exponential(3)((-2,)) == 9
