from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from poissonk.linalg import det, identity, integer_inverse, inverse, matmul

square3 = st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3)


@settings(max_examples=150, deadline=None)
@given(square3, square3)
def test_det_multiplicative(a, b):
    assert det(matmul(a, b)) == det(a) * det(b)


@settings(max_examples=150, deadline=None)
@given(square3)
def test_inverse(a):
    if det(a) == 0:
        return
    assert matmul(a, inverse(a)) == identity(3)


def test_integer_inverse():
    a = [[2, 1], [1, 1]]
    assert integer_inverse(a) == [[1, -1], [-1, 2]]
    with pytest.raises(ValueError):
        integer_inverse([[2, 0], [0, 1]])


def test_det_examples():
    assert det([[Fraction(1, 2), 0], [0, 4]]) == 2
    assert det([[0, 1], [1, 0]]) == -1
