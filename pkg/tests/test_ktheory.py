import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from poissonk.cohomology import blow_up, build_surface
from poissonk.errors import ValidationError
from poissonk.linalg import det
from poissonk.ktheory import (chi_gram, dual, euler_chi, expected_dim, from_ch, from_chern,
                              gram_and_dual_basis, hilbert_poly, kcup, lattice_basis,
                              line_bundle, mukai_asymmetry, mukai_pair, odd_class, plain_pair, point, primitive,
                              stability_compare, structure_sheaf, universal_obstruction, zero)

P2 = build_surface("P2")
Q = build_surface("P1xP1")
K3 = build_surface("K3")
AB = build_surface("Abelian")


@settings(max_examples=60, deadline=None)
@given(st.integers(-8, 8))
def test_chi_line_bundles_p2(m):
    assert euler_chi(P2, line_bundle(P2, [m])) == (m + 1) * (m + 2) // 2


@settings(max_examples=60, deadline=None)
@given(st.integers(-6, 6), st.integers(-6, 6))
def test_chi_line_bundles_quadric(a, b):
    assert euler_chi(Q, line_bundle(Q, [a, b])) == (a + 1) * (b + 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(-5, 5))
def test_chi_exceptional_multiples(k):
    B = blow_up(P2)
    assert 2 * euler_chi(B, line_bundle(B, [0, k])) == 2 + k - k * k


def test_chi_examples():
    assert euler_chi(P2, line_bundle(P2, [1])) == 3
    assert euler_chi(P2, line_bundle(P2, [-3])) == 1
    assert euler_chi(P2, zero(P2)) == 0
    assert euler_chi(K3, structure_sheaf(K3)) == 2
    assert euler_chi(AB, structure_sheaf(AB)) == 0


def test_dual_and_products():
    v = line_bundle(P2, [2])
    assert dual(v) == line_bundle(P2, [-2])
    assert kcup(P2, line_bundle(P2, [1]), line_bundle(P2, [-3])) == line_bundle(P2, [-2])
    assert kcup(P2, v, zero(P2)).is_zero()
    with pytest.raises(ValidationError):
        dual(odd_class(AB, [1, 0, 0, 0], [0] * 4))


def test_k3_product_formula():
    c, c2 = [1] + [0] * 21, [0, 1] + [0] * 20
    x, y = from_ch(K3, 1, c, Fraction(-1)), from_ch(K3, 1, c2, Fraction(3))
    xy = kcup(K3, x, y)
    assert (xy.r, xy.c1) == (1, tuple(a + b for a, b in zip(c, c2)))
    assert xy.ch2 == -1 + K3.dot(c, c2) + 3


@pytest.mark.parametrize("n", range(0, 6))
def test_mukai_k3(n):
    v = from_ch(K3, 1, [0], -n)
    assert mukai_pair(K3, v, v) == 2 * n - 2


def test_mukai_examples():
    O = structure_sheaf(P2)
    assert mukai_pair(P2, O, O) == -1
    assert mukai_pair(P2, zero(P2), line_bundle(P2, [4])) == 0


def test_plain_pair_on_odd_classes():
    a = odd_class(AB, [1, 0, 0, 0], [0] * 4)
    b = odd_class(AB, [0] * 4, [1, 0, 0, 0])
    assert plain_pair(AB, a, b) == -plain_pair(AB, b, a)
    assert abs(plain_pair(AB, a, b)) == 1


def test_p2_dual_basis():
    O = structure_sheaf(P2)
    L = {k: line_bundle(P2, [k]) for k in range(-3, 1)}
    basis = [L[-1], L[-2], L[-3]]
    gram, dual_basis = gram_and_dual_basis(P2, basis)
    assert dual_basis == [3 * O - 3 * L[-1] + L[-2], L[-1] - 3 * O, O]
    assert chi_gram(P2, dual_basis, basis) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_dual_of_dual_is_the_original_basis():
    basis = [line_bundle(P2, [-1]), line_bundle(P2, [-2]), line_bundle(P2, [-3])]
    _, xs = gram_and_dual_basis(P2, basis)
    _, back = gram_and_dual_basis(P2, xs)
    assert back == basis


def test_dual_basis_rejects_bad_input():
    with pytest.raises(ValidationError):
        gram_and_dual_basis(P2, [structure_sheaf(P2)])
    with pytest.raises(ValidationError):
        gram_and_dual_basis(P2, [structure_sheaf(P2)] * 3)


def test_k3_lattice_basis_gram_unimodular():
    assert abs(det(chi_gram(K3, lattice_basis(K3)))) == 1


def test_primitive():
    assert primitive(from_ch(P2, 1, [0], -3))
    assert not primitive(from_chern(P2, 2, [0], 0))
    assert primitive(from_chern(P2, 2, [1], 0))
    assert not primitive(2 * line_bundle(P2, [1]))
    with pytest.raises(ValidationError):
        primitive(zero(P2))


def test_obstruction():
    for n in range(0, 6):
        assert universal_obstruction(P2, from_ch(P2, 1, [0], -n)) == 1
    assert universal_obstruction(K3, from_chern(K3, 2, [0], 0)) == 2
    assert universal_obstruction(K3, point(K3)) == 1


@pytest.mark.parametrize("n", range(1, 6))
def test_expected_dim(n):
    assert expected_dim(K3, from_ch(K3, 1, [0], -n), 2) == 2 * n
    assert expected_dim(P2, from_ch(P2, 1, [0], -n), 1) == 2 * n


def test_expected_dim_warns_when_not_primitive():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        expected_dim(K3, from_chern(K3, 2, [0], 0), 2)
    assert caught
    with pytest.raises(ValidationError):
        expected_dim(K3, structure_sheaf(K3), 3)


def test_hilbert_polynomials():
    p = hilbert_poly(P2, structure_sheaf(P2), [1])
    assert p.coeffs == (Fraction(1, 2), Fraction(3, 2), 1) and (p.d, p.l0) == (2, 1)
    for n in range(-3, 5):
        assert p(n) == euler_chi(P2, line_bundle(P2, [n]))
    line = hilbert_poly(P2, structure_sheaf(P2) - line_bundle(P2, [-1]), [1])
    assert line.coeffs == (0, 1, 1) and (line.d, line.l0) == (1, 1)
    pts = hilbert_poly(P2, from_chern(P2, 0, [0], -5), [1])
    assert pts.coeffs == (0, 0, 5) and (pts.d, pts.l0) == (0, 5)
    with pytest.raises(ValidationError):
        hilbert_poly(P2, from_chern(P2, 0, [0], 5), [1])


def test_stability_order():
    O = hilbert_poly(P2, structure_sheaf(P2), [1])
    assert stability_compare(O, O) == 0
    ideal = hilbert_poly(P2, from_chern(P2, 1, [0], 1), [1])
    assert stability_compare(O, ideal) == 1
    assert stability_compare(ideal, O) == -1


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(-3, 3), st.integers(-4, 4),
       st.integers(0, 3), st.integers(-3, 3), st.integers(-4, 4))
def test_mukai_bilinear_and_serre_asymmetry(r, d, c, r2, d2, c2):
    v, w = from_chern(P2, r, [d], c), from_chern(P2, r2, [d2], c2)
    assert mukai_pair(P2, v + w, v) == mukai_pair(P2, v, v) + mukai_pair(P2, w, v)
    assert mukai_asymmetry(P2, v, w) == -3 * (r * d2 - r2 * d)


@settings(max_examples=100, deadline=None)
@given(st.integers(-3, 3), st.lists(st.integers(-2, 2), min_size=6, max_size=6),
       st.integers(-4, 4), st.integers(-3, 3),
       st.lists(st.integers(-2, 2), min_size=6, max_size=6), st.integers(-4, 4))
def test_mukai_symmetric_when_k_vanishes(r, d, c, r2, d2, c2):
    v, w = from_chern(AB, r, d, c), from_chern(AB, r2, d2, c2)
    assert mukai_pair(AB, v, w) == mukai_pair(AB, w, v)
    assert mukai_asymmetry(AB, v, w) == 0
