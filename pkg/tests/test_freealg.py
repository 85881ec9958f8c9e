import random

import pytest
from hypothesis import given, strategies as st

from nichols_lift.errors import FieldMismatch, NotHomogeneous
from nichols_lift.freealg import (
    Poly,
    bicharacter,
    braided_commutator,
    deglex_compare,
    degree_of,
    multiply,
)
from nichols_lift.scalars import make_field

from conftest import matrix, rand_matrix

F6 = make_field(6)


def y(i, F=F6, theta=2):
    return Poly.gen(F, theta, i)


def test_deglex_examples():
    assert deglex_compare((0, 1), (1, 0)) == -1
    assert deglex_compare((0,), (0, 0)) == -1
    assert deglex_compare((1, 0), (0, 1), order=(1, 0)) == -1
    assert deglex_compare((0, 1, 1), (0, 1, 1)) == 0


def test_multiply_examples():
    x1, x2 = y(0), y(1)
    assert multiply(x1, x2) == Poly.word(F6, 2, (0, 1))
    assert multiply(x1 + x2, x1) == Poly.word(F6, 2, (0, 0)) + Poly.word(F6, 2, (1, 0))
    assert multiply(x1 - x1, x2 + 3).is_zero()
    with pytest.raises(FieldMismatch):
        multiply(x1, Poly.gen(make_field(3), 2, 0))


def test_bicharacter_examples():
    q = matrix(6, [[1, 2], [3, 5]])
    assert bicharacter(q, (1, 0), (0, 1)) == q[0, 1]
    assert bicharacter(q, (2, 1), (0, 1)) == q[0, 1] ** 2 * q[1, 1]
    assert bicharacter(q, (3, 4), (0, 0)).is_one()


def test_braided_commutator_examples():
    q = matrix(6, [[1, 2], [3, 5]])
    x1, x2 = y(0), y(1)
    q11, q12 = q[0, 0], q[0, 1]
    x12 = Poly.word(F6, 2, (0, 1))
    x21 = Poly.word(F6, 2, (1, 0))
    assert braided_commutator(x1, x2, q) == x12 - x21.scale(q12)
    assert braided_commutator(x1, x1, q) == Poly.word(F6, 2, (0, 0)).scale(1 - q11)
    nested = braided_commutator(x1, braided_commutator(x1, x2, q), q)
    expect = (Poly.word(F6, 2, (0, 0, 1))
              - Poly.word(F6, 2, (0, 1, 0)).scale(q12 * (1 + q11))
              + Poly.word(F6, 2, (1, 0, 0)).scale(q11 * q12 ** 2))
    assert nested == expect


def test_braided_commutator_rejects_mixed_degrees():
    q = matrix(6, [[1, 2], [3, 5]])
    with pytest.raises(NotHomogeneous):
        braided_commutator(y(0) + y(1), y(0), q)


def test_degree_examples():
    assert degree_of(Poly.word(F6, 2, (0, 1, 0))) == (2, 1)
    assert degree_of(y(0) + y(1)) is None
    assert degree_of(y(0).zero()) is None
    assert degree_of(Poly.const(F6, 2, 5)) == (0, 0)


# -- properties ------------------------------------------------------------------

F12 = make_field(12)


@st.composite
def homogeneous(draw, theta=2):
    deg = draw(st.lists(st.integers(0, 2), min_size=theta, max_size=theta).filter(any))
    letters = [i for i, d in enumerate(deg) for _ in range(d)]
    out = Poly(F12, theta)
    for _ in range(draw(st.integers(1, 3))):
        w = tuple(draw(st.permutations(letters)))
        out = out + Poly.word(F12, theta, w, draw(st.integers(-3, 3)))
    return out


@st.composite
def polys(draw, theta=2):
    out = Poly(F12, theta)
    for _ in range(draw(st.integers(0, 4))):
        w = tuple(draw(st.lists(st.integers(0, theta - 1), max_size=3)))
        out = out + Poly.word(F12, theta, w, draw(st.integers(-3, 3)))
    return out


@given(homogeneous(), homogeneous(), st.integers(0, 2 ** 31))
def test_commutator_expansion_identity(u, v, seed):
    q = rand_matrix(F12, 2, random.Random(seed))
    if u.is_zero() or v.is_zero():
        return
    chi = bicharacter(q, u.degree(), v.degree())
    assert braided_commutator(u, v, q) + (v * u).scale(chi) == u * v
    c = braided_commutator(u, v, q)
    if not c.is_zero():
        assert c.degree() == tuple(a + b for a, b in zip(u.degree(), v.degree()))


@given(homogeneous(), homogeneous(), homogeneous(), st.integers(0, 2 ** 31))
def test_commutator_bilinear(u, v, w, seed):
    q = rand_matrix(F12, 2, random.Random(seed))
    if u.is_zero() or v.is_zero() or w.is_zero() or v.degree() != w.degree():
        return
    s = v + w
    if s.is_zero():
        return
    assert braided_commutator(u, s, q) == braided_commutator(u, v, q) + braided_commutator(u, w, q)


@given(polys(), polys(), polys())
def test_multiplication_associative_with_unit(a, b, c):
    one = Poly.const(F12, 2, 1)
    assert (a * b) * c == a * (b * c)
    assert a * one == a == one * a
    assert a * (b + c) == a * b + a * c


words = st.lists(st.integers(0, 2), max_size=5).map(tuple)


@given(words, words, words, st.permutations([0, 1, 2]))
def test_deglex_is_a_monomial_order(u, v, w, order):
    c = deglex_compare(u, v, order)
    assert deglex_compare(v, u, order) == -c
    if c < 0:
        assert deglex_compare(w + u, w + v, order) < 0
        assert deglex_compare(u + w, v + w, order) < 0
    assert (c == 0) == (u == v)


def test_leading_word_follows_order():
    p = Poly.word(F12, 2, (0, 1)) + Poly.word(F12, 2, (1, 0), 2)
    assert p.leading()[0] == (1, 0)
    assert p.leading(order=(1, 0))[0] == (0, 1)
