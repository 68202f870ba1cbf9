from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from clusterlab.matrix import ExchangeMatrix, mutate
from clusterlab.semifield import (
    MaxPlus,
    PositiveRational,
    SemifieldMismatch,
    Trivial,
    Tropical,
    coefficients_from_matrix,
    mutate_coefficients,
    normalize_pair,
    oplus,
    tuple_to_matrix_rows,
)

from conftest import any_matrix

G = ("p1", "p2")


def trop(*e):
    return Tropical(tuple(e), G)


def test_oplus_examples():
    assert oplus(trop(2, 1), trop(1, 3)) == trop(1, 1)
    assert oplus(PositiveRational(Fraction(1, 2)), PositiveRational(Fraction(1, 3))) == PositiveRational(Fraction(5, 6))
    assert oplus(MaxPlus(3), MaxPlus(5)) == MaxPlus(5)


def test_mismatch_rejected():
    with pytest.raises(SemifieldMismatch):
        oplus(trop(1, 0), PositiveRational(Fraction(1)))
    with pytest.raises(SemifieldMismatch):
        trop(1, 0) * Tropical((1,), ("q",))


def test_positive_rational_must_be_positive():
    with pytest.raises(ValueError):
        PositiveRational(Fraction(0))


def test_normalize_pair_examples():
    assert normalize_pair(Trivial()) == (Trivial(), Trivial())
    q = Tropical.generator(("q1",), 0)
    assert normalize_pair(q) == (q, q.one())
    p, p_ = normalize_pair(PositiveRational(Fraction(3)))
    assert (p.value, p_.value) == (Fraction(3, 4), Fraction(1, 4))


ints = st.integers(-5, 5)
tropicals = st.builds(lambda a, b: trop(a, b), ints, ints)
rationals = st.builds(lambda a, b: PositiveRational(Fraction(a, b)), st.integers(1, 50), st.integers(1, 50))
maxplus = st.builds(MaxPlus, ints)


@pytest.mark.parametrize("elems", [tropicals, rationals, maxplus])
@given(data=st.data())
def test_semifield_laws(elems, data):
    a, b, c = (data.draw(elems) for _ in range(3))
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * a.inverse() == a.one()
    p, p_ = normalize_pair(a)
    assert p + p_ == a.one()
    assert p / p_ == a


def test_ratio_mutation_by_hand():
    u, v = PositiveRational(Fraction(2)), PositiveRational(Fraction(5, 3))
    B = ExchangeMatrix.from_rows([[0, -1], [1, 0]])
    # b_21 = 1: u1' = u1 * u2 / (1 + u2) = 2 * (5/3) / (8/3)
    w = mutate_coefficients((u, v), B, 1)
    assert w == (PositiveRational(Fraction(5, 4)), PositiveRational(Fraction(3, 5)))
    # b_12 = -1: u2' = u2 * (1 + u1)
    w = mutate_coefficients((u, v), B, 0)
    assert w == (PositiveRational(Fraction(1, 2)), PositiveRational(Fraction(5)))


@given(any_matrix(max_entry=3, max_frozen=3), st.integers(0, 3))
def test_tropical_equals_c_matrix(B, k):
    k %= B.n
    u = coefficients_from_matrix(B)
    if B.f == 0:
        assert all(isinstance(x, Trivial) for x in u)
        return
    got = mutate_coefficients(u, B, k)
    assert tuple_to_matrix_rows(got) == mutate(B, k).frozen_rows


def test_rank1_geometric_coefficients():
    B = ExchangeMatrix.from_rows([[0]], [[1], [-1]])
    (u,) = coefficients_from_matrix(B, ("p", "p'"))
    p, p_ = normalize_pair(u)
    assert p.as_map() == {"p": 1} and p_.as_map() == {"p'": 1}


def test_trivial_is_fixed_point():
    B = ExchangeMatrix.from_rows([[0, 2], [-1, 0]])
    assert mutate_coefficients((Trivial(), Trivial()), B, 0) == (Trivial(), Trivial())
