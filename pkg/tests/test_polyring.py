import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from spinhurwitz.polyring import (
    ONE, ZERO, BilinearPoly, PowerSumPoly, TimeAssignment, UndefinedVariable, add, differentiate,
    evaluate, multiply, p, p_mono, scalar_product_B, scale,
)
from spinhurwitz.symfun import q_schur

monos = st.lists(st.integers(1, 5), max_size=3).map(lambda m: tuple(sorted(m, reverse=True)))
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
polys = st.dictionaries(monos, rationals, max_size=5).map(PowerSumPoly)
points = st.dictionaries(st.integers(1, 5), rationals, min_size=5, max_size=5).filter(lambda d: len(d) == 5)


def full_point(d):
    return TimeAssignment.dense({k: d.get(k, 0) for k in range(1, 6)})


def test_basic_arithmetic():
    assert multiply(p(1), p(1)) == p_mono((1, 1))
    assert add(p(1) + p(3), -p(3)) == p(1)
    assert (p(1) + p(3)) ** 2 == p_mono((1, 1)) + 2 * p_mono((3, 1)) + p_mono((3, 3))
    assert scale(p(1), 0) == ZERO and not ZERO


def test_no_zero_coefficients_stored():
    f = p(1) - p(1)
    assert f.terms == {}
    assert PowerSumPoly({(1,): 0, (3,): 2}).terms == {(3,): Fraction(2)}


def test_evaluate():
    d1 = TimeAssignment.delta(1)
    assert evaluate(p_mono((1, 1)), d1) == 1
    assert evaluate(p_mono((3, 1)), d1) == 0
    assert evaluate(q_schur((2, 1)), d1) == Fraction(4, 3)


def test_evaluate_partial_assignment():
    with pytest.raises(UndefinedVariable):
        evaluate(p(1) + p(3), {1: 2})
    # unused variables may be left out
    assert evaluate(p(1), {1: 2}) == 2


def test_differentiate():
    assert differentiate(p_mono((1, 1)), 1) == 2 * p(1)
    assert differentiate(p_mono((3, 1)), 3) == p(1)
    assert differentiate(q_schur((2, 1)), 1) == 4 * p(1) ** 2
    assert differentiate(p(1) ** 3, 1, 2) == 6 * p(1)


def test_scalar_product_b():
    assert scalar_product_B(p(1), p(1)) == Fraction(1, 2)
    assert scalar_product_B(p_mono((3, 1)), p_mono((3, 1))) == Fraction(3, 4)
    assert scalar_product_B(q_schur((1,)), q_schur((1,))) == 2
    with pytest.raises(ValueError):
        scalar_product_B(p(2), p(2))


def test_canonical_order_and_json_round_trip():
    f = p(1) ** 3 + 3 * p(3) - Fraction(1, 2) * p_mono((3, 1))
    data = f.to_json()
    assert [t["mono"] for t in data["terms"]] == [[3], [1, 1, 1], [3, 1]]
    assert PowerSumPoly.from_json(json.loads(json.dumps(data))) == f


def test_degree_and_truncation():
    f = ONE + p(1) + p_mono((3, 1))
    assert f.degree() == 4
    assert f.truncate(1) == ONE + p(1)
    assert f.homogeneous_part(4) == p_mono((3, 1))
    assert f.is_odd() and not (f + p(2)).is_odd()


@settings(max_examples=60)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f + g == g + f
    assert f - f == ZERO


@settings(max_examples=60)
@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(f, g, pt):
    a = full_point(pt)
    assert evaluate(f * g, a) == evaluate(f, a) * evaluate(g, a)
    assert evaluate(f + g, a) == evaluate(f, a) + evaluate(g, a)


@settings(max_examples=60)
@given(polys, polys, st.integers(1, 5))
def test_derivation(f, g, k):
    assert differentiate(f * g, k) == differentiate(f, k) * g + f * differentiate(g, k)


def test_substitute():
    f = p(1) ** 2 + p(3)
    assert f.substitute({1: p(3), 3: 2 * p(1)}) == p(3) ** 2 + 2 * p(1)


def test_bilinear():
    B = BilinearPoly.outer(p(1) + p(3), p(1), 2)
    assert B.coefficient((1,), (1,)) == 2 and B.coefficient((3,), (1,)) == 2
    assert B.specialize_right({1: 3}) == 6 * (p(1) + p(3))
    assert B.apply_left(lambda f: differentiate(f, 1)) == BilinearPoly.outer(ONE, p(1), 2)
    assert B - B == BilinearPoly()
