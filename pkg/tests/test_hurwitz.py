from fractions import Fraction

import pytest

from oracles import count_tuples
from spinhurwitz.characters import gamma_class
from spinhurwitz.combinatorics import odd_partitions, partitions
from spinhurwitz.hurwitz import (
    classical_hurwitz, hurwitz_by_counting, parse_sign, phi_coefficient, phi_series, spin_hurwitz,
    spin_hurwitz_gamma,
)
from spinhurwitz.polyring import BilinearPoly, p
from spinhurwitz.verify import genus0_queries

F = Fraction


def test_classical_examples():
    assert classical_hurwitz(0, [(1,), (1,)]) == 1
    assert classical_hurwitz(0, [(2,), (2,)]) == F(1, 2)
    assert classical_hurwitz(0, [(3,), (3,), (3,)]) == count_tuples([(3,), (3,), (3,)])


def test_classical_degree_mismatch():
    with pytest.raises(ValueError):
        classical_hurwitz(0, [(2,), (1,)])


@pytest.mark.parametrize("d", range(1, 5))
def test_classical_against_independent_counter(d):
    parts = partitions(d)
    for a in parts:
        for b in parts:
            for c in parts:
                prof = [a, b, c]
                assert classical_hurwitz(0, prof) == count_tuples(prof)


def test_genus_one_against_counting():
    for d in range(1, 5):
        for prof in ([(1,) * d], [(2,) + (1,) * (d - 2)] * 2 if d >= 2 else [(1,)]):
            assert classical_hurwitz(1, prof) == hurwitz_by_counting(1, prof)


def test_genus0_queries():
    qs = genus0_queries(5, 4)
    assert all(sum(sum(p) - len(p) for p in prof) == 2 * sum(prof[0]) - 2 for prof in qs)
    assert [(2,), (2,)] in [[tuple(x) for x in q] for q in qs]


def test_sign_parsing():
    assert parse_sign("+") == 1 and parse_sign("minus") == -1
    with pytest.raises(ValueError):
        parse_sign("0")


def test_spin_d1():
    assert spin_hurwitz("+", [], d=1) == 2
    assert spin_hurwitz("-", [], d=1) == -2


def test_spin_rejects_even_parts():
    with pytest.raises(ValueError):
        spin_hurwitz("+", [(2,)])


def test_spin_gamma_errors():
    with pytest.raises(ValueError):
        spin_hurwitz_gamma("+", 2, 1, (1, 1), (1, 1))


def test_spin_gamma_r0_reduces():
    for d in range(1, 7):
        for D1 in odd_partitions(d):
            for D2 in odd_partitions(d):
                assert spin_hurwitz_gamma("+", d, 0, D1, D2) == spin_hurwitz("+", [D1, D2])


def test_spin_parity_flip():
    # H^- is H^+ with odd-length contributions negated: check through the average
    for d in range(1, 7):
        for D in odd_partitions(d):
            plus = spin_hurwitz("+", [D, D])
            minus = spin_hurwitz("-", [D, D])
            from spinhurwitz.combinatorics import strict_partitions
            from spinhurwitz.characters import f_weight
            from spinhurwitz.symfun import q_schur_delta1
            even = sum((F(1, 2 ** len(a)) * q_schur_delta1(a) ** 2 * f_weight(a, D) ** 2
                        for a in strict_partitions(d) if len(a) % 2 == 0), F(0))
            assert (plus + minus) / 2 == even


def test_phi_series_small():
    assert phi_series("+", 0, 0)[0] == BilinearPoly({((), ()): 1})
    assert phi_series("+", 1, 0)[0] == BilinearPoly.outer(p(1), p(1), 2)


@pytest.mark.parametrize("sign", "+-")
def test_phi_series_matches_character_sum(sign):
    for d in range(3, 7):
        series = phi_series(sign, d, 2)
        for r in range(3):
            for D1 in odd_partitions(d):
                for D2 in odd_partitions(d):
                    assert phi_coefficient(series, r, D1, D2) == spin_hurwitz_gamma(sign, d, r, D1, D2)


def test_gamma_profile_is_order_one_coefficient():
    d = 3
    series = phi_series("+", d, 1)
    value = spin_hurwitz("+", [gamma_class(d), (1, 1, 1), (1, 1, 1)])
    assert phi_coefficient(series, 1, (1, 1, 1), (1, 1, 1)) == value
