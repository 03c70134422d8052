from collections import Counter
from itertools import combinations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from spinhurwitz.combinatorics import (
    Frobenius, beta_numbers, check_strict, conjugate, doubled_diagram, doubled_hooks, from_beta,
    from_frobenius, frobenius_coords, frobenius_round_trip, hooks_and_contents, odd_partitions,
    padded_length, partitions, r_core, remove_rim_hooks, strict_partitions, z_factor,
)


def brute_partitions(d, pred):
    # subsets/multisets by recursion, no shared code with the library
    out = []

    def rec(rest, maxp, acc):
        if rest == 0:
            if pred(acc):
                out.append(tuple(acc))
            return
        for k in range(min(rest, maxp), 0, -1):
            rec(rest - k, k, acc + [k])

    rec(d, d, [])
    return out


def test_strict_small():
    assert strict_partitions(0) == [()]
    assert strict_partitions(3) == [(3,), (2, 1)]


def test_strict_count_matches_subset_sums():
    n = 10
    count = sum(1 for k in range(1, n + 1) for c in combinations(range(1, n + 1), k) if sum(c) == n)
    assert len(strict_partitions(10)) == count == 10


def test_odd_partitions():
    assert odd_partitions(2) == [(1, 1)]
    assert odd_partitions(4) == [(3, 1), (1, 1, 1, 1)]
    assert len(odd_partitions(9)) == 8


@pytest.mark.parametrize("d", range(9))
def test_enumerations_agree_with_brute_force(d):
    assert sorted(partitions(d)) == sorted(brute_partitions(d, lambda p: True))
    assert sorted(strict_partitions(d)) == sorted(brute_partitions(d, lambda p: len(set(p)) == len(p)))
    assert sorted(odd_partitions(d)) == sorted(brute_partitions(d, lambda p: all(x % 2 for x in p)))


def test_z_factor():
    assert z_factor([1, 1, 1]) == 6
    assert z_factor([2, 1]) == 2
    assert z_factor([3, 3, 2]) == 36


@pytest.mark.parametrize("d", range(1, 7))
def test_z_factor_is_centralizer_size(d):
    from itertools import permutations
    counts = Counter()
    for p in permutations(range(d)):
        seen, ct = set(), []
        for i in range(d):
            if i not in seen:
                n, j = 0, i
                while j not in seen:
                    seen.add(j)
                    j = p[j]
                    n += 1
                ct.append(n)
        counts[tuple(sorted(ct, reverse=True))] += 1
    for lam, size in counts.items():
        assert z_factor(lam) * size == factorial(d)


def test_hooks_and_contents():
    assert hooks_and_contents([1]) == {(0, 0): (1, 0)}
    t = hooks_and_contents([2, 1])
    assert sorted(h for h, _ in t.values()) == [1, 1, 3]
    assert sorted(c for _, c in t.values()) == [-1, 0, 1]
    assert sorted(h for h, _ in hooks_and_contents([3, 2]).values()) == [1, 1, 2, 3, 4]


@given(st.lists(st.integers(1, 7), max_size=6))
def test_hooks_by_arm_and_leg(parts):
    lam = tuple(sorted(parts, reverse=True))
    conj = conjugate(lam)
    for (i, j), (h, c) in hooks_and_contents(lam).items():
        assert h == (lam[i] - j - 1) + (conj[j] - i - 1) + 1
        assert c == j - i


def test_doubled_diagram():
    assert doubled_diagram([1]) == (1, 1)
    assert doubled_diagram([2, 1]) == (2, 2, 2)
    dd = doubled_diagram([3, 1])
    assert sum(dd) == 8 and dd == (3, 2, 2, 1)


def test_frobenius():
    assert frobenius_coords([1]) == Frobenius((0,), (0,))
    assert frobenius_coords([2, 2, 2]) == Frobenius((1, 0), (2, 1))
    # arms 3,1 and legs 2,0 (a leg of 1 in the second slot would give a 9-box diagram)
    assert frobenius_coords([4, 3, 1]) == Frobenius((3, 1), (2, 0))


@pytest.mark.parametrize("d", range(13))
def test_frobenius_round_trip(d):
    for lam in partitions(d):
        assert frobenius_round_trip(lam)
        f = frobenius_coords(lam)
        assert from_frobenius(f.arms, f.legs) == lam
        assert frobenius_coords(conjugate(lam)) == Frobenius(f.legs, f.arms)


@given(st.lists(st.integers(1, 9), unique=True, max_size=5))
def test_doubled_diagram_frobenius(parts):
    alpha = tuple(sorted(parts, reverse=True))
    dd = doubled_diagram(alpha)
    assert sum(dd) == 2 * sum(alpha)
    f = frobenius_coords(dd)
    assert f.arms == tuple(a - 1 for a in alpha)
    assert f.legs == alpha


def test_doubled_hooks_count():
    for alpha in strict_partitions(8):
        assert len(doubled_hooks(alpha)) == sum(alpha)


def test_r_core():
    assert r_core((), 3) == ()
    assert r_core([1], 2) == (1,)
    assert r_core([2, 2], 2) == ()


def all_cores(lam, r):
    # every order of rim-hook removal, exhaustively
    lam = tuple(lam)
    smaller = [mu for mu, _ in remove_rim_hooks(lam, r)]
    if not smaller:
        return {lam}
    out = set()
    for mu in smaller:
        out |= all_cores(mu, r)
    return out


@pytest.mark.parametrize("r", [2, 3, 5])
def test_core_independent_of_removal_order(r):
    for d in range(11):
        for lam in partitions(d):
            assert all_cores(lam, r) == {r_core(lam, r)}


def test_beta_round_trip():
    for lam in partitions(8):
        assert from_beta(beta_numbers(lam)) == lam
        assert from_beta(beta_numbers(lam, len(lam) + 3)) == lam


def test_validation():
    with pytest.raises(ValueError):
        check_strict((2, 2))
    assert padded_length((3, 2, 1)) == 4
    assert padded_length((2, 1)) == 2
    assert padded_length(()) == 0


@given(st.lists(st.integers(1, 8), max_size=7))
def test_conjugate_involution(parts):
    lam = tuple(sorted(parts, reverse=True))
    assert conjugate(conjugate(lam)) == lam
