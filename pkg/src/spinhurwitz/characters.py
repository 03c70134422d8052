"""Symmetric-group characters, Sergeev characters, f-weights and completed cycles."""

from fractions import Fraction
from functools import cache

from sympy import Matrix, Rational

from . import cache as disk
from .combinatorics import (beta_numbers, check_partition, check_strict, from_beta, odd_partitions,
                            partitions, size, strict_partitions, z_factor)
from .symfun import q_schur, q_schur_delta1


@cache
def _mn(lam: tuple, mu: tuple) -> int:
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    beta = beta_numbers(lam)
    occupied = set(beta)
    total = 0
    for b in beta:
        if b - k >= 0 and b - k not in occupied:
            leg = sum(1 for c in beta if b - k < c < b)
            new = from_beta([c for c in beta if c != b] + [b - k])
            total += (-1) ** leg * _mn(new, rest)
    return total


def symmetric_character(lam, mu) -> int:
    """psi_lambda(mu) by the Murnaghan-Nakayama rule on beta-numbers."""
    lam, mu = check_partition(tuple(lam)), check_partition(tuple(mu))
    if size(lam) != size(mu):
        raise ValueError("lambda and mu must have the same size")
    return _mn(lam, mu)


def symmetric_table(d: int) -> dict:
    key = ("symmetric", d)
    if key not in _tables:
        table = disk.load("symmetric", d)
        if table is None:
            table = {(lam, mu): Fraction(symmetric_character(lam, mu))
                     for lam in partitions(d) for mu in partitions(d)}
            disk.store("symmetric", d, table)
        _tables[key] = table
    return _tables[key]


_tables: dict = {}


def _to_fraction(x) -> Fraction:
    x = Rational(x)
    return Fraction(int(x.p), int(x.q))


def _solve_sergeev(d: int) -> dict:
    labels = strict_partitions(d)
    classes = odd_partitions(d)
    # columns: Q_alpha in the p_Delta basis; p_Delta = sum_alpha chi_alpha(Delta) Q_alpha
    A = Matrix([[Rational(q_schur(a).coefficient(D).numerator, q_schur(a).coefficient(D).denominator)
                 for a in labels] for D in classes])
    X = A.inv()
    return {(a, D): _to_fraction(X[i, j]) for i, a in enumerate(labels) for j, D in enumerate(classes)}


def sergeev_table(d: int) -> dict:
    """{(alpha, Delta): chi_alpha(Delta)} defined by p_Delta = sum_alpha chi_alpha(Delta) Q_alpha."""
    key = ("sergeev", d)
    if key not in _tables:
        table = disk.load("sergeev", d)
        if table is None:
            table = _solve_sergeev(d)
            disk.store("sergeev", d, table)
        _tables[key] = table
    return _tables[key]


def sergeev_character(alpha, delta) -> Fraction:
    alpha, delta = check_strict(alpha), check_partition(tuple(delta))
    if any(k % 2 == 0 for k in delta):
        raise ValueError("Sergeev characters are indexed by odd partitions")
    if size(alpha) != size(delta):
        raise ValueError("alpha and Delta must have the same size")
    return sergeev_table(size(alpha))[(alpha, delta)]


def clear_memory_tables() -> None:
    _tables.clear()


def f_weight(alpha, delta) -> Fraction:
    """Normalized weight with Q_alpha = Q_alpha{delta_1} sum_Delta 2^{l(Delta)-|Delta|} f_alpha(Delta) p_Delta.

    Equivalently f = 2^{|Delta|+l(alpha)} chi_alpha(Delta) / (z_Delta Q_alpha{delta_1}).
    """
    alpha, delta = check_strict(alpha), tuple(delta)
    chi = sergeev_character(alpha, delta)
    return Fraction(2 ** (size(delta) + len(alpha))) * chi / (z_factor(delta) * q_schur_delta1(alpha))


def completed_cycle(m: int, alpha) -> Fraction:
    """omega_m(alpha) = sum_i alpha_i^m (odd m)."""
    if m < 1 or m % 2 == 0:
        raise ValueError("completed cycles are defined for odd m")
    return Fraction(sum(a**m for a in check_strict(alpha)))


def gamma_class(d: int) -> tuple[int, ...]:
    """Gamma_d = (3, 1^{d-3})."""
    if d < 3:
        raise ValueError("Gamma_d needs d >= 3")
    return (3,) + (1,) * (d - 3)


def f3_eigenvalue(alpha) -> Fraction:
    """(1/3) omega_3 - omega_1^2 + (2/3) omega_1."""
    w1, w3 = completed_cycle(1, alpha), completed_cycle(3, alpha)
    return w3 / 3 - w1 * w1 + Fraction(2, 3) * w1
