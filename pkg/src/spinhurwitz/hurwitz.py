"""Classical Hurwitz numbers (Frobenius formula) and spin Hurwitz numbers.

Spin numbers use the tau-series normalization: every alpha carries 2^{-l(alpha)},
and the minus branch flips the sign of odd-length alpha.
"""

from fractions import Fraction
from itertools import permutations, product
from math import factorial

from .characters import f3_eigenvalue, f_weight, gamma_class, symmetric_character
from .combinatorics import check_partition, partitions, size, strict_partitions, z_factor
from .polyring import BilinearPoly
from .symfun import q_schur, q_schur_delta1

PLUS, MINUS = "+", "-"


def parse_sign(sign) -> int:
    """Map '+', '-', 'plus', 'minus', 1 or -1 to +1 / -1."""
    table = {"+": 1, "plus": 1, 1: 1, "-": -1, "minus": -1, -1: -1}
    try:
        return table[sign]
    except (KeyError, TypeError):
        raise ValueError(f"unknown sign branch {sign!r}") from None


def branch_factor(sign, alpha) -> int:
    return parse_sign(sign) ** len(alpha)


def class_size(delta) -> Fraction:
    return Fraction(factorial(size(delta)), z_factor(delta))


def _common_degree(profiles) -> int:
    if not profiles:
        raise ValueError("at least one profile is needed")
    degrees = {size(check_partition(tuple(p))) for p in profiles}
    if len(degrees) != 1:
        raise ValueError(f"profiles have different degrees {sorted(degrees)}")
    return degrees.pop()


def classical_hurwitz(g: int, profiles) -> Fraction:
    """[D1]...[Dk]/(d!)^2 sum_R (d!/psi_R(1))^{2g} prod psi_R(Di) / psi_R(1)^{k-2}."""
    profiles = [tuple(p) for p in profiles]
    d = _common_degree(profiles)
    if g < 0:
        raise ValueError("genus must be nonnegative")
    k = len(profiles)
    ones = (1,) * d
    total = Fraction(0)
    for lam in partitions(d):
        dim = symmetric_character(lam, ones)
        term = Fraction(factorial(d), dim) ** (2 * g) / Fraction(dim) ** (k - 2)
        for delta in profiles:
            term *= symmetric_character(lam, delta)
        total += term
    for delta in profiles:
        total *= class_size(delta)
    return total / factorial(d) ** 2


def cycle_type(perm) -> tuple[int, ...]:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        n, j = 0, i
        while j not in seen:
            seen.add(j)
            j = perm[j]
            n += 1
        out.append(n)
    return tuple(sorted(out, reverse=True))


def _compose(a, b):
    return tuple(a[b[i]] for i in range(len(a)))


def _inverse(a):
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def hurwitz_by_counting(g: int, profiles) -> Fraction:
    """#{(a1,b1,...,ag,bg, s1..sk): prod [a,b] prod s = 1, s_i of type D_i} / d!.

    Brute force over S_d; intended for d <= 5 (g = 0) or d <= 4 (g = 1).
    """
    profiles = [tuple(p) for p in profiles]
    d = _common_degree(profiles)
    group = list(permutations(range(d)))
    ident = tuple(range(d))
    classes = {}
    for s in group:
        classes.setdefault(cycle_type(s), []).append(s)
    commutators = {}
    for a, b in product(group, repeat=2):
        c = _compose(_compose(a, b), _compose(_inverse(a), _inverse(b)))
        commutators[c] = commutators.get(c, 0) + 1
    # distribution of the product of the genus part
    dist = {ident: 1}
    for _ in range(g):
        new = {}
        for x, m in dist.items():
            for c, n in commutators.items():
                y = _compose(x, c)
                new[y] = new.get(y, 0) + m * n
        dist = new
    for delta in profiles[:-1]:
        new = {}
        for x, m in dist.items():
            for s in classes.get(delta, []):
                y = _compose(x, s)
                new[y] = new.get(y, 0) + m
        dist = new
    last = set(classes.get(profiles[-1], []))
    count = sum(m for x, m in dist.items() if _inverse(x) in last)
    return Fraction(count, factorial(d))


def _check_odd(delta):
    delta = check_partition(tuple(delta))
    if any(k % 2 == 0 for k in delta):
        raise ValueError(f"spin profiles need odd parts, got {list(delta)}")
    return delta


def spin_hurwitz(sign, profiles, d: int | None = None) -> Fraction:
    """R sum_{alpha |- d} 2^{-l} Q_alpha{delta_1}^2 prod_i f_alpha(D_i)."""
    profiles = [_check_odd(p) for p in profiles]
    if profiles:
        deg = _common_degree(profiles)
        if d is not None and d != deg:
            raise ValueError("d does not match the profiles")
        d = deg
    if d is None:
        raise ValueError("give d when there are no profiles")
    total = Fraction(0)
    for alpha in strict_partitions(d):
        term = Fraction(branch_factor(sign, alpha), 2 ** len(alpha)) * q_schur_delta1(alpha) ** 2
        for delta in profiles:
            term *= f_weight(alpha, delta)
            if not term:
                break
        total += term
    return total


def spin_hurwitz_gamma(sign, d: int, r: int, delta1, delta2) -> Fraction:
    """H(Gamma_d^r, D1, D2) = R sum 2^{-l} Q_alpha{delta_1}^2 f(Gamma_d)^r f(D1) f(D2)."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r > 0 and d < 3:
        raise ValueError("f(Gamma_d) needs d >= 3")
    delta1, delta2 = _check_odd(delta1), _check_odd(delta2)
    if size(delta1) != d or size(delta2) != d:
        raise ValueError("profiles must partition d")
    total = Fraction(0)
    for alpha in strict_partitions(d):
        term = Fraction(branch_factor(sign, alpha), 2 ** len(alpha)) * q_schur_delta1(alpha) ** 2
        if r:
            term *= f_weight(alpha, gamma_class(d)) ** r
        total += term * f_weight(alpha, delta1) * f_weight(alpha, delta2)
    return total


def extraction_weight(delta) -> int:
    """2^{|D| - l(D)}: turns a p_D coefficient into the f-normalized number."""
    return 2 ** (size(delta) - len(delta))


def phi_series(sign, d: int, t3_order: int) -> dict[int, BilinearPoly]:
    """Phi_d = sum_{alpha |- d} e^{t3 e_alpha} R 2^{-l} Q_alpha(p) Q_alpha(p*).

    Returned as {r: coefficient of t3^r / r!}, with e_alpha = (1/3)w3 - w1^2 + (2/3)w1.
    """
    out = {r: BilinearPoly() for r in range(t3_order + 1)}
    for alpha in strict_partitions(d):
        Q = q_schur(alpha)
        base = BilinearPoly.outer(Q, Q, Fraction(branch_factor(sign, alpha), 2 ** len(alpha)))
        e = f3_eigenvalue(alpha)
        for r in range(t3_order + 1):
            out[r] = out[r] + base.scale(e**r)
    return out


def phi_coefficient(series, r: int, delta1, delta2) -> Fraction:
    """Normalized coefficient of t3^r/r! p_D1 p*_D2, comparable to spin_hurwitz_gamma."""
    raw = series[r].coefficient(tuple(delta1), tuple(delta2))
    return raw * extraction_weight(delta1) * extraction_weight(delta2)
