"""Differential operators on power-sum polynomials.

An operator is a finite sum of terms  c * p_M * d_D  (multiply by the
monomial p_M after differentiating along the multiset D). Families that
are formally infinite are truncated to the degree of the input.
"""

from collections import Counter
from fractions import Fraction
from itertools import product
from math import factorial

from .polyring import PowerSumPoly, ZERO


def _apply_terms(f: PowerSumPoly, terms) -> PowerSumPoly:
    out = {}
    for mono, c in f.terms.items():
        have = Counter(mono)
        for coef, mult, diff in terms:
            need = Counter(diff)
            factor = Fraction(coef)
            for k, e in need.items():
                m = have.get(k, 0)
                if m < e:
                    factor = 0
                    break
                factor *= factorial(m) // factorial(m - e)
            if not factor:
                continue
            rest = have - need
            new = tuple(sorted(list(rest.elements()) + list(mult), reverse=True))
            out[new] = out.get(new, 0) + c * factor
    return PowerSumPoly({m: v for m, v in out.items() if v})


class PolyOperator:
    """A linear operator on PowerSumPoly. Supports +, -, scalar * and composition (@)."""

    def __init__(self, apply, name="op"):
        self._apply = apply
        self.name = name

    @classmethod
    def from_terms(cls, generate, name):
        """``generate(max_degree)`` yields (coef, multiply_mono, diff_mono) triples."""
        def apply(f):
            if not f:
                return ZERO
            return _apply_terms(f, list(generate(f.degree())))
        return cls(apply, name)

    def __call__(self, f: PowerSumPoly) -> PowerSumPoly:
        return self._apply(f)

    def __add__(self, other):
        return PolyOperator(lambda f: self(f) + other(f), f"({self.name} + {other.name})")

    def __sub__(self, other):
        return PolyOperator(lambda f: self(f) - other(f), f"({self.name} - {other.name})")

    def __neg__(self):
        return PolyOperator(lambda f: -self(f), f"-{self.name}")

    def __rmul__(self, c):
        c = Fraction(c)
        return PolyOperator(lambda f: self(f).scale(c), f"{c}*{self.name}")

    def __matmul__(self, other):
        return PolyOperator(lambda f: self(other(f)), f"{self.name}.{other.name}")

    def __pow__(self, n: int):
        out = self
        for _ in range(n - 1):
            out = out @ self
        return out

    def __repr__(self):
        return f"PolyOperator({self.name})"


def _odds(upto):
    return range(1, upto + 1, 2)


def _cut_and_join_terms(deg):
    half = Fraction(1, 2)
    for a in range(1, deg + 1):
        for b in range(1, deg + 1 - a):
            yield half * (a + b), (a, b), (a + b,)
            yield half * a * b, (a + b,), (a, b)


W = PolyOperator.from_terms(_cut_and_join_terms, "W")


def classical_cut_and_join(f):
    """W = 1/2 sum ((a+b) p_a p_b d_{a+b} + ab p_{a+b} d_a d_b)."""
    return W(f)


def _omega1_terms(deg):
    for n in range(1, deg + 1):
        yield n, (n,), (n,)


def _omega3_terms(deg):
    half = Fraction(1, 2)
    for n in _odds(deg):
        yield half * (n**3 + n), (n,), (n,)
    for a, b, c in product(_odds(deg), repeat=3):
        s = a + b + c
        if s <= deg:
            yield 4 * s, (a, b, c), (s,)
            yield a * b * c, (s,), (a, b, c)
    for n1, n2, n3 in product(_odds(deg), repeat=3):
        n4 = n1 + n2 - n3
        if n4 > 0 and n3 + n4 <= deg:
            yield 3 * n3 * n4, (n1, n2), (n3, n4)


Omega1 = PolyOperator.from_terms(_omega1_terms, "Omega1")
Omega3 = PolyOperator.from_terms(_omega3_terms, "Omega3")


def omega(n: int, f):
    """Apply Omega_1 or Omega_3.

    Omega_3 sums over ordered tuples of odd indices; its last family carries
    the weight n1*n2*n3, which the eigenvalue test singles out.
    """
    if n == 1:
        return Omega1(f)
    if n == 3:
        return Omega3(f)
    raise ValueError("only Omega_1 and Omega_3 are available")


SpinW = Fraction(1, 3) * Omega3 - Omega1 @ Omega1 + Fraction(2, 3) * Omega1
SpinW.name = "W_spin"


def _spin_w_expanded_terms(deg):
    """The fully expanded form of (1/3)Omega_3 - Omega_1^2 + (2/3)Omega_1."""
    third = Fraction(1, 3)
    for n in _odds(deg):
        yield Fraction(n**3, 6) + Fraction(n, 6) - n * n + Fraction(2 * n, 3), (n,), (n,)
    for a, b, c in product(_odds(deg), repeat=3):
        s = a + b + c
        if s <= deg:
            yield Fraction(4, 3) * s, (a, b, c), (s,)
            yield third * a * b * c, (s,), (a, b, c)
    for n1, n2, n3 in product(_odds(deg), repeat=3):
        n4 = n1 + n2 - n3
        if n4 > 0 and n3 + n4 <= deg:
            yield n3 * n4, (n1, n2), (n3, n4)
    # -Omega_1^2 = -sum_n n^2 p_n d_n - sum_{m,n} m n p_m p_n d_m d_n
    for m, n in product(_odds(deg), repeat=2):
        if m + n <= deg:
            yield -m * n, (m, n), (m, n)


SpinWExpanded = PolyOperator.from_terms(_spin_w_expanded_terms, "W_spin_expanded")


def spin_cut_and_join(f):
    """The composite (1/3)Omega_3 - Omega_1^2 + (2/3)Omega_1."""
    return SpinW(f)


def virasoro_operator(n: int) -> PolyOperator:
    """L_n = sum_{k odd} (k+2n) p_k d_{k+2n} + 1/4 sum_{a+b=2n, odd} ab d_a d_b.

    Shift and constant are the ones consistent with L_n Q_alpha = sum_i (alpha_i - n) Q_{alpha - 2n e_i}.
    """
    if n < 1:
        raise ValueError("n must be positive")

    def terms(deg):
        for k in _odds(deg):
            if k + 2 * n <= deg:
                yield k + 2 * n, (k,), (k + 2 * n,)
        for a in _odds(2 * n - 1):
            yield Fraction(a * (2 * n - a), 4), (), (a, 2 * n - a)

    return PolyOperator.from_terms(terms, f"L{n}")


def virasoro_literal(n: int) -> PolyOperator:
    """The operator with shift n and constant 1/8, kept only to document its failure."""
    def terms(deg):
        for k in _odds(deg):
            if k + n <= deg:
                yield k + n, (k,), (k + n,)
        for a in _odds(2 * n - 1):
            yield Fraction(a * (2 * n - a), 8), (), (a, 2 * n - a)

    return PolyOperator.from_terms(terms, f"L{n}_literal")


def virasoro(n: int, f):
    return virasoro_operator(n)(f)


def virasoro_rhs(n: int, alpha) -> PowerSumPoly:
    """sum_i (alpha_i - n) Q_{alpha - 2n e_i} with fermionic straightening."""
    from .symfun import q_schur_sequence
    out = ZERO
    for i, a in enumerate(alpha):
        if a == n:
            continue
        seq = list(alpha)
        seq[i] -= 2 * n
        out = out + q_schur_sequence(seq) * (a - n)
    return out


def virasoro_rhs_truncating(n: int, alpha) -> PowerSumPoly:
    """Same sum, but dropping terms whose shifted part is negative."""
    from .symfun import q_schur, straighten
    out = ZERO
    for i, a in enumerate(alpha):
        seq = list(alpha)
        seq[i] -= 2 * n
        if seq[i] < 0:
            continue
        sign, beta = straighten(seq)
        if sign:
            out = out + q_schur(beta) * (sign * (a - n))
    return out


def verify_cut_and_join(sign, d: int, order: int) -> dict[int, bool]:
    """{r: d_t3 Phi_d == W Phi_d at order t3^r}, W acting on p (not p*)."""
    from .hurwitz import phi_series
    series = phi_series(sign, d, order + 1)
    return {r: series[r + 1] == series[r].apply_left(SpinW) for r in range(order + 1)}
