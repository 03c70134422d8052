"""Factorization of Q_alpha on the rescaled times p[r] and on the locus p_k = delta(k, r).

The parts of a strict alpha split by residue mod an odd r into
  residue 0            -> mu      (quotients alpha_i / r)
  residue c <= (r-1)/2 -> a^c     (alpha_i = r a + c)
  residue r - c        -> b^c     (alpha_i = r (b + 1) - c)
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd

from .combinatorics import check_strict, from_frobenius, padded_length
from .polyring import ZERO, PowerSumPoly, p
from .symfun import double_odd_times, q_schur, q_schur_delta, schur_frobenius


def _check_odd_r(r):
    if r < 1 or r % 2 == 0:
        raise ValueError(f"r must be an odd positive integer, got {r}")


@dataclass(frozen=True)
class ColorDecomposition:
    r: int
    alpha: tuple[int, ...]
    mu: tuple[int, ...]
    a: dict = field(hash=False)
    b: dict = field(hash=False)

    @property
    def colors(self):
        return range(1, (self.r - 1) // 2 + 1)

    @property
    def kappa(self) -> dict:
        return {c: len(self.a[c]) for c in self.colors}

    @property
    def admissible(self) -> bool:
        return all(len(self.a[c]) == len(self.b[c]) for c in self.colors)

    def parts(self) -> list[int]:
        r = self.r
        out = [r * m for m in self.mu]
        for c in self.colors:
            out += [r * x + c for x in self.a[c]] + [r * (y + 1) - c for y in self.b[c]]
        return sorted(out, reverse=True)

    def hooks(self) -> dict:
        """The partition (a^c | b^c) for each color, when admissible."""
        return {c: from_frobenius(self.a[c], self.b[c]) for c in self.colors}

    def omega_sign(self) -> int:
        return omega_sign(self)


def decompose(alpha, r: int) -> ColorDecomposition:
    alpha = check_strict(alpha)
    _check_odd_r(r)
    half = (r - 1) // 2
    mu, a, b = [], {c: [] for c in range(1, half + 1)}, {c: [] for c in range(1, half + 1)}
    for part in alpha:
        x = part % r
        if x == 0:
            mu.append(part // r)
        elif x <= half:
            a[x].append(part // r)
        else:
            b[r - x].append(part // r)
    return ColorDecomposition(r, alpha, tuple(mu), {c: tuple(v) for c, v in a.items()},
                              {c: tuple(v) for c, v in b.items()})


def _perm_sign(seq) -> int:
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] < seq[j]:
                sign = -sign
    return sign


def wick_sign(dec: ColorDecomposition) -> int:
    """(-1)^omega from regrouping the modes for Wick's theorem.

    The modes alpha (zero-padded, decreasing) are reordered into
    [mu group incl. padding | b^1 | a^1 | b^2 | a^2 | ...];
    each color block Pf([[0, B], [-B^T, 0]]) turns into (-1)^{k(k-1)/2} det B.
    """
    r = dec.r
    modes = list(dec.alpha) + ([0] if len(dec.alpha) % 2 else [])
    grouped = [r * m for m in dec.mu] + ([0] if len(dec.alpha) % 2 else [])
    for c in dec.colors:
        grouped += [r * (y + 1) - c for y in dec.b[c]]
        grouped += [r * x + c for x in dec.a[c]]
    position = {m: i for i, m in enumerate(modes)}
    sign = _perm_sign([-position[m] for m in grouped])
    for c in dec.colors:
        k = len(dec.a[c])
        sign *= (-1) ** (k * (k - 1) // 2)
    return sign


def omega_sign(dec: ColorDecomposition) -> int:
    """(-1)^omega for the factorized right-hand side.

    The two-point function of a b-mode and an a-mode of color c is
    (-1)^c S_{(a|b)}{2p'}; the right-hand side carries (-1)^{a+b+c}, so the
    difference (-1)^{sum(a)+sum(b)} joins the regrouping sign.
    """
    sign = wick_sign(dec)
    for c in dec.colors:
        sign *= (-1) ** (sum(dec.a[c]) + sum(dec.b[c]))
    return sign


def rescale_times(f: PowerSumPoly, r: int) -> PowerSumPoly:
    """f{p[r]}: (1/k) p_k[r] = (1/j) p_j delta(k, jr), i.e. p_{jr} -> r p_j, others -> 0."""
    _check_odd_r(r)
    return f.substitute(lambda k: p(k // r) * r if k % r == 0 else ZERO)


def factorized_qs(alpha, r: int) -> PowerSumPoly:
    """Right-hand side of the factorization of Q_alpha{p[r]}.

    (-1)^omega 2^{(lbar(alpha) - lbar(mu))/2} Q_mu{p} prod_c S_{(a^c|b^c)}{2p'} prod_i (-1)^{a_i+b_i+c}
    """
    dec = decompose(alpha, r)
    if not dec.admissible:
        return ZERO
    out = q_schur(dec.mu) * (omega_sign(dec) * qs_prefactor(dec))
    for c in dec.colors:
        if dec.a[c]:
            sign = (-1) ** (sum(dec.a[c]) + sum(dec.b[c]) + c * len(dec.a[c]))
            out = out * double_odd_times(schur_frobenius(dec.a[c], dec.b[c])) * sign
    return out


def qs_prefactor(dec: ColorDecomposition) -> Fraction:
    """2^{(lbar(alpha) - lbar(mu))/2}: one factor 2 per (a, b) pair."""
    return Fraction(2) ** ((padded_length(dec.alpha) - padded_length(dec.mu)) // 2)


def literal_prefactor(dec: ColorDecomposition) -> Fraction:
    """The prefactor 2^{-lbar(mu)/2}, kept to report how far it is from qs_prefactor."""
    return Fraction(1, 2 ** (padded_length(dec.mu) // 2))


def verify_qs(alpha, r: int) -> dict:
    alpha = check_strict(alpha)
    dec = decompose(alpha, r)
    lhs = rescale_times(q_schur(alpha), r)
    rhs = factorized_qs(alpha, r)
    report = {"alpha": alpha, "r": r, "admissible": dec.admissible, "equal": lhs == rhs,
              "lhs_zero": not lhs}
    if lhs and rhs:
        mono, c = next(iter(rhs.terms.items()))
        ratio = lhs.coefficient(mono) / c
        report["ratio"] = ratio
        report["equal_up_to_sign"] = lhs == rhs * ratio and abs(ratio) == 1
        report["omega_consistent"] = ratio == 1
        report["literal_ratio"] = ratio * qs_prefactor(dec) / literal_prefactor(dec)
    else:
        report["equal_up_to_sign"] = lhs == rhs
        report["omega_consistent"] = lhs == rhs
    return report


# the ratio formula


def _residue(k: int, r: int) -> int:
    return k % r


def check_ratio_spec(N: int, r: int) -> None:
    if N < 1:
        raise ValueError("N must be positive")
    _check_odd_r(r)
    if gcd(N, r) != 1:
        raise ValueError(f"N={N} and r={r} are not coprime")


def rho(N: int, r: int, x: int) -> int:
    """(Nx)_r - (x)_r when 0 < (x)_r < r/2, else 0."""
    check_ratio_spec(N, r)
    xr = _residue(x, r)
    if 0 < xr < r / 2:
        return _residue(N * x, r) - xr
    return 0


def c_N(N: int, r: int, c: int) -> int:
    """Nc = r p_c + c_N with 0 <= c_N < r."""
    return (N * c) % r


def ratio_rhs(alpha, N: int, r: int) -> Fraction:
    """prod_i (-1)^{rho(alpha_i)} N^{{alpha_i/r}} floor(N alpha_i/r)! / floor(alpha_i/r)!"""
    alpha = check_strict(alpha)
    check_ratio_spec(N, r)
    exponent = Fraction(sum(_residue(a, r) for a in alpha), r)
    if exponent.denominator != 1:
        raise ValueError(f"fractional powers of N do not cancel for {list(alpha)} (|alpha| not divisible by r)")
    val = Fraction(N) ** int(exponent)
    for a in alpha:
        val *= (-1) ** rho(N, r, a) * Fraction(factorial(N * a // r), factorial(a // r))
    return val


def delta_prime_nonzero(alpha, r: int) -> bool:
    return q_schur_delta(alpha, r, Fraction(1, 2)) != 0


def verify_ratio(alpha, N: int, r: int) -> dict:
    """Compare Q_alpha{(r/2)delta_r} / Q_{N alpha}{(r/2)delta_r} with ratio_rhs."""
    alpha = check_strict(alpha)
    check_ratio_spec(N, r)
    report = {"alpha": alpha, "N": N, "r": r}
    if sum(alpha) % r or not delta_prime_nonzero(alpha, r):
        report["status"] = "inadmissible"
        return report
    scale = Fraction(r, 2)
    num = q_schur_delta(alpha, r, scale)
    den = q_schur_delta(tuple(N * a for a in alpha), r, scale)
    if not den:
        report["status"] = "skip"
        return report
    lhs, rhs = num / den, ratio_rhs(alpha, N, r)
    report.update(lhs=lhs, rhs=rhs, status="equal" if lhs == rhs else "mismatch")
    return report
