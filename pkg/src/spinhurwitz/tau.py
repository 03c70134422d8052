"""BKP tau-series: hypergeometric families, Pluecker checks, matrix-model series,
and numeric KdV soliton tau-functions.

Time convention: a hypergeometric weight e^{sum_m (1/m) t_m omega_m(alpha)}, so
t_1 enters as e^{t_1 |alpha|} and t_3 as e^{t_3 omega_3/3}. Exact rational weights
are given as per-part tables; ``HypergeomWeights.exponential({m: q_m})`` means
q_m = e^{t_m/m}.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, prod

import numpy as np

from .characters import completed_cycle, f3_eigenvalue
from .combinatorics import strict_partitions, strict_up_to
from .hurwitz import branch_factor, parse_sign
from .polyring import BilinearPoly, PowerSumPoly, ZERO
from .symfun import pfaffian, q_schur, q_schur_delta, q_schur_delta1

# weights and series


class HypergeomWeights:
    """Per-part weight w, so that alpha is weighted by prod_i w(alpha_i)."""

    def __init__(self, part_weight, description="custom", times=None):
        self._w = part_weight
        self.description = description
        self.times = dict(times or {})

    def exponent(self, alpha) -> Fraction:
        """sum_m (t_m/m) omega_m(alpha) for the formal times (the weight carries e^{this})."""
        return sum((t / m * sum(a**m for a in alpha) for m, t in self.times.items()), Fraction(0))

    def part(self, a: int) -> Fraction:
        return Fraction(self._w(a))

    def weight(self, alpha) -> Fraction:
        return prod((self.part(a) for a in alpha), start=Fraction(1))

    def __repr__(self):
        return f"HypergeomWeights({self.description})"

    @classmethod
    def zero(cls):
        return cls(lambda a: 1, "t=0")

    @classmethod
    def exponential(cls, q):
        """q = {m: q_m} with q_m = e^{t_m/m}; the part a gets prod_m q_m^{a^m}."""
        q = {int(m): Fraction(v) for m, v in q.items()}
        for m in q:
            if m < 1 or m % 2 == 0:
                raise ValueError("only odd times enter the BKP weights")
        return cls(lambda a: prod((v ** (a**m) for m, v in q.items()), start=Fraction(1)),
                   f"exp{sorted(q.items())}")

    @classmethod
    def from_times(cls, times):
        """Exact times {m: t_m}; coefficients keep e^{sum (t_m/m) omega_m} as a rational exponent."""
        times = {int(m): Fraction(v) for m, v in times.items() if Fraction(v)}
        for m in times:
            if m < 1 or m % 2 == 0:
                raise ValueError("only odd times enter the BKP weights")
        return cls(lambda a: 1, f"times{sorted(times.items())}", times)

    @classmethod
    def table(cls, values, default=None):
        values = {int(k): Fraction(v) for k, v in values.items()}

        def w(a):
            if a in values:
                return values[a]
            if default is None:
                raise KeyError(f"no weight for part {a}")
            return default

        return cls(w, "table")


@dataclass
class TauSeries:
    """tau = sum_alpha c_alpha Q_alpha(p) (or Q_alpha(p) Q_alpha(p*) when bilinear).

    ``exponents`` optionally holds E_alpha, the full coefficient being c_alpha e^{E_alpha}.
    """

    sign: int
    D: int
    coeffs: dict = field(default_factory=dict)
    bilinear: bool = False
    kind: str = "series"
    exponents: dict = field(default_factory=dict)

    def coefficient(self, alpha) -> Fraction:
        alpha = tuple(alpha)
        if sum(alpha) > self.D:
            raise ValueError(f"|alpha| = {sum(alpha)} exceeds the truncation D = {self.D}")
        return self.coeffs.get(alpha, Fraction(0))

    def to_poly(self) -> PowerSumPoly:
        if self.bilinear:
            raise ValueError("bilinear series: use to_bilinear()")
        out = ZERO
        for alpha, c in self.coeffs.items():
            out = out + q_schur(alpha) * c
        return out

    def to_bilinear(self) -> BilinearPoly:
        out = BilinearPoly()
        for alpha, c in self.coeffs.items():
            Q = q_schur(alpha)
            out = out + BilinearPoly.outer(Q, Q, c)
        return out

    def specialize(self, point) -> "TauSeries":
        """Bilinear series with p* fixed: coefficients c_alpha Q_alpha(p*)."""
        from .symfun import q_schur_at
        if not self.bilinear:
            raise ValueError("series is not bilinear")
        return TauSeries(self.sign, self.D, {a: c * q_schur_at(a, point) for a, c in self.coeffs.items()},
                         False, self.kind + "@point", dict(self.exponents))

    def to_json(self) -> dict:
        rows = []
        for a, c in sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), [-x for x in kv[0]])):
            row = {"alpha": list(a), "num": str(c.numerator), "den": str(c.denominator)}
            if a in self.exponents:
                e = self.exponents[a]
                row["exp"] = {"num": str(e.numerator), "den": str(e.denominator)}
            rows.append(row)
        return {"sign": "+" if self.sign > 0 else "-", "D": self.D, "kind": self.kind,
                "bilinear": self.bilinear, "coeffs": rows}

    @classmethod
    def from_json(cls, data) -> "TauSeries":
        coeffs, exponents = {}, {}
        for r in data["coeffs"]:
            alpha = tuple(r["alpha"])
            coeffs[alpha] = Fraction(int(r["num"]), int(r["den"]))
            if "exp" in r:
                exponents[alpha] = Fraction(int(r["exp"]["num"]), int(r["exp"]["den"]))
        return cls(parse_sign(data["sign"]), int(data["D"]), coeffs, bool(data.get("bilinear", False)),
                   data.get("kind", "series"), exponents)


def hyperg_tau(sign, weights: HypergeomWeights, D: int) -> TauSeries:
    """R_pm sum_{|alpha| <= D} w(alpha) 2^{-l(alpha)} Q_alpha(p) Q_alpha(p*)."""
    coeffs, exponents = {}, {}
    for alpha in strict_up_to(D):
        c = Fraction(branch_factor(sign, alpha), 2 ** len(alpha)) * weights.weight(alpha)
        if c:
            coeffs[alpha] = c
            if weights.times:
                exponents[alpha] = weights.exponent(alpha)
    return TauSeries(parse_sign(sign), D, coeffs, True, "hypergeometric", exponents)


# isotropic Pluecker relations


def plucker_coefficient(coeffs, labels) -> Fraction:
    """Coefficient attached to a set of distinct nonnegative labels.

    An even-size set S is identified with alpha = S minus {0}; unsorted input
    carries the sign of the sorting permutation and repeated labels give 0.
    """
    labels = list(labels)
    if len(set(labels)) != len(labels):
        return Fraction(0)
    sign = 1
    for i in range(len(labels)):
        for j in range(i + 1, len(labels)):
            if labels[i] < labels[j]:
                sign = -sign
    alpha = tuple(x for x in sorted(labels, reverse=True) if x)
    if alpha not in coeffs:
        if isinstance(coeffs, dict):
            raise KeyError(f"coefficient of {list(alpha)} is not available")
    return sign * Fraction(coeffs[alpha])


def plucker_relations(window: int):
    """Yield (kappa, beta) with kappa an even-size label set, beta four further labels."""
    labels = range(window + 1)
    for k in range(0, window + 2, 2):
        for kappa in combinations(labels, k):
            if sum(kappa) > window:
                continue
            rest = [x for x in labels if x not in kappa]
            budget = window - sum(kappa)
            for beta in combinations(rest, 4):
                if sum(beta) <= budget:
                    yield kappa, beta


def plucker_support(window: int) -> set:
    """Labels alpha that occur in at least one relation inside the window."""
    out = set()
    for kappa, (b1, b2, b3, b4) in plucker_relations(window):
        for extra in ((), (b1, b2, b3, b4), (b1, b2), (b3, b4), (b1, b3), (b2, b4), (b1, b4), (b2, b3)):
            out.add(tuple(x for x in sorted(kappa + extra, reverse=True) if x))
    return out


def bkp_plucker_check(coeffs, window: int = 9) -> list:
    """All violated relations
    c[k] c[k b1 b2 b3 b4] - c[k b1 b2] c[k b3 b4] + c[k b1 b3] c[k b2 b4] - c[k b1 b4] c[k b2 b3] = 0
    on the label window |alpha| <= window.

    Exponents e^{E_alpha} with E additive over parts are common to all four
    products of a relation, so only the rational parts of a series are checked.
    """
    if isinstance(coeffs, TauSeries):
        coeffs = _CoeffView(coeffs)
    bad = []
    for kappa, (b1, b2, b3, b4) in plucker_relations(window):
        k = list(kappa)

        def c(*extra):
            return plucker_coefficient(coeffs, k + list(extra))

        value = (c() * c(b1, b2, b3, b4) - c(b1, b2) * c(b3, b4)
                 + c(b1, b3) * c(b2, b4) - c(b1, b4) * c(b2, b3))
        if value:
            bad.append((tuple(kappa), (b1, b2, b3, b4), value))
    return bad


class _CoeffView:
    def __init__(self, series):
        self.series = series

    def __contains__(self, alpha):
        return sum(alpha) <= self.series.D

    def __getitem__(self, alpha):
        return self.series.coefficient(alpha)


# character-built families


@dataclass(frozen=True)
class CharacterSpec:
    """c_alpha = 2^{-l} Q_alpha{delta_base} prod ratio(N, r)^{+-1},
    ratio(N, r) = Q_alpha{delta_r} / Q_{N alpha}{delta_r}."""

    base_r: int = 1
    ratios: tuple = ()  # (N, r, inverse)
    two_power: bool = True


BGW_SPEC = CharacterSpec(1, ((2, 1, False), (2, 1, False)))
KONTSEVICH_SPEC = CharacterSpec(3, ((2, 1, False), (2, 3, True)))


def _scaled(alpha, N):
    return tuple(N * a for a in alpha)


def character_coefficient(spec: CharacterSpec, alpha) -> Fraction:
    c = q_schur_delta(alpha, spec.base_r)
    if not c:
        return c
    for N, r, inverse in spec.ratios:
        num, den = q_schur_delta(alpha, r), q_schur_delta(_scaled(alpha, N), r)
        if inverse:
            num, den = den, num
        if not den:
            return Fraction(0)
        c = c * num / den
    if spec.two_power:
        c /= 2 ** len(alpha)
    return c


def character_tau(spec: CharacterSpec, D: int) -> TauSeries:
    coeffs = {}
    for alpha in strict_up_to(D):
        c = character_coefficient(spec, alpha) if alpha else Fraction(1)
        if c:
            coeffs[alpha] = c
    return TauSeries(1, D, coeffs, False, "character")


def bgw_series(D: int) -> TauSeries:
    """sum 2^{|alpha|-l} Q_alpha(p) Q_{2 alpha}{delta_1} prod ((2a)!/a!)^2."""
    coeffs = {}
    for alpha in strict_up_to(D):
        c = Fraction(2) ** (sum(alpha) - len(alpha)) * q_schur_delta(_scaled(alpha, 2), 1)
        c *= prod(Fraction(factorial(2 * a), factorial(a)) ** 2 for a in alpha)
        if c:
            coeffs[alpha] = c
    return TauSeries(1, D, coeffs, False, "bgw")


def kontsevich_series(D: int) -> TauSeries:
    """sum 2^{|alpha|-l} Q_alpha(p) Q_{2 alpha}{delta_3} prod (2a)!/a!."""
    coeffs = {}
    for alpha in strict_up_to(D):
        c = Fraction(2) ** (sum(alpha) - len(alpha)) * q_schur_delta(_scaled(alpha, 2), 3)
        c *= prod(Fraction(factorial(2 * a), factorial(a)) for a in alpha)
        if c:
            coeffs[alpha] = c
    return TauSeries(1, D, coeffs, False, "kontsevich")


def pfaffian_series(A, D: int) -> TauSeries:
    """sum_alpha 2^{-lbar/2} Pf(A restricted to alpha, zero-padded) Q_alpha(p).

    ``A`` is a callable A(i, j) for i > j >= 0, extended skew-symmetrically.
    """
    coeffs = {}
    for alpha in strict_up_to(D):
        idx = alpha + ((0,) if len(alpha) % 2 else ())
        M = [[_skew(A, i, j) for j in idx] for i in idx]
        c = Fraction(pfaffian(M, check=False)) / 2 ** (len(idx) // 2)
        if c:
            coeffs[alpha] = c
    return TauSeries(1, D, coeffs, False, "pfaffian")


def _skew(A, i, j):
    if i == j:
        return Fraction(0)
    return Fraction(A(i, j)) if i > j else -Fraction(A(j, i))


def bgw_kernel(i: int, j: int) -> Fraction:
    """2^{i+j-1} ((2i)!(2j)!/(i!j!))^2 Q_{2i,2j}(p_1)."""
    from .symfun import q_matrix_entry
    val = q_matrix_entry(2 * i, 2 * j).evaluate(lambda k: 1 if k == 1 else 0)
    return Fraction(2) ** (i + j - 1) * Fraction(factorial(2 * i) * factorial(2 * j),
                                                 factorial(i) * factorial(j)) ** 2 * val


def delta_star(alpha, zeta=None) -> Fraction:
    """prod_{i<j} (z_i - z_j)/(z_i + z_j) with z_i = zeta(alpha_i) (default zeta_i = i)."""
    z = [Fraction(zeta(a)) if zeta else Fraction(a) for a in alpha]
    out = Fraction(1)
    for i in range(len(z)):
        for j in range(i + 1, len(z)):
            out *= (z[i] - z[j]) / (z[i] + z[j])
    return out


# exact soliton expansions and extraction


def vn_series(sign, D: int, t3_order: int) -> dict:
    """tau(p, p_1 | t) = sum 2^{-l} e^{eta(alpha_i)} Delta*_alpha Q_alpha(p), zeta_i = i, e^{a_i} = 2^i / i!.

    Returned as {(d, r): polynomial}: the coefficient of e^{t1 d + t3(d^2 - 2d/3)} t3^r / r!.
    """
    out = {}
    for d in range(D + 1):
        shift = Fraction(d * d) - Fraction(2 * d, 3)
        for alpha in strict_partitions(d):
            amp = Fraction(branch_factor(sign, alpha), 2 ** len(alpha)) * delta_star(alpha)
            amp *= prod(Fraction(2**a, factorial(a)) for a in alpha)
            e = sum(Fraction(a**3, 3) for a in alpha) - shift
            Q = q_schur(alpha)
            for r in range(t3_order + 1):
                out[(d, r)] = out.get((d, r), ZERO) + Q * (amp * e**r)
    return out


def vn_coefficient(series, d: int, r: int, delta) -> Fraction:
    """Normalized H(Gamma^r_d, Delta) read off a vn_series."""
    delta = tuple(delta)
    return series[(d, r)].coefficient(delta) * 2 ** (sum(delta) - len(delta))


def kdv_series(sign, D: int, t3_order: int) -> dict:
    """Formal Taylor data of the KdV soliton sum with zeta_i = i, a_i = -log 2(i!)^2.

    {(d, n): T} where T is the coefficient of e^{t1 d} t3^n / n!.
    """
    s = parse_sign(sign)
    out = {}
    for d in range(D + 1):
        for alpha in strict_partitions(d):
            amp = Fraction(s ** len(alpha), 2 ** len(alpha)) * delta_star(alpha) ** 2
            amp /= prod(factorial(a) ** 2 for a in alpha)
            w3 = Fraction(int(completed_cycle(3, alpha)), 3) if alpha else Fraction(0)
            for n in range(t3_order + 1):
                out[(d, n)] = out.get((d, n), Fraction(0)) + amp * w3**n
    return out


def hurwitz_extract(d: int, r: int, series: dict) -> Fraction:
    """H(Gamma^r_d) from kdv_series data: strip e^{t3 (d^2 - 2d/3)} exactly.

    The soliton phases -log 2(i!)^2 differ from the Q-expansion by t1 -> t1 - log 4,
    hence the factor 4^d.
    """
    for n in range(r + 1):
        if (d, n) not in series:
            raise ValueError(f"series is truncated below (d={d}, order={r})")
    s = Fraction(d * d) - Fraction(2 * d, 3)
    total = sum((comb(r, n) * (-s) ** (r - n) * series[(d, n)] for n in range(r + 1)), Fraction(0))
    return total * 4**d


def kdv_q_series(sign, D: int, t3_order: int) -> dict:
    """Same data from the Q-expansion at p = p* = p_1 (no phase shift)."""
    out = {}
    for d in range(D + 1):
        for alpha in strict_partitions(d):
            amp = Fraction(branch_factor(sign, alpha), 2 ** len(alpha)) * q_schur_delta1(alpha) ** 2
            w3 = completed_cycle(3, alpha) / 3 if alpha else Fraction(0)
            for n in range(t3_order + 1):
                out[(d, n)] = out.get((d, n), Fraction(0)) + amp * w3**n
    return out


def gamma_tower(sign, d: int, r: int) -> Fraction:
    """sum 2^{-l} R Q_alpha{delta_1}^2 e_alpha^r; the same number as H(Gamma^r_d, 1^d, 1^d)."""
    return sum((Fraction(branch_factor(sign, a), 2 ** len(a)) * q_schur_delta1(a) ** 2 * f3_eigenvalue(a) ** r
                for a in strict_partitions(d)), Fraction(0))


# numeric solitons


@dataclass
class SolitonConfig:
    """N solitons with momenta zeta_i and phases a_i.

    ``time_scale`` multiplies (1/m) t_m in the phases: 1 is the convention of the
    hypergeometric tau-function, 2 reproduces the BKP-normalized times 2t_m/m.
    """

    zetas: tuple
    phases: tuple
    sign: int = 1
    times: dict = field(default_factory=dict)
    time_scale: float = 1.0

    @classmethod
    def canonical(cls, N: int, sign=1, time_scale=1.0, times=None):
        """zeta_i = i and a_i = -log 2(i!)^2."""
        zetas = tuple(float(i) for i in range(1, N + 1))
        phases = tuple(-math.log(2 * math.factorial(i) ** 2) for i in range(1, N + 1))
        return cls(zetas, phases, parse_sign(sign), dict(times or {}), time_scale)

    def __post_init__(self):
        if len(self.zetas) != len(self.phases):
            raise ValueError("one phase per soliton")
        if len(set(self.zetas)) != len(self.zetas) or any(z <= 0 for z in self.zetas):
            raise ValueError("momenta must be distinct and positive")
        self.sign = parse_sign(self.sign)


MAX_EXPONENT = 700.0


def soliton_terms(cfg: SolitonConfig):
    """Arrays (log_amp, sign, k1, k3, rest) for every subset of solitons.

    The exponent of a subset S is log_amp + k1 t1 + k3 t3 + (higher times).
    """
    N = len(cfg.zetas)
    z = np.array(cfg.zetas, dtype=float)
    a = np.array(cfg.phases, dtype=float)
    masks = np.arange(2**N)
    members = ((masks[:, None] >> np.arange(N)) & 1).astype(bool)
    log_amp = members @ a
    for i in range(N):
        for j in range(i + 1, N):
            both = members[:, i] & members[:, j]
            log_amp = log_amp + both * 2 * math.log(abs((z[i] - z[j]) / (z[i] + z[j])))
    sizes = members.sum(axis=1)
    signs = np.where(sizes % 2 == 1, cfg.sign, 1).astype(float)
    scale = cfg.time_scale
    powers = {m: scale * (members @ z**m) / m for m in range(1, 16, 2)}
    return log_amp, signs, powers


def _exponents(cfg, powers, log_amp, x, t, extra):
    e = log_amp + powers[1] * x + powers[3] * t
    for m, v in extra.items():
        if m not in (1, 3):
            e = e + powers[m] * v
    return e


def _guard(x, t):
    if abs(x) > 1e3 or abs(t) > 1e3:
        raise OverflowError(f"times ({x}, {t}) are outside the supported range |t| <= 1e3")


def kdv_soliton_tau(cfg: SolitonConfig) -> float:
    """tau = sum_S prod_{i<j in S} ((z_i-z_j)/(z_i+z_j))^2 e^{sum_{i in S} eta_i}, assembled with log-sum-exp."""
    x, t = float(cfg.times.get(1, 0.0)), float(cfg.times.get(3, 0.0))
    _guard(x, t)
    log_amp, signs, powers = soliton_terms(cfg)
    e = _exponents(cfg, powers, log_amp, x, t, cfg.times)
    m = e.max()
    val = float((signs * np.exp(e - m)).sum())
    if m > MAX_EXPONENT:
        raise OverflowError("tau overflows double precision; use log_tau instead")
    return val * math.exp(m)


def log_tau_x_derivatives(cfg: SolitonConfig, x: float, t: float, order: int = 4) -> list[float]:
    """[log tau, d_x log tau, ..., d_x^order log tau] at (t1, t3) = (x, t).

    The x-derivatives of log tau are the cumulants of the weights of the soliton sum.
    """
    _guard(x, t)
    log_amp, signs, powers = soliton_terms(cfg)
    e = _exponents(cfg, powers, log_amp, x, t, cfg.times)
    m = e.max()
    w = signs * np.exp(e - m)
    total = w.sum()
    if abs(total) < 1e-12 * np.abs(w).sum():
        raise ZeroDivisionError(f"tau vanishes at t1={x}, t3={t}")
    k = powers[1]
    p = w / total
    m1 = float((p * k).sum())
    c = k - m1
    c2, c3, c4 = (float((p * c**n).sum()) for n in (2, 3, 4))
    cum = [m1, c2, c3, c4 - 3 * c2**2]
    return [math.log(abs(total)) + m] + cum[:order]


def kdv_u(cfg: SolitonConfig, x: float, t: float) -> tuple[float, float]:
    """(u, u_xx) with u = 2 d_x^2 log tau."""
    d = log_tau_x_derivatives(cfg, x, t, 4)
    return 2 * d[2], 2 * d[4]


def parse_grid(spec: str) -> np.ndarray:
    """'lo:hi:step' -> inclusive array of points."""
    lo, hi, step = (float(s) for s in spec.split(":"))
    if step <= 0 or hi < lo:
        raise ValueError(f"bad grid spec {spec!r}")
    n = int(round((hi - lo) / step))
    return lo + step * np.arange(n + 1)


def _d1(f, y, h):
    return (f(y + h) - f(y - h)) / (2 * h)


def _richardson(f, y, h, levels=3):
    """Richardson tableau on central differences at h, h/2, ..., h/2^(levels-1)."""
    row = [_d1(f, y, h / 2**k) for k in range(levels)]
    for j in range(1, levels):
        row = [(4**j * row[k + 1] - row[k]) / (4**j - 1) for k in range(len(row) - 1)]
    return row[0]


def kdv_pointwise_residual(cfg, x, t, h=1e-3, richardson=3, coefficient=12.0):
    """coefficient*u_t - u_xxx - 6 u u_x at one point, derivatives by central differences.

    ``richardson`` is the number of tableau levels; 0 or False means plain differences.
    """
    levels = int(richardson)

    def diff(f, y, step):
        return _richardson(f, y, step, levels) if levels > 1 else _d1(f, y, step)
    u0, _ = kdv_u(cfg, x, t)
    u_t = diff(lambda s: kdv_u(cfg, x, s)[0], t, h)
    u_x = diff(lambda s: kdv_u(cfg, s, t)[0], x, h)
    u_xxx = diff(lambda s: kdv_u(cfg, s, t)[1], x, h)
    return coefficient * u_t - u_xxx - 6 * u0 * u_x


def kdv_residual(cfg: SolitonConfig, xs, ts=None, h=1e-3, richardson=3, coefficient=12.0) -> float:
    """max over the grid of |12 u_t3 - u_t1t1t1 - 6 u u_t1|.

    u and u_xx are exact cumulant expressions; the t3-, t1- and third
    t1-derivatives are central differences refined by a Richardson tableau.
    """
    xs = np.asarray(xs, dtype=float)
    ts = xs if ts is None else np.asarray(ts, dtype=float)
    if len(cfg.zetas) == 0:
        return 0.0
    worst = 0.0
    for x in xs:
        for t in ts:
            worst = max(worst, abs(kdv_pointwise_residual(cfg, x, t, h, richardson, coefficient)))
    return worst


def convergence_study(cfg, xs, ts=None, h0=2e-2, levels=4, coefficient=12.0) -> dict:
    """Plain central differences at h0, h0/2, ...; errors are measured against the
    Richardson value at the finest step. Returns steps, errors and observed orders."""
    xs = np.asarray(xs, dtype=float)
    ts = xs if ts is None else np.asarray(ts, dtype=float)
    steps = [h0 / 2**k for k in range(levels)]
    ref = {(x, t): kdv_pointwise_residual(cfg, x, t, steps[-1], 3, coefficient) for x in xs for t in ts}
    errors = []
    for h in steps:
        errors.append(max(abs(kdv_pointwise_residual(cfg, x, t, h, 0, coefficient) - ref[(x, t)])
                          for x in xs for t in ts))
    orders = [math.log2(errors[i] / errors[i + 1]) for i in range(levels - 1)
              if errors[i] > 0 and errors[i + 1] > 0]
    return {"steps": steps, "errors": errors, "orders": orders}


def hurwitz_extract_numeric(sign, d: int, r: int, N: int | None = None, radius=0.25, samples=64) -> float:
    """H(Gamma^r_d) from the N-soliton tau by a trapezoidal x-integral and a t-contour."""
    N = d if N is None else N
    cfg = SolitonConfig.canonical(N, sign)
    log_amp, signs, powers = soliton_terms(cfg)
    amp = signs * np.exp(log_amp)
    k1 = np.rint(powers[1]).astype(int)
    k3 = powers[3]
    M = int(k1.max()) + d + 2
    xs = 2 * np.pi * np.arange(M) / M
    ts = radius * np.exp(2j * np.pi * np.arange(samples) / samples)
    # tau(ix, t) on the grid
    tau = (amp[None, None, :] * np.exp(1j * xs[:, None, None] * k1[None, None, :]
                                       + ts[None, :, None] * k3[None, None, :])).sum(axis=2)
    fourier = (np.exp(-1j * d * xs)[:, None] * tau).mean(axis=0)
    s = d * d - 2 * d / 3
    g = np.exp(-ts * s) * fourier
    taylor = (g * ts ** (-r)).mean()
    return float((taylor * math.factorial(r) * 4**d).real)


def pfaffian_soliton_tau(A, zetas, phases, times, sign=1) -> float:
    """sum_alpha 2^{-l/2} A_alpha Delta*_alpha(zeta) prod e^{eta_{alpha_i}}, alpha over 1..N.

    ``A[i][j]`` is a skew matrix on indices 0..N (index 0 pads odd-length alpha).
    """
    N = len(zetas)
    if len(A) != N + 1:
        raise ValueError("A must be indexed by 0..N")
    for i in range(N + 1):
        for j in range(N + 1):
            if A[i][j] != -A[j][i]:
                raise ValueError("A must be skew-symmetric")
    t1, t3 = float(times.get(1, 0.0)), float(times.get(3, 0.0))
    s = parse_sign(sign)
    total = 0.0
    for k in range(N + 1):
        for alpha in combinations(range(N, 0, -1), k):
            idx = alpha + ((0,) if k % 2 else ())
            pf = float(pfaffian([[Fraction(A[i][j]) for j in idx] for i in idx], check=False)) if idx else 1.0
            if not pf:
                continue
            ds = 1.0
            for i in range(k):
                for j in range(i + 1, k):
                    zi, zj = zetas[alpha[i] - 1], zetas[alpha[j] - 1]
                    ds *= (zi - zj) / (zi + zj)
            eta = sum(phases[a - 1] + t1 * zetas[a - 1] + t3 * zetas[a - 1] ** 3 / 3 for a in alpha)
            total += 2 ** (-k / 2) * pf * ds * math.exp(eta) * s**k
    return total
