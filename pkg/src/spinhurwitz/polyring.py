"""Sparse exact polynomials in the power sums p_1, p_2, ...

A monomial p_D = p_{D_1} p_{D_2} ... is keyed by the partition D.
"""

from collections import Counter
from fractions import Fraction
from math import factorial, prod
from numbers import Rational

from .combinatorics import z_factor

_ONE = ()


def _merge(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


def _sort_key(mono):
    return (sum(mono), tuple(-x for x in mono))


class PowerSumPoly:
    """Immutable polynomial in power sums with Fraction coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                clean[tuple(mono)] = c
        self.terms = clean
        self._hash = None

    # constructors
    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c):
        return cls({_ONE: c})

    @classmethod
    def var(cls, k: int, c=1):
        return cls({(k,): c})

    @classmethod
    def monomial(cls, mono, c=1):
        return cls({tuple(sorted(mono, reverse=True)): c})

    # basics
    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, PowerSumPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({_ONE: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"PowerSumPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for mono, c in self.items():
            m = "*".join(f"p{k}" + (f"^{e}" if e > 1 else "")
                         for k, e in sorted(Counter(mono).items(), reverse=True))
            out.append(f"{c}" + (f"*{m}" if m else ""))
        return " + ".join(out)

    def items(self):
        """Terms in canonical order: by degree, then reverse-lex within a degree."""
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> "PowerSumPoly":
        return PowerSumPoly._raw({m: c for m, c in self.terms.items() if sum(m) == d})

    def truncate(self, d: int) -> "PowerSumPoly":
        return PowerSumPoly._raw({m: c for m, c in self.terms.items() if sum(m) <= d})

    def variables(self) -> set[int]:
        return {k for m in self.terms for k in m}

    def is_odd(self) -> bool:
        return all(k % 2 for k in self.variables())

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return PowerSumPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return PowerSumPoly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _merge(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return PowerSumPoly({m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, c):
        return self.scale(Fraction(1) / Fraction(c))

    def __pow__(self, n: int):
        out = PowerSumPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def scale(self, c) -> "PowerSumPoly":
        c = Fraction(c)
        if not c:
            return PowerSumPoly()
        return PowerSumPoly._raw({m: c * v for m, v in self.terms.items()})

    def differentiate(self, k: int, times: int = 1) -> "PowerSumPoly":
        """Formal partial derivative with respect to p_k, applied ``times`` times."""
        if k < 1:
            raise ValueError("variable index must be positive")
        out = {}
        for mono, c in self.terms.items():
            e = mono.count(k)
            if e < times:
                continue
            rest = list(mono)
            for _ in range(times):
                rest.remove(k)
            m = tuple(rest)
            out[m] = out.get(m, 0) + c * (factorial(e) // factorial(e - times))
        return PowerSumPoly({m: c for m, c in out.items() if c})

    def evaluate(self, point) -> Fraction:
        """Substitute p_k -> point[k]. ``point`` is a TimeAssignment, mapping or callable."""
        value = _as_assignment(point)
        total = Fraction(0)
        cache = {}
        for mono, c in self.terms.items():
            term = c
            for k in mono:
                if k not in cache:
                    cache[k] = value(k)
                term *= cache[k]
                if not term:
                    break
            total += term
        return total

    def substitute(self, images) -> "PowerSumPoly":
        """Replace p_k by the polynomial images(k) (a mapping or callable)."""
        get = images if callable(images) else images.__getitem__
        powers = {}

        def power(k, e):
            key = (k, e)
            if key not in powers:
                powers[key] = _coerce(get(k)) ** e
            return powers[key]

        out = PowerSumPoly()
        for mono, c in self.terms.items():
            term = PowerSumPoly.const(c)
            for k, e in Counter(mono).items():
                term = term * power(k, e)
                if not term:
                    break
            out = out + term
        return out

    # serialization
    def to_json(self) -> dict:
        return {"terms": [{"mono": list(m), "num": str(c.numerator), "den": str(c.denominator)}
                          for m, c in self.items()]}

    @classmethod
    def from_json(cls, data) -> "PowerSumPoly":
        return cls({tuple(t["mono"]): Fraction(int(t["num"]), int(t["den"])) for t in data["terms"]})


def _coerce(x):
    if isinstance(x, PowerSumPoly):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return PowerSumPoly.const(x)
    return None


ZERO = PowerSumPoly()
ONE = PowerSumPoly.const(1)


def p(k: int) -> PowerSumPoly:
    return PowerSumPoly.var(k)


def p_mono(mono) -> PowerSumPoly:
    return PowerSumPoly.monomial(mono)


def add(f, g):
    return _coerce(f) + _coerce(g)


def multiply(f, g):
    return _coerce(f) * _coerce(g)


def scale(f, c):
    return _coerce(f).scale(c)


def evaluate(f, point):
    return _coerce(f).evaluate(point)


def differentiate(f, k, times=1):
    return _coerce(f).differentiate(k, times)


class UndefinedVariable(KeyError):
    pass


class TimeAssignment:
    """A rule k -> value for power-sum variables.

    ``TimeAssignment.delta(r, c)`` is the locus p_k = c when k = r and 0 otherwise;
    ``TimeAssignment.dense({1: x, 3: y})`` assigns only the listed indices.
    """

    def __init__(self, rule, description="custom"):
        self._rule = rule
        self.description = description

    def __call__(self, k: int) -> Fraction:
        v = self._rule(k)
        if v is None:
            raise UndefinedVariable(f"p_{k} is not assigned by {self.description}")
        return Fraction(v)

    def __repr__(self):
        return f"TimeAssignment({self.description})"

    @classmethod
    def delta(cls, r: int, c=1):
        c = Fraction(c)
        return cls(lambda k: c if k == r else 0, f"p_k = {c}*delta(k,{r})")

    @classmethod
    def dense(cls, values):
        values = {int(k): Fraction(v) for k, v in values.items()}
        return cls(values.get, f"dense{sorted(values)}")

    @classmethod
    def power_sums(cls, xs):
        """p_k = sum_a x_a^k for concrete values x_a."""
        xs = [Fraction(x) for x in xs]
        return cls(lambda k: sum(x**k for x in xs), f"powersums({len(xs)} vars)")


def _as_assignment(point):
    if isinstance(point, TimeAssignment):
        return point
    if callable(point):
        return TimeAssignment(point)
    return TimeAssignment.dense(point)


def scalar_product_B(f, g) -> Fraction:
    """Pairing with <p_D, p_D> = 2^{-l(D)} z_D on the odd sub-ring."""
    f, g = _coerce(f), _coerce(g)
    for h in (f, g):
        if not h.is_odd():
            raise ValueError("scalar_product_B is only defined for odd power sums")
    total = Fraction(0)
    small, big = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    for mono, c in small.terms.items():
        d = big.terms.get(mono)
        if d:
            total += c * d * Fraction(z_factor(mono), 2 ** len(mono))
    return total


def scalar_product_A(f, g) -> Fraction:
    """The Hall pairing <p_D, p_D> = z_D."""
    f, g = _coerce(f), _coerce(g)
    return sum((c * g.terms.get(m, 0) * z_factor(m) for m, c in f.terms.items()), Fraction(0))


class BilinearPoly:
    """Polynomial in two sets of power sums, keyed by (D, D*)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def outer(cls, f: PowerSumPoly, g: PowerSumPoly, c=1):
        c = Fraction(c)
        return cls({(m1, m2): c * c1 * c2 for m1, c1 in f.terms.items() for m2, c2 in g.terms.items()})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BilinearPoly(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __eq__(self, other):
        return isinstance(other, BilinearPoly) and self.terms == other.terms

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def scale(self, c):
        return BilinearPoly({k: v * c for k, v in self.terms.items()})

    def coefficient(self, left, right) -> Fraction:
        return self.terms.get((tuple(left), tuple(right)), Fraction(0))

    def slices(self) -> dict[tuple, PowerSumPoly]:
        """Group by the second-set monomial: {D*: polynomial in the first set}."""
        out = {}
        for (m1, m2), c in self.terms.items():
            out.setdefault(m2, {})[m1] = c
        return {m2: PowerSumPoly(t) for m2, t in out.items()}

    def apply_left(self, op) -> "BilinearPoly":
        """Apply a linear map on the first set of variables."""
        out = {}
        for m2, f in self.slices().items():
            for m1, c in op(f).terms.items():
                out[(m1, m2)] = c
        return BilinearPoly(out)

    def specialize_right(self, point) -> PowerSumPoly:
        value = _as_assignment(point)
        out = {}
        for (m1, m2), c in self.terms.items():
            v = c * prod((value(k) for k in m2), start=Fraction(1))
            if v:
                out[m1] = out.get(m1, 0) + v
        return PowerSumPoly(out)

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: (_sort_key(kv[0][0]), _sort_key(kv[0][1])))

    def to_json(self) -> dict:
        return {"terms": [{"mono": list(a), "mono_star": list(b), "num": str(c.numerator),
                           "den": str(c.denominator)} for (a, b), c in self.items()]}
