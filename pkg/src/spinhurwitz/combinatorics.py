"""Partitions and Young-diagram geometry.

Partitions are plain tuples of positive ints in weakly decreasing order.
The empty partition is ``()``. Zero parts are never stored.
"""

from collections import Counter
from functools import cache
from math import factorial, prod
from typing import NamedTuple


class Frobenius(NamedTuple):
    arms: tuple[int, ...]
    legs: tuple[int, ...]

    def __str__(self):
        return f"({','.join(map(str, self.arms))}|{','.join(map(str, self.legs))})"


def canonical(parts) -> tuple[int, ...]:
    """Sort parts decreasingly, dropping zeros."""
    parts = tuple(sorted((int(p) for p in parts), reverse=True))
    if parts and parts[-1] < 0:
        raise ValueError(f"negative part in {parts}")
    return tuple(p for p in parts if p)


def is_strict(parts) -> bool:
    return all(a > b for a, b in zip(parts, parts[1:])) and all(p > 0 for p in parts)


def check_strict(alpha) -> tuple[int, ...]:
    alpha = tuple(alpha)
    if not is_strict(alpha):
        raise ValueError(f"not a strict partition: {list(alpha)}")
    return alpha


def check_partition(lam) -> tuple[int, ...]:
    lam = tuple(lam)
    if any(p <= 0 for p in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"not a partition: {list(lam)}")
    return lam


def size(lam) -> int:
    return sum(lam)


def padded_length(alpha) -> int:
    """Length rounded up to the next even number."""
    return len(alpha) + len(alpha) % 2


@cache
def partitions(d: int, max_part: int | None = None) -> tuple[tuple[int, ...], ...]:
    """All partitions of d in reverse-lexicographic order."""
    if max_part is None:
        max_part = d
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, max_part), 0, -1):
        for rest in partitions(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


@cache
def _strict(d: int, below: int) -> tuple[tuple[int, ...], ...]:
    if d == 0:
        return ((),)
    out = []
    for first in range(min(d, below - 1), 0, -1):
        for rest in _strict(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def strict_partitions(d: int) -> list[tuple[int, ...]]:
    """Strict partitions of d, reverse-lexicographic: ``3 -> [(3,), (2, 1)]``."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    return list(_strict(d, d + 1))


@cache
def _odd(d: int, max_part: int) -> tuple[tuple[int, ...], ...]:
    if d == 0:
        return ((),)
    out = []
    top = min(d, max_part)
    if top % 2 == 0:
        top -= 1
    for first in range(top, 0, -2):
        for rest in _odd(d - first, first):
            out.append((first,) + rest)
    return tuple(out)


def odd_partitions(d: int) -> list[tuple[int, ...]]:
    """Partitions of d into odd parts, reverse-lexicographic."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    return list(_odd(d, d))


def strict_up_to(n: int) -> list[tuple[int, ...]]:
    """All strict partitions of size at most n, graded then reverse-lex."""
    return [a for d in range(n + 1) for a in strict_partitions(d)]


def z_factor(lam) -> int:
    """Centralizer order z = prod k^m_k m_k!."""
    return prod(k**m * factorial(m) for k, m in Counter(lam).items())


def conjugate(lam) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def boxes(lam):
    for i, row in enumerate(lam):
        for j in range(row):
            yield i, j


def hooks_and_contents(lam) -> dict[tuple[int, int], tuple[int, int]]:
    """Map each box (i, j), 0-based, to (hook length, content)."""
    conj = conjugate(lam)
    return {(i, j): (lam[i] - j + conj[j] - i - 1, j - i) for i, j in boxes(lam)}


def frobenius_coords(lam) -> Frobenius:
    conj = conjugate(lam)
    diag = sum(1 for i, p in enumerate(lam) if p > i)
    return Frobenius(
        tuple(lam[i] - i - 1 for i in range(diag)),
        tuple(conj[i] - i - 1 for i in range(diag)),
    )


def from_frobenius(arms, legs) -> tuple[int, ...]:
    """Rebuild the partition with the given Frobenius coordinates."""
    arms, legs = tuple(arms), tuple(legs)
    if len(arms) != len(legs):
        raise ValueError("arms and legs differ in length")
    if not (is_strict([a + 1 for a in arms]) and is_strict([b + 1 for b in legs])):
        raise ValueError("Frobenius coordinates must be strictly decreasing and nonnegative")
    r = len(arms)
    rows = [i + 1 + arms[i] for i in range(r)]
    # rows below the Durfee square are read off the legs
    depth = max((i + legs[i] + 1 for i in range(r)), default=0)
    for k in range(r, depth):
        rows.append(sum(1 for j in range(r) if j + legs[j] >= k))
    return tuple(rows)


def doubled_diagram(alpha) -> tuple[int, ...]:
    """The partition with Frobenius coordinates (a_1-1, a_2-1, ... | a_1, a_2, ...)."""
    alpha = check_strict(alpha)
    return from_frobenius([a - 1 for a in alpha], alpha)


def doubled_hooks(alpha) -> list[int]:
    """Hook lengths of the doubled diagram at the boxes strictly below its diagonal.

    These cells form a copy of the shifted diagram of alpha, and their hooks
    are the shifted hook lengths.
    """
    table = hooks_and_contents(doubled_diagram(alpha))
    return [h for (i, j), (h, _) in sorted(table.items()) if i > j]


def beta_numbers(lam, length: int | None = None) -> list[int]:
    n = len(lam) if length is None else length
    parts = list(lam) + [0] * (n - len(lam))
    return [parts[i] + n - 1 - i for i in range(n)]


def from_beta(beta) -> tuple[int, ...]:
    beta = sorted(beta, reverse=True)
    n = len(beta)
    return canonical(beta[i] - (n - 1 - i) for i in range(n))


def r_core(lam, r: int) -> tuple[int, ...]:
    """The r-core, by sliding beads down the runners of an r-abacus."""
    if r < 1:
        raise ValueError("r must be positive")
    lam = tuple(lam)
    beta = beta_numbers(lam)
    runners = Counter(b % r for b in beta)
    packed = [res + r * k for res, count in runners.items() for k in range(count)]
    return from_beta(packed)


def r_weight(lam, r: int) -> int:
    """Number of r-rim-hooks removed on the way to the core."""
    return (size(lam) - size(r_core(lam, r))) // r


def remove_rim_hooks(lam, k: int):
    """Yield (shape, leg length) for every removable rim hook of length k."""
    beta = beta_numbers(lam)
    occupied = set(beta)
    for b in beta:
        if b - k >= 0 and b - k not in occupied:
            leg = sum(1 for c in beta if b - k < c < b)
            new = [c for c in beta if c != b] + [b - k]
            yield from_beta(new), leg


def frobenius_round_trip(lam) -> bool:
    return from_frobenius(*frobenius_coords(lam)) == tuple(lam)
