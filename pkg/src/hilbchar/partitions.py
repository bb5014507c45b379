"""Partitions, Young diagram statistics and fixed-point weight data."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import NamedTuple


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Partitions compare as tuples, so sorting a list of them in reverse gives
    reverse-lexicographic order.
    """

    def __new__(cls, parts=()):
        parts = tuple(int(p) for p in parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts must be weakly decreasing: {parts}")
        return super().__new__(cls, parts)

    @property
    def parts(self) -> tuple:
        return tuple(self)

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def conjugate(self) -> "Partition":
        if not self:
            return self
        return Partition(sum(1 for p in self if p > j) for j in range(self[0]))

    def multiplicities(self) -> Counter:
        return Counter(self)

    def __repr__(self):
        return f"Partition({tuple(self)})"

    def __str__(self):
        return "(" + ",".join(map(str, self)) + ")" if self else "()"


EMPTY = Partition()


class Cell(NamedTuple):
    row: int
    column: int
    arm: int
    leg: int


class Bipartition(NamedTuple):
    first: Partition
    second: Partition

    @property
    def total(self) -> int:
        return self.first.size + self.second.size


def _partitions(n: int, largest: int):
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


@lru_cache(maxsize=None)
def _partition_tuple(n: int) -> tuple:
    return tuple(Partition(p) for p in _partitions(n, n))


def enumerate_partitions(n: int) -> list:
    """All partitions of ``n`` in reverse-lexicographic order: (n), (n-1,1), ..."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partition_tuple(n))


def enumerate_bipartitions(n: int) -> list:
    """All ordered pairs of partitions of total size ``n``.

    Ordered by the size of the first partition (descending), then by
    reverse-lex order within each slot.
    """
    out = []
    for a in range(n, -1, -1):
        for lam0 in _partition_tuple(a):
            for lam1 in _partition_tuple(n - a):
                out.append(Bipartition(lam0, lam1))
    return out


def partition_count(n: int) -> int:
    return len(_partition_tuple(n))


@lru_cache(maxsize=None)
def cells(lam: Partition) -> tuple:
    lam = Partition(lam)
    conj = lam.conjugate()
    return tuple(
        Cell(i + 1, j + 1, lam[i] - j - 1, conj[j] - i - 1)
        for i in range(len(lam))
        for j in range(lam[i])
    )


def hook_product(lam: Partition, alpha, beta):
    """``prod_w (alpha * leg(w) + beta * (arm(w) + 1))``; 1 for the empty partition."""
    result = Fraction(1)
    for c in cells(lam):
        result = result * (alpha * c.leg + beta * (c.arm + 1))
    return result


def weight_multiset(lam: Partition, alpha: int, beta: int) -> list:
    """Sorted torus weights ``alpha l + beta (a+1), -alpha (l+1) - beta a`` over the cells."""
    out = []
    for c in cells(lam):
        out.append(alpha * c.leg + beta * (c.arm + 1))
        out.append(-alpha * (c.leg + 1) - beta * c.arm)
    return sorted(out)


def z_lambda(lam: Partition) -> int:
    out = 1
    for part, m in Counter(lam).items():
        out *= part ** m * factorial(m)
    return out


def dominance_leq(mu: Partition, lam: Partition) -> bool:
    """True iff ``mu`` is dominated by ``lam``."""
    if sum(mu) != sum(lam):
        raise ValueError(f"size mismatch: |{mu}| != |{lam}|")
    s_mu = s_lam = 0
    for i in range(max(len(mu), len(lam))):
        s_mu += mu[i] if i < len(mu) else 0
        s_lam += lam[i] if i < len(lam) else 0
        if s_mu > s_lam:
            return False
    return True
