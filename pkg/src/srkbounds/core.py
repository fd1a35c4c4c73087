"""Ambient-space parameters and exact q-combinatorics.

Everything here works on Python integers and :class:`fractions.Fraction`;
nothing in the computation path touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence


class ParameterError(ValueError):
    """Base class for invalid ambient-space parameters."""


class NotPrimePowerError(ParameterError):
    pass


class EmptyBlocksError(ParameterError):
    pass


class NonPositiveEntryError(ParameterError):
    pass


class LengthMismatchError(ParameterError):
    pass


def prime_power_decomposition(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` and ``p`` prime, or ``None``."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        return q, 1
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None


def is_prime_power(q: int) -> bool:
    return prime_power_decomposition(q) is not None


@dataclass(frozen=True)
class SrkParams:
    """Shape of the space Mat(n, m, F_q) = F_q^{n_1 x m_1} + ... + F_q^{n_t x m_t}.

    Instances built through :func:`normalize_params` satisfy
    ``m_1 >= ... >= m_t`` and ``m_i >= n_i``.
    """

    q: int
    n: tuple[int, ...]
    m: tuple[int, ...]

    @property
    def t(self) -> int:
        return len(self.n)

    @property
    def N(self) -> int:
        return sum(self.n)

    @property
    def blocks(self) -> tuple[tuple[int, int], ...]:
        return tuple(zip(self.n, self.m))

    @property
    def dimension(self) -> int:
        """Dimension of the space over F_q, i.e. sum of n_i * m_i."""
        return sum(a * b for a, b in self.blocks)

    @property
    def size(self) -> int:
        return self.q ** self.dimension

    @property
    def max_m(self) -> int:
        return max(self.m)

    def __str__(self) -> str:
        n = ",".join(map(str, self.n))
        m = ",".join(map(str, self.m))
        return f"q={self.q} n=({n}) m=({m})"


def normalize_params(q: int, n: Sequence[int], m: Sequence[int]) -> SrkParams:
    """Validate and canonicalize block shapes.

    Blocks with ``n_i > m_i`` are transposed (rank is transpose invariant, so
    the metric space is unchanged up to isometry); blocks are then sorted by
    ``m`` descending with ties broken by ``n`` descending.
    """
    n = tuple(int(x) for x in n)
    m = tuple(int(x) for x in m)
    if not n or not m:
        raise EmptyBlocksError("n and m must be non-empty")
    if len(n) != len(m):
        raise LengthMismatchError(f"n has {len(n)} entries but m has {len(m)}")
    if any(x < 1 for x in n + m):
        raise NonPositiveEntryError("all block sizes must be positive")
    if not is_prime_power(q):
        raise NotPrimePowerError(f"q must be a prime power, got {q}")
    blocks = [(min(a, b), max(a, b)) for a, b in zip(n, m)]
    blocks.sort(key=lambda blk: (blk[1], blk[0]), reverse=True)
    return SrkParams(q, tuple(b[0] for b in blocks), tuple(b[1] for b in blocks))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """The q-binomial coefficient [n choose k]_q (number of k-subspaces of F_q^n)."""
    if n < 0 or k < 0 or q < 2:
        raise ValueError("require n >= 0, k >= 0, q >= 2")
    if k > n:
        return 0
    k = min(k, n - k)
    num = prod(q ** (n - i) - 1 for i in range(k))
    den = prod(q ** (i + 1) - 1 for i in range(k))
    return num // den


def rank_count(n: int, m: int, q: int, r: int) -> int:
    """Number of n x m matrices over F_q of rank exactly r."""
    if not 0 <= r <= min(n, m):
        raise ValueError(f"rank {r} out of range for {n}x{m} matrices")
    return gaussian_binomial(n, r, q) * prod(q**m - q**i for i in range(r))


def rank_distribution(n: int, m: int, q: int) -> list[int]:
    """``[rank_count(n, m, q, r) for r in 0..min(n, m)]``."""
    return [rank_count(n, m, q, r) for r in range(min(n, m) + 1)]


def sum_rank_distribution(params: SrkParams) -> list[int]:
    """Counts of tuples by sum-rank, index = sum-rank, length N + 1."""
    dist = [1]
    for a, b in params.blocks:
        block = rank_distribution(a, b, params.q)
        out = [0] * (len(dist) + len(block) - 1)
        for i, x in enumerate(dist):
            for j, y in enumerate(block):
                out[i + j] += x * y
        dist = out
    return dist
