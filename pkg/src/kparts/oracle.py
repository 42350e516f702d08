"""Ground-truth partition counting by dynamic programming and enumeration.

Everything else in the package is validated against this module.  The two
central counts are p(n, k) -- partitions of n into exactly k parts -- and
q(n, k) -- partitions into k distinct parts, related by the staircase shift
q(n, k) = p(n - C(k,2), k).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import OutOfTable, TooLarge

ENUMERATION_GUARD = 60

__all__ = [
    "PTable",
    "p_table",
    "q_of",
    "restricted_pa",
    "restricted_pa_upto",
    "enumerate_partitions",
    "staircase",
]


def staircase(k: int) -> int:
    """C(k, 2), the shift between distinct-part and ordinary partitions."""
    return k * (k - 1) // 2


@dataclass(frozen=True)
class PTable:
    """Exact table of p(n, k) for 0 <= n <= n_max, 0 <= k <= k_max.

    p(n, k) = 0 exactly when n < k (for k >= 1), and p(0, 0) = 1.
    """

    n_max: int
    k_max: int
    rows: tuple[tuple[int, ...], ...]

    def p(self, n: int, k: int) -> int:
        if not (0 <= n <= self.n_max and 0 <= k <= self.k_max):
            raise OutOfTable(f"p({n},{k}) outside table ({self.n_max},{self.k_max})")
        return self.rows[n][k]

    def q(self, n: int, k: int) -> int:
        return q_of(n, k, self)


@lru_cache(maxsize=32)
def p_table(n_max: int, k_max: int) -> PTable:
    """Build the table via p(n,k) = p(n-1,k-1) + p(n-k,k)."""
    rows = [[0] * (k_max + 1) for _ in range(n_max + 1)]
    rows[0][0] = 1
    for n in range(1, n_max + 1):
        for k in range(1, k_max + 1):
            acc = rows[n - 1][k - 1]
            if n >= k:
                acc += rows[n - k][k]
            rows[n][k] = acc
    return PTable(n_max, k_max, tuple(tuple(r) for r in rows))


def q_of(n: int, k: int, table: PTable) -> int:
    """q(n, k) = p(n - C(k,2), k) when n >= k + C(k,2), else 0."""
    if n < 0 or k < 0:
        raise OutOfTable("negative index")
    shift = staircase(k)
    if n < k + shift:
        return 0
    return table.p(n - shift, k)


def _check_parts(parts: Sequence[int]) -> tuple[int, ...]:
    tup = tuple(parts)
    if not tup or any(a < 1 for a in tup):
        raise ValueError("parts must be a nonempty sequence of positive integers")
    return tup


def restricted_pa_upto(n_max: int, parts: Sequence[int]) -> list[int]:
    """Counts of nonnegative solutions of sum(a_i * x_i) = n for n = 0..n_max,
    by the standard coin-style DP."""
    tup = _check_parts(parts)
    ways = [0] * (n_max + 1)
    ways[0] = 1
    for a in tup:
        for t in range(a, n_max + 1):
            ways[t] += ways[t - a]
    return ways


def restricted_pa(n: int, parts: Sequence[int]) -> int:
    """Number of nonnegative integer solutions of sum(a_i * x_i) = n."""
    if n < 0:
        return 0
    return restricted_pa_upto(n, parts)[n]


def enumerate_partitions(n: int, k: int) -> list[tuple[int, ...]]:
    """All partitions of n into exactly k parts, each non-increasing.

    Guarded to n <= 60 so the output stays desk-scale.
    """
    if n > ENUMERATION_GUARD:
        raise TooLarge(f"n={n} exceeds enumeration guard {ENUMERATION_GUARD}")
    if k == 0:
        return [()] if n == 0 else []

    out: list[tuple[int, ...]] = []

    def rec(remaining: int, slots: int, cap: int, prefix: list[int]) -> None:
        if slots == 1:
            if 1 <= remaining <= cap:
                out.append(tuple(prefix + [remaining]))
            return
        # largest part first; each later part is at most the current one
        lo = -(-remaining // slots)  # ceil: parts cannot all be below the mean
        for first in range(min(cap, remaining - slots + 1), lo - 1, -1):
            rec(remaining - first, slots - 1, first, prefix + [first])

    rec(n, k, n, [])
    return out
