"""Residue densities of p(n, k) and q(n, k) modulo m.

The mod-m sequence of p(n, k) satisfies the integer linear recurrence whose
characteristic polynomial is prod_{i=1..k} (1 - z^i) (order M = k(k+1)/2,
trailing coefficient +-1), hence is purely periodic once n > k.  A candidate
period is certified by checking agreement over M consecutive positions,
which the recurrence then propagates forever; densities over a certified
period are exact.  Anything uncertified is reported as an empirical ratio
and labelled as such.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DomainError, WindowTooSmall
from .exactnum import lcm_upto
from .oracle import staircase

__all__ = [
    "DensityReport",
    "mod_sequence",
    "recurrence_coeffs",
    "residue_density",
    "check_bound_nonzero",
    "density_survey",
    "odd_density_flags",
]

DEFAULT_WINDOW = 100_000


@dataclass(frozen=True)
class DensityReport:
    k: int
    m: int
    i: int
    which: str
    density: Fraction
    period: int | None
    window: int
    certified: bool


@lru_cache(maxsize=None)
def recurrence_coeffs(k: int) -> tuple[int, ...]:
    """Coefficients of prod_{i=1..k} (1 - z^i), low degree first."""
    poly = [1]
    for i in range(1, k + 1):
        nxt = [0] * (len(poly) + i)
        for d, c in enumerate(poly):
            nxt[d] += c
            nxt[d + i] -= c
        poly = nxt
    return tuple(poly)


@lru_cache(maxsize=64)
def mod_sequence(k: int, m: int, n_max: int, which: str = "p") -> tuple[int, ...]:
    """p(n, k) mod m (or q) for n = 0..n_max, all arithmetic reduced mod m."""
    if k < 1 or m < 2:
        raise DomainError("need k >= 1 and m >= 2")
    prev = [0] * (n_max + 1)
    prev[0] = 1 % m
    cur = prev
    for kk in range(1, k + 1):
        cur = [0] * (n_max + 1)
        for n in range(1, n_max + 1):
            v = prev[n - 1]
            if n >= kk:
                v += cur[n - kk]
            cur[n] = v % m
        prev = cur
    if which == "p":
        return tuple(cur)
    if which == "q":
        shift = staircase(k)
        return tuple(cur[n - shift] if n >= shift else 0 for n in range(n_max + 1))
    raise DomainError(f"which must be 'p' or 'q', got {which!r}")


def _check_recurrence(seq: Sequence[int], k: int, m: int, lo: int, hi: int) -> bool:
    coeffs = recurrence_coeffs(k)
    for n in range(lo, min(hi, len(seq))):
        acc = 0
        for t, c in enumerate(coeffs):
            if n - t >= 0:
                acc += c * seq[n - t]
        if acc % m:
            return False
    return True


def residue_density(k: int, m: int, i: int, which: str = "p",
                    n_max: int = DEFAULT_WINDOW) -> DensityReport:
    """Density of {n : value(n, k) = i (mod m)}, exact when a period certifies.

    Candidate periods are multiples of D = lcm(1..k) up to m^2 * D * k; if the
    window cannot accommodate the next untested candidate the search raises
    WindowTooSmall rather than fall back silently.
    """
    if not 0 <= i < m:
        raise DomainError(f"residue {i} out of range mod {m}")
    seq = mod_sequence(k, m, n_max, which)
    target = i % m
    D = lcm_upto(k)
    M = k * (k + 1) // 2
    start = k + 1 + (staircase(k) if which == "q" else 0)
    cap = m * m * D * k
    period = None
    p = D
    while p <= cap:
        if start + p + M - 1 > n_max:
            raise WindowTooSmall(
                f"window {n_max} cannot certify candidate period {p} "
                f"(needs {start + p + M - 1})")
        if all(seq[t] == seq[t + p] for t in range(start, start + M)):
            if not _check_recurrence(seq, k, m, start, start + p + M):
                raise ArithmeticError("mod sequence violates its recurrence")
            period = p
            break
        p += D
    if period is not None:
        hits = sum(1 for t in range(start, start + period) if seq[t] == target)
        return DensityReport(k, m, i, which, Fraction(hits, period),
                             period, n_max, True)
    hits = sum(1 for t in range(1, n_max + 1) if seq[t] == target)
    return DensityReport(k, m, i, which, Fraction(hits, n_max), None, n_max, False)


def check_bound_nonzero(k: int, m: int, which: str = "p",
                        n_max: int = DEFAULT_WINDOW) -> tuple[Fraction, Fraction, bool]:
    """Density of nonzero residues against the lower bound 1 / C(k+1, 2)."""
    zero_report = residue_density(k, m, 0, which, n_max)
    density = 1 - zero_report.density
    bound = Fraction(1, (k + 1) * k // 2)
    return (density, bound, density >= bound)


def density_survey(k_max: int, m_set: Iterable[int], which: str = "p",
                   n_max: int = DEFAULT_WINDOW) -> list[DensityReport]:
    """Full (k, m, i) grid of reports in deterministic order."""
    out = []
    for k in range(1, k_max + 1):
        for m in sorted(set(m_set)):
            for i in range(m):
                out.append(residue_density(k, m, i, which, n_max))
    return out


def odd_density_flags(k_max: int, which: str = "p",
                      n_max: int = DEFAULT_WINDOW) -> list[tuple[int, Fraction, bool]]:
    """Per-k odd-value density with the <= 2/3 flag.

    The claim that the flag holds for infinitely many k is not reproducible
    at desk scale; this reports the per-k instances so the caller can check
    the observed at-k-or-at-k+1 pattern on the tested range.
    """
    out = []
    for k in range(1, k_max + 1):
        rep = residue_density(k, 2, 1, which, n_max)
        out.append((k, rep.density, rep.density <= Fraction(2, 3)))
    return out
