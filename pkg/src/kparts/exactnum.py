"""Exact scalar arithmetic: rationals, Bernoulli machinery, Stirling numbers,
and arithmetic in cyclotomic fields.

Every value here is exact.  Rationals are plain :class:`fractions.Fraction`
(already stored in lowest terms with positive denominator), re-exported as
``Rat``.  No floating point enters any code path in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import Irrational

Rat = Fraction

__all__ = [
    "Rat",
    "CycloElt",
    "bernoulli_number",
    "bernoulli_numbers",
    "bernoulli_poly_eval",
    "bernoulli_barnes",
    "bernoulli_barnes_series",
    "compositions",
    "stirling_unsigned",
    "stirling_row",
    "lcm_upto",
    "euler_phi",
    "cyclotomic_poly",
    "cyclo_root_power",
    "cyclo_rational",
    "cyclo_extract_rational",
]


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials
# ---------------------------------------------------------------------------

_BERNOULLI: list[Fraction] = [Fraction(1)]


def bernoulli_numbers(upto: int) -> list[Fraction]:
    """B_0..B_upto under the t/(e^t - 1) convention, so B_1 = -1/2.

    Computed by the recurrence sum(C(l+1, i) * B_i, i=0..l) = 0 for l >= 1.
    """
    if upto < 0:
        raise ValueError("upto must be >= 0")
    while len(_BERNOULLI) <= upto:
        ell = len(_BERNOULLI)
        s = sum(math.comb(ell + 1, i) * _BERNOULLI[i] for i in range(ell))
        _BERNOULLI.append(Fraction(-s, ell + 1))
    return _BERNOULLI[: upto + 1]


def bernoulli_number(n: int) -> Fraction:
    return bernoulli_numbers(n)[n]


@lru_cache(maxsize=None)
def bernoulli_poly_eval(n: int, x: Fraction) -> Fraction:
    """Value of the n-th Bernoulli polynomial sum(C(n,i) B_{n-i} x^i)."""
    bern = bernoulli_numbers(n)
    acc = Fraction(0)
    xp = Fraction(1)
    for i in range(n + 1):
        acc += math.comb(n, i) * bern[n - i] * xp
        xp *= x
    return acc


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


@lru_cache(maxsize=None)
def bernoulli_barnes_series(a: tuple[int, ...], upto: int) -> tuple[Fraction, ...]:
    """B_0(a)..B_upto(a) where B_j(a) is the multinomial convolution
    sum over i_1+...+i_k = j of  (j; i_1..i_k) B_{i_1}..B_{i_k} a_1^{i_1}..a_k^{i_k}.

    Computed as the coefficient product of the k exponential series
    sum_l B_l (a_i t)^l / l!, which is the same convolution.
    """
    if not a:
        raise ValueError("a must be nonempty")
    bern = bernoulli_numbers(upto)
    fact = [math.factorial(i) for i in range(upto + 1)]
    prod = [Fraction(1)] + [Fraction(0)] * upto
    for ai in a:
        series = [bern[l] * Fraction(ai) ** l / fact[l] for l in range(upto + 1)]
        nxt = [Fraction(0)] * (upto + 1)
        for i, c in enumerate(prod):
            if c:
                for j in range(upto + 1 - i):
                    nxt[i + j] += c * series[j]
        prod = nxt
    return tuple(prod[j] * fact[j] for j in range(upto + 1))


def bernoulli_barnes(j: int, a: Sequence[int]) -> Fraction:
    """The j-th generalized Bernoulli number attached to the part sizes `a`."""
    if j < 0:
        raise ValueError("j must be >= 0")
    if not a or any(ai < 1 for ai in a):
        raise ValueError("a must be a nonempty sequence of positive integers")
    return bernoulli_barnes_series(tuple(a), j)[j]


# ---------------------------------------------------------------------------
# Stirling numbers (unsigned, first kind) and small arithmetic
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _stirling_rows(n: int) -> tuple[tuple[int, ...], ...]:
    rows: list[tuple[int, ...]] = [(1,)]
    for nn in range(1, n + 1):
        prev = rows[nn - 1]
        row = [0] * (nn + 1)
        for kk in range(nn + 1):
            left = prev[kk - 1] if 1 <= kk <= nn else 0
            right = prev[kk] if kk < nn else 0
            row[kk] = left + (nn - 1) * right
        rows.append(tuple(row))
    return tuple(rows)


def stirling_unsigned(n: int, k: int) -> int:
    """Coefficient of x^k in the rising factorial x(x+1)...(x+n-1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if k < 0 or k > n:
        return 0
    return _stirling_rows(n)[n][k]


def stirling_row(n: int) -> tuple[int, ...]:
    return _stirling_rows(n)[n]


def lcm_upto(k: int) -> int:
    """lcm(1, 2, ..., k), the natural period of the k-part counting sequence."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return math.lcm(*range(1, k + 1))


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("n must be >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# ---------------------------------------------------------------------------
# Cyclotomic field arithmetic
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_poly(j: int) -> tuple[int, ...]:
    """Integer coefficients of the j-th cyclotomic polynomial, low degree first.

    Built as the exact quotient of x^j - 1 by the product of the cyclotomic
    polynomials of the proper divisors of j.
    """
    if j < 1:
        raise ValueError("j must be >= 1")
    num = [-1] + [0] * (j - 1) + [1]  # x^j - 1
    for d in _divisors(j):
        if d == j:
            continue
        num = _int_poly_quotient(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _int_poly_quotient(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials; den must be monic and divide num."""
    num = num[:]
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        out[i - dd] = c
        if c:
            for t in range(dd + 1):
                num[i - dd + t] -= c * den[t]
    if any(num[:dd]):
        raise ArithmeticError("polynomial division left a remainder")
    return out


def _reduce_mod_cyclotomic(order: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    phi = cyclotomic_poly(order)
    deg = len(phi) - 1
    cs = coeffs[:]
    for i in range(len(cs) - 1, deg - 1, -1):
        c = cs[i]
        if c:
            for t in range(deg + 1):
                cs[i - deg + t] -= c * phi[t]
    cs = cs[:deg] if len(cs) >= deg else cs + [Fraction(0)] * (deg - len(cs))
    return tuple(cs)


@dataclass(frozen=True)
class CycloElt:
    """Element of the field of rationals extended by a primitive `order`-th
    root of unity, reduced modulo the cyclotomic polynomial of that order.

    `coeffs` has length phi(order); the element is rational exactly when all
    positive-degree coefficients vanish.
    """

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != euler_phi(self.order):
            raise ValueError("coefficient vector has wrong length for order")

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other: "CycloElt | Fraction | int") -> "CycloElt":
        if isinstance(other, CycloElt):
            if other.order != self.order:
                raise ValueError("mixed cyclotomic orders")
            return other
        return cyclo_rational(self.order, Fraction(other))

    def __add__(self, other: "CycloElt | Fraction | int") -> "CycloElt":
        o = self._coerce(other)
        return CycloElt(self.order, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloElt":
        return CycloElt(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other: "CycloElt | Fraction | int") -> "CycloElt":
        return self + (-self._coerce(other))

    def __rsub__(self, other: "CycloElt | Fraction | int") -> "CycloElt":
        return self._coerce(other) + (-self)

    def __mul__(self, other: "CycloElt | Fraction | int") -> "CycloElt":
        if isinstance(other, (int, Fraction)):
            return CycloElt(self.order, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        conv = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    conv[i + j] += a * b
        return CycloElt(self.order, _reduce_mod_cyclotomic(self.order, conv))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "CycloElt":
        if e < 0:
            raise ValueError("negative powers not supported; use root powers")
        result = cyclo_rational(self.order, Fraction(1))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CycloElt):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    # -- queries ----------------------------------------------------------

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def cyclo_rational(order: int, value: Fraction | int) -> CycloElt:
    coeffs = [Fraction(0)] * euler_phi(order)
    coeffs[0] = Fraction(value)
    return CycloElt(order, tuple(coeffs))


@lru_cache(maxsize=None)
def cyclo_root_power(j: int, e: int) -> CycloElt:
    """The e-th power of the primitive j-th root of unity, as a reduced element."""
    if j < 1:
        raise ValueError("j must be >= 1")
    t = e % j
    mono = [Fraction(0)] * t + [Fraction(1)]
    return CycloElt(j, _reduce_mod_cyclotomic(j, mono))


def cyclo_extract_rational(z: CycloElt) -> Fraction:
    """Constant coefficient of z, provided z is rational; raises Irrational
    otherwise.  Callers treat the error as a formula-convention failure."""
    if not z.is_rational():
        raise Irrational(f"order-{z.order} element is not rational: {z.coeffs}")
    return z.coeffs[0]
