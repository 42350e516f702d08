"""Quasi-polynomial representation of the k-part counting sequence.

p_k(n) := number of solutions of x_1 + 2 x_2 + ... + k x_k = n (so that
p(n, k) = p_k(n - k)) is a quasi-polynomial of degree k-1 whose coefficients
are periodic with period D = lcm(1..k).  The per-residue polynomials
("constituents") are obtained two independent ways:

* interpolation through oracle values, one polynomial per residue class;
* solving a dense linear system whose coefficients are scaled Bernoulli
  polynomial values and whose right-hand side involves generalized
  Bernoulli numbers of the tuple (1, 2, ..., k).

The printed form of that linear system circulates with more than one sign
and scaling convention; a small catalogue is evaluated exactly and the
residual test picks the convention that actually annihilates the
interpolated constituents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._polys import poly_interpolate
from .errors import ConventionUnresolved, SingularSystem
from .exactnum import bernoulli_barnes, bernoulli_poly_eval, lcm_upto
from .oracle import restricted_pa_upto

__all__ = [
    "QuasiPoly",
    "interp_constituents",
    "constituent_matrix_det",
    "system_det",
    "solve_bernoulli_system",
    "system_residual",
    "resolve_rhs_convention",
    "RhsConvention",
    "RHS_CONVENTIONS",
    "det_scaling_check",
]


# ---------------------------------------------------------------------------
# Representation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuasiPoly:
    """Degree-bounded quasi-polynomial stored as a constituent table.

    coeffs[m][v-1] is the coefficient of n^m on the residue class
    n = v (mod period), where the representative v runs over 1..period
    (period stands for the class of 0).
    """

    period: int
    degree_bound: int
    coeffs: tuple[tuple[Fraction, ...], ...]

    def residue_rep(self, n: int) -> int:
        return (n - 1) % self.period + 1

    def constituent(self, v: int) -> tuple[Fraction, ...]:
        """Polynomial (in n) attached to the residue class represented by v."""
        if not 1 <= v <= self.period:
            raise ValueError("representative out of range")
        return tuple(self.coeffs[m][v - 1] for m in range(self.degree_bound + 1))

    def eval(self, n: int) -> Fraction:
        v = self.residue_rep(n)
        acc = Fraction(0)
        for m in range(self.degree_bound, -1, -1):
            acc = acc * n + self.coeffs[m][v - 1]
        return acc


@lru_cache(maxsize=None)
def interp_constituents(k: int) -> QuasiPoly:
    """Constituents of p_k by exact interpolation through oracle values.

    For each residue class v mod D the k nodes v, v+D, ..., v+(k-1)D pin the
    degree <= k-1 polynomial exactly.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    D = lcm_upto(k)
    parts = tuple(range(1, k + 1))
    values = restricted_pa_upto(k * D, parts)
    table = [[Fraction(0)] * D for _ in range(k)]
    for v in range(1, D + 1):
        xs = [v + i * D for i in range(k)]
        ys = [values[x] for x in xs]
        poly = poly_interpolate(xs, ys)
        for m, c in enumerate(poly):
            table[m][v - 1] = c
    return QuasiPoly(D, k - 1, tuple(tuple(row) for row in table))


# ---------------------------------------------------------------------------
# Exact linear algebra (fraction-free)
# ---------------------------------------------------------------------------

def _scale_rows_to_int(rows: list[list[Fraction]]) -> tuple[list[list[int]], list[int]]:
    out = []
    scales = []
    for row in rows:
        scale = math.lcm(*(c.denominator for c in row)) if row else 1
        out.append([int(c * scale) for c in row])
        scales.append(scale)
    return out, scales


def _bareiss_det_int(rows: list[list[int]]) -> int:
    """Fraction-free determinant; every interior division is asserted exact."""
    n = len(rows)
    m = [row[:] for row in rows]
    sign = 1
    prev = 1
    for t in range(n - 1):
        piv = next((r for r in range(t, n) if m[r][t] != 0), None)
        if piv is None:
            return 0
        if piv != t:
            m[t], m[piv] = m[piv], m[t]
            sign = -sign
        for r in range(t + 1, n):
            mrt = m[r][t]
            mtt = m[t][t]
            for c in range(t + 1, n):
                num = m[r][c] * mtt - mrt * m[t][c]
                quo, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("fraction-free elimination divided inexactly")
                m[r][c] = quo
            m[r][t] = 0
        prev = m[t][t]
    return sign * m[n - 1][n - 1]


def _det_exact(rows: list[list[Fraction]]) -> Fraction:
    ints, scales = _scale_rows_to_int(rows)
    det = _bareiss_det_int(ints)
    return Fraction(det, math.prod(scales))


def _solve_exact(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Solve a square rational system by fraction-free forward elimination
    followed by exact back substitution."""
    n = len(a)
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    ints, _ = _scale_rows_to_int(aug)
    prev = 1
    for t in range(n - 1):
        piv = next((r for r in range(t, n) if ints[r][t] != 0), None)
        if piv is None:
            raise SingularSystem(f"rank deficiency at column {t}")
        if piv != t:
            ints[t], ints[piv] = ints[piv], ints[t]
        for r in range(t + 1, n):
            mrt = ints[r][t]
            mtt = ints[t][t]
            for c in range(t + 1, n + 1):
                num = ints[r][c] * mtt - mrt * ints[t][c]
                quo, rem = divmod(num, prev)
                if rem:
                    raise ArithmeticError("fraction-free elimination divided inexactly")
                ints[r][c] = quo
            ints[r][t] = 0
        prev = ints[t][t]
    if ints[n - 1][n - 1] == 0:
        raise SingularSystem("zero pivot in final column")
    x = [Fraction(0)] * n
    for r in range(n - 1, -1, -1):
        acc = Fraction(ints[r][n])
        for c in range(r + 1, n):
            acc -= ints[r][c] * x[c]
        x[r] = acc / ints[r][r]
    return x


# ---------------------------------------------------------------------------
# The Bernoulli-value matrix and its determinant
# ---------------------------------------------------------------------------

def _plain_matrix(k: int) -> list[list[Fraction]]:
    D = lcm_upto(k)
    size = k * D
    rows = []
    for r in range(size):
        row: list[Fraction] = []
        for m in range(k):
            ell = r + m + 1
            for v in range(1, D + 1):
                row.append(bernoulli_poly_eval(ell, Fraction(v, D)) / ell)
        rows.append(row)
    return rows


def _system_matrix(k: int, d_shift: int) -> list[list[Fraction]]:
    D = lcm_upto(k)
    size = k * D
    rows = []
    for r in range(size):
        row: list[Fraction] = []
        for m in range(k):
            ell = r + m + 1
            scale = Fraction(D) ** (r + m + d_shift)
            for v in range(1, D + 1):
                row.append(scale * bernoulli_poly_eval(ell, Fraction(v, D)) / ell)
        rows.append(row)
    return rows


@lru_cache(maxsize=None)
def constituent_matrix_det(k: int) -> Fraction:
    """Determinant of the kD x kD matrix of scaled Bernoulli-polynomial values
    B_{r+m+1}(v/D)/(r+m+1); its nonvanishing makes the constituent system
    solvable."""
    return _det_exact(_plain_matrix(k))


@lru_cache(maxsize=None)
def system_det(k: int) -> Fraction:
    """Determinant of the full linear system (with the period powers)."""
    return _det_exact(_system_matrix(k, _resolved(k).d_shift))


def det_scaling_check(k: int) -> tuple[bool, int]:
    """The system determinant should be the plain determinant rescaled by an
    exact power of the period.  Returns (is_exact_power, exponent)."""
    D = lcm_upto(k)
    plain = constituent_matrix_det(k)
    full = system_det(k)
    if plain == 0:
        return (False, 0)
    ratio = full / plain
    if D == 1:
        return (ratio in (1, -1), 0)
    mag = abs(ratio)
    if mag.denominator != 1:
        return (False, 0)
    n = mag.numerator
    e = 0
    while n % D == 0:
        n //= D
        e += 1
    return (n == 1, e)


def expected_det_exponent(k: int) -> int:
    """Exponent of the period relating the system and plain determinants,
    derived from the row/column scalings: sum of row indices plus D times the
    sum of the per-column power offsets."""
    D = lcm_upto(k)
    size = k * D
    shift = _resolved(k).d_shift
    return size * (size - 1) // 2 + D * (k * (k - 1) // 2 + k * shift)


# ---------------------------------------------------------------------------
# Right-hand-side conventions and the residual test
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RhsConvention:
    """One candidate reading of the constituent linear system.

    d_shift is an extra exponent added to the period power on the left side;
    sign/factor/delta describe the right side
        sign(n, k) * factor(n, k) * B_{n+k}(1..k) + delta * [n == 0].
    """

    name: str
    d_shift: int
    delta: int

    def rhs(self, n: int, k: int) -> Fraction:
        tup = tuple(range(1, k + 1))
        bb = bernoulli_barnes(n + k, tup)
        if self.name in ("printed", "period-shift"):
            sign = 1 if n % 2 == 1 else -1  # (-1)^(n-1)
            val = sign * Fraction(math.factorial(k), math.factorial(n + k)) * bb
        elif self.name == "sign-flip":
            sign = 1 if n % 2 == 0 else -1  # (-1)^n
            val = sign * Fraction(math.factorial(k), math.factorial(n + k)) * bb
        elif self.name == "corrected":
            sign = 1 if k % 2 == 1 else -1  # (-1)^(k-1)
            val = sign * Fraction(math.factorial(n), math.factorial(n + k) * math.factorial(k)) * bb
        else:
            raise ValueError(f"unknown convention {self.name}")
        if n == 0:
            val += self.delta
        return val


RHS_CONVENTIONS: tuple[RhsConvention, ...] = (
    RhsConvention("printed", d_shift=0, delta=-1),
    RhsConvention("sign-flip", d_shift=0, delta=-1),
    RhsConvention("period-shift", d_shift=1, delta=-1),
    RhsConvention("corrected", d_shift=0, delta=+1),
)


def _lhs(qp: QuasiPoly, k: int, n: int, d_shift: int) -> Fraction:
    D = qp.period
    acc = Fraction(0)
    for m in range(qp.degree_bound + 1):
        ell = n + m + 1
        scale = Fraction(D) ** (n + m + d_shift)
        for v in range(1, D + 1):
            c = qp.coeffs[m][v - 1]
            if c:
                acc += c * scale * bernoulli_poly_eval(ell, Fraction(v, D)) / ell
    return acc


def system_residual(qp: QuasiPoly, k: int, n: int,
                    convention: RhsConvention | None = None) -> Fraction:
    """Left side minus right side of the constituent linear system at index n;
    zero exactly when qp solves the system under the given convention."""
    conv = convention or _resolved(k)
    return _lhs(qp, k, n, conv.d_shift) - conv.rhs(n, k)


@dataclass(frozen=True)
class RhsResolution:
    k: int
    passing: tuple[str, ...]
    chosen: RhsConvention
    printed_ok: bool


@lru_cache(maxsize=None)
def resolve_rhs_convention(k: int) -> RhsResolution:
    """Evaluate every catalogued convention against the interpolated
    constituents over the full index range and keep the ones whose residuals
    vanish identically."""
    qp = interp_constituents(k)
    size = k * qp.period
    passing = []
    for conv in RHS_CONVENTIONS:
        if all(system_residual(qp, k, n, conv) == 0 for n in range(size)):
            passing.append(conv.name)
    if not passing:
        raise ConventionUnresolved(
            f"no catalogued right-hand-side convention fits for k={k}")
    by_name = {c.name: c for c in RHS_CONVENTIONS}
    chosen = by_name["corrected"] if "corrected" in passing else by_name[passing[0]]
    return RhsResolution(k, tuple(passing), chosen, "printed" in passing)


def _resolved(k: int) -> RhsConvention:
    return resolve_rhs_convention(k).chosen


@lru_cache(maxsize=None)
def solve_bernoulli_system(k: int, convention_name: str | None = None) -> QuasiPoly:
    """Recover the constituents by solving the kD x kD linear system exactly.

    The unknowns are the coefficients d[m][v]; equation n (0 <= n < kD) reads
    sum_{m,v} d[m][v] D^{n+m(+shift)} B_{n+m+1}(v/D)/(n+m+1) = rhs(n).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if convention_name is None:
        conv = _resolved(k)
    else:
        conv = {c.name: c for c in RHS_CONVENTIONS}[convention_name]
    D = lcm_upto(k)
    a = _system_matrix(k, conv.d_shift)
    b = [conv.rhs(n, k) for n in range(k * D)]
    x = _solve_exact(a, b)
    coeffs = tuple(tuple(x[m * D + v] for v in range(D)) for m in range(k))
    return QuasiPoly(D, k - 1, coeffs)
