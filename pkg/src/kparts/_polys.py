"""Dense univariate polynomial helpers over exact rationals.

Coefficient lists are ordered low degree first.  These are internal:
no trimming guarantees beyond what each function documents.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Coeffs = Sequence[Fraction]


def poly_add(p: Coeffs, q: Coeffs) -> list[Fraction]:
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return out


def poly_scale(p: Coeffs, c: Fraction) -> list[Fraction]:
    return [ci * c for ci in p]


def poly_mul(p: Coeffs, q: Coeffs) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return out


def poly_eval(p: Coeffs, x: Fraction | int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(list(p)):
        acc = acc * x + c
    return acc


def poly_trim(p: Coeffs) -> list[Fraction]:
    out = list(p)
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def poly_interpolate(xs: Sequence[int], ys: Sequence[Fraction | int]) -> list[Fraction]:
    """Exact Lagrange interpolation through distinct nodes xs."""
    n = len(xs)
    if len(set(xs)) != n or n != len(ys):
        raise ValueError("need matching lists with distinct nodes")
    acc = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        den = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = poly_mul(basis, [Fraction(-xs[j]), Fraction(1)])
            den *= xs[i] - xs[j]
        acc = poly_add(acc, poly_scale(basis, Fraction(ys[i]) / den))
    return acc
