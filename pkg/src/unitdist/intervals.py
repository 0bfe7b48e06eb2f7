"""Certified square-root bounds for exact rationals.

``sqrt_bounds(q, bits)`` returns dyadic rationals ``lo <= sqrt(q) <= hi``
with ``hi - lo <= 2**-bits`` (and ``lo == hi`` when the root is exact at that
precision). Comparisons of sums of roots retry at doubled precision until
the sign is certain or the cap is reached.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import isqrt

START_BITS = 64
DEFAULT_CAP = 1024


class PrecisionError(ArithmeticError):
    """Sign could not be certified within the precision cap."""


def precision_cap() -> int:
    raw = os.environ.get("UCL_PRECISION_CAP")
    if not raw:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"UCL_PRECISION_CAP must be an integer, got {raw!r}") from None
    if cap < START_BITS:
        raise ValueError(f"UCL_PRECISION_CAP must be at least {START_BITS}")
    return cap


def exact_sqrt(q: Fraction) -> Fraction | None:
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative number")
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_bounds(q: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative number")
    root = exact_sqrt(q)
    if root is not None:
        return root, root
    scale = 1 << (2 * bits)
    s = isqrt(q.numerator * scale // q.denominator)
    return Fraction(s, 1 << bits), Fraction(s + 1, 1 << bits)


def sign_of_root_sum(terms, cap: int | None = None) -> int:
    """Sign of ``sum c * sqrt(q)`` over ``terms = [(c, q), ...]``.

    Rational coefficients, nonnegative rational radicands. Returns -1, 0 or 1.
    Zero is only reported when every root is rational and the sum is exactly
    zero; an irrational sum too close to zero raises :class:`PrecisionError`.
    """
    cap = precision_cap() if cap is None else cap
    roots = [exact_sqrt(q) for _, q in terms]
    if all(r is not None for r in roots):
        total = sum((Fraction(c) * r for (c, _), r in zip(terms, roots)), Fraction(0))
        return (total > 0) - (total < 0)
    bits = START_BITS
    while True:
        lo = hi = Fraction(0)
        for c, q in terms:
            a, b = sqrt_bounds(q, bits)
            c = Fraction(c)
            if c >= 0:
                lo += c * a
                hi += c * b
            else:
                lo += c * b
                hi += c * a
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if bits >= cap:
            raise PrecisionError(f"sign undecided at {bits} bits: interval [{float(lo)}, {float(hi)}]")
        bits = min(2 * bits, cap)
