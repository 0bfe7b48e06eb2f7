"""Extremal functions of forbidden 0-1 patterns.

``ex(a, b, P)`` is the largest number of ones in an ``a x b`` 0-1 matrix that
does not contain ``P`` as a submatrix. This module computes it exactly by
branch and bound at small sizes, glues patterns corner to corner, evaluates
the closed-form upper bounds and reproduces the 3x3 classification.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import kernels
from .checks import contains_pattern
from .matrix import ZeroOneMatrix

DEFAULT_BUDGET = 50_000_000


class BudgetExhausted(RuntimeError):
    """The node budget ran out; ``lower_bound`` is the best value found."""

    def __init__(self, lower_bound, example, nodes):
        super().__init__(f"node budget exhausted after {nodes} nodes; ex >= {lower_bound} (inexact)")
        self.lower_bound = lower_bound
        self.example = example
        self.nodes = nodes
        self.exact = False


class GlueError(ValueError):
    pass


# Pattern catalog. Blank cells of displayed patterns are 0 (unconstrained).
FUREDI = ZeroOneMatrix([[1, 1, 0], [1, 0, 1]])
TARDOS_A = ZeroOneMatrix([[1, 0, 1], [0, 1, 1]])
TARDOS_B = ZeroOneMatrix([[1, 1], [1, 0], [0, 1]])
THEOREM1_CORE = ZeroOneMatrix([[1, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 1]])
INTERTWINE_3 = ZeroOneMatrix([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
INTERTWINE_4 = ZeroOneMatrix([[0, 0, 1, 1], [0, 1, 0, 1], [1, 0, 1, 0], [1, 1, 0, 0]])
SQUARE = ZeroOneMatrix([[1, 1], [1, 1]])
GLUE_EXAMPLE_A = ZeroOneMatrix([[1, 1], [0, 1]])
GLUE_EXAMPLE_B = ZeroOneMatrix([[1, 1], [1, 0]])

CATALOG = {
    "FUREDI": FUREDI,
    "TARDOS_A": TARDOS_A,
    "TARDOS_B": TARDOS_B,
    "THEOREM1_CORE": THEOREM1_CORE,
    "INTERTWINE_3": INTERTWINE_3,
    "INTERTWINE_4": INTERTWINE_4,
}


@dataclass(frozen=True)
class ExResult:
    a: int
    b: int
    pattern: ZeroOneMatrix
    value: int
    extremal_example: ZeroOneMatrix
    nodes: int = field(default=0, compare=False)

    def to_dict(self):
        return {
            "a": self.a,
            "b": self.b,
            "pattern": self.pattern.tolist(),
            "value": self.value,
            "example": self.extremal_example.tolist(),
            "nodes": self.nodes,
            "exact": True,
        }


def ex_bruteforce(a: int, b: int, pattern: ZeroOneMatrix, budget: int = DEFAULT_BUDGET) -> ExResult:
    if a < 1 or b < 1:
        raise ValueError("matrix dimensions must be positive")
    if pattern.ones() == 0:
        raise ValueError("pattern must contain at least one 1")
    value, rows, nodes, complete = kernels.ex_search(a, b, pattern.row_masks(), pattern.cols, budget)
    example = ZeroOneMatrix.from_row_masks(rows, b)
    if not complete:
        raise BudgetExhausted(value, example, nodes)
    return ExResult(a, b, pattern, value, example, nodes)


def glue(A: ZeroOneMatrix, B: ZeroOneMatrix) -> ZeroOneMatrix:
    """Place ``B`` diagonally below-right of ``A`` sharing one corner cell.

    ``A``'s bottom-right 1 and ``B``'s top-left 1 become the same entry.
    """
    if A.entries[-1][-1] != 1:
        raise GlueError("bottom-right entry of A must be 1")
    if B.entries[0][0] != 1:
        raise GlueError("top-left entry of B must be 1")
    rows = A.rows + B.rows - 1
    cols = A.cols + B.cols - 1
    out = [[0] * cols for _ in range(rows)]
    for i, j in A.one_positions():
        out[i][j] = 1
    for i, j in B.one_positions():
        out[A.rows - 1 + i][A.cols - 1 + j] = 1
    return ZeroOneMatrix(out)


@dataclass(frozen=True)
class Lemma1Report:
    a: int
    b: int
    ex_a: int
    ex_b: int
    ex_glued: int
    glued: ZeroOneMatrix

    @property
    def holds(self) -> bool:
        return self.ex_a + self.ex_b >= self.ex_glued

    def to_dict(self):
        return {
            "a": self.a,
            "b": self.b,
            "ex_A": self.ex_a,
            "ex_B": self.ex_b,
            "ex_C": self.ex_glued,
            "C": self.glued.tolist(),
            "holds": self.holds,
        }


def verify_lemma1(a: int, b: int, A: ZeroOneMatrix, B: ZeroOneMatrix, budget: int = DEFAULT_BUDGET, cache=None) -> Lemma1Report:
    """Compute ``ex`` for ``A``, ``B`` and their gluing and compare."""
    C = glue(A, B)
    cache = {} if cache is None else cache

    def ex(p):
        key = (a, b, p)
        if key not in cache:
            cache[key] = ex_bruteforce(a, b, p, budget).value
        return cache[key]

    return Lemma1Report(a, b, ex(A), ex(B), ex(C), C)


# -- bound formulas ------------------------------------------------------------

LOG2_BITS = 40
_WORK_BITS = 128


def log2_upper(n: int) -> Fraction:
    """Dyadic upper bound on ``log2(n)``, exact when ``n`` is a power of two.

    The fractional part is produced one bit at a time by repeated squaring on
    a fixed-point value that is always rounded up, so every intermediate
    value dominates the true one; the result exceeds ``log2(n)`` by less than
    ``2**-32``.
    """
    if n < 1:
        raise ValueError("log2 needs a positive integer")
    k = n.bit_length() - 1
    if n == 1 << k:
        return Fraction(k)
    one = 1 << _WORK_BITS
    # y = n / 2**k in [1, 2), fixed point with _WORK_BITS fractional bits, rounded up
    y = -((-n << _WORK_BITS) >> k)
    frac = 0
    for _ in range(LOG2_BITS):
        y = -((-y * y) >> _WORK_BITS)
        frac <<= 1
        if y >= 2 * one:
            frac |= 1
            y = -((-y) >> 1)
    return k + Fraction(frac + 1, 1 << LOG2_BITS)


def tardos_bound(a: int, b: int, which: str = "A") -> Fraction:
    """Upper bound ``(a+b)/2 * log2(a+b) + 2a`` (``+ 2b`` for pattern B)."""
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    which = which.upper()
    if which not in ("A", "B"):
        raise ValueError("which must be 'A' or 'B'")
    extra = 2 * a if which == "A" else 2 * b
    return Fraction(a + b, 2) * log2_upper(a + b) + extra


def theorem1_bound(n: int) -> Fraction:
    """Upper bound ``n log2 n + 4n`` on unit distances in a convex n-gon."""
    if n < 3:
        raise ValueError("a polygon has at least 3 vertices")
    return n * log2_upper(n) + 4 * n


# -- 3x3 classification --------------------------------------------------------


def _is_single_cycle(m: ZeroOneMatrix) -> bool:
    """Ones form one cycle: every nonempty row and column has two ones and
    the row/column graph on the ones is connected."""
    for r in m.entries:
        if sum(r) not in (0, 2):
            return False
    for c in zip(*m.entries):
        if sum(c) not in (0, 2):
            return False
    ones = m.one_positions()
    if not ones:
        return False
    seen = {ones[0]}
    stack = [ones[0]]
    while stack:
        i, j = stack.pop()
        for p in ones:
            if p not in seen and (p[0] == i or p[1] == j):
                seen.add(p)
                stack.append(p)
    return len(seen) == len(ones)


@dataclass
class Corollary2Audit:
    survivors: list = field(default_factory=list)
    discarded: list = field(default_factory=list)  # (matrix, filter name)
    candidates: int = 0

    def to_dict(self):
        return {
            "candidates": self.candidates,
            "survivors": [m.tolist() for m in self.survivors],
            "discarded": [{"matrix": m.tolist(), "filter": f} for m, f in self.discarded],
        }


def enumerate_corollary2(audit: Corollary2Audit | None = None) -> list[ZeroOneMatrix]:
    """All 3x3 0-1 matrices with at least six ones that survive two filters.

    A candidate is dropped if it contains the all-ones 2x2 (ruled out by the
    diagonal property) or if its ones form a cycle with a 1 in the top-left or
    bottom-right corner.
    """
    audit = Corollary2Audit() if audit is None else audit
    for bits in itertools.product((0, 1), repeat=9):
        if sum(bits) < 6:
            continue
        m = ZeroOneMatrix([bits[0:3], bits[3:6], bits[6:9]])
        audit.candidates += 1
        if contains_pattern(m, SQUARE) is not None:
            audit.discarded.append((m, "contains all-ones 2x2"))
            continue
        if _is_single_cycle(m) and (m.entries[0][0] or m.entries[2][2]):
            audit.discarded.append((m, "cycle with a corner 1"))
            continue
        audit.survivors.append(m)
    return list(audit.survivors)

