"""Exact matrix types and the shared matrix text format.

Three kinds of rectangular matrices are used throughout the package:

* :class:`ZeroOneMatrix` for skeletons, patterns and unit-incidence matrices,
* :class:`ValueMatrix` for exact rational matrices (distance matrices,
  distance-like matrices, LP witnesses),
* :class:`SignMatrix` for the ternary ``1 / + / -`` classification.

All indices are 0-based.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "MatrixFormatError",
    "Sign",
    "Exact",
    "Tolerance",
    "ZeroOneMatrix",
    "ValueMatrix",
    "SignMatrix",
    "parse_rational",
    "format_rational",
    "read_matrix",
    "parse_matrix",
    "format_matrix",
]


class MatrixFormatError(ValueError):
    """Malformed matrix text or an entry outside the matrix kind's alphabet."""


class Sign(enum.Enum):
    ONE = "1"
    PLUS = "+"
    MINUS = "-"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Exact:
    """Classify an entry as "equals 1" only on exact equality."""

    def is_one(self, x: Fraction) -> bool:
        return x == 1


@dataclass(frozen=True)
class Tolerance:
    """Classify ``|x - 1| <= eps`` as "equals 1".

    Only used for the sign classification; the diagonal and obtuse checks
    always compare exactly.
    """

    eps: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        if self.eps < 0:
            raise ValueError("tolerance must be nonnegative")

    def is_one(self, x: Fraction) -> bool:
        return abs(x - 1) <= self.eps


def parse_rational(token: str) -> Fraction:
    """Parse ``"3"``, ``"-2/7"``, ``"0.125"`` or ``"1e-9"`` exactly."""
    try:
        return Fraction(token.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MatrixFormatError(f"not a rational number: {token!r}") from exc


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _check_shape(entries: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(entries)
    if rows < 1:
        raise ValueError("matrix needs at least one row")
    cols = len(entries[0])
    if cols < 1:
        raise ValueError("matrix needs at least one column")
    for row in entries:
        if len(row) != cols:
            raise ValueError("ragged matrix rows")
    return rows, cols


class _Grid:
    entries: tuple

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __iter__(self):
        return iter(self.entries)

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True, eq=True)
class ZeroOneMatrix(_Grid):
    entries: tuple[tuple[int, ...], ...]

    def __init__(self, entries: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(v) for v in r) for r in entries)
        _check_shape(rows)
        for r in rows:
            for v in r:
                if v not in (0, 1):
                    raise ValueError(f"0-1 matrix entry must be 0 or 1, got {v}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def _trusted(cls, rows: tuple) -> "ZeroOneMatrix":
        """Wrap rows already known to be equal-length tuples of 0/1 ints."""
        out = object.__new__(cls)
        object.__setattr__(out, "entries", rows)
        return out

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ZeroOneMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def from_row_masks(cls, masks: Sequence[int], cols: int) -> "ZeroOneMatrix":
        return cls([[(m >> j) & 1 for j in range(cols)] for m in masks])

    def row_masks(self) -> list[int]:
        """Row ``i`` as an int whose bit ``j`` is entry ``(i, j)``."""
        out = []
        for r in self.entries:
            m = 0
            for j, v in enumerate(r):
                if v:
                    m |= 1 << j
            out.append(m)
        return out

    def ones(self) -> int:
        return sum(sum(r) for r in self.entries)

    def one_positions(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.entries) for j, v in enumerate(r) if v]

    def transpose(self) -> "ZeroOneMatrix":
        return ZeroOneMatrix(zip(*self.entries))

    def to_values(self) -> "ValueMatrix":
        return ValueMatrix(self.entries)

    def __str__(self):
        return "\n".join(" ".join(str(v) for v in r) for r in self.entries)


@dataclass(frozen=True, eq=True)
class ValueMatrix(_Grid):
    entries: tuple[tuple[Fraction, ...], ...]
    policy: Exact | Tolerance = field(default=Exact(), compare=False)

    def __init__(self, entries: Iterable[Iterable], policy: Exact | Tolerance = Exact()):
        rows = tuple(tuple(Fraction(v) for v in r) for r in entries)
        _check_shape(rows)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "policy", policy)

    def with_policy(self, policy: Exact | Tolerance) -> "ValueMatrix":
        return ValueMatrix(self.entries, policy)

    def map(self, fn) -> "ValueMatrix":
        return ValueMatrix([[fn(v) for v in r] for r in self.entries], self.policy)

    def transpose(self) -> "ValueMatrix":
        return ValueMatrix(zip(*self.entries), self.policy)

    def reversed(self) -> "ValueMatrix":
        """Reverse both the row order and the column order."""
        return ValueMatrix([r[::-1] for r in self.entries[::-1]], self.policy)

    def integer_scaled(self) -> list[list[int]]:
        """Entries multiplied by the lcm of all denominators.

        Positive scaling preserves every sum comparison, so the checkers work
        on these Python ints instead of Fractions.
        """
        den = 1
        for r in self.entries:
            for v in r:
                d = v.denominator
                if den % d:
                    den = den * d // _gcd(den, d)
        return [[v.numerator * (den // v.denominator) for v in r] for r in self.entries]

    def ranks(self) -> list[list[int]]:
        """Dense ranks of the entries; order comparisons are preserved exactly."""
        distinct = sorted({v for r in self.entries for v in r})
        index = {v: k for k, v in enumerate(distinct)}
        return [[index[v] for v in r] for r in self.entries]

    def __str__(self):
        return "\n".join(" ".join(format_rational(v) for v in r) for r in self.entries)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True, eq=True)
class SignMatrix(_Grid):
    entries: tuple[tuple[Sign, ...], ...]

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(v if isinstance(v, Sign) else Sign(str(v)) for v in r) for r in entries)
        _check_shape(rows)
        object.__setattr__(self, "entries", rows)

    def __str__(self):
        return "\n".join(" ".join(str(v) for v in r) for r in self.entries)


# -- text format ---------------------------------------------------------------

_KINDS = ("01", "VAL", "SIGN")


def _content_lines(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        out.append(s)
    return out


def parse_matrix(text: str):
    """Parse the shared text format into the matrix type named by its header.

    The first content line is ``R C KIND`` with ``KIND`` one of ``01``, ``VAL``
    or ``SIGN``; ``R`` lines of ``C`` tokens follow. Lines starting with ``#``
    are ignored.
    """
    lines = _content_lines(text)
    if not lines:
        raise MatrixFormatError("empty matrix text")
    head = lines[0].split()
    if len(head) != 3:
        raise MatrixFormatError(f"bad header line: {lines[0]!r}")
    try:
        rows, cols = int(head[0]), int(head[1])
    except ValueError as exc:
        raise MatrixFormatError(f"bad header line: {lines[0]!r}") from exc
    kind = head[2].upper()
    if kind not in _KINDS:
        raise MatrixFormatError(f"unknown matrix kind {head[2]!r}")
    if rows < 1 or cols < 1:
        raise MatrixFormatError("matrix dimensions must be positive")
    body = lines[1:]
    if len(body) != rows:
        raise MatrixFormatError(f"expected {rows} rows, found {len(body)}")
    grid = []
    for k, line in enumerate(body):
        toks = line.split()
        if len(toks) != cols:
            raise MatrixFormatError(f"row {k}: expected {cols} tokens, found {len(toks)}")
        grid.append(toks)
    if kind == "01":
        for r in grid:
            for t in r:
                if t not in ("0", "1"):
                    raise MatrixFormatError(f"0-1 token must be 0 or 1, got {t!r}")
        return ZeroOneMatrix([[int(t) for t in r] for r in grid])
    if kind == "SIGN":
        try:
            return SignMatrix(grid)
        except ValueError as exc:
            raise MatrixFormatError(str(exc)) from exc
    return ValueMatrix([[parse_rational(t) for t in r] for r in grid])


def read_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def matrix_kind(m) -> str:
    if isinstance(m, ZeroOneMatrix):
        return "01"
    if isinstance(m, ValueMatrix):
        return "VAL"
    if isinstance(m, SignMatrix):
        return "SIGN"
    raise TypeError(f"not a matrix: {type(m).__name__}")


def format_matrix(m, comments: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for c in comments:
        for line in str(c).splitlines():
            buf.write(f"# {line}\n")
    buf.write(f"{m.rows} {m.cols} {matrix_kind(m)}\n")
    if isinstance(m, ValueMatrix):
        for r in m.entries:
            buf.write(" ".join(format_rational(v) for v in r) + "\n")
    else:
        for r in m.entries:
            buf.write(" ".join(str(v) for v in r) + "\n")
    return buf.getvalue()
