"""Bit-packed square 0-1 matrices and their power arithmetic.

A matrix row is a Python int used as a bitset: bit j of ``rows[i]`` holds
entry (i, j). Powers that only need to distinguish the entry values 0, 1
and "2 or more" are computed in the saturating semiring {0, 1, 2+}. That
semiring is the quotient of non-negative integer arithmetic that caps
values at 2; capping commutes with both addition and multiplication, so
repeated squaring in the quotient agrees with exact powering followed by
capping. This is all a k-idempotency test ever needs, and it keeps the
word size bounded during bulk enumeration.

Every value in this module is immutable and every function is pure, so
everything can be shared freely across concurrent workers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "INT64_MAX",
    "TWO_PLUS",
    "Matrix01",
    "MatrixFormatError",
    "Permutation",
    "SatMatrix",
    "exact_power",
    "from_text",
    "nnz",
    "pack_row",
    "permute",
    "row_string",
    "row_sum_bounds",
    "row_sums",
    "sat_add",
    "sat_mul",
    "sat_power",
    "to_text",
    "unpack_row",
]

INT64_MAX = 2**63 - 1

# Saturated value standing for any exact entry >= 2.
TWO_PLUS = 2


class MatrixFormatError(ValueError):
    """Matrix text that does not follow the line format exactly."""


def sat_add(a: int, b: int) -> int:
    """Addition in the saturating semiring {0, 1, 2+}."""
    return min(a + b, 2)


def sat_mul(a: int, b: int) -> int:
    """Multiplication in the saturating semiring {0, 1, 2+}."""
    return min(a * b, 2)


def pack_row(values: Iterable[int]) -> int:
    """Pack an iterable of 0/1 entries into a row bitset."""
    acc = 0
    for j, v in enumerate(values):
        if v not in (0, 1):
            raise ValueError(f"entry {v!r} is not 0 or 1")
        acc |= v << j
    return acc


def unpack_row(row: int, width: int) -> list[int]:
    """Expand a row bitset back into a list of 0/1 entries."""
    return [(row >> j) & 1 for j in range(width)]


def row_string(row: int, width: int) -> str:
    """Render a row bitset as its text-format string of '0'/'1' characters."""
    return "".join("1" if (row >> j) & 1 else "0" for j in range(width))


@dataclass(frozen=True)
class Matrix01:
    """Square 0-1 matrix of order ``n`` with bit-packed rows."""

    n: int
    rows: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if self.n < 0:
            raise ValueError("order must be non-negative")
        if len(self.rows) != self.n:
            raise ValueError(f"expected {self.n} rows, got {len(self.rows)}")
        limit = 1 << self.n
        for row in self.rows:
            if not 0 <= row < limit:
                raise ValueError("row has bits outside the matrix order")

    @classmethod
    def zero(cls, n: int) -> "Matrix01":
        return cls(n, (0,) * n)

    @classmethod
    def identity(cls, n: int) -> "Matrix01":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def ones(cls, n: int) -> "Matrix01":
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def cycle(cls, n: int) -> "Matrix01":
        """Adjacency matrix of the directed n-cycle (basic circulant)."""
        if n < 1:
            raise ValueError("cycle order must be positive")
        return cls(n, tuple(1 << ((i + 1) % n) for i in range(n)))

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "Matrix01":
        n = len(entries)
        for row in entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
        return cls(n, tuple(pack_row(row) for row in entries))

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [unpack_row(row, self.n) for row in self.rows]

    def transpose(self) -> "Matrix01":
        out = [0] * self.n
        for i, row in enumerate(self.rows):
            bits = row
            while bits:
                low = bits & -bits
                bits ^= low
                out[low.bit_length() - 1] |= 1 << i
        return Matrix01(self.n, tuple(out))


@dataclass(frozen=True)
class Permutation:
    """Bijection on {0..n-1}, stored as the image tuple ``mapping``."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mapping", tuple(self.mapping))
        if sorted(self.mapping) != list(range(len(self.mapping))):
            raise ValueError("mapping is not a bijection on 0..n-1")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    def __len__(self) -> int:
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.mapping)
        for i, v in enumerate(self.mapping):
            inv[v] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """Permutation sending i to ``self(other(i))`` (apply other first)."""
        if len(other) != len(self):
            raise ValueError("size mismatch")
        return Permutation(tuple(self.mapping[v] for v in other.mapping))


@dataclass(frozen=True)
class SatMatrix:
    """Square matrix over {0, 1, 2+} held as two bit-planes.

    ``ge1`` has bit (i, j) set when the entry is at least 1, ``ge2`` when
    it is at least 2, so ``ge2`` is always a bitwise subset of ``ge1``.
    """

    n: int
    ge1: tuple[int, ...]
    ge2: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ge1", tuple(self.ge1))
        object.__setattr__(self, "ge2", tuple(self.ge2))
        if len(self.ge1) != self.n or len(self.ge2) != self.n:
            raise ValueError("plane length differs from the order")
        limit = 1 << self.n
        for p1, p2 in zip(self.ge1, self.ge2):
            if not 0 <= p1 < limit or not 0 <= p2 < limit:
                raise ValueError("plane has bits outside the matrix order")
            if p2 & ~p1:
                raise ValueError("entry marked >=2 but not >=1")

    @classmethod
    def from_matrix01(cls, a: Matrix01) -> "SatMatrix":
        return cls(a.n, a.rows, (0,) * a.n)

    def entry(self, i: int, j: int) -> int:
        if (self.ge2[i] >> j) & 1:
            return TWO_PLUS
        return (self.ge1[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def is_zero_one(self) -> bool:
        return not any(self.ge2)

    def equals_matrix(self, a: Matrix01) -> bool:
        return self.n == a.n and self.is_zero_one() and self.ge1 == a.rows


def nnz(a: Matrix01) -> int:
    """Number of nonzero entries."""
    return sum(row.bit_count() for row in a.rows)


def row_sums(a: Matrix01) -> list[int]:
    """Per-row counts of nonzero entries."""
    return [row.bit_count() for row in a.rows]


def row_sum_bounds(a: Matrix01) -> tuple[int, int]:
    """(min, max) row sum; these bracket the spectral radius.

    The order-0 matrix reports (0, 0).
    """
    if a.n == 0:
        return (0, 0)
    sums = row_sums(a)
    return (min(sums), max(sums))


def permute(a: Matrix01, sigma: Permutation) -> Matrix01:
    """Simultaneous row/column relabeling.

    Entry (i, j) of the result is entry (sigma(i), sigma(j)) of the
    input, i.e. the conjugation of ``a`` by the permutation matrix that
    encodes ``sigma``. Preserves the nonzero count and the row-sum
    multiset.
    """
    if len(sigma) != a.n:
        raise ValueError("permutation order differs from matrix order")
    mp = sigma.mapping
    out = []
    for i in range(a.n):
        src = a.rows[mp[i]]
        acc = 0
        for j in range(a.n):
            if (src >> mp[j]) & 1:
                acc |= 1 << j
        out.append(acc)
    return Matrix01(a.n, tuple(out))


def _sat_mul_rows(
    a1: tuple[int, ...],
    a2: tuple[int, ...],
    b1: tuple[int, ...],
    b2: tuple[int, ...],
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Product of two saturating matrices given as (ge1, ge2) bit-planes.

    Row combination: entry (i, j) reaches 2+ when two different middle
    indices contribute, or when either factor already contributes a 2+.
    """
    c1 = []
    c2 = []
    for i in range(len(a1)):
        acc1 = 0
        acc2 = 0
        bits = a1[i]
        while bits:
            low = bits & -bits
            bits ^= low
            t = low.bit_length() - 1
            row = b1[t]
            acc2 |= (acc1 & row) | b2[t]
            acc1 |= row
        bits = a2[i]
        while bits:
            low = bits & -bits
            bits ^= low
            acc2 |= b1[low.bit_length() - 1]
        c1.append(acc1)
        c2.append(acc2)
    return tuple(c1), tuple(c2)


def _sat_power_rows(rows: tuple[int, ...], m: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Repeated squaring in the saturating semiring; m must be >= 1."""
    zero = (0,) * len(rows)
    base = (rows, zero)
    result = None
    while m:
        if m & 1:
            result = base if result is None else _sat_mul_rows(*result, *base)
        m >>= 1
        if m:
            base = _sat_mul_rows(*base, *base)
    assert result is not None
    return result


def sat_power(a: Matrix01, m: int) -> SatMatrix:
    """Image of the exact power A^m in the saturating semiring.

    Each entry equals min(2, exact A^m entry). Computed by repeated
    squaring, which is valid because capping at 2 is a semiring
    homomorphism from the non-negative integers.
    """
    if m < 1:
        raise ValueError("power must be at least 1")
    p1, p2 = _sat_power_rows(a.rows, m)
    return SatMatrix(a.n, p1, p2)


def exact_power(a: Matrix01, m: int) -> list[list[int]]:
    """Exact integer power A^m by naive repeated multiplication.

    Serves as the independent reference for :func:`sat_power`. Entries
    beyond the signed 64-bit budget raise ``OverflowError``.
    """
    if m < 1:
        raise ValueError("power must be at least 1")
    n = a.n
    cur = a.to_lists()
    for _ in range(m - 1):
        nxt = [[0] * n for _ in range(n)]
        for i in range(n):
            row = cur[i]
            out = nxt[i]
            for t in range(n):
                c = row[t]
                if c:
                    bits = a.rows[t]
                    while bits:
                        low = bits & -bits
                        bits ^= low
                        out[low.bit_length() - 1] += c
        for out in nxt:
            for v in out:
                if v > INT64_MAX:
                    raise OverflowError("power entry exceeds the 64-bit budget")
        cur = nxt
    return cur


def to_text(a: Matrix01) -> str:
    """Serialize to the bit-exact text format.

    Line 1 is the decimal order, lines 2..n+1 are the rows as strings of
    '0'/'1' with no separators, and the text ends with exactly one
    newline. The order-0 matrix is the single line "0".
    """
    lines = [str(a.n)]
    for row in a.rows:
        lines.append(row_string(row, a.n))
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Matrix01:
    """Parse the text format produced by :func:`to_text`, strictly."""
    if not text.endswith("\n"):
        raise MatrixFormatError("matrix text must end with a newline")
    lines = text[:-1].split("\n")
    head = lines[0]
    if not head.isascii() or not head.isdigit() or (len(head) > 1 and head[0] == "0"):
        raise MatrixFormatError(f"bad order line {head!r}")
    n = int(head)
    if len(lines) != n + 1:
        raise MatrixFormatError(f"expected {n} row lines, found {len(lines) - 1}")
    rows = []
    for i, line in enumerate(lines[1:]):
        if len(line) != n or set(line) - {"0", "1"}:
            raise MatrixFormatError(f"bad row on line {i + 2}")
        rows.append(sum(1 << j for j, ch in enumerate(line) if ch == "1"))
    return Matrix01(n, tuple(rows))
