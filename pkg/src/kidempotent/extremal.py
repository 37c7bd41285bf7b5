"""Maximum-density k-idempotent matrices.

Among all k-idempotent 0-1 matrices of order n, the number of nonzero
entries is at most gamma(n), which is (n+1)^2/4 for odd n and
(n^2+2n)/4 for even n. Equality holds exactly for matrices that are a
relabeling of the canonical block form in one of two shapes:

- variant A: the allowed number of source rows, the X and corner blocks
  all ones, and each column of Y carrying exactly one 1;
- variant B: the mirror image, with the allowed number of sink columns,
  the Y and corner blocks all ones, and each row of X carrying exactly
  one 1.

For odd n the allowed boundary count is (n-1)/2; for even n both n/2
and n/2 - 1 work. This module evaluates gamma, constructs and
recognizes the maximum-density shapes, and enumerates every parameter
family that attains the bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .matrix01 import Matrix01, nnz, row_string
from .structure import CanonicalDecomposition, _compose_rows, is_k_idempotent

__all__ = [
    "ExtremalParams",
    "InvalidParams",
    "ValidationFailed",
    "allowed_boundary_counts",
    "construct_extremal",
    "extremal_families",
    "family_line",
    "gamma",
    "is_extremal",
    "matches_maximum_form",
]


class InvalidParams(ValueError):
    """Extremal parameters outside the allowed shapes."""


class ValidationFailed(ValueError):
    """A composed candidate that fails the direct density or power check."""


def gamma(n: int) -> int:
    """Largest possible number of ones in a k-idempotent matrix of order n."""
    if n < 1:
        raise ValueError("order must be positive")
    if n % 2:
        return (n + 1) ** 2 // 4
    return (n * n + 2 * n) // 4


def allowed_boundary_counts(n: int) -> tuple[int, ...]:
    """Source counts (variant A) or sink counts (variant B) attaining gamma(n)."""
    if n < 1:
        raise ValueError("order must be positive")
    if n % 2:
        return ((n - 1) // 2,)
    return (n // 2 - 1, n // 2)


@dataclass(frozen=True)
class ExtremalParams:
    """Parameters of one maximum-density family.

    For variant A the pattern assigns each sink column of Y the single
    cycle row holding its 1; for variant B it assigns each source row of
    X the single cycle column holding its 1. Cycle lengths are kept in
    canonical (ascending) order.
    """

    variant: str
    source_count: int
    sink_count: int
    cycle_lengths: tuple[int, ...]
    pattern: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cycle_lengths", tuple(self.cycle_lengths))
        object.__setattr__(self, "pattern", tuple(self.pattern))
        if self.variant not in ("A", "B"):
            raise ValueError("variant must be 'A' or 'B'")
        if self.source_count < 0 or self.sink_count < 0:
            raise ValueError("block sizes must be non-negative")

    @property
    def order(self) -> int:
        return self.source_count + sum(self.cycle_lengths) + self.sink_count


def _family_blocks(params: ExtremalParams) -> tuple[list[int], list[int]]:
    """Bit-packed X and Y rows realizing the family."""
    r = params.source_count
    s = params.sink_count
    m = sum(params.cycle_lengths)
    if params.variant == "A":
        x_rows = [(1 << m) - 1] * r
        y_rows = [0] * m
        for col, row_idx in enumerate(params.pattern):
            y_rows[row_idx] |= 1 << col
    else:
        y_rows = [(1 << s) - 1] * m
        x_rows = [1 << col for col in params.pattern]
    return x_rows, y_rows


def construct_extremal(n: int, k: int, params: ExtremalParams) -> Matrix01:
    """Compose the family's matrix in canonical layout and verify it.

    The parameter algebra is never trusted: the result is re-checked by
    a direct k-idempotency test and a direct count of ones against
    gamma(n). Raises :class:`InvalidParams` for parameters outside the
    allowed shapes and :class:`ValidationFailed` when a degenerate
    corner composes to something below the bound.
    """
    if n < 1:
        raise InvalidParams("order must be positive")
    if k < 2:
        raise ValueError("k must be an integer >= 2")
    r = params.source_count
    s = params.sink_count
    m = sum(params.cycle_lengths)
    if r + m + s != n:
        raise InvalidParams("block sizes do not add up to the order")
    fixed = r if params.variant == "A" else s
    if fixed not in allowed_boundary_counts(n):
        raise InvalidParams(
            f"count {fixed} not in the allowed set {allowed_boundary_counts(n)}"
        )
    for length in params.cycle_lengths:
        if length < 1 or (k - 1) % length:
            raise InvalidParams(f"cycle length {length} does not divide k-1 = {k - 1}")
    expected_len = s if params.variant == "A" else r
    if len(params.pattern) != expected_len:
        raise InvalidParams("pattern length does not match the one-per-line block")
    if any(not 0 <= p < m for p in params.pattern):
        raise InvalidParams("pattern index outside the cycle block")

    x_rows, y_rows = _family_blocks(params)
    matrix = _compose_rows(r, params.cycle_lengths, s, x_rows, y_rows, k)
    if not is_k_idempotent(matrix, k) or nnz(matrix) != gamma(n):
        raise ValidationFailed("composed matrix misses the density bound")
    return matrix


def is_extremal(a: Matrix01, k: int) -> bool:
    """Whether the matrix is k-idempotent with gamma(n) ones."""
    if k < 2:
        raise ValueError("k must be an integer >= 2")
    if a.n < 1:
        return False
    return is_k_idempotent(a, k) and nnz(a) == gamma(a.n)


def matches_maximum_form(d: CanonicalDecomposition) -> bool:
    """Whether decomposed block data fits variant A or variant B.

    Empty blocks satisfy their conditions vacuously, which covers the
    degenerate corners with no sources or no sinks.
    """
    n = d.n
    if n < 1:
        return False
    allowed = allowed_boundary_counts(n)
    m = d.cycle_total
    full_cycle = (1 << m) - 1
    full_sink = (1 << d.sink_count) - 1
    corner_ones = all(row == full_sink for row in d.source_to_sink())
    if (
        d.source_count in allowed
        and corner_ones
        and all(row == full_cycle for row in d.source_to_cycle)
    ):
        column_counts = [0] * d.sink_count
        for row in d.cycle_to_sink:
            bits = row
            while bits:
                low = bits & -bits
                bits ^= low
                column_counts[low.bit_length() - 1] += 1
        if all(c == 1 for c in column_counts):
            return True
    if (
        d.sink_count in allowed
        and corner_ones
        and all(row == full_sink for row in d.cycle_to_sink)
        and all(row.bit_count() == 1 for row in d.source_to_cycle)
    ):
        return True
    return False


def _cycle_multisets(m: int, k: int) -> list[tuple[int, ...]]:
    """All multisets of cycle lengths dividing k-1 that sum to m, ascending."""
    parts = [d for d in range(1, m + 1) if (k - 1) % d == 0]
    out: list[tuple[int, ...]] = []

    def descend(remaining: int, max_part: int, acc: list[int]) -> None:
        if remaining == 0:
            out.append(tuple(sorted(acc)))
            return
        for p in parts:
            if p <= min(remaining, max_part):
                descend(remaining - p, p, acc + [p])

    descend(m, m, [])
    return out


def extremal_families(n: int, k: int) -> list[ExtremalParams]:
    """Every parameter family whose composed matrix attains gamma(n).

    Candidates are generated over variants, allowed boundary counts,
    cycle multisets and one-per-line patterns, then filtered through
    :func:`construct_extremal`. Families whose composed matrices repeat
    an earlier family's matrix entry-for-entry are dropped, so each
    returned family owns a distinct labeled matrix in canonical layout
    (distinctness up to relabeling is not attempted). The order is
    deterministic: variant, then boundary count, then the cycle multiset
    compared in descending-sorted form, then the pattern.
    """
    if n < 1:
        raise ValueError("order must be positive")
    if k < 2:
        raise ValueError("k must be an integer >= 2")
    seen: set[tuple[int, ...]] = set()
    families: list[ExtremalParams] = []
    for variant in ("A", "B"):
        for count in allowed_boundary_counts(n):
            multisets = []
            for m in range(1, n - count + 1):
                multisets.extend(_cycle_multisets(m, k))
            multisets.sort(key=lambda c: tuple(sorted(c, reverse=True)))
            for cycles in multisets:
                m = sum(cycles)
                other = n - count - m
                if variant == "A":
                    r, s = count, other
                else:
                    r, s = other, count
                for pattern in product(range(m), repeat=other):
                    params = ExtremalParams(variant, r, s, cycles, pattern)
                    try:
                        matrix = construct_extremal(n, k, params)
                    except (InvalidParams, ValidationFailed):
                        continue
                    if matrix.rows in seen:
                        continue
                    seen.add(matrix.rows)
                    families.append(params)
    return families


def family_line(n: int, k: int, params: ExtremalParams) -> str:
    """One-line rendering: variant tag followed by the decomposition fields."""
    x_rows, y_rows = _family_blocks(params)
    m = sum(params.cycle_lengths)
    tokens = [
        f"variant={params.variant}",
        f"n={n}",
        f"k={k}",
        f"r={params.source_count}",
        f"s={params.sink_count}",
        "cycle_lengths=" + ",".join(str(v) for v in params.cycle_lengths),
        "sigma=" + ",".join(str(v) for v in range(n)),
    ]
    tokens.extend("X=" + row_string(row, m) for row in x_rows)
    tokens.extend("Y=" + row_string(row, params.sink_count) for row in y_rows)
    return " ".join(tokens)
