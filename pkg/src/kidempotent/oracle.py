"""Exhaustive brute-force verification at desk scale.

Every 0-1 matrix of a small order is enumerated and tested two
independent ways: the saturating power route decides A^k = A directly,
and the structural route decides whether the canonical block
certification accepts. The census records both verdicts, the density
maximum with all matrices attaining it, and the strictly upper
triangular scan. Enumeration is indexed so that bit j of the index is
entry (j div n, j mod n); any index sub-range can be swept on its own
and the merged result equals the serial stream.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .extremal import gamma, matches_maximum_form
from .matrix01 import Matrix01, permute, to_text
from .structure import (
    CanonicalDecomposition,
    _accepts_rows,
    _rows_k_idempotent,
    decompose,
)

__all__ = [
    "CensusReport",
    "CharacterizationResult",
    "census",
    "enumerate_k_idempotent",
    "matrix_from_index",
    "max_nnz_census",
    "serialize_census",
    "upper_triangular_check",
    "verify_characterization",
]

# Enumerating all matrices of order 5 means 2^25 candidates; callers must
# opt in explicitly. Orders above 5 are out of scope.
FREE_ORDER_LIMIT = 4
ORDER_LIMIT = 5

_N5_STRUCT_SAMPLE = 20_000


def _check_args(n: int, k: int, allow_order_5: bool) -> None:
    if not isinstance(k, int) or k < 2:
        raise ValueError("k must be an integer >= 2")
    if not 0 <= n <= ORDER_LIMIT:
        raise ValueError(f"order must be between 0 and {ORDER_LIMIT}")
    if n > FREE_ORDER_LIMIT and not allow_order_5:
        raise ValueError("order 5 enumeration requires allow_order_5=True")


def matrix_from_index(n: int, index: int) -> Matrix01:
    """Decode an enumeration index; bit j of the index is entry (j div n, j mod n)."""
    if not 0 <= index < 1 << (n * n):
        raise ValueError("index out of range")
    mask = (1 << n) - 1
    return Matrix01(n, tuple((index >> (i * n)) & mask for i in range(n)))


def enumerate_k_idempotent(
    n: int,
    k: int,
    *,
    allow_order_5: bool = False,
    index_range: tuple[int, int] | None = None,
) -> Iterator[Matrix01]:
    """Yield every k-idempotent matrix of order n in ascending index order.

    ``index_range`` restricts the sweep to indices in [start, stop) so
    that disjoint ranges can be processed independently and merged in
    range order without changing the stream.
    """
    _check_args(n, k, allow_order_5)
    start, stop = index_range if index_range is not None else (0, 1 << (n * n))
    if not 0 <= start <= stop <= 1 << (n * n):
        raise ValueError("bad index range")
    mask = (1 << n) - 1
    for index in range(start, stop):
        rows = tuple((index >> (i * n)) & mask for i in range(n))
        if _rows_k_idempotent(rows, k):
            yield Matrix01(n, rows)


@dataclass(frozen=True)
class CharacterizationResult:
    """Two-route agreement over one exhaustive sweep."""

    n: int
    k: int
    total_k_idempotent: int
    characterization_ok: bool
    mismatches: tuple[Matrix01, ...]


@dataclass(frozen=True)
class CensusReport:
    """Aggregate verdicts of one exhaustive census.

    ``mismatches`` holds every matrix on which the two routes disagreed
    or whose decomposition failed to reconstruct it; it is empty on
    success. ``seed`` and ``non_member_sample`` are populated only for
    order-5 runs, where the structural route is spot-checked on a seeded
    sample of non-members instead of all of them.
    """

    n: int
    k: int
    total_k_idempotent: int
    gamma_value: int
    max_nnz: int
    argmax_count: int
    max_density_ok: bool
    characterization_ok: bool
    upper_triangular_ok: bool
    mismatches: tuple[Matrix01, ...]
    argmax: tuple[Matrix01, ...]
    seed: int | None = None
    non_member_sample: int | None = None


def _sweep(n: int, k: int, allow_order_5: bool, seed: int):
    """One pass over all matrices of order n.

    Returns (total, max_nnz, argmax, mismatches, sampled_non_members).
    Members are additionally required to reconstruct exactly from their
    decomposition; any failure lands in the mismatch list.
    """
    exhaustive = n <= FREE_ORDER_LIMIT
    sample: set[int] = set()
    sampled = 0
    if not exhaustive:
        rng = random.Random(seed)
        sample = set(rng.sample(range(1 << (n * n)), _N5_STRUCT_SAMPLE))
    mask = (1 << n) - 1
    total = 0
    best = -1
    argmax: list[Matrix01] = []
    mismatches: list[Matrix01] = []
    for index in range(1 << (n * n)):
        rows = tuple((index >> (i * n)) & mask for i in range(n))
        member = _rows_k_idempotent(rows, k)
        if member or exhaustive or index in sample:
            accepted = _accepts_rows(rows, n, k)
            if accepted != member:
                mismatches.append(Matrix01(n, rows))
            if not member and not exhaustive:
                sampled += 1
        if member:
            total += 1
            matrix = Matrix01(n, rows)
            d = decompose(matrix, k)
            if not isinstance(d, CanonicalDecomposition):
                mismatches.append(matrix)
            elif permute(d.canonical_matrix(), d.sigma) != matrix:
                mismatches.append(matrix)
            count = sum(row.bit_count() for row in rows)
            if count > best:
                best = count
                argmax = [matrix]
            elif count == best:
                argmax.append(matrix)
    return total, best, argmax, mismatches, sampled


def verify_characterization(
    n: int, k: int, *, allow_order_5: bool = False, seed: int = 0
) -> CharacterizationResult:
    """Check that the structural route accepts exactly the true members."""
    _check_args(n, k, allow_order_5)
    total, _, _, mismatches, _ = _sweep(n, k, allow_order_5, seed)
    return CharacterizationResult(n, k, total, not mismatches, tuple(mismatches))


def max_nnz_census(
    n: int, k: int, *, allow_order_5: bool = False, seed: int = 0
) -> tuple[int, tuple[Matrix01, ...]]:
    """Maximum number of ones over all k-idempotent matrices, with the argmax list."""
    if n < 1:
        raise ValueError("density census requires order >= 1")
    _check_args(n, k, allow_order_5)
    _, best, argmax, _, _ = _sweep(n, k, allow_order_5, seed)
    return best, tuple(argmax)


def upper_triangular_check(n: int, k: int) -> bool:
    """True when the only strictly upper triangular k-idempotent matrix is zero."""
    if not isinstance(k, int) or k < 2:
        raise ValueError("k must be an integer >= 2")
    if not 0 <= n <= ORDER_LIMIT:
        raise ValueError(f"order must be between 0 and {ORDER_LIMIT}")
    positions = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for bits in range(1, 1 << len(positions)):
        rows = [0] * n
        for t, (i, j) in enumerate(positions):
            if (bits >> t) & 1:
                rows[i] |= 1 << j
        if _rows_k_idempotent(tuple(rows), k):
            return False
    return True


def census(n: int, k: int, *, allow_order_5: bool = False, seed: int = 0) -> CensusReport:
    """Full census of order n under exponent k.

    Covers the member count, the two-route characterization check with
    reconstruction, the density maximum against gamma(n) with the shape
    of every argmax, and the strictly upper triangular scan. Two runs
    with the same arguments produce bit-identical serialized reports.
    """
    if n < 1:
        raise ValueError("census requires order >= 1")
    _check_args(n, k, allow_order_5)
    total, best, argmax, mismatches, sampled = _sweep(n, k, allow_order_5, seed)
    gamma_value = gamma(n)
    density_ok = best == gamma_value
    if density_ok:
        for matrix in argmax:
            d = decompose(matrix, k)
            if not isinstance(d, CanonicalDecomposition) or not matches_maximum_form(d):
                density_ok = False
                break
    return CensusReport(
        n=n,
        k=k,
        total_k_idempotent=total,
        gamma_value=gamma_value,
        max_nnz=best,
        argmax_count=len(argmax),
        max_density_ok=density_ok,
        characterization_ok=not mismatches,
        upper_triangular_ok=upper_triangular_check(n, k),
        mismatches=tuple(mismatches),
        argmax=tuple(argmax),
        seed=seed if n > FREE_ORDER_LIMIT else None,
        non_member_sample=sampled if n > FREE_ORDER_LIMIT else None,
    )


def serialize_census(report: CensusReport) -> str:
    """Line-oriented key=value form; witness matrices follow, blank-line separated."""
    lines = [
        f"n={report.n}",
        f"k={report.k}",
        f"total_k_idempotent={report.total_k_idempotent}",
        f"gamma={report.gamma_value}",
        f"max_nnz={report.max_nnz}",
        f"argmax_count={report.argmax_count}",
        f"max_density_ok={str(report.max_density_ok).lower()}",
        f"characterization_ok={str(report.characterization_ok).lower()}",
        f"upper_triangular_ok={str(report.upper_triangular_ok).lower()}",
    ]
    if report.seed is not None:
        lines.append(f"seed={report.seed}")
        lines.append(f"non_member_sample={report.non_member_sample}")
    lines.append(f"mismatches={len(report.mismatches)}")
    text = "\n".join(lines) + "\n"
    for witness in report.mismatches:
        text += "\n" + to_text(witness)
    return text
