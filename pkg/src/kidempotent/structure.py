"""Canonical structure of k-idempotent 0-1 matrices.

A 0-1 matrix A satisfies A^k = A (k >= 2) exactly when, after a
simultaneous row/column relabeling, it takes the block form

    [ 0  X  X P^T Y ]
    [ 0  P     Y    ]
    [ 0  0     0    ]

where P is a direct sum of cycle-adjacency blocks whose lengths all
divide k - 1, and the corner block X P^T Y must itself be 0-1. The
square zero blocks may be empty. This module decides k-idempotency two
independent ways (a saturating power computation and a structural
certification), recovers the block data from a matrix, rebuilds matrices
from block data, and computes the minimal index k for which A^k = A.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import lcm
from typing import Sequence

from .digraph import _tarjan
from .matrix01 import (
    Matrix01,
    Permutation,
    _sat_power_rows,
    pack_row,
    permute,
    row_string,
)

__all__ = [
    "CanonicalDecomposition",
    "ComposeError",
    "CycleLengthInvalid",
    "DecompositionFormatError",
    "ProductNotZeroOne",
    "StructureError",
    "StructureErrorKind",
    "compose",
    "decompose",
    "idempotency_index",
    "idempotent_decompose",
    "is_k_idempotent",
    "parse_decomposition",
    "power_failure",
    "serialize_decomposition",
]


def _require_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise ValueError("k must be an integer >= 2")


class StructureErrorKind(Enum):
    NOT_ZERO_ONE = "NotZeroOne"
    POWER_MISMATCH = "PowerMismatch"


class StructureError(Exception):
    """Evidence that a matrix is not k-idempotent.

    ``NOT_ZERO_ONE`` means some entry of A^k is at least 2, and
    ``POWER_MISMATCH`` means A^k is a 0-1 matrix that differs from A.
    The witness is the first offending entry in row-major order.
    :func:`decompose` returns (rather than raises) instances of this
    class so enumeration loops can branch on the outcome cheaply.
    """

    def __init__(self, kind: StructureErrorKind, witness: tuple[int, int]):
        super().__init__(f"{kind.value} at entry {witness}")
        self.kind = kind
        self.witness = witness


class ComposeError(ValueError):
    """Base class for block-composition parameter errors."""


class CycleLengthInvalid(ComposeError):
    def __init__(self, cycle_length: int, k: int):
        super().__init__(f"cycle length {cycle_length} does not divide k-1 = {k - 1}")
        self.cycle_length = cycle_length
        self.k = k


class ProductNotZeroOne(ComposeError):
    """The derived corner block X P^T Y has an entry of at least 2.

    The witness is in coordinates of the composed matrix.
    """

    def __init__(self, witness: tuple[int, int]):
        super().__init__(f"corner block entry {witness} is at least 2")
        self.witness = witness


class DecompositionFormatError(ValueError):
    """Decomposition text that does not follow the serialization exactly."""


def _rows_k_idempotent(rows: tuple[int, ...], k: int) -> bool:
    p1, p2 = _sat_power_rows(rows, k)
    return p1 == rows and not any(p2)


def is_k_idempotent(a: Matrix01, k: int) -> bool:
    """Whether A^k = A, decided in the saturating semiring."""
    _require_k(k)
    return _rows_k_idempotent(a.rows, k)


def power_failure(a: Matrix01, k: int) -> StructureError | None:
    """None when A^k = A, otherwise the witnessed reason it is not."""
    _require_k(k)
    p1, p2 = _sat_power_rows(a.rows, k)
    for i in range(a.n):
        if p2[i]:
            j = (p2[i] & -p2[i]).bit_length() - 1
            return StructureError(StructureErrorKind.NOT_ZERO_ONE, (i, j))
    for i in range(a.n):
        diff = p1[i] ^ a.rows[i]
        if diff:
            j = (diff & -diff).bit_length() - 1
            return StructureError(StructureErrorKind.POWER_MISMATCH, (i, j))
    return None


def _cycle_predecessors(cycle_lengths: Sequence[int]) -> list[int]:
    """pred[c] is the canonical position whose cycle successor is c."""
    m = sum(cycle_lengths)
    pred = [0] * m
    offset = 0
    for length in cycle_lengths:
        for t in range(length):
            pred[offset + (t + 1) % length] = offset + t
        offset += length
    return pred


def _analyze_rows(rows: tuple[int, ...], n: int):
    """k-independent structural certification.

    Returns (sources, orbits, sinks, x_rows, y_rows) in canonical order,
    or None when the matrix cannot be k-idempotent for any k:

    - every strongly connected component must be a bare vertex or a
      plain cycle;
    - every non-cycle vertex must have only out-arcs (a source) or only
      in-arcs (a sink); isolated vertices count as sinks;
    - no arcs may join two distinct cycles;
    - the source-to-sink arcs must equal the product X P^T Y exactly.

    Canonical order: sources ascending, then cycles sorted by (length,
    smallest vertex) with each orbit starting at its smallest vertex and
    following arcs, then sinks ascending.
    """
    orbits: list[tuple[int, ...]] = []
    trivial: list[int] = []
    for comp in _tarjan(rows, n):
        if len(comp) == 1:
            v = comp[0]
            if (rows[v] >> v) & 1:
                orbits.append((v,))
            else:
                trivial.append(v)
            continue
        mask = 0
        for v in comp:
            mask |= 1 << v
        for v in comp:
            if (rows[v] & mask).bit_count() != 1:
                return None
        start = min(comp)
        orbit = [start]
        cur = start
        for _ in range(len(comp) - 1):
            cur = (rows[cur] & mask).bit_length() - 1
            if cur == start:
                return None
            orbit.append(cur)
        if (rows[cur] & mask) != 1 << start:
            return None
        orbits.append(tuple(orbit))

    has_in = 0
    for row in rows:
        has_in |= row
    sources: list[int] = []
    sinks: list[int] = []
    for v in trivial:
        v_in = (has_in >> v) & 1
        v_out = rows[v] != 0
        if v_in and v_out:
            return None
        if v_out:
            sources.append(v)
        else:
            sinks.append(v)

    cycle_mask_all = 0
    masks = []
    for orbit in orbits:
        mask = 0
        for v in orbit:
            mask |= 1 << v
        masks.append(mask)
        cycle_mask_all |= mask
    for orbit, mask in zip(orbits, masks):
        other = cycle_mask_all ^ mask
        for v in orbit:
            if rows[v] & other:
                return None

    sources.sort()
    sinks.sort()
    orbits.sort(key=lambda o: (len(o), o[0]))
    cycle_order = [v for orbit in orbits for v in orbit]
    m = len(cycle_order)

    x_rows = []
    for u in sources:
        row = rows[u]
        acc = 0
        for j, w in enumerate(cycle_order):
            if (row >> w) & 1:
                acc |= 1 << j
        x_rows.append(acc)
    y_rows = []
    for w in cycle_order:
        row = rows[w]
        acc = 0
        for j, t in enumerate(sinks):
            if (row >> t) & 1:
                acc |= 1 << j
        y_rows.append(acc)

    pred = _cycle_predecessors([len(o) for o in orbits])
    for i, u in enumerate(sources):
        acc1 = 0
        acc2 = 0
        bits = x_rows[i]
        while bits:
            low = bits & -bits
            bits ^= low
            y_row = y_rows[pred[low.bit_length() - 1]]
            acc2 |= acc1 & y_row
            acc1 |= y_row
        if acc2:
            return None
        row = rows[u]
        actual = 0
        for j, t in enumerate(sinks):
            if (row >> t) & 1:
                actual |= 1 << j
        if acc1 != actual:
            return None
    return sources, orbits, sinks, x_rows, y_rows


def _accepts_rows(rows: tuple[int, ...], n: int, k: int) -> bool:
    """Structural-route acceptance decision, shared with the oracle."""
    st = _analyze_rows(rows, n)
    return st is not None and all((k - 1) % len(orbit) == 0 for orbit in st[1])


@dataclass(frozen=True)
class CanonicalDecomposition:
    """Block data recovered from a k-idempotent matrix.

    ``source_to_cycle`` holds the X block as bit-packed rows of width
    ``cycle_total`` and ``cycle_to_sink`` holds the Y block as rows of
    width ``sink_count``. The corner block is never stored; it is always
    derived as the exact product X P^T Y. ``sigma`` maps each original
    index to its canonical position, so permuting the composed canonical
    matrix by ``sigma`` reproduces the original matrix exactly.
    """

    n: int
    k: int
    source_count: int
    cycle_lengths: tuple[int, ...]
    sink_count: int
    source_to_cycle: tuple[int, ...]
    cycle_to_sink: tuple[int, ...]
    sigma: Permutation

    @property
    def cycle_total(self) -> int:
        return sum(self.cycle_lengths)

    def source_to_sink(self) -> tuple[int, ...]:
        """Derived corner block rows, width ``sink_count``."""
        pred = _cycle_predecessors(self.cycle_lengths)
        out = []
        for i in range(self.source_count):
            acc1 = 0
            acc2 = 0
            bits = self.source_to_cycle[i]
            while bits:
                low = bits & -bits
                bits ^= low
                y_row = self.cycle_to_sink[pred[low.bit_length() - 1]]
                acc2 |= acc1 & y_row
                acc1 |= y_row
            if acc2:
                j = (acc2 & -acc2).bit_length() - 1
                raise ProductNotZeroOne((i, self.source_count + self.cycle_total + j))
            out.append(acc1)
        return tuple(out)

    def canonical_matrix(self) -> Matrix01:
        """The composed block matrix, in canonical layout."""
        return _compose_rows(
            self.source_count,
            self.cycle_lengths,
            self.sink_count,
            self.source_to_cycle,
            self.cycle_to_sink,
            self.k,
        )

    def original_matrix(self) -> Matrix01:
        """The matrix this decomposition came from."""
        return permute(self.canonical_matrix(), self.sigma)


def decompose(a: Matrix01, k: int) -> CanonicalDecomposition | StructureError:
    """Recover the canonical block data, or explain why none exists.

    The acceptance decision is purely structural (components, degree
    classification, cross-cycle arcs, corner-block equality, cycle
    lengths dividing k-1); A^k is never consulted for it. Only when the
    structure is rejected is one saturating power taken, to label the
    returned :class:`StructureError` with an honest witness.
    """
    _require_k(k)
    st = _analyze_rows(a.rows, a.n)
    if st is not None:
        sources, orbits, sinks, x_rows, y_rows = st
        if all((k - 1) % len(orbit) == 0 for orbit in orbits):
            canonical = [*sources, *(v for orbit in orbits for v in orbit), *sinks]
            to_canonical = [0] * a.n
            for pos, v in enumerate(canonical):
                to_canonical[v] = pos
            return CanonicalDecomposition(
                n=a.n,
                k=k,
                source_count=len(sources),
                cycle_lengths=tuple(len(orbit) for orbit in orbits),
                sink_count=len(sinks),
                source_to_cycle=tuple(x_rows),
                cycle_to_sink=tuple(y_rows),
                sigma=Permutation(tuple(to_canonical)),
            )
    failure = power_failure(a, k)
    if failure is None:
        raise RuntimeError("structural rejection of a matrix whose power matches")
    return failure


def idempotent_decompose(a: Matrix01) -> CanonicalDecomposition | StructureError:
    """Decomposition for plain idempotency (k = 2); all cycles have length 1."""
    return decompose(a, 2)


def idempotency_index(a: Matrix01) -> int | None:
    """Minimal k >= 2 with A^k = A, or None when no such k exists.

    The structure fixes the answer: when the structural certification
    passes, the valid k are exactly those with every cycle length
    dividing k-1, so the minimum is lcm(cycle lengths) + 1 (empty lcm
    is 1). When it fails, no k works.
    """
    st = _analyze_rows(a.rows, a.n)
    if st is None:
        return None
    result = 1
    for orbit in st[1]:
        result = lcm(result, len(orbit))
    return result + 1


def _compose_rows(
    source_count: int,
    cycle_lengths: Sequence[int],
    sink_count: int,
    x_rows: Sequence[int],
    y_rows: Sequence[int],
    k: int,
) -> Matrix01:
    _require_k(k)
    if source_count < 0 or sink_count < 0:
        raise ValueError("block sizes must be non-negative")
    for length in cycle_lengths:
        if length < 1:
            raise ValueError("cycle lengths must be positive")
        if (k - 1) % length:
            raise CycleLengthInvalid(length, k)
    m = sum(cycle_lengths)
    if len(x_rows) != source_count:
        raise ValueError("source block row count mismatch")
    if len(y_rows) != m:
        raise ValueError("cycle block row count mismatch")
    for row in x_rows:
        if not 0 <= row < 1 << m:
            raise ValueError("source block row exceeds cycle width")
    for row in y_rows:
        if not 0 <= row < 1 << sink_count:
            raise ValueError("cycle block row exceeds sink width")

    n = source_count + m + sink_count
    pred = _cycle_predecessors(cycle_lengths)
    z_rows = []
    for i in range(source_count):
        acc1 = 0
        acc2 = 0
        bits = x_rows[i]
        while bits:
            low = bits & -bits
            bits ^= low
            y_row = y_rows[pred[low.bit_length() - 1]]
            acc2 |= acc1 & y_row
            acc1 |= y_row
        if acc2:
            j = (acc2 & -acc2).bit_length() - 1
            raise ProductNotZeroOne((i, source_count + m + j))
        z_rows.append(acc1)

    succ = [0] * m
    offset = 0
    for length in cycle_lengths:
        for t in range(length):
            succ[offset + t] = offset + (t + 1) % length
        offset += length

    rows = []
    for i in range(source_count):
        rows.append((x_rows[i] << source_count) | (z_rows[i] << (source_count + m)))
    for pos in range(m):
        rows.append((1 << (source_count + succ[pos])) | (y_rows[pos] << (source_count + m)))
    rows.extend([0] * sink_count)
    return Matrix01(n, tuple(rows))


def compose(
    source_count: int,
    cycle_lengths: Sequence[int],
    sink_count: int,
    source_to_cycle: Sequence[Sequence[int]],
    cycle_to_sink: Sequence[Sequence[int]],
    k: int,
) -> Matrix01:
    """Build the canonical block matrix from its parameters.

    The result is guaranteed k-idempotent. The X and Y blocks are given
    as nested 0/1 sequences of shapes (source_count x total cycle
    length) and (total cycle length x sink_count). Raises
    :class:`CycleLengthInvalid` when a cycle length does not divide k-1,
    :class:`ProductNotZeroOne` when the derived corner block is not 0-1,
    and ``ValueError`` on dimension mismatches.
    """
    m = sum(cycle_lengths)
    x_rows = []
    for row in source_to_cycle:
        if len(row) != m:
            raise ValueError("source block row width mismatch")
        x_rows.append(pack_row(row))
    y_rows = []
    for row in cycle_to_sink:
        if len(row) != sink_count:
            raise ValueError("cycle block row width mismatch")
        y_rows.append(pack_row(row))
    return _compose_rows(source_count, cycle_lengths, sink_count, x_rows, y_rows, k)


def serialize_decomposition(d: CanonicalDecomposition) -> str:
    """Fixed-order text form: n, k, r, s, cycle_lengths, sigma, X rows, Y rows.

    The derived corner block is never serialized. X rows are strings of
    width ``cycle_total`` and Y rows of width ``sink_count``; there are
    exactly ``source_count`` X lines and ``cycle_total`` Y lines.
    """
    lines = [
        f"n={d.n}",
        f"k={d.k}",
        f"r={d.source_count}",
        f"s={d.sink_count}",
        "cycle_lengths=" + ",".join(str(v) for v in d.cycle_lengths),
        "sigma=" + ",".join(str(v) for v in d.sigma.mapping),
    ]
    m = d.cycle_total
    for row in d.source_to_cycle:
        lines.append("X=" + row_string(row, m))
    for row in d.cycle_to_sink:
        lines.append("Y=" + row_string(row, d.sink_count))
    return "\n".join(lines) + "\n"


def _parse_int(value: str, what: str) -> int:
    if not value.isascii() or not value.isdigit() or (len(value) > 1 and value[0] == "0"):
        raise DecompositionFormatError(f"bad {what} value {value!r}")
    return int(value)


def _parse_int_list(value: str, what: str) -> tuple[int, ...]:
    if value == "":
        return ()
    return tuple(_parse_int(part, what) for part in value.split(","))


def parse_decomposition(text: str) -> CanonicalDecomposition:
    """Parse the serialization produced by :func:`serialize_decomposition`."""
    if not text.endswith("\n"):
        raise DecompositionFormatError("decomposition text must end with a newline")
    lines = text[:-1].split("\n")
    pos = 0

    def take(key: str) -> str:
        nonlocal pos
        if pos >= len(lines) or not lines[pos].startswith(key + "="):
            raise DecompositionFormatError(f"expected '{key}=' on line {pos + 1}")
        value = lines[pos][len(key) + 1 :]
        pos += 1
        return value

    n = _parse_int(take("n"), "n")
    k = _parse_int(take("k"), "k")
    if k < 2:
        raise DecompositionFormatError("k must be at least 2")
    r = _parse_int(take("r"), "r")
    s = _parse_int(take("s"), "s")
    cycle_lengths = _parse_int_list(take("cycle_lengths"), "cycle length")
    if any(length < 1 for length in cycle_lengths):
        raise DecompositionFormatError("cycle lengths must be positive")
    mapping = _parse_int_list(take("sigma"), "sigma entry")
    m = sum(cycle_lengths)
    if r + m + s != n:
        raise DecompositionFormatError("r + cycle total + s must equal n")
    if len(mapping) != n:
        raise DecompositionFormatError("sigma length differs from n")
    try:
        sigma = Permutation(mapping)
    except ValueError as exc:
        raise DecompositionFormatError(str(exc)) from None

    def take_row(key: str, width: int) -> int:
        raw = take(key)
        if len(raw) != width or set(raw) - {"0", "1"}:
            raise DecompositionFormatError(f"bad {key} row on line {pos}")
        return sum(1 << j for j, ch in enumerate(raw) if ch == "1")

    x_rows = tuple(take_row("X", m) for _ in range(r))
    y_rows = tuple(take_row("Y", s) for _ in range(m))
    if pos != len(lines):
        raise DecompositionFormatError("unexpected trailing content")
    return CanonicalDecomposition(
        n=n,
        k=k,
        source_count=r,
        cycle_lengths=cycle_lengths,
        sink_count=s,
        source_to_cycle=x_rows,
        cycle_to_sink=y_rows,
        sigma=sigma,
    )
