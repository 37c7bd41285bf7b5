"""Shared test helpers: census memoization and random decomposition data."""

import random

import pytest

from kidempotent.matrix01 import Permutation
from kidempotent.oracle import census
from kidempotent.structure import CanonicalDecomposition

_census_memo: dict[tuple[int, int], object] = {}


@pytest.fixture(scope="session")
def get_census():
    """Session-wide census memo; censuses are pure so sharing is safe."""

    def fetch(n, k):
        key = (n, k)
        if key not in _census_memo:
            _census_memo[key] = census(n, k)
        return _census_memo[key]

    return fetch


def random_decomposition(rng: random.Random, n: int, k: int) -> CanonicalDecomposition:
    """A random decomposition whose corner product is guaranteed 0-1.

    Cycle lengths are drawn from the divisors of k-1. The X block is
    arbitrary; validity is ensured by giving each sink column of Y at
    most one 1, which caps every corner entry at 1.
    """
    divisors = [d for d in range(1, n + 1) if (k - 1) % d == 0]
    r = rng.randint(0, n)
    lengths = []
    m = 0
    while True:
        room = n - r - m
        options = [d for d in divisors if d <= room]
        if not options or rng.random() < 0.3:
            break
        pick = rng.choice(options)
        lengths.append(pick)
        m += pick
    s = n - r - m
    lengths.sort()
    x_rows = tuple(rng.getrandbits(m) if m else 0 for _ in range(r))
    y_rows = [0] * m
    for col in range(s):
        if m and rng.random() < 0.8:
            y_rows[rng.randrange(m)] |= 1 << col
    order = list(range(n))
    rng.shuffle(order)
    # order[pos] is the original vertex at canonical position pos
    to_canonical = [0] * n
    for pos, v in enumerate(order):
        to_canonical[v] = pos
    return CanonicalDecomposition(
        n=n,
        k=k,
        source_count=r,
        cycle_lengths=tuple(lengths),
        sink_count=s,
        source_to_cycle=x_rows,
        cycle_to_sink=tuple(y_rows),
        sigma=Permutation(tuple(to_canonical)),
    )


def block_power(d: CanonicalDecomposition, m: int) -> list[list[int]]:
    """Exact integer m-th power of the canonical matrix, from the block formula.

    Blocks: [[0, X P^(m-1), X P^(m-2) Y], [0, P^m, P^(m-1) Y], [0, 0, 0]].
    Built from the cycle permutation directly, independent of matrix
    multiplication.
    """
    r = d.source_count
    s = d.sink_count
    size = d.cycle_total
    succ = [0] * size
    offset = 0
    for length in d.cycle_lengths:
        for t in range(length):
            succ[offset + t] = offset + (t + 1) % length
        offset += length

    def perm_power(t: int) -> list[int]:
        out = list(range(size))
        for _ in range(t):
            out = [succ[v] for v in out]
        return out

    def x_entry(i: int, j: int) -> int:
        return (d.source_to_cycle[i] >> j) & 1

    def y_entry(i: int, j: int) -> int:
        return (d.cycle_to_sink[i] >> j) & 1

    n = r + size + s
    out = [[0] * n for _ in range(n)]
    p_m1 = perm_power(m - 1)
    p_m2 = perm_power(m - 2)
    p_m = perm_power(m)
    for i in range(r):
        for j in range(size):
            # (X P^(m-1))(i, j) = X(i, u) where P^(m-1) maps u to j
            out[i][r + j] = sum(x_entry(i, u) for u in range(size) if p_m1[u] == j)
        for j in range(s):
            out[i][r + size + j] = sum(
                x_entry(i, u) * y_entry(p_m2[u], j) for u in range(size)
            )
    for i in range(size):
        out[r + i][r + p_m[i]] = 1
        for j in range(s):
            out[r + i][r + size + j] = y_entry(p_m1[i], j)
    return out
