#!/usr/bin/env python3
"""How many ones can a k-idempotent matrix carry?

The ceiling is gamma(n): (n+1)^2 / 4 for odd n, (n^2 + 2n) / 4 for even
n. Equality forces one of two block shapes, both enumerable. This
script prints the ceiling, lists every family attaining it at small
orders, and confirms the census maximum agrees.
"""

from kidempotent import (
    census,
    construct_extremal,
    extremal_families,
    family_line,
    gamma,
    is_extremal,
    nnz,
    to_text,
)

print("density ceiling gamma(n):")
for n in range(1, 11):
    print(f"  n={n:2d}  gamma={gamma(n):3d}")

n, k = 4, 2
print(f"\nall maximum-density families at n={n}, k={k}:")
for params in extremal_families(n, k):
    matrix = construct_extremal(n, k, params)
    assert is_extremal(matrix, k)
    print(" ", family_line(n, k, params))
    for line in to_text(matrix).splitlines()[1:]:
        print("     ", line)

print("\none representative in full:")
best = construct_extremal(5, 3, extremal_families(5, 3)[0])
print(to_text(best))
print("ones:", nnz(best), " ceiling:", gamma(5))

print("\nexhaustive cross-check at n=3, k=2:")
report = census(3, 2)
print(f"  census maximum = {report.max_nnz}, gamma(3) = {report.gamma_value}")
print(f"  matrices attaining it: {report.argmax_count}")
print(f"  every argmax fits shape A or B: {report.max_density_ok}")
