"""Symbolic determinants of small matrices of Laurent polynomials."""
from __future__ import annotations

from typing import Sequence

from .laurent import DimensionError, LaurentPoly

# documented input limit; memoised expansion is O(2^n n) products
MAX_SIZE = 12


def _permutation_sign(order: Sequence[int]) -> int:
    sign = 1
    seen = list(order)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


def determinant(m: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Exact determinant by Laplace expansion memoised on column subsets.

    Rows are expanded sparsest first.  Raises ``ValueError`` for non-square
    input or more than `MAX_SIZE` rows.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        raise ValueError("determinant of an empty matrix needs an explicit dimension")
    if n > MAX_SIZE:
        raise ValueError(f"matrix size {n} exceeds the supported limit {MAX_SIZE}")
    dim = m[0][0].dim
    for row in m:
        for e in row:
            if e.dim != dim:
                raise DimensionError("matrix entries have different dimensions")

    order = sorted(range(n), key=lambda r: (sum(1 for e in m[r] if e), r))
    rows = [[(c, m[r][c]) for c in range(n) if m[r][c]] for r in order]
    memo: dict[int, LaurentPoly] = {}
    one = LaurentPoly.constant(1, dim)
    zero = LaurentPoly.zero(dim)

    def minor(i: int, cols: int) -> LaurentPoly:
        if i == n:
            return one
        key = cols
        if key in memo:
            return memo[key]
        acc = zero
        for c, entry in rows[i]:
            bit = 1 << c
            if not cols & bit:
                continue
            sub = minor(i + 1, cols & ~bit)
            if sub.is_zero():
                continue
            pos = bin(cols & (bit - 1)).count("1")
            term = entry * sub
            acc = acc - term if pos % 2 else acc + term
        memo[key] = acc
        return acc

    det = minor(0, (1 << n) - 1)
    return det if _permutation_sign(order) == 1 else -det


def leibniz_determinant(m: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Full permutation-sum determinant; reference implementation for tests."""
    from itertools import permutations

    n = len(m)
    dim = m[0][0].dim
    total = LaurentPoly.zero(dim)
    for perm in permutations(range(n)):
        term = LaurentPoly.constant(_permutation_sign(perm), dim)
        for i, j in enumerate(perm):
            term = term * m[i][j]
            if term.is_zero():
                break
        total = total + term
    return total
