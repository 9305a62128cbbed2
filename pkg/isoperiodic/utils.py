# Copyright (c) the isoperiodic authors. All Rights Reserved
from functools import reduce
import itertools
from typing import Iterator, List, Sequence, Tuple

from sympy import Matrix, igcd
from sympy.core.intfunc import igcdex

IntRow = List[int]


def content(vec: Sequence[int]) -> int:
    """Non-negative gcd of the entries (0 for the zero vector)."""
    return int(reduce(igcd, (int(x) for x in vec), 0))


def primitive_part(vec: Sequence[int]) -> IntRow:
    g = content(vec)
    assert g != 0, "zero vector has no primitive part"
    return [int(x) // g for x in vec]


def xgcd_list(values: Sequence[int]) -> Tuple[int, IntRow]:
    """Return (g, w) with g = gcd(values) >= 0 and sum(w[i] * values[i]) == g."""
    g = 0
    coeffs = [0] * len(values)
    for i, a in enumerate(values):
        if a == 0:
            continue
        x, y, h = igcdex(g, int(a))
        coeffs = [int(x) * c for c in coeffs]
        coeffs[i] = int(y)
        g = int(h)
    return g, coeffs


def hermite_form(rows: Sequence[Sequence[int]]) -> List[IntRow]:
    """Row-style Hermite normal form of the row lattice.

    Zero rows are dropped, pivots are positive and entries above a pivot lie in
    [0, pivot). The result only depends on the lattice spanned by `rows`.
    """
    work = [[int(x) for x in row] for row in rows if any(row)]
    if not work:
        return []
    ncols = len(work[0])
    result: List[IntRow] = []
    for col in range(ncols):
        pivot = None
        remaining: List[IntRow] = []
        for row in work:
            if row[col] == 0:
                remaining.append(row)
                continue
            if pivot is None:
                pivot = row
                continue
            a, b = pivot[col], row[col]
            x, y, g = (int(t) for t in igcdex(a, b))
            combined = [x * p + y * r for p, r in zip(pivot, row)]
            other = [(-b // g) * p + (a // g) * r for p, r in zip(pivot, row)]
            pivot = combined
            if any(other):
                remaining.append(other)
        work = remaining
        if pivot is None:
            continue
        if pivot[col] < 0:
            pivot = [-x for x in pivot]
        for i, prev in enumerate(result):
            q = prev[col] // pivot[col]
            if q:
                result[i] = [p - q * r for p, r in zip(prev, pivot)]
        result.append(pivot)
    return result


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> List[IntRow]:
    """Hermite basis of {x in Z^ncols : row . x = 0 for every row} (Euclidean dot product)."""
    k = len(rows)
    augmented = [
        [int(rows[i][j]) for i in range(k)] + [1 if t == j else 0 for t in range(ncols)]
        for j in range(ncols)
    ]
    return [row[k:] for row in hermite_form(augmented) if not any(row[:k])]


def saturate_rows(rows: Sequence[Sequence[int]], ncols: int) -> List[IntRow]:
    """Hermite basis of the rational closure of the row lattice intersected with Z^ncols."""
    if not any(any(row) for row in rows):
        return []
    return integer_kernel(integer_kernel(rows, ncols), ncols)


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(hermite_form(rows))


def determinant(rows: Sequence[Sequence[int]]) -> int:
    if not rows:
        return 1
    return int(Matrix([list(r) for r in rows]).det())


def small_vectors(dim: int, radius: int) -> Iterator[Tuple[int, ...]]:
    """Nonzero integer vectors of sup-norm <= radius, by sup-norm then lexicographically."""
    for r in range(1, radius + 1):
        for vec in itertools.product(range(-r, r + 1), repeat=dim):
            if max(abs(x) for x in vec) == r:
                yield vec


def combine(coeffs: Sequence[int], rows: Sequence[Sequence[int]]) -> IntRow:
    assert rows, "cannot combine an empty family"
    out = [0] * len(rows[0])
    for c, row in zip(coeffs, rows):
        if c:
            out = [o + c * x for o, x in zip(out, row)]
    return out
