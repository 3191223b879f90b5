"""Small dense matrices over exact rings (lists of lists).

Entries may be :class:`GaussianRational` or :class:`BiPoly`; the helpers only
use ``+``, ``*`` and truthiness, so both work.
"""

from __future__ import annotations

from typing import List, Sequence

from .exact import BiPoly, GaussianRational

Matrix = List[list]

ZERO = GaussianRational(0)
ONE = GaussianRational(1)


def zeros(rows: int, cols: int = None) -> Matrix:
    cols = rows if cols is None else cols
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n)
    for i in range(n):
        m[i][i] = ONE
    return m


def unit(n: int, i: int, j: int, c=ONE) -> Matrix:
    """The matrix with ``c`` at (i, j) and zeros elsewhere."""
    m = zeros(n)
    m[i][j] = GaussianRational.coerce(c)
    return m


def from_rows(rows: Sequence[Sequence]) -> Matrix:
    return [[GaussianRational.coerce(x) for x in row] for row in rows]


def shape(a: Matrix):
    return len(a), len(a[0]) if a else 0


def add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a: Matrix, c) -> Matrix:
    return [[x * c for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise ValueError(f"shape mismatch {n}x{k} @ {k2}x{m}")
    bt = transpose(b)
    out = []
    for row in a:
        nz = [(t, x) for t, x in enumerate(row) if x]
        out_row = []
        for col in bt:
            acc = None
            for t, x in nz:
                y = col[t]
                if y:
                    acc = x * y if acc is None else acc + x * y
            out_row.append(ZERO if acc is None else acc)
        out.append(out_row)
    return out


def matvec(a: Matrix, v: Sequence) -> list:
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            if x and y:
                acc = x * y if acc is None else acc + x * y
        out.append(ZERO if acc is None else acc)
    return out


def bracket(a: Matrix, b: Matrix) -> Matrix:
    return sub(matmul(a, b), matmul(b, a))


def is_zero(a: Matrix) -> bool:
    return not any(x for row in a for x in row)


def equal(a: Matrix, b: Matrix) -> bool:
    return is_zero(sub(a, b))


def trace(a: Matrix):
    acc = ZERO
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def nilpotency_index(a: Matrix) -> int:
    """Smallest k with a^k = 0, or 0 if ``a`` is not nilpotent."""
    n = len(a)
    p = a
    for k in range(1, n + 1):
        if is_zero(p):
            return k
        p = matmul(p, a)
    return 0


def to_poly(a: Matrix) -> Matrix:
    return [[x if isinstance(x, BiPoly) else BiPoly.const(x) for x in row] for row in a]


def to_json(a: Matrix):
    return [[str(x) for x in row] for row in a]
