"""Exact dense linear algebra over any field whose elements support + - * /.

Matrices are lists of rows.  Entries must already be field elements
(CycScalar or Fraction); plain ints would turn division into float division.
"""

from __future__ import annotations


def identity(size: int, one, zero):
    return [[one if i == j else zero for j in range(size)] for i in range(size)]


def transpose(a):
    return [list(col) for col in zip(*a)]


def matmul(a, b):
    bt = transpose(b)
    return [[_dot(row, col) for col in bt] for row in a]


def matvec(a, v):
    return [_dot(row, v) for row in a]


def _dot(u, v):
    acc = 0
    for x, y in zip(u, v):
        if x and y:
            acc = x * y + acc
    return acc


def rref(rows):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def row_space(rows):
    """Canonical basis (rref rows) of the span of ``rows``."""
    return rref(rows)[0]


def nullspace(a, one, zero):
    """Basis of {x : a x = 0}, one vector per free column."""
    if not a:
        return []
    ncols = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution x of a x = b, or None when the system is inconsistent."""
    if not a:
        return None
    ncols = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    zero = b[0] - b[0]
    x = [zero] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return x


def inverse(a, one, zero):
    n = len(a)
    aug = [list(row) + e for row, e in zip(a, identity(n, one, zero))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)
