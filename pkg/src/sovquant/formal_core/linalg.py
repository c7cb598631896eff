"""Exact Gauss-Jordan elimination on small dense matrices.

Entries are any ring elements with ``+ - *``, ``inv()`` and ``is_unit()``
(GaussianRational, Jet, single-grade FiberGradedJet).  Pivots are chosen
among units, so a jet matrix is invertible here exactly when its constant
part is.
"""

from ..errors import NotInvertible
from .gaussian import GaussianRational


def _zero_one(m):
    z = m[0][0] * 0
    return z, z + 1


def identity_like(m):
    z, one = _zero_one(m)
    size = len(m)
    return [[one if i == j else z for j in range(size)] for i in range(size)]


def matmul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = a[i][0] * b[0][j]
            for k in range(1, inner):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def inverse(m):
    size = len(m)
    a = [list(row) for row in m]
    b = identity_like(m)
    for col in range(size):
        pivot = next((r for r in range(col, size) if a[r][col].is_unit()), None)
        if pivot is None:
            raise NotInvertible(f"matrix is singular (no unit pivot in column {col})")
        a[col], a[pivot] = a[pivot], a[col]
        b[col], b[pivot] = b[pivot], b[col]
        p = a[col][col].inv()
        a[col] = [x * p for x in a[col]]
        b[col] = [x * p for x in b[col]]
        for r in range(size):
            if r == col:
                continue
            f = a[r][col]
            if f.is_zero():
                continue
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
            b[r] = [x - f * y for x, y in zip(b[r], b[col])]
    return b


def determinant(m):
    """Determinant of a GaussianRational matrix."""
    size = len(m)
    if size == 0:
        return GaussianRational(1)
    a = [[GaussianRational.coerce(x) for x in row] for row in m]
    det = GaussianRational(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if not a[r][col].is_zero()), None)
        if pivot is None:
            return GaussianRational(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det = det * a[col][col]
        p = a[col][col].inv()
        for r in range(col + 1, size):
            f = a[r][col] * p
            if not f.is_zero():
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def nullspace(m):
    """Basis of ``{x : m x = 0}`` for a GaussianRational matrix (reduced echelon form)."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [[GaussianRational.coerce(x) for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if not a[i][c].is_zero()), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        p = a[r][c].inv()
        a[r] = [x * p for x in a[r]]
        for i in range(rows):
            if i != r and not a[i][c].is_zero():
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [GaussianRational(0)] * cols
        v[fcol] = GaussianRational(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fcol]
        basis.append(v)
    return basis
