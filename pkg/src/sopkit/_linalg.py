"""Gaussian elimination over a finite field, on integer element codes.

Matrices are lists of row lists; `ops` is a `FieldOps`.  Everything here
is deterministic: pivots are chosen as the first nonzero entry scanning
rows top-down within the current column.
"""

from __future__ import annotations


def rref(rows, ncols, ops):
    """Reduced row echelon form.  Returns (new_rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ops.inv(rows[r][c])
        if inv != 1:
            rows[r] = [ops.mul(inv, x) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [ops.sub(x, ops.mul(f, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(rows, ncols, ops) -> int:
    return len(rref(rows, ncols, ops)[1])


def nullspace(rows, ncols, ops):
    """Basis of the right kernel, one vector per non-pivot column.

    The basis is the standard RREF one: free variable j set to 1, pivot
    variables solved; deterministic given the input.
    """
    red, pivots = rref(rows, ncols, ops)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for j in free:
        v = [0] * ncols
        v[j] = 1
        for i, c in enumerate(pivots):
            v[c] = ops.neg(red[i][j])
        basis.append(v)
    return basis
