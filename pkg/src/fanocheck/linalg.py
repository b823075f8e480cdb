"""Exact dense linear algebra over a Field (small matrices only).

Matrices are lists of row lists of raw scalars.  Everything is Gaussian
elimination with exact field arithmetic; no pivot-size heuristics are needed.
"""

from __future__ import annotations

from .fields import Field


def mat_copy(m):
    return [row[:] for row in m]


def rref(field: Field, m):
    """Reduced row echelon form.  Returns (rref_matrix, pivot_columns)."""
    a = mat_copy(m)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != field.zero), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = field.inv(a[r][c])
        a[r] = [field.mul(inv, x) for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != field.zero:
                f = a[i][c]
                a[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(field: Field, m) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(field, m)[1])


def solve(field: Field, a, b):
    """One solution x of a x = b, or None if inconsistent.

    Free variables are set to zero.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [a[i][:] + [b[i]] for i in range(rows)]
    red, pivots = rref(field, aug)
    if cols in pivots:
        return None
    x = [field.zero] * cols
    for r, c in enumerate(pivots):
        x[c] = red[r][cols]
    return x


def nullspace(field: Field, m):
    """Basis of the right kernel of m, as a list of vectors."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    red, pivots = rref(field, m)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * cols
        v[fc] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(v)
    return basis


def in_span(field: Field, vectors, target) -> list | None:
    """Coefficients expressing target in the span of vectors, or None.

    ``vectors`` are rows; returns c with sum(c_i * vectors[i]) == target.
    """
    if not vectors:
        return None if any(t != field.zero for t in target) else []
    cols = [[vec[j] for vec in vectors] for j in range(len(target))]
    return solve(field, cols, list(target))


def mat_mul(field: Field, a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[field.zero] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if aik == field.zero:
                continue
            for j in range(cols):
                out[i][j] = field.add(out[i][j], field.mul(aik, b[k][j]))
    return out


def transpose(m):
    return [list(col) for col in zip(*m)] if m else []
