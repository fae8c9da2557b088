"""Exact Gaussian elimination over :class:`Scalar` on dense row lists."""

from __future__ import annotations

from .scalar import ONE, ZERO, Scalar, as_scalar


def rref(rows):
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    m = [[as_scalar(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][col].inverse()
        if inv != ONE:
            m[r] = [x * inv for x in m[r]]
        pivot_row = m[r]
        for i in range(len(m)):
            if i != r:
                f = m[i][col]
                if f:
                    row = m[i]
                    m[i] = [x - f * y if y else x for x, y in zip(row, pivot_row)]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int | None = None):
    """Basis of {v : rows . v = 0}."""
    if ncols is None:
        ncols = len(rows[0])
    if not rows:
        return [[ONE if i == j else ZERO for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(red, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return basis


def inverse(matrix):
    n = len(matrix)
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(matrix)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


def solve(matrix, b):
    """One solution x of matrix . x = b, or None if inconsistent."""
    ncols = len(matrix[0])
    aug = [list(row) + [as_scalar(bi)] for row, bi in zip(matrix, b)]
    red, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def mat_vec(matrix, v):
    out = []
    for row in matrix:
        acc = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def transpose(matrix):
    return [list(col) for col in zip(*matrix)]


def subspace_key(vectors, ncols: int):
    """Canonical hashable form of span(vectors): its RREF basis."""
    if not vectors:
        return ()
    red, _ = rref(vectors)
    return tuple(tuple(row) for row in red)


def in_span(vectors, v) -> bool:
    if not vectors:
        return not any(v)
    return rank(list(vectors) + [v]) == rank(vectors)


__all__ = [
    "rref",
    "rank",
    "nullspace",
    "inverse",
    "solve",
    "mat_vec",
    "transpose",
    "subspace_key",
    "in_span",
    "Scalar",
]
