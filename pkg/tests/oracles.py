"""Independent reference computations used to check the package.

Nothing here calls the package's table builder, linear algebra or group
code; agreement with these is evidence, not tautology.
"""

from __future__ import annotations

import itertools
from collections import deque

import sympy


def to_sympy(x):
    """Scalar (or int / Fraction) -> exact sympy number."""
    if not hasattr(x, "rational_part"):
        return sympy.Rational(x)
    r = sympy.Rational(x.rational_part.numerator, x.rational_part.denominator)
    s = sympy.Rational(x.surd_part.numerator, x.surd_part.denominator)
    return r + s * sympy.sqrt(x.d) if s else r


def bits(w, n):
    return [i for i in range(n) if w >> (n - 1 - i) & 1]


def naive_product(n, words, a, b, c, x, y):
    """Product of two basis labels ('t', i) / ('e', w); returns {label: coeff}.

    ``b`` and ``c`` are callables (pair -> value, word -> value).
    """
    ones = (1 << n) - 1
    if x[0] == "e" and y[0] == "t":
        x, y = y, x
    if x[0] == "t" and y[0] == "t":
        return {x: 1} if x == y else {}
    if x[0] == "t":
        return {y: a} if x[1] in bits(y[1], n) else {}
    u, v = x[1], y[1]
    if u == v:
        return {("t", i): c(u) for i in bits(u, n)}
    if u ^ v == ones:
        return {}
    return {("e", u ^ v): b(u, v)}


def naive_labels(n, words):
    return [("t", i) for i in range(n)] + [("e", w) for w in words]


def naive_algebra_matches(A, b, c) -> list:
    """Basis pairs where A's table disagrees with the defining rules."""
    labels = naive_labels(A.n, A.words)
    index = {lab: k for k, lab in enumerate(labels)}
    bad = []
    for i, x in enumerate(labels):
        for j, y in enumerate(labels):
            want = {index[k]: v for k, v in naive_product(A.n, A.words, A.a, b, c, x, y).items() if v}
            got = dict(A.product(i, j).items())
            if {k: to_sympy(v) for k, v in got.items()} != {k: to_sympy(v) for k, v in want.items()}:
                bad.append((x, y))
    return bad


def adjoint_sympy(A, u):
    """Matrix of v -> u v as a sympy Matrix (columns are images of basis vectors)."""
    dim = A.dim
    cols = []
    for i in range(dim):
        acc = [sympy.Integer(0)] * dim
        for k, x in u.items():
            for j, y in A.product(k, i).items():
                acc[j] += to_sympy(x) * to_sympy(y)
        cols.append(acc)
    return sympy.Matrix(dim, dim, lambda r, s: cols[s][r])


def eigenvalue_multiset(A, u) -> dict:
    """Eigenvalue -> algebraic multiplicity of ad(u), by sympy."""
    return {sympy.nsimplify(k): v for k, v in adjoint_sympy(A, u).eigenvals().items()}


def brute_equivalent(c1, c2) -> bool:
    """Permutation equivalence by trying every coordinate permutation."""
    if c1.n != c2.n or len(c1.words) != len(c2.words):
        return False
    n = c1.n
    target = set(c2.words)
    for sigma in itertools.permutations(range(n)):
        ok = True
        for w in c1.words:
            img = 0
            for i in bits(w, n):
                img |= 1 << (n - 1 - sigma[i])
            if img not in target:
                ok = False
                break
        if ok:
            return True
    return False


def dense(M, dim):
    """Automorphism -> tuple of row tuples of sympy numbers."""
    cols = [[sympy.Integer(0)] * dim for _ in range(dim)]
    for s, col in enumerate(M.cols):
        for r, x in col.items():
            cols[s][r] = to_sympy(x)
    return tuple(tuple(cols[s][r] for s in range(dim)) for r in range(dim))


def matmul(X, Y):
    n = len(X)
    return tuple(
        tuple(sympy.expand(sum(X[i][k] * Y[k][j] for k in range(n) if X[i][k] != 0 and Y[k][j] != 0)) for j in range(n))
        for i in range(n)
    )


def group_order(mats, cap=5000) -> int:
    """|<mats>| by breadth-first closure on dense sympy matrices."""
    n = len(mats[0])
    ident = tuple(tuple(sympy.Integer(int(i == j)) for j in range(n)) for i in range(n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in mats:
            y = matmul(g, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise RuntimeError("oracle cap")
                queue.append(y)
    return len(seen)


def is_multiplicative(A, M) -> bool:
    """M(xy) = M(x)M(y) on all basis pairs, by the naive expansion in sympy."""
    dim = A.dim
    D = dense(M, dim)

    def image(vec):
        return [sum(D[r][s] * vec[s] for s in range(dim)) for r in range(dim)]

    def prod(u, v):
        out = [sympy.Integer(0)] * dim
        for i in range(dim):
            if u[i] == 0:
                continue
            for j in range(dim):
                if v[j] == 0:
                    continue
                for k, x in A.product(i, j).items():
                    out[k] += u[i] * v[j] * to_sympy(x)
        return [sympy.expand(z) for z in out]

    basis = [[sympy.Integer(int(i == j)) for j in range(dim)] for i in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            lhs = image(prod(basis[i], basis[j]))
            rhs = prod(image(basis[i]), image(basis[j]))
            if any(sympy.expand(p - q) != 0 for p, q in zip(lhs, rhs)):
                return False
    return True
