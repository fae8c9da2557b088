"""Recover the code and special basis from a bare multiplication table and axes."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import gf2code as g
from .algebra import CodeAlgebra, idempotent_constants
from .elements import Element, TableAlgebra, linear_combination
from .errors import InconsistentStructure, ParseError, PairingFailed, ProjectivityRequired
from .linalg import inverse, nullspace, rank, rref, subspace_key
from .report import Report
from .scalar import HALF, ONE, ZERO, Scalar, parse_scalar


class BlackBoxAlgebra(TableAlgebra):
    """A commutative algebra known only through its structure constants."""

    def __init__(self, table, axes, d: int = 1):
        self.dim = len(table)
        self._table = table
        self.axes = list(axes)
        self.d = d

    @classmethod
    def from_algebra(cls, A: TableAlgebra, axes, d: int = 1) -> BlackBoxAlgebra:
        table = [[A.product(i, j) for j in range(A.dim)] for i in range(A.dim)]
        return cls(table, axes, d)

    def check(self) -> Report:
        rep = Report("black-box input")
        rep.add("commutative", self.is_commutative())
        bad = [k for k, x in enumerate(self.axes) if self.mul(x, x) != x]
        rep.add("axes idempotent", not bad, f"axis {bad[0]} is not idempotent" if bad else "")
        return rep


# ---------------------------------------------------------------------------
# stripping labels


def strip(A: CodeAlgebra, axes, seed: int = 0, mix: bool = False) -> BlackBoxAlgebra:
    """Hide the special basis behind a random change of basis and shuffle the axes.

    The default change is monomial (permutation with rational rescaling).
    ``mix`` additionally adds random multiples of other basis vectors, which
    makes products dense; keep it for small instances.
    """
    rng = random.Random(seed)
    dim = A.dim
    perm = list(range(dim))
    rng.shuffle(perm)
    scales = [Fraction(rng.choice([1, 2, 3, -1, -2, -3]), rng.choice([1, 2, 3])) for _ in range(dim)]
    new_basis = [Element.basis(perm[k], scales[k]) for k in range(dim)]
    if mix:
        for k in range(1, dim):
            j = rng.randrange(k)
            new_basis[k] = new_basis[k] + new_basis[j].scale(rng.choice([1, -1, 2]))
    dense = [v.to_dense(dim) for v in new_basis]
    cols_inv = inverse([list(r) for r in zip(*dense)])
    # old basis vector l in new coordinates is column l of the inverse
    old_in_new = [Element.from_dense([cols_inv[r][l] for r in range(dim)]) for l in range(dim)]

    def to_new(v: Element) -> Element:
        return linear_combination((x, old_in_new[i]) for i, x in v.items())

    table = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            p = to_new(A.mul(new_basis[i], new_basis[j]))
            table[i][j] = table[j][i] = p
    hidden = [to_new(x) for x in axes]
    rng.shuffle(hidden)
    return BlackBoxAlgebra(table, hidden, A.d)


# ---------------------------------------------------------------------------
# dump format


def _fmt_vec(v: Element) -> str:
    return ", ".join(f"{x} {i}" for i, x in v.key)


def dump(B: BlackBoxAlgebra) -> str:
    lines = [f"dim {B.dim}"]
    if B.d != 1:
        lines.append(f"d {B.d}")
    for i in range(B.dim):
        for j in range(i, B.dim):
            body = _fmt_vec(B.product(i, j))
            lines.append(f"{i} {j} :" + (f" {body}" if body else ""))
    lines.append(f"axes {len(B.axes)}")
    for x in B.axes:
        lines.append(_fmt_vec(x))
    return "\n".join(lines) + "\n"


def _parse_vec(text: str, d: int, dim: int, path, lineno) -> Element:
    text = text.strip()
    if not text:
        return Element()
    coeffs = {}
    for term in text.split(","):
        parts = term.split()
        if len(parts) != 2:
            raise ParseError(f"bad term {term.strip()!r}", path, lineno)
        try:
            x = parse_scalar(parts[0])
            k = int(parts[1])
        except (ValueError, ArithmeticError) as exc:
            raise ParseError(f"bad term {term.strip()!r}: {exc}", path, lineno) from None
        if not 0 <= k < dim:
            raise ParseError(f"basis index {k} out of range", path, lineno)
        if k in coeffs:
            raise ParseError(f"basis index {k} repeated", path, lineno)
        coeffs[k] = x
    return Element(coeffs)


def load_dump(text: str, path: str = "<dump>") -> BlackBoxAlgebra:
    rows = [(k + 1, ln.split("#", 1)[0].strip()) for k, ln in enumerate(text.splitlines())]
    rows = [(k, ln) for k, ln in rows if ln]
    it = iter(rows)
    try:
        lineno, first = next(it)
    except StopIteration:
        raise ParseError("empty dump", path, 1) from None
    head = first.split()
    if len(head) != 2 or head[0] != "dim" or not head[1].isdigit():
        raise ParseError("expected 'dim N'", path, lineno)
    dim = int(head[1])
    d = 1
    table = [[None] * dim for _ in range(dim)]
    seen = 0
    axes = []
    n_axes = None
    for lineno, ln in it:
        if n_axes is not None:
            axes.append(_parse_vec(ln, d, dim, path, lineno))
            continue
        if ln.startswith("d "):
            try:
                d = int(ln.split()[1])
            except ValueError:
                raise ParseError("bad surd line", path, lineno) from None
            continue
        if ln.startswith("axes"):
            parts = ln.split()
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError("expected 'axes K'", path, lineno)
            n_axes = int(parts[1])
            continue
        if ":" not in ln:
            raise ParseError("expected 'i j : terms'", path, lineno)
        left, right = ln.split(":", 1)
        ij = left.split()
        if len(ij) != 2 or not all(x.isdigit() for x in ij):
            raise ParseError("expected two basis indices before ':'", path, lineno)
        i, j = map(int, ij)
        if not (0 <= i <= j < dim):
            raise ParseError(f"index pair {i} {j} invalid", path, lineno)
        if table[i][j] is not None:
            raise ParseError(f"pair {i} {j} given twice", path, lineno)
        table[i][j] = table[j][i] = _parse_vec(right, d, dim, path, lineno)
        seen += 1
    if seen != dim * (dim + 1) // 2:
        raise ParseError(f"{seen} products given, expected {dim * (dim + 1) // 2}", path, lineno)
    if n_axes is None or len(axes) != n_axes:
        raise ParseError("axis section missing or short", path, lineno)
    return BlackBoxAlgebra(table, axes, d)


# ---------------------------------------------------------------------------
# pairing


def subalgebra(B: TableAlgebra, vectors, cap: int | None = None) -> list[Element]:
    """Basis of the subalgebra generated by the vectors; stops once past cap."""
    dim = B.dim
    cap = dim if cap is None else cap
    basis: list[list[Scalar]] = []
    elems: list[Element] = []

    def add(v: Element) -> bool:
        dense = v.to_dense(dim)
        if rank(basis + [dense]) > len(basis):
            basis.append(dense)
            elems.append(v)
            return True
        return False

    for v in vectors:
        add(v)
    done = 0
    while done < len(elems) and len(elems) <= cap:
        x = elems[done]
        for y in elems[: done + 1]:
            add(B.mul(x, y))
            if len(elems) > cap:
                break
        done += 1
    return elems


def _kernel(B: TableAlgebra, x: Element, ev: Scalar) -> list[Element]:
    M = B.adjoint(x)
    for i in range(B.dim):
        M[i][i] = M[i][i] - ev
    return [Element.from_dense(v) for v in nullspace(M, B.dim)]


def lambda_subspace(B: TableAlgebra, e: Element):
    """Lambda(e) = {z in E_1/2 : U(e) z = 0}, U(e) = {v in E_0 : v E_1/2 in E_1/2}."""
    dim = B.dim
    half = _kernel(B, e, HALF)
    zero = _kernel(B, e, ZERO)
    adj = B.adjoint(e)

    def shifted(v: Element) -> list[Scalar]:
        dv = v.to_dense(dim)
        return [sum((a * b for a, b in zip(row, dv) if a and b), ZERO) - HALF * dv[r] for r, row in enumerate(adj)]

    if zero and half:
        cols = []
        for u in zero:
            col = []
            for z in half:
                col.extend(shifted(B.mul(u, z)))
            cols.append(col)
        rows = [list(r) for r in zip(*cols)]
        coeffs = nullspace(rows, len(zero)) if any(any(r) for r in rows) else [
            [ONE if i == j else ZERO for i in range(len(zero))] for j in range(len(zero))
        ]
        U = [linear_combination(zip(c, zero)) for c in coeffs]
    else:
        U = []
    if U and half:
        cols = []
        for z in half:
            col = []
            for u in U:
                col.extend(B.mul(u, z).to_dense(dim))
            cols.append(col)
        rows = [list(r) for r in zip(*cols)]
        coeffs = nullspace(rows, len(half)) if any(any(r) for r in rows) else [
            [ONE if i == j else ZERO for i in range(len(half))] for j in range(len(half))
        ]
        lam = [linear_combination(zip(c, half)) for c in coeffs]
    else:
        lam = list(half)
    return subspace_key([v.to_dense(dim) for v in lam], dim), lam


def _perfect_matching(n: int, edges) -> list[tuple[int, int]] | None:
    partner: dict[int, set] = {i: set() for i in range(n)}
    for i, j in edges:
        partner[i].add(j)
        partner[j].add(i)
    if all(len(p) == 1 for p in partner.values()):
        pairs = sorted({tuple(sorted((i, next(iter(p))))) for i, p in partner.items()})
        if all(next(iter(partner[j])) == i for i, j in pairs):
            return pairs
    return None


def pair_axes(B: BlackBoxAlgebra, method: str = "auto") -> list[tuple[int, int]]:
    """Partition the axes into {e_+, e_-} pairs."""
    X = B.axes
    k = len(X)
    generic, orth = [], []
    for i in range(k):
        for j in range(i + 1, k):
            xy = B.mul(X[i], X[j])
            if not xy:
                orth.append((i, j))
                continue
            if method != "half" and len(subalgebra(B, [X[i], X[j]], cap=2)) == 2:
                generic.append((i, j))
    if method != "half":
        pairs = _perfect_matching(k, generic)
        if pairs is not None:
            return pairs
        if method == "generic":
            raise PairingFailed("dimension-2 test gives no perfect matching")
    # exceptional path: mutually orthogonal candidates, separated by Lambda(e)
    try:
        return _pairs_by_lambda(B, orth)
    except PairingFailed:
        pass
    return _pairs_by_search(B, orth)


def _pairs_by_lambda(B: BlackBoxAlgebra, orth) -> list[tuple[int, int]]:
    k = len(B.axes)
    groups: dict = {}
    for i, x in enumerate(B.axes):
        groups.setdefault(lambda_subspace(B, x)[0], []).append(i)
    pairs = []
    orth_set = set(orth)
    for members in groups.values():
        if len(members) != 2:
            raise PairingFailed(f"Lambda-subspace class of size {len(members)}")
        i, j = sorted(members)
        if (i, j) not in orth_set:
            raise PairingFailed(f"axes {i} and {j} share Lambda but are not orthogonal")
        pairs.append((i, j))
    if 2 * len(pairs) != k:
        raise PairingFailed("pairing does not cover every axis")
    return sorted(pairs)


def _matchings(k: int, edges, cap: int):
    nbrs: dict[int, list] = {i: [] for i in range(k)}
    for i, j in edges:
        nbrs[i].append(j)
        nbrs[j].append(i)
    count = 0

    def rec(free, acc):
        nonlocal count
        if not free:
            count += 1
            yield list(acc)
            return
        i = min(free)
        for j in sorted(nbrs[i]):
            if j in free and count < cap:
                yield from rec(free - {i, j}, acc + [(min(i, j), max(i, j))])

    yield from rec(frozenset(range(k)), [])


def _pairs_by_search(B: BlackBoxAlgebra, orth, cap: int = 4096) -> list[tuple[int, int]]:
    """Try perfect matchings of orthogonal axes until one recovers a certified structure."""
    for pairs in _matchings(len(B.axes), orth, cap):
        try:
            recover(B, pairs)
        except (InconsistentStructure, ProjectivityRequired):
            continue
        return sorted(pairs)
    raise PairingFailed("no matching of orthogonal axes yields a code algebra")


# ---------------------------------------------------------------------------
# recovery


@dataclass
class RecoveredStructure:
    pairs: list
    torals: list
    codeword_elements: dict
    code: g.Code
    t_alpha: list = field(default_factory=list)
    report: Report | None = None

    @property
    def n(self) -> int:
        return len(self.torals)


def _atoms(B: TableAlgebra, gens) -> list[Element]:
    """Minimal idempotents of the ring generated by commuting idempotents."""
    atoms: list[Element] = []
    for t in gens:
        new = []
        rest = t
        for f in atoms:
            ft = B.mul(f, t)
            if ft:
                new.append(ft)
                rest = rest - ft
            if f - ft:
                new.append(f - ft)
        if rest:
            new.append(rest)
        atoms = new
    return atoms


def recover(B: BlackBoxAlgebra, pairs=None) -> RecoveredStructure:
    """Rebuild torals, codeword elements and the code from the axis pairs."""
    if pairs is None:
        pairs = pair_axes(B)
    X = B.axes
    rep = Report("recovery")
    t_alpha, u_alpha = [], []
    for i, j in pairs:
        v = X[i] + X[j]
        v2 = B.mul(v, v)
        idx = next(iter(v.support()), None)
        if idx is None:
            raise InconsistentStructure(f"axes {i} and {j} sum to zero")
        kappa = v2[idx] / v[idx]
        if not kappa or v2 != v.scale(kappa):
            raise InconsistentStructure(f"sum of axes {i}, {j} has no idempotent multiple")
        t_alpha.append(v.scale(ONE / kappa))
        u_alpha.append(X[i] - X[j])
    torals = _atoms(B, t_alpha)
    torals.sort(key=lambda f: ([(i, x.sort_key()) for i, x in f.key]))
    n = len(torals)
    for a in torals:
        for b in torals:
            want = a if a is b else Element()
            if B.mul(a, b) != want:
                raise InconsistentStructure("recovered torals are not orthogonal idempotents")
    rep.add("torals orthogonal idempotents", True, f"{n} atoms")

    def word_of(u: Element) -> int:
        w = 0
        for k, f in enumerate(torals):
            if B.mul(f, u):
                w |= g.bit(k, n)
        return w

    elems: dict[int, Element] = {}
    for u in u_alpha:
        w = word_of(u)
        if w == 0:
            raise InconsistentStructure("a codeword element meets no toral")
        elems.setdefault(w, u)
    gens = dict(elems)
    frontier = list(elems)
    while frontier:
        nxt = []
        for w in frontier:
            for s, us in gens.items():
                target = w ^ s
                if target == 0 or target in elems:
                    continue
                prod = B.mul(elems[w], us)
                if not prod:
                    continue
                if word_of(prod) != target:
                    raise InconsistentStructure("product of codeword elements has the wrong support")
                elems[target] = prod
                nxt.append(target)
        frontier = nxt
    ones = (1 << n) - 1
    elems.pop(ones, None)
    code = g.code_from_words(list(gens), n)
    star = set(code.star)
    count_ok = n + len(star) == B.dim
    if not count_ok and n + len(star) < B.dim and set(elems) <= star:
        raise ProjectivityRequired(
            f"{n} toral atoms and {len(star)} codeword elements fall short of dimension {B.dim}"
        )
    if set(elems) != star:
        raise InconsistentStructure("recovered codeword elements do not match the spanned code")
    basis = torals + [elems[w] for w in sorted(star)]
    if not count_ok or rank([v.to_dense(B.dim) for v in basis]) != B.dim:
        raise InconsistentStructure("recovered vectors do not form a basis")
    rep.add("special basis spans", True, f"{n} torals + {len(star)} codeword elements")
    words = {w: elems[w] for w in sorted(star)}
    bad = certify(B, torals, words, pairs, t_alpha)
    if bad:
        raise InconsistentStructure(bad)
    rep.add("code-algebra relations", True)
    tor_dense = [f.to_dense(B.dim) for f in torals]
    sums_ok = all(rank(tor_dense + [v.to_dense(B.dim)]) == n for v in t_alpha)
    rep.add("pair sums toral", sums_ok)
    return RecoveredStructure(list(pairs), torals, words, code, t_alpha, rep)


def _multiple(v: Element, w: Element):
    """k with v = k*w, or None."""
    if not w:
        return ZERO if not v else None
    i = next(iter(w.support()))
    k = v[i] / w[i]
    return k if v == w.scale(k) else None


def certify(B: TableAlgebra, torals, words: dict, pairs=(), t_alpha=()) -> str | None:
    """First failed code-algebra relation in the recovered basis, or None."""
    n = len(torals)
    a = None
    for w, e in words.items():
        for k, f in enumerate(torals):
            prod = B.mul(f, e)
            if not w & g.bit(k, n):
                if prod:
                    return "toral outside a support acts nontrivially"
                continue
            x = _multiple(prod, e)
            if x is None or not x:
                return "toral does not scale a codeword element"
            if a is None:
                a = x
            elif x != a:
                return "toral action is not global"
        sq = B.mul(e, e)
        tw = Element()
        for k, f in enumerate(torals):
            if w & g.bit(k, n):
                tw = tw + f
        if _multiple(sq, tw) is None:
            return "square of a codeword element is not a multiple of its toral sum"
        ones = (1 << n) - 1
        for v, f in words.items():
            if v <= w:
                continue
            prod = B.mul(e, f)
            if v ^ w == ones:
                if prod:
                    return "complementary codeword elements do not annihilate"
            elif _multiple(prod, words[v ^ w]) is None:
                return "codeword product leaves its line"
    dim = B.dim
    for (i, j), t in zip(pairs, t_alpha):
        m = [u.to_dense(dim) for u in (B.axes[i], B.axes[j])]
        w = 0
        for k, f in enumerate(torals):
            if B.mul(f, t):
                w |= g.bit(k, n)
        if w not in words:
            return "pair sum meets no codeword"
        if rank(m + [t.to_dense(dim), words[w].to_dense(dim)]) != 2:
            return "axis pair is not in span(t_alpha, e^alpha)"
    return None


def round_trip(A: CodeAlgebra, axes, seed: int = 0, mix: bool = False):
    """strip -> pair -> recover; returns (structure, witness permutation or None)."""
    B = strip(A, [ax.element if hasattr(ax, "element") else ax for ax in axes], seed, mix)
    rec = recover(B, pair_axes(B))
    if rec.code.n != A.code.n:
        return rec, None
    return rec, g.permutation_equivalent(rec.code, A.code)


def pair_product_closed_form(A: CodeAlgebra, alpha: int):
    """(e_+ e_-, (lambda^2 - mu^2 c) t_alpha, lambda (2 lambda - 1) t_alpha)."""
    lam, mu = idempotent_constants(A, alpha)
    plus = A.t(alpha).scale(lam) + A.e(alpha, mu)
    minus = A.t(alpha).scale(lam) - A.e(alpha, mu)
    c = A.params.c(alpha)
    return (
        A.mul(plus, minus),
        A.t(alpha).scale(lam * lam - mu * mu * c),
        A.t(alpha).scale(lam * (lam * 2 - 1)),
    )


def check_c_consistency(A: CodeAlgebra, S) -> Report:
    """c equal across S unless C is the full space of length 2."""
    from .axes import small_idempotent

    S = list(S)
    code = A.code
    rep = Report("c consistency")
    exempt = code.n == 2 and len(code) == 4
    cvals = {alpha: A.params.c(alpha) for alpha in S}
    same_c = len(set(cvals.values())) <= 1
    sigs = set()
    for alpha in S:
        ax = small_idempotent(A, alpha, 1)
        sigs.add(tuple((x, ax.eval[x]) for x in sorted(ax.eval)))
    same_eval = len(sigs) == 1
    rep.add("evaluation maps equal", same_eval)
    detail = ", ".join(f"c[{code.fmt(a)}] = {v}" for a, v in sorted(cvals.items()))
    if exempt:
        rep.add("c equal across S", True, f"exempt: C = F_2^2 ({detail})")
    elif same_eval:
        rep.add("c equal across S", same_c, detail if not same_c else "")
    else:
        rep.add("c equal across S", same_c, f"{detail}; differing c already separates the evaluation maps")
    rep.values["exempt"] = exempt
    return rep
