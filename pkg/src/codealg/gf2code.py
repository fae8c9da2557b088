"""Binary linear codes with codewords packed into ints.

Coordinate ``i`` (0-based, leftmost character of the bit string) is bit
``n - 1 - i``, so the numeric order of the ints is the order of the bit
strings read left to right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import LengthMismatch, NotACodeword, SearchBoundExceeded


def bit(i: int, n: int) -> int:
    return 1 << (n - 1 - i)


def weight(w: int) -> int:
    return bin(w).count("1")


def support(w: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if w >> (n - 1 - i) & 1)


def from_support(coords: Iterable[int], n: int) -> int:
    w = 0
    for i in coords:
        w |= bit(i, n)
    return w


def word_str(w: int, n: int) -> str:
    return format(w, f"0{n}b") if n else ""


def parse_word(s: str) -> int:
    s = s.strip()
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"not a bit string: {s!r}")
    return int(s, 2)


def gf2_basis(rows: Iterable[int]) -> list[int]:
    """Fully reduced echelon basis of the span of rows, sorted descending."""
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis = [min(b, b ^ r) for b in basis]
            basis.append(r)
            basis.sort(reverse=True)
    return basis


def gf2_rank(rows: Iterable[int]) -> int:
    return len(gf2_basis(rows))


@dataclass(frozen=True)
class Code:
    n: int
    generators: tuple[int, ...]
    words: tuple[int, ...]

    @property
    def ones(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def word_set(self) -> frozenset[int]:
        return frozenset(self.words)

    @property
    def rank(self) -> int:
        return len(self.words).bit_length() - 1

    @property
    def has_ones(self) -> bool:
        return self.ones in self.word_set

    @cached_property
    def star(self) -> tuple[int, ...]:
        """Codewords other than 0 and 1."""
        return tuple(w for w in self.words if w != 0 and w != self.ones)

    @cached_property
    def basis(self) -> tuple[int, ...]:
        return tuple(gf2_basis(self.generators))

    def __contains__(self, w: int) -> bool:
        return w in self.word_set

    def __len__(self) -> int:
        return len(self.words)

    def complement(self, w: int) -> int | None:
        """w + 1 when 1 lies in the code, otherwise None."""
        return w ^ self.ones if self.has_ones else None

    def fmt(self, w: int) -> str:
        return word_str(w, self.n)

    def weights(self) -> list[int]:
        return sorted({weight(w) for w in self.words})

    def weight_distribution(self) -> tuple[int, ...]:
        dist = [0] * (self.n + 1)
        for w in self.words:
            dist[weight(w)] += 1
        return tuple(dist)

    def __str__(self):
        gens = ",".join(self.fmt(g) for g in self.basis) or "-"
        return f"[{self.n},{self.rank}] <{gens}>"


def span(generators: Sequence, n: int | None = None) -> Code:
    """The code spanned by the given generators (ints or bit strings)."""
    gens = list(generators)
    if n is None:
        if not gens:
            raise ValueError("length required for an empty generator set")
        if not all(isinstance(g, str) for g in gens):
            raise ValueError("length required for int generators")
        n = len(gens[0])
    ints = []
    for g in gens:
        if isinstance(g, str):
            if len(g.strip()) != n:
                raise LengthMismatch(f"generator {g!r} does not have length {n}")
            g = parse_word(g)
        elif g >> n:
            raise LengthMismatch(f"generator {g} does not fit in length {n}")
        ints.append(g)
    words = {0}
    for b in gf2_basis(ints):
        words |= {w ^ b for w in words}
    return Code(n, tuple(ints), tuple(sorted(words)))


def code_from_words(words: Iterable[int], n: int) -> Code:
    return span(gf2_basis(words), n)


def full_space(n: int) -> Code:
    return span([bit(i, n) for i in range(n)], n)


def even_weight_code(m: int) -> Code:
    return span([bit(0, m) | bit(i, m) for i in range(1, m)], m)


def direct_sum(*codes: Code) -> Code:
    n = sum(c.n for c in codes)
    gens = []
    offset = 0
    for c in codes:
        shift = n - offset - c.n
        gens.extend(g << shift for g in c.basis)
        offset += c.n
    return span(gens, n)


def dual(code: Code) -> Code:
    n = code.n
    basis = list(code.basis)
    pivots = [n - 1 - (r.bit_length() - 1) for r in basis]
    free = [i for i in range(n) if i not in set(pivots)]
    gens = []
    for f in free:
        v = bit(f, n)
        for r, p in zip(basis, pivots):
            if r & bit(f, n):
                v |= bit(p, n)
        gens.append(v)
    return span(gens, n)


def is_projective(code: Code) -> tuple[bool, Code, float]:
    """(verdict, dual code, minimum nonzero dual weight; inf if the dual is zero)."""
    d = dual(code)
    nonzero = [weight(w) for w in d.words if w]
    min_w = min(nonzero) if nonzero else math.inf
    return min_w >= 3, d, min_w


def weight_partition(alpha: int, beta: int, n: int | None = None) -> tuple[int, int]:
    """Unordered pair (|alpha & beta|, |alpha & (alpha + beta)|), smaller first."""
    if n is not None and (alpha >> n or beta >> n):
        raise LengthMismatch("codewords longer than the code length")
    x = weight(alpha & beta)
    y = weight(alpha & ~beta)
    return (x, y) if x <= y else (y, x)


def partition_classes(code: Code, alpha: int) -> dict[tuple[int, int], list[int]]:
    """C_alpha(p) for every p in P_alpha, keyed by p and sorted canonically."""
    if alpha not in code:
        raise NotACodeword(f"{code.fmt(alpha)} is not a codeword")
    excluded = {alpha, code.complement(alpha)}
    classes: dict[tuple[int, int], list[int]] = {}
    for beta in code.star:
        if beta in excluded:
            continue
        classes.setdefault(weight_partition(alpha, beta), []).append(beta)
    return dict(sorted(classes.items()))


def partitions(code: Code, alpha: int) -> frozenset[tuple[int, int]]:
    return frozenset(partition_classes(code, alpha))


def restrict(code: Code, coords: Sequence[int]) -> Code:
    """Project the code onto the given coordinates (in that order)."""
    m = len(coords)
    out = set()
    for w in code.words:
        v = 0
        for k, i in enumerate(coords):
            if w & bit(i, code.n):
                v |= bit(k, m)
        out.add(v)
    return code_from_words(out, m)


def project(code: Code, alpha: int) -> Code:
    if alpha not in code:
        raise NotACodeword(f"{code.fmt(alpha)} is not a codeword")
    return restrict(code, support(alpha, code.n))


def decompose_direct_sum(code: Code) -> list[tuple[tuple[int, ...], Code]]:
    """Finest coordinate partition splitting the code as a direct sum."""
    n = code.n
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for row in code.basis:
        coords = support(row, n)
        for i in coords[1:]:
            parent[find(i)] = find(coords[0])
    blocks: dict[int, list[int]] = {}
    for i in range(n):
        blocks.setdefault(find(i), []).append(i)
    ordered = sorted(tuple(b) for b in blocks.values())
    return [(b, restrict(code, b)) for b in ordered]


def apply_permutation(code: Code, sigma: Sequence[int]) -> Code:
    """Image of the code when coordinate i moves to sigma[i]."""
    n = code.n
    return span([permute_word(g, sigma, n) for g in code.basis], n)


def permute_word(w: int, sigma: Sequence[int], n: int) -> int:
    v = 0
    for i in range(n):
        if w & bit(i, n):
            v |= bit(sigma[i], n)
    return v


def _column_profiles(code: Code) -> list[tuple[int, ...]]:
    n = code.n
    prof = [[0] * (n + 1) for _ in range(n)]
    for w in code.words:
        wt = weight(w)
        for i in support(w, n):
            prof[i][wt] += 1
    return [tuple(p) for p in prof]


def permutation_equivalent(c1: Code, c2: Code, max_n: int = 16) -> tuple[int, ...] | None:
    """A permutation sigma with c1^sigma = c2, or None.

    Backtracking over coordinate images, pruned by per-column weight
    profiles and by equality of the partial projections.
    """
    if c1.n != c2.n:
        raise LengthMismatch(f"lengths {c1.n} and {c2.n} differ")
    n = c1.n
    if n > max_n:
        raise SearchBoundExceeded(f"permutation search refused for n = {n} > {max_n}")
    if len(c1) != len(c2) or c1.weight_distribution() != c2.weight_distribution():
        return None
    p1, p2 = _column_profiles(c1), _column_profiles(c2)
    if sorted(p1) != sorted(p2):
        return None
    candidates = {i: [j for j in range(n) if p2[j] == p1[i]] for i in range(n)}
    order = sorted(range(n), key=lambda i: (len(candidates[i]), i))
    w1, w2 = list(c1.words), list(c2.words)
    sigma = [None] * n
    used = [False] * n

    def extend(depth, proj1, proj2):
        if depth == n:
            return True
        i = order[depth]
        mask1 = bit(i, n)
        nxt1 = [(v << 1) | (1 if w & mask1 else 0) for v, w in zip(proj1, w1)]
        s1 = sorted(nxt1)
        for j in candidates[i]:
            if used[j]:
                continue
            mask2 = bit(j, n)
            nxt2 = [(v << 1) | (1 if w & mask2 else 0) for v, w in zip(proj2, w2)]
            if sorted(nxt2) != s1:
                continue
            sigma[i] = j
            used[j] = True
            if extend(depth + 1, nxt1, nxt2):
                return True
            used[j] = False
        sigma[i] = None
        return False

    if extend(0, [0] * len(w1), [0] * len(w2)):
        return tuple(sigma)
    return None
