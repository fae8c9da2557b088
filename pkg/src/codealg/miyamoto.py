"""Miyamoto automorphisms, the groups they generate, and axis orbits."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from . import gf2code as g
from .algebra import CodeAlgebra, idempotent_constants
from .axes import Axis, small_idempotent
from .elements import Element, TableAlgebra, linear_combination
from .errors import ClosureBudgetExceeded, NotAnAutomorphism
from .grading import CHI_LAMBDA, Grading, character
from .scalar import ONE

DEFAULT_CAP = 10**6


class Automorphism:
    """A linear map stored by the images of the basis vectors."""

    __slots__ = ("cols", "dim", "_key", "name")

    def __init__(self, cols, name: str = ""):
        self.cols = tuple(cols)
        self.dim = len(self.cols)
        self._key = None
        self.name = name

    @classmethod
    def identity(cls, dim: int) -> Automorphism:
        return cls([Element.basis(i) for i in range(dim)], "1")

    def __call__(self, v: Element) -> Element:
        return linear_combination((x, self.cols[i]) for i, x in v.items())

    def __mul__(self, other: Automorphism) -> Automorphism:
        """Composition: (self * other)(v) = self(other(v))."""
        return Automorphism([self(c) for c in other.cols])

    @property
    def key(self):
        if self._key is None:
            self._key = tuple(c.key for c in self.cols)
        return self._key

    def sort_key(self):
        return tuple(tuple((i, x.sort_key()) for i, x in c.key) for c in self.cols)

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def is_identity(self) -> bool:
        return all(c.key == ((i, ONE),) for i, c in enumerate(self.cols))

    def order(self, bound: int = 10**4) -> int:
        x, k = self, 1
        while not x.is_identity():
            x = self * x
            k += 1
            if k > bound:
                raise ClosureBudgetExceeded(f"element order exceeds {bound}")
        return k

    def power(self, k: int) -> Automorphism:
        out = Automorphism.identity(self.dim)
        for _ in range(k):
            out = self * out
        return out

    def inverse(self) -> Automorphism:
        return self.power(self.order() - 1)

    def failures(self, A: TableAlgebra, limit: int = 1) -> list[tuple[int, int]]:
        """Basis pairs (i, j) with M(b_i b_j) != M(b_i) M(b_j)."""
        bad = []
        for i in range(self.dim):
            for j in range(i, self.dim):
                if self(A.product(i, j)) != A.mul(self.cols[i], self.cols[j]):
                    bad.append((i, j))
                    if len(bad) >= limit:
                        return bad
        return bad

    def is_automorphism(self, A: TableAlgebra) -> bool:
        return not self.failures(A)

    def block(self, idx) -> list[list]:
        """Dense submatrix on the given basis indices (column convention)."""
        return [[self.cols[j][i] for j in idx] for i in idx]

    def __repr__(self):
        return f"Automorphism({self.name or '?'}, dim={self.dim})"


def miyamoto(axis: Axis, grading: Grading, chi) -> Automorphism:
    """tau_a(chi): scale the part graded by s by chi(s).

    ``chi`` is either a dict on group elements or a group element t naming
    the character chi_t.
    """
    if not isinstance(chi, dict):
        chi = character(grading.group, chi)
    A = axis.algebra
    cols, owner = axis._basis
    scale = [chi[grading.assignment[lab]] for lab in owner]
    images = []
    for i in range(A.dim):
        coords = axis.coordinates(Element.basis(i))
        images.append(linear_combination((x * scale[k], cols[k]) for k, x in enumerate(coords) if x))
    tag = ",".join(str(v) for v in chi.values())
    M = Automorphism(images, f"tau[{axis.name()}]({tag})")
    bad = M.failures(A)
    if bad:
        i, j = bad[0]
        raise NotAnAutomorphism(
            f"{M.name} fails on {A.basis_name(i)} * {A.basis_name(j)}"
        )
    return M


def z2_tau(axis: Axis, grading: Grading) -> Automorphism:
    return miyamoto(axis, grading, (1,))


def _lam_mu(A, alpha):
    return idempotent_constants(A, alpha)


def standard_tau_closed_form(A: CodeAlgebra, alpha: int, d_minus_weights) -> Automorphism:
    """t_i fixed; e^beta negated iff |alpha & beta| lies in wt(D_-)."""
    neg = set(d_minus_weights)
    comp = A.code.complement(alpha)
    cols = [Element.basis(i) for i in range(A.n)]
    for beta in A.words:
        k = g.weight(alpha & beta)
        flip = beta not in (alpha, comp) and k in neg
        cols.append(Element.basis(A.word_index[beta], -1 if flip else 1))
    return Automorphism(cols, f"tau[{A.code.fmt(alpha)}]")


def case_1b_tau_closed_form(A: CodeAlgebra, alpha: int) -> Automorphism:
    comp = A.code.complement(alpha)
    cols = [Element.basis(i) for i in range(A.n)]
    for beta in A.words:
        cols.append(Element.basis(A.word_index[beta], 1 if beta in (alpha, comp) else -1))
    return Automorphism(cols, f"tau[{A.code.fmt(alpha)}]")


def case_1a_tau_closed_form(A: CodeAlgebra, alpha: int, sign: int) -> Automorphism:
    """The 2x2 action on <t_i, e^alpha>; identity elsewhere.

    Column convention: t_i -> -1/2 t_i -+ mu e^alpha and
    e^alpha -> -+ 3/(4 mu) t_i + 1/2 e^alpha.
    """
    _, mu = _lam_mu(A, alpha)
    s = 1 if sign > 0 else -1
    (i,) = g.support(alpha, A.n)
    j = A.word_index[alpha]
    cols = [Element.basis(k) for k in range(A.dim)]
    half = ONE / 2
    cols[i] = Element({i: -half, j: -mu * s})
    cols[j] = Element({i: -(ONE * 3) / (mu * 4) * s, j: half})
    return Automorphism(cols, f"tau[{A.code.fmt(alpha)},{'+' if s > 0 else '-'}]")


def z2z2_tau_closed_form(A: CodeAlgebra, alpha: int, eps: int) -> Automorphism:
    """tau_alpha(chi_+-): swap the two support torals, e^beta -> +-e^(alpha+beta) on C_alpha(1)."""
    i, j = g.support(alpha, A.n)
    cols = [Element.basis(k) for k in range(A.dim)]
    cols[i], cols[j] = Element.basis(j), Element.basis(i)
    one_class = set(g.partition_classes(A.code, alpha).get((1, 1), ()))
    s = 1 if eps > 0 else -1
    for beta in one_class:
        cols[A.word_index[beta]] = Element.basis(A.word_index[alpha ^ beta], s)
    return Automorphism(cols, f"tau[{A.code.fmt(alpha)}](chi_{'+' if s > 0 else '-'})")


# ---------------------------------------------------------------------------
# groups


def closure(gens, cap: int = DEFAULT_CAP, dim: int | None = None) -> dict:
    """All products of the generators, keyed by matrix; BFS from the identity."""
    gens = list(gens)
    if dim is None:
        dim = gens[0].dim
    e = Automorphism.identity(dim)
    seen = {e.key: e}
    queue = deque([e])
    gens = sorted(set(gens), key=Automorphism.sort_key)
    while queue:
        x = queue.popleft()
        for s in gens:
            y = s * x
            if y.key not in seen:
                if len(seen) >= cap:
                    raise ClosureBudgetExceeded(f"group closure exceeded {cap} elements")
                seen[y.key] = y
                queue.append(y)
    return seen


@dataclass(eq=False)
class MiyGroup:
    generators: list
    dim: int
    cap: int = DEFAULT_CAP

    @cached_property
    def _elements(self) -> dict:
        return closure(self.generators, self.cap, self.dim)

    @property
    def elements(self) -> list[Automorphism]:
        return list(self._elements.values())

    @property
    def order(self) -> int:
        return len(self._elements)

    def __contains__(self, x: Automorphism) -> bool:
        return x.key in self._elements

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a * b == b * a for k, a in enumerate(gs) for b in gs[k + 1 :])

    @cached_property
    def exponent(self) -> int:
        out = 1
        for x in self.elements:
            out = math.lcm(out, x.order())
        return out

    def elementary_abelian_rank(self) -> int | None:
        if self.is_abelian() and self.exponent <= 2:
            return self.order.bit_length() - 1
        return None

    def subgroup(self, gens) -> MiyGroup:
        return MiyGroup(list(gens), self.dim, self.cap)

    def normal_closure(self, subset) -> MiyGroup:
        """Smallest normal subgroup containing the subset."""
        conj = []
        keys = set()
        for x in self.elements:
            xi = x.inverse()
            for s in subset:
                y = x * s * xi
                if y.key not in keys:
                    keys.add(y.key)
                    conj.append(y)
        return self.subgroup(conj or [Automorphism.identity(self.dim)])

    def is_normal(self, H: MiyGroup) -> bool:
        for s in self.generators:
            si = s.inverse()
            for h in H.generators:
                if (s * h * si) not in H:
                    return False
        return True

    def derived_subgroup(self) -> MiyGroup:
        gs = self.generators
        comms = []
        for a in gs:
            for b in gs:
                comms.append(a.inverse() * b.inverse() * a * b)
        return self.normal_closure(comms)

    def center(self) -> list[Automorphism]:
        return [x for x in self.elements if all(x * s == s * x for s in self.generators)]

    def intersection(self, H: MiyGroup) -> list[Automorphism]:
        return [x for x in H.elements if x in self]


def miyamoto_group(gens, cap: int = DEFAULT_CAP) -> MiyGroup:
    gens = list(gens)
    uniq = {}
    for x in gens:
        uniq.setdefault(x.key, x)
    return MiyGroup(sorted(uniq.values(), key=Automorphism.sort_key), gens[0].dim, cap)


def commute(H: MiyGroup, K: MiyGroup) -> bool:
    return all(a * b == b * a for a in H.generators for b in K.generators)


def direct_product_probe(G: MiyGroup, H: MiyGroup, K: MiyGroup) -> dict:
    """Facts showing G is the internal direct product of H and K."""
    inter = [x for x in H.elements if x in K]
    return {
        "normal H": G.is_normal(H),
        "normal K": G.is_normal(K),
        "commute": commute(H, K),
        "trivial intersection": len(inter) == 1,
        "orders multiply": H.order * K.order == G.order,
    }


def semidirect_probe(G: MiyGroup, N: MiyGroup, H: MiyGroup) -> dict:
    """Facts showing G = N : H with N normal and H a complement."""
    inter = [x for x in H.elements if x in N]
    return {
        "N normal": G.is_normal(N),
        "trivial intersection": len(inter) == 1,
        "orders multiply": N.order * H.order == G.order,
    }


def is_s3(H: MiyGroup) -> bool:
    return H.order == 6 and not H.is_abelian()


# ---------------------------------------------------------------------------
# orbits


def _vector_names(A: CodeAlgebra, axes) -> dict:
    names = {A.toral(i).key: f"t{i + 1}" for i in range(A.n)}
    for ax in axes:
        names[ax.element.key] = ax.name()
    return names


@dataclass
class Orbits:
    orbits: list
    closed: bool
    names: dict

    def lines(self) -> list[str]:
        return ["{" + ", ".join(o) + "}" for o in self.orbits]


def axes_orbits(group, X, algebra: CodeAlgebra | None = None) -> Orbits:
    """Orbits of the group on the axis elements, generator BFS."""
    gens = group.generators if isinstance(group, MiyGroup) else list(group)
    axes = list(X)
    A = algebra or axes[0].algebra
    names = _vector_names(A, axes)
    in_x = {ax.element.key for ax in axes}
    done = set()
    orbits = []
    closed = True
    for ax in axes:
        if ax.element.key in done:
            continue
        orbit = {ax.element.key: ax.element}
        queue = deque([ax.element])
        while queue:
            v = queue.popleft()
            for s in gens:
                w = s(v)
                if w.key not in orbit:
                    orbit[w.key] = w
                    queue.append(w)
        done |= set(orbit)
        if any(k not in in_x for k in orbit):
            closed = False
        labels = sorted(names.get(k) or A.fmt(v) for k, v in orbit.items())
        orbits.append(labels)
    return Orbits(orbits, closed, names)


def identify_axis(A: CodeAlgebra, v: Element) -> tuple[int, int] | None:
    """(alpha, sign) when v is a small idempotent lambda t_alpha +- mu e^alpha."""
    words = [A.words[i - A.n] for i, _ in v.items() if i >= A.n]
    if len(words) != 1:
        return None
    alpha = words[0]
    lam, mu = _lam_mu(A, alpha)
    if mu is None:
        return None
    for s in (1, -1):
        if A.t(alpha).scale(lam) + A.e(alpha, mu * s) == v:
            return alpha, s
    return None


def conjugation_covariance(axes, grading_for, chis=((1, 0), (0, 1), (1, 1))) -> list[str]:
    """Check tau_a(chi_l)^{tau_b(chi_t)} = tau_{a^{tau_b(chi_t)}}(chi_l); returns failures."""
    fails = []
    cache = {}

    def tau(ax, chi):
        k = (ax.alpha, ax.sign, chi)
        if k not in cache:
            cache[k] = miyamoto(ax, grading_for(ax), chi)
        return cache[k]

    for b in axes:
        for t in chis:
            tb = tau(b, t)
            tbi = tb.inverse()
            for a in axes:
                lhs = tb * tau(a, CHI_LAMBDA) * tbi
                img = tb(a.element)
                ident = identify_axis(a.algebra, img)
                if ident is None:
                    fails.append(f"image of {a.name()} under tau[{b.name()}]({t}) is not a small idempotent")
                    continue
                a2 = small_idempotent(a.algebra, *ident)
                if lhs != tau(a2, CHI_LAMBDA):
                    fails.append(f"covariance fails for a={a.name()}, b={b.name()}, t={t}")
    return fails
