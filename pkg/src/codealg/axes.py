"""Small idempotents e_{alpha,+-}: parts, evaluation map and fusion law."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import gf2code as g
from .algebra import CodeAlgebra, check_axis_hypothesis, idempotent_constants, xi_value
from .elements import Element, linear_combination
from .errors import (
    DecompositionFailure,
    FieldTooSmall,
    HypothesisViolated,
    InternalInconsistency,
)
from .linalg import inverse, rank
from .scalar import HALF, ONE, ZERO, Scalar, solve_theta

_RANK = {"1": 0, "0": 1, "lambda": 2, "lambda-1/2": 3, "p": 4}
_NAMES = {"1": "1", "0": "0", "lambda": "λ", "lambda-1/2": "λ−½"}


@dataclass(frozen=True)
class PartLabel:
    kind: str
    p: tuple[int, int] | None = None
    eps: int = 0

    def sort_key(self):
        return (_RANK[self.kind], self.p or (), -self.eps)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        if self.kind == "p":
            return f"({self.p[0]},{self.p[1]}){'+' if self.eps > 0 else '-'}"
        return _NAMES[self.kind]

    def ascii(self):
        if self.kind == "p":
            return str(self)
        return {"1": "1", "0": "0", "lambda": "lambda", "lambda-1/2": "lambda-1/2"}[self.kind]


ONE_PART = PartLabel("1")
ZERO_PART = PartLabel("0")
LAMBDA_PART = PartLabel("lambda")
LAMBDA_HALF_PART = PartLabel("lambda-1/2")


def P(p, eps: int) -> PartLabel:
    return PartLabel("p", tuple(p), 1 if eps > 0 else -1)


@dataclass(frozen=True, eq=False)
class Axis:
    algebra: CodeAlgebra
    alpha: int
    sign: int
    lam: Scalar
    mu: Scalar
    element: Element
    parts: dict
    eval: dict
    xi: dict = field(default_factory=dict)

    @property
    def labels(self) -> list[PartLabel]:
        """Labels of the nonempty parts, in report order."""
        return sorted(x for x, vs in self.parts.items() if vs)

    def name(self) -> str:
        return f"e[{self.algebra.code.fmt(self.alpha)},{'+' if self.sign > 0 else '-'}]"

    @cached_property
    def _basis(self):
        cols = []
        owner = []
        for x in self.labels:
            for v in self.parts[x]:
                cols.append(v)
                owner.append(x)
        return cols, owner

    @cached_property
    def _coord_columns(self):
        """Columns of the inverse of the parts-basis matrix."""
        cols, _ = self._basis
        dim = self.algebra.dim
        if len(cols) != dim:
            raise DecompositionFailure(f"{len(cols)} part vectors for dimension {dim}")
        rows = [list(r) for r in zip(*(v.to_dense(dim) for v in cols))]
        try:
            inv = inverse(rows)
        except ValueError:
            raise DecompositionFailure("part vectors are linearly dependent") from None
        return [list(c) for c in zip(*inv)]

    def parts_form_basis(self) -> bool:
        cols, _ = self._basis
        dim = self.algebra.dim
        return len(cols) == dim and rank([v.to_dense(dim) for v in cols]) == dim

    def coordinates(self, v: Element) -> list[Scalar]:
        """Coordinates of v in the parts basis."""
        inv_cols = self._coord_columns
        out = [ZERO] * self.algebra.dim
        for i, x in v.items():
            col = inv_cols[i]
            for r, y in enumerate(col):
                if y:
                    out[r] = out[r] + x * y
        return out

    def decompose(self, v: Element) -> dict:
        """Projection of v onto each part, as Elements."""
        coords = self.coordinates(v)
        cols, owner = self._basis
        pieces: dict = {}
        for k, x in enumerate(coords):
            if x:
                pieces.setdefault(owner[k], []).append((x, cols[k]))
        return {lab: linear_combination(terms) for lab, terms in pieces.items()}

    def components(self, v: Element) -> set:
        coords = self.coordinates(v)
        _, owner = self._basis
        return {owner[k] for k, x in enumerate(coords) if x}


def _hypothesis_error(rep):
    fails = {c.name for c in rep.failures()}
    if fails and fails <= {"mu in field", "theta roots in field"}:
        raise FieldTooSmall("; ".join(c.detail for c in rep.failures()))
    raise HypothesisViolated(
        "Axis Hypothesis fails: " + "; ".join(f"{c.name} ({c.detail})" for c in rep.failures()),
        rep,
    )


def small_idempotent(A: CodeAlgebra, alpha: int, sign: int = 1) -> Axis:
    """e_{alpha,sign} = lambda t_alpha + sign mu e^alpha with its eigenvector parts."""
    rep = check_axis_hypothesis(A, [alpha])
    if not rep.ok:
        _hypothesis_error(rep)
    sign = 1 if sign > 0 else -1
    code = A.code
    n = code.n
    lam, mu = idempotent_constants(A, alpha)
    smu = mu * sign
    element = A.t(alpha).scale(lam) + A.e(alpha, smu)
    if A.mul(element, element) != element:
        raise InternalInconsistency(f"e[{code.fmt(alpha)}] is not idempotent")

    supp = g.support(alpha, n)
    comp = code.complement(alpha)
    zero_vecs = [A.toral(i) for i in range(n) if i not in supp]
    if comp is not None and comp in A.word_index:
        zero_vecs.append(A.e(comp))
    j = supp[0]
    c = A.params.c(alpha)
    parts = {
        ONE_PART: (element,),
        ZERO_PART: tuple(zero_vecs),
        LAMBDA_PART: tuple(A.toral(j) - A.toral(k) for k in supp[1:]),
        LAMBDA_HALF_PART: (A.t(alpha).scale(smu * c * 2) - A.e(alpha),),
    }
    evals = {ONE_PART: ONE, ZERO_PART: ZERO, LAMBDA_PART: lam, LAMBDA_HALF_PART: lam - HALF}
    xis = {}
    for p, betas in g.partition_classes(code, alpha).items():
        plus, minus = [], []
        nu = None
        for beta in betas:
            if beta > alpha ^ beta:
                continue
            xi = xi_value(A, alpha, beta, mu)
            roots = solve_theta(xi, A.d)
            xis[beta] = xi
            plus.append(A.e(beta, roots.theta_plus * sign) + A.e(alpha ^ beta))
            minus.append(A.e(beta, roots.theta_minus * sign) + A.e(alpha ^ beta))
            if nu is None:
                b = A.params.b(alpha, beta)
                quarter = Scalar(1) / 4
                nu = (quarter + mu * b * (roots.theta_plus + xi), quarter + mu * b * (roots.theta_minus + xi))
        parts[P(p, 1)] = tuple(plus)
        parts[P(p, -1)] = tuple(minus)
        evals[P(p, 1)], evals[P(p, -1)] = nu

    for lab, vecs in parts.items():
        for v in vecs:
            if A.mul(element, v) != v.scale(evals[lab]):
                raise InternalInconsistency(
                    f"{A.fmt(v)} is not a {evals[lab]}-eigenvector of e[{code.fmt(alpha)}] (part {lab})"
                )
    return Axis(A, alpha, sign, lam, mu, element, parts, evals, xis)


def parts(axis: Axis) -> dict:
    return {x: axis.parts[x] for x in sorted(axis.parts)}


def evaluation_map(axis: Axis) -> dict:
    return {x: axis.eval[x] for x in sorted(axis.eval)}


def eigenvalue_collisions(axis: Axis) -> list[tuple[PartLabel, PartLabel]]:
    """Pairs of distinct nonempty parts sharing an eigenvalue."""
    labs = axis.labels
    return [
        (x, y)
        for i, x in enumerate(labs)
        for y in labs[i + 1 :]
        if axis.eval[x] == axis.eval[y]
    ]


def is_injective(axis: Axis) -> bool:
    return not eigenvalue_collisions(axis)


def is_primitive(axis: Axis) -> bool:
    dim_one = sum(len(axis.parts[x]) for x in axis.labels if axis.eval[x] == 1)
    return dim_one == 1


# ---------------------------------------------------------------------------
# fusion laws


@dataclass(frozen=True)
class FusionLaw:
    labels: tuple
    table: dict

    def __call__(self, x, y) -> frozenset:
        return self.table.get((x, y), self.table.get((y, x), frozenset()))

    def violations(self, other: FusionLaw) -> list:
        """Entries of self not contained in the matching entry of other."""
        out = []
        for i, x in enumerate(self.labels):
            for y in self.labels[i:]:
                extra = self(x, y) - other(x, y)
                if extra:
                    out.append((x, y, extra))
        return out

    def is_symmetric(self) -> bool:
        return all(self(x, y) == self(y, x) for x in self.labels for y in self.labels)

    def unit_ok(self) -> bool:
        return all(self(ONE_PART, x) <= {x} for x in self.labels)

    def rows(self) -> list[str]:
        out = []
        for x in self.labels:
            cells = []
            for y in self.labels:
                entry = sorted(self(x, y))
                cells.append("{" + ",".join(str(z) for z in entry) + "}")
            out.append(f"{str(x):>8} | " + " ".join(cells))
        return out


def observed_fusion_law(axis: Axis) -> FusionLaw:
    """Which parts receive products of each pair of parts, computed exactly."""
    A = axis.algebra
    labs = axis.labels
    table = {}
    for i, x in enumerate(labs):
        for y in labs[i:]:
            hit = set()
            for u in axis.parts[x]:
                for v in axis.parts[y]:
                    prod = A.mul(u, v)
                    if prod:
                        hit |= axis.components(prod)
            table[(x, y)] = frozenset(hit)
    return FusionLaw(tuple(labs), table)


def n_set(axis: Axis, p, q) -> frozenset:
    """N(p,q): the partition labels reachable as p(beta+gamma)."""
    code = axis.algebra.code
    alpha = axis.alpha
    classes = g.partition_classes(code, alpha)
    out = set()
    for beta in classes.get(p, ()):
        excl = {beta, alpha ^ beta}
        comp = code.complement(beta)
        if comp is not None:
            excl |= {comp, alpha ^ comp}
        for gamma in classes.get(q, ()):
            if gamma in excl:
                continue
            r = g.weight_partition(alpha, beta ^ gamma)
            out |= {P(r, 1), P(r, -1)}
    return frozenset(out)


def predicted_fusion_law(axis: Axis, literal: bool = False) -> FusionLaw:
    """The generic small-idempotent law, restricted to the nonempty parts.

    The lambda * (lambda - 1/2) entry is {lambda}: t_alpha acts as the
    identity on t_j - t_k. ``literal=True`` leaves that entry empty, as the
    commonly printed table does.
    """
    labs = axis.labels
    present = set(labs)
    base = {ONE_PART, ZERO_PART, LAMBDA_PART, LAMBDA_HALF_PART}

    def entry(x, y):
        kinds = {x.kind, y.kind}
        if x.kind == "1":
            return {y} if y.kind != "0" else set()
        if y.kind == "1":
            return {x} if x.kind != "0" else set()
        if x.kind == "p" and y.kind == "p":
            out = set(n_set(axis, x.p, y.p))
            if x.p == y.p:
                out |= base
            return out
        if "p" in kinds:
            pl = x if x.kind == "p" else y
            other = y if pl is x else x
            if other.kind == "0":
                return {pl}
            return {P(pl.p, 1), P(pl.p, -1)}
        if x == y == ZERO_PART:
            return {ZERO_PART}
        if x == y == LAMBDA_PART:
            return {ONE_PART, LAMBDA_PART, LAMBDA_HALF_PART}
        if x == y == LAMBDA_HALF_PART:
            return {ONE_PART, LAMBDA_HALF_PART}
        if kinds == {"lambda", "lambda-1/2"} and not literal:
            return {LAMBDA_PART}
        return set()

    table = {}
    for i, x in enumerate(labs):
        for y in labs[i:]:
            table[(x, y)] = frozenset(entry(x, y) & present)
    return FusionLaw(tuple(labs), table)


def fusion_conformance(axis: Axis, literal: bool = False):
    """(observed law, predicted law, violations of observed within predicted)."""
    obs = observed_fusion_law(axis)
    pred = predicted_fusion_law(axis, literal)
    return obs, pred, obs.violations(pred)


def describe(axis: Axis) -> list[str]:
    A = axis.algebra
    out = [
        f"axis {axis.name()} = {A.fmt(axis.element)}",
        f"  lambda = {axis.lam}, mu = {axis.mu * axis.sign}",
    ]
    for x in sorted(axis.parts):
        vecs = axis.parts[x]
        body = "; ".join(A.fmt(v) for v in vecs) if vecs else "(empty)"
        out.append(f"  part {x} [phi = {axis.eval[x]}]: {body}")
    coll = eigenvalue_collisions(axis)
    out.append(f"  phi injective: {'yes' if not coll else 'no'}")
    for x, y in coll:
        out.append(f"    shared eigenvalue {axis.eval[x]}: {x} and {y}")
    out.append(f"  primitive: {'yes' if is_primitive(axis) else 'no'}")
    return out
