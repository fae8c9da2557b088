"""Gradings of fusion laws and the Z2 classification of code algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import gf2code as g
from .algebra import CodeAlgebra, check_axis_hypothesis
from .axes import (
    LAMBDA_HALF_PART,
    LAMBDA_PART,
    ONE_PART,
    Axis,
    FusionLaw,
    PartLabel,
    observed_fusion_law,
    small_idempotent,
)
from .errors import EvaluationMapsDiffer, HypothesisViolated
from .report import Report

Z2 = "Z2"
Z2xZ2 = "Z2xZ2"

_ELEMENTS = {Z2: ((0,), (1,)), Z2xZ2: ((0, 0), (1, 0), (0, 1), (1, 1))}


def group_elements(T: str):
    return _ELEMENTS[T]


def identity(T: str):
    return _ELEMENTS[T][0]


def add(s, t):
    return tuple(x ^ y for x, y in zip(s, t))


def _automorphisms(T: str):
    """Aut(T) as maps on element tuples (GL(k,2) acting on bit columns)."""
    k = len(identity(T))
    out = []
    for cols in itertools.product(_ELEMENTS[T][1:], repeat=k):
        img = {}
        for s in _ELEMENTS[T]:
            v = identity(T)
            for bitv, col in zip(s, cols):
                if bitv:
                    v = add(v, col)
            img[s] = v
        if len(set(img.values())) == len(img):
            out.append(img)
    return out


def character(T: str, t) -> dict:
    """chi_t. For Z2 the sign character; for Z2xZ2, chi_t(s) = 1 iff s in {0, t}.

    t = identity gives the trivial character in both cases.
    """
    t = tuple(t)
    if t == identity(T):
        return {s: 1 for s in _ELEMENTS[T]}
    if T == Z2:
        return {s: (-1 if s[0] and t[0] else 1) for s in _ELEMENTS[Z2]}
    return {s: (1 if s == identity(T) or s == t else -1) for s in _ELEMENTS[T]}


CHI_PLUS = (1, 0)
CHI_MINUS = (0, 1)
CHI_LAMBDA = (1, 1)


@dataclass(frozen=True)
class Grading:
    group: str
    assignment: dict

    def __post_init__(self):
        object.__setattr__(self, "assignment", dict(sorted(self.assignment.items())))

    @property
    def trivial(self) -> bool:
        e = identity(self.group)
        return all(v == e for v in self.assignment.values())

    def part(self, s) -> list[PartLabel]:
        return [x for x, v in self.assignment.items() if v == s]

    def key(self):
        return (self.group, tuple(self.assignment.items()))

    def __hash__(self):
        return hash(self.key())

    def __eq__(self, other):
        return isinstance(other, Grading) and self.key() == other.key()

    def respects(self, law: FusionLaw) -> list:
        """Violating (x, y, z) triples; empty when the grading is valid."""
        bad = []
        a = self.assignment
        for i, x in enumerate(law.labels):
            for y in law.labels[i:]:
                st = add(a[x], a[y])
                for z in law(x, y):
                    if a[z] != st:
                        bad.append((x, y, z))
        return bad

    def describe(self) -> str:
        cells = []
        for s in group_elements(self.group):
            labs = self.part(s)
            if labs:
                name = "".join(map(str, s))
                cells.append(f"{name}: {{{', '.join(str(x) for x in labs)}}}")
        tag = " (trivial)" if self.trivial else ""
        return f"{self.group} " + "; ".join(cells) + tag


def find_gradings(law: FusionLaw, T: str) -> list[Grading]:
    """All T-gradings of the law up to Aut(T), unit in the identity component."""
    labels = list(law.labels)
    if ONE_PART in labels:
        labels.remove(ONE_PART)
        labels.insert(0, ONE_PART)
    elems = group_elements(T)
    e = identity(T)
    pos = {x: k for k, x in enumerate(labels)}

    # entries to check once both factors are assigned, keyed by the later label
    checks = [[] for _ in labels]
    for i, x in enumerate(law.labels):
        for y in law.labels[i:]:
            zs = law(x, y)
            if zs:
                checks[max(pos[x], pos[y])].append((x, y, zs))

    found = set()
    assign: dict = {}

    def ok(k):
        for x, y, zs in checks[k]:
            st = add(assign[x], assign[y])
            for z in zs:
                if pos[z] <= k and assign[z] != st:
                    return False
        # entries whose product label was assigned late
        for k2 in range(k + 1):
            for x, y, zs in checks[k2]:
                if labels[k] in zs and assign[labels[k]] != add(assign[x], assign[y]):
                    return False
        return True

    def rec(k):
        if k == len(labels):
            found.add(tuple(assign[x] for x in labels))
            return
        options = (e,) if labels[k] == ONE_PART else elems
        for s in options:
            assign[labels[k]] = s
            if ok(k):
                rec(k + 1)
        del assign[labels[k]]

    if labels:
        rec(0)
    autos = _automorphisms(T)
    canon = set()
    for vals in found:
        canon.add(min(tuple(f[v] for v in vals) for f in autos))
    out = [Grading(T, dict(zip(labels, vals))) for vals in sorted(canon)]
    out.sort(key=lambda gr: (not gr.trivial, tuple(gr.assignment.values())))
    return out


# ---------------------------------------------------------------------------
# standard gradings


def standard_grading(axis: Axis, d_minus_weights) -> Grading:
    """Z2 grading negating the p-parts with |alpha & beta| in wt(D_-)."""
    neg = set(d_minus_weights)
    asg = {}
    for x in axis.labels:
        asg[x] = (1,) if x.kind == "p" and x.p[0] in neg else (0,)
    return Grading(Z2, asg)


def case_1a_grading(axis: Axis) -> Grading:
    return Grading(Z2, {x: ((1,) if x == LAMBDA_HALF_PART else (0,)) for x in axis.labels})


def case_1b_grading(axis: Axis) -> Grading:
    return Grading(Z2, {x: ((1,) if x.kind == "p" else (0,)) for x in axis.labels})


def z2z2_grading(axis: Axis) -> Grading:
    """p_1^+ -> (1,0), p_1^- -> (0,1), lambda -> (1,1), everything else trivial.

    For the minus axis the p_1 labels trade places so that both axes of a
    pair induce the same automorphisms.
    """
    asg = {}
    for x in axis.labels:
        if x == LAMBDA_PART:
            asg[x] = (1, 1)
        elif x.kind == "p" and x.p == (1, 1):
            asg[x] = (1, 0) if x.eps * axis.sign > 0 else (0, 1)
        else:
            asg[x] = (0, 0)
    return Grading(Z2xZ2, asg)


# ---------------------------------------------------------------------------
# classification


def _even_weight(code: g.Code) -> bool:
    ew = g.even_weight_code(code.n)
    return code.n >= 2 and code.word_set == ew.word_set


def find_d_plus(D: g.Code) -> list[frozenset]:
    """Codimension-one subcodes of D containing 1 that are unions of weight sets."""
    ones = D.ones
    by_weight: dict[int, set] = {}
    for w in D.words:
        by_weight.setdefault(g.weight(w), set()).add(w)
    seen = set()
    out = []
    for y in range(1, 1 << D.n):
        ker = frozenset(w for w in D.words if g.weight(w & y) % 2 == 0)
        if 2 * len(ker) != len(D) or ker in seen:
            continue
        seen.add(ker)
        if ones not in ker:
            continue
        if all(ws <= ker or not (ws & ker) for ws in by_weight.values()):
            out.append(ker)
    return sorted(out, key=lambda s: sorted(s))


@dataclass
class Classification:
    case: str | None
    alpha_weight: int
    report: Report
    m: int | None = None
    r: int | None = None
    D: g.Code | None = None
    D_plus: frozenset | None = None
    gradings: dict = field(default_factory=dict)
    axes: list = field(default_factory=list)

    @property
    def graded(self) -> bool:
        return self.case is not None

    @property
    def d_minus_weights(self) -> set:
        if self.D is None or self.D_plus is None:
            return set()
        return {g.weight(w) for w in self.D.words if w not in self.D_plus}

    def summary(self) -> str:
        if self.case is None:
            return "not Z2-graded"
        if self.case in ("1a", "1b"):
            return f"case ({self.case}), n={self.report.values['n']}"
        D = self.D
        dp = "{" + ",".join(D.fmt(w) for w in sorted(self.D_plus)) + "}"
        if self.case == "2":
            return f"case (2), m={self.m}, r={self.r}, D_+ = {dp}"
        return f"case (3), |alpha|={self.alpha_weight}, D_+ = {dp}"


def _eval_signature(axis: Axis):
    return tuple((x, axis.eval[x]) for x in sorted(axis.eval))


def build_axes(A: CodeAlgebra, S) -> list[Axis]:
    return [small_idempotent(A, alpha, s) for alpha in S for s in (1, -1)]


def classify_Z2(A: CodeAlgebra, S) -> Classification:
    """Which case of the Z2 classification holds for the axes from S."""
    S = list(S)
    code = A.code
    n = code.n
    hyp = check_axis_hypothesis(A, S)
    if not hyp.ok:
        raise HypothesisViolated("Axis Hypothesis fails for S", hyp)
    axes = build_axes(A, S)
    sigs = {}
    for ax in axes:
        sigs.setdefault(_eval_signature(ax), []).append(ax)
    if len(sigs) > 1:
        cvals = {code.fmt(alpha): A.params.c(alpha) for alpha in S}
        raise EvaluationMapsDiffer("evaluation maps differ across S", cvals)

    rep = Report("Z2 classification")
    proj, _, dmin = g.is_projective(code)
    gen_ok = g.code_from_words(S, n).word_set == code.word_set
    rep.add("C projective", proj, f"dual minimum weight {dmin}")
    rep.add("S generates C", gen_ok)
    rep.values["n"] = n
    w = g.weight(S[0])
    alpha = S[0]
    case = None
    m = r = None
    D = g.project(code, alpha)
    d_plus = None

    if w == 1:
        full = len(code) == 1 << n
        if full and n == 2 and A.a == -1:
            case = "1a"
        elif full and n == 3:
            case = "1b"
        rep.add("|alpha| = 1 condition", case is not None, f"C full space: {full}, n = {n}, a = {A.a}")
    elif w == 2:
        comps = g.decompose_direct_sum(code)
        lengths = {len(b) for b, _ in comps}
        ok = all(_even_weight(c) for _, c in comps) and len(lengths) == 1 and min(lengths) >= 3
        rep.add("C sum of equal-length even-weight codes, m >= 3", ok, f"block lengths {sorted(len(b) for b, _ in comps)}")
        if ok:
            case = "2"
            m = lengths.pop()
            r = len(comps)
            d_plus = frozenset({0, D.ones})
    else:
        dproj, _, ddmin = g.is_projective(D)
        rep.add("D projective", dproj, f"dual minimum weight {ddmin}")
        rep.add("1 in D", D.has_ones)
        cands = find_d_plus(D) if dproj and D.has_ones else []
        rep.add("codimension-one D_+ of weight sets", bool(cands), f"{len(cands)} candidates")
        if cands:
            case = "3"
            d_plus = cands[0]
            rep.values["D_+ candidates"] = len(cands)

    cls = Classification(case, w, rep, m, r, D, d_plus, axes=axes)
    # cross-check against a direct search on the observed law
    for ax in axes:
        law = observed_fusion_law(ax)
        found = [gr for gr in find_gradings(law, Z2) if not gr.trivial]
        if case is None:
            predicted = None
        elif case == "1a":
            predicted = case_1a_grading(ax)
        elif case == "1b":
            predicted = case_1b_grading(ax)
        else:
            predicted = standard_grading(ax, cls.d_minus_weights)
        cls.gradings[(ax.alpha, ax.sign)] = predicted
        if predicted is None:
            agree = not found
            detail = f"search found {len(found)} nontrivial Z2 gradings"
        else:
            agree = predicted in found and not predicted.respects(law)
            detail = f"search found {len(found)} nontrivial Z2 gradings"
        rep.add(f"search agrees for {ax.name()}", agree, detail)
    return cls


def z2z2_precheck(A: CodeAlgebra, S) -> Report:
    """Extra parameter conditions enabling the Z2xZ2 grading in case (2)."""
    S = list(S)
    code = A.code
    fmt = code.fmt
    rep = Report("Z2xZ2 precheck")
    comps = g.decompose_direct_sum(code)
    lengths = sorted(len(b) for b, _ in comps)
    m = lengths[0] if lengths else 0
    r = len(comps)
    n = code.n
    struct = (
        all(_even_weight(c) for _, c in comps)
        and len(set(lengths)) == 1
        and all(g.weight(x) == 2 for x in S)
    )
    rep.add("case (2) structure", struct, f"block lengths {lengths}")
    rep.add("n >= 5", n >= 5, f"n = {n}")
    rep.add("m >= 3", m >= 3, f"m = {m}")
    rep.add("n = m*r", n == m * r, f"n = {n}, m = {m}, r = {r}; the stated hypothesis n = m^r gives {m ** r}")

    b_bad = c_bad = None
    for alpha in S:
        comp_a = code.complement(alpha)
        others = [x for x in code.star if x not in (alpha, comp_a)]
        for beta in g.partition_classes(code, alpha).get((1, 1), []):
            ab = alpha ^ beta
            if c_bad is None and A.params.c(beta) != A.params.c(ab):
                c_bad = (alpha, beta)
            skip = {beta, ab}
            if code.has_ones:
                skip |= {beta ^ code.ones, ab ^ code.ones}
            for gamma in others:
                if gamma in skip:
                    continue
                if A.params.b(beta, gamma) != A.params.b(ab, gamma):
                    b_bad = b_bad or (alpha, beta, gamma)
    if b_bad:
        alpha, beta, gamma = b_bad
        rep.add(
            "b(beta,gamma) = b(alpha+beta,gamma)",
            False,
            f"alpha={fmt(alpha)}, beta={fmt(beta)}, gamma={fmt(gamma)}",
        )
    else:
        rep.add("b(beta,gamma) = b(alpha+beta,gamma)", True)
    if c_bad:
        alpha, beta = c_bad
        rep.add("c(beta) = c(alpha+beta)", False, f"alpha={fmt(alpha)}, beta={fmt(beta)}")
    else:
        rep.add("c(beta) = c(alpha+beta)", True)
    rep.values["m"] = m
    rep.values["r"] = r
    return rep
