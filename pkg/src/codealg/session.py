"""Report pipelines behind the command-line subcommands.

Every function returns ``(lines, ok)`` or a small result object; nothing
here prints. Output ordering is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import gf2code as g
from .algebra import CodeAlgebra, check_axis_hypothesis, check_regularity
from .axes import describe, fusion_conformance, observed_fusion_law
from .errors import HypothesisViolated
from .grading import (
    CHI_LAMBDA,
    CHI_MINUS,
    CHI_PLUS,
    Z2,
    Z2xZ2,
    build_axes,
    classify_Z2,
    find_gradings,
    z2z2_grading,
    z2z2_precheck,
)
from .miyamoto import (
    DEFAULT_CAP,
    Automorphism,
    MiyGroup,
    axes_orbits,
    case_1a_tau_closed_form,
    case_1b_tau_closed_form,
    commute,
    conjugation_covariance,
    direct_product_probe,
    is_s3,
    miyamoto,
    miyamoto_group,
    semidirect_probe,
    standard_tau_closed_form,
    z2_tau,
    z2z2_tau_closed_form,
)


def _yes(flag) -> str:
    return "yes" if flag else "no"


def hypothesis_lines(A: CodeAlgebra, S) -> tuple[list[str], bool]:
    reg = check_regularity(A, S)
    hyp = check_axis_hypothesis(A, S)
    return reg.lines() + hyp.lines(), reg.ok and hyp.ok


def _require_axes(A: CodeAlgebra, S):
    hyp = check_axis_hypothesis(A, S)
    if not hyp.ok:
        raise HypothesisViolated("Axis Hypothesis fails for S", hyp)
    return build_axes(A, S)


def axes_lines(A: CodeAlgebra, S) -> tuple[list[str], bool]:
    out = []
    ok = True
    for ax in _require_axes(A, S):
        out += describe(ax)
        basis = ax.parts_form_basis()
        ok &= basis
        out.append(f"  parts form a basis: {_yes(basis)}")
    return out, ok


def fusion_lines(A: CodeAlgebra, S) -> tuple[list[str], bool]:
    out = []
    ok = True
    for ax in _require_axes(A, S):
        obs, pred, bad = fusion_conformance(ax)
        _, _, literal = fusion_conformance(ax, literal=True)
        out.append(f"fusion law of {ax.name()}")
        out += ["  " + r for r in obs.rows()]
        out.append(f"  contained in predicted law: {_yes(not bad)}")
        for x, y, extra in bad:
            out.append(f"    {x} * {y} also hits {{{','.join(str(z) for z in sorted(extra))}}}")
        for x, y, extra in literal:
            if (x, y, extra) not in bad:
                out.append(f"  note: {x} * {y} = {{{','.join(str(z) for z in sorted(extra))}}} (printed table has the empty set)")
        ok &= not bad
    return out, ok


def grade_lines(A: CodeAlgebra, S) -> tuple[list[str], bool]:
    cls = classify_Z2(A, S)
    out = [cls.summary()]
    out += cls.report.lines()
    for ax in cls.axes:
        law = observed_fusion_law(ax)
        for T in (Z2, Z2xZ2):
            found = [gr for gr in find_gradings(law, T) if not gr.trivial]
            out.append(f"{ax.name()}: {len(found)} nontrivial {T} gradings")
            for gr in found:
                out.append(f"  {gr.describe()}")
    pre = z2z2_precheck(A, S)
    out += pre.lines()
    return out, cls.report.ok


# ---------------------------------------------------------------------------
# Miyamoto groups


def action_summary(A: CodeAlgebra, M: Automorphism) -> str:
    """Short description of a matrix: negated, moved and mixed basis vectors."""
    neg, moved, mixed = [], [], []
    for i, col in enumerate(M.cols):
        items = list(col.items())
        name = A.basis_name(i)
        if len(items) == 1:
            j, x = items[0]
            if j == i and x == 1:
                continue
            if j == i and x == -1:
                neg.append(name)
                continue
            if x == 1 or x == -1:
                moved.append(f"{name}->{'-' if x == -1 else ''}{A.basis_name(j)}")
                continue
        mixed.append(name)
    parts = []
    if neg:
        parts.append("negates " + ",".join(neg))
    if moved:
        parts.append("moves " + ",".join(moved))
    if mixed:
        parts.append("mixes " + ",".join(mixed))
    return "; ".join(parts) or "identity"


def _group_name(H: MiyGroup) -> str:
    rank = H.elementary_abelian_rank()
    if H.order == 1:
        return "1"
    if rank is not None:
        return f"2^{rank}"
    if is_s3(H):
        return "S₃"
    return f"[{H.order}]"


@dataclass
class GroupResult:
    grading: str
    case: str
    generators: dict
    group: MiyGroup
    structure: str
    probes: dict = field(default_factory=dict)
    closed_forms: bool = True
    orbits: object = None
    covariance: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def ok(self) -> bool:
        return self.closed_forms and all(self.probes.values()) and not self.covariance


def z2_group(A: CodeAlgebra, S, cap: int = DEFAULT_CAP) -> GroupResult:
    cls = classify_Z2(A, S)
    if not cls.graded:
        raise HypothesisViolated("axes are not Z2-graded", cls.report)
    gens, closed = {}, True
    for ax in cls.axes:
        tau = z2_tau(ax, cls.gradings[(ax.alpha, ax.sign)])
        if cls.case == "1a":
            ref = case_1a_tau_closed_form(A, ax.alpha, ax.sign)
        elif cls.case == "1b":
            ref = case_1b_tau_closed_form(A, ax.alpha)
        else:
            ref = standard_tau_closed_form(A, ax.alpha, cls.d_minus_weights)
        closed &= tau == ref
        gens[(ax.name(),)] = tau
    G = miyamoto_group(gens.values(), cap)
    probes = {}
    if cls.case == "1a":
        blocks = [G.subgroup([gens[(f"e[{A.code.fmt(a)},{s}]",)] for s in "+-"]) for a in S]
        if len(blocks) == 2:
            probes = {f"block {k} is S3": is_s3(H) for k, H in enumerate(blocks)}
            probes.update(direct_product_probe(G, *blocks))
        name = "×".join(_group_name(H) for H in blocks)
    else:
        rank = G.elementary_abelian_rank()
        probes["elementary abelian"] = rank is not None
        probes["tau(e+) = tau(e-)"] = all(
            gens[(f"e[{A.code.fmt(a)},+]",)] == gens[(f"e[{A.code.fmt(a)},-]",)] for a in S
        )
        probes["order at most 2^|S|"] = G.order <= 2 ** len(S)
        name = _group_name(G)
    res = GroupResult(Z2, cls.summary(), gens, G, name, probes, closed)
    res.orbits = axes_orbits(G, cls.axes)
    return res


def z2z2_group(A: CodeAlgebra, S, cap: int = DEFAULT_CAP) -> GroupResult:
    pre = z2z2_precheck(A, S)
    axes = _require_axes(A, S)
    gens, closed = {}, True
    for ax in axes:
        gr = z2z2_grading(ax)
        if gr.respects(observed_fusion_law(ax)):
            raise HypothesisViolated(f"Z2xZ2 assignment is not a grading for {ax.name()}", pre)
        for chi, tag in ((CHI_PLUS, "chi+"), (CHI_MINUS, "chi-"), (CHI_LAMBDA, "chi_lambda")):
            tau = miyamoto(ax, gr, chi)
            if chi == CHI_PLUS:
                closed &= tau == z2z2_tau_closed_form(A, ax.alpha, 1)
            elif chi == CHI_MINUS:
                closed &= tau == z2z2_tau_closed_form(A, ax.alpha, -1)
            gens[(ax.name(), tag)] = tau
    G = miyamoto_group(gens.values(), cap)
    probes = {}
    pieces = []
    comps = [frozenset(b) for b, _ in g.decompose_direct_sum(A.code)]
    groups = []
    for k, block in enumerate(comps):
        mine = [ax for ax in axes if set(g.support(ax.alpha, A.n)) <= block]
        if not mine:
            continue
        H = G.subgroup([gens[(ax.name(), t)] for ax in mine for t in ("chi+", "chi-", "chi_lambda")])
        N = G.subgroup([gens[(ax.name(), "chi_lambda")] for ax in mine])
        K = G.subgroup([gens[(ax.name(), "chi+")] for ax in mine])
        for key, val in semidirect_probe(H, N, K).items():
            probes[f"component {k}: {key}"] = val
        pieces.append(f"{_group_name(N)}:{_group_name(K)}")
        groups.append(H)
    if len(groups) > 1:
        total = 1
        for H in groups:
            total *= H.order
        probes["components commute"] = all(
            commute(groups[i], groups[j]) for i in range(len(groups)) for j in range(i + 1, len(groups))
        )
        probes["component orders multiply"] = total == G.order
    probes["conjugation covariance"] = True
    res = GroupResult(Z2xZ2, "Z2xZ2 grading", gens, G, "×".join(f"({p})" if len(pieces) > 1 else p for p in pieces), probes, closed)
    res.covariance = conjugation_covariance(axes, z2z2_grading)
    probes["conjugation covariance"] = not res.covariance
    res.orbits = axes_orbits(G, axes)
    res.extra["precheck"] = "pass" if pre.ok else "fail"
    return res


def group_lines(A: CodeAlgebra, S, cap: int = DEFAULT_CAP, grading: str = "auto") -> tuple[list[str], bool]:
    if grading == "auto":
        grading = "z2z2" if z2z2_precheck(A, S).ok else "z2"
    res = z2z2_group(A, S, cap) if grading == "z2z2" else z2_group(A, S, cap)
    out = [f"Miyamoto group, {res.grading} grading ({res.case})", "generators:"]
    for key, M in res.generators.items():
        out.append(f"  tau[{', '.join(key)}]: {action_summary(A, M)}")
    verdict = "consistent with" if res.ok else "INCONSISTENT with"
    out.append(f"order {res.order}, probes {verdict} {res.structure}")
    out.append("probes:")
    for key, val in res.probes.items():
        out.append(f"  {key}: {_yes(val)}")
    out.append(f"closed forms match: {_yes(res.closed_forms)}")
    for line in res.covariance[:5]:
        out.append(f"  {line}")
    out.append("orbits on X:")
    out += ["  " + line for line in res.orbits.lines()]
    out.append(f"X closed: {_yes(res.orbits.closed)}")
    out.append("")
    out.append("[values]")
    vals = {
        "grading": res.grading,
        "order": res.order,
        "structure": res.structure,
        "generators": len(res.generators),
        "abelian": _yes(res.group.is_abelian()),
        "exponent": res.group.exponent,
        "closed_forms": _yes(res.closed_forms),
        "probes_ok": _yes(res.ok),
        "orbits": len(res.orbits.orbits),
        "x_closed": _yes(res.orbits.closed),
    }
    vals.update(res.extra)
    out += [f"{k} = {v}" for k, v in vals.items()]
    return out, res.ok


# ---------------------------------------------------------------------------
# recovery


def recover_lines(B, reference: g.Code | None = None) -> tuple[list[str], bool]:
    from .recovery import pair_axes, recover

    chk = B.check()
    out = chk.lines()
    if not chk.ok:
        return out, False
    pairs = pair_axes(B)
    rec = recover(B, pairs)
    out.append("pairs: " + " ".join(f"({i},{j})" for i, j in rec.pairs))
    out += rec.report.lines()
    out.append(f"recovered code: {rec.code}")
    out.append("codewords: " + ",".join(rec.code.fmt(w) for w in rec.code.words))
    ok = True
    if reference is not None:
        perm = g.permutation_equivalent(rec.code, reference)
        ok = perm is not None
        out.append(f"permutation-equivalent: {_yes(ok)}")
        if ok:
            out.append("witness: " + " ".join(str(i) for i in perm))
    return out, ok and rec.report.ok
