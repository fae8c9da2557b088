"""Acceptance criteria A1-A8, one verdict line each (see the terminal summary)."""

import random
import time
from fractions import Fraction

from codealg import gf2code as g
from codealg.algebra import StructureParams, build_algebra, check_axis_hypothesis
from codealg.axes import (
    LAMBDA_HALF_PART,
    LAMBDA_PART,
    ZERO_PART,
    P,
    eigenvalue_collisions,
    fusion_conformance,
    small_idempotent,
)
from codealg.elements import Element
from codealg.errors import FieldTooSmall, HypothesisViolated
from codealg.grading import classify_Z2
from codealg.miyamoto import is_s3
from codealg.recovery import (
    BlackBoxAlgebra,
    check_c_consistency,
    pair_axes,
    pair_product_closed_form,
    round_trip,
)
from codealg.scalar import ONE, parse_scalar
from codealg.session import z2_group, z2z2_group
from instances import case3, e1, even_weight, ew3x2, f2_2, f2_3, random_instance


def build_all(A, S):
    return [small_idempotent(A, alpha, s) for alpha in S for s in (1, -1)]


def test_a1_case_1a(criterion):
    t0 = time.perf_counter()
    A, S = f2_2()
    res = z2_group(A, S)
    tau = lambda a, s: res.generators[(f"e[{A.code.fmt(a)},{s}]",)]
    blocks = [res.group.subgroup([tau(a, "+"), tau(a, "-")]) for a in S]
    checks = {
        "order 36": res.order == 36,
        "blocks nonabelian of order 6": all(is_s3(H) for H in blocks),
        "probes S3xS3": res.ok and res.structure == "S₃×S₃",
        "tau+ tau- of order 3": all((tau(a, "+") * tau(a, "-")).order() == 3 for a in S),
        "orbit of e[10,+]": ["e[10,+]", "e[10,-]", "t1"] in res.orbits.orbits,
    }
    assert criterion("A1 case (1a), F_2^2", checks, time.perf_counter() - t0, 1.0)


def test_a2_case_1b(criterion):
    t0 = time.perf_counter()
    A, S = f2_3()
    res = z2_group(A, S)
    tau = lambda a, s="+": res.generators[(f"e[{A.code.fmt(a)},{s}]",)]
    x, y, z = S
    checks = {
        "order 4": res.order == 4,
        "elementary abelian": res.group.elementary_abelian_rank() == 2,
        "tau_i tau_j = tau_k": tau(x) * tau(y) == tau(z) and tau(y) * tau(z) == tau(x) and tau(x) * tau(z) == tau(y),
        "tau(e+) = tau(e-)": all(tau(a, "+") == tau(a, "-") for a in S),
    }
    assert criterion("A2 case (1b), F_2^3", checks, time.perf_counter() - t0, 1.0)


def test_a3_case_2(criterion):
    checks = {}
    worst = 0.0
    for m in (3, 4, 5):
        t0 = time.perf_counter()
        res = z2_group(*even_weight(m))
        want = 2 ** (m - 1) if m % 2 else 2 ** (m - 2)
        checks[f"m={m}: order {want}"] = res.order == want
        checks[f"m={m}: elementary abelian"] = res.group.elementary_abelian_rank() is not None
        checks[f"m={m}: closed forms"] = res.closed_forms
        elapsed = time.perf_counter() - t0
        checks[f"m={m}: under 5s"] = elapsed < 5
        worst = max(worst, elapsed)
    assert criterion("A3 case (2), even-weight(3,4,5)", checks, worst)


def _components(A, S, res):
    out = []
    for block, _ in g.decompose_direct_sum(A.code):
        mine = [a for a in S if set(g.support(a, A.n)) <= set(block)]
        names = [f"e[{A.code.fmt(a)},{s}]" for a in mine for s in "+-"]
        H = res.group.subgroup([res.generators[(nm, t)] for nm in names for t in ("chi+", "chi-", "chi_lambda")])
        N = res.group.subgroup([res.generators[(nm, "chi_lambda")] for nm in names])
        K = res.group.subgroup([res.generators[(nm, "chi+")] for nm in names])
        out.append((H, N, K))
    return out


def test_a4_z2z2(criterion):
    t0 = time.perf_counter()
    A, S = ew3x2()
    res = z2z2_group(A, S)
    comps = _components(A, S, res)
    checks = {
        "precheck passes": res.extra["precheck"] == "pass",
        "order 576": res.order == 576,
        "two components": len(comps) == 2,
        "components of order 24": all(H.order == 24 for H, _, _ in comps),
        "N of order 4, normal": all(N.order == 4 and H.is_normal(N) for H, N, _ in comps),
        "complement of order 6": all(K.order == 6 and len(N.intersection(K)) == 1 for H, N, K in comps),
        "conjugation covariance": not res.covariance,
        "closed forms": res.closed_forms,
    }
    B, T = even_weight(5)
    res5 = z2z2_group(B, T)
    checks["even-weight(5): order 1920"] = res5.order == 1920
    checks["even-weight(5): covariance"] = not res5.covariance
    assert criterion("A4 Z2xZ2, ew3+ew3 and ew5", checks, time.perf_counter() - t0, 120.0)


INSTANCES = {
    "F_2^2": f2_2,
    "F_2^3": f2_3,
    "ew3": lambda: even_weight(3),
    "ew4": lambda: even_weight(4),
    "ew5": lambda: even_weight(5),
    "ew3+ew3": ew3x2,
}


def test_a5_fusion(criterion):
    t0 = time.perf_counter()
    checks = {}
    for name, make in INSTANCES.items():
        A, S = make()
        contained = eigen = basis = nus = literal_cell = True
        for ax in build_all(A, S):
            _, _, bad = fusion_conformance(ax)
            contained &= not bad
            _, _, lit = fusion_conformance(ax, literal=True)
            has_cell = LAMBDA_PART in ax.labels and LAMBDA_HALF_PART in ax.labels and len(ax.parts[LAMBDA_PART]) > 0
            want_lit = [(LAMBDA_PART, LAMBDA_HALF_PART, frozenset({LAMBDA_PART}))] if has_cell else []
            literal_cell &= lit == want_lit
            for lab, vecs in ax.parts.items():
                for v in vecs:
                    eigen &= A.mul(ax.element, v) == v.scale(ax.eval[lab])
            basis &= ax.parts_form_basis()
            for x in ax.labels:
                if x.kind == "p":
                    nus &= ax.eval[x] != ax.eval[P(x.p, -x.eps)]
        checks[f"{name}: contained"] = contained
        checks[f"{name}: literal table misses only lambda*(lambda-1/2)"] = literal_cell
        checks[f"{name}: eigenvectors"] = eigen
        checks[f"{name}: parts basis"] = basis
        checks[f"{name}: nu+ != nu-"] = nus
    assert criterion("A5 fusion conformance", checks, time.perf_counter() - t0)


def test_a6_recovery(criterion):
    t0 = time.perf_counter()
    checks = {}
    rng = random.Random(20240601)
    count = 0
    for n in range(4, 11):
        for rep in range(3):
            A, S = random_instance(rng, max_n=n, min_n=n)
            X = [ax.element for ax in build_all(A, S)]
            rec, perm = round_trip(A, X, seed=rng.randrange(10**6))
            tag = f"[{A.code.n},{A.code.rank}]#{rep}"
            checks[f"{tag} equivalent"] = perm is not None
            closed = True
            for alpha in S:
                prod, form, lam_form = pair_product_closed_form(A, alpha)
                closed &= prod == form == lam_form
            checks[f"{tag} pair product closed form"] = closed
            lam = ONE / (A.a * 2 * g.weight(S[0]))
            if lam != Fraction(1, 2):
                B = BlackBoxAlgebra.from_algebra(A, X, A.d)
                checks[f"{tag} generic pairing"] = pair_axes(B, "generic") == [(2 * k, 2 * k + 1) for k in range(len(S))]
            count += 1
    checks["at least 20 instances"] = count >= 20
    assert criterion("A6 recovery round trip", checks, time.perf_counter() - t0)


def test_a7_properties(criterion):
    t0 = time.perf_counter()
    checks = {}
    rng = random.Random(7)
    graded = dict(INSTANCES, case3=case3, E1=e1)
    for name, make in graded.items():
        A, S = make()
        checks[f"{name}: commutative"] = A.is_commutative()
        basis = [Element({i: 1}) for i in range(A.dim)]
        k = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        bil = all(A.mul(u.scale(k) + u2, v) == A.mul(u, v).scale(k) + A.mul(u2, v)
                  for u in basis for u2 in basis for v in basis)
        checks[f"{name}: bilinear"] = bil
        axes = build_all(A, S)
        checks[f"{name}: axes idempotent"] = all(A.mul(x.element, x.element) == x.element for x in axes)
        res = z2_group(A, S)
        checks[f"{name}: automorphisms multiplicative"] = all(M.is_automorphism(A) for M in res.generators.values())
        if not res.case.startswith("case (1a)"):
            checks[f"{name}: tau(e+) = tau(e-)"] = res.probes["tau(e+) = tau(e-)"]
            checks[f"{name}: elementary abelian, order <= 2^|S|"] = (
                res.probes["elementary abelian"] and res.probes["order at most 2^|S|"]
            )
            checks[f"{name}: c-consistency"] = check_c_consistency(A, S).ok
    for name in ("ew3+ew3", "ew5"):
        A, S = graded[name]()
        res = z2z2_group(A, S)
        checks[f"{name}: Z2xZ2 automorphisms multiplicative"] = all(M.is_automorphism(A) for M in res.generators.values())
    assert criterion("A7 property suite", checks, time.perf_counter() - t0)


def test_a8_gates(criterion):
    t0 = time.perf_counter()
    checks = {}
    C3 = g.even_weight_code(3)
    names = lambda rep: {c.name for c in rep.failures()}
    for a, clause in (("1/4", "a != 1/(2|alpha|)"), ("1/6", "a != 1/(3|alpha|)")):
        A = build_algebra(C3, StructureParams.make(a=a, b="1/4", c=-2))
        checks[f"a = {a} rejected"] = clause in names(check_axis_hypothesis(A, [0b110]))
        try:
            small_idempotent(A, 0b110)
            checks[f"a = {a} raises"] = False
        except HypothesisViolated:
            checks[f"a = {a} raises"] = True
    A = build_algebra(g.full_space(3), StructureParams.make(a=-1, b=parse_scalar("1/4*sqrt(-1)"), c="-3/4", d=-1))
    checks["xi^2 = -1 rejected"] = "xi^2 != -1" in names(check_axis_hypothesis(A, [0b100]))
    A = build_algebra(C3, StructureParams.make(a="1/8", b="1/4", c=-1, d=1))
    checks["mu outside Q reported"] = "FieldTooSmall" in check_axis_hypothesis(A, [0b110]).clause("mu in field").detail
    try:
        small_idempotent(A, 0b110)
        checks["mu outside Q raises FieldTooSmall"] = False
    except FieldTooSmall:
        checks["mu outside Q raises FieldTooSmall"] = True
    A, _ = e1()
    ax = small_idempotent(A, 0b110)
    minus = P((1, 1), -1)
    checks["E1 nu- = 0"] = ax.eval[minus] == 0
    checks["E1 collision reported"] = (ZERO_PART, minus) in eigenvalue_collisions(ax)
    checks["E1 parts distinguishable"] = ax.parts_form_basis() and ax.components(ax.parts[minus][0]) == {minus}
    assert criterion("A8 hypothesis gates", checks, time.perf_counter() - t0)
