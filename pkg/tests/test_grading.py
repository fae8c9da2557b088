import pytest

from codealg import gf2code as g
from codealg.algebra import StructureParams, build_algebra
from codealg.axes import LAMBDA_HALF_PART, LAMBDA_PART, P, observed_fusion_law, small_idempotent
from codealg.errors import EvaluationMapsDiffer, HypothesisViolated
from codealg.grading import (
    CHI_LAMBDA,
    CHI_MINUS,
    CHI_PLUS,
    Z2,
    Z2xZ2,
    Grading,
    character,
    classify_Z2,
    find_d_plus,
    find_gradings,
    identity,
    standard_grading,
    z2z2_grading,
    z2z2_precheck,
)
from instances import case3, e1, even_weight, ew3x2, f2_2, f2_3


def e1_law():
    A, _ = e1()
    ax = small_idempotent(A, 0b110)
    return ax, observed_fusion_law(ax)


def test_characters():
    assert character(Z2, (1,)) == {(0,): 1, (1,): -1}
    assert character(Z2, (0,)) == {(0,): 1, (1,): 1}
    chi = character(Z2xZ2, CHI_PLUS)
    assert chi == {(0, 0): 1, (1, 0): 1, (0, 1): -1, (1, 1): -1}
    assert set(character(Z2xZ2, CHI_MINUS).values()) == {1, -1}
    assert character(Z2xZ2, (0, 0)) == {s: 1 for s in chi}


def test_e1_z2_grading_found():
    ax, law = e1_law()
    found = find_gradings(law, Z2)
    want = Grading(Z2, {x: ((1,) if x.kind == "p" else (0,)) for x in ax.labels})
    assert want in found
    assert want == standard_grading(ax, {1})
    assert not want.respects(law)
    assert any(gr.trivial for gr in found)


def test_trivial_grading_always_valid():
    for make in (e1, f2_2, f2_3, lambda: even_weight(4)):
        A, S = make()
        ax = small_idempotent(A, S[0])
        law = observed_fusion_law(ax)
        triv = Grading(Z2, {x: identity(Z2) for x in ax.labels})
        assert triv.trivial and triv.respects(law) == []
        assert "(trivial)" in triv.describe()


def test_bad_grading_reports_witness():
    ax, law = e1_law()
    bad = Grading(Z2, {x: ((1,) if x == LAMBDA_PART else (0,)) for x in ax.labels})
    # lambda * lambda contains 1, which would need to sit in the odd part
    assert bad.respects(law)


def test_classify_examples():
    A, S = e1()
    cls = classify_Z2(A, S)
    assert cls.summary() == "case (2), m=3, r=1, D_+ = {00,11}"
    assert cls.report.ok and cls.D.word_set == g.full_space(2).word_set
    assert classify_Z2(*f2_3()).case == "1b"
    assert classify_Z2(*f2_2()).case == "1a"
    cls = classify_Z2(*even_weight(4))
    assert (cls.case, cls.m, cls.r) == ("2", 4, 1)
    cls = classify_Z2(*ew3x2())
    assert (cls.case, cls.m, cls.r) == ("2", 3, 2)


def test_classify_case3():
    A, S = case3()
    cls = classify_Z2(A, S)
    assert cls.case == "3" and cls.alpha_weight == 4
    assert cls.report.ok
    assert cls.D.has_ones and cls.D_plus in find_d_plus(cls.D)


def test_case_1a_grading_lives_on_lambda_half():
    A, S = f2_2()
    cls = classify_Z2(A, S)
    for gr in cls.gradings.values():
        assert gr.part((1,)) == [LAMBDA_HALF_PART]


def test_not_graded_f2_2_off_a():
    A = build_algebra(g.full_space(2), StructureParams.make(a="-1/2", c=-2))
    cls = classify_Z2(A, [0b10, 0b01])
    assert cls.case is None and cls.summary() == "not Z2-graded"
    # the direct search agrees: no nontrivial grading
    for c in cls.report.clauses:
        if c.name.startswith("search agrees"):
            assert c.ok


def test_evaluation_maps_differ():
    C = g.even_weight_code(3)
    A = build_algebra(C, StructureParams.make(a="1/8", b="1/4", c=-2, c_overrides={0b101: "-1/2"}))
    with pytest.raises(EvaluationMapsDiffer):
        classify_Z2(A, [0b110, 0b101])


def test_hypothesis_gate():
    C = g.even_weight_code(3)
    A = build_algebra(C, StructureParams.make(a="1/4", b="1/4", c=-2))
    with pytest.raises(HypothesisViolated):
        classify_Z2(A, [0b110, 0b101])


def test_find_d_plus():
    D = g.full_space(2)
    assert find_d_plus(D) == [frozenset({0, 0b11})]
    D4 = g.even_weight_code(4)
    # weight sets {0}, {6 words of weight 2}, {1111}: no index-2 union of them
    assert find_d_plus(D4) == []


def test_z2z2_precheck():
    assert z2z2_precheck(*ew3x2()).ok
    rep = z2z2_precheck(*e1())
    assert {c.name for c in rep.failures()} == {"n >= 5"}
    A = build_algebra(
        g.direct_sum(g.even_weight_code(3), g.even_weight_code(3)),
        StructureParams.make(a="1/8", b="1/4", c=-2, d=2, c_overrides={0b101000: -1}),
    )
    assert not z2z2_precheck(A, ew3x2()[1]).clause("c(beta) = c(alpha+beta)").ok


def test_z2z2_grading_found_by_search():
    A, S = ew3x2()
    for alpha in S:
        for s in (1, -1):
            ax = small_idempotent(A, alpha, s)
            law = observed_fusion_law(ax)
            gr = z2z2_grading(ax)
            assert gr.respects(law) == []
            assert gr.part(CHI_LAMBDA) == [LAMBDA_PART]
            assert gr.part(CHI_PLUS) == [P((1, 1), s)]
            found = find_gradings(law, Z2xZ2)
            nontrivial = [x for x in found if not x.trivial]
            assert nontrivial
            # the search works up to Aut(Z2xZ2); compare the partition shapes
            shapes = {frozenset(frozenset(x.part(t)) for t in ((1, 0), (0, 1), (1, 1))) for x in nontrivial}
            assert frozenset(frozenset(gr.part(t)) for t in ((1, 0), (0, 1), (1, 1))) in shapes
