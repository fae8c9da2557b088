import random

import pytest
from hypothesis import given, settings, strategies as st

from codealg import gf2code as g
from codealg.algebra import StructureParams, build_algebra
from codealg.axes import small_idempotent
from codealg.errors import (
    InconsistentStructure,
    PairingFailed,
    ParseError,
    ProjectivityRequired,
)
from codealg.recovery import (
    BlackBoxAlgebra,
    _matchings,
    _pairs_by_lambda,
    check_c_consistency,
    dump,
    lambda_subspace,
    load_dump,
    pair_axes,
    pair_product_closed_form,
    recover,
    round_trip,
    strip,
)
from instances import e1, even_weight, ew3x2, f2_2, f2_3, half4, random_instance


def axis_elements(A, S):
    return [small_idempotent(A, alpha, s).element for alpha in S for s in (1, -1)]


@pytest.mark.parametrize("make", [e1, f2_3, lambda: even_weight(4), lambda: even_weight(5), ew3x2])
def test_round_trip(make):
    A, S = make()
    for seed in range(3):
        rec, perm = round_trip(A, axis_elements(A, S), seed=seed)
        assert perm is not None
        assert rec.report.ok
        assert rec.n == A.n


def test_round_trip_mixed_basis():
    A, S = e1()
    rec, perm = round_trip(A, axis_elements(A, S), seed=5, mix=True)
    assert perm is not None


def test_generic_pairing_recovers_true_pairs():
    A, S = even_weight(4)
    X = axis_elements(A, S)
    B = BlackBoxAlgebra.from_algebra(A, X, A.d)
    assert pair_axes(B, "generic") == [(2 * k, 2 * k + 1) for k in range(len(S))]


def test_pair_product_closed_form():
    for make in (e1, f2_3, lambda: even_weight(5)):
        A, S = make()
        for alpha in S:
            prod, form, lam_form = pair_product_closed_form(A, alpha)
            assert prod == form == lam_form


def test_dump_round_trip():
    A, S = e1()
    B = strip(A, axis_elements(A, S), seed=2)
    text = dump(B)
    B2 = load_dump(text)
    assert B2.dim == B.dim and dump(B2) == text
    assert recover(B2).code.n == 3


@pytest.mark.parametrize(
    "text,frag",
    [
        ("", "empty"),
        ("dim x\n", "dim N"),
        ("dim 1\n0 0 : 1 0\n", "axis"),
        ("dim 1\n0 0 : 1 0\n0 0 : 1 0\naxes 0\n", "twice"),
        ("dim 1\n0 0 : 1 5\naxes 0\n", "out of range"),
        ("dim 1\n0 0 : q 0\naxes 0\n", "bad term"),
        ("dim 2\n0 0 : 1 0\naxes 0\n", "expected 3"),
        ("dim 1\n0 0 1 0\naxes 0\n", "expected 'i j"),
    ],
)
def test_dump_errors(text, frag):
    with pytest.raises(ParseError) as exc:
        load_dump(text, "x.dump")
    assert frag in str(exc.value)


def test_black_box_check():
    A, S = e1()
    X = axis_elements(A, S)
    B = BlackBoxAlgebra.from_algebra(A, X + [A.e(0b110)], A.d)
    rep = B.check()
    assert not rep.ok and "not idempotent" in rep.clause("axes idempotent").detail


def test_non_projective_is_refused():
    C = g.span(["1100", "0011"])
    A = build_algebra(C, StructureParams.make(a="1/8", b="1/4", c=-2))
    B = strip(A, axis_elements(A, [0b1100, 0b0011]), seed=1)
    with pytest.raises(ProjectivityRequired):
        recover(B)


def test_half_lambda_recipe_is_empty():
    A, S = half4()
    B = BlackBoxAlgebra.from_algebra(A, axis_elements(A, S), A.d)
    for x in B.axes:
        key, lam = lambda_subspace(B, x)
        assert lam == []
    orth = [(i, j) for i in range(len(B.axes)) for j in range(i + 1, len(B.axes)) if not B.mul(B.axes[i], B.axes[j])]
    with pytest.raises(PairingFailed):
        _pairs_by_lambda(B, orth)


def test_half_search_pairs_and_alternative_frames():
    A, S = half4()
    X = axis_elements(A, S)
    B = BlackBoxAlgebra.from_algebra(A, X, A.d)
    pairs = pair_axes(B)
    rec = recover(B, pairs)
    assert g.permutation_equivalent(rec.code, A.code) is not None
    orth = [(i, j) for i in range(len(X)) for j in range(i + 1, len(X)) if not B.mul(X[i], X[j])]
    good = []
    total = 0
    for m in _matchings(len(X), orth, 4096):
        total += 1
        try:
            r = recover(B, m)
        except (InconsistentStructure, ProjectivityRequired):
            continue
        good.append(m)
        assert g.permutation_equivalent(r.code, A.code) is not None
    assert total == 27 and len(good) == 3
    assert [(2 * k, 2 * k + 1) for k in range(len(S))] in good


def test_half_three_word_subset():
    A, S = half4([0b1100, 0b0011, 0b1010])
    rec, perm = round_trip(A, axis_elements(A, S), seed=3)
    assert perm is not None


def test_c_consistency():
    rep = check_c_consistency(*e1())
    assert rep.ok and rep.values["exempt"] is False
    A, S = f2_2("-3/4", "-3")
    rep = check_c_consistency(A, S)
    assert rep.ok and "exempt" in rep.clause("c equal across S").detail
    C = g.even_weight_code(3)
    A = build_algebra(C, StructureParams.make(a="1/8", b="1/4", c=-2, c_overrides={0b101: "-1/2"}))
    rep = check_c_consistency(A, [0b110, 0b101])
    assert not rep.ok
    assert not rep.clause("evaluation maps equal").ok


@settings(max_examples=15)
@given(st.integers(0, 10**6))
def test_random_projective_round_trip(seed):
    rnd = random.Random(seed)
    A, S = random_instance(rnd, max_n=8, max_k=3)
    rec, perm = round_trip(A, axis_elements(A, S), seed=rnd.randint(0, 99))
    assert perm is not None
    assert rec.report.ok
