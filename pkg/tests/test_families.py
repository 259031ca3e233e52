import numpy as np
import pytest

from p3verify.algebracore import AlgebraMap, CertificateFailure, iso_from_generators
from p3verify.families import (
    ALL_LABELS,
    IncompatiblePrime,
    InvalidParams,
    Params,
    b2_f_coefficients,
    build_family_algebra,
    catalogue_dump,
    default_params,
    lie_datum,
    presentation_catalog,
    restricted_enveloping,
    sl2_with_basis_change,
    supported,
    verify_p_operation,
)
from p3verify.gfarith import field_make
from p3verify.rewrite import RewriteCapExceeded, normalize_word, pretty_combo


def test_b2_f_polynomial():
    # f(x) = sum (-1)^(i-1) (p-i)^(-1) x^i: at p=3 this is 2x + 2x^2
    assert b2_f_coefficients(2) == [1]
    assert b2_f_coefficients(3) == [2, 2]
    # p=5: (4)^-1 x - (3)^-1 x^2 + (2)^-1 x^3 - x^4 = 4x + 3x^2 + 3x^3 + 4x^4
    assert b2_f_coefficients(5) == [4, 3, 3, 4]


def test_catalog_a5_p2_relations():
    pres = presentation_catalog("A5", 2)
    assert pres.relation_strings == [
        "[x,y]", "[x,z]", "[y,z] - (x)", "x^2", "y^2", "z^2 - (x y)"]


def test_catalog_incompatible_prime():
    with pytest.raises(IncompatiblePrime):
        presentation_catalog("C15", 2)
    with pytest.raises(IncompatiblePrime):
        presentation_catalog("C6", 2)


def test_catalog_invalid_params():
    with pytest.raises(InvalidParams):
        presentation_catalog("C16", 3, Params(lam=0, delta=1))
    with pytest.raises(InvalidParams):
        # lambda = t has t^2 = -1, so lambda^2 = -1 != 1 = delta
        F = field_make(3, 2)
        presentation_catalog("C16", 3, Params(lam=F.parse("t"), delta=1))
    with pytest.raises(InvalidParams):
        default_params("C16", 2, delta=-1)


def test_normalize_empty_word_is_unit():
    pres = presentation_catalog("B1", 2)
    assert normalize_word(pres, ()) == {(): 1}


def test_normalize_b1_yx():
    pres = presentation_catalog("B1", 3)
    nf = normalize_word(pres, pres.word("yx"))
    assert nf == {pres.word("xy"): 1, pres.word("y"): 2}  # xy - y


def test_normalize_a2_zp():
    for p in (2, 3):
        pres = presentation_catalog("A2", p)
        assert normalize_word(pres, tuple([2] * p)) == {(1,): 1}  # z^p = y


def test_normalize_is_idempotent():
    pres = presentation_catalog("B2", 3)
    for text in ("zyx", "zzyyxx", "yzx", "xyzzy"):
        nf = normalize_word(pres, pres.word(text))
        again = normalize_word(pres, nf)
        assert nf == again


def test_rewrite_cap_is_a_hard_failure():
    pres = presentation_catalog("B1", 2)
    # x -> x loops forever via an artificial rule
    pres.rules.insert(0, ((0,), {(0, 1): 1}))
    pres.rules.insert(0, ((0, 1), {(0,): 1}))
    pres.meta.pop("_nf_cache", None)
    with pytest.raises(RewriteCapExceeded):
        normalize_word(pres, pres.word("xy"))


@pytest.mark.parametrize("p", [2, 3])
def test_build_all_families_dim_p3(p):
    for label in ALL_LABELS:
        if not supported(label, p)[0]:
            continue
        A = build_family_algebra(label, p)
        assert A.dim == p ** 3, (label, p)


def test_build_a1_commutative():
    A = build_family_algebra("A1", 2)
    assert A.is_commutative()


def test_build_a5_p2_socle_identity():
    # (zy)^2 z = 0 in the p = 2 presentation
    A = build_family_algebra("A5", 2)
    zy = A.mult(A.gen("z"), A.gen("y"))
    assert not np.any(A.mult(A.mult(zy, zy), A.gen("z")))


def test_build_c16_gf9():
    pars = default_params("C16", 3, delta=-1)
    A = build_family_algebra("C16", 3, pars)
    assert A.field.q == 9 and A.dim == 27
    # delta = lambda^2 = -1 is forced by the modulus t^2 + 1
    assert A.field.pow(pars.lam, 2) == A.field.neg(1)


def test_all_relations_normalize_to_zero():
    for label in ("A5", "B2", "B3", "C15", "C16"):
        p = 3
        pres = presentation_catalog(label, p)
        for rel in pres.relations:
            assert normalize_word(pres, rel) == {}


def test_restricted_enveloping_c5():
    for p in (2, 3):
        L = lie_datum("C5", p)
        ok, problems = verify_p_operation(L, p)
        assert ok, problems
        U = restricted_enveloping(L, p)
        A = build_family_algebra("C5", p)
        ok, msg = iso_from_generators(
            AlgebraMap(U, A, [A.gen("x"), A.gen("y"), A.gen("z")]))
        assert ok, msg


def test_restricted_enveloping_c6_c15():
    for label in ("C6", "C15"):
        L = lie_datum(label, 3)
        U = restricted_enveloping(L, 3)
        A = build_family_algebra(label, 3)
        ok, msg = iso_from_generators(
            AlgebraMap(U, A, [A.gen("x"), A.gen("y"), A.gen("z")]))
        assert ok, msg


def test_sl2_basis_change_gives_c15():
    L = sl2_with_basis_change(3)
    ok, problems = verify_p_operation(L, 3)
    assert ok, problems  # (ad h')^p = ad h'
    assert np.array_equal(L.bracket[0, 1] % 3, np.array([0, 0, 1]))  # [e', f'] = h'
    U = restricted_enveloping(L, 3)
    A = build_family_algebra("C15", 3)
    ok, msg = iso_from_generators(AlgebraMap(U, A, [A.gen("x"), A.gen("y"), A.gen("z")]))
    assert ok, msg


def test_corrupted_p_operation_detected():
    L = lie_datum("C5", 3)
    L.pop[0, 0] = 1  # claim x1^[p] = x1 against (ad x1)^p = 0
    ok, problems = verify_p_operation(L, 3)
    assert not ok
    with pytest.raises(CertificateFailure):
        restricted_enveloping(L, 3)


def test_catalogue_dump_shape():
    dump = catalogue_dump()
    assert len(dump) == 24  # 23 labels + C11/C16 etc counted once each... sanity below
    labels = [e["label"] for e in dump]
    assert labels == ALL_LABELS
    c15 = next(e for e in dump if e["label"] == "C15")
    assert c15["p_support"] == [3]
    b2 = next(e for e in dump if e["label"] == "B2")
    assert "[y,z] - (2*y x + 2*y x^2)" in b2["relations"]["3"]
