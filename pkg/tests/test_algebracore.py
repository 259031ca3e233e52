import numpy as np
import pytest

from p3verify.algebracore import (
    AlgebraMap,
    AlgebraTable,
    CertificateFailure,
    Subspace,
    corner,
    ideal_closure,
    ideal_is_nilpotent,
    is_ideal,
    iso_from_generators,
    quotient,
    subalgebra_closure,
)
from p3verify.families import build_family_algebra, semidihedral_presentation
from p3verify.rewrite import build_algebra
from p3verify import gfarith


def test_unit_is_identity_on_basis():
    A = build_family_algebra("B1", 2)
    for i in range(A.dim):
        b = A.basis_vector(i)
        assert np.array_equal(A.mult(A.unit, b), b)
        assert np.array_equal(A.mult(b, A.unit), b)


def test_multiply_b1_commutator():
    # in B1: y*x = x*y - y  (relation [x,y] = y)
    A = build_family_algebra("B1", 3)
    x, y = A.gen("x"), A.gen("y")
    assert np.array_equal(A.mult(y, x), A.field.asub(A.mult(x, y), y))


def test_multiply_a3_squares_vanish():
    A = build_family_algebra("A3", 2)
    x = A.gen("x")
    assert not np.any(A.mult(x, x))


def test_multiply_dimension_mismatch():
    A = build_family_algebra("A3", 2)
    with pytest.raises(ValueError):
        A.mult(np.zeros(3, dtype=np.int64), A.unit)


def test_ideal_closure_unit_gives_whole_algebra():
    A = build_family_algebra("C5", 2)
    assert ideal_closure(A, [A.unit]).dim == A.dim


@pytest.mark.parametrize("p", [2, 3])
def test_ideal_closure_b1(p):
    A = build_family_algebra("B1", p)
    I = ideal_closure(A, [A.gen("y"), A.gen("z")])
    assert I.dim == p ** 3 - p
    assert is_ideal(A, I)


@pytest.mark.parametrize("p", [2, 3])
def test_ideal_closure_c12(p):
    A = build_family_algebra("C12", p)
    I = ideal_closure(A, [A.gen("y")])
    assert I.dim == p ** 3 - p


def test_closure_output_is_closed():
    A = build_family_algebra("B2", 3)
    I = ideal_closure(A, [A.gen("y")])
    for r in I.rows:
        for j in range(A.dim):
            b = A.basis_vector(j)
            assert I.contains(A.mult(r, b))
            assert I.contains(A.mult(b, r))


def test_nilpotency_zero_ideal():
    A = build_family_algebra("A3", 2)
    Z = Subspace.from_rows(A.field, A.dim, np.zeros((0, A.dim), dtype=np.int64))
    assert ideal_is_nilpotent(A, Z) == (True, 1)


def test_nilpotency_a3_augmentation_ideal():
    # index 4; the last nonzero power is the socle spanned by xyz
    A = build_family_algebra("A3", 2)
    I = ideal_closure(A, [A.gen(n) for n in "xyz"])
    nil, index = ideal_is_nilpotent(A, I)
    assert nil and index == 4
    xyz = A.mult(A.mult(A.gen("x"), A.gen("y")), A.gen("z"))
    assert np.any(xyz)


def test_nilpotency_a1_x_not_nilpotent():
    A = build_family_algebra("A1", 2)
    I = ideal_closure(A, [A.gen("x")])
    nil, _ = ideal_is_nilpotent(A, I)
    assert not nil


def test_non_ideal_is_flagged():
    A = build_family_algebra("B1", 2)
    S = Subspace.from_rows(A.field, A.dim, A.gen("y")[None, :])
    if not is_ideal(A, S):
        with pytest.raises(CertificateFailure):
            ideal_is_nilpotent(A, S)


def test_quotient_by_zero_is_same_dim():
    A = build_family_algebra("C4", 2)
    Z = Subspace.from_rows(A.field, A.dim, np.zeros((0, A.dim), dtype=np.int64))
    Q = quotient(A, Z)
    assert Q.dim == A.dim


def test_quotient_b1_mod_yz():
    # B1/<y,z> is the commutative p-dim algebra with x^p = x
    A = build_family_algebra("B1", 3)
    I = ideal_closure(A, [A.gen("y"), A.gen("z")])
    Q = quotient(A, I)
    assert Q.dim == 3
    assert Q.is_commutative()
    x = Q.gen("x")
    x3 = Q.mult(Q.mult(x, x), x)
    assert np.array_equal(x3, x)
    assert A.dim == I.dim + Q.dim


def test_quotient_c12_mod_y():
    A = build_family_algebra("C12", 2)
    I = ideal_closure(A, [A.gen("y")])
    Q = quotient(A, I)
    assert Q.dim == 2 and Q.is_commutative()
    x = Q.gen("x")
    assert np.array_equal(Q.mult(x, x), x)  # split: k x k


def test_quotient_of_quotient_dim_stable():
    A = build_family_algebra("B1", 2)
    I = ideal_closure(A, [A.gen("y")])
    Q = quotient(A, I)
    Z = Subspace.from_rows(Q.field, Q.dim, np.zeros((0, Q.dim), dtype=np.int64))
    assert quotient(Q, Z).dim == Q.dim


def test_corner_unit_is_whole_algebra():
    A = build_family_algebra("C10", 2)
    assert corner(A, A.unit).dim == A.dim


def test_corner_c10_central_idempotent():
    # p = 2: z^2 = z, so e1 = z and e0 = 1 + z; each block is 4-dimensional
    A = build_family_algebra("C10", 2)
    e1 = A.gen("z")
    B = corner(A, e1)
    assert B.dim == 4
    T = A.field.matmul(A.left_mult_matrix(e1), A.right_mult_matrix(e1))
    assert gfarith.rank(A.field, T) == B.dim


def test_corner_c14_e0():
    A = build_family_algebra("C14", 3)
    z = A.gen("z")
    z2 = A.mult(z, z)
    e0 = A.field.asub(A.unit, z2)  # 1 - z^2 kills the roots 1, 2 of z^3 = z
    assert np.array_equal(A.mult(e0, e0), e0)
    assert corner(A, e0).dim == 9


def test_corner_rejects_non_idempotent():
    A = build_family_algebra("C14", 3)
    with pytest.raises(CertificateFailure):
        corner(A, A.gen("y"))


def test_iso_identity_map():
    A = build_family_algebra("B2", 2)
    ok, msg = iso_from_generators(AlgebraMap(A, A, [A.gen(n) for n in "xyz"]))
    assert ok, msg


def test_iso_a2_is_truncated_polynomial():
    # A2 has y^p = x, z^p = y, so u -> z identifies k[u]/(u^{p^3}) with A2
    from p3verify.families import truncated_cyclic_algebra

    for p in (2, 3):
        A = build_family_algebra("A2", p)
        K = truncated_cyclic_algebra(p, p ** 3)
        ok, msg = iso_from_generators(AlgebraMap(K, A, [A.gen("z")]))
        assert ok, msg


def test_iso_a5_semidihedral():
    # substitute x = [y,z]: A5 at p=2 is the 8-dim semidihedral algebra
    A = build_family_algebra("A5", 2)
    S = build_algebra(semidihedral_presentation())
    assert S.dim == 8
    ok, msg = iso_from_generators(AlgebraMap(S, A, [A.gen("y"), A.gen("z")]))
    assert ok, msg


def test_iso_rejects_wrong_images():
    A = build_family_algebra("B1", 2)
    B = build_family_algebra("C4", 2)  # commutative, same dim
    ok, msg = iso_from_generators(AlgebraMap(A, B, [B.gen(n) for n in "xyz"]))
    assert not ok


def test_subalgebra_closure():
    A = build_family_algebra("A2", 2)
    S = subalgebra_closure(A, [A.gen("z")])
    assert S.dim == A.dim  # z generates everything
    S2 = subalgebra_closure(A, [A.gen("x")])
    assert S2.dim == 2  # 1, x with x^2 = 0


def test_serialization_roundtrip():
    A = build_family_algebra("C16", 3, None)
    doc = A.to_json()
    B = AlgebraTable.from_json(doc)
    assert B.dim == A.dim
    assert A.field.aeq(A.C, B.C)
    assert np.array_equal(A.unit, B.unit)
    x = A.gen("x")
    assert np.array_equal(B.mult(x, A.gen("y")), A.mult(x, A.gen("y")))
