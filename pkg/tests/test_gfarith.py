import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from p3verify.gfarith import (
    NonPrimeError,
    field_make,
    left_nullspace,
    linsolve,
    rank,
    reduce_against,
    rref,
    rref_with_transform,
    solve_left,
)


def small_fields():
    return [field_make(2, 1), field_make(3, 1), field_make(5, 1),
            field_make(2, 2), field_make(3, 2)]


def test_field_make_basics():
    f = field_make(2, 1)
    assert f.q == 2 and f.modulus_poly is None
    with pytest.raises(NonPrimeError):
        field_make(4, 1)
    with pytest.raises(ValueError):
        field_make(3, 3)


def test_gf9_modulus_is_t2_plus_1():
    f = field_make(3, 2)
    # t^2 + 1 has no root mod 3, and it is the lexicographically first choice
    assert f.modulus_poly == (1, 0, 1)
    for r in range(3):
        assert (r * r + 1) % 3 != 0


def test_gf4_and_gf25_moduli_irreducible():
    for p in (2, 5):
        f = field_make(p, 2)
        c0, c1, _ = f.modulus_poly
        for r in range(p):
            assert (r * r + c1 * r + c0) % p != 0


def test_field_axioms_exhaustive_small():
    # associativity, distributivity, inverses; exhaustive for |field| <= 9
    for f in small_fields():
        if f.q > 9:
            continue
        elems = list(f.elements())
        for a in elems:
            for b in elems:
                assert f.add(a, b) == f.add(b, a)
                assert f.mul(a, b) == f.mul(b, a)
                for c in elems:
                    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        for a in elems[1:]:
            assert f.mul(a, f.inv(a)) == 1


def test_frobenius_property():
    # s -> s^p is an automorphism and s^q = s, exhaustive for |field| <= 9
    for f in small_fields():
        if f.q > 9:
            continue
        for s in f.elements():
            assert f.pow(s, f.q) == s
            for u in f.elements():
                assert f.pow(f.mul(s, u), f.p) == f.mul(f.pow(s, f.p), f.pow(u, f.p))
                assert f.pow(f.add(s, u), f.p) == f.add(f.pow(s, f.p), f.pow(u, f.p))


def test_gf25_inverses_sampled():
    f = field_make(5, 2)
    for s in range(1, f.q):
        assert f.mul(s, f.inv(s)) == 1


def test_parse_and_fmt():
    f = field_make(3, 2)
    assert f.parse("2") == 2
    assert f.parse("t") == 3
    assert f.parse("1+2*t") == 1 + 3 * 2
    assert f.parse("-1") == 2
    assert f.fmt(f.parse("1+2*t")) == "1+2*t"
    assert f.fmt(0) == "0"


def test_linsolve_identity():
    f = field_make(3, 1)
    A = np.eye(3, dtype=np.int64)
    b = np.array([1, 2, 0], dtype=np.int64)
    x, ns = linsolve(f, A, b)
    assert np.array_equal(x, b)
    assert ns.shape[0] == 0


def test_linsolve_zero_map():
    f = field_make(3, 1)
    A = np.zeros((3, 3), dtype=np.int64)
    x, ns = linsolve(f, A, np.zeros(3, dtype=np.int64))
    assert ns.shape[0] == 3


def test_linsolve_gf2_rank_one():
    # [[1,1],[1,1]] over GF(2): nullspace spanned by [1,1]
    f = field_make(2, 1)
    A = np.array([[1, 1], [1, 1]], dtype=np.int64)
    x, ns = linsolve(f, A, np.array([0, 0], dtype=np.int64))
    assert ns.shape == (1, 2)
    assert np.array_equal(ns[0] % 2, np.array([1, 1]))
    # exhaustive oracle: every kernel vector among all 4
    kernel = [v for v in [(0, 0), (0, 1), (1, 0), (1, 1)]
              if np.array_equal((np.array(v) @ A) % 2, np.zeros(2, dtype=np.int64))]
    assert kernel == [(0, 0), (1, 1)]


def test_shape_mismatch_rejected():
    f = field_make(2, 1)
    with pytest.raises(ValueError):
        linsolve(f, np.zeros((2, 2), dtype=np.int64), np.zeros(3, dtype=np.int64))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (5, 1), (3, 2)]),
       st.integers(0, 2 ** 30), st.integers(2, 6), st.integers(2, 6))
def test_rank_nullity_random(fp, seed, r, c):
    f = field_make(*fp)
    rng = np.random.default_rng(seed)
    A = rng.integers(0, f.q, size=(r, c)).astype(np.int64)
    ns = left_nullspace(f, A)
    assert rank(f, A.T.copy()) + ns.shape[0] == r
    if ns.shape[0]:
        assert not np.any(f.matmul(ns, A) % f.q)
    # nullspace rows independent
    assert rank(f, ns) == ns.shape[0] if ns.shape[0] else True


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 30))
def test_solve_left_consistency(seed):
    f = field_make(3, 2)
    rng = np.random.default_rng(seed)
    A = rng.integers(0, f.q, size=(4, 5)).astype(np.int64)
    X0 = rng.integers(0, f.q, size=(2, 4)).astype(np.int64)
    B = f.matmul(X0, A)
    X, _ = solve_left(f, A, B)
    assert X is not None
    assert np.array_equal(f.matmul(X, A), B)


def _rref_props(f, A):
    R, pivots = rref(f, A)
    # pivot columns are unit columns
    for j, pc in enumerate(pivots):
        col = R[:, pc]
        assert col[j] == 1 and not np.any(np.delete(col, j) % f.q)
    # row space preserved
    _, resid = reduce_against(f, A, R, pivots)
    assert not np.any(resid % f.q)


def test_rref_small_and_packed_engines_agree():
    rng = np.random.default_rng(0)
    for p in (2, 3):
        f = field_make(p, 1)
        A = rng.integers(0, p, size=(40, 30)).astype(np.int64)
        from p3verify.gfarith import _rref_generic, _rref_gf2, _rref_gf3

        R1, p1 = _rref_generic(f, A.copy(), 30)
        if p == 2:
            R2, p2 = _rref_gf2(A.copy(), 30)
        else:
            R2, p2 = _rref_gf3(A.copy(), 30)
        assert p1 == p2
        assert np.array_equal(R1 % p, R2 % p)
        _rref_props(f, A)


def test_rref_with_transform():
    f = field_make(5, 1)
    rng = np.random.default_rng(7)
    A = rng.integers(0, 5, size=(6, 4)).astype(np.int64)
    R, pivots, T = rref_with_transform(f, A)
    assert np.array_equal(f.matmul(T, A), R)
