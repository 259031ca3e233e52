"""Structure-constant algebras over GF(p)/GF(p^2) and the ideal toolkit.

An :class:`AlgebraTable` is a finite-dimensional associative unital algebra
given by basis labels and a dense structure-constant tensor ``C`` with
``b_i * b_j = sum_k C[i, j, k] b_k``.  Everything downstream (families,
quivers, coverings, resolutions, Hopf checks) runs on these tables.

Vectors are rows; ``left_mult_matrix(a)`` is the matrix of ``v -> a*v``
acting as ``v @ L``, and similarly on the right.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import json

import numpy as np

from . import gfarith
from .gfarith import FieldSpec


class CertificateFailure(Exception):
    """An algebra-construction certificate did not hold."""


Word = tuple[int, ...]
Combo = dict[Word, int]  # linear combination of words, encoded scalars


@dataclass
class Subspace:
    """Row-reduced subspace of the coordinate space of an algebra."""

    field: FieldSpec
    ambient: int
    rows: np.ndarray
    pivots: list[int]

    @classmethod
    def from_rows(cls, F: FieldSpec, ambient: int, rows) -> "Subspace":
        rows = np.atleast_2d(np.asarray(rows))
        if rows.size == 0:
            rows = np.zeros((0, ambient), dtype=np.int64)
        R, pivots = gfarith.row_space(F, rows)
        return cls(F, ambient, R, list(pivots))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def contains(self, vecs) -> bool:
        if self.dim == 0:
            return not np.any(np.asarray(vecs) % self.field.q)
        return gfarith.in_row_space(self.field, np.atleast_2d(vecs), self.rows, self.pivots)

    def reduce(self, vecs) -> np.ndarray:
        """Residual of vectors modulo this subspace."""
        _, resid = gfarith.reduce_against(self.field, np.atleast_2d(vecs), self.rows, self.pivots)
        return resid

    def complement_indices(self) -> list[int]:
        return [i for i in range(self.ambient) if i not in set(self.pivots)]

    def same_as(self, other: "Subspace") -> bool:
        return self.dim == other.dim and self.contains(other.rows)


@dataclass
class AlgebraTable:
    field: FieldSpec
    dim: int
    labels: list[str]
    C: np.ndarray  # (dim, dim, dim) encoded structure constants
    unit: np.ndarray
    generators: dict[str, np.ndarray]
    presentation: object | None = None
    meta: dict = dc_field(default_factory=dict)

    # -- elements ---------------------------------------------------------

    def zero(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def gen(self, name: str) -> np.ndarray:
        return self.generators[name]

    def basis_vector(self, i: int) -> np.ndarray:
        v = self.zero()
        v[i] = 1
        return v

    def mult(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape != (self.dim,) or b.shape != (self.dim,):
            raise ValueError("dimension mismatch in multiply")
        T = self.field.tensordot(a, self.C, axes=([0], [0]))  # (dim, dim)
        return self.field.tensordot(b, T, axes=([0], [0]))

    def left_mult_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix L with (v @ L) = a * v."""
        return self.field.tensordot(a, self.C, axes=([0], [0]))

    def right_mult_matrix(self, a: np.ndarray) -> np.ndarray:
        """Matrix R with (v @ R) = v * a."""
        return self.field.tensordot(a, np.swapaxes(self.C, 0, 1), axes=([0], [0]))

    def evaluate_word(self, word: Word, images: list[np.ndarray] | None = None) -> np.ndarray:
        """Product of generator images along a word (empty word = unit)."""
        if images is None:
            names = self.meta.get("generator_order") or sorted(self.generators)
            images = [self.generators[n] for n in names]
        v = self.unit.copy()
        for g in word:
            v = self.mult(v, images[g])
        return v

    def evaluate_combo(self, combo: Combo, images: list[np.ndarray] | None = None) -> np.ndarray:
        F = self.field
        acc = self.zero()
        for word, coeff in combo.items():
            acc = F.aadd(acc, F.ascale(coeff, self.evaluate_word(word, images)))
        return acc

    def is_commutative(self) -> bool:
        return self.field.aeq(self.C, np.swapaxes(self.C, 0, 1))

    # -- certificates -----------------------------------------------------

    def check_unit(self) -> None:
        F = self.field
        L = self.left_mult_matrix(self.unit)
        R = self.right_mult_matrix(self.unit)
        eye = np.eye(self.dim, dtype=np.int64)
        if not (F.aeq(L, eye) and F.aeq(R, eye)):
            raise CertificateFailure("unit is not a two-sided identity")

    def check_associativity(self, policy: str = "auto", seed: int = 0,
                            anchors: list[int] | None = None) -> None:
        """Associativity certificate.

        ``full`` checks all basis triples; ``anchored`` checks all
        (b_i, b_j, g) with g ranging over generator indices plus 10^5
        pseudo-random full triples with a fixed seed.
        """
        F, C, d = self.field, self.C, self.dim
        if policy == "auto":
            policy = "full" if d ** 4 <= 3 ** 12 else "anchored"
        if policy == "full":
            left = F.tensordot(C, C, axes=([2], [0]))            # (i,j,k,l)
            right = F.tensordot(C, C, axes=([2], [1]))           # (j,k)->(i,l): axes give (j,k,i,l)
            right = np.transpose(right, (2, 0, 1, 3))
            if not F.aeq(left, right):
                bad = np.argwhere((left - right) % F.q)
                i, j, k, _ = bad[0]
                raise CertificateFailure("associativity fails at basis triple (%d, %d, %d)" % (i, j, k))
            return
        if anchors is None:
            anchors = sorted({int(np.argmax(v != 0)) for v in self.generators.values()
                              if np.count_nonzero(v) == 1})
            if not anchors:
                anchors = [0]
        Ca = C[:, anchors, :]
        left = F.tensordot(C, Ca, axes=([2], [0]))               # (i,j,a,l)
        right = np.transpose(F.tensordot(Ca, C, axes=([2], [1])), (2, 0, 1, 3))
        if not F.aeq(left, right):
            raise CertificateFailure("generator-anchored associativity fails")
        rng = np.random.default_rng(seed)
        n = 100_000
        for s in range(0, n, 25_000):
            m = min(25_000, n - s)
            i = rng.integers(0, d, size=m)
            j = rng.integers(0, d, size=m)
            k = rng.integers(0, d, size=m)
            ab = C[i, j]
            bc = C[j, k]
            lhs = np.empty((m, d), dtype=np.int64)
            rhs = np.empty((m, d), dtype=np.int64)
            for t in np.unique(k):                               # (a*b)*c, grouped by c
                rows = np.nonzero(k == t)[0]
                lhs[rows] = F.matmul(ab[rows], C[:, t, :])
            for t in np.unique(i):                               # a*(b*c), grouped by a
                rows = np.nonzero(i == t)[0]
                rhs[rows] = F.matmul(bc[rows], C[t])
            if not F.aeq(lhs, rhs):
                raise CertificateFailure("random-triple associativity fails")

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        F = self.field
        triples = []
        nz = np.argwhere(self.C % F.q)
        for i, j, k in nz:
            triples.append([int(i), int(j), int(k), F.fmt(int(self.C[i, j, k]))])
        return {
            "field": {"p": F.p, "degree": F.degree,
                      "modulus_poly": list(F.modulus_poly) if F.modulus_poly else None},
            "dim": self.dim,
            "labels": list(self.labels),
            "mult": triples,
            "unit": [F.fmt(int(x)) for x in self.unit],
            "generators": {n: [F.fmt(int(x)) for x in v] for n, v in sorted(self.generators.items())},
        }

    @classmethod
    def from_json(cls, doc: dict) -> "AlgebraTable":
        F = gfarith.field_make(doc["field"]["p"], doc["field"]["degree"])
        d = doc["dim"]
        C = np.zeros((d, d, d), dtype=np.int64)
        for i, j, k, s in doc["mult"]:
            C[i, j, k] = F.parse(s)
        unit = np.array([F.parse(s) for s in doc["unit"]], dtype=np.int64)
        gens = {n: np.array([F.parse(s) for s in v], dtype=np.int64)
                for n, v in doc["generators"].items()}
        return cls(F, d, list(doc["labels"]), C, unit, gens)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Ideals, quotients, corners
# ---------------------------------------------------------------------------


def multiply(A: AlgebraTable, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return A.mult(a, b)


def _one_sided_products(A: AlgebraTable, rows: np.ndarray) -> np.ndarray:
    """All products (basis * row) and (row * basis), stacked."""
    F = A.field
    right = F.tensordot(rows, A.C, axes=([1], [0]))      # rows r: r_i C[i,j,:] -> (n, d, d)
    left = F.tensordot(rows, A.C, axes=([1], [1]))       # b_j * r: (n, d, d) with j in axis 1
    n = rows.shape[0]
    return np.concatenate([right.reshape(n * A.dim, A.dim),
                           left.reshape(n * A.dim, A.dim)])


def ideal_closure(A: AlgebraTable, gens) -> Subspace:
    """Smallest two-sided ideal containing the generators (fixed-point loop)."""
    gens = np.atleast_2d(np.asarray(gens, dtype=np.int64))
    span = Subspace.from_rows(A.field, A.dim, gens)
    while True:
        if span.dim == 0:
            return span
        prods = _one_sided_products(A, span.rows)
        new = Subspace.from_rows(A.field, A.dim, np.concatenate([span.rows, prods]))
        if new.dim == span.dim:
            return new
        span = new


def is_ideal(A: AlgebraTable, I: Subspace) -> bool:
    if I.dim == 0:
        return True
    return I.contains(_one_sided_products(A, I.rows))


def ideal_is_nilpotent(A: AlgebraTable, I: Subspace) -> tuple[bool, int]:
    """Powers I, I^2, ... until zero or stabilization; flags non-ideals."""
    if not is_ideal(A, I):
        raise CertificateFailure("subspace is not a two-sided ideal")
    if I.dim == 0:
        return True, 1
    F = A.field
    power = I
    for m in range(2, A.dim + 2):
        # span{a*b : a in power, b in I}
        step = F.tensordot(power.rows, A.C, axes=([1], [0]))        # step[r, j, :] = a_r * b_j
        step = F.tensordot(I.rows, step.transpose(1, 0, 2), axes=([1], [0]))
        new = Subspace.from_rows(F, A.dim, step.reshape(-1, A.dim))
        if new.dim == 0:
            return True, m
        if new.dim == power.dim:
            return False, 0
        power = new
    return False, 0


def quotient(A: AlgebraTable, I: Subspace) -> AlgebraTable:
    """Quotient algebra on the complement of the ideal's pivot coordinates."""
    F = A.field
    if I.dim == A.dim:
        raise CertificateFailure("cannot quotient by the whole algebra")
    if not is_ideal(A, I):
        raise CertificateFailure("subspace is not a two-sided ideal")
    comp = I.complement_indices()
    d = len(comp)

    def proj(vecs: np.ndarray) -> np.ndarray:
        return I.reduce(vecs)[:, comp]

    reps = np.zeros((d, A.dim), dtype=np.int64)
    for t, c in enumerate(comp):
        reps[t, c] = 1
    C = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        prods = F.tensordot(reps[i], A.C, axes=([0], [0]))      # rep_i * b_j for all j
        C[i] = proj(F.tensordot(reps, prods, axes=([1], [0])))  # rep_i * rep_j, projected
    unit = proj(A.unit[None, :])[0]
    gens = {n: proj(v[None, :])[0] for n, v in A.generators.items()}
    labels = [A.labels[c] for c in comp]
    Q = AlgebraTable(F, d, labels, C, unit, gens,
                     meta={"generator_order": A.meta.get("generator_order")})
    Q.check_unit()
    return Q


def corner(A: AlgebraTable, e: np.ndarray) -> AlgebraTable:
    """The corner algebra eAe with unit e."""
    F = A.field
    if not F.aeq(A.mult(e, e), e):
        raise CertificateFailure("corner element is not idempotent")
    T = F.matmul(A.left_mult_matrix(e), A.right_mult_matrix(e))
    rows, pivots = gfarith.row_space(F, T)
    sub = Subspace(F, A.dim, rows, list(pivots))
    d = sub.dim
    C = np.zeros((d, d, d), dtype=np.int64)
    for i in range(d):
        prods = F.tensordot(rows[i], A.C, axes=([0], [0]))
        prods = F.tensordot(rows, prods, axes=([1], [0]))
        coeffs, resid = gfarith.reduce_against(F, prods, rows, pivots)
        if np.any(resid % F.q):
            raise CertificateFailure("corner is not multiplicatively closed")
        C[i] = coeffs
    coeffs, resid = gfarith.reduce_against(F, e[None, :], rows, pivots)
    if np.any(resid % F.q):
        raise CertificateFailure("idempotent not inside its own corner")
    labels = ["e(%s)" % A.labels[pc] for pc in pivots]
    corner_alg = AlgebraTable(F, d, labels, C, coeffs[0], {},
                              meta={"embedding": rows, "parent_dim": A.dim})
    corner_alg.check_unit()
    return corner_alg


def corner_coords(A: AlgebraTable, corner_alg: AlgebraTable, vec: np.ndarray) -> np.ndarray:
    """Coordinates of an ambient vector lying in a corner subalgebra."""
    rows = corner_alg.meta["embedding"]
    R, pivots = gfarith.row_space(A.field, rows)
    coeffs, resid = gfarith.reduce_against(A.field, vec[None, :], R, pivots)
    if np.any(resid % A.field.q):
        raise CertificateFailure("vector does not lie in the corner")
    # rows are already echelon, so coeffs are w.r.t. the corner basis
    return coeffs[0]


# ---------------------------------------------------------------------------
# Generator-image isomorphism certificates
# ---------------------------------------------------------------------------


@dataclass
class AlgebraMap:
    """A prospective map given by images of the source presentation's generators."""

    source: AlgebraTable
    target: AlgebraTable
    images: list[np.ndarray]


def subalgebra_closure(A: AlgebraTable, elements) -> Subspace:
    """Unital subalgebra generated by the given elements (fixed-point loop)."""
    F = A.field
    rows = np.concatenate([A.unit[None, :], np.atleast_2d(np.asarray(elements, dtype=np.int64))])
    span = Subspace.from_rows(F, A.dim, rows)
    elems = np.atleast_2d(np.asarray(elements, dtype=np.int64))
    while True:
        prods = F.tensordot(span.rows, A.C, axes=([1], [0]))
        prods = F.tensordot(elems, prods.transpose(1, 0, 2), axes=([1], [0]))
        prods = prods.transpose(1, 0, 2).reshape(-1, A.dim)
        new = Subspace.from_rows(F, A.dim, np.concatenate([span.rows, prods]))
        if new.dim == span.dim:
            return new
        span = new


def iso_from_generators(amap: AlgebraMap) -> tuple[bool, str]:
    """Certify an isomorphism from generator images.

    True iff every source relation evaluates to zero in the target, the
    images generate the target, and the dimensions agree; bijectivity of
    the induced linear map is then checked by rank as a final assertion.
    """
    src, tgt = amap.source, amap.target
    F = tgt.field
    pres = src.presentation
    if pres is None:
        raise ValueError("source algebra carries no presentation")
    for idx, rel in enumerate(pres.relations):
        val = tgt.evaluate_combo(rel, amap.images)
        if np.any(val % F.q):
            return False, "relation #%d (%s) does not vanish" % (idx, pres.relation_strings[idx])
    closure = subalgebra_closure(tgt, np.stack(amap.images))
    if closure.dim != tgt.dim:
        return False, "images generate a subalgebra of dim %d < %d" % (closure.dim, tgt.dim)
    if src.dim != tgt.dim:
        return False, "dimension mismatch: %d vs %d" % (src.dim, tgt.dim)
    lin = np.stack([tgt.evaluate_word(w, amap.images) for w in pres.basis_words])
    if gfarith.rank(F, lin) != tgt.dim:
        return False, "induced linear map is not bijective"
    return True, "ok"
