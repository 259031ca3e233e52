"""Coverings of bound quivers by cyclic groups, and twisted tensor products.

The covering data in play: a local base algebra (one vertex, loops y, z)
with a weight per arrow into Z_m.  ``covering_build`` constructs the
covering algebra on the lifted-path basis {(b, g)} from start-vertex and
composability bookkeeping; ``twisted_tensor_build`` independently
constructs k[G]* (x)_tau (base) from the twisting map.  That the two agree
under eps_g (x) p  <->  (p, g - w(p)) is then a real check, as is the
isomorphism of each covering with its catalogue family table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebracore import AlgebraMap, AlgebraTable, CertificateFailure, iso_from_generators
from .families import (
    Params,
    build_family_algebra,
    c16_weight_exponent,
    default_params,
    family_field,
)
from .gfarith import FieldSpec, field_make
from .rewrite import Presentation, build_algebra, exponent_basis
from .structure import Arrow, QuiverPresentation


class NonHomogeneousRelation(CertificateFailure):
    pass


class TauAxiomViolation(CertificateFailure):
    pass


@dataclass
class WeightedPresentation:
    """A local base algebra (one vertex) with arrow weights in Z_m."""

    base: Presentation
    group_order: int
    weights: dict[str, int]  # generator name -> exponent of the cyclic generator

    def word_weight(self, word) -> int:
        return sum(self.weights[self.base.generators[g]] for g in word) % self.group_order


def base_local_algebra(kind: str, p: int, F: FieldSpec | None = None) -> Presentation:
    """The weighted base algebras: loops y, z with y^p = z^p = 0 and either
    commuting loops or the shear relation [y, z] = y^2."""
    if F is None:
        F = field_make(p, 1)
    Y, Z = 0, 1
    pres = Presentation(F, ["y", "z"], [], [], [], [])
    byz = {(Y, Y): 1} if kind == "shear" else {}
    if kind not in ("commuting", "shear"):
        raise ValueError(kind)
    rhs = {(Y, Z): 1}
    for w, c in byz.items():
        rhs[w] = F.neg(c)
    pres.rules = [((Z, Y), rhs), (tuple([Y] * p), {}), (tuple([Z] * p), {})]
    rel_comm = {(Y, Z): 1, (Z, Y): F.neg(1)}
    for w, c in byz.items():
        rel_comm[w] = F.add(rel_comm.get(w, 0), F.neg(c))
    pres.relations = [rel_comm, {tuple([Y] * p): 1}, {tuple([Z] * p): 1}]
    pres.relation_strings = ["[y,z]" + (" - (y^2)" if kind == "shear" else ""),
                             "y^%d" % p, "z^%d" % p]
    pres.basis_words = exponent_basis(2, [p, p])
    return pres


def check_weight_homogeneous(wp: WeightedPresentation) -> None:
    for rel, rs in zip(wp.base.relations, wp.base.relation_strings):
        weights = {wp.word_weight(w) for w in rel}
        if len(weights) > 1:
            raise NonHomogeneousRelation("relation %s mixes weights %s" % (rs, sorted(weights)))


def covering_build(wp: WeightedPresentation, seed: int = 0):
    """Covering algebra on the lifted-path basis (b, g), plus its quiver.

    (b, g) is the unique lift of the base path b starting at vertex g;
    the product (b_i, h)(b_j, g) is the lift of b_i b_j at g when h equals
    g + w(b_j) and zero otherwise.  Certificate: unit, associativity,
    claimed dimension m * dim(base), and every lifted relation vanishes.
    """
    check_weight_homogeneous(wp)
    base = build_algebra(wp.base)
    F = base.field
    m = wp.group_order
    nb = base.dim
    dim = m * nb

    def idx(i: int, g: int) -> int:
        return (g % m) * nb + i

    word_w = [wp.word_weight(w) for w in wp.base.basis_words]
    C = np.zeros((dim, dim, dim), dtype=np.int64)
    for i in range(nb):
        for j in range(nb):
            row = base.C[i, j]
            nz = np.nonzero(row % F.q)[0]
            for g in range(m):
                h = (g + word_w[j]) % m
                for k in nz:
                    C[idx(i, h), idx(j, g), idx(int(k), g)] = row[k]
    unit = np.zeros(dim, dtype=np.int64)
    for g in range(m):
        unit[idx(0, g)] = 1  # sum of the trivial paths
    labels = ["(%s,g%d)" % (base.labels[i], g) for g in range(m) for i in range(nb)]
    gens = {}
    for name in wp.base.generators:
        v = np.zeros(dim, dtype=np.int64)
        gvec = base.gen(name)
        for g in range(m):
            for k in np.nonzero(gvec % F.q)[0]:
                v[idx(int(k), g)] = gvec[k]
        gens["sum_" + name] = v
    cov = AlgebraTable(F, dim, labels, C, unit, gens,
                       meta={"group_order": m, "base_dim": nb,
                             "generator_order": sorted(gens)})
    cov.check_unit()
    cov.check_associativity(policy="full" if dim <= 125 else "anchored", seed=seed)
    if cov.dim != m * nb:
        raise CertificateFailure("covering dimension is not m * dim(base)")

    # every lifted relation vanishes: evaluate the lift at each start vertex
    for rel, rs in zip(wp.base.relations, wp.base.relation_strings):
        for g in range(m):
            acc = np.zeros(dim, dtype=np.int64)
            for w, c in rel.items():
                lift = np.zeros(dim, dtype=np.int64)
                lift[idx(0, g)] = 1
                for letter in reversed(w):  # first traversed letter multiplies first
                    lift = cov.mult(gens["sum_" + wp.base.generators[letter]], lift)
                acc = F.aadd(acc, F.ascale(c, lift))
            if np.any(acc % F.q):
                raise CertificateFailure("lift of %s at vertex %d does not vanish" % (rs, g))

    vertices = [(g,) for g in range(m)]
    arrows = [Arrow((g,), ((g + wp.weights[name]) % m,), name, None)
              for name in wp.base.generators for g in range(m)]
    relations = [(rs, g) for rs in wp.base.relation_strings for g in range(m)]
    qp = QuiverPresentation(vertices, arrows, relations=relations,
                            weights=dict(wp.weights), group_order=m)
    return qp, cov


def pushdown_matches_base(cov: AlgebraTable, base: AlgebraTable) -> bool:
    """Summing covering structure constants over the group recovers the base."""
    F = cov.field
    m, nb = cov.meta["group_order"], cov.meta["base_dim"]
    for i in range(nb):
        for j in range(nb):
            for g in range(m):
                h = 0
                # locate the unique start vertex where (b_i, ?) composes with (b_j, g)
                acc = np.zeros(nb, dtype=np.int64)
                for hh in range(m):
                    row = cov.C[hh * nb + i, g * nb + j]
                    folded = row.reshape(m, nb)
                    for gg in range(m):
                        acc = F.aadd(acc, folded[gg])
                if not F.aeq(acc, base.C[i, j]):
                    return False
    return True


def dual_group_algebra(F: FieldSpec, m: int) -> AlgebraTable:
    """k[G]* for G cyclic of order m: basis eps_g, eps_g eps_h = delta_{gh} eps_g."""
    C = np.zeros((m, m, m), dtype=np.int64)
    for g in range(m):
        C[g, g, g] = 1
    unit = np.ones(m, dtype=np.int64)
    return AlgebraTable(F, m, ["eps%d" % g for g in range(m)], C, unit, {},
                        meta={"group_order": m})


@dataclass
class TwistingMap:
    """tau: Gamma (x) Lam -> Lam (x) Gamma as a matrix on basis pairs.

    ``tau[j, i]`` is the image of gamma_j (x) lam_i, a vector over the
    Lam (x) Gamma basis in the layout (Lam index) * dim(Gamma) + (Gamma index).
    """

    lam_alg: AlgebraTable
    gam_alg: AlgebraTable
    tau: np.ndarray  # (dimGamma, dimLam, dimLam * dimGamma)


def weight_twisting(dual: AlgebraTable, base: AlgebraTable,
                    wp: WeightedPresentation) -> TwistingMap:
    """tau(p (x) eps_g) = eps_{g + w(p)} (x) p for weight-homogeneous basis paths."""
    m, nb = dual.dim, base.dim
    tau = np.zeros((nb, m, m * nb), dtype=np.int64)
    for j, w in enumerate(wp.base.basis_words):
        wgt = wp.word_weight(w)
        for g in range(m):
            tau[j, g, ((g + wgt) % m) * nb + j] = 1
    return TwistingMap(dual, base, tau)


def flip_twisting(lam_alg: AlgebraTable, gam_alg: AlgebraTable) -> TwistingMap:
    """The plain flip tau(gamma (x) lam) = lam (x) gamma."""
    nl, ng = lam_alg.dim, gam_alg.dim
    tau = np.zeros((ng, nl, nl * ng), dtype=np.int64)
    for j in range(ng):
        for i in range(nl):
            tau[j, i, i * ng + j] = 1
    return TwistingMap(lam_alg, gam_alg, tau)


def _twisted_structure_tensor(tw: TwistingMap) -> np.ndarray:
    """C[(i1 j1), (i2 j2)] = lam_i1 * tau(gam_j1 (x) lam_i2) * gam_j2."""
    F = tw.lam_alg.field
    nl, ng = tw.lam_alg.dim, tw.gam_alg.dim
    tau4 = tw.tau.reshape(ng, nl, nl, ng)
    T1 = F.einsum2("jiab,xak->jibxk", tau4, tw.lam_alg.C)
    CT = F.einsum2("jibxk,bzl->xjizkl", T1, tw.gam_alg.C)
    d = nl * ng
    return np.ascontiguousarray(CT.reshape(d, d, d))


def _kron_basis(lam_alg: AlgebraTable, gam_alg: AlgebraTable,
                u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.kron(u, v)


def check_tau_axioms(tw: TwistingMap) -> None:
    """The four compatibility axioms, checked exhaustively on basis pairs."""
    F = tw.lam_alg.field
    L, G = tw.lam_alg, tw.gam_alg
    nl, ng = L.dim, G.dim
    CT = _twisted_structure_tensor(tw)
    d = nl * ng

    def product(u, v):
        T = F.tensordot(u, CT, axes=([0], [0]))
        return F.tensordot(v, T, axes=([0], [0]))

    for j in range(ng):  # tau(gamma (x) 1) = 1 (x) gamma
        got = F.tensordot(L.unit, tw.tau[j], axes=([0], [0]))
        if not F.aeq(got, np.kron(L.unit, G.basis_vector(j))):
            raise TauAxiomViolation("tau(gamma (x) 1) != 1 (x) gamma at gamma_%d" % j)
    for i in range(nl):  # tau(1 (x) lam) = lam (x) 1
        got = F.tensordot(G.unit, tw.tau[:, i, :], axes=([0], [0]))
        if not F.aeq(got, np.kron(L.basis_vector(i), G.unit)):
            raise TauAxiomViolation("tau(1 (x) lam) != lam (x) 1 at lam_%d" % i)
    for jp in range(ng):  # (1 (x) g') tau(g (x) l) = tau(g'g (x) l)
        one_gp = np.kron(L.unit, G.basis_vector(jp))
        for j in range(ng):
            gg = G.C[jp, j]
            for i in range(nl):
                lhs = product(one_gp, tw.tau[j, i])
                rhs = F.tensordot(gg, tw.tau[:, i, :], axes=([0], [0]))
                if not F.aeq(lhs, rhs):
                    raise TauAxiomViolation(
                        "(1 (x) g') tau(g (x) l) != tau(g'g (x) l) at (%d,%d,%d)" % (jp, j, i))
    for j in range(ng):  # tau(g (x) l)(l' (x) 1) = tau(g (x) ll')
        for i in range(nl):
            for ip in range(nl):
                lhs = product(tw.tau[j, i], np.kron(L.basis_vector(ip), G.unit))
                rhs = F.tensordot(L.C[i, ip], tw.tau[j], axes=([0], [0]))
                if not F.aeq(lhs, rhs):
                    raise TauAxiomViolation(
                        "tau(g (x) l)(l' (x) 1) != tau(g (x) ll') at (%d,%d,%d)" % (j, i, ip))


def twisted_tensor_build(lam_alg: AlgebraTable, gam_alg: AlgebraTable,
                         tw: TwistingMap, seed: int = 0) -> AlgebraTable:
    """The algebra Lam (x)_tau Gamma on the basis lam_i (x) gam_j."""
    check_tau_axioms(tw)
    F = lam_alg.field
    nl, ng = lam_alg.dim, gam_alg.dim
    d = nl * ng
    C = _twisted_structure_tensor(tw)
    unit = np.kron(lam_alg.unit, gam_alg.unit)
    labels = ["%s(x)%s" % (lam_alg.labels[i], gam_alg.labels[j])
              for i in range(nl) for j in range(ng)]
    T = AlgebraTable(F, d, labels, C, unit, {}, meta={"tensor_dims": (nl, ng)})
    T.check_unit()
    T.check_associativity(policy="full" if d <= 125 else "anchored", seed=seed)
    return T


# ---------------------------------------------------------------------------
# Catalogue covering data and the equivalence checks
# ---------------------------------------------------------------------------


def covering_data(label: str, p: int, params: Params | None = None) -> WeightedPresentation:
    """The catalogue coverings: B1/C11 and C16 over commuting loops, B3 over
    the shear base; weights w(y) = sigma, w(z) = e for B1, w(y) = w(z) = sigma
    for B3, and w(y) = sigma^(-1), w(z) = sigma^(-a) with lam^(-1) = a lam
    for C16."""
    if label in ("B1", "C11"):
        return WeightedPresentation(base_local_algebra("commuting", p), p,
                                    {"y": 1, "z": 0})
    if label == "B3":
        return WeightedPresentation(base_local_algebra("shear", p), p,
                                    {"y": 1, "z": 1})
    if label == "C16":
        if params is None:
            params = default_params("C16", p)
        F = family_field("C16", p, params)
        a = c16_weight_exponent(F, params.lam % F.q, p)
        return WeightedPresentation(base_local_algebra("commuting", p, F), p,
                                    {"y": (-1) % p, "z": (-a) % p})
    raise ValueError("no covering datum for %s" % label)


def example_covering(p: int) -> WeightedPresentation:
    """One vertex, loops y and z, w(y) = g, w(z) = e."""
    return WeightedPresentation(base_local_algebra("commuting", p), p, {"y": 1, "z": 0})


def covering_equiv_twisted(wp: WeightedPresentation, seed: int = 0) -> bool:
    """eps_g (x) b_j  <->  (b_j, g - w(b_j)) is an algebra isomorphism."""
    qp, cov = covering_build(wp, seed=seed)
    base = build_algebra(wp.base)
    m = wp.group_order
    nb = base.dim
    dual = dual_group_algebra(base.field, m)
    tw = weight_twisting(dual, base, wp)
    T = twisted_tensor_build(dual, base, tw, seed=seed)
    if T.dim != cov.dim:
        return False
    perm = np.zeros(T.dim, dtype=np.int64)
    for g in range(m):
        for j in range(nb):
            wgt = wp.word_weight(wp.base.basis_words[j])
            perm[g * nb + j] = ((g - wgt) % m) * nb + j
    F = cov.field
    mapped = cov.C[np.ix_(perm, perm, perm)]
    if not F.aeq(T.C, mapped):
        return False
    im_unit = np.zeros(T.dim, dtype=np.int64)
    im_unit[perm] = T.unit
    return bool(F.aeq(im_unit, cov.unit))


def family_covering_images(label: str, p: int, cov: AlgebraTable,
                           wp: WeightedPresentation,
                           params: Params | None = None) -> list[np.ndarray]:
    """Images of the family generators x, y, z inside the covering algebra."""
    F = cov.field
    m = cov.meta["group_order"]
    nb = cov.meta["base_dim"]

    def vertex_combination(scalars) -> np.ndarray:
        v = np.zeros(cov.dim, dtype=np.int64)
        for g in range(m):
            v[g * nb] = scalars[g]
        return v

    if label in ("B1", "C11", "B3"):
        x_img = vertex_combination([F.from_int(g) for g in range(m)])
        return [x_img, cov.gen("sum_y"), cov.gen("sum_z")]
    if label == "C16":
        pars = params or default_params("C16", p)
        lam = pars.lam % F.q
        z_img = vertex_combination([F.mul(F.from_int(g), lam) for g in range(m)])
        return [cov.gen("sum_y"), cov.gen("sum_z"), z_img]
    raise ValueError(label)


def verify_covering_identification(label: str, p: int,
                                   params: Params | None = None) -> AlgebraTable:
    """Covering == twisted tensor, and covering == the catalogue table."""
    wp = covering_data(label, p, params)
    if not covering_equiv_twisted(wp):
        raise CertificateFailure("covering/twisted-tensor mismatch for %s" % label)
    qp, cov = covering_build(wp)
    A = build_family_algebra(label, p, params)
    if cov.field.q != A.field.q:
        raise CertificateFailure("field mismatch between covering and family table")
    images = family_covering_images(label, p, cov, wp, params)
    ok, msg = iso_from_generators(AlgebraMap(A, cov, images))
    if not ok:
        raise CertificateFailure("covering of %s is not the family table: %s" % (label, msg))
    return cov
