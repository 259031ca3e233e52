"""The catalogue of connected-Hopf-algebra families of dimension p^3.

Each family label (A1..A5, B1..B3, C1..C16) maps to a presentation
k<x,y,z>/I transcribed relation by relation, with oriented rewrite rules
(commutators move z past y past x; p-th powers drop to the stated lower
term), the claimed monomial basis {x^r y^s z^t : 0 <= r,s,t < p}, and the
comultiplication/antipode slots where the classification provides them.

``build_family_algebra`` runs the generic rewriting construction and its
full certificate; the result is an exact structure-constant table over
GF(p), or GF(p^2) for the C16 parameter family with delta = -1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gfarith
from .algebracore import AlgebraTable, CertificateFailure, Combo
from .gfarith import FieldSpec, field_make
from .rewrite import Presentation, build_algebra, exponent_basis, normalize_word, pretty_combo

ALL_LABELS = ["A1", "A2", "A3", "A4", "A5", "B1", "B2", "B3"] + ["C%d" % i for i in range(1, 17)]


class IncompatiblePrime(ValueError):
    pass


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class Params:
    """Family parameters: beta for A5 (p>2), lambda/delta for C16.

    ``beta`` and ``lam`` are encoded scalars of the family's field;
    ``delta`` is +1 or -1 as a plain int.
    """

    beta: int | None = None
    lam: int | None = None
    delta: int | None = None


def supported(label: str, p: int) -> tuple[bool, str]:
    if label not in ALL_LABELS:
        return False, "unknown family label %r" % label
    if label in ("C6", "C15") and p == 2:
        return False, "%s exists only for p > 2" % label
    return True, ""


def family_field(label: str, p: int, params: Params | None = None) -> FieldSpec:
    if label == "C16" and params is not None and params.delta == -1 and p > 2:
        return field_make(p, 2)
    return field_make(p, 1)


def default_params(label: str, p: int, delta: int = 1) -> Params:
    if label == "A5" and p > 2:
        return Params(beta=1)
    if label == "C16":
        if delta == 1:
            return Params(lam=1, delta=1)
        if p == 2:
            raise InvalidParams("p = 2 admits only delta = 1 (lambda = 1 = -1)")
        F = field_make(p, 2)
        minus_one = p - 1
        for lam in range(1, F.q):
            if F.pow(lam, p - 1) == minus_one:
                return Params(lam=lam, delta=-1)
        raise AssertionError("no lambda with lambda^(p-1) = -1 in GF(p^2)")
    return Params()


@dataclass
class HopfSlots:
    """Comultiplication data (Y, Z as tensor-square expressions) and antipode images."""

    available: bool
    reason: str
    Y: object | None  # expression tree, None means zero
    Z: object | None
    antipode: dict[str, Combo]


def _antipode_minus_id() -> dict[str, Combo]:
    return {"x": {(0,): -1}, "y": {(1,): -1}, "z": {(2,): -1}}


def _hopf_slots(label: str, p: int) -> HopfSlots:
    S = _antipode_minus_id()
    Y = Z = None
    if label == "A1":
        # the bracket carries -omega(x): with +omega(x) (as printed) the
        # coassociativity 2-cocycle condition fails for p > 2, while the two
        # signs agree in characteristic 2
        Y = ("omega", "x")
        Z = ("add",
             ("mul", ("omega", "x"),
              ("pow", ("add", ("gl", "y"), ("gr", "y"),
                       ("scale", -1, ("omega", "x"))), p - 1)),
             ("omega", "y"))
    elif label == "A5":
        # the A(beta) formulas; at p = 2 the printed entry (= A(0)) carries
        # no Y/Z but zero data fails the algebra-map axiom, so the same
        # formulas are used there as well
        Y = ("omega", "x")
        Z = ("add",
             ("mul", ("omega", "x"), ("pow", ("add", ("gl", "y"), ("gr", "y")), p - 1)),
             ("omega", "y"))
    elif label == "B1":
        Z = ("omega", "y")
    elif label == "B2":
        Z = ("omega", "x")
    elif label == "B3":
        if p == 2:
            return HopfSlots(False, "B3 comultiplication datum is given for p > 2 only", None, None, {})
        Z = ("scale", -2, ("tensor", "x", "y"))
        S = _antipode_minus_id()
        S["z"] = {(2,): -1, (0, 1): -2}  # S(z) = -z - 2xy
    return HopfSlots(True, "", Y, Z, S)


def b2_f_coefficients(p: int) -> list[int]:
    """Coefficients c_1..c_{p-1} of f(x) = sum (-1)^(i-1) (p-i)^(-1) x^i over GF(p)."""
    F = field_make(p, 1)
    out = []
    for i in range(1, p):
        sign = 1 if (i - 1) % 2 == 0 else p - 1
        out.append(F.mul(sign, F.inv((p - i) % p)))
    return out


def _three_gen_presentation(F: FieldSpec, p: int, bxy: Combo, bxz: Combo, byz: Combo,
                            px: Combo, py: Combo, pz: Combo) -> Presentation:
    """Presentation on x,y,z from commutators [x,y], [x,z], [y,z] and p-th powers."""
    pres = Presentation(F, ["x", "y", "z"], [], [], [], [])
    X, Y, Z = 0, 1, 2

    def neg(c: Combo) -> Combo:
        return {w: F.neg(v) for w, v in c.items()}

    def plus(a: Combo, b: Combo) -> Combo:
        out = dict(a)
        for w, v in b.items():
            s = F.add(out.get(w, 0), v)
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return out

    pres.rules = [
        ((Y, X), plus({(X, Y): 1}, neg(bxy))),
        ((Z, X), plus({(X, Z): 1}, neg(bxz))),
        ((Z, Y), plus({(Y, Z): 1}, neg(byz))),
        (tuple([X] * p), px),
        (tuple([Y] * p), py),
        (tuple([Z] * p), pz),
    ]
    rel_specs = [
        (plus({(X, Y): 1, (Y, X): F.neg(1)}, neg(bxy)), "[x,y]"),
        (plus({(X, Z): 1, (Z, X): F.neg(1)}, neg(bxz)), "[x,z]"),
        (plus({(Y, Z): 1, (Z, Y): F.neg(1)}, neg(byz)), "[y,z]"),
        (plus({tuple([X] * p): 1}, neg(px)), "x^%d" % p),
        (plus({tuple([Y] * p): 1}, neg(py)), "y^%d" % p),
        (plus({tuple([Z] * p): 1}, neg(pz)), "z^%d" % p),
    ]
    pres.relations = [r for r, _ in rel_specs]
    pres.relation_strings = []
    for (rel, head), low in zip(rel_specs, [bxy, bxz, byz, px, py, pz]):
        if low:
            pres.relation_strings.append("%s - (%s)" % (head, pretty_combo(pres, low)))
        else:
            pres.relation_strings.append(head)
    pres.basis_words = exponent_basis(3, [p, p, p])
    return pres


def presentation_catalog(label: str, p: int, params: Params | None = None) -> Presentation:
    """Exact relation set of the classification for one family."""
    ok, reason = supported(label, p)
    if not ok:
        raise IncompatiblePrime(reason)
    if not gfarith.is_prime(p):
        raise gfarith.NonPrimeError("p=%d is not prime" % p)
    if params is None:
        params = default_params(label, p)
    F = family_field(label, p, params)
    m1 = F.neg(1)
    zero: Combo = {}
    X, Y, Z = 0, 1, 2
    x1, y1, z1 = {(X,): 1}, {(Y,): 1}, {(Z,): 1}

    if label in ("A1", "C1"):
        pres = _three_gen_presentation(F, p, zero, zero, zero, x1, y1, z1)
    elif label in ("A2",):
        pres = _three_gen_presentation(F, p, zero, zero, zero, zero, x1, y1)
    elif label in ("A3", "C4"):
        pres = _three_gen_presentation(F, p, zero, zero, zero, zero, zero, zero)
    elif label == "A4":
        pres = _three_gen_presentation(F, p, zero, zero, zero, zero, zero, x1)
    elif label == "A5":
        if p == 2:
            pz = {(X, Y): m1}  # z^2 = -xy
            pres = _three_gen_presentation(F, p, zero, zero, x1, zero, zero, pz)
        else:
            if params.beta is None:
                raise InvalidParams("A5 with p > 2 requires the beta parameter")
            beta = params.beta % F.q
            pz: Combo = {tuple([X] * (p - 1) + [Y]): m1}
            if beta:
                pz[(X,)] = beta
            pres = _three_gen_presentation(F, p, zero, zero, x1, zero, zero, pz)
    elif label in ("B1", "C11"):
        pres = _three_gen_presentation(F, p, y1, zero, zero, x1, zero, zero)
    elif label == "B2":
        coeffs = b2_f_coefficients(p)
        yfx: Combo = {tuple([Y] + [X] * i): c for i, c in enumerate(coeffs, start=1) if c}
        pres = _three_gen_presentation(F, p, y1, zero, yfx, x1, zero, z1)
    elif label == "B3":
        pres = _three_gen_presentation(F, p, y1, z1, {(Y, Y): 1}, x1, zero, zero)
    elif label == "C2":
        pres = _three_gen_presentation(F, p, zero, zero, zero, y1, z1, zero)
    elif label == "C3":
        pres = _three_gen_presentation(F, p, zero, zero, zero, zero, z1, zero)
    elif label == "C5":
        pres = _three_gen_presentation(F, p, z1, zero, zero, zero, zero, zero)
    elif label == "C6":
        pres = _three_gen_presentation(F, p, z1, zero, zero, z1, zero, zero)
    elif label == "C7":
        pres = _three_gen_presentation(F, p, zero, zero, zero, zero, zero, z1)
    elif label == "C8":
        pres = _three_gen_presentation(F, p, zero, zero, zero, y1, zero, z1)
    elif label == "C9":
        pres = _three_gen_presentation(F, p, zero, zero, zero, zero, y1, z1)
    elif label == "C10":
        pres = _three_gen_presentation(F, p, z1, zero, zero, zero, zero, z1)
    elif label == "C12":
        pres = _three_gen_presentation(F, p, y1, zero, zero, x1, z1, zero)
    elif label == "C13":
        pres = _three_gen_presentation(F, p, y1, zero, zero, x1, zero, z1)
    elif label == "C14":
        pres = _three_gen_presentation(F, p, y1, zero, zero, x1, z1, z1)
    elif label == "C15":
        pres = _three_gen_presentation(F, p, z1, x1, {(Y,): m1}, zero, zero, z1)
    elif label == "C16":
        if params.lam is None or params.delta not in (1, -1):
            raise InvalidParams("C16 requires lambda and delta = +/-1")
        lam = params.lam % F.q
        if lam == 0:
            raise InvalidParams("C16 requires nonzero lambda")
        delta_scalar = 1 if params.delta == 1 else F.neg(1)
        if F.pow(lam, p - 1) != delta_scalar:
            raise InvalidParams("C16 requires delta = lambda^(p-1) = +/-1")
        lam_inv = F.inv(lam)
        pres = _three_gen_presentation(
            F, p, zero, {(X,): lam}, {(Y,): lam_inv},
            zero, zero, {(Z,): delta_scalar})
    else:
        raise AssertionError(label)

    pres.hopf = _hopf_slots(label, p)
    pres.meta.update({"label": label, "p": p, "params": params,
                      "exponent_bounds": [p, p, p]})
    return pres


_BUILD_CACHE: dict = {}


def build_family_algebra(label: str, p: int, params: Params | None = None,
                         seed: int = 0) -> AlgebraTable:
    """Build one catalogue family on the claimed p^3 monomial basis, certified."""
    key = (label, p, params, seed)
    if key in _BUILD_CACHE:
        return _BUILD_CACHE[key]
    pres = presentation_catalog(label, p, params)
    policy = "full" if p <= 3 else "anchored"
    A = build_algebra(pres, assoc_policy=policy, seed=seed)
    if A.dim != p ** 3:
        raise CertificateFailure("family %s at p=%d has dim %d != p^3" % (label, p, A.dim))
    A.meta.update(pres.meta)
    _BUILD_CACHE[key] = A
    return A


# ---------------------------------------------------------------------------
# Restricted Lie algebras and their enveloping algebras
# ---------------------------------------------------------------------------


@dataclass
class RestrictedLie:
    """3-dimensional restricted Lie algebra: bracket table and p-operation."""

    field: FieldSpec
    bracket: np.ndarray  # (3,3,3): bracket[i,j] = coords of [x_i, x_j]
    pop: np.ndarray      # (3,3):   pop[i] = coords of x_i^[p]

    def ad(self, v: np.ndarray) -> np.ndarray:
        """Matrix of ad(v) = [v, -] acting on rows: u @ ad(v) = [v, u]."""
        F = self.field
        return F.tensordot(v, np.swapaxes(self.bracket, 0, 1), axes=([0], [1]))


def verify_p_operation(L: RestrictedLie, p: int) -> tuple[bool, list[str]]:
    """Check antisymmetry, Jacobi, and ad(v^[p]) = (ad v)^p on basis vectors."""
    F = L.field
    problems: list[str] = []
    B = L.bracket
    if not F.aeq(B, F.aneg(np.swapaxes(B, 0, 1))):
        problems.append("bracket is not antisymmetric")
    for i in range(3):
        if np.any(B[i, i] % F.q):
            problems.append("[x_%d, x_%d] != 0" % (i, i))
    for i in range(3):
        for j in range(3):
            for k in range(3):
                s = F.tensordot(B[i, j], B, axes=([0], [0]))[k]
                s = F.aadd(s, F.tensordot(B[j, k], B, axes=([0], [0]))[i])
                s = F.aadd(s, F.tensordot(B[k, i], B, axes=([0], [0]))[j])
                if np.any(s % F.q):
                    problems.append("Jacobi fails at (%d,%d,%d)" % (i, j, k))
    eye = np.eye(3, dtype=np.int64)
    for i in range(3):
        adv = L.ad(eye[i])
        power = eye.copy()
        for _ in range(p):
            power = F.matmul(power, adv)
        if not F.aeq(power, L.ad(L.pop[i])):
            problems.append("ad(x_%d^[p]) != (ad x_%d)^p" % (i, i))
    return not problems, problems


def restricted_enveloping(L: RestrictedLie, p: int, seed: int = 0) -> AlgebraTable:
    """u(L) = k<x1,x2,x3> / ({x_i x_j - x_j x_i - [x_i,x_j]}, {x_i^p - x_i^[p]})."""
    ok, problems = verify_p_operation(L, p)
    if not ok:
        raise CertificateFailure("not a restricted Lie algebra: %s" % "; ".join(problems))
    F = L.field

    def lin(v: np.ndarray) -> Combo:
        return {(i,): int(v[i]) for i in range(3) if v[i] % F.q}

    pres = _three_gen_presentation(
        F, p, lin(L.bracket[0, 1]), lin(L.bracket[0, 2]), lin(L.bracket[1, 2]),
        lin(L.pop[0]), lin(L.pop[1]), lin(L.pop[2]))
    pres.generators = ["x1", "x2", "x3"]
    pres.meta["label"] = "u(L)"
    policy = "full" if p <= 3 else "anchored"
    A = build_algebra(pres, assoc_policy=policy, seed=seed)
    if A.dim != p ** 3:
        raise CertificateFailure("enveloping algebra has dim %d != p^3" % A.dim)
    return A


def lie_datum(label: str, p: int) -> RestrictedLie:
    """The catalogue Lie data behind C5, C6, C15."""
    F = field_make(p, 1)
    B = np.zeros((3, 3, 3), dtype=np.int64)
    pop = np.zeros((3, 3), dtype=np.int64)
    if label in ("C5", "C6"):
        B[0, 1, 2], B[1, 0, 2] = 1, F.neg(1)  # [x1, x2] = x3
        if label == "C6":
            pop[0, 2] = 1                      # x1^[p] = x3
    elif label == "C15":
        if p == 2:
            raise IncompatiblePrime("C15 exists only for p > 2")
        B[0, 1, 2], B[1, 0, 2] = 1, F.neg(1)   # [x1, x2] = x3
        B[0, 2, 0], B[2, 0, 0] = 1, F.neg(1)   # [x1, x3] = x1
        B[1, 2, 1], B[2, 1, 1] = F.neg(1), 1   # [x2, x3] = -x2
        pop[2, 2] = 1                          # x3^[p] = x3
    else:
        raise ValueError("no Lie datum for %s" % label)
    return RestrictedLie(F, B, pop)


def sl2_with_basis_change(p: int) -> RestrictedLie:
    """sl2 in the standard basis (e, h, f), then rebased by h' = -h/2, e' = e, f' = -f/2."""
    if p == 2:
        raise IncompatiblePrime("sl2 rebasing needs p > 2")
    F = field_make(p, 1)
    half = F.inv(2)
    e, h, f = np.eye(3, dtype=np.int64)
    B = np.zeros((3, 3, 3), dtype=np.int64)

    def setb(i, j, vec):
        B[i, j] = vec % F.q
        B[j, i] = F.aneg(vec)

    setb(1, 0, F.ascale(2, e))          # [h, e] = 2e
    setb(1, 2, F.ascale(F.neg(2), f))   # [h, f] = -2f
    setb(0, 2, h)                       # [e, f] = h
    # rebase to x1 = e' = e, x2 = f' = -f/2, x3 = h' = -h/2
    P = np.zeros((3, 3), dtype=np.int64)
    P[0] = e
    P[1] = F.ascale(F.neg(half), f)
    P[2] = F.ascale(F.neg(half), h)
    Pinv, _ = gfarith.solve_left(F, P, np.eye(3, dtype=np.int64))
    newB = np.zeros((3, 3, 3), dtype=np.int64)
    for i in range(3):
        for j in range(3):
            br = F.tensordot(P[i], B, axes=([0], [0]))
            br = F.tensordot(P[j], br, axes=([0], [0]))
            newB[i, j] = F.matmul(br, Pinv)
    pop = np.zeros((3, 3), dtype=np.int64)
    pop[2, 2] = 1  # (h')^[p] = h', e'^[p] = f'^[p] = 0
    return RestrictedLie(F, newB, pop)


def c16_weight_exponent(label_field: FieldSpec, lam: int, p: int) -> int:
    """The unique a in [1, p-1] with lambda^(-1) = a * lambda."""
    F = label_field
    target = F.inv(lam)
    for a in range(1, p):
        if F.mul(a % p, lam) == target:
            return a
    raise InvalidParams("no integer a with lambda^(-1) = a*lambda; "
                        "lambda is not a root of z^p - delta*z")


def poly_quotient_presentation(F: FieldSpec, names: list[str], bounds: list[int],
                               power_images: list[Combo] | None = None) -> Presentation:
    """Commutative presentation k[g_1..g_n] / (g_i^{e_i} - lower term)."""
    n = len(names)
    pres = Presentation(F, list(names), [], [], [], [])
    if power_images is None:
        power_images = [{} for _ in names]
    for j in range(n):
        for i in range(j):
            pres.rules.append(((j, i), {(i, j): 1}))
            pres.relations.append({(i, j): 1, (j, i): F.neg(1)})
            pres.relation_strings.append("[%s,%s]" % (names[i], names[j]))
    for i in range(n):
        lhs = tuple([i] * bounds[i])
        pres.rules.append((lhs, dict(power_images[i])))
        rel = {lhs: 1}
        for w, c in power_images[i].items():
            rel[w] = F.add(rel.get(w, 0), F.neg(c))
        pres.relations.append({w: c for w, c in rel.items() if c})
        pres.relation_strings.append("%s^%d" % (names[i], bounds[i]))
    pres.basis_words = exponent_basis(n, bounds)
    return pres


def truncated_cyclic_algebra(p: int, order: int, name: str = "u") -> AlgebraTable:
    """k[u]/(u^order), the group algebra of a cyclic p-group when order = p^e."""
    F = field_make(p, 1)
    pres = poly_quotient_presentation(F, [name], [order])
    return build_algebra(pres)


def semidihedral_presentation(p: int = 2) -> Presentation:
    """k<y,z> / ((yz)^2 - (zy)^2, y^2, z^2 - yzy), the 8-dimensional algebra of the
    p = 2 identification of A5."""
    if p != 2:
        raise IncompatiblePrime("the semidihedral presentation is a p = 2 object")
    F = field_make(2, 1)
    Y, Z = 0, 1
    pres = Presentation(F, ["y", "z"], [], [], [], [])
    pres.rules = [
        ((Y, Y), {}),
        ((Z, Z), {(Y, Z, Y): 1}),
        ((Z, Y, Z, Y), {(Y, Z, Y, Z): 1}),
    ]
    pres.relations = [
        {(Y, Z, Y, Z): 1, (Z, Y, Z, Y): 1},
        {(Y, Y): 1},
        {(Z, Z): 1, (Y, Z, Y): 1},
    ]
    pres.relation_strings = ["(yz)^2 - (zy)^2", "y^2", "z^2 - yzy"]
    pres.basis_words = [(), (Y,), (Z,), (Y, Z), (Z, Y), (Y, Z, Y), (Z, Y, Z), (Y, Z, Y, Z)]
    return pres


def catalogue_dump(primes=(2, 3)) -> list[dict]:
    """JSON-able summary: label, p-support, relations as strings, params schema."""
    out = []
    for label in ALL_LABELS:
        entry: dict = {"label": label}
        entry["p_support"] = [p for p in primes if supported(label, p)[0]]
        schema = {}
        if label == "A5":
            schema["beta"] = "scalar in GF(p), required for p > 2"
        if label == "C16":
            schema["lambda"] = "nonzero scalar with lambda^(p-1) = delta"
            schema["delta"] = "+1 or -1 (-1 needs p > 2 and GF(p^2))"
        entry["params_schema"] = schema
        rels = {}
        for p in entry["p_support"]:
            pres = presentation_catalog(label, p)
            rels[str(p)] = list(pres.relation_strings)
        entry["relations"] = rels
        out.append(entry)
    return out
