"""Noncommutative word rewriting and algebra construction from presentations.

A :class:`Presentation` is a free algebra on named generators together with
oriented rewrite rules (lhs word -> linear combination of words) and a
claimed normal-form basis.  ``normalize_word`` reduces at the leftmost
reducible position until no rule applies; termination is enforced by a hard
step cap rather than a termination order, and a cap hit is a certification
failure, never a silent fallback.

``build_algebra`` turns a presentation into a certified
:class:`~p3verify.algebracore.AlgebraTable`: normal forms of
basis-word-times-generator give right-multiplication matrices, the full
multiplication table follows by chaining them along the (prefix-closed)
basis, and the certificate re-checks the unit, every original relation and
associativity.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebracore import AlgebraTable, CertificateFailure, Combo, Word
from .gfarith import FieldSpec


class RewriteCapExceeded(CertificateFailure):
    """The rewrite step cap was hit; the rule system is not (yet) terminating."""


REWRITE_STEP_CAP = 10 ** 6


@dataclass
class Presentation:
    field: FieldSpec
    generators: list[str]
    rules: list[tuple[Word, Combo]]
    relations: list[Combo]
    relation_strings: list[str]
    basis_words: list[Word]
    hopf: object | None = None
    meta: dict = dc_field(default_factory=dict)

    def gen_index(self, name: str) -> int:
        return self.generators.index(name)

    def word(self, text: str) -> Word:
        """Parse a word like ``'yx'`` or ``'x^2 y'`` into generator indices."""
        out: list[int] = []
        i = 0
        text = text.replace(" ", "")
        while i < len(text):
            name = text[i]
            i += 1
            exp = 1
            if i < len(text) and text[i] == "^":
                j = i + 1
                while j < len(text) and text[j].isdigit():
                    j += 1
                exp = int(text[i + 1:j])
                i = j
            out.extend([self.gen_index(name)] * exp)
        return tuple(out)

    def combo(self, terms: dict[str, int]) -> Combo:
        """Build a combination from {word-string: integer coefficient}."""
        out: Combo = {}
        for text, c in terms.items():
            w = self.word(text)
            out[w] = self.field.add(out.get(w, 0), self.field.from_int(c))
        return {w: c for w, c in out.items() if c}


def _leftmost_redex(rules, w: Word):
    for pos in range(len(w)):
        for lhs, rhs in rules:
            if w[pos:pos + len(lhs)] == lhs:
                return pos, lhs, rhs
    return None


def normalize_word(pres: Presentation, word, cap: int = REWRITE_STEP_CAP) -> Combo:
    """Rewrite a word (or combination) to a combination of normal words.

    Reduction always happens at the leftmost reducible position with the
    first matching rule, so the derivation of each word is deterministic and
    normal forms of intermediate words can be cached on the presentation
    (the identity y x^i = (x-1)^i y and its relatives come out of this cache
    for free instead of being re-derived along every branch).
    """
    if isinstance(word, dict):
        items = [(tuple(w), c) for w, c in word.items() if c]
    else:
        items = [(tuple(word), 1)]
    F = pres.field
    rules = pres.rules
    cache: dict[Word, Combo] = pres.meta.setdefault("_nf_cache", {})
    steps = 0

    def expand(w: Word):
        redex = _leftmost_redex(rules, w)
        if redex is None:
            return None
        pos, lhs, rhs = redex
        pre, post = w[:pos], w[pos + len(lhs):]
        return [(pre + rw + post, rc) for rw, rc in rhs.items()]

    def nf(root: Word) -> Combo:
        nonlocal steps
        if root in cache:
            return cache[root]
        stack = [(root, False)]
        grey: set[Word] = set()
        while stack:
            w, expanded = stack.pop()
            if w in cache:
                continue
            children = expand(w)
            if children is None:
                cache[w] = {w: 1}
                continue
            if not expanded:
                if w in grey:
                    raise RewriteCapExceeded("cyclic rewriting at %r" % (w,))
                grey.add(w)
                stack.append((w, True))
                stack.extend((cw, False) for cw, _ in children if cw not in cache)
                continue
            if any(cw not in cache for cw, _ in children):
                raise RewriteCapExceeded("non-terminating rewriting at %r" % (w,))
            steps += 1
            if steps > cap:
                raise RewriteCapExceeded("rewrite cap %d exceeded" % cap)
            cache[w] = _combine(F, children, cache)
            grey.discard(w)
        return cache[root]

    out: Combo = {}
    for w, coeff in items:
        for nw, nc in nf(w).items():
            s = F.add(out.get(nw, 0), F.mul(coeff, nc))
            if s:
                out[nw] = s
            else:
                out.pop(nw, None)
    return out


def _combine(F: FieldSpec, children, cache) -> Combo:
    out: Combo = {}
    for cw, cc in children:
        for nw, nc in cache[cw].items():
            s = F.add(out.get(nw, 0), F.mul(cc, nc))
            if s:
                out[nw] = s
            else:
                out.pop(nw, None)
    return out


def exponent_basis(ngens: int, bounds: list[int]) -> list[Word]:
    """All words g_0^{a_0} ... g_{n-1}^{a_{n-1}} with a_i < bounds[i], graded-lex order."""
    words: list[Word] = [()]
    for g in range(ngens):
        words = [w + (g,) * a for w in words for a in range(bounds[g])]
    # reorder so exponents of the FIRST generator vary slowest
    def key(w: Word):
        return tuple(sum(1 for x in w if x == g) for g in range(ngens))
    words = sorted(set(words), key=key)
    return words


def build_algebra(pres: Presentation, labels: list[str] | None = None,
                  assoc_policy: str = "auto", seed: int = 0) -> AlgebraTable:
    """Construct and certify the algebra presented by ``pres``."""
    F = pres.field
    basis = list(pres.basis_words)
    index = {w: i for i, w in enumerate(basis)}
    if () not in index:
        raise CertificateFailure("claimed basis must contain the empty word")
    d = len(basis)
    for w in basis:
        if w and w[:-1] not in index:
            raise CertificateFailure("claimed basis is not prefix-closed at %r" % (w,))

    def as_vector(combo: Combo) -> np.ndarray:
        v = np.zeros(d, dtype=np.int64)
        for w, c in combo.items():
            if w not in index:
                raise CertificateFailure("normal form left the claimed basis: %r" % (w,))
            v[index[w]] = c
        return v

    ngens = len(pres.generators)
    R = np.zeros((ngens, d, d), dtype=np.int64)
    for i, w in enumerate(basis):
        nf = normalize_word(pres, w)
        if nf != {w: 1}:
            raise CertificateFailure("claimed basis word %r is not in normal form" % (w,))
        for g in range(ngens):
            R[g, i] = as_vector(normalize_word(pres, w + (g,)))

    C = np.zeros((d, d, d), dtype=np.int64)
    C[:, index[()], :] = np.eye(d, dtype=np.int64)
    order = sorted(range(d), key=lambda i: len(basis[i]))
    for j in order:
        w = basis[j]
        if not w:
            continue
        parent = index[w[:-1]]
        C[:, j, :] = F.matmul(C[:, parent, :], R[w[-1]])

    unit = np.zeros(d, dtype=np.int64)
    unit[index[()]] = 1
    gens = {}
    for g, name in enumerate(pres.generators):
        gens[name] = as_vector(normalize_word(pres, (g,)))
    labels = labels or [pretty_word(pres, w) for w in basis]
    A = AlgebraTable(F, d, labels, C, unit, gens, presentation=pres,
                     meta={"generator_order": list(pres.generators)})

    A.check_unit()
    images = [gens[n] for n in pres.generators]
    for idx, rel in enumerate(pres.relations):
        val = A.evaluate_combo(rel, images)
        if np.any(val % F.q):
            raise CertificateFailure(
                "relation %s does not vanish in the built table" % pres.relation_strings[idx])
    A.check_associativity(policy=assoc_policy, seed=seed)
    return A


def pretty_word(pres: Presentation, w: Word) -> str:
    if not w:
        return "1"
    out = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        name = pres.generators[w[i]]
        out.append(name if j - i == 1 else "%s^%d" % (name, j - i))
        i = j
    return " ".join(out)


def pretty_combo(pres: Presentation, combo: Combo) -> str:
    if not combo:
        return "0"
    parts = []
    for w in sorted(combo, key=lambda u: (len(u), u)):
        c = combo[w]
        cs = pres.field.fmt(c)
        parts.append(pretty_word(pres, w) if cs == "1" else "%s*%s" % (cs, pretty_word(pres, w)))
    return " + ".join(parts)
