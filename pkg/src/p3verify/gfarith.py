"""Exact arithmetic over GF(p) and GF(p^2), plus dense exact linear algebra.

Scalars are encoded as plain ints in ``[0, q)``: the element a0 + a1*t of
GF(p^2) is stored as ``a0 + p*a1`` (degree-1 fields store the residue
itself).  Vectors and matrices are numpy int64 arrays of encoded scalars;
all heavy contractions go through float64 BLAS, which is exact here because
every accumulated sum stays far below 2**53.

Row conventions: vectors are rows, subspaces are row spaces, and a linear
map given by a matrix ``A`` acts as ``v @ A``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class NonPrimeError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _find_modulus(p: int) -> tuple[int, int]:
    # Smallest (c0, c1) in lexicographic order with t^2 + c1*t + c0 irreducible,
    # i.e. without a root in GF(p).
    for c0 in range(p):
        for c1 in range(p):
            if all((r * r + c1 * r + c0) % p != 0 for r in range(p)):
                return (c0, c1)
    raise AssertionError("no irreducible quadratic over GF(%d)" % p)


@dataclass(frozen=True)
class FieldSpec:
    """GF(p) or GF(p^2) with a fixed deterministic modulus polynomial."""

    p: int
    degree: int
    modulus_poly: tuple[int, ...] | None  # (c0, c1, 1) for t^2 + c1*t + c0

    @property
    def q(self) -> int:
        return self.p ** self.degree

    # -- scalar arithmetic (encoded ints) --------------------------------

    def add(self, a: int, b: int) -> int:
        p = self.p
        if self.degree == 1:
            return (a + b) % p
        return (a + b) % p + p * ((a // p + b // p) % p)

    def neg(self, a: int) -> int:
        p = self.p
        if self.degree == 1:
            return (-a) % p
        return (-a) % p + p * ((-(a // p)) % p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        p = self.p
        if self.degree == 1:
            return (a * b) % p
        a0, a1 = a % p, a // p
        b0, b1 = b % p, b // p
        c0, c1 = self.modulus_poly[0], self.modulus_poly[1]
        hi = a1 * b1
        z0 = (a0 * b0 - c0 * hi) % p
        z1 = (a0 * b1 + a1 * b0 - c1 * hi) % p
        return z0 + p * z1

    def inv(self, a: int) -> int:
        if a % self.q == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        return self.pow(a, self.q - 2)

    def pow(self, a: int, e: int) -> int:
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def from_int(self, n: int) -> int:
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def coeffs(self, a: int) -> tuple[int, ...]:
        if self.degree == 1:
            return (a % self.p,)
        return (a % self.p, a // self.p)

    def parse(self, text: str) -> int:
        """Parse a scalar written as an integer or ``a+b*t`` over GF(p^2)."""
        text = text.strip().replace(" ", "")
        if "t" not in text:
            return int(text) % self.p
        if self.degree != 2:
            raise ValueError("'t' only exists in GF(p^2) scalars: %r" % text)
        a0 = a1 = 0
        for term in text.replace("-", "+-").split("+"):
            if not term:
                continue
            if term.endswith("t"):
                coeff = term[:-1].rstrip("*")
                a1 += int(coeff) if coeff not in ("", "-") else (-1 if coeff == "-" else 1)
            else:
                a0 += int(term)
        return a0 % self.p + self.p * (a1 % self.p)

    def fmt(self, a: int) -> str:
        if self.degree == 1:
            return str(a % self.p)
        a0, a1 = a % self.p, a // self.p
        if a1 == 0:
            return str(a0)
        t = "t" if a1 == 1 else "%d*t" % a1
        return t if a0 == 0 else "%d+%s" % (a0, t)

    # -- vectorized arithmetic on encoded arrays -------------------------

    def planes(self, A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        return A % self.p, A // self.p

    def enc(self, A0: np.ndarray, A1: np.ndarray) -> np.ndarray:
        return (A0 % self.p) + self.p * (A1 % self.p)

    def aadd(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if self.degree == 1:
            return (A + B) % self.p
        a0, a1 = self.planes(A)
        b0, b1 = self.planes(B)
        return self.enc(a0 + b0, a1 + b1)

    def aneg(self, A: np.ndarray) -> np.ndarray:
        if self.degree == 1:
            return (-A) % self.p
        a0, a1 = self.planes(A)
        return self.enc(-a0, -a1)

    def asub(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        return self.aadd(A, self.aneg(B))

    def amul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if self.degree == 1:
            return (A * B) % self.p
        a0, a1 = self.planes(A)
        b0, b1 = self.planes(B)
        c0, c1 = self.modulus_poly[0], self.modulus_poly[1]
        hi = a1 * b1
        return self.enc(a0 * b0 - c0 * hi, a0 * b1 + a1 * b0 - c1 * hi)

    def ascale(self, s: int, A: np.ndarray) -> np.ndarray:
        if self.degree == 1:
            return (s * A) % self.p
        return self.amul(np.full(A.shape, s, dtype=np.int64), A)

    def azero(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def tensordot(self, A: np.ndarray, B: np.ndarray, axes) -> np.ndarray:
        """Exact tensor contraction of encoded arrays (float64 under the hood)."""
        if self.degree == 1:
            out = np.tensordot(A.astype(np.float64), B.astype(np.float64), axes)
            return (out % self.p).astype(np.int64)
        a0, a1 = (x.astype(np.float64) for x in self.planes(A))
        b0, b1 = (x.astype(np.float64) for x in self.planes(B))
        c0, c1 = self.modulus_poly[0], self.modulus_poly[1]
        hi = np.tensordot(a1, b1, axes)
        z0 = np.tensordot(a0, b0, axes) - c0 * hi
        z1 = np.tensordot(a0, b1, axes) + np.tensordot(a1, b0, axes) - c1 * hi
        return self.enc((z0 % self.p).astype(np.int64), (z1 % self.p).astype(np.int64))

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        return self.tensordot(A, B, axes=([A.ndim - 1], [0]))

    def einsum2(self, subscripts: str, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Exact two-operand einsum on encoded arrays."""
        if self.degree == 1:
            out = np.einsum(subscripts, A.astype(np.float64), B.astype(np.float64))
            return (out % self.p).astype(np.int64)
        a0, a1 = (x.astype(np.float64) for x in self.planes(A))
        b0, b1 = (x.astype(np.float64) for x in self.planes(B))
        c0, c1 = self.modulus_poly[0], self.modulus_poly[1]
        hi = np.einsum(subscripts, a1, b1)
        z0 = np.einsum(subscripts, a0, b0) - c0 * hi
        z1 = np.einsum(subscripts, a0, b1) + np.einsum(subscripts, a1, b0) - c1 * hi
        return self.enc((z0 % self.p).astype(np.int64), (z1 % self.p).astype(np.int64))

    def aouter(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        if self.degree == 1:
            return (u[:, None] * v[None, :]) % self.p
        return self.amul(np.repeat(u[:, None], len(v), axis=1),
                         np.repeat(v[None, :], len(u), axis=0))

    def aeq(self, A: np.ndarray, B: np.ndarray) -> bool:
        return bool(np.array_equal(A % self.q, B % self.q))


def field_make(p: int, degree: int) -> FieldSpec:
    """Build GF(p) or GF(p^2); the quadratic modulus is fixed deterministically."""
    if not is_prime(p):
        raise NonPrimeError("p=%d is not prime" % p)
    if degree == 1:
        return FieldSpec(p, 1, None)
    if degree == 2:
        c0, c1 = _find_modulus(p)
        return FieldSpec(p, 2, (c0, c1, 1))
    raise ValueError("degree must be 1 or 2, got %d" % degree)


# ---------------------------------------------------------------------------
# Row reduction
# ---------------------------------------------------------------------------

_PACK_THRESHOLD = 40_000  # cells; below this the generic engine wins


def rref(F: FieldSpec, M: np.ndarray, limit: int | None = None, keep: str = "all"):
    """Reduced row echelon form of an encoded matrix.

    Pivots are only sought in the first ``limit`` columns (the rest ride
    along, which is how the transform/nullspace extraction works).  Returns
    ``(R, pivots)``: R has the pivot rows first in pivot order, followed by
    the remaining (reduced) rows.  ``keep`` selects which rows to
    materialize: "all", "pivots", or "rest".
    """
    M = np.ascontiguousarray(np.asarray(M))
    if M.ndim != 2:
        raise ValueError("matrix expected")
    r, c = M.shape
    if limit is None:
        limit = c
    if r == 0 or c == 0:
        return M.astype(np.int64).copy(), []
    if F.q == 2 and M.size >= _PACK_THRESHOLD:
        return _rref_gf2(M, limit, keep)
    if F.q == 3 and M.size >= _PACK_THRESHOLD:
        return _rref_gf3(M, limit, keep)
    return _rref_generic(F, M.astype(np.int64), limit, keep)


def _row_order(keep: str, pivot_rows: list[int], rest: list[int]):
    if keep == "pivots":
        return pivot_rows
    if keep == "rest":
        return rest
    return pivot_rows + rest


def _rref_generic(F: FieldSpec, M: np.ndarray, limit: int, keep: str = "all"):
    R = M % F.q
    nrows = R.shape[0]
    is_piv = np.zeros(nrows, dtype=bool)
    pivot_rows: list[int] = []
    pivots: list[int] = []
    for col in range(limit):
        column = R[:, col]
        cand = np.nonzero((column != 0) & ~is_piv)[0]
        if cand.size == 0:
            continue
        pr = int(cand[0])
        pivval = int(R[pr, col])
        if pivval != 1:
            R[pr, col:] = F.ascale(F.inv(pivval), R[pr, col:])
        sel = np.nonzero(R[:, col] != 0)[0]
        sel = sel[sel != pr]
        if sel.size:
            # The pivot row is zero left of col, so the update window is col:.
            R[sel, col:] = F.asub(R[sel, col:], F.aouter(R[sel, col], R[pr, col:]))
        is_piv[pr] = True
        pivot_rows.append(pr)
        pivots.append(col)
    rest = [i for i in range(nrows) if not is_piv[i]]
    return R[_row_order(keep, pivot_rows, rest)], pivots


def _rref_gf2(M: np.ndarray, limit: int, keep: str = "all"):
    r, c = M.shape
    words = (c + 63) // 64
    packed = np.zeros((r, words * 8), dtype=np.uint8)
    packed[:, : (c + 7) // 8] = np.packbits((M % 2).astype(np.uint8), axis=1,
                                            bitorder="little")
    P = packed.view(np.uint64)
    is_piv = np.zeros(r, dtype=bool)
    pivot_rows: list[int] = []
    pivots: list[int] = []
    compact = keep == "pivots"  # dependent rows go to zero and can be dropped
    since = 0
    for col in range(limit):
        w, b = divmod(col, 64)
        colbits = (P[:, w] >> np.uint64(b)) & np.uint64(1)
        cand = np.nonzero((colbits == 1) & ~is_piv)[0]
        if cand.size == 0:
            continue
        pr = int(cand[0])
        sel = np.nonzero(colbits == 1)[0]
        sel = sel[sel != pr]
        if sel.size:
            P[sel, w:] ^= P[pr, w:]
        is_piv[pr] = True
        pivot_rows.append(pr)
        pivots.append(col)
        since += 1
        if compact and since >= 128:
            since = 0
            mask = is_piv | np.any(P[:, w:] != 0, axis=1)
            if mask.sum() < 0.7 * mask.size:
                newpos = np.cumsum(mask) - 1
                pivot_rows = [int(newpos[x]) for x in pivot_rows]
                P = np.ascontiguousarray(P[mask])
                is_piv = is_piv[mask]
    rest = [i for i in range(P.shape[0]) if not is_piv[i]]
    order = _row_order(keep, pivot_rows, rest)
    out = np.unpackbits(P[order].view(np.uint8), axis=1, bitorder="little")[:, :c]
    return out.astype(np.int64), pivots


def _gf3_add(lo1, hi1, lo2, hi2):
    t = (lo1 | hi2) ^ (hi1 | lo2)
    return (hi1 | hi2) ^ t, (lo1 | lo2) ^ t


def _rref_gf3(M: np.ndarray, limit: int, keep: str = "all"):
    r, c = M.shape
    Mq = M % 3
    words = (c + 63) // 64
    lo = np.zeros((r, words * 8), dtype=np.uint8)
    hi = np.zeros((r, words * 8), dtype=np.uint8)
    nbytes = (c + 7) // 8
    lo[:, :nbytes] = np.packbits((Mq == 1).astype(np.uint8), axis=1, bitorder="little")
    hi[:, :nbytes] = np.packbits((Mq == 2).astype(np.uint8), axis=1, bitorder="little")
    LO, HI = lo.view(np.uint64), hi.view(np.uint64)
    is_piv = np.zeros(r, dtype=bool)
    pivot_rows: list[int] = []
    pivots: list[int] = []
    compact = keep == "pivots"
    since = 0
    for col in range(limit):
        w, b = divmod(col, 64)
        one = np.uint64(1)
        lobits = (LO[:, w] >> np.uint64(b)) & one
        hibits = (HI[:, w] >> np.uint64(b)) & one
        cand = np.nonzero(((lobits | hibits) == 1) & ~is_piv)[0]
        if cand.size == 0:
            continue
        pr = int(cand[0])
        if hibits[pr]:
            # scale the pivot row by 2 (= negation mod 3) so the pivot is 1
            LO[pr, w:], HI[pr, w:] = HI[pr, w:].copy(), LO[pr, w:].copy()
            lobits, hibits = lobits.copy(), hibits.copy()
            lobits[pr], hibits[pr] = 1, 0
        plo, phi = LO[pr, w:], HI[pr, w:]
        sel1 = np.nonzero(lobits == 1)[0]
        sel1 = sel1[sel1 != pr]
        if sel1.size:  # subtract pivot row: add its negation (planes swapped)
            LO[sel1, w:], HI[sel1, w:] = _gf3_add(LO[sel1, w:], HI[sel1, w:], phi, plo)
        sel2 = np.nonzero(hibits == 1)[0]
        if sel2.size:  # entry 2: subtract 2*pivot = add pivot
            LO[sel2, w:], HI[sel2, w:] = _gf3_add(LO[sel2, w:], HI[sel2, w:], plo, phi)
        is_piv[pr] = True
        pivot_rows.append(pr)
        pivots.append(col)
        since += 1
        if compact and since >= 128:
            since = 0
            mask = is_piv | np.any(LO[:, w:] | HI[:, w:], axis=1)
            if mask.sum() < 0.7 * mask.size:
                newpos = np.cumsum(mask) - 1
                pivot_rows = [int(newpos[x]) for x in pivot_rows]
                LO = np.ascontiguousarray(LO[mask])
                HI = np.ascontiguousarray(HI[mask])
                is_piv = is_piv[mask]
    rest = [i for i in range(LO.shape[0]) if not is_piv[i]]
    order = _row_order(keep, pivot_rows, rest)
    ones = np.unpackbits(LO[order].view(np.uint8), axis=1, bitorder="little")[:, :c]
    twos = np.unpackbits(HI[order].view(np.uint8), axis=1, bitorder="little")[:, :c]
    return (ones + 2 * twos).astype(np.int64), pivots


# ---------------------------------------------------------------------------
# Derived solvers
# ---------------------------------------------------------------------------


def rank(F: FieldSpec, M: np.ndarray) -> int:
    _, pivots = rref(F, M)
    return len(pivots)


def row_space(F: FieldSpec, M: np.ndarray):
    """Echelonized basis of the row space: returns (rows, pivots)."""
    R, pivots = rref(F, M, keep="pivots")
    return R, pivots


def rref_with_transform(F: FieldSpec, M: np.ndarray):
    """RREF plus the row transform: returns (R, pivots, T) with T @ M = R."""
    r, c = M.shape
    aug = np.zeros((r, c + r), dtype=np.int64)
    aug[:, :c] = M % F.q
    aug[np.arange(r), c + np.arange(r)] = 1
    full, pivots = rref(F, aug, limit=c)
    return full[:, :c], pivots, full[:, c:]


def left_nullspace_with_rank(F: FieldSpec, M: np.ndarray) -> tuple[np.ndarray, int]:
    """Basis (rows) of {x : x @ M = 0} plus rank(M), from one elimination.

    Computed from the RREF of the transpose: free columns give the kernel
    vectors directly, with no augmented-identity bookkeeping.
    """
    r, c = M.shape
    Mt = np.ascontiguousarray(np.asarray(M).T)
    R, pivots = rref(F, Mt, keep="pivots")
    rank = len(pivots)
    free = [j for j in range(r) if j not in set(pivots)]
    if not free:
        return np.zeros((0, r), dtype=np.int64), rank
    NS = np.zeros((len(free), r), dtype=np.int64)
    NS[np.arange(len(free)), free] = 1
    if rank:
        NS[:, pivots] = F.aneg(R[:rank, free].T)
    return NS, rank


def left_nullspace(F: FieldSpec, M: np.ndarray) -> np.ndarray:
    """Basis (rows) of {x : x @ M = 0}."""
    return left_nullspace_with_rank(F, M)[0]


class GrowingEchelon:
    """Incremental echelon accumulator for greedy independent-row selection."""

    def __init__(self, F: FieldSpec, ambient: int):
        self.F = F
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []
        self.ambient = ambient

    def add(self, row: np.ndarray) -> bool:
        F = self.F
        r = row % F.q
        for er, pc in zip(self.rows, self.pivots):
            c = int(r[pc])
            if c:
                r = F.asub(r, F.ascale(c, er))
        nz = np.nonzero(r % F.q)[0]
        if nz.size == 0:
            return False
        pc = int(nz[0])
        r = F.ascale(F.inv(int(r[pc])), r)
        self.rows.append(r)
        self.pivots.append(pc)
        return True


def right_nullspace(F: FieldSpec, M: np.ndarray) -> np.ndarray:
    """Basis (rows) of {x : M @ x^T = 0}, i.e. the kernel of v -> M @ v."""
    return left_nullspace(F, np.ascontiguousarray(M.T))


def reduce_against(F: FieldSpec, rows: np.ndarray, R: np.ndarray, pivots) -> tuple[np.ndarray, np.ndarray]:
    """Reduce rows against an RREF basis; returns (coefficients, residuals).

    Chunked so that very wide reductions never materialize multi-GB floats.
    """
    rows = np.atleast_2d(rows) % F.q
    if len(pivots) == 0:
        return np.zeros((rows.shape[0], 0), dtype=np.int64), rows
    pivots = list(pivots)
    coeffs = rows[:, pivots]
    Rp = R[: len(pivots)]
    n = rows.shape[0]
    chunk = max(1, (1 << 24) // max(rows.shape[1], 1))
    if n <= chunk:
        resid = F.asub(rows, F.matmul(coeffs, Rp))
        return coeffs, resid
    resid = np.empty_like(rows)
    for s in range(0, n, chunk):
        resid[s:s + chunk] = F.asub(rows[s:s + chunk], F.matmul(coeffs[s:s + chunk], Rp))
    return coeffs, resid


def solve_left(F: FieldSpec, A: np.ndarray, B: np.ndarray):
    """Solve X @ A = B; returns (particular X or None, nullspace basis rows)."""
    R, pivots, T = rref_with_transform(F, A)
    nullsp = T[len(pivots):]
    B2 = np.atleast_2d(B)
    coeffs, resid = reduce_against(F, B2, R, pivots)
    if np.any(resid % F.q):
        return None, nullsp
    X = F.matmul(coeffs, T[: len(pivots)])
    if np.asarray(B).ndim == 1:
        X = X[0]
    return X, nullsp


def linsolve(F: FieldSpec, A: np.ndarray, b: np.ndarray):
    """Exact Gaussian elimination for x @ A = b (row-vector convention).

    Returns ``(particular solution or None, nullspace basis)`` where the
    nullspace rows are independent and span {x : x @ A = 0}.
    """
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if b.shape[-1] != A.shape[1]:
        raise ValueError("shape mismatch: A is %s, b is %s" % (A.shape, b.shape))
    return solve_left(F, A, b)


def in_row_space(F: FieldSpec, rows: np.ndarray, R: np.ndarray, pivots) -> bool:
    _, resid = reduce_against(F, rows, R, pivots)
    return not np.any(resid % F.q)
