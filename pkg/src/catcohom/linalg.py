"""
Exact dense linear algebra over prime fields and the rationals.

Matrices over F_p are numpy int64 arrays with entries reduced mod p;
matrices over Q are numpy object arrays holding ``fractions.Fraction``.
Everything is deterministic: the same input always yields the same
echelon form, pivot choices, and basis vectors.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import ParseError

# Above this many entries, GF(2) ranks switch to a bit-packed eliminator.
_PACK_THRESHOLD = 250_000


class Field:
    """A coefficient field: F_p for a prime p, or Q when ``p`` is None."""

    __slots__ = ("p",)

    def __init__(self, p=None):
        if p is not None:
            p = int(p)
            if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"not a prime: {p}")
        self.p = p

    @property
    def is_rational(self):
        return self.p is None

    @property
    def is_p_local(self):
        # F_p and Q are both valid coefficient rings for p-local statements.
        return True

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"F{self.p}"

    @staticmethod
    def parse(tag):
        tag = tag.strip()
        if tag == "Q":
            return Field(None)
        if tag.startswith("F"):
            try:
                return Field(int(tag[1:]))
            except ValueError:
                pass
        raise ParseError(f"unrecognized field tag: {tag!r}")


QQ = Field(None)
GF2 = Field(2)


def zeros(field, m, n):
    if field.is_rational:
        A = np.empty((m, n), dtype=object)
        A[:, :] = Fraction(0)
        return A
    return np.zeros((m, n), dtype=np.int64)


def eye(field, n):
    A = zeros(field, n, n)
    one = Fraction(1) if field.is_rational else 1
    for i in range(n):
        A[i, i] = one
    return A


def mat(field, rows, shape=None):
    """Build a matrix from nested lists of integers (or Fractions)."""
    if shape is not None and not rows:
        return zeros(field, *shape)
    if field.is_rational:
        m = len(rows)
        n = len(rows[0]) if m else 0
        A = np.empty((m, n), dtype=object)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                A[i, j] = Fraction(v)
        return A
    return np.array(rows, dtype=np.int64) % field.p


def reduce_entries(field, A):
    if field.is_rational:
        B = np.empty(A.shape, dtype=object)
        it = np.nditer(np.zeros(A.shape), flags=["multi_index"])
        for _ in it:
            B[it.multi_index] = Fraction(A[it.multi_index])
        return B
    return np.asarray(A, dtype=np.int64) % field.p


def matmul(field, A, B):
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} @ {B.shape}")
    if field.is_rational:
        if A.shape[0] == 0 or B.shape[1] == 0 or A.shape[1] == 0:
            return zeros(field, A.shape[0], B.shape[1])
        return A.dot(B)
    return (A @ B) % field.p


def mat_eq(field, A, B):
    if A.shape != B.shape:
        return False
    return bool(np.all(A == B))


def hstack(field, blocks):
    blocks = [b for b in blocks]
    if not blocks:
        raise ValueError("empty hstack")
    return np.hstack(blocks)


def vstack(field, blocks):
    blocks = [b for b in blocks]
    if not blocks:
        raise ValueError("empty vstack")
    return np.vstack(blocks)


def _rref_modp(A, p):
    R = (np.asarray(A, dtype=np.int64) % p).copy()
    m, n = R.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        if inv != 1:
            R[r] = (R[r] * inv) % p
        rows = np.nonzero(R[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            R[rows] = (R[rows] - np.outer(R[rows, c], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def _rref_fraction(A):
    m, n = A.shape
    R = [[Fraction(A[i, j]) for j in range(n)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        sel = None
        for i in range(r, m):
            if R[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            R[r], R[sel] = R[sel], R[r]
        pv = R[r][c]
        if pv != 1:
            R[r] = [v / pv for v in R[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    out = np.empty((m, n), dtype=object)
    for i in range(m):
        for j in range(n):
            out[i, j] = R[i][j]
    return out, pivots


def rref(field, A):
    """Reduced row-echelon form.  Returns (R, pivot_column_list)."""
    if A.shape[0] == 0 or A.shape[1] == 0:
        return A.copy(), []
    if field.is_rational:
        return _rref_fraction(A)
    return _rref_modp(A, field.p)


def _rank_gf2_packed(A):
    # Forward elimination on bit-packed rows; rank only.
    A = (np.asarray(A) % 2).astype(np.uint8)
    m, n = A.shape
    P = np.packbits(A, axis=1)
    rank = 0
    for c in range(n):
        if rank == m:
            break
        byte, bit = c >> 3, 7 - (c & 7)
        col = (P[rank:, byte] >> bit) & 1
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = rank + int(nz[0])
        if i != rank:
            P[[rank, i]] = P[[i, rank]]
        below = rank + 1 + np.nonzero((P[rank + 1 :, byte] >> bit) & 1)[0]
        if below.size:
            P[below] ^= P[rank]
        rank += 1
    return rank


def _rank_modp_forward(A, p):
    R = (np.asarray(A, dtype=np.int64) % p).copy()
    m, n = R.shape
    rank = 0
    for c in range(n):
        if rank == m:
            break
        nz = np.nonzero(R[rank:, c])[0]
        if nz.size == 0:
            continue
        i = rank + int(nz[0])
        if i != rank:
            R[[rank, i]] = R[[i, rank]]
        inv = pow(int(R[rank, c]), p - 2, p)
        if inv != 1:
            R[rank] = (R[rank] * inv) % p
        below = rank + 1 + np.nonzero(R[rank + 1 :, c])[0]
        if below.size:
            R[below] = (R[below] - np.outer(R[below, c], R[rank])) % p
        rank += 1
    return rank


def rank(field, A):
    if A.shape[0] == 0 or A.shape[1] == 0:
        return 0
    if field.is_rational:
        _, piv = _rref_fraction(A)
        return len(piv)
    if field.p == 2 and A.size > _PACK_THRESHOLD:
        return _rank_gf2_packed(A)
    return _rank_modp_forward(A, field.p)


def pivot_columns(field, A):
    _, piv = rref(field, A)
    return piv


def nullspace(field, A):
    """Columns form a deterministic basis of ker(A).  Shape (n, dim ker)."""
    m, n = A.shape
    if n == 0:
        return zeros(field, 0, 0)
    if m == 0:
        return eye(field, n)
    R, piv = rref(field, A)
    free = [c for c in range(n) if c not in set(piv)]
    B = zeros(field, n, len(free))
    one = Fraction(1) if field.is_rational else 1
    for k, fc in enumerate(free):
        B[fc, k] = one
        for r, pc in enumerate(piv):
            v = R[r, fc]
            if field.is_rational:
                B[pc, k] = -v
            else:
                B[pc, k] = (-int(v)) % field.p
    return B


def solve_columns(field, A, B):
    """Solve A X = B where the columns of A are independent.

    Raises ValueError when some column of B is outside the span of A.
    Returns X of shape (A.shape[1], B.shape[1]).
    """
    k = A.shape[1]
    if B.shape[1] == 0:
        return zeros(field, k, 0)
    aug = hstack(field, [A, B])
    R, piv = rref(field, aug)
    if len([c for c in piv if c < k]) != k or any(c >= k for c in piv):
        raise ValueError("inconsistent or rank-deficient solve")
    X = zeros(field, k, B.shape[1])
    for r, pc in enumerate(piv):
        X[pc, :] = R[r, k:]
    return X


def in_span(field, A, v):
    """Whether column vector v lies in the column span of A."""
    ra = rank(field, A)
    rav = rank(field, hstack(field, [A, v.reshape(-1, 1)]))
    return ra == rav


def quotient_reps(field, Z, B):
    """Representative columns of Z spanning (span Z + span B) / span B.

    Z, B are matrices with columns in the same ambient space.  Returns the
    subset of columns of Z (in order) that add new pivots after B.
    """
    nb = B.shape[1]
    A = hstack(field, [B, Z]) if nb else Z
    piv = pivot_columns(field, A)
    keep = [c - nb for c in piv if c >= nb]
    return Z[:, keep]


def span_dim(field, mats_list):
    """Dimension of the sum of the column spans of the given matrices."""
    mats_list = [M for M in mats_list if M.shape[1] > 0]
    if not mats_list:
        return 0
    return rank(field, hstack(field, mats_list))
