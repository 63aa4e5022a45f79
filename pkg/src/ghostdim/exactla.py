"""Exact dense linear algebra over prime fields F_p and the rationals.

Matrices are plain numpy arrays.  Over F_p (p < 2**20) they use ``int64``
with entries kept in canonical residues ``0..p-1``; over larger primes and
over Q they use ``object`` arrays holding Python ints or ``Fraction``s.
A :class:`Field` carries the arithmetic; every routine takes it explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

_SMALL_PRIME = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """F_p for prime ``p``, or Q when ``p == 0``."""

    p: int

    def __post_init__(self):
        if self.p != 0 and not is_prime(self.p):
            raise ValueError(f"characteristic must be 0 or a prime, got {self.p}")

    @property
    def is_rational(self) -> bool:
        return self.p == 0

    @property
    def dtype(self):
        if self.p == 0 or self.p >= _SMALL_PRIME:
            return object
        return np.int64

    def __str__(self):
        return "Q" if self.p == 0 else f"F_{self.p}"

    # scalars -------------------------------------------------------------

    def scalar(self, x):
        """Canonical form: residue in 0..p-1, or a reduced Fraction."""
        if self.p == 0:
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p == 0:
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return Fraction(1) / Fraction(x)
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def neg_one_pow(self, k: int):
        return self.scalar(-1 if k % 2 else 1)

    # arrays --------------------------------------------------------------

    def array(self, data) -> np.ndarray:
        a = np.array(data, dtype=object)
        if self.p == 0:
            if a.size:
                a = np.vectorize(Fraction, otypes=[object])(a)
            return a
        if a.size:
            a = np.vectorize(self.scalar, otypes=[object])(a)
        return a.astype(self.dtype)

    def zeros(self, shape) -> np.ndarray:
        if self.p == 0:
            z = np.empty(shape, dtype=object)
            z.fill(Fraction(0))
            return z
        return np.zeros(shape, dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        z = self.zeros((n, n))
        for i in range(n):
            z[i, i] = self.scalar(1)
        return z

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p == 0:
            return a
        return a % self.p

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0:
            return self.zeros(a.shape[:-1] + b.shape[1:])
        return self.reduce(a @ b)

    def tensordot(self, a, b, axes) -> np.ndarray:
        return self.reduce(np.tensordot(a, b, axes=axes))

    def is_zero(self, a: np.ndarray) -> bool:
        return not np.any(a != 0)


def _rref_gf2(a: np.ndarray, unpack: bool = True):
    """Bit-packed elimination over F_2 (rows packed into 64-bit words)."""
    rows, cols = a.shape
    width = -(-cols // 64) * 64
    bits = np.zeros((rows, width), dtype=np.uint8)
    bits[:, :cols] = a
    packed = np.packbits(bits, axis=1)
    words = packed.view(np.uint64)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        col = (packed[r:, c >> 3] >> (7 - (c & 7))) & 1
        nz = np.flatnonzero(col)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            words[[r, i]] = words[[i, r]]
        hit = np.flatnonzero((packed[:, c >> 3] >> (7 - (c & 7))) & 1)
        hit = hit[hit != r]
        if hit.size:
            w0 = c >> 6
            words[hit, w0:] ^= words[r, w0:]
        pivots.append(c)
        r += 1
    if not unpack:
        return None, pivots
    out = np.unpackbits(packed, axis=1)[:, :cols]
    return out.astype(np.int64), pivots


def rref(F: Field, m: np.ndarray):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``."""
    a = F.reduce(np.array(m, dtype=F.dtype, copy=True))
    if a.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = a.shape
    binary = F.p == 2
    if binary and rows >= 64 and cols >= 128:
        return _rref_gf2(a.astype(np.uint8))
    if binary:
        a = a.astype(np.uint8)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        if binary:
            hit = np.flatnonzero(a[:, c])
            hit = hit[hit != r]
            if hit.size:
                a[hit, c:] ^= a[r, c:]
        else:
            piv = a[r, c]
            if piv != 1:
                a[r, c:] = F.reduce(a[r, c:] * F.inv(piv))
            col = a[:, c].copy()
            col[r] = 0
            hit = np.flatnonzero(col)
            if hit.size:
                a[hit, c:] = F.reduce(a[hit, c:] - np.outer(col[hit], a[r, c:]))
        pivots.append(c)
        r += 1
    if binary:
        a = a.astype(np.int64)
    return a, pivots


def rank(F: Field, m: np.ndarray) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    # eliminate along the shorter side
    if m.shape[0] > m.shape[1]:
        m = m.T
    if F.p == 2 and m.shape[0] >= 64 and m.shape[1] >= 128:
        return len(_rref_gf2(m.astype(np.uint8), unpack=False)[1])
    return len(rref(F, m)[1])


def kernel_basis(F: Field, m: np.ndarray) -> np.ndarray:
    """Columns spanning the right null space of ``m`` (shape cols x nullity)."""
    m = np.asarray(m)
    rows, cols = m.shape
    if rows == 0:
        return F.eye(cols)
    r, piv = rref(F, m)
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    k = F.zeros((cols, len(free)))
    if free:
        k[free, np.arange(len(free))] = F.scalar(1)
        if piv:
            k[piv] = F.reduce(-r[: len(piv)][:, free])
    return k


def image_basis(F: Field, m: np.ndarray) -> np.ndarray:
    """Columns forming a basis of the column space (in reduced echelon form)."""
    m = np.asarray(m)
    if m.shape[1] == 0:
        return F.zeros((m.shape[0], 0))
    r, piv = rref(F, m.T)
    return np.ascontiguousarray(r[: len(piv)].T)


def solve(F: Field, m: np.ndarray, b: np.ndarray):
    """Return ``x`` with ``m @ x == b`` or ``None`` when inconsistent.

    ``b`` may be a vector or a matrix of right-hand sides; with several
    right-hand sides ``None`` is returned if any column is inconsistent.
    """
    m = np.asarray(m)
    b = np.asarray(b)
    if b.shape[0] != m.shape[0]:
        raise ValueError(
            f"dimension mismatch: matrix has {m.shape[0]} rows, rhs has {b.shape[0]}"
        )
    vec = b.ndim == 1
    bb = b[:, None] if vec else b
    rows, cols = m.shape
    nrhs = bb.shape[1]
    if rows == 0:
        x = F.zeros((cols, nrhs))
        return x[:, 0] if vec else x
    aug = np.concatenate([np.asarray(m, dtype=F.dtype), np.asarray(bb, dtype=F.dtype)], axis=1)
    r, piv = rref(F, aug)
    if any(pc >= cols for pc in piv):
        return None
    x = F.zeros((cols, nrhs))
    for i, pc in enumerate(piv):
        x[pc] = r[i, cols:]
    return x[:, 0] if vec else x


class Solver:
    """Factor ``m`` once and solve many right-hand sides against it."""

    def __init__(self, F: Field, m: np.ndarray):
        self.F = F
        m = np.asarray(m, dtype=F.dtype)
        self.rows, self.cols = m.shape
        aug = np.concatenate([m, F.eye(self.rows)], axis=1)
        r, piv = rref(F, aug)
        self.piv = [pc for pc in piv if pc < self.cols]
        k = len(self.piv)
        # rows k.. of the transform annihilate the column space of m
        self.transform = r[:, self.cols :]
        self.rank = k

    def solve(self, b: np.ndarray):
        F = self.F
        vec = b.ndim == 1
        bb = np.asarray(b, dtype=F.dtype)
        bb = bb[:, None] if vec else bb
        t = F.matmul(self.transform, bb)
        if not F.is_zero(t[self.rank :]):
            return None
        x = F.zeros((self.cols, bb.shape[1]))
        for i, pc in enumerate(self.piv):
            x[pc] = t[i]
        return x[:, 0] if vec else x


def complement_columns(F: Field, sub: np.ndarray, cand: np.ndarray) -> list[int]:
    """Indices of candidate columns extending the span of ``sub`` greedily."""
    n = cand.shape[0]
    sub = np.asarray(sub, dtype=F.dtype)
    basis = sub.reshape(n, -1) if sub.size else F.zeros((n, 0))
    _, piv = rref(F, np.concatenate([basis, cand], axis=1))
    off = basis.shape[1]
    return [pc - off for pc in piv if pc >= off]


def coordinates(F: Field, basis: np.ndarray, vecs: np.ndarray):
    """Coordinates of ``vecs`` (columns) in the column basis ``basis``."""
    return solve(F, basis, vecs)
