"""Exact dense linear algebra over prime fields GF(p).

Matrices are plain 2-D numpy integer arrays whose entries are residues in
``[0, p)``; every function takes the modulus explicitly.  Vectors are 1-D
arrays, and collections of vectors are returned as 2-D arrays with one vector
per row.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# float64 holds integers exactly below this bound
_EXACT_FLOAT = 2**53


def _check_prime(p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"modulus must be prime, got {p}")


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """Multiplicative inverses mod p, with 0 mapped to 0."""
    _check_prime(p)
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    inv.flags.writeable = False
    return inv


@dataclass(frozen=True)
class FieldElement:
    """A residue class in GF(p)."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError(f"field mismatch: GF({self.p}) vs GF({other.p})")
            return other.value
        if isinstance(other, (int, np.integer)):
            return int(other)
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FieldElement(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FieldElement(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FieldElement(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        return NotImplemented if v is NotImplemented else FieldElement(self.value * v, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FieldElement(pow(self.value, self.p - 2, self.p), self.p)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * FieldElement(v, self.p).inverse()

    def __int__(self):
        return self.value


def as_matrix(m, p: int) -> np.ndarray:
    """Copy ``m`` into a 2-D int64 array reduced mod p."""
    a = np.array(m, dtype=np.int64)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    return a % p


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact ``a @ b mod p`` for reduced integer arrays (batched shapes allowed).

    Goes through float64 BLAS whenever the accumulated sums provably stay
    below 2**53; otherwise falls back to int64 object-free arithmetic.
    """
    k = a.shape[-1]
    if (p - 1) ** 2 * max(k, 1) < _EXACT_FLOAT:
        out = np.matmul(a.astype(np.float64), b.astype(np.float64))
        return np.mod(out, p).astype(np.int64)
    return np.matmul(a.astype(np.int64), b.astype(np.int64)) % p


def rref(m, p: int) -> tuple[np.ndarray, int, list[int]]:
    """Reduced row-echelon form over GF(p).

    Pivots are chosen as the first nonzero entry in each column, so the
    result is deterministic.  Returns ``(reduced, rank, pivots)``.
    """
    inv = inverse_table(p)
    a = as_matrix(m, p)
    rows, cols = a.shape
    r = 0
    pivots: list[int] = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r, c:] = a[r, c:] * inv[a[r, c]] % p
        col = a[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(col[hit], a[r, c:])) % p
        pivots.append(c)
        r += 1
    return a, r, pivots


class EchelonBasis:
    """Incrementally grown row space kept in reduced row-echelon form.

    Local mutable helper for spinning and for tall eliminations; the public
    functions of this module never expose one.
    """

    def __init__(self, ncols: int, p: int):
        self.ncols = ncols
        self.p = p
        self.rows = np.zeros((0, ncols), dtype=np.int64)
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, vectors: np.ndarray) -> np.ndarray:
        """Residues of ``vectors`` (rows) modulo the current span."""
        x = np.atleast_2d(np.asarray(vectors, dtype=np.int64)) % self.p
        if not self.pivots:
            return x
        return (x - matmul_mod(x[:, self.pivots], self.rows, self.p)) % self.p

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def add(self, vectors: np.ndarray) -> np.ndarray:
        """Absorb ``vectors``; return the newly added rref rows."""
        res = self.reduce(vectors)
        res = res[res.any(axis=1)]
        if res.shape[0] == 0:
            return res
        red, rank, piv = rref(res, self.p)
        new = red[:rank]
        if self.pivots:
            # clear the new pivot columns out of the old rows
            self.rows = (self.rows - matmul_mod(self.rows[:, piv], new, self.p)) % self.p
        rows = np.vstack([self.rows, new])
        pivots = self.pivots + piv
        order = np.argsort(pivots, kind="stable")
        self.rows = rows[order]
        self.pivots = [pivots[i] for i in order]
        return new


def row_space(m, p: int, chunk: int | None = None) -> tuple[np.ndarray, list[int]]:
    """RREF basis (nonzero rows only) and pivots of the row space of ``m``.

    Tall matrices are processed in row chunks so the working set stays at
    ``O(cols**2)``; the result equals ``rref(m)`` with zero rows dropped.
    """
    a = as_matrix(m, p)
    rows, cols = a.shape
    if chunk is None:
        chunk = max(4 * cols, 256)
    if rows <= chunk:
        red, rank, piv = rref(a, p)
        return red[:rank], piv
    eb = EchelonBasis(cols, p)
    for start in range(0, rows, chunk):
        eb.add(a[start : start + chunk])
        if eb.dim == cols:
            break
    return eb.rows, list(eb.pivots)


def rank(m, p: int) -> int:
    return len(row_space(m, p)[1])


def _kernel_from_rref(red: np.ndarray, pivots: list[int], cols: int, p: int) -> np.ndarray:
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    basis[np.arange(len(free)), free] = 1
    if pivots and free:
        basis[:, pivots] = (-red[: len(pivots)][:, free].T) % p
    return basis


def kernel(m, p: int) -> np.ndarray:
    """Basis of the right null space ``{v : m v = 0}``, one vector per row."""
    a = as_matrix(m, p)
    red, piv = row_space(a, p)
    return _kernel_from_rref(red, piv, a.shape[1], p)


def left_kernel(m, p: int) -> np.ndarray:
    """Basis of ``{v : v m = 0}``, one vector per row."""
    return kernel(as_matrix(m, p).T, p)


def solve(a, b, p: int) -> np.ndarray | None:
    """One solution of ``a x = b``, or ``None`` if ``b`` is outside the column space."""
    a = as_matrix(a, p)
    b = np.asarray(b, dtype=np.int64).reshape(-1) % p
    if a.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape[0]} rows vs rhs of length {b.shape[0]}")
    cols = a.shape[1]
    red, rk, piv = rref(np.hstack([a, b[:, None]]), p)
    if piv and piv[-1] == cols:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = red[i, cols]
    return x


def inverse(a, p: int) -> np.ndarray:
    a = as_matrix(a, p)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("inverse of a non-square matrix")
    red, rk, piv = rref(np.hstack([a, np.eye(n, dtype=np.int64)]), p)
    if rk < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("matrix is singular")
    return red[:, n:]


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of GF(p)^n with a canonical (rref) basis."""

    ambient_dim: int
    basis: np.ndarray
    p: int

    @classmethod
    def span(cls, vectors, ambient_dim: int, p: int) -> "Subspace":
        v = np.asarray(vectors, dtype=np.int64).reshape(-1, ambient_dim) % p
        if v.shape[0] == 0:
            red = np.zeros((0, ambient_dim), dtype=np.int64)
        else:
            red, _ = row_space(v, p)
        red = np.array(red)
        red.flags.writeable = False
        return cls(ambient_dim, red, p)

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls.span(np.zeros((0, ambient_dim)), ambient_dim, p)

    @classmethod
    def full(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls.span(np.eye(ambient_dim, dtype=np.int64), ambient_dim, p)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> list[int]:
        return [int(np.flatnonzero(row)[0]) for row in self.basis]

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64).reshape(-1) % self.p
        if self.dim == 0:
            return not v.any()
        res = (v - matmul_mod(v[self.pivots][None, :], self.basis, self.p)[0]) % self.p
        return not res.any()

    def contains_all(self, vectors) -> bool:
        v = np.atleast_2d(np.asarray(vectors, dtype=np.int64)) % self.p
        if self.dim == 0:
            return not v.any()
        res = (v - matmul_mod(v[:, self.pivots], self.basis, self.p)) % self.p
        return not res.any()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.p == other.p
            and self.ambient_dim == other.ambient_dim
            and np.array_equal(self.basis, other.basis)
        )

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim}, p={self.p})"


def subspace_sum_and_membership(vectors, probe, p: int) -> tuple[int, bool]:
    """Dimension of ``span(vectors)`` and whether ``probe`` lies in it."""
    probe = np.asarray(probe, dtype=np.int64).reshape(-1)
    n = probe.shape[0]
    vs = np.asarray(vectors, dtype=np.int64).reshape(-1, n) if len(vectors) else np.zeros((0, n))
    sub = Subspace.span(vs, n, p)
    return sub.dim, sub.contains(probe)
