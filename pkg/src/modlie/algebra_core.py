"""Finite-dimensional algebras over GF(p) given by structure constants.

An algebra of dimension ``n`` is an ``(n, n, n)`` table ``t`` with
``e_i * e_j = sum_k t[i, j, k] e_k``.  The table is stored densely (a
125-dimensional algebra over GF(5) is 2 MB as ``uint8``); the exhaustive
identity checks work on sparse views of it, one first index at a time.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
import scipy.sparse as sp

from .ff_linalg import Subspace, kernel, matmul_mod, row_space, solve


@dataclass(frozen=True)
class CheckResult:
    """Outcome of an exhaustive check; ``witness`` is the first failing index tuple."""

    ok: bool
    witness: tuple[int, ...] | None = None
    detail: str = ""
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True, eq=False)
class AlgebraStructure:
    p: int
    table: np.ndarray
    labels: tuple[str, ...] = ()
    name: str = "A"
    flags: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        t = np.asarray(self.table)
        if t.ndim != 3 or not (t.shape[0] == t.shape[1] == t.shape[2]):
            raise ValueError(f"structure table must be (n, n, n), got {t.shape}")
        t = (t.astype(np.int64) % self.p).astype(np.uint8)
        t.flags.writeable = False
        object.__setattr__(self, "table", t)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"e{i}" for i in range(t.shape[0])))
        elif len(self.labels) != t.shape[0]:
            raise ValueError("one label per basis vector required")
        else:
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def dim(self) -> int:
        return self.table.shape[0]

    @classmethod
    def from_entries(cls, p, dim, entries, labels=(), name="A") -> "AlgebraStructure":
        """Build from ``(i, j, k, v)`` tuples; repeated keys accumulate."""
        t = np.zeros((dim, dim, dim), dtype=np.int64)
        for i, j, k, v in entries:
            t[i, j, k] += v
        return cls(p, t, labels, name)

    @classmethod
    def zero(cls, p: int, dim: int, name="0") -> "AlgebraStructure":
        return cls(p, np.zeros((dim, dim, dim), dtype=np.int64), name=name)

    def renamed(self, name: str, labels: Sequence[str] | None = None):
        return type(self)(self.p, self.table, tuple(labels) if labels else self.labels, name)

    def product(self, i: int, j: int) -> np.ndarray:
        return self.table[i, j].astype(np.int64)

    def nnz(self) -> int:
        return int(np.count_nonzero(self.table))

    # views used by the contraction engine
    @cached_property
    def _dense(self) -> np.ndarray:
        return self.table.astype(np.float64)

    @cached_property
    def _by_first(self) -> np.ndarray:
        # [m, (c, k)] = t[m, c, k]
        n = self.dim
        return self._dense.reshape(n, n * n)

    @cached_property
    def _by_second(self) -> np.ndarray:
        # [m, (c, k)] = t[c, m, k]
        n = self.dim
        return np.ascontiguousarray(self._dense.transpose(1, 0, 2)).reshape(n, n * n)

    @cached_property
    def _sparse_flat(self) -> sp.csr_matrix:
        n = self.dim
        return sp.csr_matrix(self._dense.reshape(n * n, n))

    def _first_slice(self, a: int) -> sp.csr_matrix:
        n = self.dim
        return self._sparse_flat[a * n : (a + 1) * n]

    def _mid_slice(self, a: int) -> sp.csr_matrix:
        n = self.dim
        return self._sparse_flat[np.arange(n) * n + a]


def _check_same_field(*algs: AlgebraStructure) -> None:
    ps = {a.p for a in algs}
    if len(ps) != 1:
        raise ValueError(f"field mismatch: {sorted(ps)}")


def _check_same_dim(*algs: AlgebraStructure) -> None:
    ds = {a.dim for a in algs}
    if len(ds) != 1:
        raise ValueError(f"dimension mismatch: {sorted(ds)}")


def multiply(alg: AlgebraStructure, u, v) -> np.ndarray:
    """Bilinear product of coordinate vectors ``u`` and ``v``."""
    u = np.asarray(u, dtype=np.int64).reshape(-1)
    v = np.asarray(v, dtype=np.int64).reshape(-1)
    n = alg.dim
    if u.shape[0] != n or v.shape[0] != n:
        raise ValueError(f"dimension mismatch: vectors of length {u.shape[0]}, {v.shape[0]} vs dim {n}")
    left = matmul_mod(u[None, :] % alg.p, alg.table.reshape(n, n * n), alg.p).reshape(n, n)
    return matmul_mod(v[None, :] % alg.p, left, alg.p)[0]


def basis_vector(n: int, i: int) -> np.ndarray:
    e = np.zeros(n, dtype=np.int64)
    e[i] = 1
    return e


# ---------------------------------------------------------------------------
# triple contractions: for a fixed first index a, every term is an (n, n, n)
# array indexed [b, c, k] (k = output coordinate)
# ---------------------------------------------------------------------------


def _outer_of_inner_first(x: AlgebraStructure, y: AlgebraStructure, a: int) -> np.ndarray:
    """x(y(a, b), c)."""
    n = x.dim
    return np.asarray(y._first_slice(a) @ x._by_first).reshape(n, n, n)


def _outer_of_inner_mid(x: AlgebraStructure, y: AlgebraStructure, a: int) -> np.ndarray:
    """x(y(b, c), a)."""
    n = x.dim
    return np.asarray(y._sparse_flat @ x._dense[:, a, :]).reshape(n, n, n)


def _outer_of_inner_last(x: AlgebraStructure, y: AlgebraStructure, a: int) -> np.ndarray:
    """x(y(c, a), b)."""
    n = x.dim
    return np.asarray(y._mid_slice(a) @ x._by_first).reshape(n, n, n).transpose(1, 0, 2)


def _left_action(x: AlgebraStructure, y: AlgebraStructure, a: int) -> np.ndarray:
    """x(a, y(b, c))."""
    n = x.dim
    return np.asarray(y._sparse_flat @ x._dense[a]).reshape(n, n, n)


def _right_slot_action(x: AlgebraStructure, y: AlgebraStructure, a: int) -> np.ndarray:
    """z[b, c] = x(c, y(a, b))."""
    n = x.dim
    return np.asarray(y._first_slice(a) @ x._by_second).reshape(n, n, n)


def _jacobi_slice(x: AlgebraStructure, a: int) -> np.ndarray:
    return (
        _outer_of_inner_first(x, x, a)
        + _outer_of_inner_mid(x, x, a)
        + _outer_of_inner_last(x, x, a)
    )


def _associator_slice(x: AlgebraStructure, a: int) -> np.ndarray:
    return _outer_of_inner_first(x, x, a) - _left_action(x, x, a)


def _workers() -> int:
    raw = os.environ.get("MODLIE_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def scan_triples(
    slice_fn: Callable[[int], np.ndarray],
    n: int,
    p: int,
    ordered: bool,
    workers: int | None = None,
) -> tuple[tuple[int, int, int] | None, int]:
    """Find the lexicographically first triple where ``slice_fn`` is nonzero mod p.

    ``slice_fn(a)`` returns the ``[b, c, k]`` array for first index ``a``.
    With ``ordered=False`` only triples ``a < b < c`` are inspected.
    Returns ``(witness, number_of_triples_checked)``.
    """
    if ordered:
        total = n**3
        mask = None
    else:
        total = n * (n - 1) * (n - 2) // 6
        mask = np.triu(np.ones((n, n), dtype=bool), k=1)

    def first_in(a: int):
        vals = np.mod(slice_fn(a), p).any(axis=2)
        if mask is not None:
            vals &= mask
            vals[: a + 1, :] = False
        hits = np.flatnonzero(vals)
        if hits.size == 0:
            return None
        b, c = divmod(int(hits[0]), n)
        return (a, b, c)

    workers = workers or _workers()
    if workers <= 1 or n < 2 * workers:
        for a in range(n):
            w = first_in(a)
            if w is not None:
                return w, total
        return None, total
    with ThreadPoolExecutor(max_workers=workers) as pool:
        found = [w for w in pool.map(first_in, range(n)) if w is not None]
    return (min(found) if found else None), total


# ---------------------------------------------------------------------------
# identity checks
# ---------------------------------------------------------------------------


def check_commutative(alg: AlgebraStructure) -> CheckResult:
    t = alg.table.astype(np.int64)
    diff = (t - t.transpose(1, 0, 2)) % alg.p
    bad = np.argwhere(np.triu(diff.any(axis=2), k=1))
    ok = bad.shape[0] == 0
    alg.flags["commutative"] = ok
    n = alg.dim
    return CheckResult(ok, None if ok else tuple(int(x) for x in bad[0]), "commutativity", n * (n + 1) // 2)


def check_associative(alg: AlgebraStructure) -> CheckResult:
    w, total = scan_triples(lambda a: _associator_slice(alg, a), alg.dim, alg.p, ordered=True)
    alg.flags["associative"] = w is None
    return CheckResult(w is None, w, "associativity", total)


def check_commutative_associative(alg: AlgebraStructure) -> CheckResult:
    comm = check_commutative(alg)
    if not comm:
        return CheckResult(False, comm.witness, "not commutative", comm.checked)
    assoc = check_associative(alg)
    if not assoc:
        return CheckResult(False, assoc.witness, "not associative", assoc.checked)
    return CheckResult(True, None, "commutative and associative", comm.checked + assoc.checked)


def check_anticommutative(alg: AlgebraStructure) -> CheckResult:
    """e_i e_j = -e_j e_i for all i <= j (so e_i e_i = 0)."""
    t = alg.table.astype(np.int64)
    bad_sum = np.triu(((t + t.transpose(1, 0, 2)) % alg.p).any(axis=2), k=1)
    diag = t[np.arange(alg.dim), np.arange(alg.dim)].any(axis=1)
    n = alg.dim
    witness = None
    for i in range(n):
        if diag[i]:
            witness = (i, i)
            break
        row = np.flatnonzero(bad_sum[i])
        if row.size:
            witness = (i, int(row[0]))
            break
    ok = witness is None
    alg.flags["anticommutative"] = ok
    return CheckResult(ok, witness, "anticommutativity", n * (n + 1) // 2)


def check_jacobi(alg: AlgebraStructure, workers: int | None = None) -> CheckResult:
    """Exhaustive Jacobi identity [[a,b],c] + [[b,c],a] + [[c,a],b] = 0.

    For an anticommutative table the unordered triples a < b < c suffice
    (degenerate triples vanish identically when p != 2); otherwise every
    ordered triple is examined.
    """
    anti = check_anticommutative(alg).ok and alg.p != 2
    w, total = scan_triples(
        lambda a: _jacobi_slice(alg, a), alg.dim, alg.p, ordered=not anti, workers=workers
    )
    alg.flags["jacobi"] = w is None
    scope = "unordered triples" if anti else "ordered triples"
    return CheckResult(w is None, w, f"Jacobi identity over {scope}", total)


def is_lie(alg: AlgebraStructure) -> bool:
    return check_anticommutative(alg).ok and check_jacobi(alg).ok


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def sum_of_structures(structures: Sequence[AlgebraStructure], coefficients, name: str | None = None):
    """Coefficient-weighted entrywise sum of structures on one vector space."""
    if not structures:
        raise ValueError("need at least one structure")
    if len(structures) != len(coefficients):
        raise ValueError("one coefficient per structure required")
    _check_same_field(*structures)
    _check_same_dim(*structures)
    p = structures[0].p
    total = np.zeros(structures[0].table.shape, dtype=np.int64)
    for s, c in zip(structures, coefficients):
        total += (int(c) % p) * s.table.astype(np.int64)
    if name is None:
        name = "+".join(f"{int(c) % p}{s.name}" for s, c in zip(structures, coefficients))
    return AlgebraStructure(p, total, structures[0].labels, name)


def tensor_product(a: AlgebraStructure, b: AlgebraStructure, name: str | None = None):
    """Tensor product algebra; basis index of u_i (x) v_j is i * dim(b) + j."""
    _check_same_field(a, b)
    ta = a.table.astype(np.int64)
    tb = b.table.astype(np.int64)
    n = a.dim * b.dim
    t = np.einsum("ikm,jln->ijklmn", ta, tb).reshape(n, n, n)
    labels = tuple(f"{la}⊗{lb}" for la in a.labels for lb in b.labels)
    return AlgebraStructure(a.p, t, labels, name or f"({a.name})⊗({b.name})")


def unit_element(alg: AlgebraStructure) -> np.ndarray | None:
    """The two-sided unit, if one exists."""
    n = alg.dim
    t = alg.table.astype(np.int64)
    # u e_j = e_j and e_j u = e_j, linear in u
    left = t.transpose(1, 2, 0).reshape(n * n, n)
    right = t.transpose(0, 2, 1).reshape(n * n, n)
    target = np.eye(n, dtype=np.int64).reshape(n * n)
    return solve(np.vstack([left, right]), np.concatenate([target, target]), alg.p)


def derived_subalgebra(alg: AlgebraStructure) -> Subspace:
    """Span of all products e_i e_j."""
    n = alg.dim
    red, _ = row_space(alg.table.reshape(n * n, n).astype(np.int64), alg.p)
    return Subspace.span(red, n, alg.p)


def center(alg: AlgebraStructure) -> Subspace:
    """Kernel of v -> ([v, e_j])_j."""
    n = alg.dim
    # row (j, k), column i: coefficient of e_k in [e_i, e_j]
    m = alg.table.transpose(1, 2, 0).reshape(n * n, n).astype(np.int64)
    return Subspace.span(kernel(m, alg.p), n, alg.p)


def _products_with(alg: AlgebraStructure, vectors: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = alg.dim
    t = alg.table.astype(np.int64)
    w = np.atleast_2d(vectors) % alg.p
    left = matmul_mod(w, t.reshape(n, n * n), alg.p).reshape(-1, n)
    right = matmul_mod(w, t.transpose(1, 0, 2).reshape(n, n * n), alg.p).reshape(-1, n)
    return left, right


def is_ideal(alg: AlgebraStructure, sub: Subspace) -> bool:
    if sub.dim == 0:
        return True
    left, right = _products_with(alg, sub.basis)
    return sub.contains_all(left) and sub.contains_all(right)


def quotient(alg: AlgebraStructure, ideal: Subspace, name: str | None = None) -> AlgebraStructure:
    """Quotient by an ideal, on the non-pivot coordinates of the ideal's rref basis."""
    if ideal.ambient_dim != alg.dim or ideal.p != alg.p:
        raise ValueError("subspace does not live in this algebra")
    if not is_ideal(alg, ideal):
        raise ValueError("subspace is not an ideal")
    piv = ideal.pivots
    keep = sorted(set(range(alg.dim)) - set(piv))
    t = alg.table.astype(np.int64)[np.ix_(keep, keep)]
    q = len(keep)
    flat = t.reshape(q * q, alg.dim)
    if piv:
        flat = (flat - matmul_mod(flat[:, piv], ideal.basis, alg.p)) % alg.p
    reduced = flat[:, keep].reshape(q, q, q)
    labels = tuple(alg.labels[i] for i in keep)
    return AlgebraStructure(alg.p, reduced, labels, name or f"{alg.name}/I")


# ---------------------------------------------------------------------------
# text dumps
# ---------------------------------------------------------------------------


def dump_structure(alg: AlgebraStructure, tag: str = "SC") -> str:
    lines = [f"{tag} p={alg.p} dim={alg.dim} name={alg.name}"]
    idx = np.argwhere(alg.table)
    vals = alg.table[tuple(idx.T)]
    lines.extend(f"{i} {j} {k} {v}" for (i, j, k), v in zip(idx.tolist(), vals.tolist()))
    return "\n".join(lines) + "\n"


def write_structure(alg: AlgebraStructure, path, tag: str = "SC") -> None:
    Path(path).write_text(dump_structure(alg, tag), encoding="ascii")


def parse_structure(text: str) -> tuple[str, AlgebraStructure]:
    """Parse a dump; returns ``(tag, algebra)``."""
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty dump")
    head = lines[0].split()
    if len(head) < 4:
        raise ValueError(f"bad dump header: {lines[0]!r}")
    tag = head[0]
    fields = dict(part.split("=", 1) for part in head[1:])
    p, dim, name = int(fields["p"]), int(fields["dim"]), fields["name"]
    t = np.zeros((dim, dim, dim), dtype=np.int64)
    body = [ln for ln in lines[1:] if ln.strip()]
    if body:
        data = np.array([ln.split() for ln in body], dtype=np.int64)
        if data.shape[1] != 4:
            raise ValueError("dump entries must have four fields")
        if data[:, :3].min() < 0 or data[:, :3].max() >= dim:
            raise ValueError("dump index out of range")
        t[data[:, 0], data[:, 1], data[:, 2]] = data[:, 3]
    return tag, AlgebraStructure(p, t, name=name)


def read_structure(path) -> tuple[str, AlgebraStructure]:
    return parse_structure(Path(path).read_text(encoding="ascii"))
