"""Divided powers algebras O_n(m_1, ..., m_n), their derivations, and operators."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .algebra_core import (
    AlgebraStructure,
    CheckResult,
    basis_vector,
    tensor_product,
    unit_element,
)
from .ff_linalg import matmul_mod


def binom_mod(n: int, k: int, p: int) -> int:
    """binom(n, k) mod p by Lucas' theorem (product of base-p digit binomials)."""
    if k < 0 or k > n:
        return 0
    out = 1
    while n or k:
        nd, kd = n % p, k % p
        if kd > nd:
            return 0
        num = den = 1
        for t in range(kd):
            num = num * (nd - t) % p
            den = den * (t + 1) % p
        out = out * num * pow(den, p - 2, p) % p
        n //= p
        k //= p
    return out


@dataclass(frozen=True)
class DividedPowersShape:
    """Index bookkeeping for O_n(m_1, ..., m_n); the last variable varies fastest."""

    p: int
    ms: tuple[int, ...]
    variables: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ms", tuple(int(m) for m in self.ms))
        if not self.ms or min(self.ms) < 1:
            raise ValueError("need a nonempty list of positive heights")
        if not self.variables:
            names = ("x", "y", "z") if len(self.ms) <= 3 else tuple(f"x{i + 1}" for i in range(len(self.ms)))
            object.__setattr__(self, "variables", names[: len(self.ms)])
        if len(self.variables) != len(self.ms):
            raise ValueError("one variable name per height required")

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(self.p**m for m in self.ms)

    @property
    def n(self) -> int:
        return len(self.ms)

    @property
    def dim(self) -> int:
        return int(np.prod(self.sizes))

    def index(self, exponents: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(exponents), self.sizes))

    def exponents(self, idx: int) -> tuple[int, ...]:
        return tuple(int(e) for e in np.unravel_index(idx, self.sizes))

    def label(self, idx: int) -> str:
        parts = [f"{v}^({e})" for v, e in zip(self.variables, self.exponents(idx)) if e]
        return "".join(parts) or "1"

    def monomial(self, **exps: int) -> np.ndarray:
        """Coordinate vector of a basis monomial, e.g. ``shape.monomial(x=2, y=1)``."""
        e = [exps.get(v, 0) for v in self.variables]
        return basis_vector(self.dim, self.index(e))


def divided_powers_algebra(p: int, m: int, variable: str = "x") -> AlgebraStructure:
    """O_1(m): basis x^(i), 0 <= i < p^m, with x^(i) x^(j) = binom(i+j, i) x^(i+j)."""
    size = p**m
    t = np.zeros((size, size, size), dtype=np.int64)
    for i in range(size):
        for j in range(size - i):
            t[i, j, i + j] = binom_mod(i + j, i, p)
    labels = tuple(f"{variable}^({i})" if i else "1" for i in range(size))
    return AlgebraStructure(p, t, labels, f"O_1({m})")


def divided_powers_multi(p: int, ms: Sequence[int], variables: Sequence[str] = ()) -> AlgebraStructure:
    """O_n(m_1, ..., m_n) as the iterated tensor product of the O_1(m_k)."""
    shape = DividedPowersShape(p, tuple(ms), tuple(variables))
    factors = [divided_powers_algebra(p, m) for m in shape.ms]
    alg = reduce(tensor_product, factors)
    labels = tuple(shape.label(i) for i in range(shape.dim))
    name = f"O_{shape.n}({','.join(map(str, shape.ms))})"
    return AlgebraStructure(p, alg.table, labels, name)


@dataclass(frozen=True, eq=False)
class LinearOperator:
    """A linear self-map acting on column coordinate vectors."""

    matrix: np.ndarray
    p: int
    name: str = "op"

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=np.int64) % self.p
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"operator matrix must be square, got {m.shape}")
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def domain_dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64).reshape(-1)
        return matmul_mod(self.matrix, v % self.p, self.p)

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        return compose(self, other)

    def is_zero(self) -> bool:
        return not self.matrix.any()

    def __eq__(self, other):
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.matrix, other.matrix)


def _check_compatible(*ops: LinearOperator) -> None:
    if len({o.p for o in ops}) != 1:
        raise ValueError("field mismatch between operators")
    if len({o.domain_dim for o in ops}) != 1:
        raise ValueError(f"dimension mismatch: {sorted({o.domain_dim for o in ops})}")


def identity_operator(dim: int, p: int) -> LinearOperator:
    return LinearOperator(np.eye(dim, dtype=np.int64), p, "id")


def compose(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    """a ∘ b."""
    _check_compatible(a, b)
    return LinearOperator(matmul_mod(a.matrix, b.matrix, a.p), a.p, f"{a.name}∘{b.name}")


def operator_power(op: LinearOperator, k: int) -> LinearOperator:
    if k < 0:
        raise ValueError("negative operator power")
    result = identity_operator(op.domain_dim, op.p).matrix
    base = op.matrix
    e = k
    while e:
        if e & 1:
            result = matmul_mod(result, base, op.p)
        base = matmul_mod(base, base, op.p)
        e >>= 1
    return LinearOperator(result, op.p, f"{op.name}^{k}")


def operator_combination(ops: Sequence[LinearOperator], coeffs, name: str | None = None) -> LinearOperator:
    if len(ops) != len(coeffs) or not ops:
        raise ValueError("need matching, nonempty operator and coefficient lists")
    _check_compatible(*ops)
    p = ops[0].p
    total = sum((int(c) % p) * o.matrix for o, c in zip(ops, coeffs))
    if name is None:
        name = " + ".join(f"{int(c) % p}·{o.name}" for o, c in zip(ops, coeffs))
    return LinearOperator(total, p, name)


def commutator(a: LinearOperator, b: LinearOperator) -> LinearOperator:
    _check_compatible(a, b)
    m = (matmul_mod(a.matrix, b.matrix, a.p) - matmul_mod(b.matrix, a.matrix, a.p)) % a.p
    return LinearOperator(m, a.p, f"[{a.name},{b.name}]")


def partial_derivative(shape: DividedPowersShape, k: int) -> LinearOperator:
    """∂ with respect to variable k (1-based): lowers exponent k by one."""
    if not 1 <= k <= shape.n:
        raise ValueError(f"variable index {k} outside 1..{shape.n}")
    dim = shape.dim
    m = np.zeros((dim, dim), dtype=np.int64)
    for idx in range(dim):
        e = list(shape.exponents(idx))
        if e[k - 1] > 0:
            e[k - 1] -= 1
            m[shape.index(e), idx] = 1
    return LinearOperator(m, shape.p, f"∂_{shape.variables[k - 1]}")


def multiplication_operator(alg: AlgebraStructure, a, name: str | None = None) -> LinearOperator:
    """b -> a·b."""
    a = np.asarray(a, dtype=np.int64).reshape(-1) % alg.p
    n = alg.dim
    rows = matmul_mod(a[None, :], alg.table.reshape(n, n * n), alg.p).reshape(n, n)
    return LinearOperator(rows.T, alg.p, name or "mult")


def is_generalized_derivation(alg: AlgebraStructure, op: LinearOperator) -> CheckResult:
    """Check D(ab) = D(a)b + aD(b) - abD(1) on every pair of basis vectors."""
    u = unit_element(alg)
    if u is None:
        raise ValueError("algebra has no unit")
    n, p = alg.dim, alg.p
    if op.domain_dim != n:
        raise ValueError("operator does not act on this algebra")
    t = alg.table.astype(np.int64)
    d = op.matrix
    flat = t.reshape(n * n, n)
    lhs = matmul_mod(flat, d.T, p).reshape(n, n, n)
    # D(e_i) e_j: sum_a d[a, i] t[a, j, :]
    da_b = matmul_mod(d.T, t.reshape(n, n * n), p).reshape(n, n, n)
    # e_i D(e_j): sum_b d[b, j] t[i, b, :]
    a_db = matmul_mod(t.transpose(0, 2, 1).reshape(n * n, n), d, p).reshape(n, n, n).transpose(0, 2, 1)
    d1 = matmul_mod(d, u, p)
    # right multiplication by D(1): r[m, k] = (e_m D(1))_k
    r = matmul_mod(d1[None, :], t.transpose(1, 0, 2).reshape(n, n * n), p).reshape(n, n)
    ab_d1 = matmul_mod(flat, r, p).reshape(n, n, n)
    bad = ((lhs - da_b - a_db + ab_d1) % p).any(axis=2)
    hits = np.argwhere(bad)
    ok = hits.shape[0] == 0
    return CheckResult(ok, None if ok else tuple(int(x) for x in hits[0]), f"generalized derivation: {op.name}", n * n)


def dump_operator(op: LinearOperator, tag: str = "OP") -> str:
    lines = [f"{tag} p={op.p} dim={op.domain_dim} name={op.name}"]
    lines.extend(" ".join(map(str, row)) for row in op.matrix.tolist())
    return "\n".join(lines) + "\n"


def parse_operator(text: str) -> tuple[str, LinearOperator]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    fields = dict(part.split("=", 1) for part in head[1:])
    dim = int(fields["dim"])
    m = np.array([ln.split() for ln in lines[1 : dim + 1]], dtype=np.int64).reshape(dim, dim)
    return head[0], LinearOperator(m, int(fields["p"]), fields["name"])
