"""Poisson brackets from pairs of operators, 2-cochains, cocycles and the deformation.

The concrete objects live on O_2(2,1) over GF(5) with variables x, y:

* ``P``: bracket ∂_x(a)∂_y(b) - ∂_y(a)∂_x(b)
* ``phi``: cochain ∂_x^2(a)∂_x^3(b) - ∂_x^3(a)∂_x^2(b)
* ``psi``: cochain (id - x∂_x)(a)∂_x^5(b) - ∂_x^5(a)(id - x∂_x)(b)
* ``D = P + phi + 2 psi``
* ``W_1(3)``: the Witt-type algebra spanned by x^(i)∂, 0 <= i < 125
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .algebra_core import (
    AlgebraStructure,
    CheckResult,
    _left_action,
    _outer_of_inner_first,
    _outer_of_inner_mid,
    _right_slot_action,
    check_anticommutative,
    check_jacobi,
    scan_triples,
    sum_of_structures,
)
from .divided_powers import (
    DividedPowersShape,
    LinearOperator,
    compose,
    divided_powers_algebra,
    divided_powers_multi,
    identity_operator,
    multiplication_operator,
    operator_combination,
    operator_power,
    partial_derivative,
)
from .ff_linalg import matmul_mod

P_CHAR = 5
SHAPE_221 = DividedPowersShape(P_CHAR, (2, 1), ("x", "y"))


class Cochain2(AlgebraStructure):
    """An alternating bilinear map L x L -> L stored like a bracket table."""

    def __post_init__(self):
        super().__post_init__()
        if not check_anticommutative(self).ok:
            raise ValueError(f"cochain {self.name} is not alternating")

    @classmethod
    def from_structure(cls, alg: AlgebraStructure, name: str | None = None) -> "Cochain2":
        return cls(alg.p, alg.table, alg.labels, name or alg.name)


def poisson_bracket(a: AlgebraStructure, d: LinearOperator, f: LinearOperator, name: str = "bracket"):
    """[u, v] = d(u) f(v) - f(u) d(v), extended bilinearly, over the product of ``a``."""
    n, p = a.dim, a.p
    if d.domain_dim != n or f.domain_dim != n:
        raise ValueError(f"operators of size {d.domain_dim}, {f.domain_dim} do not act on dim {n}")
    if d.p != p or f.p != p:
        raise ValueError("field mismatch between operators and algebra")
    t = a.table.astype(np.int64).reshape(n, n * n)

    def half(left: np.ndarray, right: np.ndarray) -> np.ndarray:
        # sum_{a,b} left[a, i] right[b, j] t[a, b, k]
        x = matmul_mod(left.T, t, p).reshape(n, n, n)  # [i, b, k]
        y = matmul_mod(x.transpose(0, 2, 1), right, p)  # [i, k, j]
        return y.transpose(0, 2, 1)

    table = (half(d.matrix, f.matrix) - half(f.matrix, d.matrix)) % p
    return AlgebraStructure(p, table, a.labels, name)


@lru_cache(maxsize=None)
def o221() -> AlgebraStructure:
    return divided_powers_multi(P_CHAR, SHAPE_221.ms, SHAPE_221.variables)


def _dx() -> LinearOperator:
    return partial_derivative(SHAPE_221, 1)


def _dy() -> LinearOperator:
    return partial_derivative(SHAPE_221, 2)


def id_minus_x_dx() -> LinearOperator:
    """id - x∂_x on O_2(2,1)."""
    x_mult = multiplication_operator(o221(), SHAPE_221.monomial(x=1), "x")
    ident = identity_operator(SHAPE_221.dim, P_CHAR)
    return operator_combination([ident, compose(x_mult, _dx())], [1, -1], "id-x∂_x")


@lru_cache(maxsize=None)
def build_P() -> AlgebraStructure:
    return poisson_bracket(o221(), _dx(), _dy(), "P")


@lru_cache(maxsize=None)
def build_phi() -> Cochain2:
    dx = _dx()
    b = poisson_bracket(o221(), operator_power(dx, 2), operator_power(dx, 3), "phi")
    return Cochain2.from_structure(b)


@lru_cache(maxsize=None)
def build_psi() -> Cochain2:
    b = poisson_bracket(o221(), id_minus_x_dx(), operator_power(_dx(), 5), "psi")
    return Cochain2.from_structure(b)


@lru_cache(maxsize=None)
def build_D(coeff_phi: int = 1, coeff_psi: int = 2) -> AlgebraStructure:
    name = "D" if (coeff_phi % P_CHAR, coeff_psi % P_CHAR) == (1, 2) else f"D[{coeff_phi},{coeff_psi}]"
    return sum_of_structures([build_P(), build_phi(), build_psi()], [1, coeff_phi, coeff_psi], name)


def deformation_cochain(coeff_phi: int = 1, coeff_psi: int = 2) -> Cochain2:
    s = sum_of_structures([build_phi(), build_psi()], [coeff_phi, coeff_psi], f"{coeff_phi}phi+{coeff_psi}psi")
    return Cochain2.from_structure(s)


@lru_cache(maxsize=None)
def build_W13() -> AlgebraStructure:
    """W_1(3) on the basis x^(i)∂; [a∂, b∂] = (a∂(b) - b∂(a))∂."""
    shape = DividedPowersShape(P_CHAR, (3,), ("x",))
    base = divided_powers_algebra(P_CHAR, 3)
    d = partial_derivative(shape, 1)
    # a∂(b) - ∂(a)b is the bracket of the pair (id, ∂)
    b = poisson_bracket(base, identity_operator(shape.dim, P_CHAR), d, "W13")
    labels = tuple(f"{lab}∂" if lab != "1" else "∂" for lab in base.labels)
    return AlgebraStructure(P_CHAR, b.table, labels, "W13")


def psi_bracket_algebra() -> AlgebraStructure:
    """The ψ-shaped bracket (id - x∂_x, ∂_x^5) as a standalone algebra."""
    return build_psi().renamed("psi-bracket")


# ---------------------------------------------------------------------------
# cohomological checks
# ---------------------------------------------------------------------------


def _differential_slice(lie: AlgebraStructure, c: AlgebraStructure, a: int) -> np.ndarray:
    """(δc)(a, b, d) for fixed a, indexed [b, d, k].

    δc(a,b,d) = [a,c(b,d)] - [b,c(a,d)] + [d,c(a,b)]
                - c([a,b],d) + c([a,d],b) - c([b,d],a)
    """
    act = _right_slot_action(lie, c, a)  # [u, v] -> [v, c(a, u)]
    c_of_l = _outer_of_inner_first(c, lie, a)  # [u, v] -> c([a, u], v)
    return (
        _left_action(lie, c, a)
        - act.transpose(1, 0, 2)
        + act
        - c_of_l
        + c_of_l.transpose(1, 0, 2)
        - _outer_of_inner_mid(c, lie, a)
    )


def cocycle_check(lie: AlgebraStructure, c: AlgebraStructure) -> CheckResult:
    """Exhaustive vanishing of the Chevalley–Eilenberg differential of ``c`` (adjoint coefficients)."""
    if lie.dim != c.dim or lie.p != c.p:
        raise ValueError("cochain and Lie algebra live on different spaces")
    w, total = scan_triples(lambda a: _differential_slice(lie, c, a), lie.dim, lie.p, ordered=True)
    return CheckResult(w is None, w, f"δ({c.name}) = 0 over {lie.name}", total)


def jacobiator(c: AlgebraStructure) -> CheckResult:
    """Whether the cyclic sum c(c(a,b),d) + c(c(b,d),a) + c(c(d,a),b) vanishes on all triples."""
    res = check_jacobi(c)
    return CheckResult(res.ok, res.witness, f"jacobiator({c.name}) = 0", res.checked)
