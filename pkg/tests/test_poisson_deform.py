import numpy as np
import pytest

from modlie.algebra_core import (
    AlgebraStructure,
    check_anticommutative,
    check_jacobi,
    dump_structure,
    multiply,
    sum_of_structures,
)
from modlie.divided_powers import DividedPowersShape, divided_powers_algebra, partial_derivative
from modlie.poisson_deform import (
    SHAPE_221,
    Cochain2,
    build_D,
    build_P,
    cocycle_check,
    deformation_cochain,
    jacobiator,
    o221,
    poisson_bracket,
    psi_bracket_algebra,
)

from . import oracles

S = SHAPE_221


def mono(**kw):
    return S.monomial(**kw)


def test_bracket_with_equal_operators_vanishes():
    dx = partial_derivative(S, 1)
    assert poisson_bracket(o221(), dx, dx).nnz() == 0


def test_bracket_operator_size_mismatch():
    with pytest.raises(ValueError):
        poisson_bracket(o221(), partial_derivative(DividedPowersShape(5, (1,)), 1), partial_derivative(S, 1))


def test_P_brackets(P):
    assert multiply(P, mono(x=1), mono(y=1)).tolist() == mono().tolist()
    assert not multiply(P, mono(), mono(x=7, y=3)).any()
    # [x^(2), x^(1)y^(1)] = ∂x(x^(2)) ∂y(x^(1)y^(1)) = x^(1) x^(1) = 2 x^(2)
    assert multiply(P, mono(x=2), mono(x=1, y=1)).tolist() == (2 * mono(x=2)).tolist()


def test_phi_values(phi):
    assert multiply(phi, mono(x=2), mono(x=3)).tolist() == mono().tolist()
    assert multiply(phi, mono(x=3), mono(x=2)).tolist() == (4 * mono()).tolist()
    for b in range(125):
        assert not phi.table[0, b].any()


def test_psi_values(psi):
    assert multiply(psi, mono(), mono(x=5)).tolist() == mono().tolist()
    for b in range(125):
        assert not psi.table[S.index((1, 0)), b].any()


def test_cochains_alternate(phi, psi):
    assert check_anticommutative(phi).ok and check_anticommutative(psi).ok
    t = np.zeros((2, 2, 2), dtype=int)
    t[0, 1, 0] = 1
    with pytest.raises(ValueError):
        Cochain2(5, t)


def test_brackets_match_naive_polynomial_evaluation(P, phi, rng):
    dxp = lambda a: oracles.dp_partial(a, 0)
    dyp = lambda a: oracles.dp_partial(a, 1)
    d2 = lambda a: dxp(dxp(a))
    d3 = lambda a: dxp(d2(a))
    for alg, br in ((P, oracles.naive_bracket(dxp, dyp, S.sizes)), (phi, oracles.naive_bracket(d2, d3, S.sizes))):
        for _ in range(40):
            i, j = (int(v) for v in rng.integers(0, 125, size=2))
            got = {S.exponents(k): int(v) for k, v in enumerate(alg.table[i, j]) if v}
            assert got == br({S.exponents(i): 1}, {S.exponents(j): 1})


def test_psi_matches_naive(psi, rng):
    dxp = lambda a: oracles.dp_partial(a, 0)

    def shift(a):
        # (id - x∂x) x^(i) y^(j) = (1 - i) x^(i) y^(j)
        return {e: c * (1 - e[0]) % 5 for e, c in a.items() if c * (1 - e[0]) % 5}

    def d5(a):
        for _ in range(5):
            a = dxp(a)
        return a

    br = oracles.naive_bracket(shift, d5, S.sizes)
    for _ in range(60):
        i, j = (int(v) for v in rng.integers(0, 125, size=2))
        got = {S.exponents(k): int(v) for k, v in enumerate(psi.table[i, j]) if v}
        assert got == br({S.exponents(i): 1}, {S.exponents(j): 1})


def test_cocycles(P, phi, psi):
    assert cocycle_check(P, phi).ok
    assert cocycle_check(P, psi).ok


def test_bracket_is_cocycle_on_itself():
    # a Lie bracket is a 2-cocycle with adjoint coefficients
    so = AlgebraStructure.from_entries(
        5, 3, [(0, 1, 2, 1), (1, 0, 2, 4), (1, 2, 0, 1), (2, 1, 0, 4), (2, 0, 1, 1), (0, 2, 1, 4)]
    )
    res = cocycle_check(so, so)
    assert res.ok and res.checked == 27


def test_non_cocycle_has_witness():
    lie = AlgebraStructure.from_entries(5, 3, [(0, 1, 2, 1), (1, 0, 2, 4)])  # Heisenberg
    c = Cochain2.from_structure(AlgebraStructure.from_entries(5, 3, [(0, 2, 0, 1), (2, 0, 0, 4)]))
    res = cocycle_check(lie, c)
    assert not res.ok and len(res.witness) == 3


def test_mismatched_spaces():
    with pytest.raises(ValueError):
        cocycle_check(build_P(), Cochain2.from_structure(AlgebraStructure.zero(5, 3)))


def test_prolongation_and_deformed_jacobi(D):
    assert jacobiator(deformation_cochain()).ok
    assert check_jacobi(D).ok
    assert check_anticommutative(D).ok


def test_psi_bracket_is_lie():
    alg = psi_bracket_algebra()
    assert check_anticommutative(alg).ok and check_jacobi(alg).ok


def test_D_equals_sum(P, phi, psi, D):
    assert np.array_equal(D.table, sum_of_structures([P, phi, psi], [1, 1, 2]).table)
    assert D.name == "D"
    z = build_D(0, 0)
    assert np.array_equal(z.table, P.table)


def test_W13_brackets(W13):
    assert W13.dim == 125
    d, xd = np.eye(125, dtype=int)[0], np.eye(125, dtype=int)[1]
    assert multiply(W13, d, xd).tolist() == d.tolist()
    assert W13.labels[0] == "∂" and W13.labels[1] == "x^(1)∂"
    # [x^(i)∂, x^(j)∂] = (binom(i+j-1, i) - binom(i+j-1, j)) x^(i+j-1)∂ checked against the oracle
    o = divided_powers_algebra(5, 3)
    assert o.dim == 125
    rng = np.random.default_rng(7)
    for _ in range(50):
        i, j = (int(v) for v in rng.integers(0, 125, size=2))
        a, b = {(i,): 1}, {(j,): 1}
        expect = oracles.add(
            oracles.dp_mul(a, oracles.dp_partial(b, 0), (125,)),
            oracles.scale(oracles.dp_mul(oracles.dp_partial(a, 0), b, (125,)), -1),
        )
        got = {(k,): int(v) for k, v in enumerate(W13.table[i, j]) if v}
        assert got == expect


def test_builds_are_deterministic(P):
    again = poisson_bracket(o221(), partial_derivative(S, 1), partial_derivative(S, 2), "P")
    assert dump_structure(again) == dump_structure(P)


@pytest.mark.parametrize(
    "fname,builder,tag",
    [("P.sc", "P", "SC"), ("D.sc", "D", "SC"), ("W13.sc", "W13", "SC"), ("phi.cochain", "phi", "COCHAIN"), ("psi.cochain", "psi", "COCHAIN")],
)
def test_golden_dumps_byte_identical(fixtures_dir, fname, builder, tag, request):
    alg = request.getfixturevalue(builder)
    assert dump_structure(alg, tag=tag) == (fixtures_dir / fname).read_text(encoding="ascii")
