"""Meataxe-style module theory for matrix representations over GF(p).

The adjoint module of a Lie algebra is handled as a
:class:`MatrixRep` whose generators are the matrices ``ad(e_i)``.  Provided:

* :func:`spin` -- smallest invariant subspace containing given vectors
* :func:`is_irreducible` -- Norton's irreducibility criterion with random
  elements of the enveloping matrix algebra
* :func:`hom_space` -- all module maps between two representations, solved
  on a spinning basis so the unknowns are just the images of the cyclic
  generators
* :func:`centralizer_dimension`, :func:`invariant_symmetric_forms`
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .algebra_core import AlgebraStructure, derived_subalgebra
from .ff_linalg import (
    EchelonBasis,
    Subspace,
    inverse,
    kernel,
    left_kernel,
    matmul_mod,
    rank,
    rref,
)

# unknown-tensor entries above this are refused by hom_space
_MAX_HOM_ENTRIES = 60_000_000


@dataclass(frozen=True, eq=False)
class MatrixRep:
    """Generators of a matrix algebra acting on column vectors of GF(p)^dim."""

    dim: int
    generators: np.ndarray
    p: int

    def __post_init__(self):
        g = np.asarray(self.generators, dtype=np.int64).reshape(-1, self.dim, self.dim) % self.p
        g.flags.writeable = False
        object.__setattr__(self, "generators", g)

    @property
    def ngens(self) -> int:
        return self.generators.shape[0]

    def dual(self) -> "MatrixRep":
        """Contragredient action g -> -g^T."""
        return MatrixRep(self.dim, (-self.generators.transpose(0, 2, 1)) % self.p, self.p)

    def transposed(self) -> "MatrixRep":
        return MatrixRep(self.dim, self.generators.transpose(0, 2, 1), self.p)


@dataclass(frozen=True)
class MeataxeConfig:
    max_attempts: int = 200
    max_generators: int = 10
    max_word_length: int = 3
    words_per_element: int = 4
    # kernels up to this nullity are enumerated exhaustively (projective points)
    max_enumerated_nullity: int = 2


@dataclass(frozen=True)
class IrreducibilityResult:
    verdict: bool | None  # None == inconclusive
    witness: Subspace | None
    seed: int
    attempts: int
    nullity: int | None = None
    detail: str = ""

    @property
    def inconclusive(self) -> bool:
        return self.verdict is None


@dataclass(frozen=True)
class SimplicityResult:
    verdict: bool | None
    witness: Subspace | None
    derived_dim: int
    irreducibility: IrreducibilityResult


@dataclass(frozen=True, eq=False)
class FormSpace:
    """Basis of the symmetric invariant bilinear forms, as Gram matrices."""

    basis: list[np.ndarray]
    ranks: list[int] = field(default_factory=list)
    p: int = 5

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def nondegenerate(self) -> bool:
        return bool(self.basis) and all(r == self.basis[0].shape[0] for r in self.ranks)


def adjoint_rep(lie: AlgebraStructure) -> MatrixRep:
    """generators[i] is the matrix of v -> [e_i, v]."""
    return MatrixRep(lie.dim, lie.table.astype(np.int64).transpose(0, 2, 1), lie.p)


def _images(rep: MatrixRep, rows: np.ndarray) -> np.ndarray:
    """All g v for generators g and row vectors v, stacked generator-major."""
    imgs = matmul_mod(rows[None, :, :], rep.generators.transpose(0, 2, 1), rep.p)
    return imgs.reshape(-1, rep.dim)


def spin(rep: MatrixRep, seeds, chunk: int = 512) -> Subspace:
    """Smallest generator-invariant subspace containing ``seeds``."""
    n, p = rep.dim, rep.p
    seeds = np.atleast_2d(np.asarray(seeds, dtype=np.int64).reshape(-1, n)) % p
    eb = EchelonBasis(n, p)
    frontier = eb.add(seeds)
    while frontier.shape[0] and eb.dim < n and rep.ngens:
        imgs = _images(rep, frontier)
        fresh = []
        for start in range(0, imgs.shape[0], chunk):
            new = eb.add(imgs[start : start + chunk])
            if new.shape[0]:
                fresh.append(new)
            if eb.dim == n:
                break
        frontier = np.vstack(fresh) if fresh else np.zeros((0, n), dtype=np.int64)
    return Subspace.span(eb.rows, n, p)


def _projective_points(basis: np.ndarray, p: int) -> list[np.ndarray]:
    """One representative of every 1-dim subspace of span(basis)."""
    k = basis.shape[0]
    pts = []
    for coeffs in product(range(p), repeat=k):
        nz = [c for c in coeffs if c]
        if nz and nz[0] == 1:
            pts.append(matmul_mod(np.array(coeffs, dtype=np.int64)[None, :], basis, p)[0])
    return pts


def _random_element(rep: MatrixRep, rng: np.random.Generator, cfg: MeataxeConfig) -> np.ndarray:
    """Random combination of a fresh generator sample plus a few longer words in it."""
    n, p, g = rep.dim, rep.p, rep.ngens
    pool = rng.choice(g, size=min(g, cfg.max_generators), replace=False)
    coeffs = rng.integers(1, p, size=pool.size)
    theta = np.tensordot(coeffs, rep.generators[pool], axes=1)
    for _ in range(cfg.words_per_element):
        length = int(rng.integers(2, cfg.max_word_length + 1))
        word = np.eye(n, dtype=np.int64)
        for k in rng.choice(pool, size=length):
            word = matmul_mod(rep.generators[k], word, p)
        theta = theta + int(rng.integers(1, p)) * word
    return theta % p


def is_irreducible(rep: MatrixRep, seed: int = 1, config: MeataxeConfig | None = None) -> IrreducibilityResult:
    """Norton's criterion.

    Draw random elements θ and scan the shifts θ - λ (λ in GF(p)) until one
    is singular with nullity at most ``max_enumerated_nullity``.  If a nonzero vector of ker θ spins to a
    proper subspace, that subspace is a submodule.  Otherwise, if a vector of
    ker θ^T spins to a proper subspace under the transposed action, its
    annihilator is a submodule.  If neither happens the module is
    irreducible.  For larger kernels one basis vector is spun as a cheap
    reducibility probe; they never certify irreducibility.
    """
    cfg = config or MeataxeConfig()
    n, p = rep.dim, rep.p
    if n == 1:
        return IrreducibilityResult(True, None, seed, 0, None, "dimension 1")
    rng = np.random.default_rng(seed)
    g = rep.ngens
    if g == 0 or not rep.generators.any():
        w = Subspace.span(np.eye(n, dtype=np.int64)[:1], n, p)
        return IrreducibilityResult(False, w, seed, 0, None, "all generators vanish")
    dual_gens = rep.transposed()
    eye = np.eye(n, dtype=np.int64)
    for attempt in range(1, cfg.max_attempts + 1):
        theta = _random_element(rep, rng, cfg)
        # the scalar shifts θ - λ are elements of the same algebra
        for lam in range(p):
            shifted = (theta - lam * eye) % p
            null = kernel(shifted, p)
            k = null.shape[0]
            if k == 0:
                continue
            if k > cfg.max_enumerated_nullity:
                s = spin(rep, null[0])
                if s.dim < n:
                    return IrreducibilityResult(False, s, seed, attempt, k, "proper spin of a kernel vector")
                continue
            for v in _projective_points(null, p):
                s = spin(rep, v)
                if s.dim < n:
                    return IrreducibilityResult(False, s, seed, attempt, k, "proper spin of a kernel vector")
            for w in _projective_points(kernel(shifted.T, p), p):
                s = spin(dual_gens, w)
                if s.dim < n:
                    sub = Subspace.span(kernel(s.basis, p), n, p)
                    return IrreducibilityResult(False, sub, seed, attempt, k, "annihilator of a proper dual spin")
            return IrreducibilityResult(True, None, seed, attempt, k, "Norton criterion satisfied")
    return IrreducibilityResult(None, None, seed, cfg.max_attempts, None, f"no usable singular element in {cfg.max_attempts} draws")


# ---------------------------------------------------------------------------
# homomorphism spaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SpinningBasis:
    """Basis b_j of the module where each b_j is a seed or g_{gen[j]} b_{parent[j]}."""

    vectors: np.ndarray  # rows b_j
    parent: list[int]
    gen: list[int]
    seed_of: list[int]  # which cyclic generator each b_j descends from
    seeds: list[int]  # basis indices of the cyclic generators


def spinning_basis(rep: MatrixRep) -> SpinningBasis:
    """Greedy spinning basis, starting from e_0 and adding unit vectors as needed."""
    n, p = rep.dim, rep.p
    eb = EchelonBasis(n, p)
    vectors: list[np.ndarray] = []
    parent: list[int] = []
    gen: list[int] = []
    seed_of: list[int] = []
    seeds: list[int] = []
    unit = 0
    while eb.dim < n:
        while eb.contains(np.eye(n, dtype=np.int64)[unit]):
            unit += 1
        v = np.eye(n, dtype=np.int64)[unit]
        eb.add(v)
        seeds.append(len(vectors))
        vectors.append(v)
        parent.append(-1)
        gen.append(-1)
        seed_of.append(len(seeds) - 1)
        j = len(vectors) - 1
        while j < len(vectors) and eb.dim < n:
            imgs = _images(rep, vectors[j][None, :])
            res = eb.reduce(imgs)
            if res.any():
                _, _, chosen = rref(res.T, p)
                for c in chosen:
                    vectors.append(imgs[c])
                    parent.append(j)
                    gen.append(int(c))
                    seed_of.append(seed_of[j])
                eb.add(imgs[chosen])
            j += 1
    return SpinningBasis(np.array(vectors, dtype=np.int64), parent, gen, seed_of, seeds)


def hom_space(src: MatrixRep, dst: MatrixRep) -> list[np.ndarray]:
    """Basis (canonical) of ``{H : H src(g) = dst(g) H for every generator g}``.

    ``H`` is pinned down by its values on the cyclic generators of a spinning
    basis of ``src``, since H applied to a word in the generators of a seed is the
    same word in ``dst`` applied to that seed's image.
    """
    if src.ngens != dst.ngens or src.p != dst.p:
        raise ValueError("representations must have matching generators and field")
    n, m, p = src.dim, dst.dim, src.p
    sb = spinning_basis(src)
    r = len(sb.seeds)
    if r * m * m * n > _MAX_HOM_ENTRIES:
        raise ValueError(f"module needs {r} cyclic generators; homomorphism system too large")
    # words of the basis evaluated in dst
    words = np.zeros((n, m, m), dtype=np.int64)
    for j in range(n):
        words[j] = np.eye(m, dtype=np.int64) if sb.parent[j] < 0 else matmul_mod(dst.generators[sb.gen[j]], words[sb.parent[j]], p)
    # candidate images of the basis: unknown (s, t) puts column t of words[j] at b_j
    cand = np.zeros((r * m, m, n), dtype=np.int64)
    for j in range(n):
        s = sb.seed_of[j]
        cand[s * m : (s + 1) * m, :, j] = words[j].T
    basis_mat = sb.vectors.T  # columns b_j
    binv = inverse(basis_mat, p)
    for g in range(src.ngens):
        if cand.shape[0] == 0:
            break
        rho = matmul_mod(binv, matmul_mod(src.generators[g], basis_mat, p), p)
        res = (matmul_mod(cand, rho, p) - matmul_mod(dst.generators[g], cand, p)) % p
        combos = left_kernel(res.reshape(cand.shape[0], m * n), p)
        if combos.shape[0] == cand.shape[0]:
            continue
        cand = matmul_mod(combos, cand.reshape(cand.shape[0], m * n), p).reshape(-1, m, n)
    if cand.shape[0] == 0:
        return []
    maps = matmul_mod(cand, binv, p)
    red, rk, _ = rref(maps.reshape(maps.shape[0], m * n), p)
    return [row.reshape(m, n) for row in red[:rk]]


def centralizer_dimension(rep: MatrixRep) -> int:
    """dim of {M : M g = g M for all generators g}."""
    return len(hom_space(rep, rep))


def centralizer_dimension_direct(rep: MatrixRep) -> int:
    """Same quantity from the full stacked Sylvester system (small modules only)."""
    n, p = rep.dim, rep.p
    if n * n > 2500:
        raise ValueError("direct Sylvester system limited to dim <= 50")
    eye = np.eye(n, dtype=np.int64)
    if rep.ngens == 0:
        return n * n
    # row-major vec: vec(M g) = (I ⊗ g^T) vec(M), vec(g M) = (g ⊗ I) vec(M)
    blocks = [(np.kron(eye, g.T) - np.kron(g, eye)) % p for g in rep.generators]
    return n * n - rank(np.vstack(blocks), p)


# ---------------------------------------------------------------------------
# simplicity and invariant forms
# ---------------------------------------------------------------------------


def is_simple(lie: AlgebraStructure, seed: int = 1, config: MeataxeConfig | None = None) -> SimplicityResult:
    """Perfect (so nonabelian) and with irreducible adjoint module."""
    if lie.dim < 2:
        raise ValueError("simplicity test needs dim >= 2")
    derived = derived_subalgebra(lie)
    irr = is_irreducible(adjoint_rep(lie), seed, config)
    perfect = derived.dim == lie.dim
    if not perfect:
        verdict: bool | None = False
    else:
        verdict = irr.verdict
    witness = irr.witness if irr.witness is not None else (derived if not perfect else None)
    return SimplicityResult(verdict, witness, derived.dim, irr)


def _symmetric_part(maps: list[np.ndarray], p: int) -> list[np.ndarray]:
    if not maps:
        return []
    stack = np.array(maps, dtype=np.int64)
    skew = (stack - stack.transpose(0, 2, 1)) % p
    combos = left_kernel(skew.reshape(len(maps), -1), p)
    if combos.shape[0] == 0:
        return []
    n = stack.shape[1]
    sym = matmul_mod(combos, stack.reshape(len(maps), -1), p)
    red, rk, _ = rref(sym, p)
    return [row.reshape(n, n) for row in red[:rk]]


def _forms_direct(lie: AlgebraStructure) -> list[np.ndarray]:
    """Solve ad(z)^T G + G ad(z) = 0 over upper-triangle unknowns of symmetric G."""
    n, p = lie.dim, lie.p
    if n > 40:
        raise ValueError("direct form solver limited to dim <= 40")
    ads = adjoint_rep(lie).generators
    iu = np.triu_indices(n)
    units = np.zeros((iu[0].size, n, n), dtype=np.int64)
    units[np.arange(iu[0].size), iu[0], iu[1]] = 1
    units[np.arange(iu[0].size), iu[1], iu[0]] = 1
    cols = []
    for ad in ads:
        expr = (matmul_mod(ad.T[None], units, p) + matmul_mod(units, ad[None], p)) % p
        cols.append(expr[:, iu[0], iu[1]])
    system = np.concatenate(cols, axis=1).T  # equations x unknowns
    sol = kernel(system, p)
    forms = np.zeros((sol.shape[0], n, n), dtype=np.int64)
    forms[:, iu[0], iu[1]] = sol
    forms[:, iu[1], iu[0]] = sol
    if not forms.shape[0]:
        return []
    red, rk, _ = rref(forms.reshape(forms.shape[0], n * n), p)
    return [row.reshape(n, n) for row in red[:rk]]


def invariant_symmetric_forms(lie: AlgebraStructure, method: str = "intertwiner") -> FormSpace:
    """Symmetric G with ω(x, y) = x^T G y and ω([x,z],y) + ω(x,[y,z]) = 0.

    ``method="intertwiner"`` takes the symmetric part of Hom_L(L, L*);
    ``method="direct"`` solves the upper-triangle linear system and is meant
    as an independent route for small algebras.
    """
    if method == "intertwiner":
        rep = adjoint_rep(lie)
        forms = _symmetric_part(hom_space(rep, rep.dual()), lie.p)
    elif method == "direct":
        forms = _forms_direct(lie)
    else:
        raise ValueError(f"unknown method {method!r}")
    return FormSpace(forms, [rank(f, lie.p) for f in forms], lie.p)


def dump_form(form: np.ndarray, p: int, name: str = "form") -> str:
    n = form.shape[0]
    lines = [f"FORM p={p} dim={n} name={name}"]
    lines.extend(" ".join(map(str, row)) for row in np.asarray(form).tolist())
    return "\n".join(lines) + "\n"
