"""Named algebras, individual verification checks, and the end-to-end theorem run."""

from __future__ import annotations

import re
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import __version__
from .algebra_core import (
    AlgebraStructure,
    center,
    check_anticommutative,
    check_jacobi,
    derived_subalgebra,
    quotient,
)
from .divided_powers import divided_powers_multi
from .ff_linalg import Subspace
from .module_theory import (
    MeataxeConfig,
    adjoint_rep,
    centralizer_dimension,
    invariant_symmetric_forms,
    is_simple,
)
from .poisson_deform import (
    P_CHAR,
    build_D,
    build_P,
    build_phi,
    build_psi,
    build_W13,
    cocycle_check,
    deformation_cochain,
    jacobiator,
    psi_bracket_algebra,
)
from .report import FAIL, INCONCLUSIVE, PASS, CheckRecord, VerificationReport

CHECKS = ("lie", "cocycles", "prolong", "simple", "central", "form")
_O_PATTERN = re.compile(r"^O\((\d+(?:,\d+)*)\)$")

CONCLUSION = (
    "D is a simple 125-dim Lie algebra with a nonzero symmetric invariant form over GF(5), "
    "hence D ≃ M(1,1) by the classification"
)


class UnknownAlgebra(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    seed: int = 1
    coeff_phi: int = 1
    coeff_psi: int = 2
    meataxe: MeataxeConfig = MeataxeConfig()

    @property
    def exploratory(self) -> bool:
        return (self.coeff_phi % P_CHAR, self.coeff_psi % P_CHAR) != (1, 2)


def resolve_algebra(name: str, coeff_phi: int = 1, coeff_psi: int = 2) -> AlgebraStructure:
    """P, D, W13, psi-bracket, or O(m_1,...,m_n) over GF(5)."""
    key = name.replace(" ", "")
    if key == "P":
        return build_P()
    if key == "D":
        return build_D(coeff_phi, coeff_psi)
    if key in ("W13", "W1(3)", "W_1(3)"):
        return build_W13()
    if key == "psi-bracket":
        return psi_bracket_algebra()
    m = _O_PATTERN.match(key)
    if m:
        ms = [int(x) for x in m.group(1).split(",")]
        if not ms or min(ms) < 1:
            raise UnknownAlgebra(name)
        return divided_powers_multi(P_CHAR, ms)
    raise UnknownAlgebra(name)


def resolve_cochain(name: str, coeff_phi: int = 1, coeff_psi: int = 2):
    if name == "phi":
        return build_phi()
    if name == "psi":
        return build_psi()
    if name in ("deformation", "phi+2psi"):
        return deformation_cochain(coeff_phi, coeff_psi)
    raise UnknownAlgebra(name)


def _subspace_witness(sub: Subspace) -> dict:
    return {
        "kind": "invariant subspace",
        "dim": sub.dim,
        "contains_e0": sub.contains(np.eye(sub.ambient_dim, dtype=np.int64)[0]),
        "basis": sub.basis.tolist(),
    }


def _timed(name: str, fn: Callable[[], tuple[str, object, dict]], seed: int | None = None) -> CheckRecord:
    t0 = time.perf_counter()
    verdict, witness, detail = fn()
    return CheckRecord(name, verdict, witness, (time.perf_counter() - t0) * 1000.0, seed, detail)


def _verdict(ok: bool) -> str:
    return PASS if ok else FAIL


def check_lie(alg: AlgebraStructure, label: str | None = None) -> list[CheckRecord]:
    label = label or alg.name

    def anti():
        r = check_anticommutative(alg)
        return _verdict(r.ok), (list(r.witness) if r.witness else None), {"summary": r.detail}

    def jac():
        r = check_jacobi(alg)
        return (
            _verdict(r.ok),
            (list(r.witness) if r.witness else None),
            {"summary": f"{r.detail}, {r.checked} triples", "triples": r.checked},
        )

    return [_timed(f"{label}:anticommutative", anti), _timed(f"{label}:jacobi", jac)]


def check_cocycles() -> list[CheckRecord]:
    P = build_P()
    out = []
    for c in (build_phi(), build_psi()):

        def run(c=c):
            r = cocycle_check(P, c)
            return _verdict(r.ok), (list(r.witness) if r.witness else None), {"summary": r.detail, "triples": r.checked}

        out.append(_timed(f"cocycle:{c.name}", run))
    return out


def check_prolong(cfg: RunConfig) -> CheckRecord:
    def run():
        c = deformation_cochain(cfg.coeff_phi, cfg.coeff_psi)
        r = jacobiator(c)
        return _verdict(r.ok), (list(r.witness) if r.witness else None), {"summary": r.detail, "triples": r.checked}

    return _timed("prolong:jacobiator", run)


def check_simple(alg: AlgebraStructure, cfg: RunConfig, label: str | None = None) -> CheckRecord:
    def run():
        r = is_simple(alg, cfg.seed, cfg.meataxe)
        irr = r.irreducibility
        detail = {
            "derived_dim": r.derived_dim,
            "meataxe_attempts": irr.attempts,
            "nullity": irr.nullity,
            "meataxe": irr.detail,
        }
        if r.verdict is None:
            detail["summary"] = f"inconclusive: {irr.detail}"
            return INCONCLUSIVE, None, detail
        detail["summary"] = "simple" if r.verdict else "not simple"
        return _verdict(r.verdict), (_subspace_witness(r.witness) if r.witness is not None else None), detail

    return _timed(f"{label or alg.name}:simple", run, seed=cfg.seed)


def check_central(alg: AlgebraStructure, label: str | None = None) -> CheckRecord:
    def run():
        d = centralizer_dimension(adjoint_rep(alg))
        return _verdict(d == 1), None, {"summary": f"centralizer dimension {d}", "centralizer_dim": d}

    return _timed(f"{label or alg.name}:central", run)


def check_form(alg: AlgebraStructure, label: str | None = None, expect_absent: bool = False) -> CheckRecord:
    def run():
        fs = invariant_symmetric_forms(alg)
        detail = {"form_space_dim": fs.dim, "ranks": fs.ranks}
        if fs.dim == 0:
            detail["summary"] = "absent"
        else:
            detail["summary"] = f"form space dim {fs.dim}, ranks {fs.ranks}"
        ok = fs.dim == 0 if expect_absent else (fs.dim == 1 and fs.nondegenerate)
        return _verdict(ok), None, detail

    name = f"{label or alg.name}:form_absent" if expect_absent else f"{label or alg.name}:form"
    return _timed(name, run)


def check_construction() -> CheckRecord:
    def run():
        P = build_P()
        z = center(P)
        q = quotient(P, z)
        dq = derived_subalgebra(q).dim
        unit_central = z.contains(np.eye(P.dim, dtype=np.int64)[0])
        ok = P.dim == 125 and z.dim == 1 and unit_central and dq == 123
        detail = {
            "summary": f"dim {P.dim}, center dim {z.dim}, dim [P/Z, P/Z] = {dq}",
            "dim": P.dim,
            "center_dim": z.dim,
            "derived_quotient_dim": dq,
        }
        return _verdict(ok), None, detail

    return _timed("P:construction", run)


def run_checks(alg: AlgebraStructure, checks, cfg: RunConfig) -> list[CheckRecord]:
    records: list[CheckRecord] = []
    for name in checks:
        if name == "lie":
            records += check_lie(alg)
        elif name == "cocycles":
            records += check_cocycles()
        elif name == "prolong":
            records.append(check_prolong(cfg))
        elif name == "simple":
            records.append(check_simple(alg, cfg))
        elif name == "central":
            records.append(check_central(alg))
        elif name == "form":
            records.append(check_form(alg))
        else:
            raise ValueError(f"unknown check {name!r}")
    return records


def verify(alg: AlgebraStructure, checks, cfg: RunConfig) -> VerificationReport:
    t0 = time.perf_counter()
    records = run_checks(alg, checks, cfg)
    return VerificationReport(
        tool_version=__version__,
        p=alg.p,
        algebra=alg.name,
        checks=records,
        coefficients={"phi": cfg.coeff_phi, "psi": cfg.coeff_psi},
        exploratory=cfg.exploratory,
        total_elapsed_ms=(time.perf_counter() - t0) * 1000.0,
    )


def theorem(cfg: RunConfig, deformed: AlgebraStructure | None = None) -> VerificationReport:
    """Full pipeline: P, cocycles, prolongation, D, central simplicity, form, W_1(3) control."""
    t0 = time.perf_counter()
    D = deformed if deformed is not None else build_D(cfg.coeff_phi, cfg.coeff_psi)
    records = [check_construction()]
    records += check_lie(build_P(), "P")
    records += check_cocycles()
    records.append(check_prolong(cfg))
    records += check_lie(D, "D")
    if all(r.passed for r in records):
        records.append(check_simple(D, cfg, "D"))
        records.append(check_central(D, "D"))
        records.append(check_form(D, "D"))
        records.append(check_form(build_W13(), "W13", expect_absent=True))
    report = VerificationReport(
        tool_version=__version__,
        p=D.p,
        algebra=D.name,
        checks=records,
        coefficients={"phi": cfg.coeff_phi, "psi": cfg.coeff_psi},
        exploratory=cfg.exploratory,
    )
    if report.overall and not cfg.exploratory:
        report.conclusion = CONCLUSION
    elif report.overall:
        report.conclusion = "exploratory coefficients: all checks pass, no identification claimed"
    report.total_elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return report
