"""Command-line front end.

Exit codes: 0 success, 1 check failure, 2 usage error, 3 I/O error,
4 inconclusive randomized verdict.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algebra_core import dump_structure, read_structure
from .module_theory import MeataxeConfig
from .pipeline import CHECKS, RunConfig, UnknownAlgebra, resolve_algebra, resolve_cochain, theorem, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


class _IOFailure(Exception):
    pass


def _common(p: argparse.ArgumentParser, algebra: bool = True) -> None:
    if algebra:
        p.add_argument("name", nargs="?", help="algebra: P, D, W13, psi-bracket, O(m1,...,mn)")
        p.add_argument("--algebra", dest="algebra_flag")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--coeff-phi", type=int, default=1)
    p.add_argument("--coeff-psi", type=int, default=2)


def _meataxe_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--meataxe-attempts",
        type=int,
        default=MeataxeConfig().max_attempts,
        help="random elements drawn before the irreducibility test gives up",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modlie", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="write a structure-constant dump")
    _common(b)

    v = sub.add_parser("verify", help="run selected checks on one algebra")
    _common(v)
    v.add_argument("--checks", default="lie", help=f"comma-separated subset of {','.join(CHECKS)}")
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.add_argument("--from-dump", help="load the algebra from a structure-constant dump")
    _meataxe_flag(v)

    t = sub.add_parser("theorem", help="run the full identification pipeline")
    _common(t, algebra=False)
    t.add_argument("--seed", type=int, default=1)
    t.add_argument("--format", choices=("text", "json"), default="text")
    t.add_argument("--from-dump", help="load D from a structure-constant dump")
    _meataxe_flag(t)

    c = sub.add_parser("dump-cochain", help="write a cochain dump (phi, psi or deformation)")
    c.add_argument("name", choices=("phi", "psi", "deformation"))
    c.add_argument("--out")
    c.add_argument("--coeff-phi", type=int, default=1)
    c.add_argument("--coeff-psi", type=int, default=2)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise _IOFailure(f"cannot write {out}: {exc}") from exc


def _load(path: str):
    try:
        _, alg = read_structure(path)
    except OSError as exc:
        raise _IOFailure(f"cannot read {path}: {exc}") from exc
    except (ValueError, KeyError) as exc:
        raise _IOFailure(f"malformed dump {path}: {exc}") from exc
    return alg


def _algebra_name(args) -> str | None:
    return args.algebra_flag or args.name


def _report_exit(report) -> int:
    if report.inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK if report.overall else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "build":
            name = _algebra_name(args)
            if not name:
                parser.error("build needs an algebra name")
            alg = resolve_algebra(name, args.coeff_phi, args.coeff_psi)
            _emit(dump_structure(alg), args.out)
            return EXIT_OK

        if args.command == "dump-cochain":
            c = resolve_cochain(args.name, args.coeff_phi, args.coeff_psi)
            _emit(dump_structure(c, tag="COCHAIN"), args.out)
            return EXIT_OK

        if args.meataxe_attempts < 0:
            parser.error("--meataxe-attempts must be non-negative")
        cfg = RunConfig(
            seed=args.seed,
            coeff_phi=args.coeff_phi,
            coeff_psi=args.coeff_psi,
            meataxe=MeataxeConfig(max_attempts=args.meataxe_attempts),
        )

        if args.command == "verify":
            checks = [c.strip() for c in args.checks.split(",") if c.strip()]
            bad = [c for c in checks if c not in CHECKS]
            if bad or not checks:
                parser.error(f"unknown checks: {','.join(bad) or '(none given)'}")
            if args.from_dump:
                alg = _load(args.from_dump)
            else:
                name = _algebra_name(args)
                if not name:
                    parser.error("verify needs an algebra name or --from-dump")
                alg = resolve_algebra(name, args.coeff_phi, args.coeff_psi)
            report = verify(alg, checks, cfg)
        else:
            deformed = _load(args.from_dump) if args.from_dump else None
            report = theorem(cfg, deformed)

        _emit(report.to_json() + "\n" if args.format == "json" else report.to_text(), args.out)
        return _report_exit(report)
    except UnknownAlgebra as exc:
        print(f"modlie: unknown algebra {exc}", file=sys.stderr)
        return EXIT_USAGE
    except _IOFailure as exc:
        print(f"modlie: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
