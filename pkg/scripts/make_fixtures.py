"""Regenerate the golden structure-constant dumps under tests/fixtures/."""

from pathlib import Path

from modlie.algebra_core import write_structure
from modlie.poisson_deform import build_D, build_P, build_phi, build_psi, build_W13

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for alg in (build_P(), build_D(), build_W13()):
        write_structure(alg, OUT / f"{alg.name}.sc")
    for c in (build_phi(), build_psi()):
        write_structure(c, OUT / f"{c.name}.cochain", tag="COCHAIN")
    for f in sorted(OUT.iterdir()):
        print(f"{f.name:16} {f.stat().st_size:>9} bytes")


if __name__ == "__main__":
    main()
