"""Scan P + a·phi + b·psi over GF(5) and report which choices stay Lie, simple, self-dual.

Exploratory only: nothing here is part of the identification claim.
"""

import argparse
import itertools

from modlie.algebra_core import check_jacobi
from modlie.module_theory import invariant_symmetric_forms, is_simple
from modlie.poisson_deform import build_D


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    print(" a  b  jacobi  simple  forms")
    for a, b in itertools.product(range(5), repeat=2):
        alg = build_D(a, b)
        lie = check_jacobi(alg).ok
        if not lie:
            print(f"{a:2} {b:2}  no      -       -")
            continue
        simple = is_simple(alg, args.seed).verdict
        forms = invariant_symmetric_forms(alg).dim if simple else "-"
        print(f"{a:2} {b:2}  yes     {simple!s:7} {forms}")


if __name__ == "__main__":
    main()
