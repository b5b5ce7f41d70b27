"""Run the identification pipeline for several seeds and print a timing table."""

import argparse

from modlie.pipeline import RunConfig, theorem


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--seeds", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args()
    for seed in args.seeds:
        report = theorem(RunConfig(seed=seed))
        verdicts = " ".join("+" if c.passed else "-" for c in report.checks)
        print(f"seed {seed}: overall={report.overall} [{verdicts}] {report.total_elapsed_ms / 1000:.1f} s")


if __name__ == "__main__":
    main()
