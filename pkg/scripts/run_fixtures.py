"""Run `check` on every bundled fixture and print one summary line each.

    python scripts/run_fixtures.py [--seed N] [--out DIR]

With --out, the structured report of each fixture is written to DIR.
Exits with the largest exit code seen.
"""

import argparse
import sys
import time
from pathlib import Path

import coringlab
from coringlab.fixture import load_fixture
from coringlab.report import run_checks, to_json


def main(argv=None):
    p = argparse.ArgumentParser()
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path)
    args = p.parse_args(argv)
    worst = 0
    for path in sorted((Path(coringlab.__file__).parent / "fixtures").glob("*.crl")):
        t0 = time.perf_counter()
        rep = run_checks(load_fixture(path), seed=args.seed)
        dt = time.perf_counter() - t0
        ran = sum(c["status"] == "ran" for c in rep["checks"])
        print(f"{path.name:10s} checks {ran}/{len(rep['checks'])} ran  "
              f"consistent {'yes' if rep['consistent'] else 'NO'}  [{dt:.1f}s]")
        for v in rep["violations"]:
            print(f"    violation {v}")
        if args.out:
            args.out.mkdir(parents=True, exist_ok=True)
            (args.out / (path.stem + ".json")).write_text(to_json(rep))
        worst = max(worst, 0 if rep["consistent"] else 2)
    return worst


if __name__ == "__main__":
    sys.exit(main())
