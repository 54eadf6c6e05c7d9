"""Run every acceptance suite and print one line per criterion."""
import argparse
import sys

from poissonk.verify import SUITES, VerifyConfig, run_suite

if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=VerifyConfig.seed)
    ap.add_argument("--verbose", action="store_true")
    a = ap.parse_args()
    cfg = VerifyConfig(seed=a.seed)
    failed = 0
    for name in SUITES:
        (res,) = run_suite(name, cfg)
        print(res.line())
        if a.verbose or not res.passed:
            print(f"    {res.detail}")
        failed += not res.passed
    sys.exit(1 if failed else 0)
