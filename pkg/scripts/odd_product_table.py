"""Table of c_d(x u y) for odd x, y: term counts, largest coefficient, integrality."""
import argparse
import time
from dataclasses import dataclass

from poissonk.chern import odd_pair_chern


@dataclass
class Config:
    max_d: int = 8
    show: int = 3


def main(cfg: Config) -> None:
    print(f"{'d':>2} {'terms':>6} {'max|coeff|':>10} {'integral':>8} {'sec':>6}")
    for d in range(1, cfg.max_d + 1):
        t0 = time.perf_counter()
        p = odd_pair_chern(d)
        dt = time.perf_counter() - t0
        big = max(abs(c) for c in p.terms.values())
        print(f"{d:>2} {len(p.terms):>6} {str(big):>10} {str(p.is_integral()):>8} {dt:6.2f}")
        if d <= cfg.show:
            print(f"   {p}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-d", type=int, default=Config.max_d)
    ap.add_argument("--show", type=int, default=Config.show)
    a = ap.parse_args()
    main(Config(a.max_d, a.show))
