"""Expand the diagonal class for points on a surface and list the candidate generators.

For v = (1, 0, -n) the moduli space is the Hilbert scheme of n points. The
script reports the expected dimension m, the assembled rank, the number of
terms of c_m and the distinct left factors alpha_j grouped by degree.
"""
import argparse
import time
from collections import Counter
from dataclasses import dataclass

from poissonk.cohomology import build_surface
from poissonk.diagonal import (assemble_diagonal_kclass, chern_expand, generator_report,
                               moduli_context, top_chern_expand)
from poissonk.ktheory import from_ch
from poissonk.poly import monomial_degree


@dataclass
class Config:
    surface: str = "P2"
    max_n: int = 2
    epsilon: int = 1
    show_vanishing: bool = False


def main(cfg: Config) -> None:
    S = build_surface(cfg.surface)
    for n in range(1, cfg.max_n + 1):
        ctx = moduli_context(S, from_ch(S, 1, [0], -n), cfg.epsilon)
        kd = assemble_diagonal_kclass(ctx)
        t0 = time.perf_counter()
        delta = top_chern_expand(kd)
        dt = time.perf_counter() - t0
        report = generator_report(delta)
        by_degree = Counter()
        for pair in delta.pairs():
            (mono, _), = pair[0].terms.items()
            by_degree[monomial_degree(mono)] += 1
        print(f"{S.name} n={n}: m={ctx.m} rank={kd.rank} (expected {kd.expected_rank}) "
              f"terms={len(delta.terms())} generators={len(report)} ({dt:.2f}s)")
        print(f"   alpha count by degree: {dict(sorted(by_degree.items()))}")
        if cfg.show_vanishing and ctx.m >= 1:
            below = chern_expand(kd, ctx.m - 1)
            print(f"   c_(m-1) has {len(below.terms())} terms")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--surface", default=Config.surface)
    ap.add_argument("--max-n", type=int, default=Config.max_n)
    ap.add_argument("--epsilon", type=int, default=Config.epsilon)
    ap.add_argument("--show-vanishing", action="store_true")
    a = ap.parse_args()
    main(Config(a.surface, a.max_n, a.epsilon, a.show_vanishing))
