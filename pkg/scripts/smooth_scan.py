"""Scan profinite weights for smoothness across types and rank-growth rules."""

import argparse
from dataclasses import dataclass
from itertools import product

from limcone.limits import DirectSystemSpec, ProfiniteWeight, TailRule, is_smooth_weight

MIN_RANK = {"A": 1, "B": 1, "C": 1, "D": 2}


@dataclass
class Config:
    kinds: str = "ABCD"
    steps: tuple = (1, 2)
    head_len: int = 2
    max_coeff: int = 2


def main(cfg: Config) -> None:
    tails = [TailRule(), TailRule("constant", 1), TailRule("affine", 0, 1)]
    print(f"{'system':<10}{'head':<10}{'tail':<20}{'verdict'}")
    for kind in cfg.kinds:
        for step in cfg.steps:
            spec = DirectSystemSpec(kind, (MIN_RANK[kind],), f"step{step}")
            for head in product(range(cfg.max_coeff + 1), repeat=cfg.head_len):
                for tail in tails:
                    v = is_smooth_weight(ProfiniteWeight(spec, head, tail))
                    if v.smooth:
                        verdict = f"smooth, M = {v.bound}"
                    else:
                        verdict = "not smooth, norms " + ", ".join(str(n) for _, n in v.witness[:5]) + ", ..."
                    print(f"{kind + ' +' + str(step):<10}{str(head):<10}{str(tail.to_json()):<20}{verdict}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kinds", default="ABCD")
    ap.add_argument("--head-len", type=int, default=2)
    a = ap.parse_args()
    main(Config(kinds=a.kinds, head_len=a.head_len))
