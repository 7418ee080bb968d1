"""Time ``sign`` on random words of growing length and fit the growth exponent.

    python3 scripts/bench_sign.py --group tower:2,3 --lengths 10,100,1000,3000
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from isolord.cli import bench, load_group


@dataclass(frozen=True)
class BenchConfig:
    group: str = "tower:2,3"
    lengths: tuple[int, ...] = (10, 100, 1000)
    samples: int = 20
    seed: int = 0


def run(cfg: BenchConfig) -> None:
    node = load_group(cfg.group)
    rows, slope = bench(node, cfg.lengths, cfg.samples, cfg.seed)
    print(f"group {cfg.group}, {cfg.samples} words per length, seed {cfg.seed}")
    print(f"{'length':>8} {'mean ms':>10}")
    for n, t in rows:
        print(f"{n:>8} {t * 1000:10.3f}")
    print(f"growth exponent {slope:.3f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--group", default=BenchConfig.group)
    ap.add_argument("--lengths", default=",".join(map(str, BenchConfig.lengths)))
    ap.add_argument("--samples", type=int, default=BenchConfig.samples)
    ap.add_argument("--seed", type=int, default=BenchConfig.seed)
    a = ap.parse_args()
    run(BenchConfig(a.group, tuple(int(t) for t in a.lengths.split(",")), a.samples, a.seed))


if __name__ == "__main__":
    main()
