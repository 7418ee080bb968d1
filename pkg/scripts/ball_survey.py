"""Sizes of balls in the positive cone, layer by layer.

Growth of the layers shows how far the finite window reaches; identity hits
would disprove the cone's Property A and should always be zero.
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from isolord.cli import load_group
from isolord.oracle import enumerate_ball


@dataclass(frozen=True)
class SurveyConfig:
    groups: tuple[str, ...] = ("tower:2,3", "tower:2,3,4", "centerless:2,3,2,3")
    max_radius: int = 6


def run(cfg: SurveyConfig) -> None:
    for spec in cfg.groups:
        node = load_group(spec)
        t0 = time.perf_counter()
        table = enumerate_ball(node, cfg.max_radius)
        dt = time.perf_counter() - t0
        print(f"{spec}: radius {cfg.max_radius}, {len(table)} elements in {dt:.2f}s")
        print(f"  layers {table.layer_sizes}")
        print(f"  dedup {table.dedup}")
        print(f"  identity hits {len(table.identity_hits)}")
        if table._index is not None and not table._index.central:
            print(f"  engine comparisons {table._index.comparisons}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=int, default=SurveyConfig.max_radius)
    ap.add_argument("--group", action="append")
    a = ap.parse_args()
    groups = tuple(a.group) if a.group else SurveyConfig.groups
    run(SurveyConfig(groups, a.radius))


if __name__ == "__main__":
    main()
