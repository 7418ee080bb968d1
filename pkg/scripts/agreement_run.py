"""Run the differential suites over several groups and print one JSON record per run.

The engine is compared with the x/h factorization pipeline, with the ball
oracle, and (on towers) with the central normal form.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass, field

from isolord.cli import load_group
from isolord.suites import run_suite


@dataclass(frozen=True)
class AgreementConfig:
    groups: tuple[str, ...] = ("tower:2,3", "tower:2,3,4", "tower:3,5,2 assoc=right", "centerless:2,3,2,3")
    samples: int = 1000
    max_length: int = 30
    radius: int = 5
    seed: int = 0
    suites: tuple[str, ...] = field(default=("cross-pipeline", "oracle-sign", "nf-agreement", "welldefined", "rightinv"))


def run(cfg: AgreementConfig) -> bool:
    ok = True
    for spec in cfg.groups:
        node = load_group(spec)
        for suite in cfg.suites:
            params = {"samples": cfg.samples, "max_length": cfg.max_length, "radius": cfg.radius, "seed": cfg.seed}
            if suite == "oracle-sign":
                params["max_length"] = min(cfg.max_length, 8)
            report = run_suite(node, suite, params)
            ok = ok and report.status != "FAIL"
            print(json.dumps({"group": spec, **report.machine()}, sort_keys=True))
    return ok


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=AgreementConfig.samples)
    ap.add_argument("--max-length", type=int, default=AgreementConfig.max_length)
    ap.add_argument("--seed", type=int, default=AgreementConfig.seed)
    ap.add_argument("--group", action="append", help="repeatable; defaults to the standard four")
    a = ap.parse_args()
    cfg = AgreementConfig(samples=a.samples, max_length=a.max_length, seed=a.seed)
    if a.group:
        cfg = AgreementConfig(groups=tuple(a.group), samples=a.samples, max_length=a.max_length, seed=a.seed)
    raise SystemExit(0 if run(cfg) else 1)


if __name__ == "__main__":
    main()
