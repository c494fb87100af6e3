"""Compare the stratum checker with the canonical-map test on seeded random modules."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field

from descheck.descent import check_sheaf_descent
from descheck.grading import EquivariantSetup
from descheck.invariants import canonical_map_verdict
from descheck.sampling import ModuleSampler, random_module

SETUPS = {
    "W1": EquivariantSetup.build(1, (), ("x", "y"), [1, -1]),
    "W2": EquivariantSetup.build(1, (), ("z",), [1]),
    "W3": EquivariantSetup.build(0, (2,), ("x1", "x2"), [1, 1]),
    "T2": EquivariantSetup.build(2, (), ("a", "b", "c"), [[1, 0], [0, 1], [-1, -1]]),
}


@dataclass
class Config:
    setups: tuple[str, ...] = ("W1", "W2", "W3")
    seeds: int = 100
    first_seed: int = 0
    sampler: ModuleSampler = field(default_factory=lambda: ModuleSampler(degree_range=1, zero_degree_bias=0.5))


def run(cfg: Config) -> int:
    disagreements = 0
    for name in cfg.setups:
        setup = SETUPS[name]
        yes = no = 0
        t0 = time.perf_counter()
        for seed in range(cfg.first_seed, cfg.first_seed + cfg.seeds):
            M = random_module(setup, seed, cfg.sampler)
            ours = check_sheaf_descent(M).descends
            oracle = canonical_map_verdict(M).is_iso
            if ours != oracle:
                disagreements += 1
                print(f"  {name} seed {seed}: checker {ours}, canonical map {oracle}")
            yes += ours
            no += not ours
        print(f"{name}: {cfg.seeds} modules, {yes} descend, {no} do not, {time.perf_counter() - t0:.2f}s")
    print(f"disagreements: {disagreements}")
    return 1 if disagreements else 0


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--setups", nargs="+", default=list(Config.setups), choices=sorted(SETUPS))
    ap.add_argument("--seeds", type=int, default=Config.seeds)
    ap.add_argument("--first-seed", type=int, default=Config.first_seed)
    ap.add_argument("--max-rank", type=int, default=3)
    ap.add_argument("--zero-degree-bias", type=float, default=0.5)
    a = ap.parse_args()
    sampler = ModuleSampler(max_rank=a.max_rank, degree_range=1, zero_degree_bias=a.zero_degree_bias)
    return run(Config(tuple(a.setups), a.seeds, a.first_seed, sampler))


if __name__ == "__main__":
    raise SystemExit(main())
