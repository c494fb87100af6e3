"""Regenerate the randomized-regression corpus files from fixed seeds.

Expected verdicts come from the canonical-map test, which is independent of
the stratum checker that the CLI runs.
"""
from __future__ import annotations

import argparse
from pathlib import Path

from descheck.invariants import canonical_map_verdict
from descheck.problem import Problem, corpus_dir, dump_problem
from descheck.sampling import ModuleSampler, random_module
from descheck.grading import EquivariantSetup

SETUPS = {
    "w1": (EquivariantSetup.build(1, (), ("x", "y"), [1, -1]), "G_m acting on the plane with weights (1, -1)"),
    "w2": (EquivariantSetup.build(1, (), ("z",), [1]), "G_m acting on the line with weight 1"),
    "w3": (EquivariantSetup.build(0, (2,), ("x1", "x2"), [1, 1]), "Z/2 acting on the plane by -1"),
}


def build(tag: str, seeds: range, sampler: ModuleSampler) -> Problem:
    setup, what = SETUPS[tag]
    modules, expected = {}, {}
    for s in seeds:
        M = random_module(setup, s, sampler)
        name = f"seed_{s}"
        modules[name] = M
        expected[name] = {"descends": canonical_map_verdict(M).is_iso}
    return Problem(setup, modules, {}, {}, {"seeds": [seeds.start, seeds.stop]}, {"modules": expected},
                   f"random_regression_{tag}", f"Seeded random modules: {what}.")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=corpus_dir())
    ap.add_argument("--count", type=int, default=12)
    args = ap.parse_args()
    sampler = ModuleSampler(max_rank=2, degree_range=1, zero_degree_bias=0.6)
    for tag in SETUPS:
        P = build(tag, range(1000, 1000 + args.count), sampler)
        path = args.out / f"random_regression_{tag}.json"
        path.write_text(dump_problem(P) + "\n", encoding="utf-8")
        n_yes = sum(v["descends"] for v in P.expected["modules"].values())
        print(f"{path.name}: {len(P.modules)} modules, {n_yes} descend")


if __name__ == "__main__":
    main()
