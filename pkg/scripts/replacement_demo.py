"""Build descendable replacements of random complexes and show what comes out."""
from __future__ import annotations

import argparse
from dataclasses import dataclass

from descheck.complexes import (check_complex_descent, descend_complex, entries_invariant, pullback_complex,
                                quasi_iso_check)
from descheck.descent import PreconditionError
from descheck.graded import ChainMap
from descheck.grading import EquivariantSetup
from descheck.polyring import format_poly
from descheck.sampling import random_descending_complex, random_failing_complex

W1 = EquivariantSetup.build(1, (), ("x", "y"), [1, -1])


@dataclass
class Config:
    seeds: int = 10
    failing: bool = False
    show: bool = True


def show_complex(C, names) -> None:
    for j in sorted(C.terms):
        degs = ", ".join(str(d) for d in C.term(j).generators.degrees)
        print(f"    E^{j}: rank {C.term(j).rank} [{degs}]")
        if j in C.diffs:
            for row in C.diff(j).rows():
                print("      " + "  ".join(format_poly(f, names) for f in row))


def run(cfg: Config) -> int:
    bad = 0
    for seed in range(cfg.seeds):
        E = (random_failing_complex if cfg.failing else random_descending_complex)(W1, seed)
        v = check_complex_descent(E)
        print(f"seed {seed}: ranks {E.ranks()}, descends={v.descends}")
        if not v.descends:
            for w in v.witnesses:
                print("  witness: " + w.describe())
            continue
        try:
            D = descend_complex(E)
        except PreconditionError as e:
            print(f"  replacement refused: {e}")
            bad += 1
            continue
        back = pullback_complex(D.complex, W1)
        ok = entries_invariant(D.replacement) and quasi_iso_check(ChainMap(back, E, dict(D.q.maps)))
        bad += not ok
        print(f"  replacement ranks {D.replacement.ranks()}, quasi-isomorphic pullback: {ok}")
        if cfg.show:
            show_complex(D.complex, D.complex.setup.names)
    return 1 if bad else 0


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, default=Config.seeds)
    ap.add_argument("--failing", action="store_true", help="use resolutions of random modules instead")
    ap.add_argument("--quiet", action="store_true", help="do not print the descended complexes")
    a = ap.parse_args()
    return run(Config(a.seeds, a.failing, not a.quiet))


if __name__ == "__main__":
    raise SystemExit(main())
