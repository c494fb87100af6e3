"""Fibers, Tor_1 and stratum restrictions of graded modules and free complexes.

At a point x with stabilizer character group A_x = A / <support weights>, a
generator of degree d spans a line of class [d] in A_x.  Entries of a
degree-preserving matrix between generators of different classes vanish on the
whole stratum of x, so every evaluated matrix is block diagonal by class.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Sequence

from .graded import ChainComplex, FPModule, WeightedVectorSpace, rational_rank
from .grading import GroupElement, QuotientGroup
from .groebner import free_resolution, minimal_presentation
from .orbits import (Stratum, StratumRing, check_on_variety, is_closed_support,
                     stabilizer_characters, stratum_is_nonempty)
from .polyring import Poly


class CrossClassEntry(AssertionError):
    """An entry linking different stabilizer classes failed to vanish."""


def _blocks(labels_tgt, labels_src, matrix) -> dict:
    """Split an evaluated matrix (rows = target) into per-class blocks."""
    out = defaultdict(list)
    rows_by = defaultdict(list)
    for i, r in enumerate(labels_tgt):
        rows_by[r].append(i)
    cols_by = defaultdict(list)
    for j, r in enumerate(labels_src):
        cols_by[r].append(j)
    for i, ri in enumerate(labels_tgt):
        for j, rj in enumerate(labels_src):
            if ri != rj and matrix[i][j]:
                raise CrossClassEntry(f"entry ({i},{j}) joins classes {ri} and {rj} but is nonzero")
    for r in set(rows_by) | set(cols_by):
        out[r] = [[matrix[i][j] for j in cols_by[r]] for i in rows_by[r]]
    return out


def _rank_by_class(labels_tgt, labels_src, matrix) -> dict:
    return {r: rational_rank(b) if b and b[0] else 0 for r, b in _blocks(labels_tgt, labels_src, matrix).items()}


def pointwise_cohomology(C: ChainComplex, x: Sequence, degrees: Sequence[int] | None = None,
                         stabilizer: QuotientGroup | None = None) -> dict[int, WeightedVectorSpace]:
    """Cohomology of the free complex C evaluated at x, split by stabilizer class."""
    setup = C.setup
    pt = check_on_variety(x, setup)
    if stabilizer is None:
        s = tuple(i for i, v in enumerate(pt) if v)
        stabilizer = stabilizer_characters(s, setup)
    if degrees is None:
        degrees = C.degrees
    labels = {j: [stabilizer.project(d) for d in t.generators.degrees] for j, t in C.terms.items()}
    ranks = {}
    for j in set(degrees) | {j - 1 for j in degrees}:
        if j in C.diffs:
            d = C.diffs[j]
            ranks[j] = _rank_by_class(labels[j + 1], labels[j], d.evaluate(pt))
    out = {}
    for j in degrees:
        counts = defaultdict(int)
        for r in labels.get(j, []):
            counts[r] += 1
        dims = {}
        for r, n in counts.items():
            dims[r] = n - ranks.get(j, {}).get(r, 0) - ranks.get(j - 1, {}).get(r, 0)
        out[j] = WeightedVectorSpace(dims)
    return out


def presentation_complex(M: FPModule, minimal: bool = True) -> ChainComplex:
    P = minimal_presentation(M) if minimal else M
    setup = M.setup
    return ChainComplex(setup, {-1: FPModule.free(setup, P.relations.source.degrees),
                                0: FPModule.free(setup, P.generators.degrees)},
                        {-1: P.relations})


def fiber_at_point(M: FPModule, x: Sequence) -> WeightedVectorSpace:
    """M tensor k(x) as a representation of the stabilizer of x."""
    return pointwise_cohomology(presentation_complex(M), x, [0])[0]


def tor1_at_point(M: FPModule, x: Sequence) -> WeightedVectorSpace:
    return pointwise_cohomology(free_resolution(M, 2), x, [-1])[-1]


# --------------------------------------------------------------------------
# stratum restrictions


@dataclass(frozen=True)
class StratumComplex:
    """A free complex restricted to a stratum, generators labelled by class.

    ``diffs[j]`` holds the rows (target = degree j+1) of the restricted d^j as
    polynomials in the stratum ring.
    """

    stratum: Stratum
    labels: Mapping[int, tuple[GroupElement, ...]]
    diffs: Mapping[int, tuple[tuple[Poly, ...], ...]]

    @property
    def ring(self) -> StratumRing:
        return self.stratum.ring

    def rank(self, j: int) -> int:
        return len(self.labels.get(j, ()))

    def matrix(self, j: int) -> tuple[tuple[Poly, ...], ...]:
        m = self.diffs.get(j)
        if m is None:
            n = self.ring.nvars
            return tuple(tuple(Poly.zero(n) for _ in range(self.rank(j))) for _ in range(self.rank(j + 1)))
        return m

    def classes(self) -> list[GroupElement]:
        found = {r for labs in self.labels.values() for r in labs}
        return sorted(found, key=lambda r: r.values)

    def evaluate(self, j: int, point: Sequence) -> list[list]:
        coords = self.ring.point_coordinates(point)
        return [[f.evaluate(coords) for f in row] for row in self.matrix(j)]

    def is_zero_map(self, j: int) -> bool:
        return not any(f for row in self.matrix(j) for f in row)


def restrict_to_stratum(C: ChainComplex, s) -> StratumComplex:
    """Restrict a free complex to the stratum ``s`` (a Stratum or a support)."""
    setup = C.setup
    if not isinstance(s, Stratum):
        s = tuple(sorted(s))
        if not is_closed_support(s, setup):
            raise ValueError(f"support {s} does not carry closed orbits")
        s = Stratum(s, stabilizer_characters(s, setup), True, stratum_is_nonempty(s, setup), setup)
    elif not s.closed:
        raise ValueError(f"stratum {s.label()} does not carry closed orbits")
    ring = s.ring
    q = s.stabilizer
    labels = {j: tuple(q.project(d) for d in t.generators.degrees) for j, t in C.terms.items()}
    diffs = {}
    for j, d in C.diffs.items():
        diffs[j] = tuple(tuple(ring.restrict(f) for f in row) for row in d.rows())
    return StratumComplex(s, labels, diffs)


def weight_component(C: StratumComplex, r: GroupElement) -> StratumComplex:
    """The summand of C spanned by generators of class ``r``."""
    if r.group != C.stratum.stabilizer.target:
        raise ValueError(f"class {r} is not in the stabilizer group {C.stratum.stabilizer.target}")
    keep = {j: [i for i, lab in enumerate(labs) if lab == r] for j, labs in C.labels.items()}
    labels = {j: tuple(C.labels[j][i] for i in idx) for j, idx in keep.items() if idx}
    diffs = {}
    for j, m in C.diffs.items():
        src, tgt = keep.get(j, []), keep.get(j + 1, [])
        if src and tgt:
            diffs[j] = tuple(tuple(m[i][k] for k in src) for i in tgt)
    return StratumComplex(C.stratum, labels, diffs)


def cross_class_entries(C: StratumComplex) -> list[tuple[int, int, int]]:
    """Positions (j, row, col) of nonzero entries joining different classes."""
    bad = []
    for j, m in C.diffs.items():
        for i, row in enumerate(m):
            for k, f in enumerate(row):
                if f and C.labels[j + 1][i] != C.labels[j][k]:
                    bad.append((j, i, k))
    return bad
