"""Closed-orbit strata of a diagonalizable group acting linearly on X = V(J).

Points are sorted by their support (the set of nonzero coordinates).  The
orbit of a point is closed exactly when the cone spanned by the free parts of
the support weights is a linear subspace, and its stabilizer has character
group A / <support weights>.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .grading import EquivariantSetup, QuotientGroup, quotient_by_subgroup
from .groebner import locus_is_empty
from .polyring import QQ, Poly

Support = tuple  # sorted tuple of variable indices

MAX_VARIABLES = 16


class TooManyVariables(ValueError):
    pass


def support_mask(s: Support) -> int:
    return sum(1 << i for i in s)


def support_from_mask(mask: int, n: int) -> Support:
    return tuple(i for i in range(n) if mask >> i & 1)


# --------------------------------------------------------------------------
# exact cone test


def _fm_feasible(rows: list[tuple[list, object]]) -> bool:
    """Is {y : a . y <= b for (a, b) in rows} nonempty?  Fourier-Motzkin."""
    rows = [([QQ(x) for x in a], QQ(b)) for a, b in rows]
    nv = len(rows[0][0]) if rows else 0
    for k in range(nv):
        pos, neg, zero = [], [], []
        for a, b in rows:
            (pos if a[k] > 0 else neg if a[k] < 0 else zero).append((a, b))
        new = list(zero)
        for ap, bp in pos:
            for an, bn in neg:
                lp, ln = -an[k], ap[k]
                a = [lp * x + ln * y for x, y in zip(ap, an)]
                new.append((a, lp * bp + ln * bn))
        # drop exact duplicates to slow the blow-up
        seen = set()
        rows = []
        for a, b in new:
            t = (tuple(a), b)
            if t not in seen:
                seen.add(t)
                rows.append((a, b))
    return all(b >= 0 for _, b in rows)


def cone_is_subspace(vectors: Sequence[Sequence[int]]) -> bool:
    """True iff the rational cone spanned by ``vectors`` is a linear subspace.

    Equivalent to the existence of c_i >= 1 with sum c_i v_i = 0.  We put
    c = 1 + d, solve the equalities for pivot variables and run Fourier-Motzkin
    on the remaining inequalities d >= 0.
    """
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return True
    k = len(vecs)
    r = len(vecs[0])
    # equations: sum_i d_i v_i[l] = -sum_i v_i[l]
    eqs = [[QQ(vecs[i][l]) for i in range(k)] + [QQ(-sum(v[l] for v in vecs))] for l in range(r)]
    pivots = []
    row = 0
    for col in range(k):
        p = next((i for i in range(row, len(eqs)) if eqs[i][col]), None)
        if p is None:
            continue
        eqs[row], eqs[p] = eqs[p], eqs[row]
        inv = 1 / eqs[row][col]
        eqs[row] = [x * inv for x in eqs[row]]
        for i in range(len(eqs)):
            if i != row and eqs[i][col]:
                f = eqs[i][col]
                eqs[i] = [x - f * y for x, y in zip(eqs[i], eqs[row])]
        pivots.append(col)
        row += 1
    for i in range(row, len(eqs)):
        if eqs[i][k]:
            return False  # inconsistent equalities
    free = [c for c in range(k) if c not in pivots]
    ineqs = []
    # pivot variable d_p = rhs - sum_f coeff_f d_f >= 0   ->   sum coeff_f d_f <= rhs
    for i, p in enumerate(pivots):
        ineqs.append(([eqs[i][f] for f in free], eqs[i][k]))
    # free variables d_f >= 0   ->   -d_f <= 0
    for t, _ in enumerate(free):
        ineqs.append(([QQ(-1) if s == t else QQ(0) for s in range(len(free))], QQ(0)))
    if not free:
        return all(b >= 0 for _, b in ineqs)
    return _fm_feasible(ineqs)


def is_closed_support(s: Support, setup: EquivariantSetup) -> bool:
    return cone_is_subspace([setup.weights[i].free_part for i in s])


def stabilizer_characters(s: Support, setup: EquivariantSetup) -> QuotientGroup:
    return quotient_by_subgroup(setup.group, [setup.weights[i] for i in s])


# --------------------------------------------------------------------------
# stratum rings


@dataclass(frozen=True)
class StratumRing:
    """Coordinates of {x in X : x_i != 0 exactly for i in support}.

    Variables are the support variables followed by ``t`` with
    t * prod(support) = 1.
    """

    setup: EquivariantSetup
    support: Support

    @property
    def nvars(self) -> int:
        return len(self.support) + 1

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.setup.names[i] for i in self.support) + ("_t",)

    @cached_property
    def index_map(self) -> list[int | None]:
        where = {v: k for k, v in enumerate(self.support)}
        return [where.get(i) for i in range(self.setup.nvars)]

    def restrict(self, f: Poly) -> Poly:
        return f.remap(self.nvars, self.index_map)

    @cached_property
    def relations(self) -> tuple[Poly, ...]:
        n = self.nvars
        rels = [g for g in (self.restrict(f) for f in self.setup.ambient_ideal) if g]
        prod = Poly.var(n, n - 1)
        for k in range(n - 1):
            prod = prod * Poly.var(n, k)
        rels.append(prod - Poly.constant(n, 1))
        return tuple(rels)

    def point_coordinates(self, x: Sequence) -> list:
        """Coordinates of a point of the stratum in this ring (including t)."""
        vals = [QQ(x[i]) for i in self.support]
        prod = QQ(1)
        for v in vals:
            prod *= v
        return vals + [1 / prod]


@dataclass(frozen=True)
class Stratum:
    support: Support
    stabilizer: QuotientGroup
    closed: bool
    nonempty_on_X: bool
    setup: EquivariantSetup

    @property
    def ring(self) -> StratumRing:
        return StratumRing(self.setup, self.support)

    @property
    def has_trivial_stabilizer(self) -> bool:
        return self.stabilizer.is_trivial()

    def label(self) -> str:
        if not self.support:
            return "origin"
        return "{" + ",".join(self.setup.names[i] for i in self.support) + "}"

    def to_json(self) -> dict:
        return {"support": [self.setup.names[i] for i in self.support], "closed": self.closed,
                "nonempty": self.nonempty_on_X, "stabilizer": str(self.stabilizer.target)}


def stratum_is_nonempty(s: Support, setup: EquivariantSetup) -> bool:
    if setup.is_smooth_ambient():
        return True
    return not locus_is_empty([], StratumRing(setup, s))


def _classify_support(args) -> Stratum:
    s, setup = args
    closed = is_closed_support(s, setup)
    nonempty = stratum_is_nonempty(s, setup)
    return Stratum(s, stabilizer_characters(s, setup), closed, nonempty, setup)


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("DESCHECK_THREADS", "1")))
    except ValueError:
        return 1


def ordered_map(fn, items: list) -> list:
    """``map`` that fans out to worker processes when DESCHECK_THREADS > 1."""
    n = thread_count()
    if n <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    from concurrent.futures import ProcessPoolExecutor
    with ProcessPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def all_strata(setup: EquivariantSetup, force: bool = False) -> list[Stratum]:
    """Every support with its closedness, emptiness and stabilizer, by bitset order."""
    n = setup.nvars
    if n > MAX_VARIABLES and not force:
        raise TooManyVariables(f"{n} variables: stratum enumeration needs 2^{n} checks (use --force)")
    supports = [support_from_mask(m, n) for m in range(1 << n)]
    return ordered_map(_classify_support, [(s, setup) for s in supports])


def closed_strata(setup: EquivariantSetup, force: bool = False) -> list[Stratum]:
    return [st for st in all_strata(setup, force) if st.closed and st.nonempty_on_X]


class PointOffVariety(ValueError):
    pass


def check_on_variety(x: Sequence, setup: EquivariantSetup) -> list:
    if len(x) != setup.nvars:
        raise ValueError(f"point has {len(x)} coordinates for {setup.nvars} variables")
    pt = [QQ(v) for v in x]
    for f in setup.ambient_ideal:
        if f.evaluate(pt):
            raise PointOffVariety(f"point {tuple(map(str, pt))} does not lie on X")
    return pt


def classify_point(x: Sequence, setup: EquivariantSetup) -> tuple[Support, bool, QuotientGroup]:
    pt = check_on_variety(x, setup)
    s = tuple(i for i, v in enumerate(pt) if v)
    return s, is_closed_support(s, setup), stabilizer_characters(s, setup)
