"""Deciding and constructing descent of equivariant modules to X//G.

A module descends iff, at every closed point in a closed orbit, its fiber and
Tor_1 with the residue field carry only the trivial stabilizer character.  On a
closed stratum the class-r parts of a length-2 resolution are matrices over the
stratum ring; the class-r fiber (resp. Tor_1) is nonzero at x exactly when x
lies on a determinantal locus cut out by minors, so the condition over all
closed points becomes a finite list of emptiness tests.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .gmod import StratumComplex, restrict_to_stratum, weight_component
from .graded import FPModule, GradedFreeModule, GradedMap
from .grading import GroupElement
from .groebner import GroebnerBasis, free_resolution, locus_is_empty
from .invariants import (TRIVIAL, DescendedModule, _push_data, _canonical_from_data, quotient_of)
from .orbits import Stratum, closed_strata
from .polyring import ONE, Poly, format_poly


# --------------------------------------------------------------------------
# minors


def minor_ideal(rows: Sequence[Sequence[Poly]], t: int, nvars: int) -> list[Poly] | None:
    """Generators of the ideal of t x t minors; ``None`` encodes the zero ideal.

    I_0 is the unit ideal and I_t = 0 once t exceeds the matrix size.
    """
    if t <= 0:
        return [Poly.constant(nvars, 1)]
    keep_r = [i for i, r in enumerate(rows) if any(r)]
    ncols = len(rows[0]) if rows else 0
    keep_c = [j for j in range(ncols) if any(rows[i][j] for i in keep_r)]
    if t > min(len(keep_r), len(keep_c)):
        return None
    M = [[rows[i][j] for j in keep_c] for i in keep_r]
    memo: dict = {}

    def det(rs: tuple, cs: tuple) -> Poly:
        key = (rs, cs)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if len(rs) == 1:
            val = M[rs[0]][cs[0]]
        else:
            val = Poly.zero(nvars)
            r0, rest = rs[0], rs[1:]
            for k, c in enumerate(cs):
                a = M[r0][c]
                if not a:
                    continue
                sub = det(rest, cs[:k] + cs[k + 1:])
                if sub:
                    val = val + a * sub if k % 2 == 0 else val - a * sub
        memo[key] = val
        return val

    from itertools import combinations
    out = []
    seen = set()
    for rs in combinations(range(len(M)), t):
        for cs in combinations(range(len(M[0])), t):
            d = det(rs, cs)
            if d and d not in seen:
                seen.add(d)
                if d.is_constant():
                    return [Poly.constant(nvars, 1)]
                out.append(d)
    return out if out else None


def rank_degeneracy_ideals(d_out, d_in, n: int, nvars: int) -> list[list[Poly] | None]:
    """Ideals whose union of zero sets is where H = ker d_out / im d_in is nonzero.

    ``n`` is the rank of the middle term; H(x) != 0 iff rank d_out(x) + rank
    d_in(x) < n, i.e. x lies on V(I_{rho+1}(d_out) + I_{n-rho}(d_in)) for some
    rho in 0..n-1.
    """
    pieces = []
    for rho in range(n):
        a = minor_ideal(d_out, rho + 1, nvars) if d_out else None
        b = minor_ideal(d_in, n - rho, nvars) if d_in else None
        if a is not None and any(f.is_constant() for f in a):
            continue
        if b is not None and any(f.is_constant() for f in b):
            continue
        pieces.append((a or []) + (b or []))
    return pieces


# --------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Witness:
    stratum: Stratum
    character: GroupElement
    source: str  # "fiber", "tor1", or "H^j" for complexes
    degree: int
    ideal: tuple[Poly, ...]

    @property
    def support_names(self) -> list[str]:
        return [self.stratum.setup.names[i] for i in self.stratum.support]

    def describe(self) -> str:
        names = self.stratum.ring.names
        ideal = ", ".join(format_poly(f, names) for f in self.ideal)
        locus = f"V({ideal})" if ideal else "the whole stratum"
        return (f"stratum {self.stratum.label()} (stabilizer characters {self.stratum.stabilizer.target}), "
                f"class {self.character}, {self.source} in degree {self.degree}; failing locus {locus}")

    def to_json(self) -> dict:
        return {"support": self.support_names, "stabilizer": str(self.stratum.stabilizer.target),
                "class": list(self.character.values), "source": self.source, "degree": self.degree,
                "locus": [format_poly(f, self.stratum.ring.names) for f in self.ideal],
                "locus_variables": list(self.stratum.ring.names)}


@dataclass(frozen=True)
class Verdict:
    descends: bool
    witnesses: tuple[Witness, ...] = ()
    mode: str = "complete"
    checked_range: tuple[int, int] | None = None

    def __post_init__(self):
        if self.descends == bool(self.witnesses):
            raise ValueError("a verdict descends exactly when it has no witnesses")

    def to_json(self) -> dict:
        out = {"descends": self.descends, "mode": self.mode,
               "witnesses": [w.to_json() for w in self.witnesses]}
        if self.checked_range is not None:
            out["checked_range"] = list(self.checked_range)
        return out


class PreconditionError(ValueError):
    def __init__(self, msg: str, witnesses: Sequence[Witness] = ()):
        super().__init__(msg)
        self.witnesses = tuple(witnesses)


class BoundLimited(RuntimeError):
    pass


def _stratum_witnesses(R: StratumComplex, degrees: Sequence[int], sources: dict[int, str],
                       first_only: bool = False) -> list[Witness]:
    """Check that every nonzero class of H^j (j in ``degrees``) vanishes on the stratum."""
    ring = R.ring
    out = []
    zero = R.stratum.stabilizer.target.zero()
    for r in R.classes():
        if r == zero:
            continue
        W = weight_component(R, r)
        for j in degrees:
            n = W.rank(j)
            if n == 0:
                continue
            d_out = W.matrix(j) if W.rank(j + 1) else []
            d_in = W.matrix(j - 1) if W.rank(j - 1) else []
            for ideal in rank_degeneracy_ideals([list(row) for row in d_out],
                                                [list(row) for row in d_in], n, ring.nvars):
                if not locus_is_empty(ideal, ring):
                    out.append(Witness(R.stratum, r, sources.get(j, f"H^{j}"), j, tuple(ideal)))
                    break
            if out and first_only:
                return out
    return out


def _sheaf_task(args):
    C, st = args
    R = restrict_to_stratum(C, st)
    return _stratum_witnesses(R, [0, -1], {0: "fiber", -1: "tor1"})


def check_sheaf_descent(M: FPModule, force: bool = False, strata: Sequence[Stratum] | None = None,
                        fiber_only: bool = False) -> Verdict:
    """Does M descend to X//G?  Complete over the algebraic closure."""
    from .orbits import ordered_map
    setup = M.setup
    if strata is None:
        strata = closed_strata(setup, force)
    strata = [s for s in strata if not s.has_trivial_stabilizer]
    if not strata:
        return Verdict(True)
    C = free_resolution(M, 1 if fiber_only else 2)
    if fiber_only:
        found = []
        for st in strata:
            R = restrict_to_stratum(C, st)
            found += _stratum_witnesses(R, [0], {0: "fiber"})
    else:
        found = [w for ws in ordered_map(_sheaf_task, [(C, st) for st in strata]) for w in ws]
    found.sort(key=lambda w: (sum(1 << i for i in w.stratum.support), w.character.values, -w.degree))
    return Verdict(not found, tuple(found))


# --------------------------------------------------------------------------
# constructions


def _degree_zero_cover(M: FPModule, bound: int | None):
    """Irredundant degree-0 elements of M generating it, and whether the search was capped."""
    from .invariants import degree_zero_generators
    setup = M.setup
    gens, complete = degree_zero_generators(M, bound)
    gb = GroebnerBasis(M.relations.cols, M.rank, setup.nvars, setup.ambient_ideal)
    chosen = []
    for g in gens:
        if gb.contains(g):
            continue
        chosen.append(g)
        gb = gb.extend([g])
    return chosen, complete, gb.is_everything() if M.rank else True


def invariant_surjection(M: FPModule, degree_bound: int | None = None,
                         force: bool = False) -> tuple[GradedFreeModule, GradedMap]:
    """A trivial free module V with a surjection V -> M (given on generators)."""
    verdict = check_sheaf_descent(M, force=force, fiber_only=True)
    if not verdict.descends:
        raise PreconditionError("some closed-orbit fiber carries a nontrivial stabilizer character",
                                verdict.witnesses)
    chosen, complete, onto = _degree_zero_cover(M, degree_bound)
    if not onto:
        if not complete:
            raise BoundLimited("degree-0 elements below the bound do not generate the module")
        raise ArithmeticError("degree-0 part fails to generate although every fiber is trivial")
    V = GradedFreeModule(tuple(M.setup.group.zero() for _ in chosen))
    return V, GradedMap(V, M.generators, tuple(chosen), M.setup.nvars)


def _prune_tracked(rel_cols: list, ngens: int, nvars: int) -> tuple[list, list[int]]:
    """Cancel constant entries of a relation matrix, keeping track of surviving generators."""
    gens = list(range(ngens))
    cols = [list(c) for c in rel_cols]
    while True:
        hit = None
        for j, c in enumerate(cols):
            for i, f in enumerate(c):
                if f and f.is_constant():
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        i, j = hit
        piv = cols[j]
        inv = ONE / piv[i].constant_term()
        new = []
        for k, c in enumerate(cols):
            if k == j:
                continue
            s = c[i] * inv
            new.append([c[r] - s * piv[r] for r in range(len(c)) if r != i])
        cols = [c for c in new if any(c)]
        del gens[i]
    return [tuple(c) for c in cols], gens


def descend_sheaf(M: FPModule, degree_bound: int | None = None, force: bool = False,
                  check: bool = True) -> DescendedModule:
    """The module N over the quotient ring with pi^* N = M.

    Follows the presentation argument: a trivial free cover P0 -> M by degree-0
    elements, a trivial free cover P1 of its kernel, and N = coker of the
    degree-0 part of P1 -> P0.
    """
    setup = M.setup
    if check:
        verdict = check_sheaf_descent(M, force=force)
        if not verdict.descends:
            raise PreconditionError("module does not descend", verdict.witnesses)
    Q = quotient_of(setup)
    data = _push_data(M, degree_bound)
    is_iso, ker_zero, coker_zero = _canonical_from_data(M, data)
    if not is_iso:
        if not data.complete:
            raise BoundLimited("degree-0 generators below the bound do not present the module")
        raise ArithmeticError("canonical map is not an isomorphism for a descending module")
    rels = [tuple(Q.rewrite(f) for f in v) for v in data.kernel0]
    from .groebner import irredundant
    if rels:
        rels = irredundant(rels, len(data.gens), Q.nvars, Q.relations)
    rels = [tuple(Q.ideal_basis.reduce((f,))[0] for f in c) for c in rels] if Q.relations else rels
    rels, kept = _prune_tracked(rels, len(data.gens), Q.nvars)
    R = Q.ring_setup
    zero = TRIVIAL.zero()
    module = FPModule.from_columns(R, [zero] * len(kept), rels, [zero] * len(rels))
    gens = tuple(data.gens[k] for k in kept)
    return DescendedModule(module, Q, gens, M, True, True, "presentation")
