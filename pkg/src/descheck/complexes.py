"""Complexes of graded modules: operations, derived fibers, descent of complexes.

All complexes are cohomologically indexed with d^j : E^j -> E^{j+1}.  Terms
may be finitely presented; descent checking needs free terms, where the
derived fiber at x is just the complex evaluated at x.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .descent import (BoundLimited, PreconditionError, Verdict, _stratum_witnesses)
from .gmod import pointwise_cohomology, restrict_to_stratum
from .graded import (ChainComplex, ChainMap, FPModule, GradedFreeModule, GradedMap,
                     WeightedVectorSpace, unit_vector, vector_degree, zero_vector)
from .grading import EVERY_DEGREE
from .groebner import GroebnerBasis, Lifter, syzygies
from .invariants import (TRIVIAL, degree_zero_multiples, pushforward, pushforward_map, quotient_of)
from .orbits import check_on_variety, closed_strata


class InvalidComplex(ValueError):
    pass


# --------------------------------------------------------------------------
# validity


def _span_basis(M: FPModule, extra_cols=()) -> GroebnerBasis:
    return GroebnerBasis(list(M.relations.cols) + list(extra_cols), M.rank, M.setup.nvars,
                         M.setup.ambient_ideal)


def verify_complex(C: ChainComplex) -> None:
    """Raise unless every d^{j+1} d^j vanishes and each d^j respects relations."""
    for j, d in C.diffs.items():
        tgt = C.term(j + 1)
        gb = _span_basis(tgt)
        for col in C.term(j).relations.cols:
            if not gb.contains(d.apply(col)):
                raise InvalidComplex(f"d^{j} does not respect the relations of term {j}")
        if j + 1 in C.diffs:
            nxt = C.diffs[j + 1]
            gb2 = _span_basis(C.term(j + 2))
            for col in d.cols:
                if not gb2.contains(nxt.apply(col)):
                    raise InvalidComplex(f"d^{j + 1} o d^{j} is not zero")


def verify_chain_map(q: ChainMap) -> None:
    A, B = q.source, q.target
    for j in sorted(set(A.terms) | set(B.terms)):
        m = q.component(j)
        gbj = _span_basis(B.term(j))
        for col in A.term(j).relations.cols:
            if not gbj.contains(m.apply(col)):
                raise InvalidComplex(f"q^{j} does not respect relations")
        left = q.component(j + 1).compose(A.diff(j))
        right = B.diff(j).compose(m)
        gb = _span_basis(B.term(j + 1))
        for a, b in zip(left.cols, right.cols):
            if not gb.contains(tuple(x - y for x, y in zip(a, b))):
                raise InvalidComplex(f"q does not commute with the differentials in degree {j}")


# --------------------------------------------------------------------------
# operations


def shift(C: ChainComplex, k: int = 1) -> ChainComplex:
    """C[k]: (C[k])^j = C^{j+k} with differential (-1)^k d."""
    sign = -1 if k % 2 else 1
    terms = {j - k: t for j, t in C.terms.items()}
    diffs = {j - k: (d if sign == 1 else -d) for j, d in C.diffs.items()}
    return ChainComplex(C.setup, terms, diffs)


def cone(q: ChainMap) -> ChainComplex:
    """Cone^j = A^{j+1} + B^j with d(a, b) = (-d a, q a + d b)."""
    A, B = q.source, q.target
    setup = A.setup
    n = setup.nvars
    degrees = sorted({j - 1 for j in A.terms} | set(B.terms))
    terms = {j: A.term(j + 1).direct_sum(B.term(j)) for j in degrees}
    diffs = {}
    for j in degrees:
        if j + 1 not in terms:
            continue
        ra1, rb = A.term(j + 1).rank, B.term(j).rank
        ra2, rb1 = A.term(j + 2).rank, B.term(j + 1).rank
        dA, dB, qm = A.diff(j + 1), B.diff(j), q.component(j + 1)
        cols = []
        for k in range(ra1):
            top = tuple(-f for f in dA.cols[k]) if ra2 else ()
            cols.append(top + (qm.cols[k] if rb1 else ()))
        for k in range(rb):
            cols.append(zero_vector(ra2, n) + (dB.cols[k] if rb1 else ()))
        diffs[j] = GradedMap(terms[j].generators, terms[j + 1].generators, tuple(cols), n)
    out = ChainComplex(setup, terms, diffs)
    return out


def sigma_truncate(C: ChainComplex, n: int, upper: bool = True) -> ChainComplex:
    """Brutal truncation: keep degrees <= n (``upper``) or >= n."""
    keep = [j for j in C.terms if (j <= n if upper else j >= n)]
    return ChainComplex(C.setup, {j: C.terms[j] for j in keep},
                        {j: d for j, d in C.diffs.items() if j in keep and j + 1 in keep})


def kernel_module(C: ChainComplex, j: int) -> tuple[FPModule, list]:
    """ker(d^j) as a module, with its generators as vectors over term j."""
    setup = C.setup
    n = setup.nvars
    T = C.term(j)
    if j + 1 in C.terms and C.term(j + 1).rank:
        nxt = C.term(j + 1)
        cols = list(C.diff(j).cols) + list(nxt.relations.cols)
        gens = [s[:T.rank] for s in syzygies(cols, nxt.rank, n, setup.ambient_ideal)]
        gens = [g for g in gens if any(g)]
        gdeg = []
        for s in gens:
            d = vector_degree(s, T.generators.degrees, setup)
            gdeg.append(setup.group.zero() if d is EVERY_DEGREE else d)
    else:
        gens = [unit_vector(T.rank, i, n) for i in range(T.rank)]
        gdeg = list(T.generators.degrees)
    rels = [s[:len(gens)] for s in syzygies(list(gens) + list(T.relations.cols), T.rank, n, setup.ambient_ideal)]
    rels = [r for r in rels if any(r)]
    return FPModule.from_columns(setup, gdeg, rels), gens


def tau_truncate(C: ChainComplex, n: int) -> ChainComplex:
    """Smart truncation tau_{<= n}: degrees < n, then ker d^n in degree n."""
    setup = C.setup
    K, gens = kernel_module(C, n)
    terms = {j: t for j, t in C.terms.items() if j < n}
    terms[n] = K
    diffs = {j: d for j, d in C.diffs.items() if j < n - 1}
    if n - 1 in C.terms:
        lifter = Lifter(list(gens) + list(C.term(n).relations.cols), C.term(n).rank, setup.nvars,
                        setup.ambient_ideal)
        cols = []
        for col in C.diff(n - 1).cols:
            c = lifter(col)
            if c is None:
                raise InvalidComplex("image of d^{n-1} is not in ker d^n")
            cols.append(c[:len(gens)])
        diffs[n - 1] = GradedMap(C.term(n - 1).generators, K.generators, tuple(cols), setup.nvars)
    return ChainComplex(setup, terms, diffs)


def complex_ops(C: ChainComplex, op: str, arg=None) -> ChainComplex:
    if op == "shift":
        out = shift(C, 1 if arg is None else arg)
    elif op == "cone":
        if not isinstance(arg, ChainMap):
            raise TypeError("cone needs a chain map")
        verify_chain_map(arg)
        out = cone(arg)
    elif op == "sigma_truncate":
        out = sigma_truncate(C, arg)
    elif op == "tau_truncate":
        out = tau_truncate(C, arg)
    else:
        raise ValueError(f"unknown operation {op!r}")
    verify_complex(out)
    return out


# --------------------------------------------------------------------------
# cohomology


def cohomology_vanishes(C: ChainComplex, j: int) -> bool:
    _, Z = kernel_module(C, j) if C.term(j).rank else (None, [])
    if not Z:
        return True
    T = C.term(j)
    cols = list(C.diff(j - 1).cols) + list(T.relations.cols) if j - 1 in C.terms else list(T.relations.cols)
    gb = GroebnerBasis(cols, T.rank, C.setup.nvars, C.setup.ambient_ideal)
    return all(gb.contains(z) for z in Z)


def cohomology_module(C: ChainComplex, j: int) -> FPModule:
    setup = C.setup
    K, Z = kernel_module(C, j)
    T = C.term(j)
    if not Z:
        return FPModule.free(setup, ())
    extra = list(C.diff(j - 1).cols) if j - 1 in C.terms else []
    rels = syzygies(list(Z) + extra + list(T.relations.cols), T.rank, setup.nvars, setup.ambient_ideal)
    rels = [r[:len(Z)] for r in rels if any(r[:len(Z)])]
    return FPModule.from_columns(setup, K.generators.degrees, rels)


def is_acyclic(C: ChainComplex, degrees: Sequence[int] | None = None) -> bool:
    degrees = C.degrees if degrees is None else degrees
    return all(cohomology_vanishes(C, j) for j in degrees)


def quasi_iso_check(q: ChainMap, bound: int | None = None) -> bool:
    """True iff the cone of q has vanishing cohomology in degrees >= bound."""
    verify_chain_map(q)
    K = cone(q)
    degrees = [j for j in K.degrees if bound is None or j >= bound]
    return is_acyclic(K, degrees)


# --------------------------------------------------------------------------
# derived fibers and the descent check


def _require_free(E: ChainComplex) -> None:
    if not E.is_free():
        raise InvalidComplex("descent checks need a complex of free modules")


def default_min_degree(E: ChainComplex) -> int:
    bottom = E.bottom if E.bottom is not None else 0
    return bottom - 2 * E.setup.nvars


def derived_fiber(E: ChainComplex, x: Sequence, j_min: int | None = None) -> dict[int, WeightedVectorSpace]:
    """H^j(E tensor k(x)) by stabilizer class, for j from j_min to the top degree."""
    _require_free(E)
    check_on_variety(x, E.setup)
    if not E.terms:
        return {}
    lo = E.bottom if j_min is None else max(j_min, E.bottom)
    return pointwise_cohomology(E, x, [j for j in E.degrees if j >= lo])


def check_complex_descent(E: ChainComplex, j_min: int | None = None, force: bool = False) -> Verdict:
    """Is E equivariantly quasi-isomorphic to a complex that descends?

    For a bounded complex of free modules the derived fiber at x is E(x), so the
    check over all degrees is finite and complete; ``j_min`` above the bottom
    degree restricts the range and makes a positive answer inconclusive.
    """
    _require_free(E)
    setup = E.setup
    if not E.terms:
        return Verdict(True, checked_range=(0, 0))
    if j_min is None:
        j_min = default_min_degree(E)
    degrees = [j for j in E.degrees if j >= j_min]
    checked = (j_min, E.top)
    truncated = j_min > E.bottom
    strata = [s for s in closed_strata(setup, force) if not s.has_trivial_stabilizer]
    found = []
    for st in strata:
        R = restrict_to_stratum(E, st)
        found += _stratum_witnesses(R, degrees, {})
    found.sort(key=lambda w: (sum(1 << i for i in w.stratum.support), -w.degree, w.character.values))
    mode = "bound-limited" if (truncated and not found) else "complete"
    return Verdict(not found, tuple(found), mode, checked)


# --------------------------------------------------------------------------
# constructions


def _kernel_with_degrees(cols, target_rank, source_degrees, setup):
    gens = syzygies(cols, target_rank, setup.nvars, setup.ambient_ideal)
    out, degs = [], []
    for g in gens:
        d = vector_degree(g, source_degrees, setup)
        if d is None:
            raise ArithmeticError("inhomogeneous kernel element")
        out.append(g)
        degs.append(setup.group.zero() if d is EVERY_DEGREE else d)
    return out, degs


def free_replacement_stage(E: ChainComplex, n: int, V: GradedFreeModule, f: GradedMap,
                           max_stages: int | None = None) -> tuple[ChainComplex, ChainMap]:
    """Replace E below degree n, starting from V -> E^n, by a quasi-isomorphic complex.

    Hypotheses: im(d^n f) = im(d^n) and ker(d^n f) -> H^n(E) onto.  Each lower
    stage is a free cover of the fiber product of E^{j-1} and ker(d'^j) over
    E^j (the kernel restriction keeps d' o d' = 0).
    """
    _require_free(E)
    setup = E.setup
    nv = setup.nvars
    J = setup.ambient_ideal
    if f.source != V or f.target != E.term(n).generators:
        raise ValueError("f must map V to E^n")
    dn = E.diff(n)
    dnf = dn.compose(f)
    # hypothesis 1
    if E.term(n + 1).rank:
        gb = GroebnerBasis(dnf.cols, E.term(n + 1).rank, nv, J)
        bad = [k for k, c in enumerate(dn.cols) if not gb.contains(c)]
        if bad:
            raise PreconditionError(f"im(d^{n} o f) misses the images of generators {bad} of E^{n}")
    # hypothesis 2
    if E.term(n + 1).rank:
        K = syzygies(dnf.cols, E.term(n + 1).rank, nv, J)
    else:
        K = [unit_vector(V.rank, i, nv) for i in range(V.rank)]
    fK = [f.apply(k) for k in K]
    prev = list(E.diff(n - 1).cols) if n - 1 in E.terms else []
    gb = GroebnerBasis(fK + prev, E.term(n).rank, nv, J)
    _, Z = kernel_module(E, n)
    if not all(gb.contains(z) for z in Z):
        raise PreconditionError(f"ker(d^{n} o f) does not surject onto H^{n}")
    terms = {j: E.term(j).generators for j in E.terms if j > n}
    terms[n] = V
    diffs = {j: d for j, d in E.diffs.items() if j > n}
    if n + 1 in E.terms:
        diffs[n] = dnf
    qmaps = {j: GradedMap.identity(E.term(j).generators, nv) for j in E.terms if j > n}
    qmaps[n] = f
    bottom = E.bottom
    if max_stages is None:
        max_stages = (n - bottom) + 2 * nv + 4
    j = n
    stages = 0
    while True:
        Ej1 = E.term(j - 1).generators
        Epj = terms[j]
        Epj1 = terms.get(j + 1, GradedFreeModule(()))
        # (e', e) -> (d^{j-1} e' - q_j e, d'^j e)
        dprev = E.diff(j - 1)
        qj = qmaps[j]
        dpj = diffs.get(j, GradedMap.zero(Epj, Epj1, nv))
        tr = E.term(j).rank
        cols = []
        for k in range(Ej1.rank):
            cols.append(tuple(dprev.cols[k]) + zero_vector(Epj1.rank, nv))
        for k in range(Epj.rank):
            cols.append(tuple(-p for p in qj.cols[k]) + tuple(dpj.cols[k]))
        src_degs = list(Ej1.degrees) + list(Epj.degrees)
        gens, degs = _kernel_with_degrees(cols, tr + Epj1.rank, src_degs, setup)
        from .groebner import irredundant
        if gens:
            gens = irredundant(gens, len(src_degs), nv, J)
            degs = []
            for g in gens:
                d = vector_degree(g, src_degs, setup)
                degs.append(setup.group.zero() if d is EVERY_DEGREE else d)
        if not gens:
            break
        stages += 1
        if stages > max_stages:
            raise BoundLimited(f"replacement did not terminate within {max_stages} stages")
        F = GradedFreeModule(tuple(degs))
        terms[j - 1] = F
        qmaps[j - 1] = GradedMap(F, Ej1, tuple(g[:Ej1.rank] for g in gens), nv)
        diffs[j - 1] = GradedMap(F, Epj, tuple(g[Ej1.rank:] for g in gens), nv)
        j -= 1
    Ep = ChainComplex(setup, {k: FPModule.free(setup, F.degrees) for k, F in terms.items()}, diffs)
    return Ep, ChainMap(Ep, E, qmaps)


def descendable_replacement(E: ChainComplex, max_stages: int | None = None, check: bool = True,
                            force: bool = False) -> tuple[ChainComplex, ChainMap]:
    """A complex E' of trivial free modules with a quasi-isomorphism q : E' -> E.

    Built from the top degree down by killing the cohomology of cone(q): at
    each step the cycles of the cone in the lowest open degree are generated,
    modulo boundaries, by degree-0 elements, which become the generators of
    the next term of E'.
    """
    _require_free(E)
    setup = E.setup
    nv = setup.nvars
    J = setup.ambient_ideal
    zero = setup.group.zero()
    if check:
        verdict = check_complex_descent(E, force=force)
        if not verdict.descends:
            raise PreconditionError("complex does not descend", verdict.witnesses)
    if not E.terms:
        return E, ChainMap(E, E, {})
    top, bottom = E.top, E.bottom
    if max_stages is None:
        max_stages = (top - bottom + 1) + 2 * nv + 4
    terms: dict[int, int] = {}          # degree -> rank of E'^j (all generators of degree 0)
    dprime: dict[int, list] = {}        # j -> columns of d'^j (vectors in E'^{j+1})
    qcols: dict[int, list] = {}         # j -> columns of q^j (vectors in E^j)
    s = top + 1
    stages = 0
    while True:
        # cycles of the cone in C^{s-1} = E'^s + E^{s-1}
        ra = terms.get(s, 0)
        Eb = E.term(s - 1).generators
        rb = Eb.rank
        ra1 = terms.get(s + 1, 0)
        rE = E.term(s).rank
        if ra + rb == 0:
            if s - 1 < bottom:
                break
            s -= 1
            continue
        cols = []
        for k in range(ra):
            top_part = tuple(-p for p in dprime[s][k]) if ra1 else ()
            cols.append(top_part + tuple(qcols[s][k]))
        db = E.diff(s - 1)
        for k in range(rb):
            cols.append(zero_vector(ra1, nv) + tuple(db.cols[k]))
        src_degs = [zero] * ra + list(Eb.degrees)
        if ra1 + rE:
            Z, Zdeg = _kernel_with_degrees(cols, ra1 + rE, src_degs, setup)
        else:
            Z = [unit_vector(ra + rb, i, nv) for i in range(ra + rb)]
            Zdeg = src_degs
        Z = [z for z in Z if any(z)]
        if not Z:
            if s - 1 < bottom:
                break
            terms[s - 1] = 0
            s -= 1
            continue
        # boundaries: 0 + im d^{s-2}
        dbb = E.diff(s - 2)
        B = [zero_vector(ra, nv) + tuple(c) for c in dbb.cols] if (s - 2) in E.terms else []
        gb = GroebnerBasis(B, ra + rb, nv, J)
        chosen = []
        for v in degree_zero_multiples(Z, Zdeg, setup):
            if gb.contains(v):
                continue
            chosen.append(v)
            gb = gb.extend([v])
        if not all(gb.contains(z) for z in Z):
            raise ArithmeticError(f"cohomology of the cone in degree {s - 1} is not generated in degree 0")
        if not chosen:
            if s - 1 < bottom:
                break
            terms[s - 1] = 0
            s -= 1
            continue
        stages += 1
        if stages > max_stages:
            raise BoundLimited(f"replacement did not terminate within {max_stages} stages")
        terms[s - 1] = len(chosen)
        dprime[s - 1] = [tuple(-p for p in v[:ra]) for v in chosen]
        qcols[s - 1] = [tuple(v[ra:]) for v in chosen]
        s -= 1
    degs = {j: r for j, r in terms.items() if r}
    if not degs:
        empty = ChainComplex(setup, {}, {})
        return empty, ChainMap(empty, E, {})
    lo, hi = min(degs), max(degs)
    ranks = {j: terms.get(j, 0) for j in range(lo, hi + 1)}
    Fs = {j: GradedFreeModule((zero,) * r) for j, r in ranks.items()}
    diffs = {}
    for j in range(lo, hi):
        if ranks[j] and ranks[j + 1]:
            diffs[j] = GradedMap(Fs[j], Fs[j + 1], tuple(dprime[j]), nv)
    Ep = ChainComplex(setup, {j: FPModule.free(setup, F.degrees) for j, F in Fs.items()}, diffs)
    qm = {}
    for j, F in Fs.items():
        if j in E.terms and ranks[j]:
            qm[j] = GradedMap(F, E.term(j).generators, tuple(qcols[j]), nv)
    return Ep, ChainMap(Ep, E, qm)


def entries_invariant(E: ChainComplex) -> bool:
    """All generators in degree 0 (so every differential entry lies in S_0)."""
    from .grading import homogeneity_check
    setup = E.setup
    zero = setup.group.zero()
    if not all(d.is_zero() for t in E.terms.values() for d in t.generators.degrees):
        return False
    for d in E.diffs.values():
        for c in d.cols:
            for f in c:
                if f and homogeneity_check(f, setup) != zero:
                    return False
    return True


def _rewrite_complex(Ep: ChainComplex) -> ChainComplex:
    setup = Ep.setup
    Q = quotient_of(setup)
    R = Q.ring_setup
    z = TRIVIAL.zero()
    terms = {j: FPModule.free(R, [z] * t.rank) for j, t in Ep.terms.items()}
    diffs = {}
    for j, d in Ep.diffs.items():
        cols = tuple(tuple(Q.rewrite(f) for f in c) for c in d.cols)
        diffs[j] = GradedMap(terms[j].generators, terms[j + 1].generators, cols, Q.nvars)
    return ChainComplex(R, terms, diffs)


@dataclass(frozen=True)
class DescendedComplex:
    complex: ChainComplex
    replacement: ChainComplex
    q: ChainMap

    @property
    def setup(self):
        return self.replacement.setup


def descend_complex(E: ChainComplex, max_stages: int | None = None, force: bool = False) -> DescendedComplex:
    """A complex over the quotient ring whose pullback is quasi-isomorphic to E."""
    Ep, q = descendable_replacement(E, max_stages=max_stages, force=force)
    return DescendedComplex(_rewrite_complex(Ep), Ep, q)


def pullback_complex(D: ChainComplex, setup) -> ChainComplex:
    Q = quotient_of(setup)
    zero = setup.group.zero()
    terms = {}
    for j, t in D.terms.items():
        cols = [tuple(Q.pull(f) for f in c) for c in t.relations.cols]
        terms[j] = FPModule.from_columns(setup, [zero] * t.rank, cols, [zero] * len(cols))
    diffs = {}
    for j, d in D.diffs.items():
        cols = tuple(tuple(Q.pull(f) for f in c) for c in d.cols)
        diffs[j] = GradedMap(terms[j].generators, terms[j + 1].generators, cols, setup.nvars)
    return ChainComplex(setup, terms, diffs)


def pushforward_complex(E: ChainComplex, degree_bound: int | None = None) -> ChainComplex:
    """Degree-0 part of every term and differential, over the quotient ring."""
    setup = E.setup
    Q = quotient_of(setup)
    pushed = {j: pushforward(t, degree_bound, verify=False) for j, t in E.terms.items()}
    terms = {j: p.module for j, p in pushed.items()}
    diffs = {}
    for j, d in E.diffs.items():
        diffs[j] = pushforward_map(d, E.term(j), E.term(j + 1), pushed[j], pushed[j + 1])
    return ChainComplex(Q.ring_setup, terms, diffs)


def pushforward_complete(E: ChainComplex, degree_bound: int | None = None) -> bool:
    from .invariants import degree_zero_generators
    return all(degree_zero_generators(t, degree_bound)[1] for t in E.terms.values())
