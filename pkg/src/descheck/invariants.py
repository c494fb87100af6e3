"""The invariant ring S_0, the functors pi^* and pi_*^G, and the canonical map.

For a grading by A, the invariant ring is the degree-0 subring S_0, spanned by
the monomials whose exponent vectors lie in the monoid {a : sum a_i w_i = 0}.
Its Hilbert basis gives algebra generators u_j; the degree-delta piece S_delta
is generated over S_0 by the minimal exponent vectors of degree delta.
Pushing a module forward means taking its degree-0 part.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

from .graded import ChainComplex, FPModule, GradedMap, vector_degree
from .grading import EVERY_DEGREE, EquivariantSetup, GradingGroup, GroupElement, degree_of_term
from .groebner import (GroebnerBasis, Lifter, ideal_basis, irredundant, syzygies)
from .polyring import MonomialOrder, Poly

TRIVIAL = GradingGroup(0, ())


# --------------------------------------------------------------------------
# Hilbert bases by completion


def _system(setup: EquivariantSetup, delta: GroupElement):
    """Integer columns of the homogenised linear system for degree ``delta``.

    Unknowns: the n exponents, one slack per torsion factor, and z (the
    homogenising unknown, last).  Free rows read sum a_i w_i - delta z = 0; a
    torsion row with order d reads sum a_i t_i - d s - delta z = 0 with t_i and
    delta reduced into [0, d).
    """
    A = setup.group
    r = A.free_rank
    n = setup.nvars
    tor = A.torsion
    rows = []
    for k in range(r):
        row = [w.values[k] for w in setup.weights] + [0] * len(tor) + [-delta.values[k]]
        rows.append(row)
    for k, d in enumerate(tor):
        row = [w.values[r + k] % d for w in setup.weights]
        row += [-d if kk == k else 0 for kk in range(len(tor))]
        row.append(-(delta.values[r + k] % d))
        rows.append(row)
    ncols = n + len(tor) + 1
    cols = [tuple(rows[i][j] for i in range(len(rows))) for j in range(ncols)]
    return cols, n, len(tor)


def _completion(cols: list[tuple[int, ...]], z: int) -> list[tuple[int, ...]]:
    """Minimal nonzero solutions y >= 0 of sum y_j col_j = 0 with y_z <= 1.

    Contejean-Devie completion: grow a partial solution p by e_j only when
    <A p, A e_j> < 0, and discard anything above a solution already found.
    """
    N = len(cols)
    m = len(cols[0]) if cols else 0
    found: list[tuple[int, ...]] = []

    def image(p):
        return tuple(sum(p[j] * cols[j][i] for j in range(N) if p[j]) for i in range(m))

    def above_found(p):
        return any(all(a <= b for a, b in zip(h, p)) for h in found)

    frontier = {}
    for j in range(N):
        p = tuple(int(k == j) for k in range(N))
        frontier[p] = image(p)
    while frontier:
        nxt = {}
        for p, ap in sorted(frontier.items()):
            if not any(ap):
                if not above_found(p):
                    found.append(p)
                continue
        for p, ap in sorted(frontier.items()):
            if not any(ap):
                continue
            for j in range(N):
                if j == z and p[z] >= 1:
                    continue
                if sum(a * b for a, b in zip(ap, cols[j])) >= 0:
                    continue
                q = p[:j] + (p[j] + 1,) + p[j + 1:]
                if q in nxt or above_found(q):
                    continue
                nxt[q] = tuple(a + b for a, b in zip(ap, cols[j]))
        frontier = nxt
    return found


def _sort_key(e: tuple) -> tuple:
    return (sum(e), tuple(-x for x in e))


@lru_cache(maxsize=4096)
def _minimal_exponents(group: GradingGroup, weights: tuple, delta_values: tuple) -> tuple:
    setup = EquivariantSetup(group, tuple(f"v{i}" for i in range(len(weights))), weights)
    delta = group.element(delta_values)
    n = setup.nvars
    if delta.is_zero():
        cols, n, ns = _system(setup, delta)
        sols = _completion(cols[:-1], z=-1)
        out = {s[:n] for s in sols if any(s[:n])}
    else:
        cols, n, ns = _system(setup, delta)
        z = len(cols) - 1
        sols = _completion(cols, z=z)
        out = {s[:n] for s in sols if s[z] == 1}
    # safety: keep only componentwise-minimal vectors
    out = [e for e in out if not any(f != e and all(a <= b for a, b in zip(f, e)) for f in out)]
    return tuple(sorted(out, key=_sort_key))


def minimal_monomials(setup: EquivariantSetup, delta: GroupElement) -> list[tuple[int, ...]]:
    """Minimal exponent vectors of degree ``delta``: generators of S_delta over S_0."""
    if delta.is_zero():
        return [(0,) * setup.nvars]
    return list(_minimal_exponents(setup.group, setup.weights, delta.values))


def pottier_bound(setup: EquivariantSetup) -> int:
    """Upper bound on the total degree of Hilbert basis elements.

    (1 + max row l1 norm) ** rank for the system matrix with slacks.
    """
    cols, n, ns = _system(setup, setup.group.zero())
    cols = cols[:-1]
    if not cols or not cols[0]:
        return 1
    m = len(cols[0])
    norm = max(sum(abs(c[i]) for c in cols) for i in range(m))
    from .graded import rational_rank
    rank = rational_rank([[c[i] for c in cols] for i in range(m)])
    return (1 + norm) ** rank


@dataclass(frozen=True)
class MonoidBasis:
    generators: tuple[tuple[int, ...], ...]
    completeness_bound: int

    def __len__(self) -> int:
        return len(self.generators)


def invariant_monoid_basis(setup: EquivariantSetup) -> MonoidBasis:
    gens = _minimal_exponents(setup.group, setup.weights, setup.group.zero().values)
    bound = pottier_bound(setup)
    if any(sum(g) > bound for g in gens):
        raise ArithmeticError("Hilbert basis element exceeds the a-priori bound")
    return MonoidBasis(tuple(gens), bound)


# --------------------------------------------------------------------------
# the quotient ring


def _monomial_poly(e: Sequence[int]) -> Poly:
    return Poly.monomial(tuple(e))


@dataclass(frozen=True)
class QuotientPresentation:
    """S_0 / (J cap S_0) as Q[u_1..u_N] / relations, with u_j = x^{monomials[j]}."""

    setup: EquivariantSetup
    monomials: tuple[tuple[int, ...], ...]
    names: tuple[str, ...]
    toric: tuple[Poly, ...]
    ideal_image: tuple[Poly, ...]

    @property
    def nvars(self) -> int:
        return len(self.monomials)

    @property
    def relations(self) -> tuple[Poly, ...]:
        return self.toric + self.ideal_image

    @cached_property
    def ring_setup(self) -> EquivariantSetup:
        """The quotient ring as a trivially graded setup (weights in the zero group)."""
        return EquivariantSetup(TRIVIAL, self.names, tuple(TRIVIAL.zero() for _ in self.names), self.relations)

    @cached_property
    def images(self) -> tuple[Poly, ...]:
        return tuple(Poly.monomial(e) for e in self.monomials)

    def pull(self, f: Poly) -> Poly:
        """Substitute u_j -> x^{m_j}."""
        return f.substitute(self.images, self.setup.nvars)

    def rewrite(self, f: Poly) -> Poly:
        """Write a degree-0 polynomial of S in the variables u."""
        N = self.nvars
        out = {}
        for m, c in f.terms.items():
            rest = list(m)
            u = [0] * N
            while any(rest):
                for j, e in enumerate(self.monomials):
                    if all(a <= b for a, b in zip(e, rest)):
                        u[j] += 1
                        rest = [b - a for a, b in zip(e, rest)]
                        break
                else:
                    raise ValueError(f"monomial {m} is not invariant")
            key = tuple(u)
            out[key] = out.get(key, 0) + c
        return Poly(N, out)

    @cached_property
    def ideal_basis(self) -> GroebnerBasis:
        return ideal_basis(self.relations, self.nvars)

    def describe(self) -> str:
        gens = ", ".join(f"{n} = {_fmt_mono(e, self.setup.names)}" for n, e in zip(self.names, self.monomials))
        from .polyring import format_poly
        rels = ", ".join(format_poly(r, self.names) for r in self.relations) or "none"
        return f"Q[{', '.join(self.names)}] with {gens or 'no generators'}; relations: {rels}"


def _fmt_mono(e, names) -> str:
    parts = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
    return "*".join(parts) or "1"


def _elimination(setup: EquivariantSetup, monomials, with_ideal: bool) -> list[Poly]:
    n, N = setup.nvars, len(monomials)
    tot = n + N
    gens = []
    for j, e in enumerate(monomials):
        gens.append(Poly.var(tot, n + j) - Poly.monomial(tuple(e) + (0,) * N))
    if with_ideal:
        emb = list(range(n))
        gens += [f.remap(tot, emb) for f in setup.ambient_ideal if f]
    order = MonomialOrder("grevlex", "pot", elim=n)
    gb = GroebnerBasis([(g,) for g in gens], 1, tot, (), order)
    out = []
    down = [None] * n + list(range(N))
    for (g,) in gb.elements:
        if any(any(m[:n]) for m in g.terms):
            continue
        out.append(g.remap(N, down))
    return out


def invariant_ring_presentation(basis: MonoidBasis, setup: EquivariantSetup,
                                names: Sequence[str] | None = None) -> QuotientPresentation:
    """Present S_0/(J cap S_0) by generators u_j and relations."""
    N = len(basis.generators)
    if names is None:
        names = tuple(f"u{j + 1}" for j in range(N))
    monomials = tuple(basis.generators)
    toric = []
    if N:
        toric = _elimination(setup, monomials, with_ideal=False)
        toric = [v[0] for v in irredundant([(f,) for f in toric], 1, N)]
    pres = QuotientPresentation(setup, monomials, tuple(names), tuple(toric), ())
    image = []
    if any(setup.ambient_ideal):
        zero = setup.group.zero()
        for f in setup.ambient_ideal:
            if f and degree_of_term(next(iter(f.terms)), setup) == zero:
                image.append(pres.rewrite(f))
        extra = _elimination(setup, monomials, with_ideal=True) if N else []
        cur = ideal_basis(toric + image, N) if N else None
        for g in extra:
            if cur is None or not cur.contains((g,)):
                image.append(g)
                cur = ideal_basis(toric + image, N)
        if N:
            kept = irredundant([(f,) for f in image], 1, N, toric, keep_order=True)
            image = [v[0] for v in kept]
        else:
            # S_0 = Q; J cap S_0 is (1) exactly when J contains a nonzero constant
            if ideal_basis(setup.ambient_ideal, setup.nvars).is_everything():
                image = [Poly.constant(0, 1)]
    return QuotientPresentation(setup, monomials, tuple(names), tuple(toric), tuple(image))


@lru_cache(maxsize=64)
def quotient_of(setup: EquivariantSetup) -> QuotientPresentation:
    return invariant_ring_presentation(invariant_monoid_basis(setup), setup)


# --------------------------------------------------------------------------
# pushforward and pullback


def degree_part(f: Poly, setup: EquivariantSetup, delta: GroupElement) -> Poly:
    return Poly(f.nvars, {m: c for m, c in f.terms.items() if degree_of_term(m, setup) == delta})


@dataclass(frozen=True)
class DescendedModule:
    """A module over the quotient ring together with its link to the source.

    ``generators`` are the elements of M (vectors over the source generators)
    that the quotient-ring generators stand for.  ``complete`` is False when a
    user cap cut the generator search short; ``verified`` records whether the
    canonical map pi^* N -> M was checked to be an isomorphism.
    """

    module: FPModule
    quotient: QuotientPresentation
    generators: tuple[tuple[Poly, ...], ...]
    source: FPModule | None = None
    complete: bool = True
    verified: bool | None = None
    provenance: str = "pushforward"

    @property
    def rank(self) -> int:
        return self.module.rank


def _total_degree(e) -> int:
    return sum(e)


def degree_zero_generators(M: FPModule, bound: int | None = None) -> tuple[list, bool]:
    """Elements m * e_i spanning M_0 over S_0 (and whether no cap was hit)."""
    setup = M.setup
    n = setup.nvars
    gens, complete = [], True
    for i, a in enumerate(M.generators.degrees):
        for e in minimal_monomials(setup, -a):
            if bound is not None and _total_degree(e) > bound:
                complete = False
                continue
            v = [Poly.zero(n)] * M.rank
            v[i] = Poly.monomial(e)
            gens.append(tuple(v))
    return gens, complete


def degree_zero_multiples(vectors, degrees, setup: EquivariantSetup) -> list:
    """S_0-generators of the degree-0 part of the S-span of homogeneous ``vectors``."""
    out = []
    for v, c in zip(vectors, degrees):
        for e in minimal_monomials(setup, -c):
            mono = Poly.monomial(e)
            out.append(tuple(mono * f for f in v))
    return out


def _kernel_of_generators(M: FPModule, gens: list) -> tuple[list, list]:
    """Kernel of S^N -> M, e_k -> gens[k]: homogeneous generators and their degrees."""
    setup = M.setup
    N = len(gens)
    cols = list(gens) + list(M.relations.cols)
    degs = [setup.group.zero()] * N + list(M.relations.source.degrees)
    kers, kdeg = [], []
    for s in syzygies(cols, M.rank, setup.nvars, setup.ambient_ideal):
        head = s[:N]
        if not any(head):
            continue
        d = vector_degree(s, degs, setup)
        if d is None:
            raise ArithmeticError("inhomogeneous syzygy")
        kers.append(head)
        kdeg.append(setup.group.zero() if d is EVERY_DEGREE else d)
    return kers, kdeg


@dataclass(frozen=True)
class _PushData:
    gens: list
    complete: bool
    kernel: list
    kernel_degrees: list
    kernel0: list


def _push_data(M: FPModule, bound: int | None) -> _PushData:
    gens, complete = degree_zero_generators(M, bound)
    kers, kdeg = _kernel_of_generators(M, gens)
    k0 = degree_zero_multiples(kers, kdeg, M.setup)
    return _PushData(gens, complete, kers, kdeg, k0)


def pushforward(M: FPModule, degree_bound: int | None = None, verify: bool = True) -> DescendedModule:
    """The degree-0 part M_0 presented over the quotient ring."""
    setup = M.setup
    Q = quotient_of(setup)
    data = _push_data(M, degree_bound)
    R = Q.ring_setup
    rels = []
    for v in data.kernel0:
        rels.append(tuple(Q.rewrite(f) for f in v))
    if rels:
        rels = irredundant(rels, len(data.gens), Q.nvars, Q.relations)
    module = FPModule.from_columns(R, [TRIVIAL.zero()] * len(data.gens), rels,
                                   [TRIVIAL.zero()] * len(rels))
    verified = None
    if verify:
        verified = _canonical_from_data(M, data)[0]
    return DescendedModule(module, Q, tuple(data.gens), M, data.complete, verified, "pushforward")


def pullback(N, setup: EquivariantSetup | None = None) -> FPModule:
    """Base change along S_0 -> S: substitute every u_j by its monomial."""
    if isinstance(N, DescendedModule):
        Q = N.quotient
        mod = N.module
    else:
        if setup is None:
            raise ValueError("a setup is needed to pull back a bare module")
        Q = quotient_of(setup)
        mod = N
    S = Q.setup
    cols = [tuple(Q.pull(f) for f in c) for c in mod.relations.cols]
    cols = [c for c in cols if any(c)]
    zero = S.group.zero()
    return FPModule.from_columns(S, [zero] * mod.rank, cols, [zero] * len(cols))


@dataclass(frozen=True)
class CanonicalMapVerdict:
    is_iso: bool
    kernel_zero: bool
    cokernel_zero: bool
    cone: ChainComplex
    complete: bool
    image_generators: tuple

    @property
    def mode(self) -> str:
        return "complete" if (self.complete or self.is_iso) else "bound-limited"


def _canonical_from_data(M: FPModule, data: _PushData) -> tuple[bool, bool, bool]:
    setup = M.setup
    cols = list(M.relations.cols) + list(data.gens)
    coker_zero = GroebnerBasis(cols, M.rank, setup.nvars, setup.ambient_ideal).is_everything() if M.rank else True
    N = len(data.gens)
    if N == 0:
        ker_zero = True
    else:
        gb = GroebnerBasis(data.kernel0, N, setup.nvars, setup.ambient_ideal)
        ker_zero = all(gb.contains(k) for k in data.kernel)
    return coker_zero and ker_zero, ker_zero, coker_zero


def canonical_map_verdict(M: FPModule, degree_bound: int | None = None) -> CanonicalMapVerdict:
    """Is pi^* pi_*^G M -> M an isomorphism?  Also returns its two-term cone."""
    setup = M.setup
    data = _push_data(M, degree_bound)
    is_iso, ker_zero, coker_zero = _canonical_from_data(M, data)
    zero = setup.group.zero()
    N = len(data.gens)
    source = FPModule.from_columns(setup, [zero] * N, data.kernel0, [zero] * len(data.kernel0))
    d = GradedMap(source.generators, M.generators, tuple(data.gens), setup.nvars)
    cone = ChainComplex(setup, {-1: source, 0: M}, {-1: d})
    return CanonicalMapVerdict(is_iso, ker_zero, coker_zero, cone, data.complete, tuple(data.gens))


def pushforward_map(f: GradedMap, M: FPModule, Mp: FPModule, pM: DescendedModule,
                    pMp: DescendedModule) -> GradedMap:
    """pi_*^G of a map M -> M' given on generators, as a matrix over the quotient ring."""
    setup = M.setup
    Q = pM.quotient
    zero = setup.group.zero()
    cols_target = list(pMp.generators) + list(Mp.relations.cols)
    lifter = Lifter(cols_target, Mp.rank, setup.nvars, setup.ambient_ideal)
    Np = len(pMp.generators)
    out = []
    for g in pM.generators:
        img = f.apply(g)
        coeffs = lifter(img)
        if coeffs is None:
            raise ArithmeticError("image of a degree-0 element is not in the degree-0 span")
        out.append(tuple(Q.rewrite(degree_part(c, setup, zero)) for c in coeffs[:Np]))
    return GradedMap(pM.module.generators, pMp.module.generators, tuple(out), Q.nvars)
