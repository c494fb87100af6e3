"""Buchberger's algorithm for submodules of free modules over Q[x]/J.

Internally a module element is a dict ``{(exponents, position): coeff}``.
Quotient rings are handled by adding J times every free generator; kernels,
lifts and syzygies come from one augmented basis computation with the target
positions ordered above the bookkeeping positions.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Sequence

from .graded import (ChainComplex, FPModule, GradedFreeModule, GradedMap, unit_vector,
                     vector_degree, zero_vector)
from .grading import EVERY_DEGREE, GroupElement
from .polyring import GREVLEX, ONE, ZERO, MonomialOrder, Poly

Vector = tuple


# --------------------------------------------------------------------------
# statistics


@dataclass
class EngineStats:
    bases: int = 0
    pairs_formed: int = 0
    pairs_reduced: int = 0
    zero_reductions: int = 0
    max_degree: int = 0

    def reset(self) -> None:
        self.bases = self.pairs_formed = self.pairs_reduced = 0
        self.zero_reductions = self.max_degree = 0

    def as_dict(self) -> dict:
        return {"bases": self.bases, "pairs_formed": self.pairs_formed,
                "pairs_reduced": self.pairs_reduced, "zero_reductions": self.zero_reductions,
                "max_degree": self.max_degree}


STATS = EngineStats()


# --------------------------------------------------------------------------
# raw engine

_KEY_CACHE: dict[MonomialOrder, dict] = {}


def _key_fn(order: MonomialOrder):
    memo = _KEY_CACHE.setdefault(order, {})
    if len(memo) > 500_000:
        memo.clear()
    tk = order.term_key

    def key(t):
        k = memo.get(t)
        if k is None:
            k = memo[t] = tk(t[0], t[1])
        return k

    return key


def _divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def _coprime(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _to_dict(v: Sequence[Poly], offset: int = 0) -> dict:
    out = {}
    for pos, f in enumerate(v):
        for m, c in f.terms.items():
            out[(m, pos + offset)] = c
    return out


def _from_dict(d: dict, rank: int, nvars: int, offset: int = 0) -> Vector:
    buckets: list[dict] = [{} for _ in range(rank)]
    for (m, pos), c in d.items():
        p = pos - offset
        if 0 <= p < rank:
            buckets[p][m] = c
    return tuple(Poly._raw(nvars, b) for b in buckets)


def _shift(v: dict, mono: tuple, c) -> dict:
    return {(tuple(a + b for a, b in zip(m, mono)), pos): a_ * c for (m, pos), a_ in v.items()}


class _Basis:
    """Working state of a Buchberger run."""

    def __init__(self, key):
        self.key = key
        self.lts: list[tuple] = []
        self.vecs: list[dict] = []
        self.active: list[int] = []

    def reducer(self, t):
        m, pos = t
        for i in self.active:
            lm, lp = self.lts[i]
            if lp == pos and _divides(lm, m):
                return i
        return None

    def reduce(self, v: dict, full: bool = True) -> dict:
        key = self.key
        p = dict(v)
        rem = {}
        while p:
            lt = max(p, key=key)
            c = p[lt]
            i = self.reducer(lt)
            if i is None:
                if not full:
                    rem.update(p)
                    break
                rem[lt] = c
                del p[lt]
                continue
            glm = self.lts[i][0]
            shift = tuple(a - b for a, b in zip(lt[0], glm))
            for (m, pos), a in self.vecs[i].items():
                t = (tuple(x + y for x, y in zip(m, shift)), pos)
                s = p.get(t, ZERO) - c * a
                if s:
                    p[t] = s
                else:
                    p.pop(t, None)
        return rem


def _monic(v: dict, key) -> tuple[tuple, dict]:
    lt = max(v, key=key)
    c = v[lt]
    if c == ONE:
        return lt, v
    inv = ONE / c
    return lt, {t: a * inv for t, a in v.items()}


def _buchberger(gens: Sequence[dict], order: MonomialOrder, seed: Sequence[dict] = (),
                rank_one: bool = True) -> list[dict]:
    """Reduced Groebner basis of the span of ``seed + gens``.

    ``seed`` must already be a reduced Groebner basis; its internal S-pairs are
    not formed again.
    """
    key = _key_fn(order)
    B = _Basis(key)
    pairs: list = []
    STATS.bases += 1

    for s in seed:
        lt, v = _monic(s, key)
        B.lts.append(lt)
        B.vecs.append(v)
        B.active.append(len(B.vecs) - 1)

    def update(h: int) -> None:
        hm, hp = B.lts[h]
        cands = [g for g in B.active if B.lts[g][1] == hp]
        lcms = {g: _lcm(hm, B.lts[g][0]) for g in cands}
        copr = {g: rank_one and _coprime(hm, B.lts[g][0]) for g in cands}
        kept = []
        rest = list(cands)
        while rest:
            g1 = rest.pop(0)
            L1 = lcms[g1]
            if copr[g1] or not any(_divides(lcms[g2], L1) for g2 in rest + kept):
                kept.append(g1)
        new_pairs = [g for g in kept if not copr[g]]
        # drop old pairs covered by the new lead term
        survivors = []
        for item in pairs:
            _, ppos, j, i, L = item
            if ppos == hp and _divides(hm, L) and _lcm(B.lts[i][0], hm) != L and _lcm(B.lts[j][0], hm) != L:
                continue
            survivors.append(item)
        pairs[:] = survivors
        for g in new_pairs:
            L = lcms[g]
            pairs.append((sum(L), hp, h, g, L))
            STATS.pairs_formed += 1
        heapq.heapify(pairs)
        B.active = [g for g in B.active if not (B.lts[g][1] == hp and _divides(hm, B.lts[g][0]))] + [h]

    def add(v: dict) -> None:
        lt, v = _monic(v, key)
        B.lts.append(lt)
        B.vecs.append(v)
        STATS.max_degree = max(STATS.max_degree, sum(lt[0]))
        update(len(B.vecs) - 1)

    for g in sorted((g for g in gens if g), key=lambda g: key(max(g, key=key))):
        h = B.reduce(g)
        if h:
            add(h)

    while pairs:
        _, _, j, i, L = heapq.heappop(pairs)
        STATS.pairs_reduced += 1
        mi, mj = B.lts[i][0], B.lts[j][0]
        si = tuple(a - b for a, b in zip(L, mi))
        sj = tuple(a - b for a, b in zip(L, mj))
        s = _shift(B.vecs[i], si, ONE)
        for t, a in _shift(B.vecs[j], sj, ONE).items():
            v = s.get(t, ZERO) - a
            if v:
                s[t] = v
            else:
                s.pop(t, None)
        h = B.reduce(s)
        if h:
            add(h)
        else:
            STATS.zero_reductions += 1

    # interreduce the tails of the minimal basis
    final = sorted(B.active, key=lambda g: key(B.lts[g]))
    out = []
    for g in final:
        others = _Basis(key)
        others.lts = B.lts
        others.vecs = B.vecs
        others.active = [x for x in final if x != g]
        lt = B.lts[g]
        tail = dict(B.vecs[g])
        c = tail.pop(lt)
        red = others.reduce(tail)
        red[lt] = c
        out.append(red)
    # replace stored vectors so later tails reduce against reduced ones
    return out


_MODULUS_CACHE: dict = {}


def _modulus_basis(modulus: Sequence[Poly], order: MonomialOrder) -> list[dict]:
    """Reduced basis of J (rank one) in the monomial part of ``order``."""
    mod = tuple(f for f in modulus if f)
    if not mod:
        return []
    ck = (mod, order.kind, order.elim)
    hit = _MODULUS_CACHE.get(ck)
    if hit is None:
        o1 = MonomialOrder(order.kind, "pot", order.elim)
        hit = _buchberger([_to_dict((f,)) for f in mod], o1)
        if len(_MODULUS_CACHE) > 256:
            _MODULUS_CACHE.clear()
        _MODULUS_CACHE[ck] = hit
    return hit


def _seed(modulus, order, positions) -> list[dict]:
    base = _modulus_basis(modulus, order)
    out = []
    for pos in positions:
        for b in base:
            out.append({(m, pos): c for (m, _), c in b.items()})
    return out


# --------------------------------------------------------------------------
# public types


@dataclass(frozen=True)
class SubmodulePresentation:
    """Generators of a submodule of a free module of rank ``ambient_rank``."""

    ambient_rank: int
    nvars: int
    generators: tuple[Vector, ...] = ()
    generator_degrees: tuple[GroupElement, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(tuple(g) for g in self.generators))
        for g in self.generators:
            if len(g) != self.ambient_rank:
                raise ValueError("generator length differs from the ambient rank")


class GroebnerBasis:
    """A reduced Groebner basis of ``span(generators) + J * F``.

    ``elements`` include the contribution of the modulus J.
    """

    def __init__(self, generators: Sequence[Vector], rank: int, nvars: int,
                 modulus: Sequence[Poly] = (), order: MonomialOrder = GREVLEX,
                 _raw: list[dict] | None = None):
        self.generators = tuple(tuple(g) for g in generators)
        self.rank = rank
        self.nvars = nvars
        self.modulus = tuple(f for f in modulus if f)
        self.order = order
        for g in self.generators:
            if len(g) != rank:
                raise ValueError("generator length differs from the rank")
        if _raw is None:
            seed = _seed(self.modulus, order, range(rank))
            _raw = _buchberger([_to_dict(g) for g in self.generators], order, seed, rank_one=(rank == 1))
        self._raw = _raw
        self._key = _key_fn(order)
        self._basis = _Basis(self._key)
        self._basis.vecs = _raw
        self._basis.lts = [max(v, key=self._key) for v in _raw]
        self._basis.active = list(range(len(_raw)))

    @property
    def elements(self) -> tuple[Vector, ...]:
        return tuple(_from_dict(v, self.rank, self.nvars) for v in self._raw)

    def leading_terms(self) -> list[tuple]:
        return list(self._basis.lts)

    def reduce(self, v: Sequence[Poly]) -> Vector:
        if len(v) != self.rank:
            raise ValueError(f"vector of length {len(v)} for a basis of rank {self.rank}")
        return _from_dict(self._basis.reduce(_to_dict(v)), self.rank, self.nvars)

    def contains(self, v: Sequence[Poly]) -> bool:
        if len(v) != self.rank:
            raise ValueError(f"vector of length {len(v)} for a basis of rank {self.rank}")
        return not self._basis.reduce(_to_dict(v))

    def contains_all(self, vs) -> bool:
        return all(self.contains(v) for v in vs)

    def is_everything(self) -> bool:
        """True when the submodule is the whole free module."""
        return all(self.contains(unit_vector(self.rank, i, self.nvars)) for i in range(self.rank))

    def extend(self, more: Sequence[Vector]) -> "GroebnerBasis":
        """Basis of the span enlarged by ``more``; reuses the current basis."""
        raw = _buchberger([_to_dict(g) for g in more], self.order, self._raw, rank_one=(self.rank == 1))
        return GroebnerBasis(self.generators + tuple(tuple(g) for g in more), self.rank, self.nvars,
                             self.modulus, self.order, _raw=raw)

    def __len__(self) -> int:
        return len(self._raw)


def groebner_basis(gens, order: MonomialOrder = GREVLEX, modulus: Sequence[Poly] = (),
                   rank: int | None = None, nvars: int | None = None) -> GroebnerBasis:
    """Groebner basis of a submodule (a :class:`SubmodulePresentation` or a list of vectors)."""
    if isinstance(gens, SubmodulePresentation):
        return GroebnerBasis(gens.generators, gens.ambient_rank, gens.nvars, modulus, order)
    gens = [tuple(g) for g in gens]
    if rank is None:
        if not gens:
            raise ValueError("rank is required for an empty generator list")
        rank = len(gens[0])
    if nvars is None:
        if gens and gens[0]:
            nvars = gens[0][0].nvars
        elif modulus:
            nvars = modulus[0].nvars
        else:
            raise ValueError("nvars is required")
    return GroebnerBasis(gens, rank, nvars, modulus, order)


def ideal_basis(polys: Sequence[Poly], nvars: int, modulus: Sequence[Poly] = (),
                order: MonomialOrder = GREVLEX) -> GroebnerBasis:
    return GroebnerBasis([(f,) for f in polys], 1, nvars, modulus, order)


def normal_form(v: Sequence[Poly], gb: GroebnerBasis) -> Vector:
    return gb.reduce(v)


# --------------------------------------------------------------------------
# kernels, lifts, syzygies


def _augmented(vectors: Sequence[Vector], rank: int, nvars: int, modulus: Sequence[Poly],
               order_kind: str = "grevlex") -> tuple[list[dict], MonomialOrder]:
    k = len(vectors)
    order = MonomialOrder(order_kind, "pot")
    gens = []
    for j, f in enumerate(vectors):
        d = _to_dict(f)
        d[((0,) * nvars, rank + j)] = ONE
        gens.append(d)
    seed = _seed(modulus, order, range(rank + k))
    return _buchberger(gens, order, seed, rank_one=False), order


def syzygies(vectors: Sequence[Vector], rank: int, nvars: int,
             modulus: Sequence[Poly] = ()) -> list[Vector]:
    """Generators of {a : sum a_j f_j = 0 in (S/J)^rank}, up to multiples of J."""
    k = len(vectors)
    if k == 0:
        return []
    raw, order = _augmented(vectors, rank, nvars, modulus)
    mod = tuple(f for f in modulus if f)
    jgb = ideal_basis(mod, nvars) if mod else None
    key = _key_fn(order)
    out = []
    for v in raw:
        if max(v, key=key)[1] < rank:
            continue
        vec = _from_dict(v, k, nvars, offset=rank)
        if jgb is not None and all(jgb.contains((f,)) for f in vec):
            continue
        out.append(vec)
    return out


def syzygy_basis(gb: GroebnerBasis) -> SubmodulePresentation:
    """Syzygies among the input generators of ``gb`` (modulo its J)."""
    gens = syzygies(gb.generators, gb.rank, gb.nvars, gb.modulus)
    return SubmodulePresentation(len(gb.generators), gb.nvars, tuple(gens))


def kernel_of_map(f: GradedMap, modulus: Sequence[Poly] = (), setup=None) -> SubmodulePresentation:
    """Homogeneous generators of the kernel of ``f`` over S/J.

    With ``setup`` given, the map is checked to be degree-preserving and the
    generators are reduced to an irredundant set.
    """
    if setup is not None:
        bad = f.homogeneity_errors(setup)
        if bad:
            raise ValueError(f"map is not degree-preserving at entries {bad[:5]}")
    gens = syzygies(f.cols, f.target.rank, f.nvars, modulus)
    if setup is not None:
        gens = irredundant(gens, f.source.rank, f.nvars, modulus)
    return SubmodulePresentation(f.source.rank, f.nvars, tuple(gens), f.source.degrees)


def lift(v: Sequence[Poly], vectors: Sequence[Vector], rank: int, nvars: int,
         modulus: Sequence[Poly] = ()) -> Vector | None:
    """Coefficients a with ``v = sum a_j f_j`` modulo J, or None."""
    k = len(vectors)
    if k == 0:
        jgb = GroebnerBasis((), rank, nvars, modulus)
        return () if jgb.contains(v) else None
    raw, order = _augmented(vectors, rank, nvars, modulus)
    B = _Basis(_key_fn(order))
    B.vecs = raw
    B.lts = [max(x, key=B.key) for x in raw]
    B.active = list(range(len(raw)))
    r = B.reduce(_to_dict(v))
    if any(pos < rank for (_, pos) in r):
        return None
    w = _from_dict(r, k, nvars, offset=rank)
    return tuple(-f for f in w)


class Lifter:
    """Reusable membership-with-coefficients against a fixed list of vectors."""

    def __init__(self, vectors: Sequence[Vector], rank: int, nvars: int, modulus: Sequence[Poly] = ()):
        self.k = len(vectors)
        self.rank = rank
        self.nvars = nvars
        if self.k:
            raw, order = _augmented(vectors, rank, nvars, modulus)
            self._B = _Basis(_key_fn(order))
            self._B.vecs = raw
            self._B.lts = [max(x, key=self._B.key) for x in raw]
            self._B.active = list(range(len(raw)))
        else:
            self._gb = GroebnerBasis((), rank, nvars, modulus)

    def __call__(self, v: Sequence[Poly]) -> Vector | None:
        if not self.k:
            return () if self._gb.contains(v) else None
        r = self._B.reduce(_to_dict(v))
        if any(pos < self.rank for (_, pos) in r):
            return None
        return tuple(-f for f in _from_dict(r, self.k, self.nvars, offset=self.rank))


def irredundant(vectors: Sequence[Vector], rank: int, nvars: int, modulus: Sequence[Poly] = (),
                keep_order: bool = False) -> list[Vector]:
    """Drop generators lying in the span of the others (and of J).

    Candidates are scanned by total degree, so smaller generators win.
    """
    mod = tuple(f for f in modulus if f)
    cands = [tuple(v) for v in vectors]
    if not keep_order:
        cands.sort(key=lambda v: (max((f.total_degree() for f in v), default=-1),
                                  sum(len(f.terms) for f in v)))
    gb = GroebnerBasis((), rank, nvars, mod)
    chosen = []
    for v in cands:
        if gb.contains(v):
            continue
        chosen.append(v)
        gb = gb.extend([v])
    # second pass: later generators can make earlier ones redundant
    i = 0
    while i < len(chosen) and len(chosen) > 1:
        others = chosen[:i] + chosen[i + 1:]
        if GroebnerBasis(others, rank, nvars, mod).contains(chosen[i]):
            chosen = others
        else:
            i += 1
    return chosen


def image_contains(vectors: Sequence[Vector], v: Sequence[Poly], rank: int, nvars: int,
                   modulus: Sequence[Poly] = ()) -> bool:
    return GroebnerBasis(vectors, rank, nvars, modulus).contains(v)


# --------------------------------------------------------------------------
# saturation and emptiness


def saturate(M: SubmodulePresentation, f: Poly, modulus: Sequence[Poly] = ()) -> SubmodulePresentation:
    """Generators of (M : f^infinity), via an extra variable t with t*f = 1."""
    n = M.nvars
    up = list(range(1, n + 1))
    lift_ = lambda p: p.remap(n + 1, up)
    t = Poly.var(n + 1, 0)
    rab = Poly.constant(n + 1, 1) - t * lift_(f)
    gens = [tuple(lift_(p) for p in g) for g in M.generators]
    gens += [tuple(rab if k == i else Poly.zero(n + 1) for k in range(M.ambient_rank))
             for i in range(M.ambient_rank)]
    order = MonomialOrder("grevlex", "pot", elim=1)
    mod = [lift_(p) for p in modulus if p]
    gb = GroebnerBasis(gens, M.ambient_rank, n + 1, mod, order)
    keep = []
    down = [None] + list(range(n))
    for v in gb.elements:
        if any(m[0] for p in v for m in p.terms):
            continue
        keep.append(tuple(p.remap(n, down) for p in v))
    return SubmodulePresentation(M.ambient_rank, n, tuple(keep), M.generator_degrees)


def locus_is_empty(ideal: Sequence[Poly], within) -> bool:
    """True iff V(ideal) has no points on ``within`` (any object exposing
    ``nvars`` and ``relations``, e.g. a stratum ring)."""
    polys = [f for f in ideal if f] + [f for f in within.relations if f]
    if any(f.is_constant() for f in ideal if f):
        return True
    if not polys:
        return False
    gb = ideal_basis(polys, within.nvars)
    return gb.contains((Poly.constant(within.nvars, 1),))


# --------------------------------------------------------------------------
# modules and resolutions


def is_zero_module(M: FPModule) -> bool:
    if M.rank == 0:
        return True
    gb = GroebnerBasis(M.relations.cols, M.rank, M.setup.nvars, M.setup.ambient_ideal)
    return gb.is_everything()


def reduce_entries(f: GradedMap, modulus: Sequence[Poly]) -> GradedMap:
    mod = tuple(p for p in modulus if p)
    if not mod:
        return f
    jgb = ideal_basis(mod, f.nvars)
    cols = tuple(tuple(jgb.reduce((p,))[0] for p in c) for c in f.cols)
    return GradedMap(f.source, f.target, cols, f.nvars)


def _unit_entry(f: GradedMap):
    for j, c in enumerate(f.cols):
        for i, p in enumerate(c):
            if p and p.is_constant():
                return i, j
    return None


def prune_complex(C: ChainComplex, protect_top: bool = False) -> ChainComplex:
    """Cancel constant entries of the differentials (split off contractible pieces)."""
    setup = C.setup
    n = setup.nvars
    terms = {j: t.generators for j, t in C.terms.items()}
    diffs = {j: reduce_entries(d, setup.ambient_ideal) for j, d in C.diffs.items()}
    changed = True
    while changed:
        changed = False
        for k in sorted(diffs):
            d = diffs[k]
            u = _unit_entry(d)
            if u is None:
                continue
            i, j = u  # generator j of term k maps with unit coefficient to generator i of term k+1
            a = d.cols[j][i]
            inv = ONE / a.constant_term()
            keep_src = [x for x in range(d.source.rank) if x != j]
            keep_tgt = [x for x in range(d.target.rank) if x != i]
            cols = []
            for m in keep_src:
                scale = d.cols[m][i] * inv
                cols.append(tuple(d.cols[m][r] - scale * d.cols[j][r] for r in keep_tgt))
            new_src = GradedFreeModule(tuple(d.source.degrees[x] for x in keep_src))
            new_tgt = GradedFreeModule(tuple(d.target.degrees[x] for x in keep_tgt))
            diffs[k] = reduce_entries(GradedMap(new_src, new_tgt, tuple(cols), n), setup.ambient_ideal)
            terms[k] = new_src
            terms[k + 1] = new_tgt
            if k - 1 in diffs:
                prev = diffs[k - 1]
                diffs[k - 1] = prev.submatrix(keep_src, range(prev.source.rank))
            if k + 1 in diffs:
                nxt = diffs[k + 1]
                diffs[k + 1] = nxt.submatrix(range(nxt.target.rank), keep_tgt)
            changed = True
            break
    return ChainComplex(setup, {j: FPModule(setup, F, GradedMap.zero(GradedFreeModule(()), F, n))
                                for j, F in terms.items()}, diffs)


def minimal_presentation(M: FPModule) -> FPModule:
    """Same module with redundant relations and unit-cancelled generators removed."""
    setup = M.setup
    cols = [c for c in M.relations.cols if any(c)]
    cols = irredundant(cols, M.rank, setup.nvars, setup.ambient_ideal)
    rel = FPModule.from_columns(setup, M.generators.degrees, cols) if cols else FPModule.free(setup, M.generators.degrees)
    C = ChainComplex(setup, {-1: FPModule.free(setup, rel.relations.source.degrees), 0: FPModule.free(setup, M.generators.degrees)},
                     {-1: rel.relations})
    P = prune_complex(C)
    return FPModule(setup, P.term(0).generators, P.diff(-1))


def free_resolution(M: FPModule, length: int) -> ChainComplex:
    """Free resolution F_length -> ... -> F_0 of M over S/J, placed in degrees -length..0."""
    if length < 1:
        raise ValueError("length must be at least 1")
    setup = M.setup
    n = setup.nvars
    P = minimal_presentation(M)
    terms = {0: P.generators, -1: P.relations.source}
    diffs = {-1: P.relations}
    for k in range(2, length + 1):
        d = diffs[-(k - 1)]
        gens = syzygies(d.cols, d.target.rank, n, setup.ambient_ideal)
        gens = irredundant(gens, d.source.rank, n, setup.ambient_ideal)
        degs = []
        for g in gens:
            deg = vector_degree(g, d.source.degrees, setup)
            if deg is None:
                raise ArithmeticError("kernel generator is not homogeneous")
            degs.append(setup.group.zero() if deg is EVERY_DEGREE else deg)
        F = GradedFreeModule(tuple(degs))
        terms[-k] = F
        diffs[-k] = GradedMap(F, d.source, tuple(gens), n)
    C = ChainComplex(setup, {j: FPModule(setup, F, GradedMap.zero(GradedFreeModule(()), F, n))
                             for j, F in terms.items()}, diffs)
    return prune_complex(C)


def submodule_degrees(sub: SubmodulePresentation, setup) -> list[GroupElement]:
    degs = []
    for g in sub.generators:
        d = vector_degree(g, sub.generator_degrees, setup)
        if d is None:
            raise ValueError("generator is not homogeneous")
        degs.append(setup.group.zero() if d is EVERY_DEGREE else d)
    return degs


__all__ = [
    "EngineStats", "STATS", "SubmodulePresentation", "GroebnerBasis", "groebner_basis", "ideal_basis",
    "normal_form", "syzygies", "syzygy_basis", "kernel_of_map", "lift", "Lifter", "irredundant",
    "image_contains", "saturate", "locus_is_empty", "is_zero_module", "reduce_entries", "prune_complex",
    "minimal_presentation", "free_resolution", "submodule_degrees", "zero_vector",
]
