"""Graded free modules, degree-preserving maps, presentations and complexes.

Conventions: a free generator of degree d spans the summand S(d); a map entry
(i, j) from source generator j to target generator i is homogeneous of degree
``source[j] - target[i]``.  Complexes are cohomologically indexed and their
differentials raise the index by one.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .grading import (EVERY_DEGREE, EquivariantSetup, GroupElement, degree_of_term,
                      homogeneity_check)
from .polyring import Poly, QQ

Vector = tuple  # tuple[Poly, ...]


def zero_vector(rank: int, nvars: int) -> Vector:
    return tuple(Poly.zero(nvars) for _ in range(rank))


def unit_vector(rank: int, i: int, nvars: int) -> Vector:
    return tuple(Poly.constant(nvars, 1) if k == i else Poly.zero(nvars) for k in range(rank))


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_scale(f, a: Vector) -> Vector:
    return tuple(f * x for x in a)


def vec_is_zero(a: Vector) -> bool:
    return not any(a)


def vector_degree(v: Vector, degrees: Sequence[GroupElement], setup: EquivariantSetup):
    """Degree of a homogeneous vector, ``EVERY_DEGREE`` for zero, ``None`` if mixed."""
    found = None
    for f, d in zip(v, degrees):
        for m in f.terms:
            deg = degree_of_term(m, setup) + d
            if found is None:
                found = deg
            elif deg != found:
                return None
    return EVERY_DEGREE if found is None else found


@dataclass(frozen=True)
class GradedFreeModule:
    degrees: tuple[GroupElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    def __add__(self, other: "GradedFreeModule") -> "GradedFreeModule":
        return GradedFreeModule(self.degrees + other.degrees)

    def is_trivial(self) -> bool:
        return all(d.is_zero() for d in self.degrees)


@dataclass(frozen=True)
class GradedMap:
    """A matrix of polynomials stored column by column (images of source generators)."""

    source: GradedFreeModule
    target: GradedFreeModule
    cols: tuple[Vector, ...]
    nvars: int

    def __post_init__(self):
        cols = tuple(tuple(c) for c in self.cols)
        object.__setattr__(self, "cols", cols)
        if len(cols) != self.source.rank:
            raise ValueError(f"map has {len(cols)} columns for a source of rank {self.source.rank}")
        for c in cols:
            if len(c) != self.target.rank:
                raise ValueError("column length does not match the target rank")
            for f in c:
                if f.nvars != self.nvars:
                    raise ValueError("entry in the wrong ring")

    @classmethod
    def from_rows(cls, source, target, rows: Sequence[Sequence[Poly]], nvars: int) -> "GradedMap":
        cols = [tuple(rows[i][j] for i in range(target.rank)) for j in range(source.rank)]
        return cls(source, target, tuple(cols), nvars)

    @classmethod
    def zero(cls, source, target, nvars: int) -> "GradedMap":
        return cls(source, target, tuple(zero_vector(target.rank, nvars) for _ in range(source.rank)), nvars)

    @classmethod
    def identity(cls, module: GradedFreeModule, nvars: int) -> "GradedMap":
        return cls(module, module, tuple(unit_vector(module.rank, j, nvars) for j in range(module.rank)), nvars)

    def entry(self, i: int, j: int) -> Poly:
        return self.cols[j][i]

    def rows(self) -> list[list[Poly]]:
        return [[self.cols[j][i] for j in range(self.source.rank)] for i in range(self.target.rank)]

    def apply(self, v: Vector) -> Vector:
        out = zero_vector(self.target.rank, self.nvars)
        for c, f in zip(self.cols, v):
            if f:
                out = vec_add(out, vec_scale(f, c))
        return out

    def compose(self, inner: "GradedMap") -> "GradedMap":
        """``self o inner``."""
        if inner.target.rank != self.source.rank:
            raise ValueError("maps are not composable")
        return GradedMap(inner.source, self.target, tuple(self.apply(c) for c in inner.cols), self.nvars)

    def __neg__(self) -> "GradedMap":
        return GradedMap(self.source, self.target, tuple(vec_scale(-1, c) for c in self.cols), self.nvars)

    def __add__(self, other: "GradedMap") -> "GradedMap":
        return GradedMap(self.source, self.target,
                         tuple(vec_add(a, b) for a, b in zip(self.cols, other.cols)), self.nvars)

    def is_zero(self) -> bool:
        return all(vec_is_zero(c) for c in self.cols)

    def evaluate(self, point) -> list[list]:
        """The matrix (rows = target) of rational values at ``point``."""
        return [[self.cols[j][i].evaluate(point) for j in range(self.source.rank)]
                for i in range(self.target.rank)]

    def substitute(self, images: Sequence[Poly], nvars: int) -> "GradedMap":
        return GradedMap(self.source, self.target,
                         tuple(tuple(f.substitute(images, nvars) for f in c) for c in self.cols), nvars)

    def homogeneity_errors(self, setup: EquivariantSetup) -> list[tuple[int, int]]:
        bad = []
        for j, c in enumerate(self.cols):
            for i, f in enumerate(c):
                if not f:
                    continue
                d = homogeneity_check(f, setup)
                if d is None or d != self.source.degrees[j] - self.target.degrees[i]:
                    bad.append((i, j))
        return bad

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "GradedMap":
        src = GradedFreeModule(tuple(self.source.degrees[j] for j in cols))
        tgt = GradedFreeModule(tuple(self.target.degrees[i] for i in rows))
        return GradedMap(src, tgt, tuple(tuple(self.cols[j][i] for i in rows) for j in cols), self.nvars)


def hstack(maps: Sequence[GradedMap]) -> GradedMap:
    """Columns side by side; all maps share the target."""
    target = maps[0].target
    source = GradedFreeModule(sum((m.source.degrees for m in maps), ()))
    return GradedMap(source, target, sum((m.cols for m in maps), ()), maps[0].nvars)


def block_diagonal(maps: Sequence[GradedMap]) -> GradedMap:
    nvars = maps[0].nvars
    source = GradedFreeModule(sum((m.source.degrees for m in maps), ()))
    target = GradedFreeModule(sum((m.target.degrees for m in maps), ()))
    cols = []
    offset = 0
    for m in maps:
        for c in m.cols:
            col = [Poly.zero(nvars)] * target.rank
            col[offset:offset + m.target.rank] = c
            cols.append(tuple(col))
        offset += m.target.rank
    return GradedMap(source, target, tuple(cols), nvars)


@dataclass(frozen=True)
class FPModule:
    """The cokernel of ``relations`` (a map into ``generators``) over S/J."""

    setup: EquivariantSetup
    generators: GradedFreeModule
    relations: GradedMap

    def __post_init__(self):
        if self.relations.target != self.generators:
            raise ValueError("relations must map into the generator module")
        if self.relations.nvars != self.setup.nvars:
            raise ValueError("relations live in the wrong ring")
        bad = self.relations.homogeneity_errors(self.setup)
        if bad:
            raise ValueError(f"presentation is not degree-preserving at entries {bad[:5]}")

    @classmethod
    def free(cls, setup: EquivariantSetup, degrees: Iterable) -> "FPModule":
        degs = tuple(d if isinstance(d, GroupElement) else setup.group.element(d) for d in degrees)
        F = GradedFreeModule(degs)
        return cls(setup, F, GradedMap(GradedFreeModule(()), F, (), setup.nvars))

    @classmethod
    def from_columns(cls, setup: EquivariantSetup, degrees: Iterable, columns: Sequence[Vector],
                     column_degrees: Sequence | None = None) -> "FPModule":
        """Build a presentation, inferring each relation's degree from its entries."""
        degs = tuple(d if isinstance(d, GroupElement) else setup.group.element(d) for d in degrees)
        F = GradedFreeModule(degs)
        rel_degs = []
        for k, col in enumerate(columns):
            if column_degrees is not None and column_degrees[k] is not None:
                d = column_degrees[k]
                rel_degs.append(d if isinstance(d, GroupElement) else setup.group.element(d))
                continue
            d = vector_degree(col, degs, setup)
            if d is None:
                raise ValueError(f"relation {k} is not homogeneous")
            if d is EVERY_DEGREE:
                d = setup.group.zero()
            rel_degs.append(d)
        G = GradedFreeModule(tuple(rel_degs))
        return cls(setup, F, GradedMap(G, F, tuple(columns), setup.nvars))

    @property
    def rank(self) -> int:
        return self.generators.rank

    def is_free(self) -> bool:
        return self.relations.source.rank == 0

    def direct_sum(self, other: "FPModule") -> "FPModule":
        return FPModule(self.setup, self.generators + other.generators,
                        block_diagonal([self.relations, other.relations]))


@dataclass(frozen=True)
class WeightedVectorSpace:
    """Dimensions of the isotypic pieces of a representation of a diagonalizable group."""

    dims: Mapping[GroupElement, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "dims", {k: v for k, v in sorted(self.dims.items(), key=lambda kv: kv[0].values) if v})

    def __getitem__(self, r: GroupElement) -> int:
        return self.dims.get(r, 0)

    def total(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return not self.dims

    def is_trivial_rep(self) -> bool:
        return all(r.is_zero() for r in self.dims)

    def as_plain(self) -> dict:
        """``{class values (int when one component): dim}``, handy in tests."""
        def key(r):
            if len(r.values) == 1:
                return r.values[0]
            return r.values if r.values else 0

        return {key(r): d for r, d in self.dims.items()}

    def __eq__(self, other) -> bool:
        if isinstance(other, WeightedVectorSpace):
            return dict(self.dims) == dict(other.dims)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.dims.items()))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{r}: {d}" for r, d in self.dims.items()) + "}"


@dataclass(frozen=True)
class ChainComplex:
    """A bounded complex of finitely presented graded modules.

    ``diffs[j]`` is the matrix of d^j : terms[j] -> terms[j+1] on generators.
    Absent indices are zero modules.
    """

    setup: EquivariantSetup
    terms: Mapping[int, FPModule]
    diffs: Mapping[int, GradedMap]

    def __post_init__(self):
        terms = {j: t for j, t in sorted(self.terms.items())}
        object.__setattr__(self, "terms", terms)
        diffs = {}
        for j in sorted(terms):
            src = terms[j]
            if j + 1 not in terms:
                continue
            d = self.diffs.get(j)
            tgt = terms[j + 1]
            if d is None:
                d = GradedMap.zero(src.generators, tgt.generators, self.setup.nvars)
            if d.source != src.generators or d.target != tgt.generators:
                raise ValueError(f"differential d^{j} does not match its terms")
            diffs[j] = d
        for j in self.diffs:
            if j not in terms or j + 1 not in terms:
                if not self.diffs[j].is_zero():
                    raise ValueError(f"differential d^{j} has no source or target term")
        object.__setattr__(self, "diffs", diffs)

    @classmethod
    def free(cls, setup: EquivariantSetup, degrees: Mapping[int, Sequence], diffs: Mapping[int, GradedMap]):
        return cls(setup, {j: FPModule.free(setup, d) for j, d in degrees.items()}, diffs)

    @classmethod
    def from_rows(cls, setup: EquivariantSetup, degrees: Mapping[int, Sequence],
                  rows: Mapping[int, Sequence[Sequence[Poly]]]) -> "ChainComplex":
        terms = {j: FPModule.free(setup, d) for j, d in degrees.items()}
        diffs = {j: GradedMap.from_rows(terms[j].generators, terms[j + 1].generators, r, setup.nvars)
                 for j, r in rows.items()}
        return cls(setup, terms, diffs)

    @property
    def degrees(self) -> list[int]:
        return list(self.terms)

    @property
    def bottom(self) -> int | None:
        return min(self.terms) if self.terms else None

    @property
    def top(self) -> int | None:
        return max(self.terms) if self.terms else None

    def term(self, j: int) -> FPModule:
        t = self.terms.get(j)
        if t is None:
            return FPModule.free(self.setup, ())
        return t

    def diff(self, j: int) -> GradedMap:
        d = self.diffs.get(j)
        if d is None:
            return GradedMap.zero(self.term(j).generators, self.term(j + 1).generators, self.setup.nvars)
        return d

    def is_free(self) -> bool:
        return all(t.is_free() for t in self.terms.values())

    def ranks(self) -> dict[int, int]:
        return {j: t.rank for j, t in self.terms.items()}

    def is_zero(self) -> bool:
        return all(t.rank == 0 for t in self.terms.values())

    def without_zero_ends(self) -> "ChainComplex":
        keep = [j for j, t in self.terms.items() if t.rank]
        if not keep:
            return ChainComplex(self.setup, {}, {})
        lo, hi = min(keep), max(keep)
        return ChainComplex(self.setup, {j: t for j, t in self.terms.items() if lo <= j <= hi},
                            {j: d for j, d in self.diffs.items() if lo <= j < hi})


@dataclass(frozen=True)
class ChainMap:
    """Degreewise matrices ``maps[j] : source^j -> target^j`` on generators."""

    source: ChainComplex
    target: ChainComplex
    maps: Mapping[int, GradedMap]

    def component(self, j: int) -> GradedMap:
        m = self.maps.get(j)
        if m is None:
            return GradedMap.zero(self.source.term(j).generators, self.target.term(j).generators,
                                  self.source.setup.nvars)
        return m

    @classmethod
    def identity(cls, C: ChainComplex) -> "ChainMap":
        return cls(C, C, {j: GradedMap.identity(t.generators, C.setup.nvars) for j, t in C.terms.items()})


def rational_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by Gaussian elimination."""
    M = [[QQ(x) for x in r] for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    rank = 0
    for c in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][c]
        for r in range(len(M)):
            if r != rank and M[r][c]:
                f = M[r][c] / p
                M[r] = [a - f * b for a, b in zip(M[r], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank
