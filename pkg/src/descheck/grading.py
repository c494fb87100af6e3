"""Character lattices of diagonalizable groups and the weight bookkeeping on them.

A diagonalizable group G is handled entirely through its character group
A = Z^r + Z/d_1 + ... + Z/d_t.  Quotients of A (characters of stabilizers) are
computed with an integer Smith normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .polyring import Poly


# --------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(rows: Sequence[Sequence[int]], ncols: int | None = None):
    """Return ``(U, D, V)`` with ``U @ A @ V == D`` for the integer matrix A.

    U and V are unimodular, D is diagonal with non-negative entries and each
    nonzero diagonal entry divides the next one.
    """
    A = [list(map(int, r)) for r in rows]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        for r in A:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility of the remaining block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % A[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, A, V


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


# --------------------------------------------------------------------------
# groups and elements


@dataclass(frozen=True)
class GradingGroup:
    """The abelian group Z^free_rank + sum of Z/d for d in torsion."""

    free_rank: int = 1
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0 or any(d < 2 for d in self.torsion):
            raise ValueError("free rank must be >= 0 and torsion orders >= 2")

    @property
    def width(self) -> int:
        return self.free_rank + len(self.torsion)

    def is_trivial(self) -> bool:
        return self.width == 0

    def is_canonical(self) -> bool:
        return all(b % a == 0 for a, b in zip(self.torsion, self.torsion[1:]))

    def order(self) -> int | None:
        """Group order, or ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def element(self, values: Iterable[int] | int) -> "GroupElement":
        if isinstance(values, int):
            values = (values,)
        values = tuple(int(v) for v in values)
        if len(values) != self.width:
            raise ValueError(f"expected {self.width} components, got {len(values)}")
        r = self.free_rank
        reduced = values[:r] + tuple(v % d for v, d in zip(values[r:], self.torsion))
        return GroupElement(self, reduced)

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.width)

    def elements(self) -> list["GroupElement"]:
        """All elements of a finite group."""
        if self.free_rank:
            raise ValueError("infinite group")
        out = [()]
        for d in self.torsion:
            out = [e + (k,) for e in out for k in range(d)]
        return [GroupElement(self, e) for e in out]

    def canonical(self) -> tuple["GradingGroup", "QuotientGroup"]:
        """Canonical form (d_i | d_{i+1}) with the isomorphism onto it."""
        q = quotient_by_subgroup(self, [])
        return q.target, q

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class GroupElement:
    group: GradingGroup
    values: tuple[int, ...]

    @property
    def free_part(self) -> tuple[int, ...]:
        return self.values[: self.group.free_rank]

    @property
    def torsion_part(self) -> tuple[int, ...]:
        return self.values[self.group.free_rank:]

    def _check(self, other: "GroupElement"):
        if other.group != self.group:
            raise ValueError("elements of different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return self.group.element(a + b for a, b in zip(self.values, other.values))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check(other)
        return self.group.element(a - b for a, b in zip(self.values, other.values))

    def __neg__(self) -> "GroupElement":
        return self.group.element(-a for a in self.values)

    def scale(self, k: int) -> "GroupElement":
        return self.group.element(k * a for a in self.values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def __lt__(self, other: "GroupElement") -> bool:
        return self.values < other.values

    def __str__(self) -> str:
        if len(self.values) == 1:
            return str(self.values[0])
        if not self.values:
            return "0"
        return "(" + ",".join(map(str, self.values)) + ")"

    def to_json(self):
        return list(self.values)


@dataclass(frozen=True)
class QuotientGroup:
    """A quotient ``source -> target`` of a grading group.

    ``matrix`` (width x m) sends a source vector x to ``x @ matrix``; from the
    resulting m coordinates we keep ``free_cols`` as free components and
    ``torsion_cols`` reduced modulo the target torsion orders.
    """

    source: GradingGroup
    target: GradingGroup
    matrix: tuple[tuple[int, ...], ...]
    free_cols: tuple[int, ...]
    torsion_cols: tuple[int, ...]
    kernel_gens: tuple[GroupElement, ...] = field(default=())

    def project(self, g: GroupElement) -> GroupElement:
        if g.group != self.source:
            raise ValueError("element from a different group")
        y = [sum(x * self.matrix[i][j] for i, x in enumerate(g.values))
             for j in range(len(self.matrix[0]) if self.matrix else 0)]
        vals = [y[c] for c in self.free_cols] + [y[c] for c in self.torsion_cols]
        return self.target.element(vals)

    def __call__(self, g: GroupElement) -> GroupElement:
        return self.project(g)

    def is_trivial(self) -> bool:
        return self.target.is_trivial()


def quotient_by_subgroup(A: GradingGroup, gens: Iterable[GroupElement]) -> QuotientGroup:
    """The quotient of A by the subgroup generated by ``gens``, in canonical form."""
    gens = tuple(gens)
    w = A.width
    rel = [[d if j == A.free_rank + k else 0 for j in range(w)] for k, d in enumerate(A.torsion)]
    for g in gens:
        if g.group != A:
            raise ValueError("generator from a different group")
        rel.append(list(g.values))
    if w == 0:
        return QuotientGroup(A, GradingGroup(0, ()), (), (), (), gens)
    _, D, V = smith_normal_form(rel, w)
    diag = [D[i][i] if i < len(D) else 0 for i in range(w)]
    free_cols = tuple(i for i, d in enumerate(diag) if d == 0)
    torsion_cols = tuple(i for i, d in enumerate(diag) if d >= 2)
    target = GradingGroup(len(free_cols), tuple(diag[i] for i in torsion_cols))
    return QuotientGroup(A, target, tuple(tuple(r) for r in V), free_cols, torsion_cols, gens)


# --------------------------------------------------------------------------
# equivariant setups


@dataclass(frozen=True)
class EquivariantSetup:
    """Variables with weights in A and an ideal J cutting out X = V(J)."""

    group: GradingGroup
    names: tuple[str, ...]
    weights: tuple[GroupElement, ...]
    ambient_ideal: tuple[Poly, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "ambient_ideal", tuple(self.ambient_ideal))
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be distinct")
        if len(self.weights) != len(self.names):
            raise ValueError("one weight per variable is required")
        for w in self.weights:
            if w.group != self.group:
                raise ValueError("weight outside the grading group")
        for f in self.ambient_ideal:
            if f.nvars != self.nvars:
                raise ValueError("ambient ideal generator in the wrong ring")
            if homogeneity_check(f, self) is None:
                raise ValueError(f"ambient ideal generator {f} is not homogeneous")

    @classmethod
    def build(cls, free_rank: int, torsion: Sequence[int], names: Sequence[str],
              weights: Sequence[Sequence[int] | int], ideal: Sequence[Poly] = ()) -> "EquivariantSetup":
        """Build a setup, bringing the grading group into canonical form."""
        A = GradingGroup(free_rank, tuple(torsion))
        ws = [A.element(w) for w in weights]
        if not A.is_canonical():
            target, iso = A.canonical()
            ws = [iso.project(w) for w in ws]
            A = target
        return cls(A, tuple(names), tuple(ws), tuple(ideal))

    @property
    def nvars(self) -> int:
        return len(self.names)

    def is_smooth_ambient(self) -> bool:
        return not any(self.ambient_ideal)

    def var(self, name: str) -> Poly:
        return Poly.var(self.nvars, self.names.index(name))

    def with_ideal(self, ideal: Sequence[Poly]) -> "EquivariantSetup":
        return EquivariantSetup(self.group, self.names, self.weights, tuple(ideal))


def degree_of_term(m: Sequence[int], setup: EquivariantSetup) -> GroupElement:
    if len(m) != setup.nvars:
        raise ValueError("monomial length does not match the variable count")
    A = setup.group
    acc = [0] * A.width
    for e, w in zip(m, setup.weights):
        if e:
            for k, v in enumerate(w.values):
                acc[k] += e * v
    return A.element(acc)


class _Every:
    """Degree marker for the zero polynomial (homogeneous of every degree)."""

    def __repr__(self):
        return "EVERY_DEGREE"


EVERY_DEGREE = _Every()


def homogeneity_check(f: Poly, setup: EquivariantSetup):
    """The common degree of all terms of f, ``None`` if there is none.

    The zero polynomial returns :data:`EVERY_DEGREE`.
    """
    if f.nvars != setup.nvars:
        raise ValueError("polynomial in the wrong ring")
    if not f.terms:
        return EVERY_DEGREE
    degs = {degree_of_term(m, setup) for m in f.terms}
    if len(degs) == 1:
        return degs.pop()
    return None
