"""Seeded random graded modules and complexes for property tests and experiments."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .graded import ChainComplex, FPModule
from .grading import EquivariantSetup, GroupElement, degree_of_term
from .polyring import QQ, Poly


@dataclass(frozen=True)
class ModuleSampler:
    """Random finitely presented modules: rank, relation count and entry degree are capped."""

    max_rank: int = 3
    max_relations: int = 3
    max_entry_degree: int = 2
    degree_range: int = 2
    coeff_range: int = 3
    density: float = 0.7
    zero_degree_bias: float = 0.0  # chance that a generator sits in degree 0

    def _monomials(self, setup: EquivariantSetup) -> list[tuple[tuple[int, ...], GroupElement]]:
        out = []
        for e in itertools.product(range(self.max_entry_degree + 1), repeat=setup.nvars):
            if sum(e) <= self.max_entry_degree:
                out.append((e, degree_of_term(e, setup)))
        return out

    def _degree(self, setup: EquivariantSetup, rng: random.Random) -> GroupElement:
        A = setup.group
        if rng.random() < self.zero_degree_bias:
            return A.zero()
        vals = [rng.randint(-self.degree_range, self.degree_range) for _ in range(A.free_rank)]
        vals += [rng.randrange(d) for d in A.torsion]
        return A.element(vals)

    def _coeff(self, rng: random.Random):
        c = 0
        while c == 0:
            c = rng.randint(-self.coeff_range, self.coeff_range)
        return QQ(c)

    def module(self, setup: EquivariantSetup, rng: random.Random) -> FPModule:
        n = setup.nvars
        rank = rng.randint(1, self.max_rank)
        degs = [self._degree(setup, rng) for _ in range(rank)]
        monos = self._monomials(setup)
        targets = sorted({(d + md) for d in degs for _, md in monos}, key=lambda g: g.values)
        cols = []
        for _ in range(rng.randint(0, self.max_relations)):
            e = rng.choice(targets)
            col = []
            for d in degs:
                terms = {m: self._coeff(rng) for m, md in monos if d + md == e and rng.random() < self.density}
                col.append(Poly(n, terms))
            if any(col):
                cols.append(tuple(col))
        return FPModule.from_columns(setup, degs, cols)


def random_module(setup: EquivariantSetup, seed: int, sampler: ModuleSampler | None = None) -> FPModule:
    return (sampler or ModuleSampler()).module(setup, random.Random(seed))


# --------------------------------------------------------------------------
# complexes over a setup with a single free grading


def _invariant_poly(setup: EquivariantSetup, rng: random.Random, max_degree: int = 2) -> Poly:
    """A random degree-0 polynomial built from products of the given degree-0 monomials."""
    from .invariants import quotient_of
    Q = quotient_of(setup)
    f = Poly.constant(setup.nvars, rng.randint(-2, 2))
    if not Q.images:
        return f
    for _ in range(rng.randint(0, 2)):
        m = Poly.constant(setup.nvars, rng.randint(1, 3))
        for _ in range(rng.randint(1, max_degree)):
            m = m * rng.choice(Q.images)
        f = f + m
    return f


def _automorphism(degs: list[GroupElement], setup: EquivariantSetup, rng: random.Random,
                  monos) -> tuple[list[list[Poly]], list[list[Poly]]]:
    """A random product of elementary degree-preserving matrices and its inverse (rows = target)."""
    n = len(degs)
    nv = setup.nvars
    M = [[Poly.constant(nv, 1 if i == j else 0) for j in range(n)] for i in range(n)]
    Minv = [row[:] for row in M]
    for _ in range(n if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        # entry (i, j) must have degree deg_j - deg_i
        cands = [m for m, md in monos if md == degs[j] - degs[i]]
        if not cands:
            continue
        e = Poly.monomial(rng.choice(cands)) * Poly.constant(nv, rng.randint(-2, 2))
        for k in range(n):  # M <- (1 + e E_ij) M
            M[i][k] = M[i][k] + e * M[j][k]
        for k in range(n):  # Minv <- Minv (1 - e E_ij)
            Minv[k][j] = Minv[k][j] - Minv[k][i] * e
    return M, Minv


def _matmul(A, B, nv):
    if not A or not B or not B[0]:
        return [[Poly.zero(nv) for _ in range(len(B[0]) if B else 0)] for _ in A]
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Poly.zero(nv)) for j in range(len(B[0]))]
            for i in range(len(A))]


def random_descending_complex(setup: EquivariantSetup, seed: int) -> ChainComplex:
    """A free complex that passes the descent check by construction.

    A complex with degree-0 generators and invariant entries, plus contractible
    pairs S(d) -> S(d), then conjugated termwise by random automorphisms.
    """
    rng = random.Random(seed)
    nv = setup.nvars
    A = setup.group
    zero = A.zero()
    monos = ModuleSampler(max_entry_degree=2)._monomials(setup)
    f, g = _invariant_poly(setup, rng), _invariant_poly(setup, rng)
    shape = rng.choice(["two", "koszul"])
    if shape == "two":
        a, b = rng.randint(1, 2), rng.randint(1, 2)
        degs = {-1: [zero] * a, 0: [zero] * b}
        rows = {-1: [[_invariant_poly(setup, rng) for _ in range(a)] for _ in range(b)]}
    else:
        degs = {-2: [zero], -1: [zero, zero], 0: [zero]}
        rows = {-2: [[f], [g]], -1: [[g, -f]]}
    for _ in range(rng.randint(0, 2)):
        j = rng.choice(sorted(degs))
        if j + 1 not in degs:
            j -= 1
        d = A.element([rng.randint(-2, 2)] + [0] * (A.width - 1))
        a, b = len(degs[j]), len(degs[j + 1])
        degs[j].append(d)
        degs[j + 1].append(d)
        old = rows.get(j, [[Poly.zero(nv)] * a for _ in range(b)])
        new = [r + [Poly.zero(nv)] for r in old] + [[Poly.zero(nv)] * a + [Poly.constant(nv, 1)]]
        rows[j] = new
        if j + 1 in rows:  # d^{j+1} gains a zero column
            rows[j + 1] = [r + [Poly.zero(nv)] for r in rows[j + 1]]
        if j - 1 in rows:  # d^{j-1} gains a zero row
            rows[j - 1] = rows[j - 1] + [[Poly.zero(nv)] * len(degs[j - 1])]
    autos = {j: _automorphism(ds, setup, rng, monos) for j, ds in degs.items()}
    conj = {j: _matmul(_matmul(autos[j + 1][0], m, nv), autos[j][1], nv) for j, m in rows.items()}
    return ChainComplex.from_rows(setup, degs, conj)


def random_failing_complex(setup: EquivariantSetup, seed: int) -> ChainComplex:
    """A resolution of a random module; descent holds only sometimes."""
    from .groebner import free_resolution
    M = random_module(setup, seed, ModuleSampler(max_rank=2, max_relations=2))
    C = free_resolution(M, 2)
    return C.without_zero_ends()
