"""Independent reference computations: exact linear algebra and brute-force enumeration.

Nothing here calls the Groebner engine.
"""
from __future__ import annotations

import itertools
from fractions import Fraction


def rank(rows) -> int:
    """Rank of a matrix of rationals, by Fraction Gaussian elimination."""
    M = [[Fraction(int(c.numerator), int(c.denominator)) if hasattr(c, "denominator") else Fraction(c)
          for c in r] for r in rows]
    if not M:
        return 0
    r = 0
    ncols = len(M[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                k = M[i][c] / M[r][c]
                M[i] = [a - k * b for a, b in zip(M[i], M[r])]
        r += 1
        if r == len(M):
            break
    return r


def nullspace(rows, ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows . v = 0}."""
    M = [[Fraction(int(c.numerator), int(c.denominator)) if hasattr(c, "denominator") else Fraction(c)
          for c in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [a * inv for a in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                k = M[i][c]
                M[i] = [a - k * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -M[i][f]
        basis.append(v)
    return basis


def monomials_of_degree(nvars: int, d: int):
    for e in itertools.product(range(d + 1), repeat=nvars):
        if sum(e) == d:
            yield e


def monomials_up_to(nvars: int, d: int):
    for k in range(d + 1):
        yield from monomials_of_degree(nvars, k)


def _mul_mono(f_terms: dict, m: tuple) -> dict:
    return {tuple(a + b for a, b in zip(e, m)): c for e, c in f_terms.items()}


def homogeneous_ideal_contains(gens, f, nvars: int) -> bool:
    """Is the standard-homogeneous f in the ideal of standard-homogeneous gens?

    Decided in the single graded piece of degree deg f by exact linear algebra.
    """
    if not f.terms:
        return True
    d = f.total_degree()
    spanning = []
    for g in gens:
        if not g.terms:
            continue
        k = d - g.total_degree()
        if k < 0:
            continue
        for m in monomials_of_degree(nvars, k):
            spanning.append(_mul_mono(g.terms, m))
    basis = list(monomials_of_degree(nvars, d))
    idx = {m: i for i, m in enumerate(basis)}
    rows = [[0] * len(basis) for _ in spanning]
    for r, t in enumerate(spanning):
        for m, c in t.items():
            rows[r][idx[m]] = c
    target = [0] * len(basis)
    for m, c in f.terms.items():
        target[idx[m]] = c
    return rank(rows + [target]) == rank(rows)


def degree_zero_monomials(weights, group_orders, max_total: int):
    """Exponent vectors of total degree <= max_total whose weighted sum is zero.

    ``weights`` are integer tuples; ``group_orders`` gives None for free
    coordinates and the modulus for torsion coordinates.
    """
    n = len(weights)
    out = []
    for e in monomials_up_to(n, max_total):
        ok = True
        for k, mod in enumerate(group_orders):
            s = sum(a * w[k] for a, w in zip(e, weights))
            if (mod is None and s != 0) or (mod is not None and s % mod != 0):
                ok = False
                break
        if ok and any(e):
            out.append(e)
    return out


def brute_hilbert_basis(weights, group_orders, max_total: int) -> set:
    """Irreducible nonzero degree-0 exponents up to ``max_total``."""
    cands = degree_zero_monomials(weights, group_orders, max_total)
    cset = set(cands)
    irreducible = set()
    for e in sorted(cands, key=sum):
        reducible = False
        for f in irreducible:
            rest = tuple(a - b for a, b in zip(e, f))
            if min(rest) >= 0 and any(rest) and rest in cset:
                reducible = True
                break
        if not reducible:
            irreducible.add(e)
    return irreducible


def in_monoid(e: tuple, gens) -> bool:
    if not any(e):
        return True
    for g in gens:
        rest = tuple(a - b for a, b in zip(e, g))
        if min(rest) >= 0 and in_monoid(rest, gens):
            return True
    return False
