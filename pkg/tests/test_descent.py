import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from descheck.descent import (PreconditionError, Verdict, check_sheaf_descent, descend_sheaf,
                              invariant_surjection)
from descheck.graded import FPModule
from descheck.gmod import fiber_at_point, tor1_at_point
from descheck.groebner import GroebnerBasis, ideal_basis
from descheck.invariants import canonical_map_verdict, pullback, quotient_of
from descheck.polyring import QQ, Poly
from descheck.sampling import ModuleSampler, random_module
from setups import P, W1, W2, W3, W4

SETUPS = {"W1": W1, "W2": W2, "W3": W3}
MIXED = ModuleSampler(max_rank=3, max_entry_degree=2, degree_range=1, zero_degree_bias=0.5)


def test_sheaf_examples():
    v = check_sheaf_descent(FPModule.free(W2, [-1]))
    assert not v.descends
    assert [(w.stratum.support, w.character.values, w.source) for w in v.witnesses] == [((), (-1,), "fiber")]
    assert check_sheaf_descent(FPModule.free(W1, [0, 0])).descends
    assert check_sheaf_descent(FPModule.free(W4, [0])).descends
    v = check_sheaf_descent(FPModule.free(W3, [1, 1]))
    assert not v.descends
    assert {(w.stratum.support, w.character.values) for w in v.witnesses} == {((), (1,))}


def test_verdict_consistency_enforced():
    with pytest.raises(ValueError):
        Verdict(False)


def test_invariant_surjection_examples():
    V, f = invariant_surjection(FPModule.free(W1, [0]))
    assert V.is_trivial() and f.rows() == [[Poly.constant(2, 1)]]
    Sxy = FPModule.from_columns(W1, [0], [(P("x*y", W1),)])
    V, f = invariant_surjection(Sxy)
    assert V.rank == 1 and f.rows() == [[Poly.constant(2, 1)]]
    with pytest.raises(PreconditionError) as e:
        invariant_surjection(FPModule.free(W2, [-1]))
    assert e.value.witnesses and e.value.witnesses[0].stratum.support == ()


def test_descend_sheaf_examples():
    d = descend_sheaf(FPModule.free(W1, [0]))
    assert d.rank == 1 and not d.module.relations.cols and d.verified
    d = descend_sheaf(FPModule.from_columns(W1, [0], [(P("x*y", W1),)]))
    assert d.module.relations.cols == ((Poly.var(1, 0),),)
    d = descend_sheaf(FPModule.free(W4, [0]))
    Q = quotient_of(W4)
    assert d.rank == 1 and not d.module.relations.cols
    u = {e: Poly.var(4, k) for k, e in enumerate(Q.monomials)}
    det = u[(1, 0, 1, 0)] * u[(0, 1, 0, 1)] - u[(1, 0, 0, 1)] * u[(0, 1, 1, 0)]
    trace = u[(1, 0, 1, 0)] + u[(0, 1, 0, 1)]
    mine, theirs = ideal_basis(Q.relations, 4), ideal_basis([det, trace], 4)
    assert all(theirs.contains((r,)) for r in Q.relations) and mine.contains((det,)) and mine.contains((trace,))
    with pytest.raises(PreconditionError):
        descend_sheaf(FPModule.free(W2, [-1]))


@settings(max_examples=60)
@given(st.integers(0, 100_000), st.sampled_from(sorted(SETUPS)))
def test_checker_agrees_with_canonical_map(seed, which):
    M = random_module(SETUPS[which], seed, MIXED)
    assert check_sheaf_descent(M).descends == canonical_map_verdict(M).is_iso


def _module_iso(A: FPModule, B: FPModule, images) -> bool:
    """Is the map A -> B sending generator k to images[k] an isomorphism?"""
    S = A.setup
    span = GroebnerBasis(list(B.relations.cols) + list(images), B.rank, S.nvars, S.ambient_ideal)
    if B.rank and not span.is_everything():
        return False
    from descheck.groebner import syzygies
    cols = list(images) + list(B.relations.cols)
    rel = GroebnerBasis(A.relations.cols, A.rank, S.nvars, S.ambient_ideal)
    return all(rel.contains(s[:len(images)]) for s in syzygies(cols, B.rank, S.nvars, S.ambient_ideal))


@settings(max_examples=25)
@given(st.integers(0, 100_000), st.sampled_from(sorted(SETUPS)))
def test_round_trip(seed, which):
    M = random_module(SETUPS[which], seed, MIXED)
    if not check_sheaf_descent(M).descends:
        return
    d = descend_sheaf(M)
    back = pullback(d)
    assert _module_iso(back, M, d.generators)


def _rational_points_on(w, rng, tries=200):
    ring = w.stratum.ring
    k = len(w.stratum.support)
    for _ in range(tries):
        vals = [QQ(rng.choice([-3, -2, -1, 1, 2, 3])) for _ in range(k)]
        x = [QQ(0)] * w.stratum.setup.nvars
        for i, v in zip(w.stratum.support, vals):
            x[i] = v
        coords = ring.point_coordinates(x)
        if all(not f.evaluate(coords) for f in w.ideal) and all(not f.evaluate(x) for f in w.stratum.setup.ambient_ideal):
            yield x


@settings(max_examples=25)
@given(st.integers(0, 100_000), st.sampled_from(sorted(SETUPS)))
def test_witness_validity(seed, which):
    M = random_module(SETUPS[which], seed, MIXED)
    rng = random.Random(seed)
    for w in check_sheaf_descent(M).witnesses:
        assert not w.character.is_zero()
        for x in itertools.islice(_rational_points_on(w, rng), 3):
            space = fiber_at_point(M, x) if w.source == "fiber" else tor1_at_point(M, x)
            assert space[w.character] > 0


@settings(max_examples=25)
@given(st.integers(0, 100_000), st.integers(0, 100_000), st.sampled_from(sorted(SETUPS)))
def test_direct_sum_monotonicity(s1, s2, which):
    sampler = ModuleSampler(max_rank=2, max_entry_degree=2, degree_range=1, zero_degree_bias=0.5)
    M, N = random_module(SETUPS[which], s1, sampler), random_module(SETUPS[which], s2, sampler)
    both = check_sheaf_descent(M.direct_sum(N)).descends
    assert both == (check_sheaf_descent(M).descends and check_sheaf_descent(N).descends)
