import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from descheck.graded import ChainComplex, FPModule
from descheck.gmod import (cross_class_entries, fiber_at_point, presentation_complex, restrict_to_stratum,
                           tor1_at_point, weight_component)
from descheck.groebner import free_resolution
from descheck.orbits import closed_strata
from descheck.polyring import QQ
from descheck.sampling import random_module
from oracles import rank
from setups import P, W1, W2, W3, W4

COTANGENT = {-1: [[P("y1", W4)], [P("y2", W4)], [P("x1", W4)], [P("x2", W4)]],
             0: [[P("x1", W4), P("x2", W4), P("-y1", W4), P("-y2", W4)]]}


def cotangent():
    return ChainComplex.from_rows(W4, {-1: [0], 0: [1, 1, -1, -1], 1: [0]}, COTANGENT)


def koszul_w1():
    return ChainComplex.from_rows(W1, {-2: [0], -1: [1, -1], 0: [0]},
                                  {-2: [[P("-y", W1)], [P("x", W1)]], -1: [[P("x", W1), P("y", W1)]]})


def stratum(setup, support):
    return next(s for s in closed_strata(setup) if s.support == support)


def test_fiber_examples():
    M = FPModule.free(W2, [-1])
    assert fiber_at_point(M, [0]).as_plain() == {-1: 1}
    assert fiber_at_point(M, [3]).as_plain() == {0: 1}
    Sx = FPModule.from_columns(W1, [0], [(P("x", W1),)])
    assert fiber_at_point(Sx, [0, 1]).as_plain() == {0: 1}


def test_tor1_examples():
    assert tor1_at_point(FPModule.free(W1, [2, -1]), [0, 0]).is_zero()
    Sx = FPModule.from_columns(W1, [0], [(P("x", W1),)])
    assert tor1_at_point(Sx, [0, 1]).as_plain() == {0: 1}
    k0 = FPModule.from_columns(W1, [0], [(P("x", W1),), (P("y", W1),)])
    assert tor1_at_point(k0, [0, 0]).as_plain() == {1: 1, -1: 1}


def test_point_off_variety():
    with pytest.raises(ValueError):
        fiber_at_point(FPModule.free(W4, [0]), [1, 0, 1, 0])


def test_restriction_examples():
    R = restrict_to_stratum(koszul_w1(), stratum(W1, ()))
    assert all(R.is_zero_map(j) for j in (-2, -1))
    assert sorted(r.values[0] for r in R.labels[-1]) == [-1, 1]
    R = restrict_to_stratum(koszul_w1(), stratum(W1, (0, 1)))
    assert all(r.is_zero() for labs in R.labels.values() for r in labs)
    R = restrict_to_stratum(cotangent(), stratum(W4, ()))
    assert [tuple(r.values[0] for r in R.labels[j]) for j in (-1, 0, 1)] == [(0,), (1, 1, -1, -1), (0,)]
    assert R.is_zero_map(-1) and R.is_zero_map(0)


def test_weight_component_examples():
    R = restrict_to_stratum(cotangent(), stratum(W4, ()))
    one = R.stratum.stabilizer.target.element(1)
    C1 = weight_component(R, one)
    assert {j: C1.rank(j) for j in (-1, 0, 1)} == {-1: 0, 0: 2, 1: 0}
    R0 = restrict_to_stratum(koszul_w1(), stratum(W1, (0, 1)))
    zero = R0.stratum.stabilizer.target.zero()
    assert weight_component(R0, zero).labels == R0.labels
    with pytest.raises(ValueError):
        weight_component(R0, W1.group.element(1))


def test_non_closed_support_rejected():
    with pytest.raises(ValueError):
        restrict_to_stratum(koszul_w1(), (0,))


def _random_point_on(stratum, rng):
    return [QQ(rng.choice([-3, -2, -1, 1, 2, 3])) if i in stratum.support else QQ(0)
            for i in range(stratum.setup.nvars)]


@settings(max_examples=20)
@given(st.integers(0, 10_000), st.sampled_from(["W1", "W2", "W3"]))
def test_block_vanishing_and_pointwise_agreement(seed, which):
    setup = {"W1": W1, "W2": W2, "W3": W3}[which]
    M = random_module(setup, seed)
    C = free_resolution(M, 2)
    rng = random.Random(seed)
    for st_ in closed_strata(setup):
        R = restrict_to_stratum(C, st_)
        assert cross_class_entries(R) == []
        x = _random_point_on(st_, rng)
        fib, tor = fiber_at_point(M, x), tor1_at_point(M, x)
        for r in R.classes():
            W = weight_component(R, r)
            ev = {j: W.evaluate(j, x) if W.rank(j) and W.rank(j + 1) else [] for j in (-2, -1, 0)}
            h0 = W.rank(0) - rank(ev[-1])
            h1 = W.rank(-1) - rank(ev[-1]) - rank(ev[-2])
            assert fib.dims.get(r, 0) == h0
            assert tor.dims.get(r, 0) == h1


@settings(max_examples=20)
@given(st.integers(0, 10_000))
def test_fiber_dimension_is_corank(seed):
    M = random_module(W1, seed)
    rng = random.Random(seed)
    x = [QQ(rng.randint(-2, 2)), QQ(rng.randint(-2, 2))]
    PC = presentation_complex(M)
    ev = PC.diffs[-1].evaluate(x) if PC.term(-1).rank else []
    assert fiber_at_point(M, x).total() == PC.term(0).rank - rank(ev)


@settings(max_examples=20)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.integers(-2, 2), st.integers(-2, 2))
def test_tor1_of_free_vanishes(degs, a, b):
    assert tor1_at_point(FPModule.free(W1, degs), [a, b]).is_zero()
