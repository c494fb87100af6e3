import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from descheck.grading import EquivariantSetup, GradingGroup
from descheck.orbits import (PointOffVariety, TooManyVariables, all_strata, classify_point, closed_strata,
                             cone_is_subspace, is_closed_support, stabilizer_characters)
from descheck.polyring import QQ
from setups import W1, W2, W3, W4

Z = GradingGroup(1, ())


def test_closedness_examples():
    assert is_closed_support((0, 1), W1)
    assert not is_closed_support((0,), W1)
    assert is_closed_support((), W1)


def test_stabilizer_examples():
    W = EquivariantSetup.build(1, (), ("x", "y"), [2, -2])
    assert stabilizer_characters((0, 1), W).target == GradingGroup(0, (2,))
    assert stabilizer_characters((0, 1), W1).is_trivial()
    assert stabilizer_characters((), W4).target == Z


def test_closed_strata_w2():
    strata = closed_strata(W2)
    assert [s.support for s in strata] == [()]
    assert strata[0].stabilizer.target == Z


def test_closed_strata_w4():
    strata = {s.support: s for s in closed_strata(W4)}
    assert () in strata and strata[()].stabilizer.target == Z
    assert (0, 3) in strata and strata[(0, 3)].has_trivial_stabilizer
    assert (0, 2) not in strata  # x1*y1 = 0 forces a coordinate to vanish
    every = {s.support: s for s in all_strata(W4)}
    assert every[(0, 2)].closed and not every[(0, 2)].nonempty_on_X


def test_closed_strata_w3():
    strata = closed_strata(W3)
    assert len(strata) == 4
    for s in strata:
        assert (s.stabilizer.target == GradingGroup(0, (2,))) == (s.support == ())


def test_classify_point_examples():
    s, closed, stab = classify_point([0, 0, 0, 0], W4)
    assert s == () and closed and stab.target == Z
    s, closed, stab = classify_point([1, 0, 0, -1], W4)
    assert s == (0, 3) and closed and stab.is_trivial()
    s, closed, _ = classify_point([1, 0], W1)
    assert s == (0,) and not closed
    with pytest.raises(PointOffVariety):
        classify_point([1, 0, 1, 0], W4)


def test_enumeration_guard():
    names = tuple(f"v{i}" for i in range(17))
    big = EquivariantSetup.build(1, (), names, [1] * 17)
    with pytest.raises(TooManyVariables):
        closed_strata(big)


def _limit_witness(vectors, bound=3):
    """Search an integer functional with all pairings >= 0 and one > 0."""
    r = len(vectors[0]) if vectors else 0
    for lam in itertools.product(range(-bound, bound + 1), repeat=r):
        vals = [sum(a * b for a, b in zip(lam, v)) for v in vectors]
        if all(v >= 0 for v in vals) and any(v > 0 for v in vals):
            return lam
    return None


weights2 = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=5)


@settings(max_examples=60)
@given(weights2)
def test_cone_test_against_functional_search(vectors):
    closed = cone_is_subspace(vectors)
    if closed:
        assert _limit_witness(vectors) is None
    else:
        # exact Fourier-Motzkin says a witness exists; small weights keep it in the box
        assert _limit_witness(vectors, bound=9) is not None


@settings(max_examples=30)
@given(st.lists(st.integers(-3, 3), min_size=2, max_size=5), st.randoms(use_true_random=False))
def test_stabilizer_monotone_on_chains(ws, rng):
    setup = EquivariantSetup.build(1, (), tuple(f"v{i}" for i in range(len(ws))), ws)
    order = list(range(len(ws)))
    rng.shuffle(order)
    prev = stabilizer_characters((), setup)
    for k in range(1, len(order) + 1):
        s = tuple(sorted(order[:k]))
        cur = stabilizer_characters(s, setup)
        # cur is a quotient of prev: the projection factors through prev
        big, small = prev.target, cur.target
        if small.free_rank == 0 and big.free_rank == 0:
            assert big.order() % small.order() == 0
        assert small.free_rank <= big.free_rank
        for g in prev.kernel_gens:
            assert cur.project(g).is_zero()
        prev = cur


@settings(max_examples=20)
@given(st.lists(st.integers(-2, 2), min_size=2, max_size=4), st.randoms(use_true_random=False))
def test_strata_stable_under_permutation(ws, rng):
    n = len(ws)
    names = tuple(f"v{i}" for i in range(n))
    A = EquivariantSetup.build(1, (), names, ws)
    perm = list(range(n))
    rng.shuffle(perm)  # new variable k is old variable perm[k]
    B = EquivariantSetup.build(1, (), names, [ws[p] for p in perm])
    sa = {s.support: s for s in closed_strata(A)}
    sb = {tuple(sorted(perm[i] for i in s.support)): s for s in closed_strata(B)}
    assert set(sa) == set(sb)
    for k in sa:
        assert sa[k].stabilizer.target == sb[k].stabilizer.target


@settings(max_examples=20)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_closed_strata_satisfy_limit_criterion(ws, rng):
    setup = EquivariantSetup.build(1, (), tuple(f"v{i}" for i in range(len(ws))), ws)
    for s in closed_strata(setup):
        pt = [QQ(rng.randint(1, 5)) if i in s.support else QQ(0) for i in range(len(ws))]
        support, closed, _ = classify_point(pt, setup)
        assert support == s.support and closed
        assert _limit_witness([[ws[i]] for i in s.support], bound=3) is None
