import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from descheck.complexes import (InvalidComplex, check_complex_descent, complex_ops, cone, derived_fiber,
                                descend_complex, descendable_replacement, entries_invariant,
                                free_replacement_stage, is_acyclic, pullback_complex, pushforward_complex,
                                quasi_iso_check, sigma_truncate, verify_complex)
from descheck.descent import PreconditionError, descend_sheaf
from descheck.graded import ChainComplex, ChainMap, FPModule, GradedFreeModule, GradedMap
from descheck.gmod import fiber_at_point, tor1_at_point
from descheck.groebner import free_resolution, image_contains
from descheck.invariants import canonical_map_verdict
from descheck.polyring import QQ, Poly
from descheck.problem import corpus_files, load_problem
from descheck.sampling import random_descending_complex, random_failing_complex, random_module
from setups import P, W1, W2, W3, W4

ONE1 = Poly.constant(2, 1)


def cotangent():
    rows = {-1: [[P("y1", W4)], [P("y2", W4)], [P("x1", W4)], [P("x2", W4)]],
            0: [[P("x1", W4), P("x2", W4), P("-y1", W4), P("-y2", W4)]]}
    return ChainComplex.from_rows(W4, {-1: [0], 0: [1, 1, -1, -1], 1: [0]}, rows)


def single(setup, degs, j=0):
    return ChainComplex.from_rows(setup, {j: degs}, {})


def two_term(setup, src, tgt, rows):
    return ChainComplex.from_rows(setup, {-1: src, 0: tgt}, {-1: rows})


# -- operations


def test_shift_of_zero_complex():
    Z = ChainComplex(W1, {}, {})
    assert complex_ops(Z, "shift").is_zero()


def test_cone_of_identity_is_acyclic():
    S = single(W1, [0])
    K = complex_ops(S, "cone", ChainMap.identity(S))
    assert K.ranks() == {-1: 1, 0: 1} and is_acyclic(K)


def test_sigma_truncation():
    E = ChainComplex.from_rows(W1, {-2: [0], -1: [1, -1], 0: [0]},
                               {-2: [[P("-y", W1)], [P("x", W1)]], -1: [[P("x", W1), P("y", W1)]]})
    T = complex_ops(E, "sigma_truncate", -1)
    assert sorted(T.terms) == [-2, -1] and list(T.diffs) == [-2]
    assert sigma_truncate(E, -1, upper=False).ranks() == {-1: 2, 0: 1}


def test_tau_truncation_keeps_lower_cohomology():
    E = two_term(W1, [0], [0], [[P("x*y", W1)]])
    T = complex_ops(E, "tau_truncate", -1)
    assert is_acyclic(T, [0])


def test_bad_chain_map_rejected():
    S = single(W1, [0], j=-1)
    T = two_term(W1, [0], [0], [[ONE1]])
    q = ChainMap(S, T, {-1: GradedMap.identity(S.term(-1).generators, 2)})
    with pytest.raises(ValueError):
        complex_ops(T, "cone", q)


def test_d_squared_enforced():
    with pytest.raises(InvalidComplex):
        verify_complex(ChainComplex.from_rows(W1, {-2: [0], -1: [0], 0: [0]},
                                              {-2: [[ONE1]], -1: [[ONE1]]}))


# -- derived fibers


def test_derived_fiber_examples():
    H = derived_fiber(cotangent(), [0, 0, 0, 0])
    assert {j: h.as_plain() for j, h in H.items()} == {-1: {0: 1}, 0: {1: 2, -1: 2}, 1: {0: 1}}
    H = derived_fiber(single(W1, [2, -1]), [1, 1])
    assert H[0].as_plain() == {0: 2}
    S = single(W1, [0])
    K = cone(ChainMap.identity(S))
    assert all(h.is_zero() for h in derived_fiber(K, [0, 0]).values())


def test_derived_fiber_off_variety():
    with pytest.raises(ValueError):
        derived_fiber(cotangent(), [1, 0, 1, 0])


@settings(max_examples=20)
@given(st.integers(0, 10_000), st.sampled_from(["W1", "W2", "W3"]))
def test_derived_fiber_of_resolution_matches_module(seed, which):
    setup = {"W1": W1, "W2": W2, "W3": W3}[which]
    M = random_module(setup, seed)
    C = free_resolution(M, 2)
    rng = random.Random(seed)
    x = [QQ(rng.choice([0, 0, 1, -2])) for _ in range(setup.nvars)]
    H = derived_fiber(C, x)
    assert H[0] == fiber_at_point(M, x)
    assert H.get(-1, fiber_at_point(FPModule.free(setup, ()), x)) == tor1_at_point(M, x)


# -- the check


def test_check_examples():
    v = check_complex_descent(cotangent())
    assert not v.descends
    assert {(w.stratum.support, w.character.values, w.degree) for w in v.witnesses} == {((), (1,), 0), ((), (-1,), 0)}
    E = two_term(W1, [0, 0], [0], [[P("x*y", W1), P("2", W1)]])
    assert check_complex_descent(E).descends
    E = two_term(W1, [-1], [0], [[P("y", W1)]])
    v = check_complex_descent(E)
    assert not v.descends
    assert any(w.degree == -1 and w.character.values == (-1,) and w.stratum.support == () for w in v.witnesses)


def test_check_range_is_reported():
    v = check_complex_descent(cotangent(), j_min=1)
    assert v.descends and v.mode == "bound-limited" and v.checked_range == (1, 1)
    v = check_complex_descent(cotangent())
    assert v.checked_range[0] <= -1 and v.mode == "complete"


def test_check_needs_free_terms():
    T = ChainComplex(W1, {0: FPModule.from_columns(W1, [0], [(P("x", W1),)])}, {})
    with pytest.raises(InvalidComplex):
        check_complex_descent(T)


# -- replacement


def test_replacement_stage_examples():
    E = two_term(W1, [0], [0], [[Poly.zero(2)]])
    V = E.term(0).generators
    Ep, q = free_replacement_stage(E, 0, V, GradedMap.identity(V, 2))
    assert Ep.ranks() == E.ranks() and quasi_iso_check(q)
    M = single(W1, [0])
    V = GradedFreeModule((W1.group.zero(),) * 2)
    f = GradedMap.from_rows(V, M.term(0).generators, [[ONE1, P("x*y", W1)]], 2)
    Ep, q = free_replacement_stage(M, 0, V, f)
    assert Ep.ranks() == {-1: 1, 0: 2} and quasi_iso_check(q)


def test_replacement_stage_rejects_bad_cover():
    M = single(W1, [0])
    V = GradedFreeModule((W1.group.zero(),))
    f = GradedMap.from_rows(V, M.term(0).generators, [[P("x*y", W1)]], 2)
    with pytest.raises(PreconditionError):
        free_replacement_stage(M, 0, V, f)


def test_descendable_replacement_examples():
    E = two_term(W1, [0, 0], [0], [[P("x*y", W1), P("2", W1)]])
    Ep, q = descendable_replacement(E)
    assert entries_invariant(Ep) and quasi_iso_check(q)
    E = two_term(W1, [1], [1], [[P("x*y", W1)]])
    with pytest.raises(PreconditionError) as e:
        descendable_replacement(E)
    assert any(w.stratum.support == () and w.character.values == (1,) for w in e.value.witnesses)
    E = two_term(W1, [-1, 1], [0], [[P("y", W1), P("x", W1)]])
    assert not check_complex_descent(E).descends


def test_quasi_iso_examples():
    S = single(W1, [0])
    assert quasi_iso_check(ChainMap.identity(S))
    K = cone(ChainMap.identity(S))
    assert quasi_iso_check(ChainMap(ChainComplex(W1, {}, {}), K, {}))
    M = single(W2, [-1])
    src = single(W2, [0])
    incl = ChainMap(src, M, {0: GradedMap.from_rows(src.term(0).generators, M.term(0).generators,
                                                     [[P("z", W2)]], 1)})
    assert not quasi_iso_check(incl)


def test_descend_complex_examples():
    E = two_term(W1, [0], [0], [[P("x*y", W1)]])
    D = descend_complex(E)
    assert D.complex.ranks() == {-1: 1, 0: 1}
    sheaf = descend_sheaf(FPModule.from_columns(W1, [0], [(P("x*y", W1),)]))
    mine, theirs = list(D.complex.diff(-1).cols), list(sheaf.module.relations.cols)
    assert all(image_contains(theirs, c, 1, 1) for c in mine) and all(image_contains(mine, c, 1, 1) for c in theirs)
    assert descend_complex(ChainComplex(W1, {}, {})).complex.is_zero()


def test_pushforward_complex_examples():
    P0 = pushforward_complex(single(W1, [0]))
    assert P0.ranks() == {0: 1}
    assert pushforward_complex(single(W2, [1])).ranks() == {0: 0}
    v = canonical_map_verdict(FPModule.free(W2, [-1]))
    assert is_acyclic(pushforward_complex(v.cone))


def _corpus_modules():
    for path in corpus_files():
        prob = load_problem(str(path))
        for name, M in prob.modules.items():
            yield pytest.param(M, id=f"{path.stem}:{name}")


@pytest.mark.parametrize("M", list(_corpus_modules()))
def test_pushforward_of_canonical_cone_is_acyclic(M):
    assert is_acyclic(pushforward_complex(canonical_map_verdict(M).cone))


# -- properties


@settings(max_examples=20)
@given(st.integers(0, 10_000), st.sampled_from(["W1", "W2"]), st.booleans())
def test_check_agrees_with_construction(seed, which, good):
    setup = {"W1": W1, "W2": W2}[which]
    E = (random_descending_complex if good else random_failing_complex)(setup, seed)
    verdict = check_complex_descent(E).descends
    try:
        D = descend_complex(E) if verdict else None
        Ep, q = (D.replacement, D.q) if D else descendable_replacement(E, check=False)
        built = entries_invariant(Ep) and quasi_iso_check(q)
    except (ArithmeticError, PreconditionError):
        built = False
    assert verdict == built
    if verdict:
        back = pullback_complex(D.complex, setup)
        assert back.ranks() == D.replacement.ranks()
        assert quasi_iso_check(ChainMap(back, E, dict(D.q.maps)))


@settings(max_examples=15)
@given(st.integers(0, 10_000), st.sampled_from(["W1", "W3"]))
def test_replacement_stage_preserves_cohomology(seed, which):
    setup = {"W1": W1, "W3": W3}[which]
    E = free_resolution(random_module(setup, seed), 2)
    live = [j for j in E.terms if E.term(j).rank]
    if not live:
        return
    n = max(live)
    n = n - 1 if E.term(n - 1).rank else n
    En = E.term(n).generators
    # E^n plus a redundant trivial summand mapped to zero
    V = GradedFreeModule(En.degrees + (setup.group.zero(),))
    cols = GradedMap.identity(En, setup.nvars).cols + (tuple(Poly.zero(setup.nvars) for _ in range(En.rank)),)
    Ep, q = free_replacement_stage(E, n, V, GradedMap(V, En, cols, setup.nvars))
    assert quasi_iso_check(q)
    for j in E.terms:
        if j > n:
            assert Ep.term(j) == E.term(j)
        if j > n and j in E.diffs:
            assert Ep.diff(j) == E.diff(j)
