import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticexp import modp
from latticexp.decompose import (
    COMMUTATOR_GEMS,
    FULL_GEM_BOUND,
    BLOCK_REDUCTION_BOUND,
    commutator,
    commutator_search,
    diag_word,
    embed_upper_left,
    full_elementary_word,
    full_gem_decompose,
    gauss_elementary_decompose,
    gem_identities,
    gem_reduce_3block,
    group_commutator_mod,
    lift_commutators,
    random_congruence_element,
    steinberg_word,
    w_letters,
)
from latticexp.errors import BadGenerators, NonUnit, PreconditionViolated, SearchFailed, Singular, Unsupported
from latticexp.identities import signed_cycle
from latticexp.rings import CyclicGroupAlgebra, IntegersMod, Mat, MatrixRing


def _random_invertible(ring, d, rng):
    while True:
        g = Mat(ring, [[ring.random(rng) for _ in range(d)] for _ in range(d)])
        if g.det().is_unit():
            return g


@pytest.mark.parametrize("m", [4, 5, 6, 9, 12])
def test_gauss_reconstructs_and_is_short(m):
    ring = IntegersMod(m)
    rng = np.random.default_rng(m)
    for _ in range(60):
        g = _random_invertible(ring, 3, rng)
        res = gauss_elementary_decompose(g, rng)
        assert res.reconstruct() == g
        assert res.letter_count <= 11
        assert res.residual[0, 0] == g.det()


def test_gauss_group_algebra_and_rank_four():
    rng = np.random.default_rng(0)
    ring = CyclicGroupAlgebra(3, 2)
    g = _random_invertible(ring, 3, rng)
    assert gauss_elementary_decompose(g, rng).reconstruct() == g
    g4 = _random_invertible(IntegersMod(8), 4, rng)
    res = gauss_elementary_decompose(g4, rng)
    assert res.reconstruct() == g4 and res.letter_count <= 4 * 4 - 1 + 6


def test_gauss_rejects_singular_and_matrix_rings():
    with pytest.raises(Singular):
        gauss_elementary_decompose(Mat.from_array(IntegersMod(6), [[2, 0, 0], [0, 1, 0], [0, 0, 1]]))
    with pytest.raises(Unsupported):
        gauss_elementary_decompose(Mat.identity(MatrixRing(2, 2), 3))


@pytest.mark.parametrize("kind,args", [("antidiag", 1), ("diag_pair", 1), ("commutator", 2)])
@pytest.mark.parametrize("l,p", [(2, 2), (2, 3), (3, 5)])
def test_gem_identities(kind, args, l, p):
    rng = np.random.default_rng(l * p)
    hs = [modp.random_sl(l, p, rng) for _ in range(args)]
    I, Z = np.eye(l, dtype=np.int64), np.zeros((l, l), dtype=np.int64)
    w = gem_identities(kind, *hs, p=p)
    if kind == "antidiag":
        want = np.block([[Z, hs[0]], [-modp.inv(hs[0], p) % p, Z]])
        assert len(w) == 3
    elif kind == "diag_pair":
        want = np.block([[hs[0], Z], [Z, modp.inv(hs[0], p)]])
        assert len(w) == 4
    else:
        want = np.block([[commutator(*hs, p), Z], [Z, I]])
        assert len(w) == COMMUTATOR_GEMS
    assert np.array_equal(w.evaluate_array(), want % p)


def test_gem_identities_need_invertible_blocks():
    with pytest.raises(Singular):
        gem_identities("antidiag", np.zeros((2, 2), dtype=np.int64), p=3)


def test_embed_upper_left():
    rng = np.random.default_rng(2)
    h1, h2 = modp.random_sl(2, 5, rng), modp.random_sl(2, 5, rng)
    w = embed_upper_left(gem_identities("commutator", h1, h2, p=5))
    want = np.eye(6, dtype=np.int64)
    want[:2, :2] = commutator(h1, h2, 5)
    assert np.array_equal(w.evaluate_array(), want)


@pytest.mark.parametrize("l,p", [(2, 2), (2, 3), (2, 5), (3, 2)])
def test_gem_reduce_3block(l, p):
    rng = np.random.default_rng(7)
    for _ in range(30):
        g = modp.random_sl(3 * l, p, rng)
        word, h = gem_reduce_3block(g, l, p, rng)
        assert word.gem_count <= 7 < BLOCK_REDUCTION_BOUND
        tail = np.eye(3 * l, dtype=np.int64)
        tail[:l, :l] = h
        assert np.array_equal(word.evaluate_array() @ tail % p, g)


def test_commutator_search_exhaustive_sl2_f5():
    group = [np.array(e).reshape(2, 2) for e in itertools.product(range(5), repeat=4) if modp.det(np.array(e).reshape(2, 2), 5) == 1]
    assert len(group) == 120
    for h in group:
        h1, h2 = commutator_search(h, 5)
        assert np.array_equal(commutator(h1, h2, 5), h)


def test_commutator_search_unsupported_and_bad_input():
    with pytest.raises(Unsupported):
        commutator_search(np.eye(2, dtype=np.int64), 2)
    with pytest.raises(PreconditionViolated):
        commutator_search(np.diag([2, 1, 1]), 3)


def test_commutator_search_budget_exhaustion():
    # SL_3(F_5) is too large for the exhaustive fallback, so a zero budget must give up
    h = np.eye(3, dtype=np.int64)
    h[0, 1] = 1
    with pytest.raises(SearchFailed):
        commutator_search(h, 5, budget=0)


@pytest.mark.parametrize("l,p", [(2, 2), (2, 3)])
def test_diag_word_non_perfect(l, p):
    rng = np.random.default_rng(0)
    for _ in range(20):
        h = modp.random_sl(l, p, rng)
        w = diag_word(h, l, p)
        assert w.gem_count <= COMMUTATOR_GEMS
        want = np.eye(2 * l, dtype=np.int64)
        want[:l, :l] = h
        assert np.array_equal(w.evaluate_array(), want)


@pytest.mark.parametrize("l,p", [(2, 2), (2, 3), (3, 2)])
def test_full_gem_decompose(l, p):
    rng = np.random.default_rng(11)
    for _ in range(15):
        g = modp.random_sl(3 * l, p, rng)
        res = full_gem_decompose(g, l, p, seed=int(rng.integers(1000)))
        assert np.array_equal(res.reconstruct(), g)
        assert res.gem_count <= FULL_GEM_BOUND


def test_full_elementary_word_matches():
    rng = np.random.default_rng(4)
    g = modp.random_sl(6, 2, rng)
    res = full_gem_decompose(g, 2, 2)
    w = full_elementary_word(res)
    assert w.gem_count == 0
    assert np.array_equal(w.evaluate_array(), g)


@pytest.mark.parametrize("m", [7, 9, 8, 15])
def test_steinberg_symbols_trivial(m):
    ring = IntegersMod(m)
    units = ring.units()
    for u in units:
        for v in units:
            w = steinberg_word(u, v, 3)
            assert len(w) <= 13
            assert w.evaluate().is_identity()
    assert len(steinberg_word(units[-1], units[-1], 3, simplify=False)) == 12


def test_steinberg_rejects_non_units():
    R = IntegersMod(9)
    with pytest.raises(NonUnit):
        steinberg_word(R(3), R(2), 3)
    with pytest.raises(NonUnit):
        w_letters(1, 2, R(2), R(2))


def test_w_letters_is_monomial():
    R = IntegersMod(7)
    u = R(3)
    m = Mat.identity(R, 2)
    for x in w_letters(1, 2, u, u.inverse()):
        m = m @ x.realize(2)
    assert m[0, 0].is_zero() and m[1, 1].is_zero()


@pytest.mark.parametrize("m", [4, 8, 9, 27, 25])
def test_lift_commutators(m):
    rng = np.random.default_rng(m)
    a = signed_cycle(3, m)
    b = np.eye(3, dtype=np.int64)
    b[0, 1] = 1
    for _ in range(10):
        g = random_congruence_element(3, m, rng)
        x, y = lift_commutators(g, a, b, m)
        got = group_commutator_mod(a, x, m) @ group_commutator_mod(b, y, m) % m
        assert np.array_equal(got, g)


def test_lift_commutators_mat_interface():
    R = IntegersMod(9)
    rng = np.random.default_rng(0)
    g = Mat.from_array(R, random_congruence_element(3, 9, rng))
    a = Mat.from_array(R, signed_cycle(3, 9))
    b = Mat.elementary(R, 3, 1, 2, 1)
    x, y = lift_commutators(g, a, b)
    assert isinstance(x, Mat) and isinstance(y, Mat)


def test_lift_commutators_preconditions():
    I = np.eye(3, dtype=np.int64)
    with pytest.raises(BadGenerators):
        lift_commutators(I, I, I, 9)
    with pytest.raises(PreconditionViolated):
        lift_commutators(np.diag([1, 2, 5]), signed_cycle(3, 9), I, 9)
    with pytest.raises(Unsupported):
        lift_commutators(I, I, I, 12)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**31 - 1))
def test_full_gem_property_sl6_f3(seed):
    rng = np.random.default_rng(seed)
    g = modp.random_sl(6, 3, rng)
    res = full_gem_decompose(g, 2, 3, seed=seed)
    assert np.array_equal(res.reconstruct(), g) and res.gem_count <= FULL_GEM_BOUND
