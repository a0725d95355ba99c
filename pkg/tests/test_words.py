import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latticexp.errors import InvalidLetter, WordMismatch
from latticexp.rings import CyclicGroupAlgebra, IntegersMod, Mat, MatrixRing
from latticexp.words import ElementaryLetter, GemLetter, Word, expand_word, gem_expand, word_eval


def _letters(ring, n, rng, k):
    out = []
    for _ in range(k):
        i, j = rng.choice(n, size=2, replace=False) + 1
        out.append(ElementaryLetter(int(i), int(j), ring.random(rng)))
    return out


def test_elementary_letter_rejects_diagonal():
    with pytest.raises(InvalidLetter):
        ElementaryLetter(2, 2, IntegersMod(5)(1))


def test_word_index_range_checked():
    R = IntegersMod(5)
    with pytest.raises(WordMismatch):
        Word([ElementaryLetter(1, 4, R(1))], 3, R)


def test_empty_word_is_identity():
    R = IntegersMod(7)
    assert word_eval(Word([], 3, R)).is_identity()


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), k1=st.integers(0, 6), k2=st.integers(0, 6))
def test_eval_is_homomorphism(seed, k1, k2):
    rng = np.random.default_rng(seed)
    R = IntegersMod(6)
    w1, w2 = Word(_letters(R, 3, rng, k1), 3, R), Word(_letters(R, 3, rng, k2), 3, R)
    assert word_eval(w1 + w2) == word_eval(w1) @ word_eval(w2)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), k=st.integers(0, 8))
def test_inverse_word(seed, k):
    rng = np.random.default_rng(seed)
    R = CyclicGroupAlgebra(3, 2)
    w = Word(_letters(R, 3, rng, k), 3, R)
    assert word_eval(w + w.inverse()).is_identity()


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), k=st.integers(0, 10))
def test_simplified_preserves_value(seed, k):
    rng = np.random.default_rng(seed)
    R = IntegersMod(4)
    letters = _letters(R, 2, rng, k)  # only two slots, so merges happen often
    w = Word(letters, 2, R)
    s = w.simplified()
    assert len(s) <= len(w)
    assert word_eval(s) == word_eval(w)


def test_evaluate_array_matches_evaluate_over_matrix_ring():
    R = MatrixRing(2, 3)
    rng = np.random.default_rng(5)
    w = Word(_letters(R, 3, rng, 7), 3, R)
    assert np.array_equal(w.evaluate_array(), w.evaluate().flatten())


def test_gem_letter_shapes_and_realize():
    R = IntegersMod(5)
    g = GemLetter.from_blocks("upper", 1, 2, R, [[2, 3]])
    m = g.realize().to_array()
    assert m.tolist() == [[1, 2, 3], [0, 1, 0], [0, 0, 1]]
    assert np.array_equal(g.to_array(), m)
    with pytest.raises(WordMismatch):
        GemLetter.from_blocks("lower", 1, 2, R, [[2, 3]])


def test_gem_inverse_and_expand():
    R = MatrixRing(2, 2)
    rng = np.random.default_rng(2)
    g = GemLetter.from_array("lower", 2, 1, R, rng.integers(0, 2, (2, 4)))
    assert (g.realize() @ g.inverse().realize()).is_identity()
    expanded = gem_expand(g)
    assert expanded.gem_count == 0
    assert np.array_equal(expanded.evaluate_array(), g.to_array())


def test_expand_word_mixed():
    R = IntegersMod(7)
    w = Word([GemLetter.from_blocks("upper", 2, 1, R, [[1], [4]]), ElementaryLetter(3, 1, R(2))], 3, R)
    assert expand_word(w).gem_count == 0
    assert word_eval(expand_word(w)) == word_eval(w)


@pytest.mark.parametrize("ring", [IntegersMod(9), CyclicGroupAlgebra(2, 3), MatrixRing(2, 3)], ids=str)
def test_text_roundtrip(ring):
    rng = np.random.default_rng(0)
    letters = _letters(ring, 3, rng, 4)
    letters.append(GemLetter.from_blocks("lower", 1, 2, ring, [[ring.random(rng)], [ring.random(rng)]]))
    w = Word(letters, 3, ring)
    back = Word.from_text(w.to_text())
    assert back == w
    assert word_eval(back) == word_eval(w)


def test_mat_elementary_matches_letter():
    R = IntegersMod(11)
    assert ElementaryLetter(1, 3, R(4)).realize(3) == Mat.elementary(R, 3, 1, 3, 4)
