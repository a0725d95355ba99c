import numpy as np
import pytest

from latticexp import modp
from latticexp.errors import InvalidLetter, Unsupported
from latticexp.groups import (
    GeneratorSet,
    GroupElement,
    elementary_matrix,
    generator_arrays,
    sigma_bad,
    sigma_good,
    sigma_standard,
)
from latticexp.rings import IntegersMod, Mat


def test_group_element_key_and_inverse():
    rng = np.random.default_rng(0)
    g = GroupElement(modp.random_sl(3, 5, rng), 5)
    assert g @ g.inverse() == GroupElement.identity(3, 5)
    assert len(g.key) == 9
    assert g.det() == 1


def test_group_element_rejects_bad_input():
    with pytest.raises(ValueError):
        GroupElement([[2, 0], [0, 1]], 5)
    with pytest.raises(Unsupported):
        GroupElement(np.eye(2), 257)


def test_elementary_matrix_both_kinds():
    assert elementary_matrix(3, 1, 2, 1, 2).array[0, 1] == 1
    assert isinstance(elementary_matrix(3, 2, 1, 5, IntegersMod(9)), Mat)
    with pytest.raises(InvalidLetter):
        elementary_matrix(3, 1, 1, 1, 2)


@pytest.mark.parametrize("n,p", [(3, 2), (3, 3), (4, 2), (5, 7)])
def test_sigma_bad(n, p):
    S = sigma_bad(n, p)
    assert S.declared_size == 4
    assert S.audit() == {"inverse_closed": True, "det_one": True}


def test_sigma_bad_degenerates_in_char_two():
    # B = I + e_12 is an involution mod 2, so only 3 distinct elements
    assert sigma_bad(3, 2).distinct_count == 3


@pytest.mark.parametrize("l,p", [(2, 2), (2, 3), (3, 2), (3, 5)])
def test_sigma_good(l, p):
    S = sigma_good(l, p)
    assert S.declared_size == 28 and S.n == 3 * l
    assert S.audit() == {"inverse_closed": True, "det_one": True}


def test_sigma_good_distinct_counts():
    assert sigma_good(2, 2).distinct_count == 14
    assert sigma_good(2, 3).distinct_count == 28


@pytest.mark.parametrize("d,p", [(3, 2), (3, 3), (4, 5)])
def test_sigma_standard(d, p):
    S = sigma_standard(d, p)
    assert S.declared_size == 2 * (d * d - d)
    assert S.audit()["inverse_closed"]


def test_unsupported_ranks():
    with pytest.raises(Unsupported):
        sigma_bad(2, 3)
    with pytest.raises(Unsupported):
        sigma_good(1, 2)


def test_json_roundtrip():
    S = sigma_good(2, 3)
    back = GeneratorSet.from_json(S.to_json())
    assert back.label == S.label and back.labels == S.labels
    assert np.array_equal(generator_arrays(back), generator_arrays(S))
