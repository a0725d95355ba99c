import numpy as np
import pytest

from latticexp import modp
from latticexp.identities import audit_ring_identities, matrix_unit, signed_cycle


@pytest.mark.parametrize("l,p", [(2, 2), (3, 2), (4, 3), (5, 5)])
def test_signed_cycle_has_det_one_and_order(l, p):
    a = signed_cycle(l, p)
    assert modp.det(a, p) == 1
    # A^l = (-1)^(l-1) * ... = Id up to the sign convention, so A^(2l) = Id
    assert np.array_equal(modp.matpow(a, 2 * l, p), np.eye(l, dtype=np.int64))


def test_matrix_unit():
    e = matrix_unit(3, 1, 2)
    assert e[0, 1] == 1 and e.sum() == 1


@pytest.mark.parametrize("l,N,p", [(5, 2, 3), (7, 3, 5), (4, 1, 3), (6, 2, 5)])
def test_audit_passes(l, N, p):
    audit = audit_ring_identities(l, N, p)
    assert audit.identities_hold, audit.lines()
    assert audit.vanishing_criterion_holds, audit.lines()
    assert audit.passed


def test_audit_small_l_fails_when_shift_wraps():
    # l = 3 divides (N + 1) + 1, so the vanishing criterion itself says these brackets are nonzero
    audit = audit_ring_identities(3, 1, 2)
    assert audit.vanishing_criterion_holds
    assert not audit.identities_hold


def test_audit_lines_render():
    lines = audit_ring_identities(5, 2, 3).lines()
    assert any("vanishing" in line for line in lines)
