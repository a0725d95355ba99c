import json
import math

import pytest

from latticexp.bounds import (
    GAMMA2_TAU_LOWER,
    headline_constants,
    m_constant,
    m_p,
    m_pq,
    md_constant,
    s_family_pair,
    tau_bounds_universal,
)


def test_m_constants():
    assert m_constant(0) == pytest.approx(2 + math.sqrt(10), abs=1e-15)
    assert m_constant(0) < 5.17
    assert m_constant(1) == pytest.approx(14.852, abs=1e-3)
    assert m_constant(2) == pytest.approx(16.3436, abs=1e-4)
    with pytest.raises(ValueError):
        m_constant(-1)


def test_m_increasing_and_sublinear():
    vals = [m_constant(k) for k in range(101)]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    for k in range(1, 101):
        assert vals[k] <= math.sqrt(18) * (math.sqrt(k) + 3)


def test_md_dominates_block_constants():
    for d in range(3, 51):
        for k in (0, 1, 2, 5):
            md = md_constant(d, k)
            for p_ in range(2, d):
                for q in range(1, d - p_ + 1):
                    assert m_pq(k, p_, q) <= md + 1e-9


def test_m_p_base_case():
    assert m_p(1, 2) == pytest.approx(math.sqrt(2) * m_constant(1))


def test_tau_bounds_shape():
    tb = tau_bounds_universal(10, 2)
    lo, simple, hi = tb
    assert 0 < lo < hi and hi == pytest.approx(math.sqrt(0.2))
    with pytest.raises(ValueError):
        tau_bounds_universal(2, 0)


def test_tau_simplification_only_holds_for_large_d():
    assert not tau_bounds_universal(3, 0).simplification_holds
    assert tau_bounds_universal(100, 0).simplification_holds


def test_s_family():
    for s in range(51):
        exact, simple = s_family_pair(s)
        assert exact >= simple


def test_headline_table():
    table = headline_constants(s=3)
    v = table.values
    assert v["kazhdan_lower_28"] == pytest.approx(math.sqrt(2) / (34 * m_constant(2)))
    assert v["kazhdan_lower_28"] >= v["one_over_400"] == 1 / 400
    assert v["expansion_28"] == pytest.approx(1.5625e-6, abs=1e-18)
    assert v["gamma2_tau_lower"] == GAMMA2_TAU_LOWER
    assert "tau_lower_s" in v
    data = json.loads(table.to_json())
    assert set(data) == {"params", "values", "formulas"}
    assert "expansion_28" in table.to_text()
