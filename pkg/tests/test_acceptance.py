"""Acceptance gate: one test per criterion, each reporting a single pass/fail line.

Every check runs at its stated tolerance; failing sub-checks are listed in
the criterion's line and the test fails.
"""

import itertools
import math
import time

import numpy as np
import pytest

from latticexp import modp
from latticexp.bounds import headline_constants, m_constant, md_constant
from latticexp.decompose import (
    commutator,
    commutator_search,
    full_gem_decompose,
    gauss_elementary_decompose,
    group_commutator_mod,
    lift_commutators,
    random_congruence_element,
    steinberg_word,
)
from latticexp.graphs import cycle_graph, enumerate_cayley, schreier_graph
from latticexp.groups import sigma_bad, sigma_good, sigma_standard
from latticexp.identities import audit_ring_identities, signed_cycle
from latticexp.rings import IntegersMod, Mat
from latticexp.spectral import basis_indicator, second_eigenvalue, witness_upper_bound

WITNESS_RANKS = (6, 9, 12, 18, 24)
GOOD_BLOCKS = (2, 3, 4, 5, 6)


@pytest.fixture(scope="module")
def witness_bounds():
    """Centered basis-indicator witness on Sch(F_2^n, sigma_bad), plus the total time."""
    t0 = time.perf_counter()
    out = {}
    for n in WITNESS_RANKS:
        g = schreier_graph(n, 2, sigma_bad(n, 2))
        out[n] = witness_upper_bound(g, basis_indicator(n, 2))
        del g
    return out, time.perf_counter() - t0


@pytest.fixture(scope="module")
def good_reports():
    """Spectral reports of Sch(F_2^3l, sigma_good) for each l, plus the total time."""
    t0 = time.perf_counter()
    reports = {}
    for l in GOOD_BLOCKS:
        g = schreier_graph(3 * l, 2, sigma_good(l, 2))
        reports[l] = second_eigenvalue(g, tol=1e-9, with_lambda_min=False)
    return reports, time.perf_counter() - t0


def test_criterion_1_constants(record_criterion):
    t0 = time.perf_counter()
    checks = []
    m0, m1, m2 = (m_constant(k) for k in (0, 1, 2))
    checks.append(("M(0) < 5.17", m0 < 5.17, "%.12g" % m0))
    checks.append(("M(1) < 14.92", m1 < 14.92, "%.12g" % m1))
    checks.append(("M(2) < 16.47", m2 < 16.47, "%.12g" % m2))
    kaz = math.sqrt(2) / (34 * m2)
    checks.append(("sqrt2/(34 M(2)) >= 1/400", kaz >= 1 / 400 - 1e-12, "%.6g" % kaz))
    eps = (1 / 400) ** 2 / 4
    checks.append(("(1/400)^2/4 = 1.5625e-6 >= 1.5e-6", abs(eps - 1.5625e-6) <= 1e-12 and eps >= 1.5e-6, "%.12g" % eps))

    table = headline_constants()
    checks.append(("bounds table entries", table.values["one_over_400"] == 1 / 400 and abs(table.values["expansion_28"] - 1.5625e-6) <= 1e-12, ""))

    bad = []
    for d in range(3, 101):
        for k in range(0, 101):
            lhs = math.sqrt(2) * (77 + 39 * k / d) * md_constant(d, k)
            rhs = 800 * math.sqrt(d) * (1 + (k / d) ** 1.5)
            if not lhs < rhs + 1e-12:
                bad.append((d, k, lhs, rhs))
    first = "d=%d k=%d: %.6g vs %.6g" % bad[0] if bad else ""
    checks.append(("tau grid d in [3,100], k in [0,100]", not bad, "%d/9898 points violate, first %s" % (len(bad), first)))
    elapsed = time.perf_counter() - t0
    checks.append(("runtime < 1 s", elapsed < 1.0, "%.3fs" % elapsed))
    assert record_criterion(1, "constant reproduction", checks, elapsed)


def test_criterion_2_witness_band(record_criterion, witness_bounds):
    bounds, elapsed = witness_bounds
    checks = []
    for n in WITNESS_RANKS:
        ratio = bounds[n] / math.sqrt(2 / n)
        checks.append(("n=%d in [0.95,1.05] sqrt(2/n)" % n, 0.95 <= ratio <= 1.05, "ratio %.6f" % ratio))
    seq = [bounds[n] for n in WITNESS_RANKS]
    checks.append(("strictly decreasing in n", all(a > b for a, b in zip(seq, seq[1:])), ", ".join("%.6f" % x for x in seq)))
    checks.append(("runtime < 60 s", elapsed < 60, "%.1fs" % elapsed))
    assert record_criterion(2, "sqrt(2/n) witness upper bound", checks, elapsed)


def test_criterion_3_good_set_trend(record_criterion, witness_bounds, good_reports):
    good_reports, spent = good_reports
    t0 = time.perf_counter() - spent
    gaps = {l: rep.laplacian_gap for l, rep in good_reports.items()}
    checks = [("l=%d converged" % l, rep.converged, "residual %.2e" % rep.residual) for l, rep in good_reports.items()]
    lo = min(gaps.values())
    checks.append(("min gap >= 0.5 gap(l=2)", lo >= 0.5 * gaps[2], "min %.6f vs %.6f" % (lo, 0.5 * gaps[2])))
    good_lower = min(rep.kazhdan_lower for rep in good_reports.values())
    bad24 = witness_bounds[0][24]
    checks.append(("bad witness(n=24) < good Kazhdan lower bound", bad24 < good_lower, "%.6f vs %.6f" % (bad24, good_lower)))
    assert record_criterion(3, "good-set gap trend", checks, time.perf_counter() - t0)


def test_criterion_4_word_audits(record_criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    checks = []

    # (a) elementary reduction over Z/m
    for m in (4, 5, 6, 9):
        ring = IntegersMod(m)
        worst, exact = 0, True
        for _ in range(1000):
            while True:
                g = Mat.from_array(ring, rng.integers(0, m, size=(3, 3)))
                if g.det().is_unit():
                    break
            res = gauss_elementary_decompose(g, rng)
            exact &= res.reconstruct() == g
            worst = max(worst, res.letter_count)
        checks.append(("gauss Z/%d <= 11 letters" % m, exact and worst <= 11, "max %d, exact=%s" % (worst, exact)))

    # (b) block decomposition
    for n, p in ((6, 2), (6, 3), (9, 2)):
        worst, exact = 0, True
        for _ in range(100):
            g = modp.random_sl(n, p, rng)
            res = full_gem_decompose(g, n // 3, p, seed=int(rng.integers(2**31)))
            exact &= bool(np.array_equal(res.reconstruct(), g))
            worst = max(worst, res.gem_count)
        checks.append(("SL_%d(F_%d) <= 18 GEMs" % (n, p), exact and worst <= 18, "max %d, exact=%s" % (worst, exact)))

    # (c) Steinberg symbols
    for m in (7, 9):
        ring = IntegersMod(m)
        units = ring.units()
        worst, trivial = 0, True
        for u, v in itertools.product(units, units):
            w = steinberg_word(u, v, 3)
            worst = max(worst, len(w))
            trivial &= w.evaluate().is_identity()
        checks.append(("Steinberg Z/%d" % m, trivial and worst <= 13, "max %d letters, identity=%s" % (worst, trivial)))

    # (d) commutator search
    sl25 = [np.array(e).reshape(2, 2) for e in itertools.product(range(5), repeat=4) if modp.det(np.array(e).reshape(2, 2), 5) == 1]
    found = sum(np.array_equal(commutator(*commutator_search(h, 5), 5), h) for h in sl25)
    checks.append(("commutators SL_2(F_5) exhaustive", found == len(sl25) == 120, "%d/%d" % (found, len(sl25))))
    for p in (2, 3):
        found = 0
        for _ in range(1000):
            h = modp.random_sl(3, p, rng)
            found += np.array_equal(commutator(*commutator_search(h, p, seed=int(rng.integers(2**31))), p), h)
        checks.append(("commutators SL_3(F_%d)" % p, found == 1000, "%d/1000" % found))

    elapsed = time.perf_counter() - t0
    checks.append(("runtime < 10 min", elapsed < 600, "%.1fs" % elapsed))
    assert record_criterion(4, "word-decomposition audits", checks, elapsed)


def test_criterion_5_commutator_lifting(record_criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(5)
    checks = []
    for m in (4, 9):
        a = signed_cycle(3, m)
        b = np.eye(3, dtype=np.int64)
        b[0, 1] = 1
        exact = 0
        for _ in range(100):
            g = random_congruence_element(3, m, rng)
            x, y = lift_commutators(g, a, b, m)
            exact += np.array_equal(group_commutator_mod(a, x, m) @ group_commutator_mod(b, y, m) % m, g)
        checks.append(("SL_3(Z/%d) lifts" % m, exact == 100, "%d/100 exact" % exact))
    elapsed = time.perf_counter() - t0
    checks.append(("runtime < 60 s", elapsed < 60, "%.1fs" % elapsed))
    assert record_criterion(5, "commutator lifting", checks, elapsed)


def _small_corpus():
    graphs = [cycle_graph(n) for n in (3, 5, 8, 17, 64, 101, 500)]
    graphs += [enumerate_cayley(sigma_bad(3, 2)), enumerate_cayley(sigma_standard(3, 2))]
    graphs += [schreier_graph(n, 2, sigma_bad(n, 2)) for n in range(3, 13)]
    graphs += [schreier_graph(n, 3, sigma_bad(n, 3)) for n in (3, 4, 5, 6, 7)]
    graphs += [schreier_graph(3, 5, sigma_bad(3, 5)), schreier_graph(3, 2, sigma_standard(3, 2)), schreier_graph(4, 3, sigma_standard(4, 3))]
    graphs += [schreier_graph(3 * l, 2, sigma_good(l, 2)) for l in (2, 3, 4)]
    graphs += [schreier_graph(6, 3, sigma_good(2, 3))]
    return [g for g in graphs if g.num_vertices <= 4096]


def test_criterion_6_solver_oracle(record_criterion):
    t0 = time.perf_counter()
    checks = []
    worst_l, worst_p, worst_cos = 0.0, 0.0, 0.0
    count = 0
    for g in _small_corpus():
        count += 1
        dense = second_eigenvalue(g, method="dense").lambda2
        lan = second_eigenvalue(g, method="lanczos", tol=1e-10, with_lambda_min=False)
        pw = second_eigenvalue(g, method="power", tol=1e-10, max_iter=400_000)
        dl, dp = abs(lan.lambda2 - dense), abs(pw.lambda2 - dense)
        worst_l, worst_p = max(worst_l, dl), max(worst_p, dp)
        checks.append(("lanczos %s" % g.label, dl <= 1e-6, "|diff| %.2e" % dl))
        checks.append(("power %s" % g.label, dp <= 1e-6, "|diff| %.2e" % dp))
        if g.label.startswith("cycle("):
            n = g.num_vertices
            dc = abs(dense - math.cos(2 * math.pi / n))
            worst_cos = max(worst_cos, dc)
            checks.append(("closed form %s" % g.label, dc <= 1e-6, "|diff| %.2e" % dc))
    title = "solver oracle equivalence (%d graphs, max |lanczos-dense| %.1e, |power-dense| %.1e, |dense-cos| %.1e)" % (count, worst_l, worst_p, worst_cos)
    assert record_criterion(6, title, checks, time.perf_counter() - t0)


def test_criterion_7_structural(record_criterion):
    t0 = time.perf_counter()
    checks = []
    for n, p in ((3, 2), (3, 3), (4, 2), (3, 5)):
        for S in (sigma_bad(n, p), sigma_standard(n, p)):
            V = enumerate_cayley(S).num_vertices
            want = modp.sl_order(n, p)
            checks.append(("|C(SL_%d(F_%d), %s)|" % (n, p, S.label), V == want, "%d vs %d" % (V, want)))
    sets = [sigma_bad(n, p) for n, p in ((3, 2), (3, 3), (4, 2), (5, 7), (12, 2))]
    sets += [sigma_good(l, p) for l, p in ((2, 2), (2, 3), (3, 2), (4, 5), (6, 2))]
    sets += [sigma_standard(d, p) for d, p in ((3, 2), (3, 3), (5, 5))]
    for S in sets:
        audit = S.audit()
        checks.append(("audit %s" % S.label, all(audit.values()), str(audit)))
    for triple in ((5, 2, 3), (3, 1, 2), (7, 3, 5)):
        audit = audit_ring_identities(*triple)
        bad = [k for k, v in audit.identities.items() if not v]
        if not audit.vanishing_criterion_holds:
            bad.append("vanishing criterion")
        checks.append(("ring identities (l,N,p)=%s" % (triple,), audit.passed, "failing: " + ", ".join(bad) if bad else ""))
    assert record_criterion(7, "structural invariants", checks, time.perf_counter() - t0)


def test_criterion_8_sandwich(record_criterion, good_reports):
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    checks = []
    cayleys = [enumerate_cayley(S) for S in (sigma_bad(3, 2), sigma_standard(3, 2), sigma_bad(3, 3), sigma_standard(3, 3), sigma_bad(4, 2))]
    for g in cayleys:
        rep = second_eigenvalue(g, tol=1e-10)
        # pull the basis indicator back along the orbit map g -> g e_1, plus random vectors
        first_cols = g.elements[:, :, 0].astype(np.int64)
        e1_hits = (first_cols.sum(axis=1) == 1)
        witnesses = [witness_upper_bound(g, e1_hits.astype(float))]
        witnesses += [witness_upper_bound(g, rng.standard_normal(g.num_vertices)) for _ in range(5)]
        w = min(witnesses)
        checks.append(("%s" % g.label, rep.kazhdan_lower <= w + 1e-12, "lower %.6f vs min witness %.6f" % (rep.kazhdan_lower, w)))
        if g.label == "C(SL_3(F_2), %s)" % sigma_standard(3, 2).label:
            checks.append(("C(SL_3(F_2), standard) lower > 1/400", rep.kazhdan_lower > 1 / 400, "%.6f" % rep.kazhdan_lower))
    for n in range(3, 17):
        g = schreier_graph(n, 2, sigma_bad(n, 2))
        rep = second_eigenvalue(g, tol=1e-10, with_lambda_min=False)
        w = witness_upper_bound(g, basis_indicator(n, 2))
        checks.append(("%s" % g.label, rep.kazhdan_lower <= w + 1e-12, "lower %.6f vs witness %.6f" % (rep.kazhdan_lower, w)))
    for l, rep in good_reports[0].items():
        g = schreier_graph(3 * l, 2, sigma_good(l, 2))
        w = witness_upper_bound(g, basis_indicator(3 * l, 2))
        checks.append(("good l=%d" % l, rep.kazhdan_lower <= w + 1e-12, "lower %.6f vs witness %.6f" % (rep.kazhdan_lower, w)))
    assert any(name.endswith("lower > 1/400") for name, _, _ in checks)
    assert record_criterion(8, "Kazhdan sandwich consistency", checks, time.perf_counter() - t0)
