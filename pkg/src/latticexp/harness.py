"""Experiment runner: parameter sweeps written as CSV plus a JSON manifest.

Each experiment yields rows with the columns in :data:`COLUMNS`. Rows whose
graph would exceed the vertex cap are emitted with ``status=skipped``;
rows whose audited property fails get ``status=fail``.
"""

from __future__ import annotations

import csv
import io
import json
import os
import platform
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Callable, Iterator

import numpy as np

from . import __version__, modp
from .bounds import headline_constants, tau_bounds_universal
from .decompose import (
    full_elementary_word,
    full_gem_decompose,
    gauss_elementary_decompose,
    lift_commutators,
    random_congruence_element,
    steinberg_word,
)
from .errors import CapExceeded, LatticexpError, Unsupported
from .graphs import diameter, enumerate_cayley, schreier_graph
from .groups import GeneratorSet, sigma_bad, sigma_good, sigma_standard
from .identities import audit_ring_identities, signed_cycle
from .rings import IntegersMod, Mat
from .spectral import basis_indicator, second_eigenvalue, witness_upper_bound

SCHEMA_VERSION = 1
COLUMNS = [
    "experiment",
    "group",
    "n",
    "p",
    "gen_set_label",
    "degree",
    "num_vertices",
    "lambda2",
    "gap",
    "kazhdan_lower",
    "kazhdan_upper",
    "diameter",
    "letter_count",
    "gem_count",
    "seed",
    "runtime_ms",
    "status",
    "witness_upper",
    "detail",
]

EXPERIMENTS = (
    "gap-vs-rank",
    "schreier-gaps",
    "decompose-audit",
    "kazhdan",
    "steinberg-audit",
    "lift-audit",
    "ring-identities",
    "bounds",
)


@dataclass
class ExperimentConfig:
    experiment: str
    n: list[int] = field(default_factory=lambda: [3, 4])
    l: list[int] = field(default_factory=lambda: [2, 3])
    p: list[int] = field(default_factory=lambda: [2])
    m: list[int] = field(default_factory=list)
    gen_set: str = "bad"
    triples: list[tuple[int, int, int]] = field(default_factory=lambda: [(5, 2, 3), (3, 1, 2), (7, 3, 5)])
    samples: int = 100
    max_vertices: int = 2_000_000
    max_iter: int = 100_000
    tol: float = 1e-8
    seed: int = 0
    out: str = "latticexp-out"
    deterministic: bool = False
    threads: int = 1

    def validate(self) -> None:
        if self.experiment not in EXPERIMENTS:
            raise ValueError("unknown experiment %r (choose from %s)" % (self.experiment, ", ".join(EXPERIMENTS)))
        if self.gen_set not in ("bad", "good", "standard"):
            raise ValueError("set must be bad, good or standard")
        for name in ("n", "l", "p"):
            values = getattr(self, name)
            if not values:
                raise ValueError("parameter range --%s is empty" % name)
            if min(values) < 1:
                raise ValueError("--%s values must be positive" % name)
        for p in self.p:
            if not modp.is_prime(p):
                raise ValueError("p=%d is not prime" % p)
        if self.max_vertices <= 0 or self.max_iter <= 0 or self.samples <= 0:
            raise ValueError("caps and sample counts must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")


def parse_range(text) -> list[int]:
    """'3,4' -> [3, 4]; '2..6' -> [2, 3, 4, 5, 6]; lists pass through."""
    if isinstance(text, (list, tuple)):
        return [int(x) for x in text]
    if isinstance(text, int):
        return [text]
    out: list[int] = []
    for part in str(text).split(","):
        part = part.strip()
        if not part:
            continue
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out


def parse_triples(text) -> list[tuple[int, int, int]]:
    """'5,2,3;3,1,2' -> [(5, 2, 3), (3, 1, 2)]."""
    if isinstance(text, (list, tuple)):
        return [tuple(int(v) for v in t) for t in text]
    return [tuple(int(v) for v in t.split(",")) for t in str(text).split(";") if t.strip()]


# ---------------------------------------------------------------------------


def _row(config: ExperimentConfig, **values) -> dict:
    row = {c: "" for c in COLUMNS}
    row["experiment"] = config.experiment
    row["seed"] = config.seed
    row.update(values)
    return row


def _generators(kind: str, n_or_l: int, p: int) -> GeneratorSet:
    if kind == "bad":
        return sigma_bad(n_or_l, p)
    if kind == "good":
        return sigma_good(n_or_l, p)
    return sigma_standard(n_or_l, p)


def _rank_params(config: ExperimentConfig) -> Iterator[tuple[int, int]]:
    ranks = config.l if config.gen_set == "good" else config.n
    for p in config.p:
        for r in ranks:
            yield r, p


def _spectral_fields(rep) -> dict:
    return {
        "lambda2": rep.lambda2,
        "gap": rep.laplacian_gap,
        "kazhdan_lower": rep.kazhdan_lower,
        "kazhdan_upper": rep.kazhdan_upper,
        "num_vertices": rep.num_vertices,
    }


def exp_gap_vs_rank(config: ExperimentConfig) -> Iterator[dict]:
    for r, p in _rank_params(config):
        try:
            S = _generators(config.gen_set, r, p)
        except Unsupported as exc:
            yield _row(config, group="rank %d over F_%d" % (r, p), p=p, status="skipped", detail=str(exc))
            continue
        n = S.n
        base = dict(group="SL_%d(F_%d)" % (n, p), n=n, p=p, gen_set_label=S.label, degree=len(S))
        try:
            g = enumerate_cayley(S, config.max_vertices)
        except CapExceeded as exc:
            yield _row(config, **base, status="skipped", detail=str(exc))
            continue
        rep = second_eigenvalue(g, config.tol, config.max_iter, config.seed)
        yield _row(config, **base, **_spectral_fields(rep), diameter=diameter(g), status="ok" if rep.converged else "unconverged")


def exp_schreier_gaps(config: ExperimentConfig) -> Iterator[dict]:
    for r, p in _rank_params(config):
        try:
            S = _generators(config.gen_set, r, p)
        except Unsupported as exc:
            yield _row(config, group="rank %d over F_%d" % (r, p), p=p, status="skipped", detail=str(exc))
            continue
        n = S.n
        base = dict(group="SL_%d(F_%d) on F_%d^%d" % (n, p, p, n), n=n, p=p, gen_set_label=S.label, degree=len(S))
        try:
            g = schreier_graph(n, p, S)
        except CapExceeded as exc:
            yield _row(config, **base, status="skipped", detail=str(exc))
            continue
        rep = second_eigenvalue(g, config.tol, config.max_iter, config.seed)
        witness = witness_upper_bound(g, basis_indicator(n, p))
        ok = rep.converged and rep.kazhdan_lower <= witness + 1e-12
        yield _row(config, **base, **_spectral_fields(rep), witness_upper=witness, status="ok" if ok else "fail")


def exp_kazhdan(config: ExperimentConfig) -> Iterator[dict]:
    """Kazhdan sandwich on the Cayley graph when enumerable, else on the Schreier graph,
    with the basis-indicator witness bound from the Schreier graph."""
    for r, p in _rank_params(config):
        try:
            S = _generators(config.gen_set, r, p)
        except Unsupported as exc:
            yield _row(config, group="rank %d over F_%d" % (r, p), p=p, status="skipped", detail=str(exc))
            continue
        n = S.n
        base = dict(n=n, p=p, gen_set_label=S.label, degree=len(S))
        try:
            sch = schreier_graph(n, p, S)
            witness = witness_upper_bound(sch, basis_indicator(n, p))
        except CapExceeded as exc:
            yield _row(config, **base, group="SL_%d(F_%d)" % (n, p), status="skipped", detail=str(exc))
            continue
        try:
            g = enumerate_cayley(S, config.max_vertices)
            group, diam = "SL_%d(F_%d)" % (n, p), diameter(g)
        except CapExceeded:
            g, group, diam = sch, "SL_%d(F_%d) on F_%d^%d" % (n, p, p, n), ""
        rep = second_eigenvalue(g, config.tol, config.max_iter, config.seed)
        ok = rep.converged and rep.kazhdan_lower <= witness + 1e-12
        yield _row(config, **base, group=group, **_spectral_fields(rep), diameter=diam, witness_upper=witness, status="ok" if ok else "fail")


def exp_decompose_audit(config: ExperimentConfig) -> Iterator[dict]:
    rng = np.random.default_rng(config.seed)
    for p in config.p:
        for l in config.l:
            n = 3 * l
            base = dict(group="SL_%d(F_%d)" % (n, p), n=n, p=p, gen_set_label="gem3(l=%d)" % l)
            worst_gems, worst_letters, at_most_7, ok = 0, 0, 0, True
            for _ in range(config.samples):
                g = modp.random_sl(n, p, rng)
                res = full_gem_decompose(g, l, p, seed=int(rng.integers(2**31)))
                ok &= bool(np.array_equal(res.reconstruct(), g)) and res.gem_count <= 18
                worst_gems = max(worst_gems, res.gem_count)
                at_most_7 += res.stats["reduction_gems"] <= 7
                worst_letters = max(worst_letters, len(full_elementary_word(res)))
            yield _row(
                config,
                **base,
                gem_count=worst_gems,
                letter_count=worst_letters,
                status="ok" if ok else "fail",
                detail="samples=%d reduction<=7:%d" % (config.samples, at_most_7),
            )
    for m in config.m or [4, 5, 6, 9]:
        ring = IntegersMod(m)
        worst, ok = 0, True
        for _ in range(config.samples):
            while True:
                g = Mat.from_array(ring, rng.integers(0, m, size=(3, 3)))
                if g.det().is_unit():
                    break
            res = gauss_elementary_decompose(g, rng)
            ok &= res.reconstruct() == g and res.letter_count <= 11
            worst = max(worst, res.letter_count)
        yield _row(config, group="GL_3(Z/%d)" % m, n=3, p=m, gen_set_label="gauss", letter_count=worst, status="ok" if ok else "fail", detail="samples=%d" % config.samples)


def exp_steinberg_audit(config: ExperimentConfig) -> Iterator[dict]:
    for m in config.m or [7, 9]:
        ring = IntegersMod(m)
        units = ring.units()
        worst, ok = 0, True
        for u in units:
            for v in units:
                w = steinberg_word(u, v, 3)
                worst = max(worst, len(w))
                ok &= w.evaluate().is_identity() and len(w) <= 13
        yield _row(config, group="SL_3(Z/%d)" % m, n=3, p=m, gen_set_label="steinberg", letter_count=worst, status="ok" if ok else "fail", detail="pairs=%d" % len(units) ** 2)


def exp_lift_audit(config: ExperimentConfig) -> Iterator[dict]:
    rng = np.random.default_rng(config.seed)
    for m in config.m or [4, 9]:
        a = signed_cycle(3, m)
        b = np.eye(3, dtype=np.int64)
        b[0, 1] = 1
        ok = True
        for _ in range(config.samples):
            g = random_congruence_element(3, m, rng)
            try:
                lift_commutators(g, a, b, m)
            except LatticexpError:
                ok = False
        yield _row(config, group="SL_3(Z/%d)" % m, n=3, p=m, gen_set_label="lift(A3, e12(1))", status="ok" if ok else "fail", detail="samples=%d" % config.samples)


def exp_ring_identities(config: ExperimentConfig) -> Iterator[dict]:
    for l, N, p in config.triples:
        audit = audit_ring_identities(l, N, p)
        failed = [k for k, v in audit.identities.items() if not v]
        if not audit.vanishing_criterion_holds:
            failed.append("vanishing criterion")
        yield _row(config, group="Mat_%d(F_%d)" % (l, p), n=l, p=p, gen_set_label="N=%d" % N, status="ok" if audit.passed else "fail", detail="; ".join(failed))


def exp_bounds(config: ExperimentConfig) -> Iterator[dict]:
    table = headline_constants()
    for d in config.n:
        for k in (0, 1, 2):
            tb = tau_bounds_universal(d, k)
            yield _row(
                config,
                group="SL_%d(k=%d)" % (d, k),
                n=d,
                kazhdan_lower=tb.lower_exact,
                kazhdan_upper=tb.upper,
                status="ok" if tb.simplification_holds else "fail",
                detail="simplified=%.6g" % tb.lower_simplified,
            )
    yield _row(config, group="SL_3l(F_p)", gen_set_label="sigma_good", degree=28, kazhdan_lower=table.values["kazhdan_lower_28"], status="ok", detail="expansion=%.6g" % table.values["expansion_28"])


RUNNERS: dict[str, Callable[[ExperimentConfig], Iterator[dict]]] = {
    "gap-vs-rank": exp_gap_vs_rank,
    "schreier-gaps": exp_schreier_gaps,
    "decompose-audit": exp_decompose_audit,
    "kazhdan": exp_kazhdan,
    "steinberg-audit": exp_steinberg_audit,
    "lift-audit": exp_lift_audit,
    "ring-identities": exp_ring_identities,
    "bounds": exp_bounds,
}


# ---------------------------------------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, (float, np.floating)):
        return "%.12g" % value
    return str(value)


def rows_to_csv(rows: list[dict], deterministic: bool) -> str:
    buf = io.StringIO()
    buf.write("#schema=%d\n" % SCHEMA_VERSION)
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for row in rows:
        vals = dict(row)
        if deterministic:
            vals["runtime_ms"] = ""
        w.writerow([_fmt(vals[c]) for c in COLUMNS])
    return buf.getvalue()


@dataclass
class RunResult:
    rows: list[dict]
    csv_path: Path
    manifest_path: Path
    extra_paths: list[Path]

    @property
    def failed(self) -> bool:
        return any(r["status"] == "fail" for r in self.rows)


def run(config: ExperimentConfig) -> RunResult:
    """Run one experiment sweep and write ``<experiment>.csv`` and ``<experiment>.manifest.json``."""
    config.validate()
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    started = time.time()
    rows, last = [], started
    for row in RUNNERS[config.experiment](config):
        now = time.time()
        row["runtime_ms"] = int(round((now - last) * 1000))
        last = now
        rows.append(row)
    total = time.time() - started

    csv_path = out / ("%s.csv" % config.experiment)
    csv_path.write_text(rows_to_csv(rows, config.deterministic), encoding="utf-8")
    extra = []
    if config.experiment == "bounds":
        bpath = out / "bounds.json"
        bpath.write_text(headline_constants().to_json() + "\n", encoding="utf-8")
        extra.append(bpath)
    manifest = {
        "tool": "latticexp",
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S", time.gmtime(started)),
        "wall_clock_s": total,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "config": asdict(config),
        "row_runtime_ms": [r["runtime_ms"] for r in rows],
        "statuses": [r["status"] for r in rows],
    }
    manifest_path = out / ("%s.manifest.json" % config.experiment)
    manifest_path.write_text(json.dumps(manifest, indent=2, default=str) + "\n", encoding="utf-8")
    return RunResult(rows, csv_path, manifest_path, extra)


def threads_from_env(default: int = 1) -> int:
    raw = os.environ.get("LATTICEXP_THREADS")
    if not raw:
        return default
    value = int(raw)
    if value < 1:
        raise ValueError("LATTICEXP_THREADS must be >= 1")
    return value
