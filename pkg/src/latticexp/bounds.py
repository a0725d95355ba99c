"""Closed-form constants behind the Kazhdan and tau lower bounds.

M(k) bounds how far generators of the relative pair (EL_2 over a
k-generated ring, its Z^2 ideal) move almost-invariant vectors; M(k; p) and
M(k; p, q) are the analogues for block splits p + q, and M_d(k) is their
uniform bound for p + q <= d. Combining M_d(k) with a bounded number of GEMs
per group element gives the tau lower bound, converted to an expansion
constant by tau^2 / 4.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import FormulaRegression
from .spectral import tau_to_expansion

# stored, not recomputed: its derivation chain is only sketched
GAMMA2_TAU_LOWER = 1.0 / 2200.0

GEMS_BLOCK_DECOMPOSITION = 17
GEMS_GENERIC = 38
ELEMENTARY_PER_STEINBERG = 13
GEMS_PER_COMMUTATOR = 10


def m_constant(k: int) -> float:
    """M(0) = 2 + sqrt(10) and, for k >= 1, the square root of
    4 M0^2 + (6 sqrt k + 4) sqrt((M0 + sqrt k)^2 + k + 2 sqrt k) + 6 sqrt k M0 + 7k + 10 sqrt k + 2."""
    if k < 0:
        raise ValueError("k must be >= 0")
    m0 = 2.0 + math.sqrt(10.0)
    if k == 0:
        return m0
    rk = math.sqrt(k)
    inner = math.sqrt((m0 + rk) ** 2 + k + 2 * rk)
    return math.sqrt(4 * m0 * m0 + (6 * rk + 4) * inner + 6 * rk * m0 + 7 * k + 10 * rk + 2)


def m_p(k: int, p: int) -> float:
    """M(k; p) = sqrt(2 M^2 + 2 M sqrt(p - 2) + p - 2) with M = M(k)."""
    if p < 2:
        raise ValueError("p must be >= 2")
    m = m_constant(k)
    return math.sqrt(2 * m * m + 2 * m * math.sqrt(p - 2) + p - 2)


def m_pq(k: int, p: int, q: int) -> float:
    """M(k; p, q) = sqrt(2 Mp^2 + 2 Mp sqrt(q - 1) + q - 1) with Mp = M(k; p)."""
    if q < 1:
        raise ValueError("q must be >= 1")
    mp = m_p(k, p)
    return math.sqrt(2 * mp * mp + 2 * mp * math.sqrt(q - 1) + q - 1)


def md_constant(d: int, k: int) -> float:
    """M_d(k) = 2 M(k) + sqrt(3 d), a bound for M(k; p, q) whenever p + q <= d."""
    return 2 * m_constant(k) + math.sqrt(3 * d)


def gem_count(d: int, k: int) -> float:
    """Number of GEMs per group element, 77 + 39 k / d."""
    return 77 + 39 * k / d


@dataclass
class TauBounds:
    d: int
    k: int
    lower_exact: float
    lower_simplified: float
    upper: float

    @property
    def simplification_holds(self) -> bool:
        """Whether the simplified lower bound is really below the exact one."""
        return self.lower_exact >= self.lower_simplified

    def __iter__(self):
        return iter((self.lower_exact, self.lower_simplified, self.upper))


def tau_bounds_universal(d: int, k: int) -> TauBounds:
    """Lower bounds [sqrt2 (77 + 39k/d) M_d(k)]^-1 and [800 sqrt d (1 + (k/d)^1.5)]^-1,
    and the upper bound sqrt(2/d), for tau of SL_d over a k-generated ring.

    The simplified bound is reported as computed; ``simplification_holds``
    tells whether it is actually implied by the exact one.
    """
    if d < 3 or k < 0:
        raise ValueError("need d >= 3 and k >= 0")
    exact = 1.0 / (math.sqrt(2) * gem_count(d, k) * md_constant(d, k))
    simplified = 1.0 / (800 * math.sqrt(d) * (1 + (k / d) ** 1.5))
    return TauBounds(d, k, exact, simplified, math.sqrt(2.0 / d))


def s_family_pair(s: int) -> tuple[float, float]:
    """(1 / (sqrt2 (64 + 13 s) M(s + 2)), 1 / (400 (4 + s^1.5)))."""
    return 1.0 / (math.sqrt(2) * (64 + 13 * s) * m_constant(s + 2)), 1.0 / (400 * (4 + s**1.5))


@dataclass
class ConstantTable:
    params: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    formulas: dict = field(default_factory=dict)

    def add(self, name: str, value, formula: str) -> None:
        self.values[name] = value
        self.formulas[name] = formula

    def to_json(self) -> str:
        return json.dumps({"params": self.params, "values": self.values, "formulas": self.formulas}, indent=2)

    def to_text(self) -> str:
        width = max(len(k) for k in self.values)
        lines = []
        for name, value in self.values.items():
            shown = "%.6g" % value if isinstance(value, float) else str(value)
            lines.append("%-*s  %-14s  %s" % (width, name, shown, self.formulas[name]))
        return "\n".join(lines)


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise FormulaRegression(what)


def headline_constants(s: int | None = None, s_range: int = 50) -> ConstantTable:
    """The chained numeric inequalities behind the 28-element expanders.

    Raises :class:`FormulaRegression` if any of them fails, which would mean
    a formula was mistranscribed.
    """
    table = ConstantTable(params={"s": s, "s_range": s_range})
    for k in (0, 1, 2):
        table.add("M(%d)" % k, m_constant(k), "M(0)=2+sqrt10; M(k)^2 = 4M0^2+(6rk+4)sqrt((M0+rk)^2+k+2rk)+6rk M0+7k+10rk+2")
    _require(m_constant(0) < 5.17, "M(0) < 5.17")
    _require(m_constant(1) < 14.92, "M(1) < 14.92")
    _require(m_constant(2) < 16.47, "M(2) < 16.47")

    kazhdan = math.sqrt(2) / (2 * GEMS_BLOCK_DECOMPOSITION * m_constant(2))
    table.add("kazhdan_lower_28", kazhdan, "sqrt2 / (17 * 2 M(2))")
    table.add("one_over_400", 1 / 400, "1/400")
    _require(kazhdan >= 1 / 400, "sqrt2/(34 M(2)) >= 1/400")

    eps = tau_to_expansion(1 / 400)
    table.add("expansion_28", eps, "(1/400)^2 / 4")
    _require(abs(eps - 1.5625e-6) <= 1e-18 and eps >= 1.5e-6, "(1/400)^2/4 = 1.5625e-6 >= 1.5e-6")

    for t in range(s_range + 1):
        exact, simple = s_family_pair(t)
        _require(exact >= simple, "s-family inequality at s=%d" % t)
    s0_exact, s0_simple = s_family_pair(0)
    table.add("tau_lower_s0", s0_exact, "1/(sqrt2 * 64 * M(2))")
    table.add("tau_lower_s0_simplified", s0_simple, "1/(400*4) = 1/1600")
    if s is not None:
        exact, simple = s_family_pair(s)
        table.add("tau_lower_s", exact, "1/(sqrt2 (64+13s) M(s+2))")
        table.add("tau_lower_s_simplified", simple, "1/(400 (4+s^1.5))")
    table.add("gamma2_tau_lower", GAMMA2_TAU_LOWER, "stored value 1/2200")
    table.add("gems_per_element_d3_k0", gem_count(3, 0), "77+39k/d")
    table.add("gems_generic", GEMS_GENERIC, "stored count")
    table.add("elementary_per_steinberg", ELEMENTARY_PER_STEINBERG, "stored count")
    return table
