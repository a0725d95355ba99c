"""Ring-identity audits in Mat_l(F_p) for the dense-subring construction.

With A the signed cyclic shift, Ā its inverse, C = e_12 and D = e_21, the
bracket [C, Ā^n C A^n] is nonzero exactly when l divides n - 1 or n + 1.
The audit checks this criterion together with the four bracket identities
that kill C and D modulo the ideal generated by A^N - 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import modp
from .errors import PreconditionViolated


def signed_cycle(l: int, p: int) -> np.ndarray:
    """A = sum_{i<l} e_{i,i+1} + (-1)^(l-1) e_{l,1} over F_p (determinant 1)."""
    a = np.zeros((l, l), dtype=np.int64)
    for i in range(l - 1):
        a[i, i + 1] = 1
    a[l - 1, 0] = (-1) ** (l - 1) % p
    return a


def matrix_unit(l: int, i: int, j: int) -> np.ndarray:
    """e_ij with 1-based indices."""
    e = np.zeros((l, l), dtype=np.int64)
    e[i - 1, j - 1] = 1
    return e


def ring_bracket(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    return (x @ y - y @ x) % p


@dataclass
class IdentityAudit:
    l: int
    N: int
    p: int
    identities: dict[str, bool] = field(default_factory=dict)
    swapped_order: dict[str, bool] = field(default_factory=dict)
    vanishing_checked: list[int] = field(default_factory=list)
    vanishing_mismatches: list[int] = field(default_factory=list)

    @property
    def identities_hold(self) -> bool:
        return all(self.identities.values())

    @property
    def vanishing_criterion_holds(self) -> bool:
        return not self.vanishing_mismatches

    @property
    def passed(self) -> bool:
        return self.identities_hold and self.vanishing_criterion_holds

    def lines(self) -> list[str]:
        out = ["%-32s %s" % (k, "pass" if v else "FAIL") for k, v in self.identities.items()]
        out += ["%-32s %s (swapped bracket order, informational)" % (k, "pass" if v else "FAIL") for k, v in self.swapped_order.items()]
        out.append(
            "%-32s %s" % ("vanishing iff l | n-1 or n+1", "pass" if self.vanishing_criterion_holds else "FAIL %s" % self.vanishing_mismatches)
        )
        return out


def audit_ring_identities(l: int, N: int, p: int) -> IdentityAudit:
    """Check the bracket identities for (l, N, p) and the vanishing criterion for l.

    The D-identity is checked as [ĀCA, [ĀDA, D]] = D, the transpose of the
    C-identity; the bracket order [[ĀDA, D], ĀCA] equals -D and is reported
    separately under ``swapped_order``.
    """
    if not modp.is_prime(p):
        raise PreconditionViolated("p must be prime, got %d" % p)
    if N < 1 or l <= 2 * N:
        raise PreconditionViolated("need N >= 1 and l > 2N, got l=%d N=%d" % (l, N))

    A = signed_cycle(l, p)
    Ab = modp.inv(A, p)
    C = matrix_unit(l, 1, 2)
    D = matrix_unit(l, 2, 1)
    conj = lambda x, k: modp.matpow(Ab, k, p) @ x @ modp.matpow(A, k, p) % p  # noqa: E731
    br = lambda x, y: ring_bracket(x, y, p)  # noqa: E731

    report = IdentityAudit(l, N, p)
    report.identities["[[C,ĀCA],ĀDA] = C"] = bool(np.array_equal(br(br(C, conj(C, 1)), conj(D, 1)), C))
    report.identities["[C,Ā^(N+1)CA^(N+1)] = 0"] = not br(C, conj(C, N + 1)).any()
    report.identities["[ĀCA,[ĀDA,D]] = D"] = bool(np.array_equal(br(conj(C, 1), br(conj(D, 1), D)), D))
    report.identities["[D,Ā^(N+1)DA^(N+1)] = 0"] = not br(D, conj(D, N + 1)).any()
    report.swapped_order["[[ĀDA,D],ĀCA] = D"] = bool(np.array_equal(br(br(conj(D, 1), D), conj(C, 1)), D))

    for n in range(0, 3 * l + 1):
        nonzero = bool(br(C, conj(C, n)).any())
        predicted = (n - 1) % l == 0 or (n + 1) % l == 0
        report.vanishing_checked.append(n)
        if nonzero != predicted:
            report.vanishing_mismatches.append(n)
    return report
