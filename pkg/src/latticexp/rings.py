"""Exact arithmetic over the finite rings used by the decompositions.

Three ring families are supported:

* :class:`IntegersMod` -- the residue ring Z/m;
* :class:`MatrixRing` -- Mat_l(F_p), the l x l matrices over a prime field;
* :class:`CyclicGroupAlgebra` -- F_p[C_N] = F_p[x]/(x^N - 1).

Elements are immutable :class:`RingElement` values carrying a canonical
payload (an int, or a tuple of ints), so equality and hashing are exact.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from . import modp
from .errors import NonUnit, NotUnimodular, PreconditionViolated, RingMismatch, Singular

# brute-force unit search and witness enumeration stop here
BRUTE_FORCE_LIMIT = 2**20


class Ring:
    """Common interface of the finite rings.

    Subclasses implement payload-level arithmetic; users work with
    :class:`RingElement` values produced by :meth:`element`, :attr:`zero`
    and :attr:`one`.
    """

    commutative: bool = True

    # payload level -------------------------------------------------------
    def _reduce(self, payload):
        raise NotImplementedError

    def _add(self, a, b):
        raise NotImplementedError

    def _neg(self, a):
        raise NotImplementedError

    def _mul(self, a, b):
        raise NotImplementedError

    def _is_unit(self, a) -> bool:
        raise NotImplementedError

    def _inv(self, a):
        raise NotImplementedError

    def _zero(self):
        raise NotImplementedError

    def _one(self):
        raise NotImplementedError

    def _random(self, rng: np.random.Generator):
        raise NotImplementedError

    def _payloads(self) -> Iterator:
        raise NotImplementedError

    @property
    def cardinality(self) -> int:
        raise NotImplementedError

    # element level -------------------------------------------------------
    def element(self, value) -> "RingElement":
        return RingElement(self, self._reduce(value))

    def __call__(self, value) -> "RingElement":
        return self.element(value)

    @property
    def zero(self) -> "RingElement":
        return RingElement(self, self._zero())

    @property
    def one(self) -> "RingElement":
        return RingElement(self, self._one())

    def random(self, rng: np.random.Generator) -> "RingElement":
        return RingElement(self, self._random(rng))

    def elements(self) -> Iterator["RingElement"]:
        """Iterate over every element (only sensible for small rings)."""
        for payload in self._payloads():
            yield RingElement(self, payload)

    def units(self) -> list["RingElement"]:
        return [x for x in self.elements() if x.is_unit()]

    def is_left_unimodular(self, a: "RingElement", b: "RingElement") -> bool:
        """Whether the left ideal Ra + Rb is the whole ring."""
        raise NotImplementedError


@dataclass(frozen=True, eq=True)
class RingElement:
    ring: Ring
    payload: object

    def _check(self, other: "RingElement") -> None:
        if not isinstance(other, RingElement):
            raise TypeError("expected RingElement, got %r" % type(other).__name__)
        if other.ring != self.ring:
            raise RingMismatch("%s vs %s" % (self.ring, other.ring))

    def _coerce(self, other) -> "RingElement":
        if isinstance(other, (int, np.integer)):
            return self.ring.element(int(other) * self.ring._one_scalar())
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, self.ring._add(self.payload, other.payload))

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, self.ring._neg(self.payload))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, self.ring._mul(self.payload, other.payload))

    def __rmul__(self, other):
        other = self._coerce(other)
        return RingElement(self.ring, self.ring._mul(other.payload, self.payload))

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.ring.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return self.payload == self.ring._zero()

    def is_one(self) -> bool:
        return self.payload == self.ring._one()

    def is_unit(self) -> bool:
        return self.ring._is_unit(self.payload)

    def inverse(self) -> "RingElement":
        if not self.ring._is_unit(self.payload):
            raise NonUnit("%r is not a unit of %s" % (self.payload, self.ring))
        return RingElement(self.ring, self.ring._inv(self.payload))

    def to_json(self):
        if isinstance(self.payload, tuple):
            return list(self.payload)
        return self.payload

    def __repr__(self):
        return "%s(%r)" % (self.ring, self.payload)


# ---------------------------------------------------------------------------
# Z/m


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


@dataclass(frozen=True)
class IntegersMod(Ring):
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise PreconditionViolated("modulus must be >= 2, got %d" % self.m)

    def __str__(self):
        return "Z/%d" % self.m

    @property
    def is_field(self) -> bool:
        return modp.is_prime(self.m)

    @property
    def cardinality(self) -> int:
        return self.m

    def _one_scalar(self):
        return 1

    def _reduce(self, value):
        if isinstance(value, RingElement):
            value = value.payload
        return int(value) % self.m

    def _zero(self):
        return 0

    def _one(self):
        return 1 % self.m

    def _add(self, a, b):
        return (a + b) % self.m

    def _neg(self, a):
        return (-a) % self.m

    def _mul(self, a, b):
        return (a * b) % self.m

    def _is_unit(self, a):
        return math.gcd(a, self.m) == 1

    def _inv(self, a):
        return pow(a, -1, self.m)

    def _random(self, rng):
        return int(rng.integers(0, self.m))

    def _payloads(self):
        return iter(range(self.m))

    def is_left_unimodular(self, a, b):
        return math.gcd(math.gcd(a.payload, b.payload), self.m) == 1

    def ideal_generator(self, elems: Sequence[RingElement]) -> tuple[RingElement, list[RingElement]]:
        """Return ``(g, coeffs)`` with ``g = sum(c*e)`` generating the ideal of ``elems``."""
        g, coeffs = 0, []
        for e in elems:
            d, x, y = _ext_gcd(g, e.payload)
            coeffs = [c * x for c in coeffs] + [y]
            g = d
        return self.element(g), [self.element(c) for c in coeffs]


# ---------------------------------------------------------------------------
# F_p[x]/(x^N - 1)


def _poly_trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def _poly_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    f = _poly_trim([c % p for c in f])
    g = _poly_trim([c % p for c in g])
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(g[-1], -1, p)
    q = [0] * max(len(f) - len(g) + 1, 0)
    r = f[:]
    while len(r) >= len(g):
        shift = len(r) - len(g)
        c = (r[-1] * inv_lead) % p
        q[shift] = c
        for i, gc in enumerate(g):
            r[shift + i] = (r[shift + i] - c * gc) % p
        _poly_trim(r)
    return q, r


def _poly_mul(f: list[int], g: list[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _poly_trim(out)


def _poly_sub(f: list[int], g: list[int], p: int) -> list[int]:
    n = max(len(f), len(g))
    f = f + [0] * (n - len(f))
    g = g + [0] * (n - len(g))
    return _poly_trim([(a - b) % p for a, b in zip(f, g)])


def _poly_ext_gcd(f: list[int], g: list[int], p: int):
    """Monic gcd d and cofactors (s, t) with s*f + t*g = d over F_p."""
    r0, r1 = _poly_trim([c % p for c in f]), _poly_trim([c % p for c in g])
    s0, s1, t0, t1 = [1], [], [], [1]
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1, p), p)
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1, p), p)
    if not r0:
        return [], s0, t0
    inv = pow(r0[-1], -1, p)
    scale = lambda h: [(c * inv) % p for c in h]  # noqa: E731
    return scale(r0), scale(s0), scale(t0)


@dataclass(frozen=True)
class CyclicGroupAlgebra(Ring):
    """The group algebra F_p[C_N], stored as coefficient vectors of length N."""

    p: int
    N: int

    def __post_init__(self):
        if not modp.is_prime(self.p):
            raise PreconditionViolated("p must be prime, got %d" % self.p)
        if self.N < 1:
            raise PreconditionViolated("N must be >= 1, got %d" % self.N)

    def __str__(self):
        return "F%d[C%d]" % (self.p, self.N)

    @property
    def cardinality(self) -> int:
        return self.p**self.N

    @cached_property
    def _modulus(self) -> list[int]:
        # x^N - 1
        return [(-1) % self.p] + [0] * (self.N - 1) + [1]

    def _one_scalar(self):
        return 1

    def _reduce(self, value):
        if isinstance(value, RingElement):
            value = value.payload
        if isinstance(value, (int, np.integer)):
            value = [int(value)]
        coeffs = [0] * self.N
        for i, c in enumerate(value):
            coeffs[i % self.N] = (coeffs[i % self.N] + int(c)) % self.p
        return tuple(coeffs)

    def x(self) -> RingElement:
        return self.element([0, 1]) if self.N > 1 else self.one

    def _zero(self):
        return (0,) * self.N

    def _one(self):
        return (1 % self.p,) + (0,) * (self.N - 1)

    def _add(self, a, b):
        return tuple((u + v) % self.p for u, v in zip(a, b))

    def _neg(self, a):
        return tuple((-u) % self.p for u in a)

    def _mul(self, a, b):
        out = [0] * self.N
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    if v:
                        k = (i + j) % self.N
                        out[k] = (out[k] + u * v) % self.p
        return tuple(out)

    def _is_unit(self, a):
        d, _, _ = _poly_ext_gcd(list(a), self._modulus, self.p)
        return d == [1]

    def _inv(self, a):
        d, s, _ = _poly_ext_gcd(list(a), self._modulus, self.p)
        if d != [1]:
            raise NonUnit("%r is not a unit of %s" % (a, self))
        return self._reduce(s)

    def _random(self, rng):
        return tuple(int(c) for c in rng.integers(0, self.p, size=self.N))

    def _payloads(self):
        return itertools.product(range(self.p), repeat=self.N)

    def _gcd_with_modulus(self, elems: Sequence[RingElement]):
        g, coeffs = list(self._modulus), []
        for e in elems:
            d, s, t = _poly_ext_gcd(g, list(e.payload), self.p)
            coeffs = [_poly_mul(c, s, self.p) for c in coeffs] + [t]
            g = d
        return g, coeffs

    def is_left_unimodular(self, a, b):
        g, _ = self._gcd_with_modulus([a, b])
        return g == [1]

    def ideal_generator(self, elems: Sequence[RingElement]) -> tuple[RingElement, list[RingElement]]:
        """Return ``(g, coeffs)`` with ``g = sum(c*e)`` generating the ideal of ``elems``.

        F_p[x]/(x^N-1) is a principal ideal ring: the ideal is generated by
        gcd(elems, x^N - 1), and the Bezout cofactors give the coefficients.
        """
        g, coeffs = self._gcd_with_modulus(elems)
        return self.element(g), [self.element(c) for c in coeffs]


# ---------------------------------------------------------------------------
# Mat_l(F_p)


@dataclass(frozen=True)
class MatrixRing(Ring):
    """Mat_l(F_p), non-commutative for l >= 2."""

    l: int
    p: int

    def __post_init__(self):
        if self.l < 1:
            raise PreconditionViolated("l must be >= 1, got %d" % self.l)
        if not modp.is_prime(self.p):
            raise PreconditionViolated("matrix ring base modulus must be prime, got %d" % self.p)

    @property
    def commutative(self) -> bool:  # type: ignore[override]
        return self.l == 1

    @property
    def base(self) -> IntegersMod:
        return IntegersMod(self.p)

    def __str__(self):
        return "Mat%d(F%d)" % (self.l, self.p)

    @property
    def cardinality(self) -> int:
        return self.p ** (self.l * self.l)

    def _one_scalar(self):
        return np.eye(self.l, dtype=np.int64)

    def _reduce(self, value):
        if isinstance(value, RingElement):
            value = value.payload
        arr = np.asarray(value, dtype=np.int64)
        if arr.ndim == 0:
            arr = arr * np.eye(self.l, dtype=np.int64)
        arr = arr.reshape(self.l, self.l) % self.p
        return tuple(int(v) for v in arr.ravel())

    def to_array(self, a: RingElement | tuple) -> np.ndarray:
        payload = a.payload if isinstance(a, RingElement) else a
        return np.array(payload, dtype=np.int64).reshape(self.l, self.l)

    def _zero(self):
        return (0,) * (self.l * self.l)

    def _one(self):
        return self._reduce(np.eye(self.l, dtype=np.int64))

    def _add(self, a, b):
        return tuple((u + v) % self.p for u, v in zip(a, b))

    def _neg(self, a):
        return tuple((-u) % self.p for u in a)

    def _mul(self, a, b):
        return self._reduce(self.to_array(a) @ self.to_array(b))

    def _is_unit(self, a):
        return modp.det(self.to_array(a), self.p) != 0

    def _inv(self, a):
        return self._reduce(modp.inv(self.to_array(a), self.p))

    def _random(self, rng):
        return tuple(int(c) for c in rng.integers(0, self.p, size=self.l * self.l))

    def _payloads(self):
        return itertools.product(range(self.p), repeat=self.l * self.l)

    def is_left_unimodular(self, a, b):
        # Ra + Rb = {x a + y b} = R  iff  the stacked 2l x l matrix [a; b] has rank l
        stacked = np.vstack([self.to_array(a), self.to_array(b)])
        return modp.rank(stacked, self.p) == self.l


# ---------------------------------------------------------------------------
# generic operations


def scalar_arith(op: str, a: RingElement, b: RingElement | None = None):
    """Dispatch one of ``add, mul, neg, inv, is_unit`` on ring elements."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inverse()
    if op == "is_unit":
        return a.is_unit()
    raise ValueError("unknown op %r" % op)


def _matrix_witness(ring: MatrixRing, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """A t with a + t b invertible, given that [a; b] has full column rank.

    Writing K = ker(a) and U for a complement of im(a), any t that maps
    b(K) bijectively onto U and vanishes on a complement of b(K) works:
    (a + t b)v splits into a v in im(a) plus t b v in U, and both vanish
    only for v = 0.
    """
    l, p = ring.l, ring.p
    kernel = modp.nullspace(a, p)  # rows span ker(a)
    k = kernel.shape[0]
    if k == 0:
        return np.zeros((l, l), dtype=np.int64)
    image_cols = a.T  # rows are the columns of a
    u_basis = modp.complement_basis(image_cols, l, p)  # k vectors spanning a complement of im(a)
    bk = (b @ kernel.T) % p  # columns: images of the kernel basis, linearly independent
    rest = modp.complement_basis(bk.T, l, p)
    # t @ [bk | rest] = [u_basis^T | 0]
    src = np.concatenate([bk, rest.T], axis=1) % p
    dst = np.concatenate([u_basis.T, np.zeros((l, l - k), dtype=np.int64)], axis=1)
    return (dst @ modp.inv(src, p)) % p


def stable_range_witness(
    a: RingElement, b: RingElement, rng: np.random.Generator | None = None, trials: int = 64
) -> RingElement:
    """Return t with ``a + t*b`` a unit, for a left-unimodular pair (a, b).

    Finite rings have stable range one, so such a t always exists. For Z/m
    and F_p[C_N] the ring is scanned; for Mat_l(F_p) random candidates are
    tried first and an explicit linear-algebra construction is the fallback.
    """
    a._check(b)
    ring = a.ring
    if not ring.is_left_unimodular(a, b):
        raise NotUnimodular("Ra + Rb != R for a=%r, b=%r" % (a.payload, b.payload))
    if a.is_unit():
        return ring.zero
    rng = rng if rng is not None else np.random.default_rng(0)

    t = None
    if isinstance(ring, IntegersMod):
        t = next(ring.element(c) for c in range(ring.m) if ring._is_unit((a.payload + c * b.payload) % ring.m))
    else:
        for _ in range(trials):
            cand = ring.random(rng)
            if (a + cand * b).is_unit():
                t = cand
                break
        if t is None and isinstance(ring, MatrixRing):
            t = ring.element(_matrix_witness(ring, ring.to_array(a), ring.to_array(b)))
        elif t is None:
            if ring.cardinality > BRUTE_FORCE_LIMIT:
                raise RuntimeError("ring %s too large for exhaustive witness search" % ring)
            t = next((c for c in ring.elements() if (a + c * b).is_unit()), None)
    if t is None or not (a + t * b).is_unit():
        raise RuntimeError("stable range witness search failed on %s (finite rings have stable range 1)" % ring)
    return t


# ---------------------------------------------------------------------------
# matrices over a ring


class Mat:
    """Square matrix over a :class:`Ring`, immutable.

    Entries are :class:`RingElement` values of one ring. For Mat_l(F_p)
    entries, inversion flattens to an (n*l) x (n*l) matrix over F_p.
    """

    __slots__ = ("ring", "rows")

    def __init__(self, ring: Ring, rows):
        rows = tuple(tuple(ring.element(e) if not isinstance(e, RingElement) else e for e in r) for r in rows)
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise ValueError("matrix must be square with dimension >= 1")
        for r in rows:
            for e in r:
                if e.ring != ring:
                    raise RingMismatch("entry over %s in matrix over %s" % (e.ring, ring))
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> RingElement:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Mat) and self.ring == other.ring and self.rows == other.rows

    def __hash__(self):
        return hash((self.ring, self.rows))

    def __repr__(self):
        return "Mat(%s, %s)" % (self.ring, [[e.to_json() for e in r] for r in self.rows])

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "Mat":
        return cls(ring, [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)])

    @classmethod
    def elementary(cls, ring: Ring, n: int, i: int, j: int, r) -> "Mat":
        """e_ij(r) = Id + r e_ij with 1-based indices."""
        from .errors import InvalidLetter

        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise InvalidLetter("need distinct indices in [1, %d], got (%d, %d)" % (n, i, j))
        rows = [[ring.one if a == b else ring.zero for b in range(n)] for a in range(n)]
        rows[i - 1][j - 1] = ring.element(r)
        return cls(ring, rows)

    @classmethod
    def from_array(cls, ring: Ring, arr) -> "Mat":
        arr = np.asarray(arr)
        return cls(ring, [[ring.element(v) for v in row] for row in arr.tolist()])

    def to_array(self) -> np.ndarray:
        """Integer array of payloads (scalar rings only)."""
        return np.array([[e.payload for e in r] for r in self.rows], dtype=np.int64)

    def _check(self, other: "Mat"):
        if other.ring != self.ring:
            raise RingMismatch("%s vs %s" % (self.ring, other.ring))
        if other.n != self.n:
            raise ValueError("dimension mismatch %d vs %d" % (self.n, other.n))

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        n = self.n
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = self.ring.zero
                for k in range(n):
                    acc = acc + self.rows[i][k] * other.rows[k][j]
                row.append(acc)
            out.append(row)
        return Mat(self.ring, out)

    def __pow__(self, k: int) -> "Mat":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Mat.identity(self.ring, self.n), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def det(self) -> RingElement:
        """Leibniz determinant; commutative rings only."""
        if not self.ring.commutative:
            raise TypeError("determinant needs a commutative ring, got %s" % self.ring)
        if isinstance(self.ring, IntegersMod) and self.ring.is_field:
            return self.ring.element(modp.det(self.to_array(), self.ring.m))
        n = self.n
        total = self.ring.zero
        for perm in itertools.permutations(range(n)):
            sign = _perm_sign(perm)
            term = self.ring.one
            for i, j in enumerate(perm):
                term = term * self.rows[i][j]
            total = total + term if sign > 0 else total - term
        return total

    def flatten(self) -> np.ndarray:
        """(n*l) x (n*l) array over F_p for matrices with Mat_l(F_p) entries."""
        if not isinstance(self.ring, MatrixRing):
            return self.to_array()
        return np.block([[self.ring.to_array(e) for e in r] for r in self.rows])

    @classmethod
    def unflatten(cls, ring: MatrixRing, arr: np.ndarray) -> "Mat":
        l = ring.l
        n = arr.shape[0] // l
        return cls(ring, [[ring.element(arr[i * l:(i + 1) * l, j * l:(j + 1) * l]) for j in range(n)] for i in range(n)])

    def inverse(self) -> "Mat":
        if isinstance(self.ring, MatrixRing):
            try:
                return Mat.unflatten(self.ring, modp.inv(self.flatten(), self.ring.p))
            except Singular:
                raise Singular("block matrix is singular") from None
        d = self.det()
        if not d.is_unit():
            raise Singular("determinant %r is not a unit" % (d.payload,))
        dinv = d.inverse()
        n = self.n
        if n == 1:
            return Mat(self.ring, [[dinv]])
        adj = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = Mat(self.ring, [[self.rows[a][b] for b in range(n) if b != j] for a in range(n) if a != i])
                c = minor.det()
                adj[j][i] = (c if (i + j) % 2 == 0 else -c) * dinv
        return Mat(self.ring, adj)

    def is_identity(self) -> bool:
        return self == Mat.identity(self.ring, self.n)


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def matrix_arith(op: str, a: Mat, b: Mat | int | None = None):
    """Dispatch one of ``mul, inv, det, pow`` on :class:`Mat` values."""
    if op == "mul":
        return a @ b
    if op == "inv":
        return a.inverse()
    if op == "det":
        return a.det()
    if op == "pow":
        return a ** int(b)
    raise ValueError("unknown op %r" % op)


def parse_ring(text: str) -> Ring:
    """Inverse of ``str(ring)``: ``Z/6``, ``Mat2(F3)``, ``F2[C3]``."""
    import re

    if m := re.fullmatch(r"Z/(\d+)", text):
        return IntegersMod(int(m.group(1)))
    if m := re.fullmatch(r"Mat(\d+)\(F(\d+)\)", text):
        return MatrixRing(int(m.group(1)), int(m.group(2)))
    if m := re.fullmatch(r"F(\d+)\[C(\d+)\]", text):
        return CyclicGroupAlgebra(int(m.group(1)), int(m.group(2)))
    raise ValueError("unrecognized ring %r" % text)
