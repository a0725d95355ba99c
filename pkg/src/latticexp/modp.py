"""Dense linear algebra over a prime field, on int64 numpy arrays.

All routines take and return arrays with entries reduced into ``[0, p)``.
Entries stay below ``p`` so products fit comfortably in int64 for the
primes this package handles (``p < 256``).
"""

from __future__ import annotations

import numpy as np

from .errors import Singular


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def as_modp(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    return (a @ b) % p


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = as_modp(a, p).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        m = (m - np.outer(col, m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: np.ndarray, p: int) -> int:
    return len(rref(a, p)[1])


def det(a: np.ndarray, p: int) -> int:
    m = as_modp(a, p).copy()
    n = m.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(m[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            m[[c, i]] = m[[i, c]]
            d = -d
        piv = int(m[c, c])
        d = (d * piv) % p
        inv = pow(piv, -1, p)
        below = m[c + 1:, c].copy()
        if below.any():
            m[c + 1:] = (m[c + 1:] - np.outer(below * inv % p, m[c])) % p
    return d % p


def inv(a: np.ndarray, p: int) -> np.ndarray:
    n = a.shape[0]
    aug = np.concatenate([as_modp(a, p), identity(n)], axis=1)
    red, pivots = rref(aug, p)
    if pivots[:n] != list(range(n)):
        raise Singular("matrix is singular mod %d" % p)
    return red[:, n:]


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Basis of ``{x : a @ x = 0}`` as the rows of the returned array."""
    a = as_modp(a, p)
    cols = a.shape[1]
    red, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-red[r, f]) % p
    return basis


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of ``a @ x = b`` (b a vector), or None if inconsistent."""
    a = as_modp(a, p)
    b = as_modp(b, p).reshape(-1, 1)
    cols = a.shape[1]
    red, pivots = rref(np.concatenate([a, b], axis=1), p)
    if cols in pivots:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for r, pc in enumerate(pivots):
        x[pc] = red[r, cols]
    return x


def complement_basis(vectors: np.ndarray, dim: int, p: int) -> np.ndarray:
    """Standard basis vectors completing the row span of ``vectors`` to F_p^dim."""
    vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, dim)
    _, pivots = rref(vectors, p) if vectors.size else (None, [])
    free = [c for c in range(dim) if c not in pivots]
    out = np.zeros((len(free), dim), dtype=np.int64)
    for k, c in enumerate(free):
        out[k, c] = 1
    return out


def random_sl(n: int, p: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform sample from SL_n(F_p): uniform GL sample with row 0 rescaled."""
    while True:
        m = rng.integers(0, p, size=(n, n), dtype=np.int64)
        d = det(m, p)
        if d:
            m[0] = (m[0] * pow(d, -1, p)) % p
            return m


def sl_order(n: int, q: int) -> int:
    """Order of SL_n(F_q)."""
    order = q ** (n * (n - 1) // 2)
    for i in range(2, n + 1):
        order *= q**i - 1
    return order


def matpow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    if k < 0:
        return matpow(inv(a, p), -k, p)
    result = identity(a.shape[0])
    base = as_modp(a, p)
    while k:
        if k & 1:
            result = (result @ base) % p
        base = (base @ base) % p
        k >>= 1
    return result
