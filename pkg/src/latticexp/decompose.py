"""Constructive word decompositions.

* :func:`gauss_elementary_decompose` -- elementary reduction over a finite
  commutative ring, using stable-range pivots;
* :func:`gem_reduce_3block` -- reduction of g in SL_3l(F_p), viewed as a
  3 x 3 block matrix over Mat_l(F_p), to diag(h, Id, Id) by 7 GEMs;
* :func:`gem_identities` -- the antidiagonal, diagonal-pair and commutator
  identities written as GEM words;
* :func:`commutator_search` and :func:`full_gem_decompose` -- writing h as a
  commutator and finishing the GEM decomposition;
* :func:`steinberg_word` -- Steinberg symbols as elementary words;
* :func:`lift_commutators` -- solving g = [a, x][b, y] in a congruence
  kernel of SL_s(Z/p^k) level by level.

Commutators are [x, y] = x^-1 y^-1 x y throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import modp
from .errors import (
    BadGenerators,
    NonUnit,
    PreconditionViolated,
    SearchFailed,
    Singular,
    Unsupported,
)
from .rings import CyclicGroupAlgebra, IntegersMod, Mat, MatrixRing, Ring, RingElement, stable_range_witness
from .words import ElementaryLetter, GemLetter, Word, expand_word

GAUSS_BOUND = {3: 11}
BLOCK_REDUCTION_BOUND = 8
COMMUTATOR_GEMS = 10
STEINBERG_BOUND = 13
FULL_GEM_BOUND = 18


@dataclass
class DecompositionResult:
    """``input = eval(word) . residual . eval(suffix)``.

    ``suffix`` is empty except for the elementary reduction, whose right
    letters are kept apart so that a non-trivial diagonal residual sits in
    the middle.
    """

    word: Word
    residual: Mat | np.ndarray
    method: str
    suffix: Word | None = None
    stats: dict = field(default_factory=dict)

    @property
    def letter_count(self) -> int:
        return len(self.word) + (len(self.suffix) if self.suffix is not None else 0)

    @property
    def gem_count(self) -> int:
        return self.word.gem_count + (self.suffix.gem_count if self.suffix is not None else 0)

    def full_word(self) -> Word:
        return self.word + self.suffix if self.suffix is not None else self.word

    def reconstruct(self):
        if isinstance(self.residual, Mat):
            out = self.word.evaluate() @ self.residual
            if self.suffix is not None:
                out = out @ self.suffix.evaluate()
            return out
        p = self.word.ring.p
        out = self.word.evaluate_array() @ self.residual % p
        if self.suffix is not None:
            out = out @ self.suffix.evaluate_array() % p
        return out


# ---------------------------------------------------------------------------
# elementary reduction over commutative rings


def gauss_elementary_decompose(g: Mat, rng: np.random.Generator | None = None) -> DecompositionResult:
    """Reduce g to e_11(a) by row and column operations.

    At level k = d, ..., 2 the k-th column of the leading k x k block is
    unimodular; a stable-range pivot makes its top entry u a unit, one more
    row operation puts 1 on the diagonal, and row/column operations clear
    the rest of column and row k. That uses at most 2k - 1 left and k - 1
    right letters, so d^2 - 1 and (d^2 - d)/2 in total.
    """
    ring = g.ring
    if not isinstance(ring, (IntegersMod, CyclicGroupAlgebra)):
        raise Unsupported("elementary reduction needs Z/m or F_p[C_N], got %s" % ring)
    d = g.n
    if d < 2:
        raise PreconditionViolated("need d >= 2")
    if not g.det().is_unit():
        raise Singular("g is not invertible over %s" % ring)
    G = [list(row) for row in g.rows]
    left: list[ElementaryLetter] = []
    right: list[ElementaryLetter] = []

    def row_op(i, j, r):
        # G <- e_ij(r) G : row i += r * row j
        if r.is_zero():
            return
        G[i] = [x + r * y for x, y in zip(G[i], G[j])]
        left.append(ElementaryLetter(i + 1, j + 1, r))

    def col_op(i, j, r):
        # G <- G e_ij(r) : col j += col i * r
        if r.is_zero():
            return
        for row in G:
            row[j] = row[j] + row[i] * r
        right.append(ElementaryLetter(i + 1, j + 1, r))

    for k in range(d - 1, 0, -1):
        # make G[0][k] a unit
        if not G[0][k].is_unit():
            b, coeffs = ring.ideal_generator([G[i][k] for i in range(1, k + 1)])
            t = stable_range_witness(G[0][k], b, rng)
            for i, c in zip(range(1, k + 1), coeffs):
                row_op(0, i, t * c)
        u = G[0][k]
        row_op(k, 0, (ring.one - G[k][k]) * u.inverse())
        for i in range(k):
            row_op(i, k, -G[i][k])
        for j in range(k):
            col_op(k, j, -G[k][j])

    residual = Mat.identity(ring, d)
    rows = [list(r) for r in residual.rows]
    rows[0][0] = G[0][0]
    residual = Mat(ring, rows)
    word = Word([x.inverse() for x in left], d, ring)
    suffix = Word([x.inverse() for x in reversed(right)], d, ring)
    return DecompositionResult(word, residual, "gauss", suffix, {"left": len(left), "right": len(right)})


# ---------------------------------------------------------------------------
# GEM reduction in SL_3(Mat_l(F_p))


def _blocks(g: np.ndarray, l: int) -> list[list[np.ndarray]]:
    return [[g[i * l:(i + 1) * l, j * l:(j + 1) * l] for j in range(3)] for i in range(3)]


def _stack_generator(rows: np.ndarray, l: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """For the stacked (m l) x l matrix ``rows`` return (b, C) with b = C rows
    and b having the same row space as ``rows``, so Mat_l b is the left ideal
    generated by the blocks."""
    _, pivots = modp.rref(rows.T, p)  # pivot columns of rows^T = independent rows
    C = np.zeros((l, rows.shape[0]), dtype=np.int64)
    for k, r in enumerate(pivots):
        C[k, r] = 1
    return C @ rows % p, C


def _unit_pivot(a: np.ndarray, stacked: np.ndarray, ring: MatrixRing, rng) -> np.ndarray:
    """X (l x ml) with a + X stacked invertible, via a stable-range witness."""
    l, p = ring.l, ring.p
    if modp.det(a, p):
        return np.zeros((l, stacked.shape[0]), dtype=np.int64)
    b, C = _stack_generator(stacked, l, p)
    t = ring.to_array(stable_range_witness(ring.element(a), ring.element(b), rng))
    return t @ C % p


class _GemRecorder:
    """Apply GEMs by left multiplication and remember them."""

    def __init__(self, g: np.ndarray, ring: MatrixRing):
        self.g = g % ring.p
        self.ring = ring
        self.letters: list[GemLetter] = []

    def apply(self, side: str, q1: int, q2: int, payload: np.ndarray):
        payload = payload % self.ring.p
        if not payload.any():
            return
        gem = GemLetter.from_array(side, q1, q2, self.ring, payload)
        self.g = gem.to_array() @ self.g % self.ring.p
        self.letters.append(gem)


def gem_reduce_3block(g: np.ndarray, l: int, p: int, rng: np.random.Generator | None = None) -> tuple[Word, np.ndarray]:
    """Write g = eval(gems) . diag(h, Id, Id) with at most 7 GEMs.

    Phase 1 clears the third block column with one stable-range pivot
    (upper (1,2)), a lower (1,2) GEM and an upper (2,1) GEM. Phase 2 does the
    same for the second block column inside the leading 2 x 2 block, and a
    final lower (1,2) GEM clears the first block column below h.
    """
    ring = MatrixRing(l, p)
    g = np.asarray(g, dtype=np.int64) % p
    if g.shape != (3 * l, 3 * l):
        raise ValueError("expected a %d x %d matrix" % (3 * l, 3 * l))
    if modp.det(g, p) != 1:
        raise PreconditionViolated("g is not in SL_%d(F_%d)" % (3 * l, p))
    I = np.eye(l, dtype=np.int64)
    Z = np.zeros((l, l), dtype=np.int64)
    rec = _GemRecorder(g, ring)

    # phase 1: third block column -> (0, 0, I)
    B = _blocks(rec.g, l)
    X = _unit_pivot(B[0][2], np.vstack([B[1][2], B[2][2]]), ring, rng)
    rec.apply("upper", 1, 2, X)
    B = _blocks(rec.g, l)
    u = modp.inv(B[0][2], p)
    rec.apply("lower", 1, 2, np.vstack([-B[1][2] @ u, (I - B[2][2]) @ u]))
    B = _blocks(rec.g, l)
    rec.apply("upper", 2, 1, np.vstack([-B[0][2], Z]))

    # phase 2: second block column -> (0, I, 0)
    B = _blocks(rec.g, l)
    x = _unit_pivot(B[0][1], B[1][1], ring, rng)
    rec.apply("upper", 1, 2, np.hstack([x, Z]))
    B = _blocks(rec.g, l)
    u = modp.inv(B[0][1], p)
    rec.apply("lower", 1, 2, np.vstack([(I - B[1][1]) @ u, -B[2][1] @ u]))
    B = _blocks(rec.g, l)
    rec.apply("upper", 1, 2, np.hstack([-B[0][1], Z]))

    # phase 3: first block column -> (h, 0, 0)
    B = _blocks(rec.g, l)
    hinv = modp.inv(B[0][0], p)
    rec.apply("lower", 1, 2, np.vstack([-B[1][0] @ hinv, -B[2][0] @ hinv]))

    h = _blocks(rec.g, l)[0][0].copy()
    expected = np.eye(3 * l, dtype=np.int64)
    expected[:l, :l] = h
    if not np.array_equal(rec.g, expected):
        raise RuntimeError("block reduction did not reach diag(h, Id, Id)")
    word = Word([x.inverse() for x in rec.letters], 3, ring)
    return word, h


# ---------------------------------------------------------------------------
# GEM identities in SL_2(Mat_l(F_p))


def _as_block(x, ring: MatrixRing) -> np.ndarray:
    if isinstance(x, RingElement):
        return ring.to_array(x)
    return np.asarray(x, dtype=np.int64) % ring.p


def _U(x, ring):
    return GemLetter.from_blocks("upper", 1, 1, ring, [[x]])


def _L(y, ring):
    return GemLetter.from_blocks("lower", 1, 1, ring, [[y]])


def _antidiag_letters(h: np.ndarray, ring: MatrixRing) -> list[GemLetter]:
    hinv = modp.inv(h, ring.p)
    return [_U(h, ring), _L(-hinv, ring), _U(h, ring)]


def _diag_pair_letters(h: np.ndarray, ring: MatrixRing) -> list[GemLetter]:
    I = np.eye(ring.l, dtype=np.int64)
    hinv = modp.inv(h, ring.p)
    return [_L(hinv - I, ring), _U(I, ring), _L(h - I, ring), _U(-hinv, ring)]


def gem_identities(kind: str, *args, l: int | None = None, p: int | None = None) -> Word:
    """GEM words in SL_2(Mat_l(F_p)) for the three block identities.

    * ``antidiag``, h: U(h) L(-h^-1) U(h) = [[0, h], [-h^-1, 0]] (3 GEMs);
    * ``diag_pair``, h: L(h^-1 - 1) U(1) L(h - 1) U(-h^-1) = diag(h, h^-1) (4 GEMs);
    * ``commutator``, h1, h2: antidiag(h1^-1) antidiag(-h2) diag_pair(h1 h2)
      = diag(h1^-1 h2^-1 h1 h2, Id) (10 GEMs).

    Blocks may be numpy arrays (then ``p`` is required) or elements of a
    :class:`MatrixRing`.
    """
    first = args[0]
    if isinstance(first, RingElement):
        ring = first.ring
    else:
        if p is None:
            raise ValueError("p is required for array arguments")
        ring = MatrixRing(np.atleast_2d(first).shape[0] if l is None else l, p)
    blocks = [_as_block(a, ring).reshape(ring.l, ring.l) for a in args]
    for b in blocks:
        if modp.det(b, ring.p) == 0:
            raise Singular("block is not invertible")
    if kind == "antidiag":
        letters = _antidiag_letters(blocks[0], ring)
    elif kind == "diag_pair":
        letters = _diag_pair_letters(blocks[0], ring)
    elif kind == "commutator":
        h1, h2 = blocks
        p_ = ring.p
        letters = (
            _antidiag_letters(modp.inv(h1, p_), ring)
            + _antidiag_letters(-h2 % p_, ring)
            + _diag_pair_letters(h1 @ h2 % p_, ring)
        )
    else:
        raise ValueError("unknown identity %r" % kind)
    return Word(letters, 2, ring)


def embed_upper_left(w: Word) -> Word:
    """Embed a word of split-(1,1) GEMs in SL_2(R) into block rows 1-2 of SL_3(R)."""
    ring = w.ring
    letters = []
    for gem in w:
        x = gem.payload[0][0]
        if gem.side == "upper":
            letters.append(GemLetter("upper", 1, 2, ((x, ring.zero),)))
        else:
            letters.append(GemLetter("lower", 1, 2, ((x,), (ring.zero,))))
    return Word(letters, 3, ring)


# ---------------------------------------------------------------------------
# commutators in SL_l(F_p)


def commutator(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    return modp.inv(x, p) @ modp.inv(y, p) @ x @ y % p


def is_perfect(l: int, p: int) -> bool:
    return not (l == 2 and p in (2, 3))


def _intertwiners(h1: np.ndarray, m: np.ndarray, p: int) -> np.ndarray:
    """Basis (as l x l matrices) of {X : h1 X = X m}."""
    l = h1.shape[0]
    # vec(h1 X - X m) = (I kron h1 - m^T kron I) vec(X), with column-major vec
    I = np.eye(l, dtype=np.int64)
    system = (np.kron(I, h1) - np.kron(m.T, I)) % p
    basis = modp.nullspace(system, p)
    return np.array([b.reshape(l, l, order="F") for b in basis], dtype=np.int64).reshape(-1, l, l)


def _det_one_in_span(basis: np.ndarray, p: int, rng: np.random.Generator, samples: int, exhaustive_limit: int = 4096):
    """Some X in the span with det X = 1, or None."""
    k = len(basis)
    if k == 0:
        return None
    if p**k <= exhaustive_limit:
        combos = itertools.product(range(p), repeat=k)
    else:
        combos = (rng.integers(0, p, size=k) for _ in range(samples))
    l = basis.shape[1]
    for c in combos:
        X = np.tensordot(np.asarray(c, dtype=np.int64), basis, axes=1) % p
        d = modp.det(X, p)
        if d == 0:
            continue
        if d == 1:
            return X
        # rescale by a scalar c with c^l = d^-1 when one exists
        target = pow(d, -1, p)
        for s in range(1, p):
            if pow(s, l, p) == target:
                return X * s % p
    return None


def commutator_search(h, p: int | None = None, seed: int = 0, budget: int = 10_000) -> tuple[np.ndarray, np.ndarray]:
    """Return (h1, h2) in SL_l(F_p) with h1^-1 h2^-1 h1 h2 = h.

    [h1, h2] = h iff h1 h2 = h2 (h1 h), so for a chosen h1 the candidates h2
    form the F_p-space of intertwiners between h1 and h1 h; a det-1 element
    of that space exists exactly when h1 and h1 h are conjugate by SL_l.
    Random h1 are tried first; after ``budget`` attempts every element of
    SL_l(F_p) is tried as h1 when the group is small.
    """
    if isinstance(h, Mat):
        p = h.ring.m
        h = h.to_array()
    h = np.asarray(h, dtype=np.int64)
    if p is None:
        raise ValueError("p is required")
    h = h % p
    l = h.shape[0]
    if not is_perfect(l, p):
        raise Unsupported("SL_%d(F_%d) is not perfect" % (l, p))
    if modp.det(h, p) != 1:
        raise PreconditionViolated("h is not in SL_%d(F_%d)" % (l, p))
    I = np.eye(l, dtype=np.int64)
    if np.array_equal(h, I):
        return I.copy(), I.copy()
    rng = np.random.default_rng(seed)

    def attempt(h1):
        X = _det_one_in_span(_intertwiners(h1, h1 @ h % p, p), p, rng, samples=32)
        if X is not None and np.array_equal(commutator(h1, X, p), h):
            return h1, X
        return None

    for _ in range(budget):
        found = attempt(modp.random_sl(l, p, rng))
        if found:
            return found
    if modp.sl_order(l, p) <= 10_000:
        for h1 in _all_sl(l, p):
            found = attempt(h1)
            if found:
                return found
    raise SearchFailed("no commutator found for h within budget %d" % budget)


@lru_cache(maxsize=None)
def _all_sl_cached(l: int, p: int) -> tuple[bytes, ...]:
    out = []
    for entries in itertools.product(range(p), repeat=l * l):
        m = np.array(entries, dtype=np.int64).reshape(l, l)
        if modp.det(m, p) == 1:
            out.append(m.astype(np.int64).tobytes())
    return tuple(out)


def _all_sl(l: int, p: int):
    for raw in _all_sl_cached(l, p):
        yield np.frombuffer(raw, dtype=np.int64).reshape(l, l).copy()


# ---------------------------------------------------------------------------
# transvection route for the non-perfect SL_2(F_2), SL_2(F_3)


def _transvections(l: int, p: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairs (n, f) with f.n = 0 giving each distinct transvection Id + n f^T once."""
    seen, out = set(), []
    vecs = [np.array(v, dtype=np.int64) for v in itertools.product(range(p), repeat=l) if any(v)]
    for n in vecs:
        for f in vecs:
            if int(f @ n) % p:
                continue
            N = np.outer(n, f) % p
            key = N.tobytes()
            if key not in seen:
                seen.add(key)
                out.append((n, f))
    return out


@lru_cache(maxsize=None)
def _small_group_table(l: int, p: int):
    """For every h in SL_l(F_p): a shortest transvection product and a commutator pair if any."""
    trans = _transvections(l, p)
    I = np.eye(l, dtype=np.int64)
    key = lambda m: (m % p).astype(np.int64).tobytes()  # noqa: E731
    paths = {key(I): []}
    frontier = [(I, [])]
    while frontier:
        nxt = []
        for m, path in frontier:
            for t, (n, f) in enumerate(trans):
                m2 = m @ (I + np.outer(n, f)) % p
                k2 = key(m2)
                if k2 not in paths:
                    paths[k2] = path + [t]
                    nxt.append((m2, path + [t]))
        frontier = nxt
    comms: dict[bytes, tuple[np.ndarray, np.ndarray]] = {}
    group = list(_all_sl(l, p))
    for h1 in group:
        for h2 in group:
            k = key(commutator(h1, h2, p))
            comms.setdefault(k, (h1, h2))
    return trans, paths, comms


def _transvection_word(n: np.ndarray, f: np.ndarray, ring: MatrixRing) -> Word:
    """diag(Id + n f^T, Id) = U(-x) L(-y) U(x) L(y) with x = n e1^T, y = e1 f^T (so y x = 0)."""
    l = ring.l
    e1 = np.zeros(l, dtype=np.int64)
    e1[0] = 1
    x = np.outer(n, e1)
    y = np.outer(e1, f)
    return Word([_U(-x, ring), _L(-y, ring), _U(x, ring), _L(y, ring)], 2, ring)


def diag_word(h: np.ndarray, l: int, p: int, seed: int = 0) -> Word:
    """A GEM word in SL_2(Mat_l(F_p)) evaluating to diag(h, Id)."""
    ring = MatrixRing(l, p)
    h = np.asarray(h, dtype=np.int64) % p
    if np.array_equal(h, np.eye(l, dtype=np.int64)):
        return Word([], 2, ring)
    if is_perfect(l, p):
        h1, h2 = commutator_search(h, p, seed=seed)
        return gem_identities("commutator", h1, h2, p=p)
    trans, paths, comms = _small_group_table(l, p)
    k = h.astype(np.int64).tobytes()
    path = paths[k]
    if k in comms and COMMUTATOR_GEMS <= 4 * len(path):
        h1, h2 = comms[k]
        return gem_identities("commutator", h1, h2, p=p)
    w = Word([], 2, ring)
    for t in path:
        w = w + _transvection_word(*trans[t], ring)
    return w


def full_gem_decompose(g: np.ndarray, l: int, p: int, seed: int = 0) -> DecompositionResult:
    """GEM word in SL_3(Mat_l(F_p)) evaluating to g in SL_3l(F_p).

    Block reduction (at most 7 GEMs) leaves diag(h, Id, Id); h is written as a
    commutator and realized by 10 more GEMs in block rows 1-2. For the
    non-perfect SL_2(F_2) and SL_2(F_3) the cheaper of the commutator word
    and a product of 4-GEM transvection words is used (at most 10 GEMs).
    """
    rng = np.random.default_rng(seed)
    word, h = gem_reduce_3block(g, l, p, rng)
    tail = embed_upper_left(diag_word(h, l, p, seed=seed))
    full = word + tail
    stats = {"reduction_gems": word.gem_count, "diagonal_gems": tail.gem_count}
    return DecompositionResult(full, np.eye(3 * l, dtype=np.int64), "gem3", None, stats)


def full_elementary_word(result: DecompositionResult) -> Word:
    """Expand every GEM of a block decomposition into elementary letters over F_p."""
    return expand_word(result.full_word())


# ---------------------------------------------------------------------------
# Steinberg symbols


@dataclass(frozen=True)
class SteinbergElements:
    u: RingElement
    u_inv: RingElement
    i: int
    j: int

    def __post_init__(self):
        if not (self.u * self.u_inv).is_one():
            raise NonUnit("u * u' != 1")
        if self.i == self.j:
            raise PreconditionViolated("need i != j")


def w_letters(i: int, j: int, u: RingElement, u_inv: RingElement) -> list[ElementaryLetter]:
    """w_ij(u, u') = e_ij(u) e_ji(-u') e_ij(u)."""
    SteinbergElements(u, u_inv, i, j)
    return [ElementaryLetter(i, j, u), ElementaryLetter(j, i, -u_inv), ElementaryLetter(i, j, u)]


def _w_inverse(i, j, u, u_inv):
    return [x.inverse() for x in reversed(w_letters(i, j, u, u_inv))]


def steinberg_word(u: RingElement, v: RingElement, d: int, i: int = 1, j: int = 2, simplify: bool = True) -> Word:
    """Word for the symbol {u, v}_ij = h(uv) h(u)^-1 h(v)^-1.

    With h(u) = w(u) w(1)^-1 the symbol is w(uv) w(u)^-1 w(1) w(v)^-1, twelve
    letters; merging the three pairs of adjacent letters in slot (i, j)
    leaves nine. Over a commutative ring it evaluates to the identity.
    """
    ring = u.ring
    if not ring.commutative:
        raise Unsupported("Steinberg symbols need a commutative ring")
    if not (u.is_unit() and v.is_unit()):
        raise NonUnit("u and v must be units")
    if d < 2 or not (1 <= i <= d and 1 <= j <= d) or i == j:
        raise PreconditionViolated("need d >= 2 and distinct indices in [1, d]")
    uv = u * v
    one = ring.one
    letters = (
        w_letters(i, j, uv, uv.inverse())
        + _w_inverse(i, j, u, u.inverse())
        + w_letters(i, j, one, one)
        + _w_inverse(i, j, v, v.inverse())
    )
    w = Word(letters, d, ring)
    return w.simplified() if simplify else w


# ---------------------------------------------------------------------------
# commutator lifting in SL_s(Z/p^k)


def _prime_power(m: int) -> tuple[int, int]:
    for p in range(2, m + 1):
        if m % p == 0:
            k, r = 0, m
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise Unsupported("Z/%d is not local (need a prime power)" % m)
            return p, k
    raise Unsupported("modulus must be >= 2")


def _inv_mod(a: np.ndarray, m: int) -> np.ndarray:
    return Mat.from_array(IntegersMod(m), a % m).inverse().to_array()


def _det_mod(a: np.ndarray, m: int) -> int:
    return Mat.from_array(IntegersMod(m), a % m).det().payload


def group_commutator_mod(x: np.ndarray, y: np.ndarray, m: int) -> np.ndarray:
    return _inv_mod(x, m) @ _inv_mod(y, m) % m @ x % m @ y % m


def _generates_sl(a: np.ndarray, b: np.ndarray, p: int, cap: int = 2_000_000) -> bool:
    a, b = np.asarray(a, dtype=np.int64) % p, np.asarray(b, dtype=np.int64) % p
    return _generates_sl_cached(a.tobytes(), b.tobytes(), a.shape[0], p, cap)


@lru_cache(maxsize=64)
def _generates_sl_cached(a_raw: bytes, b_raw: bytes, s: int, p: int, cap: int) -> bool:
    from .graphs import enumerate_cayley
    from .groups import GeneratorSet, GroupElement

    a = np.frombuffer(a_raw, dtype=np.int64).reshape(s, s)
    b = np.frombuffer(b_raw, dtype=np.int64).reshape(s, s)
    A, B = GroupElement(a, p), GroupElement(b, p)
    S = GeneratorSet("residue", [A, A.inverse(), B, B.inverse()], ["a", "a^-1", "b", "b^-1"])
    return enumerate_cayley(S, cap).num_vertices == modp.sl_order(s, p)


def _traceless_basis(s: int) -> list[np.ndarray]:
    basis = []
    for i in range(s):
        for j in range(s):
            if i != j:
                e = np.zeros((s, s), dtype=np.int64)
                e[i, j] = 1
                basis.append(e)
    for i in range(s - 1):
        e = np.zeros((s, s), dtype=np.int64)
        e[i, i], e[i + 1, i + 1] = 1, -1
        basis.append(e)
    return basis


def _fix_det(alpha: np.ndarray, m: int) -> np.ndarray:
    d = _det_mod(alpha, m)
    out = alpha.copy()
    out[0] = out[0] * pow(int(d), -1, m) % m
    return out


def lift_commutators(g, a, b, ring: Ring | int | None = None, check_generation: bool = True):
    """Solve g = [a, x][b, y] for g in the first congruence kernel of SL_s(Z/p^k).

    Starting from x = y = Id (exact modulo p), level m = 1, ..., k-1 corrects
    x <- (Id + p^m A) x and y <- (Id + p^m B) y, where the traceless A and B
    solve the linear system Delta = (A - a^-1 A a) + (B - b^-1 B b) over F_p
    for the level-m defect Delta of g against the current product. Because x
    and y stay congruent to Id modulo p, all other conjugations are trivial
    at each level.
    """
    as_mat = isinstance(g, Mat)
    if as_mat:
        ring = g.ring
        g, a, b = g.to_array(), a.to_array(), b.to_array()
    if isinstance(ring, int):
        ring = IntegersMod(ring)
    if not isinstance(ring, IntegersMod):
        raise Unsupported("commutator lifting is implemented over Z/p^k")
    M = ring.m
    p, k = _prime_power(M)
    g, a, b = (np.asarray(z, dtype=np.int64) % M for z in (g, a, b))
    s = g.shape[0]
    if s < 3:
        raise Unsupported("need s >= 3 (SL_s of the residue field perfect)")
    I = np.eye(s, dtype=np.int64)
    if not np.array_equal(g % p, I % p):
        raise PreconditionViolated("g is not congruent to Id modulo %d" % p)
    for z in (g, a, b):
        if _det_mod(z, M) != 1:
            raise PreconditionViolated("inputs must have determinant 1")
    if check_generation and not _generates_sl(a % p, b % p, p):
        raise BadGenerators("a, b do not generate SL_%d(F_%d) modulo %d" % (s, p, p))

    abar, bbar = a % p, b % p
    ainv, binv = modp.inv(abar, p), modp.inv(bbar, p)
    basis = _traceless_basis(s)
    cols = [(E - ainv @ E @ abar) % p for E in basis] + [(E - binv @ E @ bbar) % p for E in basis]
    system = np.stack([c.ravel() for c in cols], axis=1) % p

    x, y = I.copy(), I.copy()
    pm = 1
    for level in range(1, k):
        pm *= p
        c = group_commutator_mod(a, x, M) @ group_commutator_mod(b, y, M) % M
        defect = _inv_mod(c, M) @ g % M
        delta = ((defect - I) // pm) % p
        if ((defect - I) % pm).any():
            raise RuntimeError("lifting lost congruence at level %d" % level)
        sol = modp.solve(system, delta.ravel(), p)
        if sol is None:
            raise RuntimeError("level-%d system unsolvable; a, b do not give a perfect module" % level)
        A = sum(int(c_) * E for c_, E in zip(sol[: len(basis)], basis)) % p
        B = sum(int(c_) * E for c_, E in zip(sol[len(basis):], basis)) % p
        alpha = _fix_det((I + pm * A) % M, M)
        beta = _fix_det((I + pm * B) % M, M)
        x = alpha @ x % M
        y = beta @ y % M

    final = group_commutator_mod(a, x, M) @ group_commutator_mod(b, y, M) % M
    if not np.array_equal(final, g):
        raise RuntimeError("lifted commutators do not reproduce g")
    if as_mat:
        return Mat.from_array(ring, x), Mat.from_array(ring, y)
    return x, y


def random_congruence_element(s: int, m: int, rng: np.random.Generator) -> np.ndarray:
    """Random g in SL_s(Z/m) with g = Id modulo the prime p dividing m."""
    p, _ = _prime_power(m)
    g = (np.eye(s, dtype=np.int64) + p * rng.integers(0, m, size=(s, s))) % m
    return _fix_det(g, m)
