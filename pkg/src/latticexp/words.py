"""Words in elementary letters e_ij(r) and generalized elementary matrices.

A generalized elementary matrix (GEM) with split (q1, q2) is block
unitriangular with respect to the partition of the block rows into the
first q1 and last q2 blocks::

    upper:  [[Id_q1, X], [0, Id_q2]]     X has shape q1 x q2 (in blocks)
    lower:  [[Id_q1, 0], [Y, Id_q2]]     Y has shape q2 x q1

Entries live in the word's ring, which is Z/m, F_p[C_N] or Mat_l(F_p); in
the last case a word over n blocks realizes an (n*l) x (n*l) matrix over F_p.

Text format, one letter per line after a header::

    WORD <n> <ring>
    E <i> <j> <json payload>
    GEM <upper|lower> <q1> <q2> <json payload>
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .errors import InvalidLetter, WordMismatch
from .rings import Mat, MatrixRing, Ring, RingElement, parse_ring


@dataclass(frozen=True)
class ElementaryLetter:
    """e_ij(r) = Id + r e_ij, 1-based indices."""

    i: int
    j: int
    r: RingElement

    def __post_init__(self):
        if self.i == self.j:
            raise InvalidLetter("elementary letter needs i != j, got (%d, %d)" % (self.i, self.j))

    @property
    def ring(self) -> Ring:
        return self.r.ring

    def realize(self, n: int) -> Mat:
        return Mat.elementary(self.ring, n, self.i, self.j, self.r)

    def inverse(self) -> "ElementaryLetter":
        return ElementaryLetter(self.i, self.j, -self.r)

    def is_trivial(self) -> bool:
        return self.r.is_zero()

    def to_text(self) -> str:
        return "E %d %d %s" % (self.i, self.j, json.dumps(self.r.to_json()))


@dataclass(frozen=True)
class GemLetter:
    """Block-unitriangular letter; ``payload`` is a tuple of rows of ring elements."""

    side: str
    q1: int
    q2: int
    payload: tuple

    def __post_init__(self):
        if self.side not in ("upper", "lower"):
            raise ValueError("side must be 'upper' or 'lower', got %r" % self.side)
        rows, cols = (self.q1, self.q2) if self.side == "upper" else (self.q2, self.q1)
        if len(self.payload) != rows or any(len(r) != cols for r in self.payload):
            raise WordMismatch("GEM payload must be %d x %d blocks" % (rows, cols))

    @classmethod
    def from_blocks(cls, side: str, q1: int, q2: int, ring: Ring, blocks) -> "GemLetter":
        payload = tuple(tuple(ring.element(b) for b in row) for row in blocks)
        return cls(side, q1, q2, payload)

    @classmethod
    def from_array(cls, side: str, q1: int, q2: int, ring: Ring, arr: np.ndarray) -> "GemLetter":
        """Build from a scalar payload array (over F_p when ``ring`` is Mat_l(F_p))."""
        l = ring.l if isinstance(ring, MatrixRing) else 1
        rows, cols = (q1, q2) if side == "upper" else (q2, q1)
        arr = np.asarray(arr, dtype=np.int64)
        if isinstance(ring, MatrixRing):
            blocks = [[arr[a * l:(a + 1) * l, b * l:(b + 1) * l] for b in range(cols)] for a in range(rows)]
        else:
            blocks = [[int(arr[a, b]) for b in range(cols)] for a in range(rows)]
        return cls.from_blocks(side, q1, q2, ring, blocks)

    @property
    def ring(self) -> Ring:
        return self.payload[0][0].ring

    @property
    def n(self) -> int:
        return self.q1 + self.q2

    def realize(self, n: int | None = None) -> Mat:
        n = self.n if n is None else n
        if n != self.n:
            raise WordMismatch("GEM with split (%d, %d) in a word of dimension %d" % (self.q1, self.q2, n))
        ring = self.ring
        rows = [[ring.one if a == b else ring.zero for b in range(n)] for a in range(n)]
        if self.side == "upper":
            for a in range(self.q1):
                for b in range(self.q2):
                    rows[a][self.q1 + b] = self.payload[a][b]
        else:
            for a in range(self.q2):
                for b in range(self.q1):
                    rows[self.q1 + a][b] = self.payload[a][b]
        return Mat(ring, rows)

    def payload_array(self) -> np.ndarray:
        ring = self.ring
        if isinstance(ring, MatrixRing):
            return np.block([[ring.to_array(e) for e in row] for row in self.payload])
        return np.array([[e.payload for e in row] for row in self.payload], dtype=np.int64)

    def to_array(self) -> np.ndarray:
        """Realized scalar matrix (flattened over F_p for block rings)."""
        ring = self.ring
        l = ring.l if isinstance(ring, MatrixRing) else 1
        m = np.eye(self.n * l, dtype=np.int64)
        x = self.payload_array()
        if self.side == "upper":
            m[: self.q1 * l, self.q1 * l:] = x
        else:
            m[self.q1 * l:, : self.q1 * l] = x
        return m

    def inverse(self) -> "GemLetter":
        return GemLetter(self.side, self.q1, self.q2, tuple(tuple(-e for e in row) for row in self.payload))

    def is_trivial(self) -> bool:
        return all(e.is_zero() for row in self.payload for e in row)

    def to_text(self) -> str:
        body = [[e.to_json() for e in row] for row in self.payload]
        return "GEM %s %d %d %s" % (self.side, self.q1, self.q2, json.dumps(body, separators=(",", ":")))


Letter = Union[ElementaryLetter, GemLetter]


class Word:
    """A finite product of letters, evaluated left to right."""

    def __init__(self, letters: Iterable[Letter], n: int, ring: Ring):
        self.letters: tuple[Letter, ...] = tuple(letters)
        self.n = n
        self.ring = ring
        for letter in self.letters:
            if letter.ring != ring:
                raise WordMismatch("letter over %s in word over %s" % (letter.ring, ring))
            if isinstance(letter, ElementaryLetter) and not (1 <= letter.i <= n and 1 <= letter.j <= n):
                raise WordMismatch("letter indices (%d, %d) out of range for n=%d" % (letter.i, letter.j, n))
            if isinstance(letter, GemLetter) and letter.n != n:
                raise WordMismatch("GEM split (%d, %d) does not fit n=%d" % (letter.q1, letter.q2, n))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __add__(self, other: "Word") -> "Word":
        if (other.n, other.ring) != (self.n, self.ring):
            raise WordMismatch("cannot concatenate words over (%d, %s) and (%d, %s)" % (self.n, self.ring, other.n, other.ring))
        return Word(self.letters + other.letters, self.n, self.ring)

    def __eq__(self, other):
        return isinstance(other, Word) and (self.letters, self.n, self.ring) == (other.letters, other.n, other.ring)

    def __repr__(self):
        return "Word(n=%d, ring=%s, %d letters)" % (self.n, self.ring, len(self.letters))

    @property
    def gem_count(self) -> int:
        return sum(isinstance(x, GemLetter) for x in self.letters)

    @property
    def elementary_count(self) -> int:
        return sum(isinstance(x, ElementaryLetter) for x in self.letters)

    def inverse(self) -> "Word":
        return Word([x.inverse() for x in reversed(self.letters)], self.n, self.ring)

    def evaluate(self) -> Mat:
        result = Mat.identity(self.ring, self.n)
        for letter in self.letters:
            result = result @ letter.realize(self.n)
        return result

    def evaluate_array(self) -> np.ndarray:
        """Scalar matrix of the product; flattened over F_p for Mat_l(F_p) words."""
        ring = self.ring
        if isinstance(ring, MatrixRing):
            p, size = ring.p, self.n * ring.l
        elif hasattr(ring, "m"):
            p, size = ring.m, self.n
        else:
            return self.evaluate().to_array()
        result = np.eye(size, dtype=np.int64)
        for letter in self.letters:
            if isinstance(letter, GemLetter):
                m = letter.to_array()
            else:
                m = np.eye(size, dtype=np.int64)
                if isinstance(ring, MatrixRing):
                    l = ring.l
                    m[(letter.i - 1) * l:letter.i * l, (letter.j - 1) * l:letter.j * l] = ring.to_array(letter.r)
                else:
                    m[letter.i - 1, letter.j - 1] = letter.r.payload
            result = (result @ m) % p
        return result

    def simplified(self) -> "Word":
        """Drop trivial letters and merge adjacent letters of the same slot or GEM shape."""
        out: list[Letter] = []
        for letter in self.letters:
            if letter.is_trivial():
                continue
            if out and _same_slot(out[-1], letter):
                merged = _merge(out.pop(), letter)
                if not merged.is_trivial():
                    out.append(merged)
                continue
            out.append(letter)
        return Word(out, self.n, self.ring)

    def to_text(self) -> str:
        lines = ["WORD %d %s" % (self.n, self.ring)]
        lines += [x.to_text() for x in self.letters]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Word":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        if head[0] != "WORD":
            raise ValueError("missing WORD header")
        n, ring = int(head[1]), parse_ring(head[2])
        letters: list[Letter] = []
        for ln in lines[1:]:
            kind, rest = ln.split(None, 1)
            if kind == "E":
                i, j, payload = rest.split(None, 2)
                letters.append(ElementaryLetter(int(i), int(j), ring.element(json.loads(payload))))
            elif kind == "GEM":
                side, q1, q2, payload = rest.split(None, 3)
                blocks = json.loads(payload)
                letters.append(GemLetter.from_blocks(side, int(q1), int(q2), ring, blocks))
            else:
                raise ValueError("unknown letter kind %r" % kind)
        return cls(letters, n, ring)


def _same_slot(a: Letter, b: Letter) -> bool:
    if isinstance(a, ElementaryLetter) and isinstance(b, ElementaryLetter):
        return (a.i, a.j) == (b.i, b.j)
    if isinstance(a, GemLetter) and isinstance(b, GemLetter):
        return (a.side, a.q1, a.q2) == (b.side, b.q1, b.q2)
    return False


def _merge(a: Letter, b: Letter) -> Letter:
    if isinstance(a, ElementaryLetter):
        return ElementaryLetter(a.i, a.j, a.r + b.r)
    payload = tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.payload, b.payload))
    return GemLetter(a.side, a.q1, a.q2, payload)


def word_eval(w: Word) -> Mat:
    """Exact left-to-right product of the letters of ``w``."""
    return w.evaluate()


def gem_expand(gem: GemLetter) -> Word:
    """Rewrite a GEM as commuting elementary letters over the scalar ring.

    Every nonzero scalar slot of the payload becomes one letter; letters in
    the same off-diagonal block commute, so the order is immaterial.
    """
    ring = gem.ring
    if isinstance(ring, MatrixRing):
        base, l = ring.base, ring.l
    else:
        base, l = ring, 1
    x = gem.payload_array() if isinstance(ring, MatrixRing) or hasattr(ring, "m") else None
    n = gem.n * l
    letters = []
    if x is not None:
        offset = gem.q1 * l
        for a, b in zip(*np.nonzero(x)):
            if gem.side == "upper":
                letters.append(ElementaryLetter(int(a) + 1, offset + int(b) + 1, base.element(int(x[a, b]))))
            else:
                letters.append(ElementaryLetter(offset + int(a) + 1, int(b) + 1, base.element(int(x[a, b]))))
    else:
        for a, row in enumerate(gem.payload):
            for b, e in enumerate(row):
                if not e.is_zero():
                    if gem.side == "upper":
                        letters.append(ElementaryLetter(a + 1, gem.q1 + b + 1, e))
                    else:
                        letters.append(ElementaryLetter(gem.q1 + a + 1, b + 1, e))
    return Word(letters, n, base)


def expand_word(w: Word) -> Word:
    """Replace every GEM of ``w`` by its elementary expansion."""
    ring = w.ring
    l = ring.l if isinstance(ring, MatrixRing) else 1
    base = ring.base if isinstance(ring, MatrixRing) else ring
    letters: list[Letter] = []
    for letter in w.letters:
        if isinstance(letter, GemLetter):
            letters.extend(gem_expand(letter).letters)
        elif isinstance(ring, MatrixRing):
            block = ring.to_array(letter.r)
            for a, b in zip(*np.nonzero(block)):
                letters.append(ElementaryLetter((letter.i - 1) * l + int(a) + 1, (letter.j - 1) * l + int(b) + 1, base.element(int(block[a, b]))))
        else:
            letters.append(letter)
    return Word(letters, w.n * l, base)

