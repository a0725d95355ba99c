"""Elements of SL_n(F_p) and the generating sets studied here.

Three families of generating sets are built:

* :func:`sigma_bad` -- the signed cycle A_n and the transvection Id + e_12,
  with inverses (4 letters);
* :func:`sigma_good` -- the image of the standard 28-element generating set
  of EL_3 over a 2-generated ring, with the ring generators sent to the
  signed cycle A and the matrix unit e_12 of Mat_l(F_p);
* :func:`sigma_standard` -- all Id +- e_ij in SL_d(Z/m).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import modp
from .errors import InvalidLetter, Unsupported
from .identities import matrix_unit, signed_cycle
from .rings import IntegersMod, Mat, MatrixRing, Ring
from .words import ElementaryLetter


class GroupElement:
    """A matrix in SL_n(F_p) with a canonical byte encoding.

    The encoding is the row-major sequence of reduced entries, one byte per
    entry, so it is injective and usable as a hash key.
    """

    __slots__ = ("n", "p", "_data")

    def __init__(self, matrix, p: int, check: bool = True):
        arr = np.asarray(matrix, dtype=np.int64) % p
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("group elements are square matrices")
        if p >= 256:
            raise Unsupported("p >= 256 is not supported by the byte encoding")
        if check and modp.det(arr, p) != 1:
            raise ValueError("matrix does not have determinant 1 mod %d" % p)
        self.n = arr.shape[0]
        self.p = p
        self._data = arr.astype(np.uint8)
        self._data.setflags(write=False)

    @classmethod
    def identity(cls, n: int, p: int) -> "GroupElement":
        return cls(np.eye(n, dtype=np.int64), p, check=False)

    @property
    def array(self) -> np.ndarray:
        return self._data.astype(np.int64)

    @property
    def key(self) -> bytes:
        return self._data.tobytes()

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.array @ other.array, self.p, check=False)

    def inverse(self) -> "GroupElement":
        return GroupElement(modp.inv(self.array, self.p), self.p, check=False)

    def det(self) -> int:
        return modp.det(self.array, self.p)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.p == other.p and self.key == other.key

    def __hash__(self):
        return hash((self.p, self.key))

    def __repr__(self):
        return "GroupElement(p=%d, %s)" % (self.p, self.array.tolist())


def elementary_matrix(n: int, i: int, j: int, r, ring: Ring | int):
    """e_ij(r) = Id + r e_ij (1-based indices).

    ``ring`` may be a prime p (returns a :class:`GroupElement`) or a
    :class:`~latticexp.rings.Ring` (returns a :class:`~latticexp.rings.Mat`).
    """
    if i == j or not (1 <= i <= n and 1 <= j <= n):
        raise InvalidLetter("need distinct indices in [1, %d], got (%d, %d)" % (n, i, j))
    if isinstance(ring, Ring):
        return Mat.elementary(ring, n, i, j, r)
    m = np.eye(n, dtype=np.int64)
    m[i - 1, j - 1] = int(r)
    return GroupElement(m, ring, check=False)


@dataclass
class GeneratorSet:
    """Labeled, inverse-closed multiset of elements of SL_n(F_p)."""

    label: str
    elements: list[GroupElement]
    labels: list[str]
    letters: list[ElementaryLetter] | None = field(default=None, repr=False)

    def __post_init__(self):
        if len(self.elements) != len(self.labels):
            raise ValueError("one label per element required")
        if not self.elements:
            raise ValueError("empty generating set")
        n, p = self.elements[0].n, self.elements[0].p
        if any((g.n, g.p) != (n, p) for g in self.elements):
            raise ValueError("all elements must share (n, p)")

    @property
    def n(self) -> int:
        return self.elements[0].n

    @property
    def p(self) -> int:
        return self.elements[0].p

    @property
    def declared_size(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    @property
    def distinct_count(self) -> int:
        return len({g.key for g in self.elements})

    def matrices(self) -> np.ndarray:
        return np.stack([g.array for g in self.elements])

    def audit(self) -> dict[str, bool]:
        """Inverse-closure and determinant-1 checks."""
        keys = {g.key for g in self.elements}
        return {
            "inverse_closed": all(g.inverse().key in keys for g in self.elements),
            "det_one": all(g.det() == 1 for g in self.elements),
        }

    def to_json(self) -> str:
        return json.dumps(
            {
                "label": self.label,
                "n": self.n,
                "p": self.p,
                "labels": self.labels,
                "matrices": [g.array.tolist() for g in self.elements],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "GeneratorSet":
        data = json.loads(text)
        elements = [GroupElement(m, data["p"]) for m in data["matrices"]]
        return cls(data["label"], elements, list(data["labels"]))


def sigma_bad(n: int, p: int) -> GeneratorSet:
    """{A_n, A_n^-1, B_n, B_n^-1} with A_n the signed cycle and B_n = Id + e_12."""
    if n < 3:
        raise Unsupported("sigma_bad needs n >= 3, got %d" % n)
    if not modp.is_prime(p):
        raise ValueError("p must be prime, got %d" % p)
    a = GroupElement(signed_cycle(n, p), p)
    b = elementary_matrix(n, 1, 2, 1, p)
    return GeneratorSet("sigma_bad(n=%d,p=%d)" % (n, p), [a, a.inverse(), b, b.inverse()], ["A", "A^-1", "B", "B^-1"])


def block_elementary(i: int, j: int, x: np.ndarray, l: int, p: int, blocks: int = 3) -> np.ndarray:
    """Flattened e_ij(x) in EL_blocks(Mat_l(F_p)) as a (blocks*l)-square matrix."""
    m = np.eye(blocks * l, dtype=np.int64)
    m[(i - 1) * l:i * l, (j - 1) * l:j * l] = x % p
    return m


def sigma_good(l: int, p: int) -> GeneratorSet:
    """The 28-letter multiset in SL_3l(F_p).

    e_ij(+-Id) for all 6 ordered pairs, and e_ij(+-A), e_ij(+-B) for the 4
    pairs with |i - j| = 1, where A is the signed cycle of Mat_l(F_p) and
    B = e_12 is a matrix unit.
    """
    if l < 2:
        raise Unsupported("sigma_good needs l >= 2 (Mat_1 is not generated by A and B), got %d" % l)
    if not modp.is_prime(p):
        raise ValueError("p must be prime, got %d" % p)
    ring = MatrixRing(l, p)
    coeffs = {"I": np.eye(l, dtype=np.int64), "A": signed_cycle(l, p), "B": matrix_unit(l, 1, 2)}
    elements, labels, letters = [], [], []
    pairs = [(i, j) for i in (1, 2, 3) for j in (1, 2, 3) if i != j]
    for name in ("I", "A", "B"):
        for i, j in pairs:
            if name != "I" and abs(i - j) != 1:
                continue
            for sign in (1, -1):
                x = sign * coeffs[name]
                elements.append(GroupElement(block_elementary(i, j, x, l, p), p, check=False))
                labels.append("e%d%d(%s%s)" % (i, j, "+" if sign > 0 else "-", name))
                letters.append(ElementaryLetter(i, j, ring.element(x)))
    return GeneratorSet("sigma_good(l=%d,p=%d)" % (l, p), elements, labels, letters)


def sigma_standard(d: int, ring: Ring | int) -> GeneratorSet:
    """All Id +- e_ij, 1 <= i != j <= d, as 2(d^2 - d) letters over Z/m.

    Elements are flattened to :class:`GroupElement` values, which requires m prime.
    """
    if d < 3:
        raise Unsupported("sigma_standard needs d >= 3, got %d" % d)
    if isinstance(ring, int):
        ring = IntegersMod(ring)
    if not isinstance(ring, IntegersMod):
        raise Unsupported("sigma_standard is defined over Z/m only")
    if not ring.is_field:
        raise Unsupported("flattening to SL_d(F_p) group elements needs a prime modulus, got %d" % ring.m)
    p = ring.m
    elements, labels, letters = [], [], []
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            if i == j:
                continue
            for sign in (1, -1):
                elements.append(elementary_matrix(d, i, j, sign, p))
                labels.append("e%d%d(%s1)" % (i, j, "+" if sign > 0 else "-"))
                letters.append(ElementaryLetter(i, j, ring.element(sign)))
    return GeneratorSet("sigma_standard(d=%d,m=%d)" % (d, p), elements, labels, letters)


def generator_arrays(S: GeneratorSet | Sequence[np.ndarray]) -> np.ndarray:
    if isinstance(S, GeneratorSet):
        return S.matrices()
    return np.stack([np.asarray(s, dtype=np.int64) for s in S])
