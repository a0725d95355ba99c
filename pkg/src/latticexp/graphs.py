"""Cayley and Schreier graphs of SL_n(F_p) as permutation tables.

Every graph here is regular and given by one permutation of the vertex set
per generator (with multiplicity), stored as an int32 array ``perms`` of
shape ``(degree, num_vertices)``: ``perms[s, v]`` is the vertex s.v. Since
generating sets are inverse-closed the multigraph is undirected.

Cayley vertices are group elements keyed by their row-major base-p digits
packed into an int64; BFS numbering is by layer, sorted by key inside each
layer, which is the lexicographic order of the canonical byte encodings.

Schreier vertices are the nonzero vectors of F_p^n, vertex ``enc(v) - 1``
with ``enc(v) = sum_i v_i p^i``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from . import modp
from .errors import CapExceeded, Unsupported
from .groups import GeneratorSet, GroupElement

DEFAULT_CAP = 2_000_000
SCHREIER_CAP = 2**25


class PermutationGraph:
    """Regular multigraph given by generator permutations."""

    def __init__(self, perms: np.ndarray, label: str = "", labels: list[str] | None = None):
        perms = np.ascontiguousarray(perms, dtype=np.int32)
        if perms.ndim != 2:
            raise ValueError("perms must have shape (degree, num_vertices)")
        self.perms = perms
        self.label = label
        self.labels = labels or ["s%d" % i for i in range(perms.shape[0])]

    @property
    def degree(self) -> int:
        return self.perms.shape[0]

    @property
    def num_vertices(self) -> int:
        return self.perms.shape[1]

    def neighbors(self, v: int) -> np.ndarray:
        return self.perms[:, v]

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """Normalized adjacency applied to ``x``: (Ax)(v) = mean_s x(s.v)."""
        y = np.zeros_like(x, dtype=np.float64)
        for perm in self.perms:
            y += x[perm]
        y /= self.degree
        return y

    def dense_adjacency(self) -> np.ndarray:
        """Normalized adjacency as a dense float array (small graphs only)."""
        V = self.num_vertices
        a = np.zeros((V, V), dtype=np.float64)
        rows = np.arange(V)
        for perm in self.perms:
            np.add.at(a, (rows, perm), 1.0)
        return a / self.degree

    def bfs_layers(self, root: int = 0) -> list[np.ndarray]:
        seen = np.zeros(self.num_vertices, dtype=bool)
        seen[root] = True
        layers = [np.array([root], dtype=np.int64)]
        while True:
            nxt = np.unique(self.perms[:, layers[-1]].ravel())
            nxt = nxt[~seen[nxt]]
            if nxt.size == 0:
                return layers
            seen[nxt] = True
            layers.append(nxt.astype(np.int64))

    def is_connected(self) -> bool:
        return sum(layer.size for layer in self.bfs_layers()) == self.num_vertices

    def is_bipartite(self) -> bool:
        color = np.full(self.num_vertices, -1, dtype=np.int8)
        for depth, layer in enumerate(self.bfs_layers()):
            color[layer] = depth % 2
        if (color < 0).any():
            raise ValueError("bipartiteness is only decided for connected graphs")
        return bool(all(np.all(color[perm] != color) for perm in self.perms))

    def is_symmetric(self) -> bool:
        """Edge multiplicity of (u, v) equals that of (v, u)."""
        V = self.num_vertices
        src = np.tile(np.arange(V, dtype=np.int64), self.degree)
        dst = self.perms.ravel().astype(np.int64)
        fwd = np.sort(src * V + dst)
        bwd = np.sort(dst * V + src)
        return bool(np.array_equal(fwd, bwd))

    def edges(self) -> np.ndarray:
        """All directed edges (v, s.v), one per generator, as an (E, 2) array."""
        V = self.num_vertices
        src = np.tile(np.arange(V, dtype=np.uint32), self.degree)
        return np.stack([src, self.perms.ravel().astype(np.uint32)], axis=1)

    def export_edges(self, path, fmt: str = "bin") -> None:
        """Write the edge list as little-endian u32 pairs (``bin``) or CSV (``csv``)."""
        e = self.edges()
        if fmt == "bin":
            e.astype("<u4").tofile(path)
        elif fmt == "csv":
            with open(path, "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["source", "target"])
                w.writerows(e.tolist())
        else:
            raise ValueError("fmt must be 'bin' or 'csv'")


def cycle_graph(n: int) -> PermutationGraph:
    """Cayley graph of Z/n with S = {+1, -1} (a 2-regular multigraph)."""
    v = np.arange(n)
    return PermutationGraph(np.stack([(v + 1) % n, (v - 1) % n]), "cycle(%d)" % n, ["+1", "-1"])


# ---------------------------------------------------------------------------
# Cayley graphs


def _key_weights(n: int, p: int) -> np.ndarray:
    if n * n * np.log2(p) >= 62:
        raise Unsupported("SL_%d(F_%d) elements do not fit a 62-bit key" % (n, p))
    # most significant digit first so numeric order = byte-lexicographic order
    return (p ** np.arange(n * n - 1, -1, -1, dtype=np.int64)).astype(np.int64)


class CayleyGraph(PermutationGraph):
    """C(G, S) with edges g -> s g (left multiplication).

    ``keys[v]`` is the packed canonical key of vertex v, ``elements[v]`` its
    matrix, and ``layer_sizes`` the BFS sphere sizes around the identity.
    """

    def __init__(self, perms, generators, keys, elements, layer_sizes):
        super().__init__(perms, "C(SL_%d(F_%d), %s)" % (generators.n, generators.p, generators.label), generators.labels)
        self.generators = generators
        self.keys = keys
        self.elements = elements
        self.layer_sizes = layer_sizes
        self._order = np.argsort(keys, kind="stable")

    @property
    def n(self) -> int:
        return self.generators.n

    @property
    def p(self) -> int:
        return self.generators.p

    def index_of(self, g: GroupElement | np.ndarray) -> int:
        arr = g.array if isinstance(g, GroupElement) else np.asarray(g, dtype=np.int64) % self.p
        key = int(arr.reshape(-1) @ _key_weights(self.n, self.p))
        pos = np.searchsorted(self.keys, key, sorter=self._order)
        if pos == len(self.keys) or self.keys[self._order[pos]] != key:
            raise KeyError("element not in the graph")
        return int(self._order[pos])

    def element(self, v: int) -> GroupElement:
        return GroupElement(self.elements[v], self.p, check=False)


def enumerate_cayley(S: GeneratorSet, cap: int = DEFAULT_CAP) -> CayleyGraph:
    """Breadth-first closure of S from the identity.

    The order formula for SL_n(F_p) is checked against ``cap`` before any
    work is done, so oversized groups are refused immediately.
    """
    n, p = S.n, S.p
    expected = modp.sl_order(n, p)
    if expected > cap:
        raise CapExceeded("|SL_%d(F_%d)| = %d exceeds cap %d" % (n, p, expected, cap))
    weights = _key_weights(n, p)
    gens = S.matrices()  # (deg, n, n)

    ident = np.eye(n, dtype=np.int64)[None]
    layers_keys = [np.array([int(ident.reshape(-1) @ weights)], dtype=np.int64)]
    layers_mats = [ident]
    seen = layers_keys[0].copy()  # sorted
    while True:
        frontier = layers_mats[-1]
        prods = np.einsum("sij,fjk->sfik", gens, frontier) % p
        prods = prods.reshape(-1, n, n)
        keys = prods.reshape(len(prods), -1) @ weights
        keys, first = np.unique(keys, return_index=True)
        pos = np.searchsorted(seen, keys)
        pos = np.minimum(pos, len(seen) - 1)
        new = seen[pos] != keys
        if not new.any():
            break
        layers_keys.append(keys[new])
        layers_mats.append(prods[first[new]])
        seen = np.sort(np.concatenate([seen, keys[new]]))
        if len(seen) > cap:
            raise CapExceeded("closure exceeded cap %d" % cap)

    keys = np.concatenate(layers_keys)
    mats = np.concatenate(layers_mats).astype(np.uint8)
    order = np.argsort(keys)
    V = len(keys)
    perms = np.empty((len(gens), V), dtype=np.int32)
    chunk = max(1, 2**22 // (n * n))
    for s, g in enumerate(gens):
        for lo in range(0, V, chunk):
            block = mats[lo:lo + chunk].astype(np.int64)
            nk = (np.einsum("ij,fjk->fik", g, block) % p).reshape(len(block), -1) @ weights
            perms[s, lo:lo + chunk] = order[np.searchsorted(keys, nk, sorter=order)]
    return CayleyGraph(perms, S, keys, mats, [len(k) for k in layers_keys])


# ---------------------------------------------------------------------------
# Schreier graphs on F_p^n \ {0}


def _encode_table(g: np.ndarray, p: int) -> np.ndarray:
    """T[enc(v)] = enc(g v) for all v in F_p^n, uint32 of length p^n."""
    n = g.shape[0]
    weights = p ** np.arange(n, dtype=np.int64)
    col_enc = np.array([int((g[:, i] % p) @ weights) for i in range(n)], dtype=np.int64)
    if p == 2:
        table = np.zeros(1, dtype=np.uint32)
        for i in range(n):
            table = np.concatenate([table, table ^ np.uint32(col_enc[i])])
        return table
    size = p**n
    table = np.empty(size, dtype=np.uint32)
    chunk = 2**18
    for lo in range(0, size, chunk):
        idx = np.arange(lo, min(size, lo + chunk), dtype=np.int64)
        digits = (idx[:, None] // weights[None, :]) % p  # (k, n), digit i = v_i
        image = (digits @ g.T) % p
        table[lo:lo + len(idx)] = (image @ weights).astype(np.uint32)
    return table


class SchreierGraph(PermutationGraph):
    """Orbit graph of SL_n(F_p) on the nonzero vectors of F_p^n."""

    def __init__(self, perms, n: int, p: int, generators: GeneratorSet):
        super().__init__(perms, "Sch(F_%d^%d, %s)" % (p, n, generators.label), generators.labels)
        self.n = n
        self.p = p
        self.generators = generators

    def vertex_of(self, v) -> int:
        v = np.asarray(v, dtype=np.int64) % self.p
        idx = int(v @ (self.p ** np.arange(self.n, dtype=np.int64))) - 1
        if idx < 0:
            raise ValueError("the zero vector is not a vertex")
        return idx

    def vector_of(self, idx: int) -> np.ndarray:
        return (int(idx) + 1) // self.p ** np.arange(self.n, dtype=np.int64) % self.p


def schreier_graph(n: int, p: int, S: GeneratorSet) -> SchreierGraph:
    """Schreier graph of the natural action v -> s v on F_p^n minus 0."""
    if (S.n, S.p) != (n, p):
        raise ValueError("generating set lives in SL_%d(F_%d), not SL_%d(F_%d)" % (S.n, S.p, n, p))
    if p**n > SCHREIER_CAP:
        raise CapExceeded("p^n = %d exceeds the Schreier cap %d" % (p**n, SCHREIER_CAP))
    V = p**n - 1
    perms = np.empty((len(S), V), dtype=np.int32)
    cache: dict[bytes, np.ndarray] = {}
    for s, g in enumerate(S.elements):
        if g.key not in cache:
            table = _encode_table(g.array, p)
            cache[g.key] = (table[1:].astype(np.int64) - 1).astype(np.int32)
            del table
        perms[s] = cache[g.key]
    return SchreierGraph(perms, n, p, S)


# ---------------------------------------------------------------------------
# diameter and expansion spot checks


def diameter(g: PermutationGraph) -> int:
    """Eccentricity of vertex 0 (the identity for Cayley graphs).

    Cayley graphs are vertex-transitive, so this is the diameter.
    """
    if isinstance(g, CayleyGraph) and g.layer_sizes:
        return len(g.layer_sizes) - 1
    return len(g.bfs_layers(0)) - 1


@dataclass
class ExpansionReport:
    epsilon: float
    trials: int
    seed: int
    min_ratio: float
    argmin_size: int
    violations: list[tuple[int, float]]

    @property
    def ok(self) -> bool:
        return not self.violations


def vertex_boundary(g: PermutationGraph, members: np.ndarray) -> int:
    """|dA|: vertices outside A adjacent to A."""
    inside = np.zeros(g.num_vertices, dtype=bool)
    inside[members] = True
    nb = np.zeros(g.num_vertices, dtype=bool)
    nb[g.perms[:, members].ravel()] = True
    return int(np.count_nonzero(nb & ~inside))


def subset_expansion_check(g: PermutationGraph, epsilon: float, trials: int = 1000, seed: int = 0) -> ExpansionReport:
    """Test |dA| > epsilon |A| on BFS-grown subsets of random size <= |V|/2."""
    rng = np.random.default_rng(seed)
    V = g.num_vertices
    half = max(1, V // 2)
    best, best_size, violations = np.inf, 0, []
    for _ in range(trials):
        size = int(rng.integers(1, half + 1))
        root = int(rng.integers(0, V))
        seen = np.zeros(V, dtype=bool)
        seen[root] = True
        chosen = [np.array([root])]
        count, frontier = 1, chosen[0]
        while count < size:
            nxt = np.unique(g.perms[:, frontier].ravel())
            nxt = nxt[~seen[nxt]]
            if nxt.size == 0:
                break
            nxt = rng.permutation(nxt)[: size - count]
            seen[nxt] = True
            chosen.append(nxt)
            count += nxt.size
            frontier = nxt
        members = np.concatenate(chosen)
        ratio = vertex_boundary(g, members) / members.size
        if ratio < best:
            best, best_size = ratio, members.size
        if not ratio > epsilon:
            violations.append((int(members.size), float(ratio)))
    return ExpansionReport(epsilon, trials, seed, float(best), best_size, violations)
