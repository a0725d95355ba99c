"""Second eigenvalue of normalized adjacency operators and Kazhdan quantities.

The operator is A = (1/|S|) sum_s P_s on functions of the vertices, where P_s
is the permutation f -> f(s . ). Its top eigenvalue is 1 on constants; the
second eigenvalue lambda_2 is the top of A restricted to the complement of
the constants, which is what the iterative solvers compute after explicitly
projecting out the all-ones direction at every step.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DegenerateWitness
from .graphs import PermutationGraph

DENSE_LIMIT = 4096


@dataclass
class SpectralReport:
    lambda2: float
    laplacian_gap: float
    kazhdan_lower: float
    kazhdan_upper: float
    residual: float
    iterations: int
    seed: int
    method: str
    num_vertices: int
    degree: int
    converged: bool = True
    lambda_min: float | None = None
    bipartite: bool | None = None
    tol: float = 1e-8
    label: str = ""

    def to_json(self) -> str:
        return json.dumps(asdict(self))

    @classmethod
    def from_json(cls, text: str) -> "SpectralReport":
        return cls(**json.loads(text))


def kazhdan_bounds(lambda2: float, s_size: int) -> tuple[float, float]:
    """Sandwich sqrt(2(1 - l2)) <= K(G; S) <= sqrt(2 |S| (1 - l2)).

    The lower bound uses max_s |sv - v|^2 >= mean_s |sv - v|^2 = 2(1 - <Av, v>);
    the upper one evaluates the full sum on a lambda_2 eigenvector.
    """
    if not -1.0 - 1e-12 <= lambda2 <= 1.0 + 1e-12:
        raise ValueError("lambda2 must lie in [-1, 1], got %r" % lambda2)
    if s_size < 1:
        raise ValueError("generating set must be nonempty")
    gap = max(0.0, 1.0 - lambda2)
    return math.sqrt(2.0 * gap), math.sqrt(2.0 * s_size * gap)


def tau_to_expansion(tau: float) -> float:
    """Vertex-expansion constant tau^2 / 4 guaranteed by a Kazhdan constant tau."""
    if not 0.0 <= tau <= 2.0:
        raise ValueError("tau must lie in [0, 2], got %r" % tau)
    return tau * tau / 4.0


def _deflate(x: np.ndarray) -> np.ndarray:
    return x - x.mean()


def _dense(graph: PermutationGraph):
    ev = np.linalg.eigvalsh(graph.dense_adjacency())
    # eigvalsh sorts ascending; ev[-1] is the trivial eigenvalue 1
    return float(ev[-2]), float(ev[0]), 0.0, 1


def _lanczos(graph: PermutationGraph, tol: float, max_iter: int, rng: np.random.Generator, sign: float = 1.0, basis: int = 48, keep: int = 12):
    """Thick-restart Lanczos with full reorthogonalization.

    Finds the top eigenvalue of sign * A on the complement of the constants.
    Returns ``(theta, residual, matvecs, converged)``; the residual is the
    true norm |A x - theta x| of the returned Ritz vector.

    After a restart the basis is [Y, q] with Y the kept Ritz vectors and q the
    last residual direction; Gram-Schmidt on A q recovers the coupling column
    Y^T A q, so the projected matrix is rebuilt by the same loop.
    """
    V = graph.num_vertices
    basis = max(2, min(basis, V - 1))
    keep = max(1, min(keep, basis - 1))
    op = lambda x: sign * _deflate(graph.matvec(x))  # noqa: E731

    Q = np.zeros((basis + 1, V))
    H = np.zeros((basis, basis))
    q = _deflate(rng.standard_normal(V))
    Q[0] = q / np.linalg.norm(q)
    start, matvecs = 0, 0
    while True:
        m, beta = basis, 0.0
        for j in range(start, basis):
            w = op(Q[j])
            matvecs += 1
            c = Q[: j + 1] @ w
            w -= c @ Q[: j + 1]
            c2 = Q[: j + 1] @ w
            w -= c2 @ Q[: j + 1]
            H[: j + 1, j] = H[j, : j + 1] = c + c2
            beta = float(np.linalg.norm(w))
            if beta < 1e-13:
                m = j + 1  # invariant subspace
                break
            Q[j + 1] = w / beta
            if j + 1 < basis:
                H[j + 1, j] = H[j, j + 1] = beta
        vals, vecs = np.linalg.eigh(H[:m, :m])
        theta = float(vals[-1])
        est = abs(beta * vecs[-1, -1])
        if est <= tol or m < basis or matvecs >= max_iter:
            x = vecs[:, -1] @ Q[:m]
            x /= np.linalg.norm(x)
            resid = float(np.linalg.norm(op(x) - theta * x))
            matvecs += 1
            if resid <= tol or m < basis or matvecs >= max_iter:
                return sign * theta, resid, matvecs, resid <= tol
        top = vecs[:, -keep:][:, ::-1]
        Q[:keep] = top.T @ Q[:basis]
        Q[keep] = Q[basis]
        H[:] = 0.0
        H[np.arange(keep), np.arange(keep)] = vals[-keep:][::-1]
        start = keep


def _power(graph: PermutationGraph, tol: float, max_iter: int, rng: np.random.Generator):
    """Power iteration on (A + I) / 2, which has the same top eigenvector on 1-perp
    and a nonnegative spectrum, so lambda_2 dominates even for bipartite graphs."""
    x = _deflate(rng.standard_normal(graph.num_vertices))
    x /= np.linalg.norm(x)
    theta, resid = 0.0, np.inf
    for it in range(1, max_iter + 1):
        ax = _deflate(graph.matvec(x))
        theta = float(x @ ax)
        resid = float(np.linalg.norm(ax - theta * x))
        if resid <= tol:
            return theta, resid, it, True
        y = 0.5 * (ax + x)
        x = y / np.linalg.norm(y)
    return theta, resid, max_iter, False


def second_eigenvalue(
    graph: PermutationGraph,
    tol: float = 1e-8,
    max_iter: int = 100_000,
    seed: int = 0,
    method: str = "auto",
    with_lambda_min: bool = True,
) -> SpectralReport:
    """lambda_2 of the normalized adjacency, with the Kazhdan sandwich.

    ``method`` is ``auto`` (dense up to 4096 vertices, Lanczos beyond),
    ``dense``, ``lanczos`` or ``power``. Non-convergence is reported via
    ``converged=False`` rather than raised.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if method == "auto":
        method = "dense" if graph.num_vertices <= DENSE_LIMIT else "lanczos"
    rng = np.random.default_rng(seed)
    lam_min = None
    if graph.num_vertices == 1:
        lam2, resid, iters, conv = 1.0, 0.0, 0, True
    elif method == "dense":
        lam2, lam_min, resid, iters = _dense(graph)
        conv = True
    elif method == "lanczos":
        lam2, resid, iters, conv = _lanczos(graph, tol, max_iter, rng)
        if with_lambda_min:
            lam_min, _, more, _ = _lanczos(graph, tol, max_iter, rng, sign=-1.0)
            iters += more
    elif method == "power":
        lam2, resid, iters, conv = _power(graph, tol, max_iter, rng)
    else:
        raise ValueError("unknown method %r" % method)
    lam2 = min(1.0, max(-1.0, lam2))
    lower, upper = kazhdan_bounds(lam2, graph.degree)
    bip = graph.is_bipartite() if graph.is_connected() else None
    return SpectralReport(
        lambda2=lam2,
        laplacian_gap=1.0 - lam2,
        kazhdan_lower=lower,
        kazhdan_upper=upper,
        residual=float(resid),
        iterations=int(iters),
        seed=seed,
        method=method,
        num_vertices=graph.num_vertices,
        degree=graph.degree,
        converged=bool(conv),
        lambda_min=lam_min,
        bipartite=bip,
        tol=tol,
        label=graph.label,
    )


def witness_upper_bound(graph: PermutationGraph, v: np.ndarray) -> float:
    """max_s |pi(s) v - v| / |v| after removing the invariant component of v.

    Any unit vector orthogonal to the constants bounds K(G; S) from above.
    """
    v = _deflate(np.asarray(v, dtype=np.float64))
    norm = float(np.linalg.norm(v))
    if norm <= 1e-12 * max(1.0, math.sqrt(graph.num_vertices)):
        raise DegenerateWitness("witness has no component orthogonal to the constants")
    return max(float(np.linalg.norm(v[perm] - v)) for perm in graph.perms) / norm


def basis_indicator(n: int, p: int) -> np.ndarray:
    """Indicator of {e_1, ..., e_n} on the Schreier vertex set of F_p^n minus 0."""
    v = np.zeros(p**n - 1)
    v[(p ** np.arange(n)) - 1] = 1.0
    return v
