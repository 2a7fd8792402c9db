"""Metric-space embeddings of graph instances.

Two metrics: shortest-path (edge weight as length, or its inverse) and
commute-time from the Laplacian spectrum. Entries of +inf mark vertex pairs
with no finite path, i.e. different connected components.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.csgraph as csgraph

from .graphs import GraphInstance

ZERO_EIG_TOL = 1e-9


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric pairwise distances for one instance, +inf across components."""

    values: np.ndarray
    kind: str = "custom"  # shortest-path | commute-time | custom
    weight_scheme: str = "length"  # length | inverse | raw
    k_eig: int | None = None

    def __post_init__(self):
        v = self.values
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("distance matrix must be square")
        if v.size and not np.allclose(np.diag(v), 0.0):
            raise ValueError("distance matrix must have a zero diagonal")
        finite = v[np.isfinite(v)]
        if finite.size and (finite < 0).any():
            raise ValueError("distances must be nonnegative")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def diameter(self) -> float:
        """Largest finite entry (0 for a single vertex or edgeless graph)."""
        finite = self.values[np.isfinite(self.values)]
        return float(finite.max()) if finite.size else 0.0

    def is_finite(self) -> bool:
        return bool(np.isfinite(self.values).all())


@dataclass(frozen=True)
class SpectralData:
    """Ascending Laplacian eigenpairs; eigenvectors are columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self):
        if abs(self.eigenvalues[0]) > ZERO_EIG_TOL:
            raise ValueError("smallest Laplacian eigenvalue must be 0")


def _weight_matrix(g: GraphInstance) -> np.ndarray:
    index = g.vertex_index()
    W = np.zeros((g.n_vertices, g.n_vertices))
    for (u, v), w in g.edges.items():
        i, j = index[u], index[v]
        W[i, j] = W[j, i] = w
    return W


def _edge_lengths(g: GraphInstance, weight_scheme: str) -> np.ndarray:
    W = _weight_matrix(g)
    if weight_scheme == "length":
        return W
    if weight_scheme == "inverse":
        out = np.zeros_like(W)
        nz = W > 0
        out[nz] = 1.0 / W[nz]
        return out
    raise ValueError(f"unknown weight scheme {weight_scheme!r}")


def shortest_path_matrix(g: GraphInstance, weight_scheme: str = "length") -> DistanceMatrix:
    """All-pairs shortest paths, Dijkstra from every source.

    Edge length is the raw weight (`length`) or its reciprocal (`inverse`).
    Unreachable pairs come out as +inf.
    """
    n = g.n_vertices
    if n == 0:
        return DistanceMatrix(np.zeros((0, 0)), "shortest-path", weight_scheme)
    lengths = scipy.sparse.csr_matrix(_edge_lengths(g, weight_scheme))
    d = csgraph.dijkstra(lengths, directed=False)
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d, "shortest-path", weight_scheme)


def laplacian(g: GraphInstance) -> np.ndarray:
    """Combinatorial Laplacian L = D - W (symmetric PSD, zero row sums)."""
    W = _weight_matrix(g)
    return np.diag(W.sum(axis=1)) - W


def laplacian_spectrum(g: GraphInstance, eigenproblem: str = "standard") -> SpectralData:
    """Full eigendecomposition of L, or of the pencil (L, D) when
    `eigenproblem` is "degree-generalized" (isolated vertices get a trivial
    zero eigenpair so the pencil stays well posed)."""
    L = laplacian(g)
    if eigenproblem == "standard":
        vals, vecs = np.linalg.eigh(L)
    elif eigenproblem == "degree-generalized":
        deg = np.diag(L).copy()
        # pad isolated vertices so D is invertible; their rows of L are zero,
        # which keeps the padded pencil's eigenpairs valid for the rest
        deg[deg <= 0] = 1.0
        vals, vecs = scipy.linalg.eigh(L, np.diag(deg))
    else:
        raise ValueError(f"unknown eigenproblem {eigenproblem!r}")
    vals = np.where(np.abs(vals) < ZERO_EIG_TOL, 0.0, vals)
    return SpectralData(vals, vecs)


def _component_labels(g: GraphInstance) -> np.ndarray:
    index = g.vertex_index()
    n = g.n_vertices
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(index[u]), find(index[v])
        if ru != rv:
            parent[rv] = ru
    return np.array([find(i) for i in range(n)])


def commute_time_matrix(
    g: GraphInstance,
    k_eig: int | str = "all",
    eigenproblem: str = "standard",
) -> DistanceMatrix:
    """Spectral commute-time distances.

    d(x, y)^2 = sum over the k_eig smallest nonzero eigenpairs of
    (1/lambda) (phi(x) - phi(y))^2. Zero eigenvalues (one per connected
    component) are excluded; pairs in different components are +inf.
    """
    n = g.n_vertices
    if n == 0:
        raise ValueError("empty graph has no commute-time matrix")
    if k_eig != "all":
        k_eig = int(k_eig)
        if not 1 <= k_eig <= n - 1 and n > 1:
            raise ValueError(f"k_eig must be in [1, {n - 1}]")
    if n == 1:
        return DistanceMatrix(np.zeros((1, 1)), "commute-time", "raw", k_eig=0)

    spec = laplacian_spectrum(g, eigenproblem)
    nonzero = np.flatnonzero(spec.eigenvalues > 0)
    k = len(nonzero) if k_eig == "all" else min(int(k_eig), len(nonzero))
    d2 = np.zeros((n, n))
    for idx in nonzero[:k]:
        phi = spec.eigenvectors[:, idx]
        diff = phi[:, None] - phi[None, :]
        d2 += diff * diff / spec.eigenvalues[idx]

    labels = _component_labels(g)
    cross = labels[:, None] != labels[None, :]
    d = np.sqrt(np.maximum(d2, 0.0))
    d[cross] = np.inf
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d, "commute-time", "raw", k_eig=k)


def effective_resistance_oracle(g: GraphInstance) -> DistanceMatrix:
    """Independent check for commute-time: sqrt of effective resistance via
    the Laplacian pseudoinverse, +inf across components."""
    n = g.n_vertices
    if n == 0:
        raise ValueError("empty graph has no resistance matrix")
    Lp = np.linalg.pinv(laplacian(g))
    diag = np.diag(Lp)
    r = diag[:, None] + diag[None, :] - 2.0 * Lp
    labels = _component_labels(g)
    d = np.sqrt(np.maximum(r, 0.0))
    d[labels[:, None] != labels[None, :]] = np.inf
    np.fill_diagonal(d, 0.0)
    return DistanceMatrix(d, "effective-resistance", "raw")
