"""Isometric hypercube embeddings through the Djokovic-Winkler relation."""
from __future__ import annotations

from typing import Optional

import numpy as np

from ..graphs import MetricGraph
from .certificate import EmbeddingCertificate, check_certificate


def theta_matrix(G: MetricGraph) -> np.ndarray:
    """Boolean ``m x m`` matrix of the relation Theta on edges (uses the full distance matrix)."""
    D = G.dist.astype(np.int32)
    u, v = G.edges[:, 0], G.edges[:, 1]
    a = D[np.ix_(u, u)] + D[np.ix_(v, v)]
    b = D[np.ix_(u, v)] + D[np.ix_(v, u)]
    return a != b


def theta_classes(G: MetricGraph) -> Optional[np.ndarray]:
    """Class index per edge when ``G`` is bipartite and the classes found are disjoint.

    The class of an unassigned edge ``uv`` is the set of edges crossing
    ``W_uv = {x : d(x,u) < d(x,v)}``; it is exactly the Theta-class of ``uv``.
    Overlap between two such classes means Theta is not transitive.
    """
    if G.bipartition() is None:
        return None
    cls = np.full(G.m, -1, dtype=np.int64)
    e0, e1 = G.edges[:, 0], G.edges[:, 1]
    k = 0
    for i in range(G.m):
        if cls[i] >= 0:
            continue
        du = G.bfs(int(e0[i])).astype(np.int32)
        dv = G.bfs(int(e1[i])).astype(np.int32)
        side = du < dv
        cut = side[e0] != side[e1]
        if np.any(cls[cut] >= 0):
            return None
        cls[cut] = k
        k += 1
    return cls


def partial_cube(G: MetricGraph, verify: str = "auto") -> Optional[EmbeddingCertificate]:
    """Scale-1 embedding with one coordinate per Theta-class, or ``None``.

    Bit ``k`` of vertex ``x`` is 1 when ``x`` lies on the far side of class ``k``
    from vertex 0.  The result is verified on all pairs, so ``None`` is exact too.
    """
    if not G.is_connected():
        return None
    if G.n == 1:
        return EmbeddingCertificate(1, np.zeros((1, 0), dtype=np.uint8))
    cls = theta_classes(G)
    if cls is None:
        return None
    m = int(cls.max()) + 1
    bits = np.zeros((G.n, m), dtype=np.uint8)
    e0, e1 = G.edges[:, 0], G.edges[:, 1]
    # one representative edge per class; the side of its endpoints fixes the coordinate
    first = np.unique(cls, return_index=True)[1]
    for k, i in enumerate(first):
        du = G.bfs(int(e0[i])).astype(np.int32)
        dv = G.bfs(int(e1[i])).astype(np.int32)
        side = du < dv
        bits[:, k] = side != side[0]
    cert = EmbeddingCertificate(1, bits)
    if not check_certificate(G, cert, mode=verify).ok:
        return None
    return cert


def theta_class_count(G: MetricGraph) -> Optional[int]:
    cert = partial_cube(G)
    return None if cert is None else cert.m
