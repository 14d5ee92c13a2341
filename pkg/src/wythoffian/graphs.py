"""Finite graphs with their path metric: skeletons, reference families, isomorphism."""
from __future__ import annotations

import itertools
import json
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix, csr_matrix
from scipy.sparse.csgraph import breadth_first_order, connected_components

from .complexes import FaceComplex, StructuralError
from .isomorphism import find_isomorphism

ISO_CAP = 2000
DIST_DTYPE = np.uint16


class DisconnectedGraphError(ValueError):
    pass


class MetricGraph:
    """Simple undirected graph on ``0..n-1`` with lazily computed BFS distances."""

    def __init__(self, n: int, edges, labels: Optional[Sequence] = None):
        self.n = int(n)
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        e = np.sort(e, axis=1)
        e = e[e[:, 0] != e[:, 1]]
        self.edges = np.unique(e, axis=0) if len(e) else e
        if len(self.edges) and (self.edges.min() < 0 or self.edges.max() >= self.n):
            raise ValueError("edge endpoint out of range")
        self.labels = list(labels) if labels is not None else None
        m = len(self.edges)
        data = np.ones(2 * m, dtype=np.int8)
        rows = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        cols = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        self.csr: csr_matrix = coo_matrix((data, (rows, cols)), shape=(self.n, self.n)).tocsr()
        self._dist: Optional[np.ndarray] = None
        self._adj: Optional[list[list[int]]] = None

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def adj(self) -> list[list[int]]:
        if self._adj is None:
            ptr, ind = self.csr.indptr, self.csr.indices
            self._adj = [sorted(ind[ptr[v]:ptr[v + 1]].tolist()) for v in range(self.n)]
        return self._adj

    def degrees(self) -> np.ndarray:
        return np.diff(self.csr.indptr)

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return connected_components(self.csr, directed=False)[0] == 1

    def bfs(self, source: int) -> np.ndarray:
        """Distances from ``source``; raises on a disconnected graph."""
        n = self.n
        order, pred = breadth_first_order(self.csr, int(source), directed=False, return_predecessors=True)
        if len(order) != n:
            raise DisconnectedGraphError("graph is not connected")
        jump = pred.copy()
        jump[source] = source
        depth = np.ones(n, dtype=np.int64)
        depth[source] = 0
        while True:
            nxt = jump[jump]
            if np.array_equal(nxt, jump):
                return depth.astype(DIST_DTYPE)
            depth += depth[jump]
            jump = nxt

    def bfs_rows(self, sources: Iterable[int]) -> np.ndarray:
        sources = list(sources)
        if self._dist is not None:
            return self._dist[sources]
        out = np.empty((len(sources), self.n), dtype=DIST_DTYPE)
        for i, s in enumerate(sources):
            out[i] = self.bfs(s)
        return out

    @property
    def dist(self) -> np.ndarray:
        """All-pairs distance matrix (cached)."""
        if self._dist is None:
            self._dist = self.bfs_rows(range(self.n))
        return self._dist

    def diameter(self) -> int:
        return int(self.dist.max()) if self.n else 0

    def bipartition(self) -> Optional[np.ndarray]:
        """0/1 colouring by parity of distance from vertex 0, or ``None`` if not bipartite."""
        if self.n == 0:
            return np.zeros(0, dtype=np.int8)
        col = (self.bfs(0) % 2).astype(np.int8)
        if len(self.edges) and np.any(col[self.edges[:, 0]] == col[self.edges[:, 1]]):
            return None
        return col

    def subgraph(self, vertices: Sequence[int]) -> "MetricGraph":
        vertices = list(vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        e = [(pos[a], pos[b]) for a, b in self.edges.tolist() if a in pos and b in pos]
        return MetricGraph(len(vertices), e)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": self.edges.tolist()}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> "MetricGraph":
        return cls(data["n"], data["edges"])

    def __repr__(self):
        return f"MetricGraph(n={self.n}, m={self.m})"


def all_pairs_distances(G: MetricGraph) -> np.ndarray:
    if not G.is_connected():
        raise DisconnectedGraphError("graph is not connected")
    return G.dist


def skeleton(K: FaceComplex) -> MetricGraph:
    """Vertex-edge graph of a polytopal complex."""
    verts = K.faces(0)
    pos = {v: i for i, v in enumerate(verts)}
    edges = []
    for e in K.faces(1):
        below = K.down[e]
        if len(below) != 2:
            raise StructuralError(f"1-face {e} has {len(below)} vertices")
        edges.append((pos[below[0]], pos[below[1]]))
    labels = [K.labels[v] for v in verts] if K.labels is not None else None
    return MetricGraph(len(verts), edges, labels)


def dual_skeleton(K: FaceComplex) -> MetricGraph:
    """Facets of ``K``, adjacent when they share a ridge."""
    facets = K.faces(K.d)
    pos = {f: i for i, f in enumerate(facets)}
    edges = []
    for r in K.faces(K.d - 1):
        above = K.up[r]
        if len(above) != 2:
            raise StructuralError(f"ridge {r} lies in {len(above)} facets")
        edges.append((pos[above[0]], pos[above[1]]))
    labels = [K.labels[f] for f in facets] if K.labels is not None else None
    return MetricGraph(len(facets), edges, labels)


# --- reference graphs ------------------------------------------------------

def _from_vectors(vecs: list[tuple[int, ...]], adjacent) -> MetricGraph:
    edges = [(i, j) for i, j in itertools.combinations(range(len(vecs)), 2) if adjacent(vecs[i], vecs[j])]
    return MetricGraph(len(vecs), edges, vecs)


def _hamming(x, y) -> int:
    return sum(a != b for a, b in zip(x, y))


def hypercube(m: int) -> MetricGraph:
    return _from_vectors(list(itertools.product((0, 1), repeat=m)), lambda x, y: _hamming(x, y) == 1)


def half_cube(m: int) -> MetricGraph:
    vecs = [v for v in itertools.product((0, 1), repeat=m) if sum(v) % 2 == 0]
    return _from_vectors(vecs, lambda x, y: _hamming(x, y) == 2)


def johnson(m: int, n: int) -> MetricGraph:
    vecs = [v for v in itertools.product((0, 1), repeat=m) if sum(v) == n]
    vecs.sort(reverse=True)
    return _from_vectors(vecs, lambda x, y: _hamming(x, y) == 2)


def complete(n: int) -> MetricGraph:
    return MetricGraph(n, list(itertools.combinations(range(n), 2)))


def cocktail_party(d: int) -> MetricGraph:
    """K_{d x 2}: vertices ``2i`` and ``2i+1`` form the non-adjacent pairs."""
    return MetricGraph(2 * d, [(a, b) for a, b in itertools.combinations(range(2 * d), 2) if a // 2 != b // 2])


def path(n: int) -> MetricGraph:
    return MetricGraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> MetricGraph:
    return MetricGraph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_minus_cycle(n: int, k: int) -> MetricGraph:
    """K_n with the edges of a k-cycle on vertices ``0..k-1`` removed (e.g. K7 - C5)."""
    gone = {tuple(sorted((i, (i + 1) % k))) for i in range(k)}
    return MetricGraph(n, [e for e in itertools.combinations(range(n), 2) if e not in gone])


def hypercube_minus_antipodes(m: int) -> MetricGraph:
    vecs = [v for v in itertools.product((0, 1), repeat=m) if 0 < sum(v) < m]
    return _from_vectors(vecs, lambda x, y: _hamming(x, y) == 1)


def cartesian_product(G: MetricGraph, H: MetricGraph) -> MetricGraph:
    idx = lambda a, b: a * H.n + b
    edges = [(idx(a, b), idx(a2, b)) for a, a2 in G.edges.tolist() for b in range(H.n)]
    edges += [(idx(a, b), idx(a, b2)) for b, b2 in H.edges.tolist() for a in range(G.n)]
    return MetricGraph(G.n * H.n, edges)


# --- isomorphism -----------------------------------------------------------

def find_graph_isomorphism(G: MetricGraph, H: MetricGraph, cap: int = ISO_CAP) -> Optional[list[int]]:
    if max(G.n, H.n) > cap:
        raise ValueError(f"isomorphism test capped at {cap} vertices")
    if G.n != H.n or G.m != H.m:
        return None
    if sorted(G.degrees().tolist()) != sorted(H.degrees().tolist()):
        return None
    return find_isomorphism(G.adj, H.adj)


def is_isomorphic(G: MetricGraph, H: MetricGraph, cap: int = ISO_CAP) -> bool:
    return find_graph_isomorphism(G, H, cap) is not None


def is_graph_isomorphism(G: MetricGraph, H: MetricGraph, phi: Sequence[int]) -> bool:
    if G.n != H.n or G.m != H.m or sorted(phi) != list(range(G.n)):
        return False
    he = {tuple(e) for e in H.edges.tolist()}
    return all(tuple(sorted((phi[a], phi[b]))) in he for a, b in G.edges.tolist())
