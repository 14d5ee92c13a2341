from __future__ import annotations

import itertools
from collections import deque

import numpy as np
import pytest

from wythoffian.complexes import FaceComplex, StructuralError, dual, wythoff
from wythoffian.graphs import (DisconnectedGraphError, MetricGraph, all_pairs_distances, cocktail_party, complete,
                               cycle, dual_skeleton, find_graph_isomorphism, half_cube, hypercube,
                               is_graph_isomorphism, is_isomorphic, johnson, path, skeleton)
from wythoffian.zoo import cross_polytope, icosahedron, simplex


def bfs_oracle(G: MetricGraph):
    adj = [[] for _ in range(G.n)]
    for u, v in G.edges.tolist():
        adj[u].append(v)
        adj[v].append(u)
    D = np.full((G.n, G.n), -1)
    for s in range(G.n):
        D[s, s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if D[s, y] < 0:
                    D[s, y] = D[s, x] + 1
                    q.append(y)
    return D


def test_skeleton_examples():
    for d in range(2, 6):
        assert is_isomorphic(skeleton(simplex(d)), complete(d + 1))
    assert skeleton(wythoff(cross_polytope(3), {0, 1})).n == 24
    assert is_isomorphic(skeleton(dual(cross_polytope(3))), hypercube(3))


def test_dual_skeleton_examples():
    assert dual_skeleton(wythoff(cross_polytope(3), {1})).n == 14
    assert dual_skeleton(wythoff(simplex(3), {0, 1})).n == 8
    for K in (cross_polytope(3), wythoff(simplex(3), {0, 2}), icosahedron()):
        assert is_isomorphic(dual_skeleton(K), skeleton(dual(K)))


def test_skeleton_rejects_bad_edge():
    # an "edge" with three vertices below it
    K = FaceComplex(1, [0, 0, 0, 1], [(0, 3), (1, 3), (2, 3)])
    with pytest.raises(StructuralError):
        skeleton(K)


@pytest.mark.parametrize("make", [lambda: skeleton(wythoff(cross_polytope(3), {0, 2})),
                                  lambda: half_cube(5), lambda: johnson(6, 3), lambda: cycle(9)])
def test_distances_against_bfs_oracle(make):
    G = make()
    D = all_pairs_distances(G)
    assert np.array_equal(D.astype(int), bfs_oracle(G))
    assert np.array_equal(D, D.T) and not np.diag(D).any()
    assert ((D == 1).sum() // 2) == G.m


def test_distance_examples():
    assert all_pairs_distances(path(3))[0, 2] == 2
    D = all_pairs_distances(cocktail_party(4))
    for u, v in itertools.combinations(range(8), 2):
        assert D[u, v] == (2 if v == u ^ 1 else 1)
    assert skeleton(wythoff(icosahedron(), (0, 1, 2))).diameter() == 15


def test_disconnected():
    G = MetricGraph(4, [(0, 1), (2, 3)])
    assert not G.is_connected()
    with pytest.raises(DisconnectedGraphError):
        all_pairs_distances(G)


def test_reference_graphs():
    assert hypercube(4).n == 16 and hypercube(4).m == 32
    assert half_cube(4).n == 8 and set(half_cube(4).degrees().tolist()) == {6}
    assert johnson(5, 2).n == 10 and set(johnson(5, 2).degrees().tolist()) == {6}
    assert is_isomorphic(half_cube(4), cocktail_party(4))
    assert is_isomorphic(half_cube(3), complete(4))
    assert is_isomorphic(johnson(4, 1), complete(4))


def test_isomorphism_examples():
    assert is_isomorphic(skeleton(wythoff(simplex(3), {1})), johnson(4, 2))
    assert is_isomorphic(skeleton(wythoff(cross_polytope(4), {0})), half_cube(4))
    G = skeleton(wythoff(cross_polytope(3), {0, 1, 2}))
    phi = find_graph_isomorphism(G, G)
    assert phi is not None and is_graph_isomorphism(G, G, phi)


def test_isomorphism_negative():
    # both 3-regular on 6 vertices
    prism = MetricGraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    k33 = MetricGraph(6, [(a, b) for a in range(3) for b in range(3, 6)])
    assert not is_isomorphic(prism, k33)
    # 4x4 rook graph and the Shrikhande graph share all parameters
    rook = MetricGraph(16, [(u, v) for u, v in itertools.combinations(range(16), 2)
                            if u // 4 == v // 4 or u % 4 == v % 4])
    shr = MetricGraph(16, [(u, v) for u, v in itertools.combinations(range(16), 2)
                           if ((u // 4 - v // 4) % 4, (u % 4 - v % 4) % 4) in
                           {(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)}])
    assert sorted(rook.degrees().tolist()) == sorted(shr.degrees().tolist())
    assert not is_isomorphic(rook, shr)


def test_json_roundtrip():
    G = skeleton(wythoff(simplex(3), {0, 1}))
    H = MetricGraph.from_json(G.to_json())
    assert H.n == G.n and np.array_equal(H.edges, G.edges)
    assert set(G.to_json()) == {"n", "edges"}
