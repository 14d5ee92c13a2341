from __future__ import annotations

import itertools

import numpy as np
import pytest

from wythoffian.complexes import wythoff
from wythoffian.coxeter import (ResourceError, UnsupportedGroupError, build_group, cayley_graph, inversion_embedding,
                                parabolic_cosets, reflection_count_formula)
from wythoffian.embed import check_certificate
from wythoffian.graphs import is_isomorphic, skeleton
from wythoffian.zoo import simplex


def matmul(A, B):
    n = len(A)
    return tuple(tuple(sum((A[i][k] * B[k][j] for k in range(n)), A[0][0] * 0) for j in range(n)) for i in range(n))


def matrix_closure(gens):
    """Independent oracle: BFS over exact matrix products, tracking inverses (gs)^-1 = s g^-1."""
    n = len(gens[0])
    one = gens[0][0][0] * 0 + 1
    zero = one * 0
    ident = tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
    inv = {ident: ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = matmul(g, s)
                if h not in inv:
                    inv[h] = matmul(s, inv[g])
                    nxt.append(h)
        frontier = nxt
    return inv


@pytest.mark.parametrize("name", ["A3", "B3", "H3", "D4"])
def test_order_and_reflections_against_matrix_oracle(name):
    W = build_group(name)
    gens = [tuple(map(tuple, W.generator_matrix(i))) for i in range(W.rank)]
    inv = matrix_closure(gens)
    elems = list(inv)
    assert len(elems) == W.order
    refl = {matmul(matmul(g, s), inv[g]) for g in elems for s in gens}
    assert len(refl) == len(W.reflections()) == reflection_count_formula(name)


def test_generator_relations_exact():
    for name in ("H3", "B3", "A4", "F4"):
        W = build_group(name)
        assert W.check_relations()
        for i in range(W.rank):
            s = tuple(map(tuple, W.generator_matrix(i)))
            sq = matmul(s, s)
            assert all(sq[a][b] == (1 if a == b else 0) for a in range(W.rank) for b in range(W.rank))
            for j in range(i + 1, W.rank):
                t = tuple(map(tuple, W.generator_matrix(j)))
                p = matmul(s, t)
                q = p
                for _ in range(int(W.m[i, j]) - 1):
                    q = matmul(q, p)
                assert all(q[a][b] == (1 if a == b else 0) for a in range(W.rank) for b in range(W.rank))


@pytest.mark.parametrize("name,order", [("A3", 24), ("H3", 120), ("F4", 1152), ("H4", 14400), ("B4", 384),
                                        ("D5", 1920), ("I2(7)", 14), ("I2(12)", 24)])
def test_orders(name, order):
    assert build_group(name).order == order


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "B5", "D3", "D4", "D5",
                                  "F4", "H3", "H4"] + [f"I2({p})" for p in range(3, 13)])
def test_reflection_counts(name):
    W = build_group(name)
    assert len(W.reflections()) == reflection_count_formula(name)
    assert W.positive_root_count() == len(W.reflections())


def test_closed_forms():
    for d in range(1, 6):
        assert reflection_count_formula(f"A{d}") == d * (d + 1) // 2
        assert reflection_count_formula(f"B{d}") == d * d
    for d in range(3, 6):
        assert reflection_count_formula(f"D{d}") == d * (d - 1)


def test_cap_and_unsupported():
    with pytest.raises(ResourceError):
        build_group("E6")
    assert build_group("E6", cap=60000).order == 51840
    with pytest.raises((UnsupportedGroupError, ValueError)):
        build_group("Q3")


def test_cayley_graph_basics():
    W = build_group("H3")
    G = cayley_graph(W)
    assert G.n == 120 and set(G.degrees().tolist()) == {3}
    assert G.diameter() == 15 == int(W.word_length.max())
    assert np.array_equal(G.bfs(0), W.word_length)
    assert is_isomorphic(cayley_graph(build_group("A3")), skeleton(wythoff(simplex(3), (0, 1, 2))))


@pytest.mark.parametrize("name", ["A3", "B3", "H3", "D4", "F4", "I2(9)"])
def test_inversion_embedding_exhaustive(name):
    W = build_group(name)
    cert = inversion_embedding(W)
    assert cert.bits[0].sum() == 0
    assert cert.bits[W.longest_element()].sum() == len(W.reflections())
    chk = check_certificate(cayley_graph(W), cert, mode="exhaustive")
    assert chk.ok and cert.m == len(W.reflections())


def test_inversion_embedding_h4_sampled():
    W = build_group("H4")
    cert = inversion_embedding(W)
    assert cert.m == 60
    chk = check_certificate(cayley_graph(W), cert, mode="sampled", pairs=200_000, seed=1)
    assert chk.ok and chk.pairs >= 200_000


def test_parabolic_cosets():
    W = build_group("A3")
    assert len(set(parabolic_cosets(W, [0, 1, 2]).tolist())) == 1
    assert len(set(parabolic_cosets(W, [1, 2]).tolist())) == 4
    H = build_group("H4")
    c = parabolic_cosets(H, [1, 2, 3])
    assert len(set(c.tolist())) == 120
    assert set(np.bincount(c).tolist()) == {120}
    for J in itertools.combinations(range(3), 2):
        c = parabolic_cosets(build_group("B3"), J)
        assert (c.max() + 1) * np.bincount(c)[0] == 48
