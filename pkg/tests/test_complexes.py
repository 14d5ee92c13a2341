from __future__ import annotations

import itertools

import pytest

from wythoffian.complexes import (FaceComplex, StructuralError, _nonempty_subsets, blocks, boundary_types,
                                  complex_isomorphism, dual, essential_family, is_isomorphism, order_relation,
                                  wythoff, wythoff_type_count)
from wythoffian.zoo import cross_polytope, simplex


def literal_blocks(Up, U, V):
    # quantifiers spelled out exactly as in the definition
    for u in U:
        for v in V:
            if not any((u <= x <= v) or (u >= x >= v) for x in Up):
                return False
    return True


def subsets(d):
    return [frozenset(c) for r in range(1, d + 2) for c in itertools.combinations(range(d + 1), r)]


def test_blocks_reflexive():
    for d in (2, 3):
        for U in subsets(d):
            for V in subsets(d):
                assert blocks(U, U, V, d)
    assert blocks({1}, {1}, {0, 2}, 3)


@pytest.mark.parametrize("V", [{0}, {0, 2}, {1, 3}, {0, 1, 2, 3}])
def test_blocks_matches_quantifier_oracle(V):
    S = subsets(3)
    assert len(S) == 15
    for Up in S:
        for U in S:
            assert blocks(Up, U, V, 3) == literal_blocks(Up, U, V)


def test_blocks_rejects_empty():
    with pytest.raises(ValueError):
        blocks(set(), {1}, {0}, 3)


@pytest.mark.parametrize("V", subsets(3))
def test_essential_family_m_and_M_by_direct_minimisation(V):
    d = 3
    fam = essential_family(V, d)
    S = subsets(d)
    equiv = lambda a, b: literal_blocks(a, b, V) and literal_blocks(b, a, V)
    for U in S:
        cls = [W for W in S if equiv(U, W)]
        # smallest subset of U blocking U, largest subset of Delta blocked by U
        mins = [W for W in S if W <= U and literal_blocks(W, U, V)]
        maxs = [W for W in S if literal_blocks(U, W, V)]
        m = min(mins, key=len)
        M = max(maxs, key=len)
        assert all(m <= W for W in mins) and all(W <= M for W in maxs)
        assert fam.m(U) == m and fam.M(U) == M
        assert m in cls and M in cls
    assert frozenset(V) in fam.E
    assert all(fam.less(frozenset(V), X) for X in fam.E if X != frozenset(V))
    for U in S:
        assert fam.m(U) in fam.E


def test_essential_family_full_type():
    fam = essential_family({0, 1, 2, 3}, 3)
    assert fam.M({0, 1, 2, 3}) == frozenset({0, 1, 2, 3})


def test_boundary_types_examples():
    edges, _ = boundary_types({0, 2}, 3)
    assert edges == {frozenset({1, 2}), frozenset({0, 1, 3})}
    _, facets = boundary_types({1}, 2)
    assert facets == {frozenset({0}), frozenset({2})}


@pytest.mark.parametrize("gen", ["simplex", "cross"])
def test_boundary_types_match_constructed(gen):
    K = simplex(4) if gen == "simplex" else cross_polytope(4)
    d = K.d
    for V in subsets(d):
        W = wythoff(K, V)
        edges, facets = boundary_types(V, d)
        assert len(edges) == len(V)
        fam = essential_family(V, d)
        seen1 = {frozenset(fam_type) for fam_type in fam.E if fam.dim(fam_type) == 1}
        seend = {frozenset(fam_type) for fam_type in fam.E if fam.dim(fam_type) == d}
        assert seen1 == edges and seend == facets
        # and each type actually occurs among the faces of that dimension
        types1 = {K.flag_type(W.labels[x]) for x in W.faces(1)}
        typesd = {K.flag_type(W.labels[x]) for x in W.faces(d)}
        assert types1 == edges and typesd == facets


def test_wythoff_type_count():
    assert wythoff_type_count(3, False) == 15
    assert wythoff_type_count(3, True) == 9
    assert wythoff_type_count(1, True) == 2
    for d in range(1, 6):
        # brute force: V up to V ~ d - V
        classes = {min(V, frozenset(d - v for v in V), key=sorted) for V in _nonempty_subsets(d)}
        assert wythoff_type_count(d, True) == len(classes)
        assert wythoff_type_count(d, False) == len(_nonempty_subsets(d))


def test_json_roundtrip_and_ordering():
    K = wythoff(cross_polytope(3), {0, 2})
    data = K.to_json()
    assert [f["dim"] for f in data["faces"]] == sorted(f["dim"] for f in data["faces"])
    L = FaceComplex.from_json(data)
    assert L.face_counts() == K.face_counts() and set(L.covers) == set(K.covers)


def test_invalid_complex_rejected():
    # two vertices and an edge, plus a stray vertex not under any edge
    K = FaceComplex(1, [0, 0, 0, 1], [(0, 3), (1, 3)])
    with pytest.raises(StructuralError):
        K.check_complex()
    with pytest.raises(StructuralError):
        wythoff(K, {0})


def test_dual_basics():
    for K in (simplex(3), cross_polytope(3), cross_polytope(4)):
        assert complex_isomorphism(dual(dual(K)), K) is not None
    assert complex_isomorphism(dual(simplex(3)), simplex(3)) is not None
    cube = dual(cross_polytope(3))
    assert cube.face_counts() == (8, 12, 6)


def test_wythoff_specialisations():
    for K in (simplex(3), cross_polytope(3), simplex(4)):
        assert complex_isomorphism(wythoff(K, {0}), K) is not None
        assert complex_isomorphism(wythoff(K, {K.d}), dual(K)) is not None
        assert len(wythoff(K, {1}).faces(0)) == len(K.faces(1))
        assert len(wythoff(K, range(K.d + 1)).faces(0)) == len(K.maximal_flags())
    assert len(wythoff(cross_polytope(3), {0, 2}).faces(0)) == 24


def test_wythoff_order_is_compatibility():
    # literal order: F' < F iff t(F') < t(F) and F u F' is a flag
    K = cross_polytope(3)
    for V in ({0, 2}, {1}, {0, 1, 2}):
        W = wythoff(K, V)
        fam = essential_family(V, K.d)
        rel = order_relation(W)
        for x in range(W.n):
            for y in range(W.n):
                if x == y:
                    continue
                Fx, Fy = W.labels[x], W.labels[y]
                want = fam.less(K.flag_type(Fx), K.flag_type(Fy)) and K.is_flag(set(Fx) | set(Fy))
                assert ((x, y) in rel) == want


def test_isomorphism_check_detects_bad_map():
    K = cross_polytope(3)
    phi = complex_isomorphism(K, K)
    assert is_isomorphism(K, K, phi)
    bad = list(phi)
    v = K.faces(0)
    e = K.faces(1)
    bad[v[0]], bad[e[0]] = bad[e[0]], bad[v[0]]
    assert not is_isomorphism(K, K, bad)
