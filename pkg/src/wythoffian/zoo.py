"""The regular convex polytopes as face complexes.

Simplices and cross-polytopes are built from their vertex-set descriptions; the
sporadic ones (and, for cross-checking, the classical ones) come from cosets of
maximal standard parabolic subgroups of the symmetry group.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .complexes import FaceComplex, StructuralError, dual
from .coxeter import CoxeterGroup, UnsupportedGroupError, from_path, is_path, parabolic_cosets


@dataclass(frozen=True)
class RegularPolytopeSpec:
    """``symbol`` in simplex/cross/cube/polygon/icosahedron/dodecahedron/cell24/cell600/cell120."""
    symbol: str
    n: int = 0  # d for simplex/cross/cube, p for polygon

    def __post_init__(self):
        if self.symbol in ("simplex", "cross", "cube") and self.n < 1:
            raise ValueError("dimension must be at least 1")
        if self.symbol == "polygon" and self.n < 3:
            raise ValueError("a polygon needs p >= 3")
        if self.symbol not in SCHLAFLI and self.symbol not in ("simplex", "cross", "cube", "polygon"):
            raise ValueError(f"unknown polytope {self.symbol!r}")

    @property
    def dim(self) -> int:
        """Geometric dimension."""
        if self.symbol == "polygon":
            return 2
        if self.symbol in SCHLAFLI:
            return len(SCHLAFLI[self.symbol]) + 1
        return self.n

    def schlafli(self) -> list[int]:
        if self.symbol in SCHLAFLI:
            return list(SCHLAFLI[self.symbol])
        if self.symbol == "polygon":
            return [self.n]
        tail = [3] * (self.n - 2)
        return {"simplex": tail + [3], "cross": tail + [4], "cube": [4] + tail}[self.symbol][: self.n - 1]

    def __str__(self):
        return self.symbol if self.symbol in SCHLAFLI else f"{self.symbol}({self.n})"


SCHLAFLI = {
    "icosahedron": (3, 5),
    "dodecahedron": (5, 3),
    "cell24": (3, 4, 3),
    "cell600": (3, 3, 5),
    "cell120": (5, 3, 3),
}

_ALIASES = {
    "ico": ("icosahedron", 0), "icosahedron": ("icosahedron", 0),
    "dodeca": ("dodecahedron", 0), "dodecahedron": ("dodecahedron", 0),
    "24cell": ("cell24", 0), "cell24": ("cell24", 0),
    "600cell": ("cell600", 0), "cell600": ("cell600", 0),
    "120cell": ("cell120", 0), "cell120": ("cell120", 0),
}


def parse_spec(name: str) -> RegularPolytopeSpec:
    """CLI names: ``a3`` simplex, ``b4`` cross-polytope, ``c4``/``g4`` cube, ``p5`` pentagon,
    ``ico``, ``dodeca``, ``24cell``, ``600cell``, ``120cell``."""
    key = name.strip().lower()
    if key in _ALIASES:
        return RegularPolytopeSpec(*_ALIASES[key])
    mt = re.fullmatch(r"([abcgp])(\d+)", key)
    if not mt:
        raise ValueError(f"unknown polytope name {name!r}")
    sym = {"a": "simplex", "b": "cross", "c": "cube", "g": "cube", "p": "polygon"}[mt.group(1)]
    return RegularPolytopeSpec(sym, int(mt.group(2)))


# --- combinatorial constructions -------------------------------------------

def _from_vertex_sets(d: int, sets: list[frozenset]) -> FaceComplex:
    """Faces given as vertex sets, ordered by inclusion; ``dim = |X| - 1``."""
    sets = sorted(sets, key=lambda s: (len(s), sorted(s, key=abs)))
    index = {s: i for i, s in enumerate(sets)}
    covers = []
    for s in sets:
        for x in s:
            t = s - {x}
            if t in index:
                covers.append((index[t], index[s]))
    return FaceComplex(d, [len(s) - 1 for s in sets], covers, [tuple(sorted(s, key=abs)) for s in sets])


def simplex(d: int) -> FaceComplex:
    """alpha_d: proper nonempty subsets of ``{1..d+1}``."""
    if d < 1:
        raise ValueError("d >= 1")
    pts = range(1, d + 2)
    sets = [frozenset(c) for k in range(1, d + 1) for c in itertools.combinations(pts, k)]
    return _from_vertex_sets(d - 1, sets)


def cross_polytope(d: int) -> FaceComplex:
    """beta_d: sets ``{+-i_1, .., +-i_k}`` with distinct ``|i_j|``, k <= d."""
    if d < 1:
        raise ValueError("d >= 1")
    sets = []
    for k in range(1, d + 1):
        for c in itertools.combinations(range(1, d + 1), k):
            for signs in itertools.product((1, -1), repeat=k):
                sets.append(frozenset(s * i for s, i in zip(signs, c)))
    return _from_vertex_sets(d - 1, sets)


def cube(d: int) -> FaceComplex:
    """gamma_d, as the dual of beta_d."""
    return dual(cross_polytope(d))


def polygon(p: int) -> FaceComplex:
    if p < 3:
        raise ValueError("p >= 3")
    covers = [(i, p + i) for i in range(p)] + [((i + 1) % p, p + i) for i in range(p)]
    return FaceComplex(1, [0] * p + [1] * p, covers)


# --- coset construction ----------------------------------------------------

@dataclass
class CosetPolytope:
    complex: FaceComplex
    group: CoxeterGroup
    chamber_flags: np.ndarray  # chamber_flags[w] = face ids of the maximal flag of w, by dimension


def coset_polytope(schlafli, group: Optional[CoxeterGroup] = None, name: str = "") -> CosetPolytope:
    """i-faces are the cosets ``w <S - {s_i}>``; the chamber ``w`` gives a maximal flag."""
    W = group if group is not None else from_path(list(schlafli), name)
    r = W.rank
    if not is_path(W.m):
        raise UnsupportedGroupError("only linear diagrams give regular polytopes")
    if r < 2:
        raise UnsupportedGroupError("rank must be at least 2")
    cos = [parabolic_cosets(W, [j for j in range(r) if j != i]) for i in range(r)]
    counts = [int(c.max()) + 1 for c in cos]
    offs = np.concatenate([[0], np.cumsum(counts)])
    for i, c in enumerate(counts):
        # double counting: every coset has the same size
        if W.order % c or np.any(np.bincount(cos[i]) != W.order // c):
            raise StructuralError("coset sizes are not uniform")
    flags = np.stack([cos[i] + offs[i] for i in range(r)], axis=1)
    covers = set()
    for i in range(r - 1):
        pairs = np.unique(flags[:, i:i + 2], axis=0)
        covers.update(map(tuple, pairs.tolist()))
    dims = np.repeat(np.arange(r), counts)
    return CosetPolytope(FaceComplex(r - 1, dims.tolist(), covers), W, flags)


def regular_from_coxeter(spec) -> FaceComplex:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    return coset_polytope(spec.schlafli(), name=str(spec)).complex


def regular(spec) -> FaceComplex:
    """Build by the most direct route: combinatorial for simplex/cross/cube/polygon, cosets otherwise."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    if spec.symbol == "simplex":
        return simplex(spec.n)
    if spec.symbol == "cross":
        return cross_polytope(spec.n)
    if spec.symbol == "cube":
        return cube(spec.n)
    if spec.symbol == "polygon":
        return polygon(spec.n)
    return regular_from_coxeter(spec)


def icosahedron() -> FaceComplex:
    return regular_from_coxeter(RegularPolytopeSpec("icosahedron"))


def dodecahedron() -> FaceComplex:
    return regular_from_coxeter(RegularPolytopeSpec("dodecahedron"))


def cell24() -> FaceComplex:
    return regular_from_coxeter(RegularPolytopeSpec("cell24"))


def cell600() -> FaceComplex:
    return regular_from_coxeter(RegularPolytopeSpec("cell600"))


def cell120() -> FaceComplex:
    return regular_from_coxeter(RegularPolytopeSpec("cell120"))
