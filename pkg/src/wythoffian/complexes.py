"""Ranked face posets, the blocking preorder on type subsets, and the Wythoff construction.

A d-complex is stored through its Hasse diagram.  Faces are the integers
``0..n-1`` numbered so that dimensions are non-decreasing; flags are tuples of
face ids sorted by dimension.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .isomorphism import find_isomorphism

TypeSubset = frozenset


class StructuralError(ValueError):
    """A poset or polytope fails one of the structural invariants."""


def type_subset(items: Iterable[int], d: int) -> frozenset:
    s = frozenset(int(x) for x in items)
    if not s:
        raise ValueError("type subset must be nonempty")
    if min(s) < 0 or max(s) > d:
        raise ValueError(f"type subset {sorted(s)} not contained in 0..{d}")
    return s


class FaceComplex:
    """An immutable ranked poset given by its cover relation.

    ``labels`` is optional per-face metadata (e.g. the vertex set of a simplex face,
    or the underlying flag for a Wythoffian face).
    """

    def __init__(self, d: int, dims: Sequence[int], covers: Iterable[tuple[int, int]],
                 labels: Optional[Sequence] = None):
        self.d = int(d)
        self.dims = np.asarray(dims, dtype=np.int64)
        if len(self.dims) and np.any(np.diff(self.dims) < 0):
            raise StructuralError("faces must be numbered in order of dimension")
        self.covers = sorted({(int(a), int(b)) for a, b in covers})
        self.labels = list(labels) if labels is not None else None
        n = len(self.dims)
        self.up: list[list[int]] = [[] for _ in range(n)]
        self.down: list[list[int]] = [[] for _ in range(n)]
        for a, b in self.covers:
            self.up[a].append(b)
            self.down[b].append(a)
        starts = np.searchsorted(self.dims, np.arange(self.d + 2))
        self._by_dim = [list(range(starts[k], starts[k + 1])) for k in range(self.d + 1)]
        self._above: dict[tuple[int, int], tuple[int, ...]] = {}
        self._flags: dict[frozenset, list[tuple[int, ...]]] = {}

    @property
    def n(self) -> int:
        return len(self.dims)

    def faces(self, k: int) -> list[int]:
        return self._by_dim[k] if 0 <= k <= self.d else []

    def face_counts(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self._by_dim)

    def above(self, x: int, k: int) -> tuple[int, ...]:
        """Faces of dimension ``k`` strictly above ``x`` (sorted)."""
        key = (x, k)
        hit = self._above.get(key)
        if hit is not None:
            return hit
        dx = int(self.dims[x])
        if k <= dx:
            res: tuple[int, ...] = ()
        elif k == dx + 1:
            res = tuple(sorted(self.up[x]))
        else:
            acc: set[int] = set()
            for y in self.up[x]:
                acc.update(self.above(y, k))
            res = tuple(sorted(acc))
        self._above[key] = res
        return res

    def less(self, x: int, y: int) -> bool:
        return y in self.above(x, int(self.dims[y]))

    def flags(self, t: Iterable[int]) -> list[tuple[int, ...]]:
        """All flags of type ``t``."""
        key = frozenset(t)
        hit = self._flags.get(key)
        if hit is not None:
            return hit
        ts = sorted(key)
        if not ts:
            return [()]
        out = [(x,) for x in self.faces(ts[0])]
        for k in ts[1:]:
            out = [f + (y,) for f in out for y in self.above(f[-1], k)]
        self._flags[key] = out
        return out

    def maximal_flags(self) -> list[tuple[int, ...]]:
        return self.flags(range(self.d + 1))

    def flag_type(self, flag: Sequence[int]) -> frozenset:
        return frozenset(int(self.dims[x]) for x in flag)

    def is_flag(self, faces: Iterable[int]) -> bool:
        fs = sorted(set(faces), key=lambda x: (self.dims[x], x))
        return all(self.less(a, b) for a, b in zip(fs, fs[1:]))

    # --- structural checks -------------------------------------------------

    def check_complex(self) -> None:
        """Raise StructuralError unless this is a connected d-complex with ``dims`` as rank."""
        n = self.n
        if n == 0:
            raise StructuralError("empty complex")
        if self.dims[0] < 0 or self.dims[-1] > self.d:
            raise StructuralError("dimension out of range")
        for a, b in self.covers:
            if self.dims[b] != self.dims[a] + 1:
                raise StructuralError(f"cover {a}<{b} does not raise dimension by one")
        for x in range(n):
            if not self.down[x] and self.dims[x] != 0:
                raise StructuralError(f"minimal face {x} has dimension {self.dims[x]}")
            if not self.up[x] and self.dims[x] != self.d:
                raise StructuralError(f"maximal face {x} has dimension {self.dims[x]}")
        if n > 1:
            c = np.asarray(self.covers, dtype=np.int64).reshape(-1, 2)
            g = coo_matrix((np.ones(len(c)), (c[:, 0], c[:, 1])), shape=(n, n))
            k, _ = connected_components(g, directed=False)
            if k != 1:
                raise StructuralError(f"poset has {k} connected components")

    def check_polytope(self) -> None:
        """Raise StructuralError unless every submaximal flag lies in exactly two maximal flags."""
        mf = np.asarray(self.maximal_flags(), dtype=np.int64).reshape(-1, self.d + 1)
        for k in range(self.d + 1):
            rest = np.delete(mf, k, axis=1)
            _, counts = np.unique(rest, axis=0, return_counts=True)
            if np.any(counts != 2):
                bad = int(counts[counts != 2][0])
                raise StructuralError(f"a flag missing dimension {k} lies in {bad} maximal flags")

    def is_polytope(self) -> bool:
        try:
            self.check_complex()
            self.check_polytope()
        except StructuralError:
            return False
        return True

    # --- serialisation -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "faces": [{"id": i, "dim": int(k)} for i, k in enumerate(self.dims)],
            "covers": [[a, b] for a, b in self.covers],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data: dict) -> "FaceComplex":
        faces = sorted(data["faces"], key=lambda f: (f["dim"], f["id"]))
        renum = {f["id"]: i for i, f in enumerate(faces)}
        covers = [(renum[a], renum[b]) for a, b in data["covers"]]
        return cls(data["d"], [f["dim"] for f in faces], covers)

    def __repr__(self):
        return f"FaceComplex(d={self.d}, f={self.face_counts()})"


# --- blocking preorder and essential subsets -------------------------------

def blocks(blocker: Iterable[int], blocked: Iterable[int], V: Iterable[int], d: int) -> bool:
    """True iff ``blocker`` blocks ``blocked`` from ``V``."""
    B, U, V = (type_subset(x, d) for x in (blocker, blocked, V))
    return all(any(min(u, v) <= b <= max(u, v) for b in B) for u in U for v in V)


def _nonempty_subsets(d: int) -> list[frozenset]:
    delta = range(d + 1)
    return [frozenset(c) for r in range(1, d + 2) for c in itertools.combinations(delta, r)]


def _key(s: frozenset) -> tuple:
    return (len(s), tuple(sorted(s)))


@dataclass
class EssentialFamily:
    """Equivalence classes of the blocking preorder for a fixed ``V``."""

    V: frozenset
    d: int
    classes: list[tuple[frozenset, frozenset]]
    E: tuple[frozenset, ...]
    _class_of: dict = field(repr=False)
    _leq: dict = field(repr=False)

    def leq(self, a: frozenset, b: frozenset) -> bool:
        """``a`` blocks ``b``."""
        return self._leq[(frozenset(a), frozenset(b))]

    def less(self, a: frozenset, b: frozenset) -> bool:
        a, b = frozenset(a), frozenset(b)
        return self._leq[(a, b)] and not self._leq[(b, a)]

    def m(self, U: Iterable[int]) -> frozenset:
        return self.classes[self._class_of[frozenset(U)]][0]

    def M(self, U: Iterable[int]) -> frozenset:
        return self.classes[self._class_of[frozenset(U)]][1]

    def dim(self, U: Iterable[int]) -> int:
        """Dimension of a Wythoffian face whose flag has type ``U``."""
        return self.d + 1 - len(self.M(U))


def essential_family(V: Iterable[int], d: int) -> EssentialFamily:
    V = type_subset(V, d)
    omega = _nonempty_subsets(d)
    leq = {(a, b): all(any(min(u, v) <= x <= max(u, v) for x in a) for u in b for v in V)
           for a in omega for b in omega}
    class_of: dict[frozenset, int] = {}
    classes: list[tuple[frozenset, frozenset]] = []
    members: list[list[frozenset]] = []
    for U in omega:
        for i, grp in enumerate(members):
            rep = grp[0]
            if leq[(U, rep)] and leq[(rep, U)]:
                grp.append(U)
                class_of[U] = i
                break
        else:
            class_of[U] = len(members)
            members.append([U])
    for grp in members:
        lo = frozenset.intersection(*grp)
        hi = frozenset.union(*grp)
        if lo not in grp or hi not in grp:
            raise StructuralError(f"class of {sorted(grp[0])} is not closed under meet and join")
        classes.append((lo, hi))
    E = tuple(sorted((c[0] for c in classes), key=_key))
    return EssentialFamily(V, d, classes, E, class_of, leq)


def boundary_types(V: Iterable[int], d: int) -> tuple[set, set]:
    """Types of the 1-faces and of the facets of ``K(V)``."""
    V = type_subset(V, d)
    edges = set()
    for k in V:
        nb = {j for j in (k - 1, k + 1) if 0 <= j <= d}
        edges.add(frozenset((V - {k}) | nb))
    lo, hi = min(V), max(V)
    facets = set()
    for k in range(d + 1):
        if (k == 0 and V != {0}) or (k == d and V != {d}) or lo < k < hi:
            facets.add(frozenset({k}))
    return edges, facets


def wythoff_type_count(d: int, self_dual: bool) -> int:
    if d < 1:
        raise ValueError("d must be at least 1")
    if not self_dual:
        return 2 ** (d + 1) - 1
    return 2 ** d + 2 ** (-(-(d - 1) // 2)) - 1


# --- constructions ---------------------------------------------------------

def dual_with_map(K: FaceComplex) -> tuple[FaceComplex, list[int]]:
    """Order-reversed complex, plus ``new_id[old_id]``."""
    order = sorted(range(K.n), key=lambda x: (K.d - K.dims[x], x))
    new_id = [0] * K.n
    for i, x in enumerate(order):
        new_id[x] = i
    dims = [K.d - int(K.dims[x]) for x in order]
    covers = [(new_id[b], new_id[a]) for a, b in K.covers]
    labels = [K.labels[x] for x in order] if K.labels is not None else None
    return FaceComplex(K.d, dims, covers, labels), new_id


def dual(K: FaceComplex) -> FaceComplex:
    return dual_with_map(K)[0]


def wythoff(K: FaceComplex, V: Iterable[int], check: bool = True) -> FaceComplex:
    """The Wythoffian ``K(V)``; face labels are the underlying flags of ``K``."""
    V = type_subset(V, K.d)
    if check:
        K.check_complex()
    fam = essential_family(V, K.d)
    entries = []
    for U in fam.E:
        k = fam.dim(U)
        for f in K.flags(U):
            entries.append((k, _key(U), f))
    entries.sort()
    index = {e[2]: i for i, e in enumerate(entries)}
    covers = []
    for lo in fam.E:
        for hi in fam.E:
            if not fam.less(lo, hi) or fam.dim(hi) != fam.dim(lo) + 1:
                continue
            W = sorted(lo | hi)
            pos_lo = [W.index(x) for x in sorted(lo)]
            pos_hi = [W.index(x) for x in sorted(hi)]
            for g in K.flags(W):
                covers.append((index[tuple(g[p] for p in pos_lo)], index[tuple(g[p] for p in pos_hi)]))
    return FaceComplex(K.d, [e[0] for e in entries], covers, [e[2] for e in entries])


def order_relation(K: FaceComplex) -> set[tuple[int, int]]:
    """All strict comparabilities ``x < y``."""
    return {(x, y) for x in range(K.n) for k in range(int(K.dims[x]) + 1, K.d + 1) for y in K.above(x, k)}


# --- isomorphism -----------------------------------------------------------

def _hasse_adjacency(K: FaceComplex) -> list[list[int]]:
    return [K.up[x] + K.down[x] for x in range(K.n)]


def complex_isomorphism(K1: FaceComplex, K2: FaceComplex) -> Optional[list[int]]:
    """A dimension-preserving poset isomorphism ``K1 -> K2`` or ``None``."""
    if K1.d != K2.d or K1.face_counts() != K2.face_counts():
        return None
    return find_isomorphism(_hasse_adjacency(K1), _hasse_adjacency(K2), K1.dims.tolist(), K2.dims.tolist())


def is_isomorphism(K1: FaceComplex, K2: FaceComplex, phi: Sequence[int]) -> bool:
    """Check that ``phi`` maps faces bijectively, preserving dimension and covers."""
    if K1.n != K2.n or len(phi) != K1.n or len(set(phi)) != K1.n:
        return False
    if any(K1.dims[x] != K2.dims[phi[x]] for x in range(K1.n)):
        return False
    return {(phi[a], phi[b]) for a, b in K1.covers} == set(K2.covers)


def invariant_vector(K: FaceComplex) -> tuple:
    """Cheap isomorphism invariant: face counts and flag counts per type."""
    types = _nonempty_subsets(K.d)
    return K.face_counts(), tuple(len(K.flags(t)) for t in types)


def wythoffian_problems(K: FaceComplex, V: Iterable[int], Kstar: Optional[FaceComplex] = None,
                        iso_cap: int = 5000) -> list[str]:
    """Structural checks of ``K(V)``; an empty list means every check passed.

    Rank and polytope tests, vertices are exactly the flags of type ``V``, edge and
    facet types agree with ``boundary_types``, and ``K(V) = K*(d-V)`` (by isomorphism
    up to ``iso_cap`` faces, by invariant vectors above it).
    """
    V = type_subset(V, K.d)
    d = K.d
    problems = []
    W = wythoff(K, V, check=False)
    for check in (W.check_complex, W.check_polytope):
        try:
            check()
        except StructuralError as exc:
            problems.append(str(exc))
    verts = W.faces(0)
    if len(verts) != len(K.flags(V)) or any(K.flag_type(W.labels[x]) != V for x in verts):
        problems.append("vertices are not the flags of type V")
    edges, facets = boundary_types(V, d)
    if {K.flag_type(W.labels[x]) for x in W.faces(1)} != edges:
        problems.append("edge types differ from boundary_types")
    if {K.flag_type(W.labels[x]) for x in W.faces(d)} != facets:
        problems.append("facet types differ from boundary_types")
    Kstar = dual(K) if Kstar is None else Kstar
    Wd = wythoff(Kstar, [d - v for v in V], check=False)
    if W.n <= iso_cap:
        if complex_isomorphism(W, Wd) is None:
            problems.append("K(V) and K*(d-V) are not isomorphic")
    elif invariant_vector(W) != invariant_vector(Wd):
        problems.append("K(V) and K*(d-V) have different invariants")
    return problems
