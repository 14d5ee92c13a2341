"""Finite Coxeter groups through their exact action on a root system.

Each group element is stored as the permutation it induces on the (finite)
root system.  The root system is computed exactly: integer coordinates for the
crystallographic types, coordinates in Q(sqrt 5) for H3/H4, and rational angle
indices for the dihedral groups I2(p).  Because the simple roots form a basis,
the images of the simple roots are exactly the columns of the element's
matrix, so they serve as the canonical identity key.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .exact import QSqrt, sign

DEFAULT_CAP = 20000


class ResourceError(RuntimeError):
    """A configured size cap was exceeded."""


class UnsupportedGroupError(ValueError):
    pass


def coxeter_matrix(name: str) -> np.ndarray:
    """Coxeter matrix for a type name such as ``A3``, ``B4``, ``D5``, ``E6``, ``F4``, ``H4``, ``I2(7)``."""
    name = name.strip().upper().replace(" ", "")
    mt = re.fullmatch(r"I2?[(_]?(\d+)\)?", name) if name.startswith("I") else None
    if mt:
        p = int(mt.group(1))
        if p < 2:
            raise UnsupportedGroupError(f"I2(p) needs p >= 2, got {p}")
        return _path_matrix([p])
    mt = re.fullmatch(r"([ABDEFH])_?(\d+)", name)
    if not mt:
        raise UnsupportedGroupError(f"unknown Coxeter type {name!r}")
    letter, d = mt.group(1), int(mt.group(2))
    if letter == "A" and d >= 1:
        return _path_matrix([3] * (d - 1))
    if letter == "B" and d >= 2:
        return _path_matrix([3] * (d - 2) + [4])
    if letter == "D" and d >= 2:
        m = _path_matrix([3] * (d - 2) + [2])
        if d >= 3:
            m[d - 1, d - 3] = m[d - 3, d - 1] = 3
        return m
    if letter == "E" and d in (6, 7, 8):
        m = _path_matrix([3] * (d - 2) + [2])
        m[d - 1, 2] = m[2, d - 1] = 3
        return m
    if letter == "F" and d == 4:
        return _path_matrix([3, 4, 3])
    if letter == "H" and d in (3, 4):
        return _path_matrix([3] * (d - 2) + [5])
    raise UnsupportedGroupError(f"no finite Coxeter group {name!r}")


def _path_matrix(ms: Sequence[int]) -> np.ndarray:
    r = len(ms) + 1
    m = np.full((r, r), 2, dtype=np.int64)
    np.fill_diagonal(m, 1)
    for i, x in enumerate(ms):
        m[i, i + 1] = m[i + 1, i] = int(x)
    return m


def is_path(m: np.ndarray) -> bool:
    """True iff the Coxeter graph is the path 0 - 1 - ... - (r-1)."""
    r = len(m)
    for i in range(r):
        for j in range(i + 1, r):
            if (m[i, j] >= 3) != (j == i + 1):
                return False
    return True


def _cartan(m: np.ndarray):
    """Integer or Q(sqrt 5) Cartan-type matrix with A_ij * A_ji = 4 cos^2(pi / m_ij)."""
    r = len(m)
    edges = [(i, j) for i in range(r) for j in range(i + 1, r) if m[i, j] != 2]
    if len(edges) >= r and r > 1:
        raise UnsupportedGroupError("Coxeter graph is not a forest")
    golden = any(m[i, j] == 5 for i, j in edges)
    zero = QSqrt(0, 0, 5) if golden else 0
    A = [[zero + (2 if i == j else 0) for j in range(r)] for i in range(r)]
    for i, j in edges:
        mij = int(m[i, j])
        if mij == 3:
            A[i][j] = A[j][i] = zero - 1
        elif mij == 4:
            A[i][j], A[j][i] = zero - 1, zero - 2
        elif mij == 6:
            A[i][j], A[j][i] = zero - 1, zero - 3
        elif mij == 5:
            A[i][j] = A[j][i] = -QSqrt.golden()
        else:
            raise UnsupportedGroupError(f"edge label {mij} has no integral or golden Cartan entry")
    return A


@dataclass
class RootSystem:
    roots: list            # exact coordinates (tuple) or angle index (int)
    simple: np.ndarray      # indices of the simple roots
    gens: np.ndarray        # gens[i][r] = index of s_i(root r)
    positive: np.ndarray    # boolean mask
    cartan: Optional[list] = None


def _crystal_roots(m: np.ndarray, max_roots: int = 5000) -> RootSystem:
    A = _cartan(m)
    r = len(m)
    zero = A[0][0] - 2

    def reflect(i, v):
        c = list(v)
        c[i] = v[i] - sum((A[i][j] * v[j] for j in range(r)), zero)
        return tuple(c)

    simple = [tuple(zero + (1 if j == i else 0) for j in range(r)) for i in range(r)]
    index = {v: k for k, v in enumerate(simple)}
    roots = list(simple)
    head = 0
    while head < len(roots):
        v = roots[head]
        head += 1
        for i in range(r):
            w = reflect(i, v)
            if w not in index:
                index[w] = len(roots)
                roots.append(w)
                if len(roots) > max_roots:
                    raise ResourceError("root system does not close; group is infinite or too large")
    gens = np.array([[index[reflect(i, v)] for v in roots] for i in range(r)], dtype=np.int32)
    positive = np.array([all(sign(x) >= 0 for x in v) for v in roots])
    for v in roots:
        signs = {sign(x) for x in v} - {0}
        if len(signs) != 1:
            raise UnsupportedGroupError("root with mixed signs; representation is not a finite root system")
    return RootSystem(roots, np.arange(r), gens, positive, A)


def _dihedral_roots(p: int) -> RootSystem:
    # root k sits at angle k*pi/p; s_0 fixes the line orthogonal to root 0,
    # s_1 the line orthogonal to root p-1 (angle pi - pi/p between the simple roots)
    n = 2 * p
    ks = np.arange(n)
    gens = np.array([(p - ks) % n, (p - 2 - ks) % n], dtype=np.int32)
    return RootSystem(list(range(n)), np.array([0, p - 1]), gens, ks < p)


class CoxeterGroup:
    """A finite Coxeter group with all elements enumerated.

    Elements are integers ``0..order-1`` in breadth-first order from the identity
    (element 0); ``mul[w, i]`` is the index of ``w * s_i``.
    """

    def __init__(self, m: np.ndarray, name: str = "", cap: int = DEFAULT_CAP):
        self.m = np.asarray(m, dtype=np.int64)
        self.rank = len(self.m)
        self.name = name or f"W{self.m.tolist()}"
        if self.rank == 2 and self.m[0, 1] not in (2, 3, 4, 5, 6):
            self.roots = _dihedral_roots(int(self.m[0, 1]))
        else:
            self.roots = _crystal_roots(self.m)
        self._enumerate(cap)
        self._T = None

    # --- construction ------------------------------------------------------

    def _enumerate(self, cap: int) -> None:
        gens = self.roots.gens
        R = gens.shape[1]
        dtype = np.int16 if R < 2 ** 15 else np.int32
        ident = np.arange(R, dtype=dtype)
        perms = [ident]
        index = {ident[self.roots.simple].tobytes(): 0}
        depth = [0]
        parent = [(-1, -1)]
        mul = []
        head = 0
        while head < len(perms):
            w = perms[head]
            row = []
            for i in range(self.rank):
                p = w[gens[i]]
                key = p[self.roots.simple].tobytes()
                j = index.get(key)
                if j is None:
                    j = len(perms)
                    if j >= cap:
                        raise ResourceError(f"{self.name}: order exceeds cap {cap}")
                    index[key] = j
                    perms.append(p)
                    depth.append(depth[head] + 1)
                    parent.append((head, i))
                row.append(j)
            mul.append(row)
            head += 1
        self.perms = np.array(perms)
        self.mul = np.array(mul, dtype=np.int64)
        self.word_length = np.array(depth, dtype=np.int64)
        self.parent = parent
        self._index = index
        self._codes = None

    @property
    def order(self) -> int:
        return len(self.perms)

    # --- element arithmetic ------------------------------------------------

    def _code(self, keys: np.ndarray):
        R = self.perms.shape[1]
        if R ** self.rank >= 2 ** 62:
            return None
        base = R ** np.arange(self.rank, dtype=np.int64)
        return keys.astype(np.int64) @ base

    def locate(self, perms: np.ndarray) -> np.ndarray:
        """Element indices of a batch of root permutations (``-1`` if not in the group)."""
        return self._locate_keys(np.atleast_2d(perms)[:, self.roots.simple])

    def _locate_keys(self, keys: np.ndarray) -> np.ndarray:
        if self._codes is None:
            codes = self._code(self.perms[:, self.roots.simple])
            if codes is not None:
                order = np.argsort(codes)
                self._codes = (codes[order], order)
            else:
                self._codes = False
        if self._codes is False:
            dt = self.perms.dtype
            return np.array([self._index.get(k.astype(dt).tobytes(), -1) for k in keys])
        sorted_codes, order = self._codes
        c = self._code(keys)
        pos = np.clip(np.searchsorted(sorted_codes, c), 0, len(sorted_codes) - 1)
        found = sorted_codes[pos] == c
        return np.where(found, order[pos], -1)

    def inverse_perms(self, idx=None) -> np.ndarray:
        P = self.perms if idx is None else self.perms[np.asarray(idx)]
        return np.argsort(P, axis=-1).astype(P.dtype)

    def multiply(self, u, v):
        """Indices of the products ``u * v`` (vectorised over arrays of indices)."""
        u, v = np.atleast_1d(u), np.atleast_1d(v)
        prod = np.take_along_axis(self.perms[u], self.perms[v].astype(np.int64), axis=1)
        return self.locate(prod)

    def inverse(self, w):
        return self.locate(self.inverse_perms(np.atleast_1d(w)))

    def word_distance(self, u, v) -> np.ndarray:
        """Length of ``u^-1 v``, which is the Cayley-graph distance between ``u`` and ``v``."""
        u, v = np.atleast_1d(u), np.atleast_1d(v)
        q = np.take_along_axis(self.inverse_perms(u), self.perms[v].astype(np.int64), axis=1)
        return self.word_length[self.locate(q)]

    def matrix(self, w: int) -> list[list]:
        """Exact matrix of ``w`` in the simple-root basis (crystallographic and H types)."""
        if self.roots.cartan is None:
            raise UnsupportedGroupError("no coordinate representation for this dihedral group")
        cols = [self.roots.roots[j] for j in self.perms[w][self.roots.simple]]
        return [[cols[j][i] for j in range(self.rank)] for i in range(self.rank)]

    def generator_matrix(self, i: int) -> list[list]:
        return self.matrix(int(self.mul[0, i]))

    def longest_element(self) -> int:
        return int(np.argmax(self.word_length))

    def check_relations(self) -> bool:
        """``s_i^2 = 1`` and ``(s_i s_j)^m_ij = 1`` with the exact orders, in the root action."""
        gens = self.roots.gens
        ident = np.arange(gens.shape[1])
        for i in range(self.rank):
            if not np.array_equal(gens[i][gens[i]], ident):
                return False
            for j in range(i + 1, self.rank):
                p = gens[i][gens[j]]
                q = ident
                for k in range(1, int(self.m[i, j]) + 1):
                    q = q[p]
                    if np.array_equal(q, ident) and k < self.m[i, j]:
                        return False
                if not np.array_equal(q, ident):
                    return False
        return True

    # --- reflections and inversion sets ------------------------------------

    def _reflection_data(self):
        if self._T is not None:
            return self._T
        P = self.perms.astype(np.int64)
        Pinv = np.argsort(P, axis=1)
        keys = []
        for i in range(self.rank):
            conj = np.take_along_axis(P, self.roots.gens[i][Pinv], axis=1)
            keys.append(conj[:, self.roots.simple])
        allkeys = np.concatenate(keys)
        uniq, inv = np.unique(allkeys, axis=0, return_inverse=True)
        refl_index = inv.reshape(self.rank, self.order).T.copy()
        T = self._locate_keys(uniq)
        self._T = (T, refl_index)
        return self._T

    def reflections(self) -> np.ndarray:
        """Element indices of the reflections (conjugates of the generators)."""
        return self._reflection_data()[0]

    def positive_root_count(self) -> int:
        return int(self.roots.positive.sum())

    def inversion_labels(self) -> np.ndarray:
        """Boolean matrix: row ``w`` marks the reflections separating the base chamber from ``w``'s."""
        T, refl = self._reflection_data()
        labels = np.zeros((self.order, len(T)), dtype=np.uint8)
        for w in range(1, self.order):
            p, i = self.parent[w]
            labels[w] = labels[p]
            labels[w, refl[p, i]] ^= 1
        child = labels[self.mul]                       # (order, rank, |T|)
        expect = labels[:, None, :].repeat(self.rank, axis=1)
        rows = np.arange(self.order)[:, None]
        expect[rows, np.arange(self.rank)[None, :], refl] ^= 1
        if not np.array_equal(child, expect):
            raise AssertionError("inversion labels are not well defined")
        return labels

    def __repr__(self):
        return f"CoxeterGroup({self.name}, order={self.order})"


def build_group(name, cap: int = DEFAULT_CAP) -> CoxeterGroup:
    """Build a group from a type name or an explicit Coxeter matrix."""
    if isinstance(name, str):
        return CoxeterGroup(coxeter_matrix(name), name.upper(), cap=cap)
    return CoxeterGroup(np.asarray(name), cap=cap)


def from_path(ms: Sequence[int], name: str = "", cap: int = DEFAULT_CAP) -> CoxeterGroup:
    """Group with linear Coxeter diagram labelled ``ms`` (e.g. ``[3, 3, 5]``)."""
    return CoxeterGroup(_path_matrix(ms), name or "[" + ",".join(map(str, ms)) + "]", cap=cap)


def reflection_count_formula(name: str) -> int:
    name = name.strip().upper()
    mt = re.fullmatch(r"I2?[(_]?(\d+)\)?", name) if name.startswith("I") else None
    if mt:
        return int(mt.group(1))
    letter, d = name[0], int(name[1:])
    if letter in "ABCD":
        return {"A": d * (d + 1) // 2, "B": d * d, "C": d * d, "D": d * (d - 1)}[letter]
    return {"E6": 36, "E7": 63, "E8": 120, "F4": 24, "H3": 15, "H4": 60}[name]


def cayley_graph(W: CoxeterGroup):
    from .graphs import MetricGraph

    src = np.repeat(np.arange(W.order), W.rank)
    dst = W.mul.ravel()
    return MetricGraph(W.order, np.stack([src, dst], axis=1))


def inversion_embedding(W: CoxeterGroup):
    from .embed.certificate import EmbeddingCertificate

    return EmbeddingCertificate(1, W.inversion_labels())


def parabolic_cosets(W: CoxeterGroup, J: Iterable[int]) -> np.ndarray:
    """``coset[w]`` = index of the left coset ``w <J>``, numbered by first element."""
    J = sorted(set(J))
    n = W.order
    if not J:
        return np.arange(n)
    src = np.repeat(np.arange(n), len(J))
    dst = W.mul[:, J].ravel()
    g = coo_matrix((np.ones(len(src)), (src, dst)), shape=(n, n))
    _, lab = connected_components(g, directed=False)
    _, first = np.unique(lab, return_index=True)
    order = np.argsort(first)
    renum = np.empty(len(first), dtype=np.int64)
    renum[order] = np.arange(len(first))
    return renum[lab]
