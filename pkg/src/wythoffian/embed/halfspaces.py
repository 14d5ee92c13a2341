"""Halfspaces of a graph and exact searches for scale-lambda embeddings.

A halfspace is a vertex set ``S`` with ``S`` and its complement both geodesically
convex.  Every cut with positive weight in a cut decomposition of a graph metric
is a halfspace, and a family of halfspaces reproduces ``lambda * d`` as soon as it
cuts every edge exactly ``lambda`` times (a geodesic crosses a halfspace at most
once).  So a scale-lambda embedding is an exact ``lambda``-fold cover of the edge
set by halfspaces, with repetition allowed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

import numpy as np

from ..graphs import MetricGraph
from .certificate import EmbeddingCertificate


class BudgetExceeded(RuntimeError):
    pass


@dataclass
class Limits:
    max_nodes: int = 2_000_000          # search tree nodes for one exact-cover search
    max_halfspaces: int = 200_000
    max_halfspace_nodes: int = 5_000_000
    max_solutions: int = 64             # when enumerating all embeddings

    @classmethod
    def parse(cls, text: Optional[str]) -> "Limits":
        """``"nodes=1e6,halfspaces=5000"``-style overrides."""
        out = cls()
        if not text:
            return out
        names = {"nodes": "max_nodes", "halfspaces": "max_halfspaces",
                 "hs_nodes": "max_halfspace_nodes", "solutions": "max_solutions"}
        for part in text.split(","):
            k, _, v = part.partition("=")
            k = k.strip()
            if k not in names:
                raise ValueError(f"unknown limit {k!r}")
            setattr(out, names[k], int(float(v)))
        return out


def interval_masks(D: np.ndarray) -> list[list[int]]:
    """``I[a][b]`` = bitmask of the geodesic interval between ``a`` and ``b``."""
    n = len(D)
    D = D.astype(np.int32)
    weights = [1 << x for x in range(n)]
    I = [[0] * n for _ in range(n)]
    for a in range(n):
        on = (D[a][:, None] + D) == D[a][None, :]  # on[x, b]: x lies between a and b
        for b in range(a, n):
            mask = 0
            for x in np.flatnonzero(on[:, b]).tolist():
                mask |= weights[x]
            I[a][b] = I[b][a] = mask
    return I


def _hull_add(I, mask: int, members: list[int], v: int) -> tuple[int, list[int]]:
    """Convex hull of ``members + [v]``, given ``members`` convex."""
    members = list(members)
    queue = [v]
    while queue:
        x = queue.pop()
        if mask >> x & 1:
            continue
        new = 0
        Ix = I[x]
        for y in members:
            new |= Ix[y]
        mask |= 1 << x
        members.append(x)
        new &= ~mask
        while new:
            low = new & -new
            queue.append(low.bit_length() - 1)
            new ^= low
    return mask, members


def halfspaces(G: MetricGraph, limits: Optional[Limits] = None) -> list[int]:
    """All halfspaces ``S`` with ``0 in S != V`` as vertex bitmasks, in canonical (DFS) order."""
    limits = limits or Limits()
    n = G.n
    if n < 2:
        return []
    I = interval_masks(G.dist)
    order = np.argsort(G.bfs(0), kind="stable").tolist()
    full = (1 << n) - 1
    out: list[int] = []
    nodes = 0

    def rec(amask, amem, bmask, bmem):
        nonlocal nodes
        nodes += 1
        if nodes > limits.max_halfspace_nodes:
            raise BudgetExceeded("halfspace enumeration node budget exceeded")
        free = full & ~(amask | bmask)
        if not free:
            if bmask:
                out.append(amask)
                if len(out) > limits.max_halfspaces:
                    raise BudgetExceeded("too many halfspaces")
            return
        v = next(x for x in order if free >> x & 1)
        m2, mem2 = _hull_add(I, amask, amem, v)
        if not m2 & bmask:
            rec(m2, mem2, bmask, bmem)
        m2, mem2 = _hull_add(I, bmask, bmem, v)
        if not m2 & amask:
            rec(amask, amem, m2, mem2)

    rec(1, [0], 0, [])
    return out


def cut_edge_masks(G: MetricGraph, sets: list[int]) -> list[int]:
    """Edge bitmask of the cut of each vertex set."""
    e0, e1 = G.edges[:, 0].tolist(), G.edges[:, 1].tolist()
    out = []
    for s in sets:
        mask = 0
        for i, (a, b) in enumerate(zip(e0, e1)):
            if (s >> a ^ s >> b) & 1:
                mask |= 1 << i
        out.append(mask)
    return out


@dataclass
class ScaleSearchResult:
    status: str  # "found", "none" or "undecided"
    scale: int
    certificate: Optional[EmbeddingCertificate] = None
    nodes: int = 0
    halfspaces: int = 0
    note: str = ""

    @property
    def found(self) -> bool:
        return self.status == "found"


def _cover_solutions(masks: list[int], n_edges: int, lam: int, max_nodes: int) -> Iterator[list[int]]:
    """Multisets of indices into ``masks`` covering every edge exactly ``lam`` times.

    ``need[k]`` holds the edges still needing at least ``k+1`` more cuts.  Branching
    is on the edge with the fewest usable candidates; in branch ``i`` candidate
    ``c_i`` is the smallest one used for that edge, so earlier siblings are banned.
    Raises ``BudgetExceeded`` when the node budget runs out.
    """
    full = (1 << n_edges) - 1
    by_edge = [0] * n_edges
    for j, m in enumerate(masks):
        mm = m
        while mm:
            low = mm & -mm
            by_edge[low.bit_length() - 1] |= 1 << j
            mm ^= low
    counter = [0]

    def rec(need: list[int], allowed: int, chosen: list[int]):
        counter[0] += 1
        if counter[0] > max_nodes:
            raise BudgetExceeded("exact-cover node budget exceeded")
        if not need[0]:
            yield list(chosen)
            return
        n1 = need[0]
        # candidates must fit inside the edges that still need a cut
        usable = 0
        aa = allowed
        while aa:
            low = aa & -aa
            j = low.bit_length() - 1
            if not masks[j] & ~n1:
                usable |= low
            aa ^= low
        best_e, best_c = -1, None
        ee = n1
        while ee:
            low = ee & -ee
            e = low.bit_length() - 1
            c = (by_edge[e] & usable).bit_count()
            if c == 0:
                return
            if best_c is None or c < best_c:
                best_e, best_c = e, c
                if c == 1:
                    break
            ee ^= low
        cands = by_edge[best_e] & usable
        banned = 0
        while cands:
            low = cands & -cands
            j = low.bit_length() - 1
            h = masks[j]
            nxt = [need[k + 1] | (need[k] & ~h) if k + 1 < len(need) else need[k] & ~h
                   for k in range(len(need))]
            chosen.append(j)
            yield from rec(nxt, usable & ~banned, chosen)
            chosen.pop()
            banned |= low
            cands ^= low

    yield from rec([full] * lam, (1 << len(masks)) - 1, [])


def _certificate(G: MetricGraph, sets: list[int], chosen: list[int], lam: int) -> EmbeddingCertificate:
    chosen = sorted(chosen)
    bits = np.zeros((G.n, len(chosen)), dtype=np.uint8)
    for i, j in enumerate(chosen):
        s = sets[j]
        bits[:, i] = [(s >> v) & 1 for v in range(G.n)]
    # halfspaces contain vertex 0, so flip to make vertex 0 the all-zero label
    return EmbeddingCertificate(lam, 1 - bits if len(chosen) else bits)


def scale_search(G: MetricGraph, lam: int, limits: Optional[Limits] = None,
                 all_solutions: bool = False):
    """Exact decision of scale-``lam`` embeddability over halfspace covers.

    Returns a ScaleSearchResult; with ``all_solutions`` also the list of every
    certificate found (distinct as multisets of cuts).
    """
    limits = limits or Limits()
    if G.n <= 1:
        cert = EmbeddingCertificate(lam, np.zeros((G.n, 0), dtype=np.uint8))
        res = ScaleSearchResult("found", lam, cert)
        return (res, [cert]) if all_solutions else res
    try:
        sets = halfspaces(G, limits)
    except BudgetExceeded as exc:
        res = ScaleSearchResult("undecided", lam, note=str(exc))
        return (res, []) if all_solutions else res
    masks = cut_edge_masks(G, sets)
    sols: list[EmbeddingCertificate] = []
    gen = _cover_solutions(masks, G.m, lam, limits.max_nodes)
    status = "none"
    note = ""
    try:
        for chosen in gen:
            sols.append(_certificate(G, sets, chosen, lam))
            status = "found"
            if not all_solutions or len(sols) >= limits.max_solutions:
                if all_solutions:
                    note = "solution limit reached"
                break
    except BudgetExceeded as exc:
        status = "found" if sols else "undecided"
        note = str(exc)
    res = ScaleSearchResult(status, lam, sols[0] if sols else None, halfspaces=len(sets), note=note)
    return (res, sols) if all_solutions else res


def lp_l1(G: MetricGraph, limits: Optional[Limits] = None) -> tuple[str, Optional[object]]:
    """Decide whether the path metric is l1 by LP over halfspace cut weights.

    Returns ``("l1", weights)`` or ``("not_l1", y)`` where ``y`` is an exact
    rational Farkas certificate: ``y . cut(S) <= 0`` for every halfspace ``S`` while
    ``sum(y) > 0`` (weights on edges), which forbids any cut decomposition.
    ``("undecided", None)`` if limits are hit or rounding fails.
    """
    from scipy.optimize import linprog

    if G.n <= 1 or G.m == 0:
        return "l1", np.zeros(0)
    try:
        sets = halfspaces(G, limits)
    except BudgetExceeded:
        return "undecided", None
    masks = cut_edge_masks(G, sets)
    A = np.array([[(mk >> e) & 1 for mk in masks] for e in range(G.m)], dtype=float).reshape(G.m, len(sets))
    if len(sets):
        res = linprog(np.zeros(len(sets)), A_eq=A, b_eq=np.ones(G.m), bounds=(0, None), method="highs")
        if res.status == 0:
            return "l1", res.x
    # Farkas: maximize sum(y) subject to A^T y <= 0, y in [-1, 1]
    dual = linprog(-np.ones(G.m), A_ub=A.T if len(sets) else None, b_ub=np.zeros(len(sets)) if len(sets) else None,
                   bounds=(-1, 1), method="highs")
    if dual.status != 0 or -dual.fun <= 1e-9:
        return "undecided", None
    scale = np.abs(dual.x).max()
    y = [Fraction(float(v / scale)).limit_denominator(1000) for v in dual.x]
    if sum(y) <= 0:
        return "undecided", None
    for mk in masks:
        if sum(y[e] for e in range(G.m) if mk >> e & 1) > 0:
            return "undecided", None
    return "not_l1", y
