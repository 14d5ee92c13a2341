"""Hypermetric and 5-gonal inequalities ``sum_{i<j} b_i b_j d(i,j) <= 0``."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

import numpy as np

from ..graphs import MetricGraph
from .halfspaces import BudgetExceeded

HYPERMETRIC_MAX_N = 14
HYPERMETRIC_MAX_NORM = 7
FIVE_GONAL_BUDGET = 50_000_000  # 5-subsets examined in the exhaustive phase


@dataclass
class InequalityViolation:
    support: list[int]
    b: list[int]
    value: int

    def to_json(self) -> dict:
        return {"support": self.support, "b": self.b, "value": self.value}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def inequality_value(D: np.ndarray, support: Sequence[int], b: Sequence[int]) -> int:
    """Exact ``sum_{i<j} b_i b_j d(s_i, s_j)``."""
    total = 0
    for i, j in itertools.combinations(range(len(support)), 2):
        total += b[i] * b[j] * int(D[support[i], support[j]])
    return total


def check_violation(G: MetricGraph, v: InequalityViolation) -> bool:
    if sum(v.b) != 1 or len(set(v.support)) != len(v.support):
        return False
    val = inequality_value(G.dist, v.support, v.b)
    return val == v.value and val > 0


_PAIRS5 = list(itertools.combinations(range(5), 2))
# row p: sign of b_i b_j for pattern p (the two -1 entries at positions neg[p])
_NEG5 = list(itertools.combinations(range(5), 2))
_SIGN5 = np.array([[(-1 if i in neg else 1) * (-1 if j in neg else 1) for i, j in _PAIRS5] for neg in _NEG5],
                  dtype=np.int64)


def _scan5(D: np.ndarray, combos: np.ndarray) -> Optional[InequalityViolation]:
    if len(combos) == 0:
        return None
    dd = np.stack([D[combos[:, i], combos[:, j]] for i, j in _PAIRS5], axis=1).astype(np.int64)
    vals = dd @ _SIGN5.T
    hit = np.argwhere(vals > 0)
    if len(hit) == 0:
        return None
    r, p = hit[0]
    sup = combos[r].tolist()
    b = [(-1 if i in _NEG5[p] else 1) for i in range(5)]
    return InequalityViolation(sup, b, int(vals[r, p]))


def _chunks(it, size=200_000):
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield np.array(block, dtype=np.int64)


def _class_representatives(G: MetricGraph, rounds: int = 3) -> list[int]:
    """First vertex of each colour class after a few rounds of degree refinement."""
    col = G.degrees().tolist()
    adj = G.adj
    for _ in range(rounds):
        sig = [(col[v], tuple(sorted(col[u] for u in adj[v]))) for v in range(G.n)]
        ids = {s: i for i, s in enumerate(sorted(set(sig)))}
        col = [ids[s] for s in sig]
    first: dict[int, int] = {}
    for v, c in enumerate(col):
        first.setdefault(c, v)
    return sorted(first.values())


def five_gonal_violation(G: MetricGraph, budget: int = FIVE_GONAL_BUDGET,
                         max_ball: int = 100, centres=None) -> Optional[InequalityViolation]:
    """First violated 5-gonal inequality (pattern ``(1,1,1,-1,-1)``), or ``None``.

    A local pass looks at 5-sets made of a centre and four vertices of a ball
    around it, growing the radius while the ball has at most ``max_ball``
    vertices.  Distances come from BFS rows of the ball only, so this scales to
    large graphs.  Centres are one vertex per refinement class first (a single
    centre for a vertex-transitive graph), then every vertex with radius <= 2.
    ``None`` is only returned after the exhaustive pass over all 5-subsets, which
    raises ``BudgetExceeded`` when ``C(n,5) > budget``.
    """
    n = G.n
    if n < 5:
        return None
    if not G.is_connected():
        raise ValueError("graph is not connected")
    reps = _class_representatives(G)
    centres = range(n) if centres is None else centres
    seen: set[tuple] = set()
    work = [0]

    def scan_ball(c: int, ball: np.ndarray) -> Optional[InequalityViolation]:
        key = (c, len(ball))
        if key in seen or len(ball) < 5:
            return None
        seen.add(key)
        k = comb(len(ball) - 1, 4)
        if work[0] + k > budget:
            return None
        work[0] += k
        rows = G.bfs_rows(ball.tolist())[:, ball]
        ci = int(np.searchsorted(ball, c))
        others = [i for i in range(len(ball)) if i != ci]
        for block in _chunks(itertools.combinations(others, 4)):
            local = np.hstack([np.full((len(block), 1), ci), block])
            v = _scan5(rows, local)
            if v is not None:
                v.support = [int(ball[i]) for i in v.support]
                return v
        return None

    dists = {c: G.bfs(c) for c in reps}
    radius = 1
    while True:
        grew = False
        for c in reps:
            ball = np.flatnonzero(dists[c] <= radius)
            if len(ball) > max_ball:
                continue
            grew = True
            v = scan_ball(c, ball)
            if v is not None:
                return v
        if not grew or radius > max(int(d.max()) for d in dists.values()):
            break
        radius += 1
    for radius in (1, 2):
        for c in centres:
            ball = np.flatnonzero(G.bfs(int(c)) <= radius)
            if len(ball) <= max_ball:
                v = scan_ball(int(c), ball)
                if v is not None:
                    return v
    if comb(n, 5) > budget:
        raise BudgetExceeded(f"C({n},5) exceeds the 5-gonal budget {budget}")
    D = G.dist
    for block in _chunks(itertools.combinations(range(n), 5)):
        v = _scan5(D, block)
        if v is not None:
            return v
    return None


def _partitions(k: int, max_part: Optional[int] = None):
    if k == 0:
        yield []
        return
    max_part = k if max_part is None else max_part
    for p in range(min(k, max_part), 0, -1):
        for rest in _partitions(k - p, p):
            yield [p] + rest


def hypermetric_patterns(max_norm: int):
    """Value vectors ``b`` (nonzero entries only, sorted) with ``sum b = 1`` and ``sum |b| <= max_norm``."""
    for norm in range(3, max_norm + 1, 2):
        k = (norm - 1) // 2
        for pos in _partitions(k + 1):
            for neg in _partitions(k):
                yield pos + [-x for x in neg]


def _assignments(n: int, values: list[int]):
    """Injective placements of ``values`` on vertices, up to permuting equal values."""
    groups = []
    for v in sorted(set(values), key=lambda x: (-x)):
        groups.append((v, values.count(v)))

    def rec(gi, used):
        if gi == len(groups):
            yield []
            return
        v, c = groups[gi]
        free = [x for x in range(n) if x not in used]
        for comb_ in itertools.combinations(free, c):
            for rest in rec(gi + 1, used | set(comb_)):
                yield list(comb_) + rest

    return rec(0, frozenset())


def hypermetric_check(G: MetricGraph, max_norm: int = HYPERMETRIC_MAX_NORM,
                      max_n: int = HYPERMETRIC_MAX_N) -> Optional[InequalityViolation]:
    """Search every integer ``b`` with ``sum b = 1`` and ``sum |b| <= max_norm``.

    ``None`` means hypermetric up to that norm.  Inputs beyond ``max_n`` vertices or
    ``HYPERMETRIC_MAX_NORM`` raise ``BudgetExceeded`` instead of a partial answer.
    """
    if G.n > max_n:
        raise BudgetExceeded(f"hypermetric check limited to {max_n} vertices")
    if max_norm > HYPERMETRIC_MAX_NORM and max_n == HYPERMETRIC_MAX_N:
        raise BudgetExceeded(f"hypermetric check limited to norm {HYPERMETRIC_MAX_NORM}")
    D = G.dist.astype(np.int64)
    for pat in hypermetric_patterns(max_norm):
        if len(pat) > G.n:
            continue
        vals = sorted(pat, key=lambda x: -x)
        b = np.array(vals, dtype=np.int64)
        pairs = list(itertools.combinations(range(len(b)), 2))
        w = np.array([b[i] * b[j] for i, j in pairs], dtype=np.int64)
        for block in _chunks(_assignments(G.n, vals)):
            dd = np.stack([D[block[:, i], block[:, j]] for i, j in pairs], axis=1)
            tot = dd @ w
            hit = np.flatnonzero(tot > 0)
            if len(hit):
                r = hit[0]
                return InequalityViolation(block[r].tolist(), [int(x) for x in b], int(tot[r]))
    return None
