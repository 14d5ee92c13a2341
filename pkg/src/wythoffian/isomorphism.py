"""Exact isomorphism of vertex-coloured graphs by colour refinement and backtracking."""
from __future__ import annotations

from typing import Optional, Sequence


def _refine(adj: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    ncol = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if len(table) == ncol:
            return new
        colors, ncol = new, len(table)


def _balanced(colors: list[int], n1: int) -> bool:
    count: dict[int, int] = {}
    for c in colors[:n1]:
        count[c] = count.get(c, 0) + 1
    for c in colors[n1:]:
        k = count.get(c, 0)
        if k == 0:
            return False
        count[c] = k - 1
    return not any(count.values())


def find_isomorphism(
    adj1: Sequence[Sequence[int]],
    adj2: Sequence[Sequence[int]],
    colors1: Optional[Sequence] = None,
    colors2: Optional[Sequence] = None,
) -> Optional[list[int]]:
    """Return ``phi`` with ``phi[v]`` the image of vertex ``v`` of graph 1, or ``None``.

    Colours, when given, must be preserved; they may be any hashable, comparable values.
    """
    n1, n2 = len(adj1), len(adj2)
    if n1 != n2:
        return None
    if sum(map(len, adj1)) != sum(map(len, adj2)):
        return None
    if n1 == 0:
        return []
    c1 = list(colors1) if colors1 is not None else [0] * n1
    c2 = list(colors2) if colors2 is not None else [0] * n2
    palette = {c: i for i, c in enumerate(sorted(set(c1) | set(c2)))}
    adj = [list(a) for a in adj1] + [[u + n1 for u in a] for a in adj2]
    start = [palette[c] for c in c1] + [palette[c] for c in c2]
    edges1 = {(u, v) for u in range(n1) for v in adj1[u]}
    adj2_sets = [set(a) for a in adj2]

    def search(colors: list[int]) -> Optional[list[int]]:
        colors = _refine(adj, colors)
        if not _balanced(colors, n1):
            return None
        cells: dict[int, list[int]] = {}
        for v in range(n1):
            cells.setdefault(colors[v], []).append(v)
        target = min((cell for cell in cells.values() if len(cell) > 1), key=len, default=None)
        if target is None:
            where = {colors[w]: w - n1 for w in range(n1, 2 * n1)}
            phi = [where[colors[v]] for v in range(n1)]
            if all(phi[v] in adj2_sets[phi[u]] for u, v in edges1):
                return phi
            return None
        v = target[0]
        fresh = max(colors) + 1
        for w in range(n1, 2 * n1):
            if colors[w] != colors[v]:
                continue
            trial = list(colors)
            trial[v] = trial[w] = fresh
            phi = search(trial)
            if phi is not None:
                return phi
        return None

    return search(start)
