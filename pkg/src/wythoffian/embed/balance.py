"""Cut balance of an embedding and the Johnson-graph form of a scale-2 embedding."""
from __future__ import annotations

from typing import Optional

import numpy as np

from .certificate import EmbeddingCertificate


def cut_sizes(cert: EmbeddingCertificate) -> list[int]:
    """Size of the smaller side of each coordinate cut."""
    ones = cert.bits.sum(axis=0, dtype=np.int64)
    return [int(min(k, cert.n - k)) for k in ones]


def equicut_profile(cert: EmbeddingCertificate) -> tuple[str, Optional[int]]:
    """``("equicut", None)``, ``("q-balanced", q)`` or ``("neither", None)``."""
    sizes = set(cut_sizes(cert))
    n = cert.n
    if not sizes:
        return "neither", None
    if sizes == {n / 2}:
        return "equicut", None
    if len(sizes) == 1:
        return "q-balanced", sizes.pop()
    return "neither", None


def balance_label(cert: EmbeddingCertificate) -> str:
    """Table notation: ``yes``, ``q=<q>`` or ``no``."""
    kind, q = equicut_profile(cert)
    return {"equicut": "yes", "neither": "no"}.get(kind, f"q={q}")


def johnson_flips(cert: EmbeddingCertificate, adjacent_pairs) -> Optional[np.ndarray]:
    """Coordinate complementation making all label weights equal, of least weight, or ``None``.

    For labels ``x_u, x_v`` at Hamming distance 2 differing in ``i, j`` the weights
    agree after complementing ``f`` iff ``f_i xor f_j = 1 xor x_ui xor x_uj``.
    """
    m = cert.m
    parent = list(range(m))
    parity = [0] * m

    def find(a):
        if parent[a] == a:
            return a, 0
        r, p = find(parent[a])
        parent[a] = r
        parity[a] ^= p
        return r, parity[a]

    bits = cert.bits
    for u, v in adjacent_pairs:
        diff = np.flatnonzero(bits[u] != bits[v])
        if len(diff) != 2:
            return None
        i, j = int(diff[0]), int(diff[1])
        want = 1 ^ int(bits[u, i]) ^ int(bits[u, j])
        ri, pi = find(i)
        rj, pj = find(j)
        if ri == rj:
            if pi ^ pj != want:
                return None
        else:
            parent[ri] = rj
            parity[ri] = pi ^ pj ^ want
    # each component has two choices; take the one with fewer ones in the label of vertex 0
    flips = np.zeros(m, dtype=np.uint8)
    comps: dict[int, list[tuple[int, int]]] = {}
    for i in range(m):
        r, p = find(i)
        comps.setdefault(r, []).append((i, p))
    base = bits[0] if cert.n else np.zeros(m, dtype=np.uint8)
    for members in comps.values():
        # option t: f_i = p_i xor t
        cost = [sum(int(base[i]) ^ p ^ t for i, p in members) for t in (0, 1)]
        t = 0 if cost[0] <= cost[1] else 1
        for i, p in members:
            flips[i] = p ^ t
    return flips


def johnson_form(cert: EmbeddingCertificate, adjacent_pairs=None) -> Optional[tuple[int, int]]:
    """``(m, n)`` if the scale-2 labels can be complemented into constant weight ``n``.

    ``adjacent_pairs`` defaults to all label pairs at Hamming distance 2, which are
    exactly the edges when ``cert`` is valid.
    """
    if cert.scale != 2:
        raise ValueError("Johnson form needs a scale-2 embedding")
    if cert.n <= 1:
        return cert.m, 0
    if adjacent_pairs is None:
        P = cert.packed()
        pairs = []
        for u in range(cert.n):
            h = np.bitwise_count(P[u + 1:] ^ P[u]).sum(-1)
            pairs.extend((u, u + 1 + int(v)) for v in np.flatnonzero(h == 2))
        adjacent_pairs = pairs
    flips = johnson_flips(cert, adjacent_pairs)
    if flips is None:
        return None
    w = (cert.bits ^ flips).sum(axis=1)
    if len(set(w.tolist())) != 1:
        return None
    return cert.m, int(w[0])


def to_johnson(cert: EmbeddingCertificate) -> Optional[EmbeddingCertificate]:
    """The complemented certificate realising the Johnson form."""
    P = cert.packed()
    pairs = []
    for u in range(cert.n):
        h = np.bitwise_count(P[u + 1:] ^ P[u]).sum(-1)
        pairs.extend((u, u + 1 + int(v)) for v in np.flatnonzero(h == 2))
    flips = johnson_flips(cert, pairs)
    if flips is None:
        return None
    return EmbeddingCertificate(cert.scale, cert.bits ^ flips, cert.note)
