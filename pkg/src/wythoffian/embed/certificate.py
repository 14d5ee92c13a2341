"""Scale-lambda hypercube embeddings and their verification."""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from ..graphs import MetricGraph

EXHAUSTIVE_DIRECT_CAP = 3000  # above this the dense distance matrix is not built


@dataclass
class EmbeddingCertificate:
    """``bits[v, i]`` is coordinate ``i`` of the label of vertex ``v``."""
    scale: int
    bits: np.ndarray
    note: str = ""

    def __post_init__(self):
        self.bits = np.asarray(self.bits, dtype=np.uint8)
        if self.bits.ndim != 2:
            self.bits = self.bits.reshape(len(self.bits), -1)
        if self.scale < 1:
            raise ValueError("scale must be positive")

    @property
    def m(self) -> int:
        return self.bits.shape[1]

    @property
    def n(self) -> int:
        return self.bits.shape[0]

    def packed(self) -> np.ndarray:
        """Labels as ``n x ceil(m/64)`` uint64 words."""
        words = max(1, -(-self.m // 64))
        padded = np.zeros((self.n, words * 64), dtype=np.uint8)
        padded[:, :self.m] = self.bits
        # little-endian bit order inside each word; only popcounts are used
        by = np.packbits(padded, axis=1, bitorder="little")
        return by.view("<u8").reshape(self.n, words)

    def normalized(self) -> "EmbeddingCertificate":
        """XOR every label with the label of vertex 0 (all weights become even at scale 2)."""
        if self.n == 0:
            return self
        return EmbeddingCertificate(self.scale, self.bits ^ self.bits[0], self.note)

    def weights(self) -> np.ndarray:
        return self.bits.sum(axis=1, dtype=np.int64)

    def concat(self, other: "EmbeddingCertificate") -> "EmbeddingCertificate":
        if other.scale != self.scale or other.n != self.n:
            raise ValueError("certificates must share scale and vertex set")
        return EmbeddingCertificate(self.scale, np.hstack([self.bits, other.bits]))

    def to_json(self) -> dict:
        labels = {str(v): "".join("1" if b else "0" for b in row) for v, row in enumerate(self.bits.tolist())}
        out = {"scale": int(self.scale), "m": int(self.m), "labels": labels}
        if self.note:
            out["note"] = self.note
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=False)

    @classmethod
    def from_json(cls, data: dict) -> "EmbeddingCertificate":
        m = int(data["m"])
        labels = data["labels"]
        n = len(labels)
        bits = np.zeros((n, m), dtype=np.uint8)
        for k, s in labels.items():
            if len(s) != m:
                raise ValueError(f"label of vertex {k} has length {len(s)}, expected {m}")
            bits[int(k)] = [c == "1" for c in s]
        return cls(int(data["scale"]), bits, data.get("note", ""))

    def save(self, path) -> None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.dumps() + "\n")

    @classmethod
    def load(cls, path) -> "EmbeddingCertificate":
        return cls.from_json(json.loads(Path(path).read_text()))


@dataclass
class CertificateCheck:
    ok: bool
    mode: str  # "exhaustive", "descent" or "sampled"
    pairs: int
    failure: Optional[tuple] = None  # (u, v, hamming, scale*dist)
    detail: str = ""

    def __bool__(self):
        return self.ok


def _check_edges(G: MetricGraph, P: np.ndarray, scale: int) -> Optional[tuple]:
    if G.m == 0:
        return None
    h = np.bitwise_count(P[G.edges[:, 0]] ^ P[G.edges[:, 1]]).sum(-1)
    bad = np.flatnonzero(h != scale)
    if len(bad):
        u, v = G.edges[bad[0]]
        return int(u), int(v), int(h[bad[0]]), scale
    return None


def check_certificate(G: MetricGraph, cert: EmbeddingCertificate, mode: str = "auto",
                      pairs: int = 10 ** 6, seed: int = 0) -> CertificateCheck:
    """Verify ``hamming(label u, label v) == scale * dist(u, v)``.

    ``exhaustive`` compares against the full distance matrix.  ``descent`` is also
    exhaustive but avoids the matrix: with every edge at Hamming distance ``scale``
    the Hamming metric is at most ``scale*dist``, and it is at least that iff every
    vertex ``v != u`` has a neighbour strictly closer to ``u`` in Hamming terms by
    ``scale``.  ``sampled`` draws random source rows and random targets in them.
    """
    if cert.n != G.n:
        raise ValueError(f"certificate labels {cert.n} vertices, graph has {G.n}")
    if mode == "auto":
        mode = "exhaustive" if G.n <= EXHAUSTIVE_DIRECT_CAP else "descent"
    lam = cert.scale
    P = cert.packed()
    if G.n <= 1:
        return CertificateCheck(True, mode, 0)
    bad = _check_edges(G, P, lam)
    if bad is not None:
        return CertificateCheck(False, mode, G.m, bad, "edge not at Hamming distance scale")

    if mode == "exhaustive":
        D = G.dist
        total = 0
        for u in range(G.n):
            h = np.bitwise_count(P ^ P[u]).sum(-1)
            diff = np.flatnonzero(h != lam * D[u].astype(np.int64))
            total += G.n
            if len(diff):
                v = int(diff[0])
                return CertificateCheck(False, mode, total, (u, v, int(h[v]), lam * int(D[u, v])))
        return CertificateCheck(True, mode, G.n * (G.n - 1) // 2)

    if mode == "descent":
        ptr, ind = G.csr.indptr, G.csr.indices
        starts = ptr[:-1]
        if np.any(np.diff(ptr) == 0):
            return CertificateCheck(False, mode, 0, None, "isolated vertex")
        for u in range(G.n):
            h = np.bitwise_count(P ^ P[u]).sum(-1).astype(np.int64)
            best = np.minimum.reduceat(h[ind], starts)
            ok = best == h - lam
            ok[u] = True
            if not ok.all():
                v = int(np.flatnonzero(~ok)[0])
                return CertificateCheck(False, mode, u * G.n, (u, v, int(h[v]), None),
                                        "no Hamming-descending neighbour")
        return CertificateCheck(True, mode, G.n * (G.n - 1) // 2)

    if mode == "sampled":
        rng = np.random.default_rng(seed)
        per_source = min(G.n, 1000)
        n_src = -(-pairs // per_source)
        sources = rng.integers(0, G.n, size=n_src)
        checked = 0
        for s in sources:
            d = G.bfs(int(s)).astype(np.int64)
            tg = rng.integers(0, G.n, size=per_source)
            h = np.bitwise_count(P[tg] ^ P[s]).sum(-1)
            diff = np.flatnonzero(h != lam * d[tg])
            checked += per_source
            if len(diff):
                v = int(tg[diff[0]])
                return CertificateCheck(False, mode, checked, (int(s), v, int(h[diff[0]]), lam * int(d[v])))
        return CertificateCheck(True, mode, checked, detail=f"seed={seed}")

    raise ValueError(f"unknown mode {mode!r}")
