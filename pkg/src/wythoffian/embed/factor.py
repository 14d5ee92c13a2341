"""Graham-Winkler canonical factorization and l1 verdicts built on it."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..graphs import DisconnectedGraphError, MetricGraph
from .certificate import EmbeddingCertificate, check_certificate
from .halfspaces import Limits, lp_l1, scale_search
from .partial_cube import partial_cube, theta_matrix

GW_CAP = 3000


@dataclass
class Factorization:
    factors: list[MetricGraph]
    coords: np.ndarray  # coords[x, i] = vertex of factor i hit by x
    classes: np.ndarray  # Theta* class per edge of the input graph

    def recombines(self, G: MetricGraph) -> bool:
        """``d_G(x,y) == sum_i d_{F_i}(x_i, y_i)`` for all pairs."""
        total = np.zeros((G.n, G.n), dtype=np.int64)
        for i, F in enumerate(self.factors):
            c = self.coords[:, i]
            total += F.dist[np.ix_(c, c)]
        return bool(np.array_equal(total, G.dist.astype(np.int64)))


def gw_factorize(G: MetricGraph, cap: int = GW_CAP) -> Factorization:
    """Factors of the canonical isometric embedding into a Cartesian product.

    Edges are grouped into classes of the transitive closure of Theta; factor ``i``
    contracts every edge outside class ``i``.
    """
    if G.n > cap:
        raise ValueError(f"factorization capped at {cap} vertices")
    if not G.is_connected():
        raise DisconnectedGraphError("graph is not connected")
    if G.m == 0:
        return Factorization([], np.zeros((G.n, 0), dtype=np.int64), np.zeros(0, dtype=np.int64))
    T = theta_matrix(G)
    k, cls = connected_components(coo_matrix(T), directed=False)
    factors, coords = [], []
    for i in range(k):
        keep = cls != i
        e = G.edges[keep]
        g = coo_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(G.n, G.n))
        _, comp = connected_components(g, directed=False)
        # renumber components by first vertex so the factor labelling is canonical
        _, first = np.unique(comp, return_index=True)
        renum = np.empty(len(first), dtype=np.int64)
        renum[np.argsort(first)] = np.arange(len(first))
        comp = renum[comp]
        fe = comp[G.edges[~keep]]
        factors.append(MetricGraph(len(first), fe))
        coords.append(comp)
    # order factors: larger first, then by edge list, for deterministic output
    order = sorted(range(k), key=lambda i: (-factors[i].n, factors[i].edges.tolist()))
    remap = np.empty(k, dtype=np.int64)
    remap[order] = np.arange(k)
    return Factorization([factors[i] for i in order], np.stack([coords[i] for i in order], axis=1), remap[cls])


def _factor_key(F: MetricGraph) -> tuple:
    return F.n, tuple(map(tuple, F.edges.tolist()))


def _scale_certificate(F: MetricGraph, lam: int, limits: Limits, cache: dict) -> tuple[str, Optional[EmbeddingCertificate]]:
    key = (_factor_key(F), lam)
    if key not in cache:
        pc = partial_cube(F)
        if pc is not None:
            cache[key] = ("found", EmbeddingCertificate(lam, np.repeat(pc.bits, lam, axis=1)))
        else:
            r = scale_search(F, lam, limits)
            cache[key] = (r.status, r.certificate)
    return cache[key]


def product_certificate(fac: Factorization, certs: list[EmbeddingCertificate], lam: int) -> EmbeddingCertificate:
    blocks = [c.bits[fac.coords[:, i]] for i, c in enumerate(certs)]
    n = len(fac.coords)
    bits = np.hstack(blocks) if blocks else np.zeros((n, 0), dtype=np.uint8)
    return EmbeddingCertificate(lam, bits)


def scale_via_factors(G: MetricGraph, lam: int, limits: Optional[Limits] = None,
                      cache: Optional[dict] = None):
    """Scale-``lam`` search on each Graham-Winkler factor; certificates are concatenated.

    Returns ``(status, certificate, factorization)``.
    """
    limits = limits or Limits()
    cache = {} if cache is None else cache
    fac = gw_factorize(G)
    certs, status = [], "found"
    for F in fac.factors:
        st, c = _scale_certificate(F, lam, limits, cache)
        if st != "found":
            status = "none" if st == "none" and status != "undecided" else "undecided"
            if st == "none":
                return "none", None, fac
            continue
        certs.append(c)
    if status != "found":
        return status, None, fac
    cert = product_certificate(fac, certs, lam)
    if not check_certificate(G, cert).ok:
        raise AssertionError("factor certificates failed to recombine")
    return "found", cert, fac


@dataclass
class L1Verdict:
    status: str  # "l1", "not_l1" or "undecided"
    min_scale: Optional[int] = None
    certificate: Optional[EmbeddingCertificate] = None
    factors: list = field(default_factory=list)
    factor_scales: list = field(default_factory=list)
    note: str = ""

    def __str__(self):
        if self.status == "l1":
            return f"l1_with_min_scale({self.min_scale})"
        return self.status


def l1_verdict(G: MetricGraph, max_scale: int = 8, limits: Optional[Limits] = None) -> L1Verdict:
    """Factorize, then find the least scale accepted by every factor.

    A factor with no l1 representation (exact LP with a Farkas certificate) makes
    the whole graph non-l1.  Scales are tried in order up to ``max_scale``.
    """
    limits = limits or Limits()
    fac = gw_factorize(G)
    cache: dict = {}
    per_factor = []
    for F in fac.factors:
        if partial_cube(F) is not None:
            per_factor.append(1)
            continue
        verdict, _ = lp_l1(F, limits)
        if verdict == "not_l1":
            return L1Verdict("not_l1", factors=fac.factors, note="factor has a Farkas certificate")
        lam_f = None
        for lam in range(2, max_scale + 1):
            st, _ = _scale_certificate(F, lam, limits, cache)
            if st == "found":
                lam_f = lam
                break
        per_factor.append(lam_f)
    if any(x is None for x in per_factor):
        return L1Verdict("undecided", factors=fac.factors, factor_scales=per_factor,
                         note=f"no scale <= {max_scale} found for some factor")
    # a factor with scale lam also has every multiple; take the least common feasible scale
    for lam in range(1, max_scale + 1):
        ok = True
        for F, lf in zip(fac.factors, per_factor):
            if lam % lf == 0:
                continue
            if lam < lf:
                ok = False
                break
            st, _ = _scale_certificate(F, lam, limits, cache)
            if st != "found":
                ok = False
                break
        if ok:
            st, cert, _ = scale_via_factors(G, lam, limits, cache)
            return L1Verdict("l1", lam, cert, fac.factors, per_factor)
    return L1Verdict("undecided", factors=fac.factors, factor_scales=per_factor,
                     note=f"no common scale <= {max_scale}")
