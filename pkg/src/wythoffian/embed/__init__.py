"""Deciding and certifying hypercube, half-cube, Johnson and l1 embeddings."""
from __future__ import annotations

from typing import Optional

from ..graphs import MetricGraph
from .balance import balance_label, cut_sizes, equicut_profile, johnson_form, to_johnson
from .certificate import CertificateCheck, EmbeddingCertificate, check_certificate
from .factor import Factorization, L1Verdict, gw_factorize, l1_verdict, scale_via_factors
from .halfspaces import BudgetExceeded, Limits, ScaleSearchResult, halfspaces, lp_l1, scale_search
from .inequalities import InequalityViolation, check_violation, five_gonal_violation, hypermetric_check
from .partial_cube import partial_cube, theta_classes, theta_matrix

DIRECT_SEARCH_CAP = 24  # at or below this, scale-2 search runs on the whole graph


def scale2_search(G: MetricGraph, limits: Optional[Limits] = None, factorize: Optional[bool] = None) -> ScaleSearchResult:
    """Exact scale-2 decision within ``limits``; ``undecided`` when they are hit.

    Larger graphs go through the Graham-Winkler factors (a scale holds for a graph
    iff it holds for every factor) and the factor certificates are concatenated.
    """
    limits = limits or Limits()
    if factorize is None:
        factorize = G.n > DIRECT_SEARCH_CAP
    if not factorize:
        return scale_search(G, 2, limits)
    status, cert, fac = scale_via_factors(G, 2, limits)
    return ScaleSearchResult(status, 2, cert, note=f"{len(fac.factors)} factors")


__all__ = [
    "BudgetExceeded", "CertificateCheck", "EmbeddingCertificate", "Factorization", "InequalityViolation",
    "L1Verdict", "Limits", "ScaleSearchResult", "balance_label", "check_certificate", "check_violation",
    "cut_sizes", "equicut_profile", "five_gonal_violation", "gw_factorize", "halfspaces", "hypermetric_check",
    "johnson_form", "l1_verdict", "lp_l1", "partial_cube", "scale2_search", "scale_search",
    "scale_via_factors", "theta_classes", "theta_matrix", "to_johnson",
]
