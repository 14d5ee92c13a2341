"""Wythoff constructions on regular polytopes and the embeddability of their skeletons."""
from __future__ import annotations

from .complexes import FaceComplex, StructuralError, boundary_types, dual, essential_family, wythoff
from .coxeter import CoxeterGroup, build_group, cayley_graph, inversion_embedding
from .graphs import MetricGraph, dual_skeleton, is_isomorphic, skeleton
from .zoo import cross_polytope, parse_spec, regular, simplex

__version__ = "0.1.0"

__all__ = ["FaceComplex", "StructuralError", "boundary_types", "dual", "essential_family", "wythoff",
           "CoxeterGroup", "build_group", "cayley_graph", "inversion_embedding",
           "MetricGraph", "dual_skeleton", "is_isomorphic", "skeleton",
           "cross_polytope", "parse_spec", "regular", "simplex"]
