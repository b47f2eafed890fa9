"""Exact arithmetic for tangential base points at maximally degenerate stable
curves: truncated multivariate Puiseux series with coherent roots, splitting
of tame Kummer coverings, stable-graph combinatorics, and the signed edge
representation of graph automorphism groups."""

from .errors import DomainError
from .fields import Field, RootsOfUnity, Scalar
from .graphs import (
    GraphMorphism,
    StableGraph,
    are_isomorphic,
    canonical_encoding,
    canonical_form,
    enumerate_max_degenerate,
    find_isomorphisms,
    graph_from_document,
    graph_to_document,
)
from .kummer import (
    KummerCovering,
    SplitHomomorphism,
    all_series_roots,
    split_homs,
    verify_hom,
)
from .puiseux import INFINITY, PuiseuxSeries, parse_series
from .ribbon import (
    INFINITY_POINT,
    MobiusMap,
    RibbonStructure,
    SignedEdgeMatrix,
    TangentialBasePoint,
    edge_sign,
    enumerate_ribbons,
    mobius_normalize,
    orientation_effect,
    rep_matrix,
    ribbon_from_document,
    tangential_base_point,
)

__all__ = [
    "DomainError",
    "Field", "RootsOfUnity", "Scalar",
    "INFINITY", "PuiseuxSeries", "parse_series",
    "KummerCovering", "SplitHomomorphism", "all_series_roots", "split_homs",
    "verify_hom",
    "GraphMorphism", "StableGraph", "are_isomorphic", "canonical_encoding",
    "canonical_form", "enumerate_max_degenerate", "find_isomorphisms",
    "graph_from_document", "graph_to_document",
    "INFINITY_POINT", "MobiusMap", "RibbonStructure", "SignedEdgeMatrix",
    "TangentialBasePoint", "edge_sign", "enumerate_ribbons",
    "mobius_normalize", "orientation_effect", "rep_matrix",
    "ribbon_from_document", "tangential_base_point",
]

__version__ = "0.1.0"
