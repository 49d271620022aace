"""Equitable strong colorings of bounded-degree k-uniform hypergraphs."""

from .hypercore import Hypergraph, SimpleGraph, max_degree, neighborhood_hypergraph, parse_hypergraph, serialize_hypergraph
from .params import ColoringParams, derive_params, params_with_override
from .phase3 import EquitablePartition
from .pipeline import Caps, Overrides, RunReport, run_pipeline

__all__ = [
    "Caps", "ColoringParams", "EquitablePartition", "Hypergraph", "Overrides", "RunReport",
    "SimpleGraph", "derive_params", "max_degree", "neighborhood_hypergraph", "params_with_override",
    "parse_hypergraph", "run_pipeline", "serialize_hypergraph",
]
