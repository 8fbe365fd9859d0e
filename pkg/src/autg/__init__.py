"""Symbolic automorphism groups of interval, circle and permutation
graphs, computed through their decomposition trees, with a brute-force
oracle for cross-checking."""

from .graph import Graph, EdgeListParseError, parse_edge_list, format_edge_list

__all__ = [
    "Graph",
    "EdgeListParseError",
    "parse_edge_list",
    "format_edge_list",
]

__version__ = "0.1.0"
