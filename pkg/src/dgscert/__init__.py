"""Exact certification of graphs determined by their generalized spectrum."""
from .certify import DgsCertificate, Verdict, certify
from .graphs import Graph, RootedGraph, from_graph6, rooted_product, to_graph6

__all__ = [
    "DgsCertificate",
    "Graph",
    "RootedGraph",
    "Verdict",
    "certify",
    "from_graph6",
    "rooted_product",
    "to_graph6",
]
__version__ = "0.1.0"
