"""Primitive uniquely clique-saturated hypergraphs: verifiers, transversal
tools, Johnson-graph colorings, explicit constructions and an exact
existence search."""

__version__ = "0.1.0"

from .hypercore import UniformHypergraph, complement_hypergraph, complementary_hypergraph
from .verify import FailureKind, Verdict, verify_complementary, verify_uniquely_saturated
from .search import SearchConfig, Status, existence_table, solve_existence

__all__ = [
    "UniformHypergraph",
    "complement_hypergraph",
    "complementary_hypergraph",
    "FailureKind",
    "Verdict",
    "verify_complementary",
    "verify_uniquely_saturated",
    "SearchConfig",
    "Status",
    "existence_table",
    "solve_existence",
]
