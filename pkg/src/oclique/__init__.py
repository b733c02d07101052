"""Oriented cliques (ocliques): recognition, oriented colourings, orientability
of undirected graphs, a catalog of named graphs and exhaustive verification suites."""

__version__ = "0.1.0"

from .analysis import chi_o, homomorphism, is_oclique, omega_ao, omega_ro
from .errors import BudgetExceeded, GraphFormatError, LimitExceeded, OcliqueError
from .graphs import OrientedGraph, UndirectedGraph, parse_graph, serialize, underlying
from .orientability import decide_orientable, orient_as_oclique

__all__ = [
    "__version__",
    "chi_o",
    "homomorphism",
    "is_oclique",
    "omega_ao",
    "omega_ro",
    "BudgetExceeded",
    "GraphFormatError",
    "LimitExceeded",
    "OcliqueError",
    "OrientedGraph",
    "UndirectedGraph",
    "parse_graph",
    "serialize",
    "underlying",
    "decide_orientable",
    "orient_as_oclique",
]
