"""Synchronization of permutation groups and graph endomorphism search."""

from .errors import SynchroError
from .graphs import Graph
from .perms import Permutation, PermGroup
from .search import Homomorphism, SearchOptions
from .transforms import Transformation

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "Homomorphism",
    "PermGroup",
    "Permutation",
    "SearchOptions",
    "SynchroError",
    "Transformation",
    "__version__",
]
