"""trirep - geometric representations of binary linear codes."""

__version__ = "0.1.0"

from trirep.codealg import LinearCode, analyze_code, find_two_basis
from trirep.core import RepresentationBuilder, representations
from trirep.representation import Representation, encode_f, verify_representation

__all__ = [
    "representations",
    "RepresentationBuilder",
    "LinearCode",
    "Representation",
    "analyze_code",
    "encode_f",
    "find_two_basis",
    "verify_representation",
]
