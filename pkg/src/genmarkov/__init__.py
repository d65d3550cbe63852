"""Generalised Markov numbers: continuants, reduced matrices, forms, sails and triple-graphs."""
from .errors import ConsistencyError, DomainError, ResourceLimitError
from .matform import (Mat2, QuadForm, RadicalRatio, map_A, map_B, map_C, map_E, map_F,
                      map_W, map_X, map_Z)
from .seqcore import breve, continuant, format_seq, parse_seq, trace_coefficient
from .surd import Surd

__all__ = [
    "ConsistencyError", "DomainError", "ResourceLimitError",
    "Mat2", "QuadForm", "RadicalRatio", "Surd",
    "map_A", "map_B", "map_C", "map_E", "map_F", "map_W", "map_X", "map_Z",
    "breve", "continuant", "format_seq", "parse_seq", "trace_coefficient",
]
__version__ = "0.1.0"
