"""Exact invariants of two-block cyclic quotient singularities.

The group Z/r acts on C^n with weight r-1 on the first s coordinates and
weight 1 on the rest. This package computes, in exact rational arithmetic:
the resolution fan of the quotient and its smoothness certificates,
discrepancies and singularity type, the torus-fixed points of the orbifold
Hilbert scheme with their tangent dimensions, McKay divisor tables and the
character/divisor correspondence, and the McKay quiver model with its chart
and stability data.
"""

from .context import TripleContext
from .group import CharIndex, GroupData, validate

__all__ = ["CharIndex", "GroupData", "TripleContext", "validate"]

__version__ = "0.1.0"
