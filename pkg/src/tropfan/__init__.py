"""Exact matroid, nested-set fan and Bergman fan computations."""
from .errors import CapExceededError, HypothesisError, MatroidError
from .matroid import (
    ExactMatrix,
    Matroid,
    braid_matroid,
    from_bases,
    from_circuits,
    from_matrix,
    pg_matroid,
    uniform_matroid,
)

__version__ = "0.1.0"
