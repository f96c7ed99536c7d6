"""Exact graded-dimension computations for DT cohomology of character stacks of T^3."""
from .groups import Kind, Partition
from .molien import Parity

__version__ = "0.1.0"

__all__ = ["Kind", "Parity", "Partition", "__version__"]
