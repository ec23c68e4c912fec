"""Short distance labels for permutation graphs.

Each vertex of the graph of a permutation gets a bit string; the exact
distance between two vertices (or ``UNREACHABLE``) is computed from their two
labels alone.
"""
from .graph import (UNREACHABLE, Point, PointSet, components, distance_matrix, enumerate_permutations,
                    from_permutation, oracle, random_permutation)
from .scheme import decode_distance, encode
from .baselines import decode5, decode7, encode5, encode7

__all__ = [
    "UNREACHABLE", "Point", "PointSet", "components", "decode5", "decode7", "decode_distance",
    "distance_matrix", "encode", "encode5", "encode7", "enumerate_permutations", "from_permutation",
    "oracle", "random_permutation",
]
__version__ = "0.1.0"
