"""
Finite explicit trees.

    seq        Seq helpers (prefix order, restriction, seq_drop)
    fintree    FinTree + order queries
    shape      shape flags and the truncated α,κ-tree test
    enumerate  labeled forest enumerator and random trees
    laws       order-theoretic laws as violation lists
"""

from PiTree_Engine.trees.fintree import FinTree, Region, Relation, node_sort_key, sorted_nodes
from PiTree_Engine.trees.seq import Seq, is_prefix, seq_drop

__all__ = ["FinTree", "Region", "Relation", "Seq", "is_prefix", "node_sort_key", "seq_drop", "sorted_nodes"]
