"""
Shape predicates of finite trees, including the truncated α,κ-tree test.

A finite tree is a truncated (depth, kappa)-tree when it is isomorphic to
(^<depth kappa, ⊂): one least node, exactly kappa sons at every non-maximal
node and every maximal node at height depth-1.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable

from PiTree_Engine.trees.fintree import FinTree


@dataclass(frozen=True)
class ShapeFlags:
    is_antichain: bool | None
    is_chain: bool | None
    bounded_chains: bool
    kappa_branching: bool
    is_truncated_alpha_kappa_tree: bool


def kappa_branching(tree: FinTree, kappa: int) -> bool:
    return all(len(tree.sons_of(x)) == kappa for x in tree.nodes if tree.sons_of(x))


def is_truncated_alpha_kappa_tree(tree: FinTree, kappa: int, depth: int) -> bool:
    if depth < 1 or kappa < 1:
        return False
    if tree.least_node() is None:
        return False
    if not kappa_branching(tree, kappa):
        return False
    return all(tree.height_of(m) == depth - 1 for m in tree.terminal_nodes())


def shape_flags(
    tree: FinTree,
    kappa: int,
    depth: int,
    antichain: Iterable | None = None,
    chain: Iterable | None = None,
) -> ShapeFlags:
    """
    Evaluate each shape predicate by definition.

    Args:
        tree: the finite tree.
        kappa: branching number for the κ-branching and α,κ checks.
        depth: truncation depth for the α,κ check.
        antichain / chain: optional node sets to test.
    """
    return ShapeFlags(
        is_antichain=tree.is_antichain(antichain) if antichain is not None else None,
        is_chain=tree.is_chain(chain) if chain is not None else None,
        # finite trees: every chain lies in a finite branch
        bounded_chains=True,
        kappa_branching=kappa_branching(tree, kappa),
        is_truncated_alpha_kappa_tree=is_truncated_alpha_kappa_tree(tree, kappa, depth),
    )


def standard_fintree(depth: int, width: int) -> FinTree:
    """(^<depth width, ⊂) with Seq nodes."""
    seqs = [s for k in range(depth) for s in product(range(width), repeat=k)]
    return FinTree.from_seqs(seqs)
