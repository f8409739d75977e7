"""
Independent order oracle for hybrids: the transitive closure of the host
order and every graft order, restricted to the hybrid node set before
closing.  Used only to cross-check hybrid_build.
"""

from __future__ import annotations

import networkx as nx

from PiTree_Engine.grafting.anatomy import ConsistentFamily
from PiTree_Engine.grafting.hybrid import Supp, graft_node_image, hybrid_nodes
from PiTree_Engine.trees.fintree import FinTree


def closure_order(family: ConsistentFamily) -> frozenset[tuple]:
    """Strict order pairs (x, y) of the hybrid, via networkx."""
    g = nx.DiGraph()
    g.add_nodes_from(hybrid_nodes(family))
    host = family.host
    support = family.support
    for t in support:
        for s in host.ancestors(t):
            if s in support:
                g.add_edge(Supp(s), Supp(t))
    for gid, a in enumerate(family.grafts):
        for y in a.graft.nodes:
            for x in a.graft.ancestors(y):
                g.add_edge(graft_node_image(family, gid, x), graft_node_image(family, gid, y))
    closed = nx.transitive_closure(g, reflexive=False)
    return frozenset(closed.edges())


def tree_order(tree: FinTree) -> frozenset[tuple]:
    return frozenset((x, y) for y in tree.nodes for x in tree.ancestors(y))


def matches_closure(family: ConsistentFamily, hybrid: FinTree) -> bool:
    return tree_order(hybrid) == closure_order(family)
