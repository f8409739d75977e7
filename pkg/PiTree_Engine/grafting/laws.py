"""
Law checks for grafts and hybrids, as violation lists.

    check_graft_laws     partition of graft nodes, support membership
    check_hybrid_tree    tree axioms + agreement with the closure oracle
    check_hybrid_order   restriction, sandwich and ancestor identities
    check_hybrid_sons    sons formula, incomparability witnesses, preservation
    check_branch_trace   graft traces of branches, cofinal support
    check_loss_laws      foliage hybrid leaves versus graft leaves and the loss
    check_foliage_hybrid_laws  preservation of foliage properties
    foliage_hybrid_report      flags of host, grafts and hybrid
"""

from __future__ import annotations

from itertools import combinations

from PiTree_Engine.foliage.predicates import foliage_flags
from PiTree_Engine.grafting.anatomy import ConsistentFamily
from PiTree_Engine.grafting.hybrid import (
    Graft,
    Supp,
    branch_trace,
    graft_node_image,
    hybrid_relate,
    in_graft,
)
from PiTree_Engine.grafting.oracle import matches_closure
from PiTree_Engine.trees.fintree import FinTree
from PiTree_Engine.trees.laws import brute_force_sons, check_strict_order
from PiTree_Engine.trees.shape import kappa_branching


def check_graft_laws(family: ConsistentFamily) -> list[str]:
    host, support = family.host, family.support
    bad = []
    for gid, a in enumerate(family.grafts):
        parts = [{a.root}, set(a.maxel), set(a.implant)]
        if sum(len(p) for p in parts) != len(a.nodes) or set().union(*parts) != set(a.nodes):
            bad.append(f"(a) graft {gid}: nodes are not root ⊔ maxel ⊔ implant")
        if not ({a.root} | a.maxel | host.minel()) <= support:
            bad.append(f"(b) graft {gid}: root, maxel or host minima left the support")
        if a.implant & support:
            bad.append(f"(c) graft {gid}: implant meets the support")
        above = host.footline(a.maxel, "down")
        for s in support:
            if host.less(a.root, s) != (s in above):
                bad.append(f"(d) graft {gid}: support node {s!r} breaks 'above root iff above maxel'")
            for e in a.explant:
                if (s == a.root or host.less(s, a.root)) != host.less(s, e):
                    bad.append(f"(e) graft {gid}: support node {s!r} vs explant node {e!r}")
    for (j, d), (k, e) in combinations(enumerate(family.grafts), 2):
        if d.root == e.root or d.maxel & e.maxel:
            bad.append(f"(f) grafts {j}, {k} share a root or maximal nodes")
    return bad


def check_hybrid_tree(family: ConsistentFamily, H: FinTree) -> list[str]:
    bad = check_strict_order(H)
    for x in H.nodes:
        for y in H.nodes:
            if H.relate(x, y) is not hybrid_relate(family, x, y):
                bad.append(f"hybrid tree and hybrid_relate disagree on {x!r}, {y!r}")
    if not matches_closure(family, H):
        bad.append("hybrid order differs from the transitive closure oracle")
    return bad


def _le(H: FinTree, x, y) -> bool:
    return x == y or H.less(x, y)


def check_hybrid_order(family: ConsistentFamily, H: FinTree) -> list[str]:
    bad = []
    supp_nodes = [h for h in H.nodes if isinstance(h, Supp)]
    if frozenset(h.node for h in supp_nodes) != family.support:
        bad.append("(b) support differs from hybrid ∩ host")
    for x in supp_nodes:
        for y in supp_nodes:
            if H.less(x, y) != family.host.less(x.node, y.node):
                bad.append(f"(b) support order differs at {x!r}, {y!r}")

    for gid, a in enumerate(family.grafts):
        img = {x: graft_node_image(family, gid, x) for x in a.nodes}
        root = img[a.root]
        implant = [img[i] for i in a.implant]
        maxel = [img[m] for m in a.maxel]
        for x in a.nodes:
            for y in a.nodes:
                if H.less(img[x], img[y]) != a.graft.less(x, y):
                    bad.append(f"(a) graft {gid}: order differs at {x!r}, {y!r}")
        for h in H.nodes:
            outside = not (isinstance(h, Graft) and h.gid == gid)
            for i in implant:
                if _le(H, i, h) and not H.less(root, h):
                    bad.append(f"(c) graft {gid}: {h!r} >= {i!r} but not above the root")
                if _le(H, h, root) and not H.less(h, i):
                    bad.append(f"(d) graft {gid}: {h!r} <= root but not below {i!r}")
                if outside and _le(H, h, root) != H.less(h, i):
                    bad.append(f"(e) graft {gid}: {h!r} vs {i!r}")
            if outside and H.less(root, h) != any(_le(H, m, h) for m in maxel):
                bad.append(f"(f) graft {gid}: {h!r} above the root iff above maxel fails")
        root_up = set(H.ancestors(root))
        for g in a.nodes:
            from_graft = {img[x] for x in a.graft.ancestors(g)}
            if from_graft & root_up or set(H.ancestors(img[g])) != from_graft | root_up:
                bad.append(f"(g) graft {gid}: ancestors of {g!r} do not decompose")
    return bad


def expected_sons(family: ConsistentFamily, x) -> frozenset:
    """Sons of a hybrid node by the sons formula."""
    if isinstance(x, Graft):
        return frozenset(graft_node_image(family, x.gid, s) for s in family.grafts[x.gid].graft.sons_of(x.node))
    gid = family.graft_rooted_at(x.node)
    if gid is not None:
        return frozenset(graft_node_image(family, gid, s) for s in family.grafts[gid].graft.sons_of(x.node))
    return frozenset(Supp(t) for t in family.host.sons_of(x.node))


def _incomparability_witness(family: ConsistentFamily, H: FinTree, x, y) -> bool:
    xs = (*H.ancestors(x), x)
    ys = (*H.ancestors(y), y)
    for a in xs:
        for b in ys:
            if isinstance(a, Supp) and isinstance(b, Supp) and family.host.incomparable(a.node, b.node):
                return True
            for gid, an in enumerate(family.grafts):
                ga, gb = in_graft(family, gid, a), in_graft(family, gid, b)
                if ga is not None and gb is not None and an.graft.incomparable(ga, gb):
                    return True
    return False


def check_hybrid_sons(family: ConsistentFamily, H: FinTree) -> list[str]:
    bad = []
    host = family.host
    nodes = list(H.nodes)
    for x in nodes:
        want = expected_sons(family, x)
        if H.sons_of(x) != want or brute_force_sons(H, x) != want:
            bad.append(f"(a) sons of {x!r} differ from the sons formula")
    for x, y in combinations(nodes, 2):
        if H.incomparable(x, y) and not _incomparability_witness(family, H, x, y):
            bad.append(f"(b) no support or graft witness for {x!r} ∥ {y!r}")
    if host.least_node() is not None and H.least_node() != Supp(host.least_node()):
        bad.append("(c) hybrid does not keep the host's least node")
    if not host.maxel() and H.maxel():
        bad.append("(d) hybrid gained maximal nodes")
    kappas = {len(host.sons_of(x)) for x in host.nodes if host.sons_of(x)}
    for a in family.grafts:
        kappas |= {len(a.graft.sons_of(x)) for x in a.nodes if a.graft.sons_of(x)}
    if len(kappas) == 1:
        k = kappas.pop()
        if kappa_branching(host, k) and not kappa_branching(H, k):
            bad.append(f"(e) {k}-branching is not preserved")
    bound = host.tree_height() + sum(a.graft.tree_height() - 1 for a in family.grafts)
    if H.tree_height() > bound:
        bad.append(f"(f) hybrid height {H.tree_height()} exceeds {bound}")
    return bad


def check_branch_trace(family: ConsistentFamily, H: FinTree) -> list[str]:
    bad = []
    bounded = all(a.bounded_chains for a in family.grafts)
    for B in H.branches_of():
        trace = branch_trace(family, B, H)
        for gid, chain in trace.per_graft.items():
            if chain not in family.grafts[gid].graft.branches_of():
                bad.append(f"(a) trace of a branch on graft {gid} is not a branch of it")
        if bounded and not all(any(_le(H, b, s) for s in trace.support_part) for b in B):
            bad.append("(b) support part is not cofinal in its branch")
    return bad


# ---------------------------------------------------------------------------
# Foliage hybrids
# ---------------------------------------------------------------------------

def check_loss_laws(fam, H, candidate_sets=()) -> list[str]:
    """Graft leaves survive minus the loss; sets respecting every graft root avoid the loss."""
    U = fam.host.universe
    bad = []
    for gid, G in enumerate(fam.grafts):
        for x in G.nodes:
            h = graft_node_image(fam.family, gid, x)
            if not U.equal(H.leaf(h), U.difference(G.leaf(x), fam.loss)):
                bad.append(f"(a) leaf of graft {gid} at {x!r} is not the graft leaf minus the loss")
    for A in candidate_sets:
        respects = all(
            U.is_subset(A, G.leaf(a.root)) or U.is_disjoint(A, fam.host.leaf(a.root))
            for G, a in zip(fam.grafts, fam.family.grafts)
        )
        if respects and not U.is_disjoint(A, fam.loss):
            bad.append(f"(b) {U.describe(A)!r} meets the loss")
    return bad


def check_foliage_hybrid_laws(fam, H) -> list[str]:
    """Preservation of foliage properties by the foliage hybrid."""
    F = fam.host
    hf = foliage_flags(H)
    ff = foliage_flags(F)
    gfs = [foliage_flags(G) for G in fam.grafts]
    bad = []
    if hf.nonincreasing is False:
        bad.append("(a) foliage hybrid is not nonincreasing")
    if ff.splittable and all(g.splittable for g in gfs) and hf.splittable is False:
        bad.append("(b) splittability is not preserved")
    if ff.locally_strict and all(g.locally_strict for g in gfs) and hf.locally_strict is False:
        bad.append("(c) local strictness is not preserved")
    bounded = all(a.bounded_chains for a in fam.family.grafts)
    if ff.splittable and bounded:
        if ff.complete and hf.complete is False:
            bad.append("(d) completeness is not preserved")
        if ff.strict_branches and hf.strict_branches is False:
            bad.append("(d) strict branches are not preserved")
    # openness only holds relative to the complement of the loss; recorded by the caller
    return bad


def foliage_hybrid_report(fam, H) -> dict:
    """Flags of host, grafts and hybrid plus the law violations, for reports."""
    return {
        "host": foliage_flags(fam.host).as_dict(),
        "grafts": [foliage_flags(G).as_dict() for G in fam.grafts],
        "hybrid": foliage_flags(H).as_dict(),
        "violations": check_foliage_hybrid_laws(fam, H),
    }
