"""
Suite catalog for the law runner.

Consumed by:
    - SuiteRegistry      → which suite ids exist and how they are labelled
    - report notes       → exhaustive vs randomized instance sources

Adding a suite: add an entry here and a Suite to verify/suites.py.SUITES.
"""

# ---------------------------------------------------------------------------
# Each entry:
#   id        → key used in --suite and the run config "suites" list
#   label     → one-line description for the report
#   instances → "exhaustive", "randomized" or "both"
#   checks    → check ids the suite reports
# ---------------------------------------------------------------------------

SUITE_CATALOG: list[dict] = [
    {
        "id": "tree-laws",
        "label": "Finite tree laws on every labeled forest and on random forests",
        "instances": "both",
        "checks": ["tree-laws"],
    },
    {
        "id": "tree-shape",
        "label": "Truncated α,κ-tree flag against the isomorphism oracle",
        "instances": "exhaustive",
        "checks": ["tree-shape"],
    },
    {
        "id": "fruit-laws",
        "label": "Cofinal fruit and locally-strict equivalence on foliage trees",
        "instances": "both",
        "checks": ["fruit-laws"],
    },
    {
        "id": "refinement",
        "label": "Transitivity of π-refinement",
        "instances": "randomized",
        "checks": ["refinement"],
    },
    {
        "id": "graft-anatomy",
        "label": "Graft anatomy of consistent families",
        "instances": "exhaustive",
        "checks": ["graft-anatomy"],
    },
    {
        "id": "hybrid-tree",
        "label": "Hybrid is a tree and matches the transitive-closure oracle",
        "instances": "exhaustive",
        "checks": ["hybrid-tree"],
    },
    {
        "id": "hybrid-order",
        "label": "Order laws of the hybrid",
        "instances": "exhaustive",
        "checks": ["hybrid-order"],
    },
    {
        "id": "hybrid-sons",
        "label": "Sons, roots and incomparability witnesses of the hybrid",
        "instances": "exhaustive",
        "checks": ["hybrid-sons"],
    },
    {
        "id": "branch-trace",
        "label": "Strict branches of the hybrid trace back to host and grafts",
        "instances": "exhaustive",
        "checks": ["branch-trace"],
    },
    {
        "id": "foliage-loss",
        "label": "Loss of a foliage hybrid",
        "instances": "both",
        "checks": ["foliage-loss"],
    },
    {
        "id": "foliage-hybrid",
        "label": "Foliage hybrid inherits nonincreasing, splittable, locally-strict leaves",
        "instances": "both",
        "checks": ["foliage-hybrid"],
    },
    {
        "id": "shoot-laws",
        "label": "Shoot refinement on finite trees and on blueprints",
        "instances": "exhaustive",
        "checks": ["shoot-laws"],
    },
    {
        "id": "classify-soundness",
        "label": "Inside/Outside verdicts agree with point membership",
        "instances": "randomized",
        "checks": ["classify-soundness"],
    },
    {
        "id": "shadow-algebra",
        "label": "Shadows commute with union, intersection and difference",
        "instances": "randomized",
        "checks": ["shadow-algebra"],
    },
    {
        "id": "density",
        "label": "Compact complements are π-dense at the guaranteed width, hence dense",
        "instances": "exhaustive",
        "checks": ["pi-dense", "dense"],
    },
    {
        "id": "blueprint",
        "label": "Blueprint invariants of every graft in the pipeline family",
        "instances": "exhaustive",
        "checks": [
            "root", "finite-height", "branching", "bounded-chains", "locally-strict", "open",
            "foliage-graft", "preserves-shoots", "implant-nonempty", "cut", "max-partition",
            "delta-root", "delta-closed", "max-antichain", "max-footline", "fiber-partition",
            "drop-coherence", "sons-formula", "spine", "maxel", "graft", "explant",
        ],
    },
    {
        "id": "pipeline",
        "label": "Stage invariants of the recursion",
        "instances": "exhaustive",
        "checks": [
            "roots-match", "frontier-antichain", "frontier-avoids-roots", "family-consistent",
            "frontier-covers", "loss-complement", "loss-union",
        ],
    },
    {
        "id": "pi-tree",
        "label": "End-to-end evidence on the materialized π-tree",
        "instances": "exhaustive",
        "checks": [
            "rooted", "nonempty-leaves", "locally-strict", "splittable", "open", "root-leaf",
            "avoids-loss", "narrowing", "shoots-into", "grows-into",
        ],
    },
]
