"""
The construction: blueprints, the stage recursion and the lazy π-tree.

    blueprint   GraftBlueprint: Ω / Δ / MAX oracles, fiber partition, implants
    recursion   PipelineState, pipeline_step, pipeline_run
    lazy_view   LazyHybridView, materialize_pi_tree
    shoots      shoot refinement and case-labelled certificates
    invariants  truncated checks for blueprints, stages and the π-tree
"""

from PiTree_Engine.pipeline.blueprint import (
    GraftBlueprint,
    ImplantNode,
    blueprint_build,
    blueprint_leaf,
    blueprint_sons,
    cantor_pair,
    cantor_unpair,
    materialize_blueprint,
    omega_delta_max,
)
from PiTree_Engine.pipeline.invariants import blueprint_checks, failed_checks, pi_tree_evidence, pipeline_checks
from PiTree_Engine.pipeline.lazy_view import LazyHybridView, materialize_pi_tree
from PiTree_Engine.pipeline.recursion import PipelineResult, PipelineState, pipeline_run, pipeline_step
from PiTree_Engine.pipeline.shoots import (
    ShootCertificate,
    certify_shoot,
    grows_into_subspace_check,
    preserves_shoots_check,
    shoots_into_check,
    shoots_refinement,
)

__all__ = [
    "GraftBlueprint", "ImplantNode", "LazyHybridView", "PipelineResult", "PipelineState",
    "ShootCertificate", "blueprint_build", "blueprint_checks", "blueprint_leaf", "blueprint_sons",
    "cantor_pair", "cantor_unpair", "certify_shoot", "failed_checks", "grows_into_subspace_check",
    "materialize_blueprint", "materialize_pi_tree", "omega_delta_max", "pi_tree_evidence",
    "pipeline_checks", "pipeline_run", "pipeline_step", "preserves_shoots_check",
    "shoots_into_check", "shoots_refinement",
]
