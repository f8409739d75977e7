"""
Suite runner — turns suite outcomes into check records.

Per check id the status over all instances is the worst one seen:
fail beats undecidable-at-depth beats pass.  The first failing instance is
kept as the witness, together with the suite parameters, so ``replay`` can
rerun exactly that check.

Usage:
    from PiTree_Engine.verify.runner import run_suites, run_pipeline, replay_witness

    report = run_suites(["tree-laws"], SuiteParams(max_nodes=4))
    report, tree = run_pipeline(cfg)
    report = replay_witness(json.loads(text))
"""

from __future__ import annotations

import logging
from typing import Iterable

from PiTree_Engine.errors import PiTreeError, SchemaViolationError, UndecidableAtDepthError
from PiTree_Engine.pipeline.lazy_view import materialize_pi_tree
from PiTree_Engine.pipeline.recursion import pipeline_run
from PiTree_Engine.verify.config import RunConfig
from PiTree_Engine.verify.instances import compacts_instance
from PiTree_Engine.verify.records import CheckRecord, Status, VerificationReport
from PiTree_Engine.verify.registry import SuiteRegistry
from PiTree_Engine.verify.suites import Outcome, Suite, SuiteParams

logger = logging.getLogger(__name__)

NOTES = [
    "Every removed compact set must have a π-dense complement; density alone is not accepted.",
    "Fiber enumeration pairs (slot, index) with the Cantor pairing function.",
    "undecidable-at-depth: the truncation did not settle the check; rerun with a larger depth or width.",
]


class _Tally:
    def __init__(self, suite_id: str, check_id: str):
        self.suite_id = suite_id
        self.check_id = check_id
        self.status = Status.PASS
        self.instances = 0
        self.witness: dict | None = None

    def add(self, violations: list[str] | None, instance: dict, params: SuiteParams) -> None:
        self.instances += 1
        if violations is None:
            if self.status is Status.PASS:
                self.status = Status.UNDECIDABLE
            return
        if violations and self.status is not Status.FAIL:
            self.status = Status.FAIL
            self.witness = {
                "suite": self.suite_id,
                "check": self.check_id,
                "instance": instance,
                "parameters": params.to_dict(),
                "violations": list(violations),
            }

    def record(self, parameters: dict) -> CheckRecord:
        return CheckRecord(self.check_id, self.suite_id, self.status, self.instances, parameters, self.witness)


def check_instance(suite: Suite, instance: dict, params: SuiteParams) -> Outcome:
    """One suite check; errors become undecidable or failed outcomes keyed by the suite id."""
    try:
        return suite.check(instance, params)
    except UndecidableAtDepthError as exc:
        logger.warning(f"{suite.id}: instance not settled at depth {exc.depth}: {exc}")
        return {suite.id: None}
    except PiTreeError as exc:
        return {suite.id: [f"{type(exc).__name__}: {exc}"]}


def run_suite(suite: Suite, params: SuiteParams, instances: Iterable[dict] | None = None) -> list[CheckRecord]:
    tallies: dict[str, _Tally] = {}
    count = 0
    for instance in instances if instances is not None else suite.instances(params):
        count += 1
        for check_id, violations in check_instance(suite, instance, params).items():
            tallies.setdefault(check_id, _Tally(suite.id, check_id)).add(violations, instance, params)
    parameters = {k: v for k, v in params.to_dict().items() if k != "compacts"}
    records = [t.record(parameters) for t in tallies.values()]
    failed = [r.id for r in records if r.status is Status.FAIL]
    logger.info(f"suite {suite.id}: {count} instances, {len(records)} checks, failed: {failed or 'none'}")
    return records


def run_suites(
    suite_ids: Iterable[str],
    params: SuiteParams,
    registry: SuiteRegistry | None = None,
    command: str = "verify-laws",
) -> VerificationReport:
    """
    Run the selected suites (every suite for an empty selection).

    Raises:
        UnknownSuiteError: a suite id outside the catalog.
    """
    registry = registry or SuiteRegistry()
    ids = registry.resolve(list(suite_ids))
    records: list[CheckRecord] = []
    for suite_id in ids:
        records.extend(run_suite(registry.get(suite_id), params))
    parameters = {k: v for k, v in params.to_dict().items() if k != "compacts"}
    parameters["suites"] = ids
    return VerificationReport(command, parameters, records, list(NOTES))


def run_pipeline(cfg: RunConfig, registry: SuiteRegistry | None = None):
    """
    Run the recursion of ``cfg`` with its stage checks and π-tree evidence.

    Returns:
        (report, materialized π-tree or None when the recursion itself fails)
    """
    registry = registry or SuiteRegistry()
    params = cfg.suite_params()
    instance = compacts_instance(cfg.codes, cfg.depth, cfg.width, cfg.threshold)
    records = run_suite(registry.get("pipeline"), params, [instance])
    if cfg.corrupt:
        instance = compacts_instance(cfg.codes, cfg.depth, cfg.width, cfg.threshold, corrupt=True)
    records += run_suite(registry.get("pi-tree"), params, [instance])

    try:
        tree = export_tree(cfg)
    except PiTreeError as exc:
        logger.warning(f"no tree to export: {exc}")
        tree = None
    return VerificationReport(cfg.command, cfg.to_dict(), records, list(NOTES)), tree


def export_tree(cfg: RunConfig):
    """Materialized π-tree of ``cfg`` without any checks."""
    result = pipeline_run(cfg.codes, depth=cfg.depth, width=cfg.width, threshold=cfg.threshold, verify=False)
    return materialize_pi_tree(result.view, cfg.depth, cfg.width)


def replay_witness(witness: dict, registry: SuiteRegistry | None = None) -> VerificationReport:
    """
    Rerun the check a witness file was written for.

    Raises:
        SchemaViolationError: the witness lacks suite, check, instance or parameters.
        UnknownSuiteError: the witness names a suite outside the catalog.
    """
    missing = [k for k in ("suite", "check", "instance", "parameters") if k not in witness]
    if missing:
        raise SchemaViolationError(f"witness is missing {missing}", "witness")
    registry = registry or SuiteRegistry()
    suite = registry.get(witness["suite"])
    params = SuiteParams.from_dict(witness["parameters"], "witness.parameters")
    records = [r for r in run_suite(suite, params, [witness["instance"]]) if r.id == witness["check"]]
    if not records:
        records = [CheckRecord(witness["check"], suite.id, Status.PASS, 1, {})]
    return VerificationReport("replay", {"suite": suite.id, "check": witness["check"]}, records, list(NOTES))
