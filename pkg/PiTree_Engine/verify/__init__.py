"""
Law suites, check records and the command-line entry point.

    catalog    SUITE_CATALOG (ids, labels, check ids)
    suites     SuiteParams and the Suite table
    registry   SuiteRegistry
    records    CheckRecord, VerificationReport, exit codes
    runner     run_suites, run_pipeline, replay_witness
    config     RunConfig, parse_config
    cli        main()
"""

from PiTree_Engine.verify.config import RunConfig, parse_config
from PiTree_Engine.verify.records import CheckRecord, Status, VerificationReport
from PiTree_Engine.verify.registry import SuiteRegistry
from PiTree_Engine.verify.runner import replay_witness, run_pipeline, run_suites
from PiTree_Engine.verify.suites import SuiteParams

__all__ = [
    "CheckRecord", "RunConfig", "Status", "SuiteParams", "SuiteRegistry", "VerificationReport",
    "parse_config", "replay_witness", "run_pipeline", "run_suites",
]
