"""
Test Runner — run configs, law suites, check records and the CLI.

Usage:
    python -m PiTree_Engine.verify.test_verify
"""

import json
import os
import sys

import pytest

_PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
if _PROJECT_ROOT not in sys.path:
    sys.path.insert(0, _PROJECT_ROOT)

from PiTree_Engine.baire.compact import CompactCode
from PiTree_Engine.baire.standard import StdTreeView, std_tree
from PiTree_Engine.config import BAIRE_FAMILY_SAMPLES
from PiTree_Engine.errors import (
    BadParametersError,
    InvalidTreeError,
    MalformedJsonError,
    SchemaViolationError,
    UndecidableAtDepthError,
    UnknownSuiteError,
)
from PiTree_Engine.verify import cli
from PiTree_Engine.verify.catalog import SUITE_CATALOG
from PiTree_Engine.verify.config import RunConfig, parse_config
from PiTree_Engine.verify.records import CheckRecord, Status, VerificationReport
from PiTree_Engine.verify.registry import SuiteRegistry
from PiTree_Engine.verify.runner import check_instance, replay_witness, run_suite, run_suites
from PiTree_Engine.verify.suites import SUITES, Suite, SuiteParams

ZERO = CompactCode.point(())


def _write(path, payload) -> str:
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


# ---------------------------------------------------------------------------
# Config parsing
# ---------------------------------------------------------------------------

def test_empty_config_is_a_zero_stage_run():
    cfg = parse_config("{}")
    assert cfg == RunConfig(command="run", stages=0)
    assert cfg.codes == [] and cfg.suites == ()


def test_config_reads_compacts_points_and_trunc():
    cfg = parse_config(json.dumps({
        "compacts": [ZERO.to_json()],
        "points": [[1, 0]],
        "stages": 1,
        "trunc": {"depth": 3, "width": 5, "threshold": 2},
        "suites": ["tree-laws", "density"],
        "seed": 7,
    }), command="verify-laws")
    assert cfg.compacts == (ZERO, CompactCode.point((1, 0)))
    assert cfg.codes == [ZERO]
    assert (cfg.depth, cfg.width, cfg.threshold, cfg.seed) == (3, 5, 2, 7)
    assert cfg.suites == ("tree-laws", "density")
    assert cfg.suite_params().compacts == (ZERO,)


def test_stages_default_to_every_compact():
    assert parse_config(json.dumps({"points": [[0], [1]]})).stages == 2


@pytest.mark.parametrize("payload, error", [
    ({"trunc": {"depth": 0}}, BadParametersError),
    ({"trunc": {"width": 2, "threshold": 3}}, BadParametersError),
    ({"stages": 1}, BadParametersError),
    ({"seed": -1}, BadParametersError),
    ({"compacts": [{"op": "compact", "depth": 1, "table": {"": []}}]}, SchemaViolationError),
    ({"compacts": {}}, SchemaViolationError),
    ({"points": [[0, -1]]}, SchemaViolationError),
    ({"trunc": {"depth": True}}, SchemaViolationError),
    ({"colour": "red"}, SchemaViolationError),
    ({"fixture": {"corrupt_family": "yes"}}, SchemaViolationError),
])
def test_config_errors(payload, error):
    with pytest.raises(error):
        parse_config(json.dumps(payload))


def test_config_error_carries_location():
    with pytest.raises(SchemaViolationError) as info:
        parse_config(json.dumps({"compacts": [ZERO.to_json(), {"op": "compact", "depth": 1, "table": {"": []}}]}))
    assert info.value.location == "compacts[1]"
    with pytest.raises(MalformedJsonError) as info:
        parse_config('{"stages": 1,\n  "seed" 2}', source="run.json")
    assert info.value.location.startswith("run.json:2:")


def test_unknown_suite_is_rejected():
    with pytest.raises(UnknownSuiteError, match="Known suites"):
        parse_config(json.dumps({"suites": ["no-such-suite"]}))
    with pytest.raises(LookupError):
        SuiteRegistry().get("no-such-suite")


# ---------------------------------------------------------------------------
# Catalog and registry
# ---------------------------------------------------------------------------

def test_catalog_matches_suite_table():
    registry = SuiteRegistry()
    assert registry.ids() == [entry["id"] for entry in SUITE_CATALOG]
    assert set(registry.ids()) == set(SUITES)
    assert registry.resolve([]) == registry.ids()
    assert registry.resolve(["density", "density", "tree-laws"]) == ["density", "tree-laws"]


def test_suite_params_round_trip():
    params = SuiteParams(depth=3, width=5, seed=4, compacts=(ZERO,))
    assert SuiteParams.from_dict(params.to_dict()) == params


# ---------------------------------------------------------------------------
# Tallies and records
# ---------------------------------------------------------------------------

def _fake_suite(outcomes):
    def instances(params):
        return iter([{"kind": "fake", "n": n} for n in range(len(outcomes))])

    def check(instance, params):
        return {"law": outcomes[instance["n"]]}

    return Suite("fake", instances, check)


def test_tally_keeps_the_first_failing_instance():
    [record] = run_suite(_fake_suite([[], None, ["broken at 2"], ["broken at 3"]]), SuiteParams())
    assert record.status is Status.FAIL and record.instances == 4
    assert record.witness["instance"] == {"kind": "fake", "n": 2}
    assert record.witness["violations"] == ["broken at 2"]
    assert record.witness["suite"] == "fake" and record.witness["check"] == "law"


def test_tally_undecidable_without_failures():
    [record] = run_suite(_fake_suite([[], None, []]), SuiteParams())
    assert record.status is Status.UNDECIDABLE and record.witness is None


def test_check_instance_maps_errors():
    def undecided(instance, params):
        raise UndecidableAtDepthError("needs more coordinates", 3)

    def broken(instance, params):
        raise InvalidTreeError("cycle through 0")

    assert check_instance(Suite("u", iter, undecided), {}, SuiteParams()) == {"u": None}
    [message] = check_instance(Suite("b", iter, broken), {}, SuiteParams())["b"]
    assert message.startswith("InvalidTreeError")


def test_report_exit_codes_and_order():
    passed = CheckRecord("b", "s", Status.PASS)
    undecided = CheckRecord("a", "s", Status.UNDECIDABLE)
    failed = CheckRecord("c", "r", Status.FAIL, witness={"kind": "x"})
    assert VerificationReport("run", records=[passed]).exit_code == 0
    assert VerificationReport("run", records=[passed, undecided]).exit_code == 2
    report = VerificationReport("run", records=[passed, undecided, failed])
    assert report.exit_code == 1
    assert [r.id for r in report.sorted_records()] == ["c", "a", "b"]
    payload = report.to_dict()
    assert payload["scheme"] == "cantor-pairing" and payload["exit_code"] == 1
    assert payload["records"][0]["witness"] == {"kind": "x"}


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def test_tree_laws_suite_passes_on_every_small_forest():
    report = run_suites(["tree-laws"], SuiteParams(max_nodes=4, samples=5))
    [record] = report.records
    assert record.id == "tree-laws" and record.status is Status.PASS
    # labeled forests on n nodes: (n+1)^(n-1)
    assert record.instances == 1 + 3 + 16 + 125 + 5
    assert report.exit_code == 0


@pytest.mark.parametrize("suite_id, params", [
    ("tree-shape", SuiteParams(max_nodes=4)),
    ("fruit-laws", SuiteParams(max_nodes=2, samples=5)),
    ("refinement", SuiteParams(samples=5)),
    ("hybrid-tree", SuiteParams(max_nodes=3)),
    ("classify-soundness", SuiteParams(samples=10)),
    ("shadow-algebra", SuiteParams(depth=3, width=3, samples=5)),
    ("density", SuiteParams(depth=2)),
])
def test_selected_suites_pass(suite_id, params):
    report = run_suites([suite_id], params)
    assert report.records
    assert not report.failed, [r.to_dict() for r in report.failed]


def test_graft_suites_reach_two_grafts_on_five_node_hosts():
    instances = SUITES["hybrid-tree"].instances(SuiteParams(max_nodes=5))
    assert any(len(i["family"]["host"]["parent"]) == 5 and len(i["family"]["grafts"]) == 2 for i in instances)


@pytest.mark.slow
def test_hybrid_suites_pass_on_every_five_node_family():
    report = run_suites(["hybrid-tree", "hybrid-sons"], SuiteParams(max_nodes=5))
    assert report.records
    assert not report.failed, [r.to_dict() for r in report.failed]


def test_foliage_suites_draw_a_fixed_number_of_baire_families():
    instances = list(SUITES["foliage-hybrid"].instances(SuiteParams(max_nodes=1, samples=5)))
    baire = [i for i in instances if i["kind"] == "baire-family"]
    assert len(baire) == BAIRE_FAMILY_SAMPLES
    assert {(i["depth"], i["width"]) for i in baire} == {(3, 3)}


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------

def test_run_without_compacts_exports_the_standard_tree(tmp_path):
    config = _write(tmp_path / "run.json", {"trunc": {"depth": 3, "width": 3}, "samples": 5})
    out = tmp_path / "out"
    assert cli.main(["run", "--config", config, "--out", str(out)]) == 0
    assert sorted(os.listdir(out)) == ["report.csv", "report.json", "report.md", "tree.dot", "tree.json"]
    tree = json.loads((out / "tree.json").read_text(encoding="utf-8"))
    assert len(tree["nodes"]) == len(std_tree(StdTreeView(3, 3)).nodes)
    assert "shape=box" not in (out / "tree.dot").read_text(encoding="utf-8")


def test_run_reports_stage_checks_for_one_removed_point(tmp_path):
    config = _write(tmp_path / "run.json", {"compacts": [ZERO.to_json()], "samples": 5})
    out = tmp_path / "out"
    code = cli.main(["run", "--config", config, "--out", str(out)])
    report = json.loads((out / "report.json").read_text(encoding="utf-8"))
    stage_checks = {r["id"]: r["status"] for r in report["records"] if r["suite"] == "pipeline"}
    assert set(stage_checks) >= {"roots-match", "frontier-antichain", "frontier-avoids-roots",
                                 "family-consistent", "frontier-covers", "loss-complement", "loss-union"}
    assert set(stage_checks.values()) == {"pass"}
    assert code == report["exit_code"]


def test_corrupted_family_fails_with_a_replayable_witness(tmp_path):
    config = _write(tmp_path / "run.json", {
        "compacts": [ZERO.to_json()], "samples": 5, "fixture": {"corrupt_family": True}})
    out = tmp_path / "out"
    assert cli.main(["run", "--config", config, "--out", str(out)]) == 1

    witness_path = out / "witness_pi_tree_avoids_loss.json"
    assert witness_path.exists()
    witness = json.loads(witness_path.read_text(encoding="utf-8"))
    assert witness["instance"]["corrupt"] is True
    assert replay_witness(witness).exit_code == 1
    assert cli.main(["replay", "--witness", str(witness_path), "--out", str(tmp_path / "replay")]) == 1


def test_verify_laws_reruns_are_byte_identical(tmp_path):
    config = _write(tmp_path / "laws.json", {"max_nodes": 3, "samples": 5})
    contents = []
    for sub in ("a", "b"):
        out = tmp_path / sub
        assert cli.main(["verify-laws", "--config", config, "--suite", "tree-laws,refinement",
                     "--seed", "3", "--out", str(out)]) == 0
        contents.append([(out / f).read_bytes() for f in sorted(os.listdir(out))])
    assert contents[0] == contents[1]


def test_export_formats(tmp_path):
    config = _write(tmp_path / "run.json", {"points": [[1]], "trunc": {"depth": 3, "width": 4}})
    assert cli.main(["export", "--config", config, "--format", "dot", "--out", str(tmp_path)]) == 0
    dot = (tmp_path / "tree.dot").read_text(encoding="utf-8")
    assert dot.startswith("digraph G {") and "shape=box" in dot
    assert cli.main(["export", "--config", config, "--format", "json", "--out", str(tmp_path)]) == 0
    assert json.loads((tmp_path / "tree.json").read_text(encoding="utf-8"))["nodes"]


def test_cli_exit_codes_for_bad_inputs(tmp_path):
    config = _write(tmp_path / "laws.json", {})
    assert cli.main(["verify-laws", "--config", config, "--suite", "no-such-suite", "--out", str(tmp_path)]) == 1
    bad = _write(tmp_path / "bad.json", {"trunc": {"depth": 0}})
    assert cli.main(["run", "--config", bad, "--out", str(tmp_path)]) == 1
    assert cli.main(["run", "--config", str(tmp_path / "missing.json"), "--out", str(tmp_path)]) == 3


def main():
    print("=" * 60)
    print("  Verify — Test Run")
    print("=" * 60)
    raise SystemExit(pytest.main([__file__, "-q"]))


if __name__ == "__main__":
    main()
