"""
SuiteRegistry — resolves suite ids to runnable suites.

Usage:

    from PiTree_Engine.verify.registry import SuiteRegistry

    registry = SuiteRegistry()
    suite = registry.get("hybrid-tree")
    registry.ids()          # catalog order
"""

from PiTree_Engine.errors import UnknownSuiteError
from PiTree_Engine.verify.catalog import SUITE_CATALOG
from PiTree_Engine.verify.suites import SUITES, Suite


def _build_registry() -> dict[str, Suite]:
    return {entry["id"]: SUITES[entry["id"]] for entry in SUITE_CATALOG}


class SuiteRegistry:
    """Stateless lookup of the catalogued suites."""

    def __init__(self) -> None:
        self._registry: dict[str, Suite] = _build_registry()
        self._labels = {entry["id"]: entry["label"] for entry in SUITE_CATALOG}

    def ids(self) -> list[str]:
        return list(self._registry)

    def get(self, suite_id: str) -> Suite:
        if suite_id not in self._registry:
            known = ", ".join(self._registry)
            raise UnknownSuiteError(f"Unknown suite '{suite_id}'. Known suites: {known}")
        return self._registry[suite_id]

    def label(self, suite_id: str) -> str:
        self.get(suite_id)
        return self._labels[suite_id]

    def resolve(self, suite_ids) -> list[str]:
        """Validate a selection; an empty selection means every suite."""
        if not suite_ids:
            return self.ids()
        for suite_id in suite_ids:
            self.get(suite_id)
        return list(dict.fromkeys(suite_ids))
