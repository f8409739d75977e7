"""
Exception hierarchy for PiTree_Engine.

Every error kind also inherits the closest builtin so callers can catch
ValueError / LookupError the usual way.

Checks that return violations (graft anatomy, family consistency, foliage
graft clauses) report them in-band as lists of strings; builders, pipeline
steps and the config parser raise the errors below.
"""

from __future__ import annotations


class PiTreeError(Exception):
    """Base class of every engine error."""


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------

class NodeNotFoundError(PiTreeError, LookupError):
    def __init__(self, node, where: str = "tree"):
        self.node = node
        super().__init__(f"Node {node!r} is not in the {where}.")


class InvalidTreeError(PiTreeError, ValueError):
    pass


class NotAntichainError(PiTreeError, ValueError):
    pass


class NotBelowAntichainError(PiTreeError, ValueError):
    pass


class EmptyNodeSetError(PiTreeError, ValueError):
    pass


class BoundExceededError(PiTreeError, ValueError):
    pass


class NotABranchError(PiTreeError, ValueError):
    pass


# ---------------------------------------------------------------------------
# Truncation
# ---------------------------------------------------------------------------

class UndecidableAtDepthError(PiTreeError):
    """A truncated check could not settle the question at the given depth."""

    def __init__(self, message: str, depth: int | None = None):
        self.depth = depth
        super().__init__(message)


# ---------------------------------------------------------------------------
# Grafting
# ---------------------------------------------------------------------------

class InvalidHybridNodeError(PiTreeError, ValueError):
    pass


class InconsistentFamilyError(PiTreeError, ValueError):
    def __init__(self, message: str, pair: tuple | None = None, clause: str | None = None):
        self.pair = pair
        self.clause = clause
        super().__init__(message)


class InconsistentFoliageFamilyError(PiTreeError, ValueError):
    def __init__(self, message: str, violations: list[str] | None = None):
        self.violations = list(violations or [])
        super().__init__(message)


class HostNotNonincreasingError(PiTreeError, ValueError):
    pass


# ---------------------------------------------------------------------------
# Baire sets
# ---------------------------------------------------------------------------

class SeqError(PiTreeError, ValueError):
    pass


class OracleStratumError(PiTreeError, ValueError):
    pass


class InvalidCompactCodeError(PiTreeError, ValueError):
    pass


# ---------------------------------------------------------------------------
# Pipeline
# ---------------------------------------------------------------------------

class NotProperSubsetError(PiTreeError, ValueError):
    pass


class NotInOmegaError(PiTreeError, ValueError):
    pass


class SampleOutsideError(PiTreeError, ValueError):
    pass


class PreconditionError(PiTreeError, ValueError):
    pass


class DensityViolationError(PiTreeError, ValueError):
    pass


class InvariantFailureError(PiTreeError):
    def __init__(self, failed: list[str], detail: dict | None = None):
        self.failed = list(failed)
        self.detail = dict(detail or {})
        super().__init__(f"Invariant checks failed: {', '.join(self.failed)}")


class NoWitnessError(PiTreeError):
    def __init__(self, message: str, sample=None):
        self.sample = sample
        super().__init__(message)


# ---------------------------------------------------------------------------
# Configuration / CLI
# ---------------------------------------------------------------------------

class ConfigError(PiTreeError, ValueError):
    def __init__(self, message: str, location: str | None = None):
        self.location = location
        text = f"{location}: {message}" if location else message
        super().__init__(text)


class MalformedJsonError(ConfigError):
    pass


class SchemaViolationError(ConfigError):
    pass


class BadParametersError(ConfigError):
    pass


class UnknownSuiteError(PiTreeError, LookupError):
    pass
