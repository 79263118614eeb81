"""Exception hierarchy and the CLI exit codes attached to it."""

from __future__ import annotations


class SocioPhysError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ValidationError(SocioPhysError):
    """An instance (or instance file) violates the data contract.

    Carries the full violation report so callers can print every problem,
    not just the first one.
    """

    exit_code = 2

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


class ParseError(ValidationError):
    """An instance/solution file is structurally malformed (bad JSON, missing
    or mistyped field).  Subclass of ValidationError: same exit code."""

    def __init__(self, message: str):
        super().__init__([message])


class ContractError(SocioPhysError):
    """A caller violated an operation's precondition (e.g. budget overrun)."""

    exit_code = 3


class AssumptionError(ContractError):
    """A solver was handed an instance outside its structural assumptions.

    The message names the failed assumption (unit thresholds, one-to-one
    station coverage, forest shape, ...).
    """


class OracleRefusal(SocioPhysError):
    """Exhaustive search declined to run: the combination count exceeds the
    soft limit and ``force`` was not given."""

    exit_code = 4

    def __init__(self, count: int, limit: int):
        self.count = count
        self.limit = limit
        super().__init__(
            f"exhaustive search over {count} seed/station combinations exceeds "
            f"the soft limit of {limit}; pass force=True (CLI: --force) to run "
            f"anyway or raise the limit"
        )
