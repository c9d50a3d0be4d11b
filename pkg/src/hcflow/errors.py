"""Exception taxonomy shared across the package.

The command line maps these onto process exit codes: configuration and
hypothesis failures exit 4, numerical blow-up exits 3, and invariant
violations detected during a run exit 2 (the run itself finishes and is
marked rather than raising).
"""


class DomainError(ValueError):
    """Input lies outside the mathematical domain (e.g. the positive cone)."""


class ContractError(ValueError):
    """Caller violated an API precondition (bad shape, index, or range)."""


class ConfigError(ValueError):
    """Malformed or inconsistent configuration."""


class HypothesisError(ConfigError):
    """Initial data fails a theorem hypothesis (e.g. sectional positivity)."""


class BlowUpError(RuntimeError):
    """Time stepping collapsed: the step size underflowed or the state
    degenerated beyond recovery."""
