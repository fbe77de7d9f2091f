"""A* route planning with potentials read lazily from a contraction hierarchy."""

from ._core import (
    DAY_MS,
    ContractViolation,
    Hierarchy,
    Instance,
    MalformedInput,
    ParseError,
    QueryResult,
    Router,
    VerificationFailure,
    generate,
    run_experiment,
)

__all__ = [
    "DAY_MS",
    "ContractViolation",
    "Hierarchy",
    "Instance",
    "MalformedInput",
    "ParseError",
    "QueryResult",
    "Router",
    "VerificationFailure",
    "generate",
    "run_experiment",
]
