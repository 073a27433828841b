"""Teleportation-aware scheduling for distributed quantum computers.

Thin wrapper over the C++ core. Circuits and architectures are passed as
text in the same formats the command-line tool reads.
"""

from ._athena import (
    OracleLimitError,
    ParseError,
    ValidationFailure,
    compile,
    epr_generation_latency_us,
    epr_success_prob,
    generate,
    oracle,
    validate,
)

__all__ = [
    "OracleLimitError",
    "ParseError",
    "ValidationFailure",
    "compile",
    "epr_generation_latency_us",
    "epr_success_prob",
    "generate",
    "oracle",
    "validate",
]
