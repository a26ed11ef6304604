"""Exception hierarchy shared by the parser, graph builder and solver."""
from __future__ import annotations

from dataclasses import dataclass


class LafError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(LafError, ValueError):
    """Inconsistent algebra configuration (arity mismatch, bad option)."""


class ValidationError(LafError, ValueError):
    """A knowledge base that is syntactically fine but not well formed."""


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    column: int

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1:
            raise ValueError("line and column are 1-based")

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.column}"


@dataclass(frozen=True)
class ParseError:
    """One diagnostic produced while reading a knowledge base."""

    span: SourceSpan
    kind: str  # "lexical" | "syntactic" | "semantic"
    message: str

    def __post_init__(self) -> None:
        if not self.message:
            raise ValueError("diagnostic message must not be empty")

    def __str__(self) -> str:
        return f"{self.span}: {self.kind} error: {self.message}"


class KBSyntaxError(LafError):
    """Raised by the parser; ``errors`` holds every diagnostic found."""

    def __init__(self, errors: list[ParseError]):
        self.errors = list(errors)
        super().__init__("\n".join(str(e) for e in self.errors))


class CycleViolation(LafError):
    """A cycle in the argumentation graph that avoids every CA-node."""

    def __init__(self, cycle: list[str]):
        self.cycle = list(cycle)
        super().__init__("cycle without conflict node: " + " -> ".join(self.cycle))


class SolverError(LafError):
    """The label equations did not reach a fixed point."""

    def __init__(self, message: str, residual: float, iterations: int, no_fixed_point: bool = False):
        self.residual = residual
        self.iterations = iterations
        self.no_fixed_point = no_fixed_point
        super().__init__(f"{message} (residual {residual:.3g} after {iterations} sweeps)")


class LabelingStateError(LafError):
    """Acceptability was requested on a labeling that is not a solution."""


class UnknownClaimError(LafError, KeyError):
    def __init__(self, claim: str, known: list[str]):
        self.claim = claim
        self.known = known
        super().__init__(claim)

    def __str__(self) -> str:
        return f"unknown claim {self.claim!r}"
