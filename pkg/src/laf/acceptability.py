"""Acceptability statuses of claims from their solved labels."""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum

from laf.errors import LabelingStateError, UnknownClaimError
from laf.propagation import Labeling


class Status(IntEnum):
    REJECTED = 0
    WEAKENED = 1
    UNCHALLENGED = 2
    ASSURED = 3

    def __str__(self) -> str:
        return self.name.capitalize()


def classify(labeling: Labeling, i: int, node: str) -> Status:
    """Status of ``node`` with respect to algebra ``i``.

    Conditions are tried in the order Assured, Unchallenged, Weakened,
    Rejected, so a node whose labels sit at the top is Assured and a node
    driven to the bottom is Rejected.
    """
    if not labeling.converged:
        raise LabelingStateError("labeling is not a solution of the label equations")
    if node not in labeling.mu_plus:
        raise UnknownClaimError(node, labeling.nodes)
    alg = labeling.algebras[i]
    plus, minus = labeling.mu_plus[node][i], labeling.mu_minus[node][i]
    if alg.is_assured(minus):
        return Status.ASSURED
    if alg.eq(plus, minus) and not alg.eq(minus, alg.bottom):
        return Status.UNCHALLENGED
    if alg.lt(alg.bottom, minus) and alg.lt(minus, plus):
        return Status.WEAKENED
    if alg.eq(minus, alg.bottom):
        return Status.REJECTED
    raise LabelingStateError(f"{node}: labels {plus!r} / {minus!r} fit no status of {alg.name!r}")


@dataclass(frozen=True)
class StatusVector:
    statuses: tuple[Status, ...]

    @property
    def combined(self) -> Status:
        # an empty algebra list leaves nothing to object to
        return min(self.statuses, default=Status.ASSURED)


@dataclass(frozen=True)
class Classification:
    vectors: dict[str, StatusVector]
    algebra_names: tuple[str, ...]

    def partition(self, i: int) -> dict[Status, frozenset[str]]:
        """``{status: nodes}`` for algebra ``i``; every status key is present."""
        return {
            s: frozenset(k for k, v in self.vectors.items() if v.statuses[i] == s)
            for s in sorted(Status, reverse=True)
        }

    def combined_partition(self) -> dict[Status, frozenset[str]]:
        return {
            s: frozenset(k for k, v in self.vectors.items() if v.combined == s)
            for s in sorted(Status, reverse=True)
        }


def classify_all(labeling: Labeling) -> Classification:
    n = len(labeling.algebras)
    return Classification(
        {k: StatusVector(tuple(classify(labeling, i, k) for i in range(n))) for k in labeling.nodes},
        tuple(a.name for a in labeling.algebras),
    )
