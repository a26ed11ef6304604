"""Algebras of argumentation labels.

An algebra bundles a label domain, a partial order with distinguished
``top``/``bottom`` elements and three binary operations:

* ``support``   combines the premises of a single rule application,
* ``aggregate`` accrues independent reasons for the same claim,
* ``conflict``  weakens a claim by the strength of its complement.

Two concrete algebras are provided: :class:`FuzzyAlgebra` (relevance in
``[0, 1]``) and :class:`TagAlgebra` (sets of tags drawn from a totally
ordered universe).  Labels are plain Python values (``float`` and
``frozenset[str]``) so they hash, compare and serialize without wrappers.
"""
from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Sequence

from laf.errors import ConfigurationError

Label = Any
LabelVector = tuple

OPERATIONS = ("support", "aggregate", "conflict")

DEFAULT_TOLERANCE = 1e-9


class LabelAlgebra(ABC):
    """Abstract algebra of argumentation labels."""

    name: str
    kind: str

    @property
    @abstractmethod
    def top(self) -> Label: ...

    @property
    @abstractmethod
    def bottom(self) -> Label: ...

    @abstractmethod
    def leq(self, a: Label, b: Label) -> bool: ...

    @abstractmethod
    def support(self, a: Label, b: Label) -> Label: ...

    @abstractmethod
    def aggregate(self, a: Label, b: Label) -> Label: ...

    @abstractmethod
    def conflict(self, a: Label, b: Label) -> Label: ...

    @abstractmethod
    def validate(self, value: Label) -> Label:
        """Return ``value`` normalized to the domain, or raise ``ValueError``."""

    @abstractmethod
    def is_assured(self, value: Label) -> bool:
        """Whether ``value`` reaches (or contains) the algebra's top."""

    @abstractmethod
    def distance(self, a: Label, b: Label) -> float:
        """Residual used by the solver; ``0`` means equal."""

    @abstractmethod
    def format_label(self, value: Label) -> str:
        """Render ``value`` in knowledge-base syntax."""

    @abstractmethod
    def to_json(self, value: Label) -> Any: ...

    def eq(self, a: Label, b: Label) -> bool:
        return self.leq(a, b) and self.leq(b, a)

    def lt(self, a: Label, b: Label) -> bool:
        return self.leq(a, b) and not self.leq(b, a)

    def apply(self, operation: str, a: Label, b: Label) -> Label:
        if operation not in OPERATIONS:
            raise ConfigurationError(f"unknown operation {operation!r}")
        return getattr(self, operation)(a, b)

    def relax(self, old: Label, new: Label, weight: float) -> Label:
        """Blend an iterate towards ``new``; discrete domains take ``new``."""
        return new

    def start_value(self, start: str) -> Label:
        if start == "bottom":
            return self.bottom
        if start == "top":
            return self.greatest
        raise ConfigurationError(f"unknown solver start {start!r}")

    @property
    def greatest(self) -> Label:
        """Greatest element of the order (used as a solver start value)."""
        return self.top


# -- fuzzy relevance -------------------------------------------------------


def _clamp(x: float) -> float:
    return min(1.0, max(0.0, x))


def fuzzy_support(a: float, b: float) -> float:
    """Product t-norm: the relevance of a conjunction of premises."""
    return a * b


def fuzzy_aggregate(a: float, b: float) -> float:
    """Probabilistic sum: accrual of independent reasons."""
    return _clamp(a + b - a * b)


def fuzzy_conflict(a: float, b: float) -> float:
    """Truncated difference: ``a`` weakened by its contrary ``b``."""
    return max(a - b, 0.0)


@dataclass(frozen=True)
class FuzzyAlgebra(LabelAlgebra):
    """Relevance degrees in ``[0, 1]`` with product / probabilistic sum."""

    name: str = "relevance"
    tolerance: float = field(default=DEFAULT_TOLERANCE, compare=False)
    kind: str = field(default="fuzzy", init=False)

    @property
    def top(self) -> float:
        return 1.0

    @property
    def bottom(self) -> float:
        return 0.0

    def leq(self, a: float, b: float) -> bool:
        return a <= b + self.tolerance

    def support(self, a: float, b: float) -> float:
        return fuzzy_support(a, b)

    def aggregate(self, a: float, b: float) -> float:
        return fuzzy_aggregate(a, b)

    def conflict(self, a: float, b: float) -> float:
        return fuzzy_conflict(a, b)

    def validate(self, value: Label) -> float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValueError(f"fuzzy label must be a number, got {value!r}")
        value = float(value)
        if math.isnan(value) or not 0.0 <= value <= 1.0:
            raise ValueError(f"fuzzy value outside [0,1]: {value!r}")
        return value

    def is_assured(self, value: float) -> bool:
        return abs(value - 1.0) <= self.tolerance

    def distance(self, a: float, b: float) -> float:
        return abs(a - b)

    def relax(self, old: float, new: float, weight: float) -> float:
        return (1.0 - weight) * old + weight * new

    def format_label(self, value: float) -> str:
        return repr(float(value))

    def to_json(self, value: float) -> str:
        return repr(float(value))


# -- tag sets --------------------------------------------------------------


@dataclass(frozen=True)
class TagAlgebra(LabelAlgebra):
    """Sets of tags from a totally ordered universe.

    ``order`` lists the tags from the most to the least influential, e.g.
    ``("PL", "NG", "FCH", "PCH")``.  Labels are ordered by inclusion, so the
    empty set is ``bottom`` and the full universe is ``top``.  ``assured_tag``
    is the tag whose presence makes a claim Assured; it defaults to the
    order-maximal tag.
    """

    name: str
    order: tuple[str, ...]
    assured_tag: str | None = None
    kind: str = field(default="tags", init=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "order", tuple(self.order))
        if not self.order:
            raise ConfigurationError(f"tag algebra {self.name!r} has an empty universe")
        if len(set(self.order)) != len(self.order):
            raise ConfigurationError(f"tag algebra {self.name!r} repeats a tag")
        if self.assured_tag is None:
            object.__setattr__(self, "assured_tag", self.order[0])
        elif self.assured_tag not in self.order:
            raise ConfigurationError(f"assured tag {self.assured_tag!r} not in universe")

        # lower rank = less influential
        object.__setattr__(
            self, "_rank", {tag: len(self.order) - i for i, tag in enumerate(self.order)}
        )

    @property
    def rank(self) -> dict[str, int]:
        return self._rank

    @property
    def top(self) -> frozenset[str]:
        return frozenset(self.order)

    @property
    def bottom(self) -> frozenset[str]:
        return frozenset()

    def leq(self, a: frozenset[str], b: frozenset[str]) -> bool:
        return a <= b

    def support(self, a: frozenset[str], b: frozenset[str]) -> frozenset[str]:
        union = a | b
        if not union:
            return frozenset()
        return frozenset({min(union, key=self._rank.__getitem__)})

    def aggregate(self, a: frozenset[str], b: frozenset[str]) -> frozenset[str]:
        return a | b

    def conflict(self, a: frozenset[str], b: frozenset[str]) -> frozenset[str]:
        return a - b

    def validate(self, value: Label) -> frozenset[str]:
        if isinstance(value, str):
            raise ValueError(f"tag label must be a set of tags, got {value!r}")
        try:
            tags = frozenset(value)
        except TypeError:
            raise ValueError(f"tag label must be a set of tags, got {value!r}") from None
        unknown = sorted(t for t in tags if t not in self.order)
        if unknown:
            raise ValueError(
                f"tag {unknown[0]!r} not in universe of {self.name!r} ({', '.join(self.order)})"
            )
        return tags

    def is_assured(self, value: frozenset[str]) -> bool:
        return self.assured_tag in value

    def distance(self, a: frozenset[str], b: frozenset[str]) -> float:
        return float(len(a ^ b))

    def sorted_tags(self, value: frozenset[str]) -> list[str]:
        """Tags of ``value`` from most to least influential."""
        return [t for t in self.order if t in value]

    def format_label(self, value: frozenset[str]) -> str:
        return "{" + ", ".join(self.sorted_tags(value)) + "}"

    def to_json(self, value: frozenset[str]) -> list[str]:
        return self.sorted_tags(value)


INTUITION = TagAlgebra("intuition", ("PL", "NG", "FCH", "PCH"))
RELEVANCE = FuzzyAlgebra("relevance")


# -- vectors ---------------------------------------------------------------


def check_vector(algebras: Sequence[LabelAlgebra], vector: Sequence[Label]) -> LabelVector:
    if len(vector) != len(algebras):
        raise ConfigurationError(
            f"label arity {len(vector)} does not match {len(algebras)} configured algebras"
        )
    return tuple(vector)


def vector_apply(
    operation: str,
    a: Sequence[Label],
    b: Sequence[Label],
    algebras: Sequence[LabelAlgebra],
) -> LabelVector:
    """Apply ``operation`` componentwise with the i-th algebra on component i."""
    a = check_vector(algebras, a)
    b = check_vector(algebras, b)
    return tuple(alg.apply(operation, x, y) for alg, x, y in zip(algebras, a, b))


def format_vector(algebras: Sequence[LabelAlgebra], vector: Sequence[Label]) -> str:
    return "[" + ", ".join(alg.format_label(v) for alg, v in zip(algebras, vector)) + "]"
