"""Knowledge-base model: literals, presumptions, defeasible rules, grounding.

The only inference rule is defeasible modus ponens: once every premise of a
ground rule is derivable, its conclusion is derivable too.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from laf.algebra import Label, LabelAlgebra, LabelVector
from laf.errors import ConfigurationError, ValidationError


def is_variable(term: str) -> bool:
    return term[:1].isupper()


@dataclass(frozen=True, order=True)
class Literal:
    """A (possibly negated) atom ``pred(t1, ..., tn)``; uppercase terms are variables."""

    predicate: str
    args: tuple[str, ...]
    negated: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "args", tuple(self.args))
        if not self.args:
            raise ValueError(f"literal {self.predicate!r} needs at least one argument")

    @property
    def is_ground(self) -> bool:
        return not any(is_variable(a) for a in self.args)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(a for a in self.args if is_variable(a)))

    def complement(self) -> Literal:
        return Literal(self.predicate, self.args, not self.negated)

    def substitute(self, binding: Mapping[str, str]) -> Literal:
        return Literal(self.predicate, tuple(binding.get(a, a) for a in self.args), self.negated)

    def __str__(self) -> str:
        return ("~" if self.negated else "") + f"{self.predicate}({','.join(self.args)})"


@dataclass(frozen=True)
class Presumption:
    literal: Literal
    labels: LabelVector

    @property
    def name(self) -> str:
        return str(self.literal)


@dataclass(frozen=True)
class RuleSchema:
    """Defeasible rule ``name: conclusion <- premises``, possibly with variables."""

    name: str
    conclusion: Literal
    premises: tuple[Literal, ...]
    labels: LabelVector

    def __post_init__(self) -> None:
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def variables(self) -> tuple[str, ...]:
        seen = {}
        for lit in (*self.premises, self.conclusion):
            for v in lit.variables:
                seen.setdefault(v, None)
        return tuple(seen)

    def problems(self) -> list[str]:
        out = []
        if not self.premises:
            out.append(f"rule {self.name!r} has no premises")
        premise_vars = {v for p in self.premises for v in p.variables}
        for v in self.conclusion.variables:
            if v not in premise_vars:
                out.append(f"rule {self.name!r}: variable {v} of the conclusion is absent from the premises")
        return out

    def __str__(self) -> str:
        return f"{self.name}: {self.conclusion} <- {', '.join(map(str, self.premises))}"


def check_labels(algebras: Sequence[LabelAlgebra], labels: Sequence[Label]) -> LabelVector:
    if len(labels) != len(algebras):
        raise ConfigurationError(
            f"label arity {len(labels)} does not match {len(algebras)} declared algebras"
        )
    return tuple(alg.validate(v) for alg, v in zip(algebras, labels))


@dataclass(frozen=True)
class KnowledgeBase:
    """Algebras, presumptions and rule schemas with their label vectors.

    ``constants`` extends the grounding domain beyond the constants that
    occur in presumptions.
    """

    algebras: tuple[LabelAlgebra, ...] = ()
    facts: tuple[Presumption, ...] = ()
    rules: tuple[RuleSchema, ...] = ()
    constants: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for name in ("algebras", "facts", "rules", "constants"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        problems = self.problems()
        if problems:
            raise ValidationError("; ".join(problems))
        # normalize labels (ints -> floats, iterables -> frozensets)
        object.__setattr__(
            self,
            "facts",
            tuple(Presumption(f.literal, check_labels(self.algebras, f.labels)) for f in self.facts),
        )
        object.__setattr__(
            self,
            "rules",
            tuple(
                RuleSchema(r.name, r.conclusion, r.premises, check_labels(self.algebras, r.labels))
                for r in self.rules
            ),
        )

    def problems(self) -> list[str]:
        out: list[str] = []
        names = [a.name for a in self.algebras]
        if len(set(names)) != len(names):
            out.append("duplicate algebra name")
        seen: set[str] = set()
        for element in (*self.facts, *self.rules):
            if element.name in seen:
                out.append(f"duplicate element name {element.name!r}")
            seen.add(element.name)
            try:
                check_labels(self.algebras, element.labels)
            except (ValueError, ConfigurationError) as exc:
                out.append(f"{element.name}: {exc}")
        for f in self.facts:
            if not f.literal.is_ground:
                out.append(f"presumption {f.literal} is not ground")
        for r in self.rules:
            out.extend(r.problems())
        for c in self.constants:
            if is_variable(c):
                out.append(f"constant {c!r} must not start with an uppercase letter")
        return out

    @property
    def assignment(self) -> dict[str, LabelVector]:
        """The label assignment F, keyed by element name."""
        return {e.name: e.labels for e in (*self.facts, *self.rules)}


@dataclass(frozen=True)
class GroundRule:
    name: str
    conclusion: Literal
    premises: tuple[Literal, ...]
    labels: LabelVector
    binding: tuple[tuple[str, str], ...] = ()

    @property
    def key(self) -> str:
        return f"{self.name}: {self.conclusion} <- {', '.join(map(str, self.premises))}"


@dataclass(frozen=True)
class GroundKnowledgeBase:
    kb: KnowledgeBase
    rules: tuple[GroundRule, ...]
    domain: tuple[str, ...] = field(default=())

    @property
    def algebras(self) -> tuple[LabelAlgebra, ...]:
        return self.kb.algebras

    @property
    def facts(self) -> tuple[Presumption, ...]:
        return self.kb.facts

    @property
    def assignment(self) -> dict[str, LabelVector]:
        return self.kb.assignment


def grounding_domain(kb: KnowledgeBase) -> tuple[str, ...]:
    consts = {a for f in kb.facts for a in f.literal.args}
    consts.update(kb.constants)
    return tuple(sorted(consts))


def ground(kb: KnowledgeBase) -> GroundKnowledgeBase:
    """Instantiate every rule schema over the constants of the knowledge base."""
    problems = [p for r in kb.rules for p in r.problems()]
    if problems:
        raise ValidationError("; ".join(problems))
    domain = grounding_domain(kb)
    instances: dict[tuple, GroundRule] = {}
    for schema in kb.rules:
        variables = schema.variables
        for values in itertools.product(domain, repeat=len(variables)):
            binding = dict(zip(variables, values))
            rule = GroundRule(
                schema.name,
                schema.conclusion.substitute(binding),
                tuple(dict.fromkeys(p.substitute(binding) for p in schema.premises)),
                schema.labels,
                tuple(sorted(binding.items())),
            )
            instances.setdefault((rule.name, rule.conclusion, rule.premises), rule)
    return GroundKnowledgeBase(kb, tuple(instances.values()), domain)


def closure(facts: Iterable[Literal], rules: Iterable[GroundRule]) -> frozenset[Literal]:
    """Least superset of ``facts`` closed under defeasible modus ponens."""
    rules = list(rules)
    derived = set(facts)
    waiting = [set(r.premises) for r in rules]
    by_premise: dict[Literal, list[int]] = {}
    for i, r in enumerate(rules):
        for p in r.premises:
            by_premise.setdefault(p, []).append(i)
    agenda = list(derived)
    fired = [False] * len(rules)

    def fire(i: int) -> None:
        fired[i] = True
        c = rules[i].conclusion
        if c not in derived:
            derived.add(c)
            agenda.append(c)

    for i, w in enumerate(waiting):
        w.difference_update(derived)
        if not w:
            fire(i)
    while agenda:
        lit = agenda.pop()
        for i in by_premise.get(lit, ()):
            if fired[i]:
                continue
            waiting[i].discard(lit)
            if not waiting[i]:
                fire(i)
    return frozenset(derived)


def derive_closure(gkb: GroundKnowledgeBase) -> frozenset[Literal]:
    return closure((f.literal for f in gkb.facts), gkb.rules)
