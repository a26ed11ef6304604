"""Argumentation graphs with I-, RA- and CA-nodes.

* every presumption, every rule and every derived literal is an I-node;
* every firing ground rule is an RA-node from its premises to its conclusion;
* every complementary pair ``X`` / ``~X`` of I-nodes shares one CA-node with
  edges to and from both literals.

With ``rules_as_premises`` (the default) a rule's own I-node is an extra
premise of each of its RA-nodes, so the rule's label takes part in support.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from laf.algebra import LabelAlgebra, LabelVector
from laf.digraph import smallest_cycle
from laf.errors import CycleViolation
from laf.kb import GroundKnowledgeBase, GroundRule, Literal, derive_closure


@dataclass(frozen=True, order=True)
class NodeId:
    kind: str  # "I" | "RA" | "CA"
    key: str

    def __str__(self) -> str:
        return self.key if self.kind == "I" else f"{self.kind}({self.key})"


@dataclass(frozen=True)
class INode:
    key: str
    literal: Literal | None  # None for rule I-nodes
    in_kb: bool
    labels: LabelVector | None  # F(X) for elements of the knowledge base

    @property
    def is_rule(self) -> bool:
        return self.literal is None


@dataclass(frozen=True)
class RANode:
    key: str
    rule: GroundRule
    premises: tuple[str, ...]  # I-node keys, rule premises first, then the rule itself
    conclusion: str


@dataclass(frozen=True)
class CANode:
    key: str
    pair: tuple[str, str]


def application_key(rule: GroundRule) -> str:
    if not rule.binding:
        return rule.name
    return f"{rule.name}[{','.join(f'{v}={c}' for v, c in rule.binding)}]"


def conflict_key(a: str, b: str) -> str:
    a, b = sorted((a, b))
    return f"{a} | {b}"


@dataclass(frozen=True)
class ArgGraph:
    algebras: tuple[LabelAlgebra, ...]
    inodes: dict[str, INode]
    ranodes: dict[str, RANode]
    canodes: dict[str, CANode]
    rules_as_premises: bool = True
    _rival: dict[str, str] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self) -> None:
        for ca in self.canodes.values():
            a, b = ca.pair
            self._rival[a] = b
            self._rival[b] = a

    def rival(self, key: str) -> str | None:
        """The complementary I-node sharing a CA-node with ``key``, if any."""
        return self._rival.get(key)

    def supporters(self, key: str) -> list[RANode]:
        return sorted(
            (ra for ra in self.ranodes.values() if ra.conclusion == key), key=lambda ra: ra.key
        )

    def nodes(self) -> list[NodeId]:
        return sorted(
            [NodeId("I", k) for k in self.inodes]
            + [NodeId("RA", k) for k in self.ranodes]
            + [NodeId("CA", k) for k in self.canodes]
        )

    def edges(self) -> Iterator[tuple[NodeId, NodeId]]:
        for ra in sorted(self.ranodes.values(), key=lambda r: r.key):
            ra_id = NodeId("RA", ra.key)
            for p in ra.premises:
                yield NodeId("I", p), ra_id
            yield ra_id, NodeId("I", ra.conclusion)
        for ca in sorted(self.canodes.values(), key=lambda c: c.key):
            ca_id = NodeId("CA", ca.key)
            for x in ca.pair:
                yield NodeId("I", x), ca_id
                yield ca_id, NodeId("I", x)

    def adjacency(self, include_conflicts: bool = True) -> dict[NodeId, list[NodeId]]:
        adj: dict[NodeId, list[NodeId]] = {n: [] for n in self.nodes() if include_conflicts or n.kind != "CA"}
        for src, dst in self.edges():
            if src in adj and dst in adj:
                adj[src].append(dst)
        return adj

    def complementary_pairs(self) -> set[tuple[str, str]]:
        lits = {n.literal: k for k, n in self.inodes.items() if n.literal is not None}
        return {
            tuple(sorted((k, lits[lit.complement()])))
            for lit, k in lits.items()
            if lit.complement() in lits
        }


def validate_cycles(graph: ArgGraph) -> list[str] | None:
    """Return ``None`` if every cycle passes a CA-node, else a witness cycle."""
    cycle = smallest_cycle(graph.adjacency(include_conflicts=False))
    if cycle is None:
        return None
    return [str(n) for n in cycle]


def build_graph(gkb: GroundKnowledgeBase, rules_as_premises: bool = True) -> ArgGraph:
    """Construct the argumentation graph; raise :class:`CycleViolation` on a conflict-free cycle."""
    derived = derive_closure(gkb)
    inodes: dict[str, INode] = {}
    facts = {f.literal: f.labels for f in gkb.facts}
    for lit in sorted(derived | set(facts)):
        inodes[str(lit)] = INode(str(lit), lit, lit in facts, facts.get(lit))
    for schema in gkb.kb.rules:
        inodes[schema.name] = INode(schema.name, None, True, schema.labels)

    ranodes: dict[str, RANode] = {}
    for rule in gkb.rules:
        if not all(p in derived for p in rule.premises):
            continue
        premises = tuple(dict.fromkeys(str(p) for p in rule.premises))
        if rules_as_premises:
            premises += (rule.name,)
        key = application_key(rule)
        ranodes[key] = RANode(key, rule, premises, str(rule.conclusion))

    canodes: dict[str, CANode] = {}
    literal_keys = {n.literal: k for k, n in inodes.items() if n.literal is not None}
    for lit, k in literal_keys.items():
        other = literal_keys.get(lit.complement())
        if other is not None and not lit.negated:
            key = conflict_key(k, other)
            canodes[key] = CANode(key, tuple(sorted((k, other))))

    graph = ArgGraph(
        tuple(gkb.algebras),
        dict(sorted(inodes.items())),
        dict(sorted(ranodes.items())),
        dict(sorted(canodes.items())),
        rules_as_premises,
    )
    witness = validate_cycles(graph)
    if witness is not None:
        raise CycleViolation(witness)
    return graph
