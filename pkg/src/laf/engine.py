"""End-to-end evaluation: ground, build the graph, solve, classify."""
from __future__ import annotations

from dataclasses import dataclass

from laf.acceptability import Classification, classify_all
from laf.graph import ArgGraph, build_graph
from laf.kb import GroundKnowledgeBase, KnowledgeBase, ground
from laf.propagation import (
    DEFAULT_MAX_ITERATIONS,
    EquationSystem,
    Labeling,
    SolverReport,
    build_equations,
    solve,
)


@dataclass(frozen=True)
class Evaluation:
    kb: KnowledgeBase
    ground: GroundKnowledgeBase
    graph: ArgGraph
    system: EquationSystem
    labeling: Labeling
    report: SolverReport
    statuses: Classification


def evaluate(
    kb: KnowledgeBase,
    rules_as_premises: bool = True,
    start: str = "bottom",
    tolerance: float = 1e-9,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> Evaluation:
    gkb = ground(kb)
    graph = build_graph(gkb, rules_as_premises=rules_as_premises)
    system = build_equations(graph)
    labeling, report = solve(system, start=start, tolerance=tolerance, max_iterations=max_iterations)
    return Evaluation(kb, gkb, graph, system, labeling, report, classify_all(labeling))
