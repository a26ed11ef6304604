"""Labeled argumentation frameworks.

Parse a labeled knowledge base, build its argumentation graph, propagate
labels from several algebras through support, aggregation and conflict,
and classify every claim as Assured, Unchallenged, Weakened or Rejected.
"""
from laf.acceptability import Classification, Status, StatusVector, classify, classify_all
from laf.algebra import (
    INTUITION,
    RELEVANCE,
    FuzzyAlgebra,
    LabelAlgebra,
    TagAlgebra,
    fuzzy_aggregate,
    fuzzy_conflict,
    fuzzy_support,
    vector_apply,
)
from laf.engine import Evaluation, evaluate
from laf.errors import (
    ConfigurationError,
    CycleViolation,
    KBSyntaxError,
    LabelingStateError,
    LafError,
    ParseError,
    SolverError,
    SourceSpan,
    UnknownClaimError,
    ValidationError,
)
from laf.export import export_dot, graph_to_json, labeling_to_json, report_json, report_text
from laf.graph import ArgGraph, NodeId, build_graph, validate_cycles
from laf.kb import KnowledgeBase, Literal, Presumption, RuleSchema, derive_closure, ground
from laf.parser import kb_to_json, load_kb, parse_kb, parse_kb_json, parse_literal, serialize_kb
from laf.propagation import Labeling, SolverReport, build_equations, residuals, solve, trace

__all__ = [
    "ArgGraph", "Classification", "ConfigurationError", "CycleViolation", "Evaluation",
    "FuzzyAlgebra", "INTUITION", "KBSyntaxError", "KnowledgeBase", "LabelAlgebra",
    "Labeling", "LabelingStateError", "LafError", "Literal", "NodeId", "ParseError",
    "Presumption", "RELEVANCE", "RuleSchema", "SolverError", "SolverReport", "SourceSpan",
    "Status", "StatusVector", "TagAlgebra", "UnknownClaimError", "ValidationError",
    "build_equations", "build_graph", "classify", "classify_all", "derive_closure",
    "evaluate", "export_dot", "fuzzy_aggregate", "fuzzy_conflict", "fuzzy_support",
    "graph_to_json", "ground", "kb_to_json", "labeling_to_json", "load_kb", "parse_kb",
    "parse_kb_json", "parse_literal", "report_json", "report_text", "residuals",
    "serialize_kb", "solve", "trace", "validate_cycles", "vector_apply",
]
