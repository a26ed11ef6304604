"""DOT, JSON and text renderings of graphs, labelings and status reports."""
from __future__ import annotations

from typing import Any

from laf.acceptability import Classification, Status, classify_all
from laf.graph import ArgGraph, NodeId
from laf.propagation import Labeling, display

_SHAPES = {"I": "box", "RA": "ellipse", "CA": "diamond"}

_COLORS = {
    Status.ASSURED: "\x1b[32m",
    Status.UNCHALLENGED: "\x1b[36m",
    Status.WEAKENED: "\x1b[33m",
    Status.REJECTED: "\x1b[31m",
}


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n") + '"'


def _dot_id(n: NodeId) -> str:
    return _quote(f"{n.kind}:{n.key}")


def export_dot(graph: ArgGraph, labeling: Labeling | None = None) -> str:
    """Graphviz source: I-nodes as boxes, RA-nodes as ellipses, CA-nodes as diamonds."""
    nodes = graph.nodes()
    if not nodes:
        return "digraph laf {}\n"
    statuses = classify_all(labeling) if labeling is not None else None
    lines = ["digraph laf {", "  rankdir=BT;"]
    for n in nodes:
        text = n.key if n.kind == "I" else str(n)
        if n.kind == "I" and labeling is not None:
            rows = [n.key]
            for i, alg in enumerate(labeling.algebras):
                plus = display(alg, labeling.mu_plus[n.key][i])
                minus = display(alg, labeling.mu_minus[n.key][i])
                rows.append(f"{alg.name}: μ⁺={plus} μ⁻={minus}")
            rows.append(f"status: {statuses.vectors[n.key].combined}")
            text = "\n".join(rows)
        lines.append(f"  {_dot_id(n)} [shape={_SHAPES[n.kind]}, label={_quote(text)}];")
    for src, dst in graph.edges():
        lines.append(f"  {_dot_id(src)} -> {_dot_id(dst)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(graph: ArgGraph) -> dict[str, Any]:
    return {
        "nodes": [{"id": f"{n.kind}:{n.key}", "kind": n.kind} for n in graph.nodes()],
        "edges": [{"from": f"{s.kind}:{s.key}", "to": f"{d.kind}:{d.key}"} for s, d in graph.edges()],
    }


def labeling_to_json(labeling: Labeling) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for k in labeling.nodes:
        out[k] = {
            alg.name: {
                "mu_plus": _json_value(alg, labeling.mu_plus[k][i]),
                "mu_minus": _json_value(alg, labeling.mu_minus[k][i]),
            }
            for i, alg in enumerate(labeling.algebras)
        }
    return out


def _json_value(alg, value):
    return display(alg, value) if alg.kind == "fuzzy" else alg.to_json(value)


def statuses_to_json(statuses: Classification) -> list[dict[str, Any]]:
    return [
        {
            "claim": k,
            "status": {name: str(s) for name, s in zip(statuses.algebra_names, v.statuses)},
            "combined": str(v.combined),
        }
        for k, v in sorted(statuses.vectors.items())
    ]


def report_json(labeling: Labeling, statuses: Classification) -> dict[str, Any]:
    return {
        "labels": labeling_to_json(labeling),
        "statuses": statuses_to_json(statuses),
        "partitions": {
            name: {str(s): sorted(nodes) for s, nodes in statuses.partition(i).items()}
            for i, name in enumerate(statuses.algebra_names)
        },
    }


def report_text(labeling: Labeling, statuses: Classification, color: bool = False) -> str:
    """Per-claim labels and statuses, then the status sets of each algebra."""

    def paint(status: Status) -> str:
        return f"{_COLORS[status]}{status}\x1b[0m" if color else str(status)

    algebras = labeling.algebras
    lines = []
    for k in labeling.nodes:
        vec = statuses.vectors[k]
        lines.append(f"{k}: {paint(vec.combined)}")
        for i, alg in enumerate(algebras):
            plus = display(alg, labeling.mu_plus[k][i])
            minus = display(alg, labeling.mu_minus[k][i])
            lines.append(f"  {alg.name}: μ⁺={plus} μ⁻={minus} {paint(vec.statuses[i])}")
    for i, alg in enumerate(algebras):
        lines.append("")
        lines.append(f"status sets ({alg.name}):")
        for s, nodes in statuses.partition(i).items():
            lines.append(f"  {s}: {{{', '.join(sorted(nodes))}}}")
    return "\n".join(lines) + ("\n" if lines else "")
