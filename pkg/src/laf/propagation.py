"""Label propagation: build and solve the label equations of a graph.

Every I-node ``X`` carries two label vectors:

``mu_plus``  reasons for ``X`` aggregated:
    ``F(X)`` for a node without rule applications; otherwise the
    aggregation over its RA-nodes of the support of each RA-node's premise
    ``mu_minus`` values, aggregated once more with ``F(X)`` when ``X`` is an
    element of the knowledge base.
``mu_minus`` state after conflict:
    ``mu_plus(X) conflict mu_plus(~X)`` when a CA-node links ``X`` and ``~X``,
    else ``mu_plus(X)``.

The equations are solved per algebra over the strongly connected
components of the variable dependency graph, dependencies first.  Acyclic
parts are evaluated once; components that loop through a conflict are
iterated from a uniform start value until the residual drops below the
tolerance.  Numeric algebras fall back to damped updates when plain
iteration stalls; a tag-set component that starts to cycle is searched
exhaustively (when small) for its least fixed point, and reported as
having none when the search comes back empty.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterator

from laf.algebra import Label, LabelAlgebra, LabelVector, TagAlgebra
from laf.digraph import is_cyclic_component, strongly_connected_components
from laf.errors import ConfigurationError, SolverError, UnknownClaimError
from laf.graph import ArgGraph
from laf.kb import Literal

Var = tuple[str, str]  # ("+" | "-", I-node key)

DEFAULT_MAX_ITERATIONS = 10_000


@dataclass(frozen=True)
class PlusEquation:
    node: str
    base: LabelVector | None
    applications: tuple[tuple[str, tuple[str, ...]], ...]  # (RA key, sorted premise keys)

    def dependencies(self) -> list[Var]:
        return sorted({("-", p) for _, premises in self.applications for p in premises})


@dataclass(frozen=True)
class MinusEquation:
    node: str
    rival: str | None

    def dependencies(self) -> list[Var]:
        deps = [("+", self.node)]
        if self.rival is not None:
            deps.append(("+", self.rival))
        return deps


@dataclass(frozen=True)
class EquationSystem:
    graph: ArgGraph
    plus: dict[str, PlusEquation]
    minus: dict[str, MinusEquation]

    @property
    def algebras(self) -> tuple[LabelAlgebra, ...]:
        return self.graph.algebras

    def variables(self) -> list[Var]:
        return sorted([("+", k) for k in self.plus] + [("-", k) for k in self.minus])

    def dependencies(self, var: Var) -> list[Var]:
        sign, node = var
        return (self.plus[node] if sign == "+" else self.minus[node]).dependencies()

    def evaluate(self, var: Var, i: int, get: Callable[[Var], Label]) -> Label:
        """Right-hand side of ``var``'s equation for algebra ``i``."""
        alg = self.algebras[i]
        sign, node = var
        if sign == "-":
            eq = self.minus[node]
            if eq.rival is None:
                return get(("+", node))
            return alg.conflict(get(("+", node)), get(("+", eq.rival)))
        eq = self.plus[node]
        if not eq.applications:
            return eq.base[i]
        assert all(premises for _, premises in eq.applications), "RA-node without premises"
        reasons = [
            functools.reduce(alg.support, (get(("-", p)) for p in premises))
            for _, premises in eq.applications
        ]
        accrued = functools.reduce(alg.aggregate, reasons)
        if eq.base is not None:
            return alg.aggregate(eq.base[i], accrued)
        return accrued


def build_equations(graph: ArgGraph) -> EquationSystem:
    plus: dict[str, PlusEquation] = {}
    minus: dict[str, MinusEquation] = {}
    for key, node in graph.inodes.items():
        apps = tuple((ra.key, tuple(sorted(ra.premises))) for ra in graph.supporters(key))
        base = node.labels if node.in_kb else None
        if not apps and base is None:
            raise AssertionError(f"I-node {key} has neither a label nor a rule application")
        plus[key] = PlusEquation(key, base, apps)
        minus[key] = MinusEquation(key, graph.rival(key))
    return EquationSystem(graph, plus, minus)


@dataclass(frozen=True)
class Labeling:
    """Solved ``mu_plus`` / ``mu_minus`` vectors for every I-node."""

    system: EquationSystem
    mu_plus: dict[str, LabelVector]
    mu_minus: dict[str, LabelVector]
    converged: bool = True

    @property
    def algebras(self) -> tuple[LabelAlgebra, ...]:
        return self.system.algebras

    @property
    def nodes(self) -> list[str]:
        return sorted(self.mu_plus)

    def value(self, var: Var, i: int) -> Label:
        sign, node = var
        return (self.mu_plus if sign == "+" else self.mu_minus)[node][i]


@dataclass(frozen=True)
class SolverReport:
    iterations: int
    converged: bool
    residual: dict[str, float]
    order: list[list[Var]] = field(repr=False)


def evaluation_order(system: EquationSystem) -> list[list[Var]]:
    graph = {v: system.dependencies(v) for v in system.variables()}
    return strongly_connected_components(graph)


def _iterate(
    system: EquationSystem,
    i: int,
    comp: list[Var],
    values: dict[Var, Label],
    start: str,
    tolerance: float,
    max_iterations: int,
) -> tuple[int, float]:
    alg = system.algebras[i]
    current = {v: alg.start_value(start) for v in comp}
    lookup = lambda v: current[v] if v in current else values[v]  # noqa: E731
    discrete = alg.kind != "fuzzy"
    seen: set[tuple] = set()
    weight, best, stalled = 1.0, float("inf"), 0
    for sweep in range(1, max_iterations + 1):
        new = {v: system.evaluate(v, i, lookup) for v in comp}
        residual = max(alg.distance(new[v], current[v]) for v in comp)
        if residual == 0 or (not discrete and residual < tolerance):
            values.update(current)
            return sweep, residual
        if discrete:
            state = tuple(current[v] for v in comp)
            if state in seen:
                found = _search_fixed_point(system, i, comp, values, start)
                if found is None:
                    raise SolverError(
                        f"labels of algebra {alg.name!r} have no fixed point on "
                        f"{', '.join(f'{s}{n}' for s, n in comp)}",
                        residual,
                        sweep,
                        no_fixed_point=True,
                    )
                values.update(found)
                return sweep, 0.0
            seen.add(state)
            current = new
            continue
        if residual < best * 0.5:
            best, stalled = residual, 0
        else:
            stalled += 1
            if stalled >= 25 and weight > 1 / 1024:
                weight, stalled = weight / 2, 0
        current = {v: alg.relax(current[v], new[v], weight) for v in comp}
    raise SolverError(f"labels of algebra {alg.name!r} did not converge", residual, max_iterations)


MAX_SEARCH = 1 << 16


def _search_fixed_point(
    system: EquationSystem, i: int, comp: list[Var], values: dict[Var, Label], start: str
) -> dict[Var, Label] | None:
    """Exhaustive search of a discrete component for a fixed point.

    Every cycle runs through a conflict, so fixing the ``mu_minus`` values of
    the nodes that have a rival determines all other values of the
    component; only those are enumerated.  Returns the solution with the
    fewest tags in total (most tags with ``start="top"``), ties broken by
    enumeration order, or ``None`` when no fixed point exists.
    """
    alg = system.algebras[i]
    if not isinstance(alg, TagAlgebra):
        raise SolverError(f"labels of algebra {alg.name!r} oscillate", float("nan"), 0)
    members = set(comp)
    cut = [v for v in comp if v[0] == "-" and system.minus[v[1]].rival is not None]
    rest_graph = {
        v: [d for d in system.dependencies(v) if d in members and d not in cut]
        for v in comp
        if v not in cut
    }
    rest = [c[0] for c in strongly_connected_components(rest_graph) if c[0] not in cut]
    universe = sorted(alg.order)
    domain = [
        frozenset(c) for r in range(len(universe) + 1) for c in itertools.combinations(universe, r)
    ]
    if len(domain) ** len(cut) > MAX_SEARCH:
        raise SolverError(
            f"labels of algebra {alg.name!r} oscillate on a component with {len(cut)} "
            "conflicts, too many to search exhaustively",
            float("nan"),
            0,
        )
    best, best_size = None, None
    for assignment in itertools.product(domain, repeat=len(cut)):
        current = dict(zip(cut, assignment))
        lookup = lambda v: current[v] if v in current else values[v]  # noqa: E731
        for v in rest:
            current[v] = system.evaluate(v, i, lookup)
        if all(system.evaluate(v, i, lookup) == current[v] for v in comp):
            size = sum(len(x) for x in current.values())
            size = -size if start == "top" else size
            if best_size is None or size < best_size:
                best, best_size = dict(current), size
    return best


def solve(
    system: EquationSystem,
    start: str = "bottom",
    tolerance: float = 1e-9,
    max_iterations: int = DEFAULT_MAX_ITERATIONS,
) -> tuple[Labeling, SolverReport]:
    """Solve the label equations; raises :class:`SolverError` rather than return a non-solution."""
    if tolerance <= 0:
        raise ConfigurationError("tolerance must be positive")
    if max_iterations < 1:
        raise ConfigurationError("max_iterations must be at least 1")
    if start not in ("bottom", "top"):
        raise ConfigurationError(f"unknown solver start {start!r}")
    order = evaluation_order(system)
    deps = {v: system.dependencies(v) for v in system.variables()}
    per_algebra: list[dict[Var, Label]] = []
    sweeps = 0
    residuals: dict[str, float] = {}
    for i, alg in enumerate(system.algebras):
        values: dict[Var, Label] = {}
        worst = 0.0
        for comp in order:
            if is_cyclic_component(deps, comp):
                n, res = _iterate(system, i, comp, values, start, tolerance, max_iterations)
                sweeps += n
                worst = max(worst, res)
            else:
                values[comp[0]] = system.evaluate(comp[0], i, values.__getitem__)
        per_algebra.append(values)
        residuals[alg.name] = worst
    nodes = sorted(system.plus)
    labeling = Labeling(
        system,
        {k: tuple(vals[("+", k)] for vals in per_algebra) for k in nodes},
        {k: tuple(vals[("-", k)] for vals in per_algebra) for k in nodes},
    )
    return labeling, SolverReport(sweeps, True, residuals, order)


def residuals(labeling: Labeling) -> dict[Var, list[float]]:
    """Per equation and algebra: distance between each side after substitution."""
    system = labeling.system
    out = {}
    for var in system.variables():
        out[var] = [
            alg.distance(labeling.value(var, i), system.evaluate(var, i, lambda v: labeling.value(v, i)))
            for i, alg in enumerate(system.algebras)
        ]
    return out


# -- explanations ------------------------------------------------------------


@dataclass
class TraceNode:
    title: str
    detail: str = ""
    children: list["TraceNode"] = field(default_factory=list)

    def render(self) -> str:
        lines = [self.title + (f"  {self.detail}" if self.detail else "")]
        for n, child in enumerate(self.children):
            last = n == len(self.children) - 1
            sub = child.render().splitlines()
            lines.append(("└─ " if last else "├─ ") + sub[0])
            lines.extend(("   " if last else "│  ") + s for s in sub[1:])
        return "\n".join(lines)

    def walk(self) -> Iterator["TraceNode"]:
        yield self
        for c in self.children:
            yield from c.walk()


def _fmt(algebras: tuple[LabelAlgebra, ...], vec: LabelVector) -> str:
    return "[" + ", ".join(display(a, v) for a, v in zip(algebras, vec)) + "]"


def display(alg: LabelAlgebra, value: Label) -> str:
    if alg.kind == "fuzzy":
        return format(value, ".12g")
    return alg.format_label(value)


def trace(labeling: Labeling, claim: Literal | str) -> TraceNode:
    """Explain how ``claim``'s labels were obtained, down to the leaves."""
    system = labeling.system
    key = str(claim)
    if key not in system.plus:
        raise UnknownClaimError(key, sorted(system.plus))
    algebras = system.algebras

    def support_vector(premises: tuple[str, ...]) -> LabelVector:
        return tuple(
            functools.reduce(alg.support, (labeling.mu_minus[p][i] for p in premises))
            for i, alg in enumerate(algebras)
        )

    def node(k: str, path: frozenset[str]) -> TraceNode:
        peq, meq = system.plus[k], system.minus[k]
        parts = []
        if peq.base is not None:
            parts.append("F")
        if peq.applications:
            parts.append(" ⊕ ".join(f"RA({ra})" for ra, _ in peq.applications))
        plus_eq = " ⊕ ".join(parts)
        minus_eq = f"μ⁺ ⊖ μ⁺({meq.rival})" if meq.rival else "μ⁺"
        t = TraceNode(
            k,
            f"μ⁺ = {plus_eq} = {_fmt(algebras, labeling.mu_plus[k])}; "
            f"μ⁻ = {minus_eq} = {_fmt(algebras, labeling.mu_minus[k])}",
        )
        if k in path:
            t.detail += "  (cycle, expanded above)"
            return t
        path = path | {k}
        if peq.base is not None and peq.applications:
            t.children.append(TraceNode("F", _fmt(algebras, peq.base)))
        for ra, premises in peq.applications:
            t.children.append(
                TraceNode(
                    f"RA({ra})",
                    f"⊙ = {_fmt(algebras, support_vector(premises))}",
                    [node(p, path) for p in premises],
                )
            )
        if meq.rival is not None:
            t.children.append(
                TraceNode(
                    f"CA({meq.rival})",
                    f"μ⁺ = {_fmt(algebras, labeling.mu_plus[meq.rival])}",
                    [node(meq.rival, path)],
                )
            )
        return t

    return node(key, frozenset())
