"""Strongly connected components and witness cycles on adjacency dicts.

Graphs are ``dict[node, iterable[node]]``; nodes must be sortable so every
traversal is deterministic.
"""
from __future__ import annotations

from typing import Hashable, Iterable, Mapping, TypeVar

N = TypeVar("N", bound=Hashable)


def strongly_connected_components(graph: Mapping[N, Iterable[N]]) -> list[list[N]]:
    """Tarjan's algorithm, iterative.

    Components come out in reverse topological order of the condensation:
    if an edge leads from component A to component B, B is listed first.
    """
    succ = {v: sorted(set(ws)) for v, ws in graph.items()}
    for ws in list(succ.values()):
        for w in ws:
            succ.setdefault(w, [])
    index: dict[N, int] = {}
    low: dict[N, int] = {}
    on_stack: set[N] = set()
    stack: list[N] = []
    out: list[list[N]] = []
    counter = 0
    for root in sorted(succ):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            children = succ[v]
            while i < len(children):
                w = children[i]
                i += 1
                if w not in index:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                out.append(sorted(comp))
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return out


def is_cyclic_component(graph: Mapping[N, Iterable[N]], comp: list[N]) -> bool:
    return len(comp) > 1 or comp[0] in set(graph.get(comp[0], ()))


def smallest_cycle(graph: Mapping[N, Iterable[N]]) -> list[N] | None:
    """Lexicographically smallest elementary cycle, or ``None`` if acyclic.

    The cycle is returned starting at its smallest node and closed, i.e.
    ``[v0, v1, ..., v0]``.
    """
    cyclic = [c for c in strongly_connected_components(graph) if is_cyclic_component(graph, c)]
    if not cyclic:
        return None
    comp = min(cyclic, key=lambda c: c[0])
    members = set(comp)
    start = comp[0]
    succ = {v: sorted(w for w in set(graph.get(v, ())) if w in members) for v in comp}

    def reaches_start(v: N, blocked: set[N]) -> bool:
        seen = {v}
        todo = [v]
        while todo:
            u = todo.pop()
            for w in succ[u]:
                if w == start:
                    return True
                if w not in seen and w not in blocked:
                    seen.add(w)
                    todo.append(w)
        return False

    path = [start]
    visited = {start}
    while True:
        here = path[-1]
        if start in succ[here]:
            return path + [start]
        for w in succ[here]:
            if w not in visited and reaches_start(w, visited):
                path.append(w)
                visited.add(w)
                break
        else:  # pragma: no cover - the reachability check rules this out
            raise AssertionError("dead end while tracing a cycle")
