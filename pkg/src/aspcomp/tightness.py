"""Positive predicate dependency graph and tightness check."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .syntax import PosLit, PredicateSymbol, Program, predicate_symbols


@dataclass(frozen=True)
class DependencyGraph:
    vertices: tuple  # PredicateSymbol, by first occurrence
    edges: dict  # (from, to) -> tuple of rule indices

    def successors(self, v: PredicateSymbol):
        return sorted({b for (a, b) in self.edges if a == v})


def dependency_graph(p: Program) -> DependencyGraph:
    """Edges run from head predicates to positive body predicates."""
    vertices = tuple(predicate_symbols(p))
    edges = {}
    for idx, r in enumerate(p.rules):
        if r.head is None:
            continue
        head = PredicateSymbol(r.head.pred, len(r.head.args))
        for lit in r.body:
            if isinstance(lit, PosLit):
                tgt = PredicateSymbol(lit.atom.pred, len(lit.atom.args))
                edges.setdefault((head, tgt), []).append(idx)
    return DependencyGraph(vertices, {k: tuple(v) for k, v in edges.items()})


def find_cycle(g: DependencyGraph):
    """Lexicographically least among the shortest cycles, or None.

    The cycle is returned as a vertex list without repeating the start.
    """
    best = None
    adjacency = {v: g.successors(v) for v in g.vertices}
    for start in sorted(g.vertices):
        # BFS for the shortest path start -> start.
        parent = {}
        queue = deque([start])
        seen = {start}
        found = None
        while queue and found is None:
            u = queue.popleft()
            for w in adjacency.get(u, ()):
                if w == start:
                    found = u
                    break
                if w not in seen:
                    seen.add(w)
                    parent[w] = u
                    queue.append(w)
        if found is None:
            continue
        path = [found]
        while path[-1] != start:
            path.append(parent[path[-1]])
        cycle = list(reversed(path))
        key = (len(cycle), tuple(str(v) for v in cycle))
        if best is None or key < best[0]:
            best = (key, cycle)
    return best[1] if best else None


def is_tight(p: Program):
    """True when acyclic; otherwise a witnessing cycle of predicate symbols."""
    cycle = find_cycle(dependency_graph(p))
    if cycle is None:
        return True
    return cycle


def tight(p: Program) -> bool:
    return is_tight(p) is True


def to_dot(g: DependencyGraph) -> str:
    lines = ["digraph dependencies {"]
    for v in g.vertices:
        lines.append(f'  "{v}";')
    for (a, b), rules in sorted(g.edges.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
        label = ",".join(str(i) for i in rules)
        lines.append(f'  "{a}" -> "{b}" [label="{label}"];')
    lines.append("}")
    return "\n".join(lines)
