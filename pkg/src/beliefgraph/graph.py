"""Explanation graph data model and the linearized-string grammar.

A graph is written as a concatenation of edges, each of the form
``(head; relation; tail)``.  Parsing keeps the textual edge order and the
original label spelling; concept equality is defined on the lowercased,
whitespace-collapsed form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DuplicateEdgeError,
    EmptyGraphError,
    GraphSyntaxError,
    SelfLoopError,
)


def normalize_label(label: str) -> str:
    return " ".join(label.lower().split())


@dataclass(frozen=True)
class Concept:
    """A node label; compared and hashed by its normalized form."""

    label: str

    @property
    def normalized(self) -> str:
        return normalize_label(self.label)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Concept):
            return NotImplemented
        return self.normalized == other.normalized

    def __hash__(self) -> int:
        return hash(self.normalized)

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Edge:
    """A directed labeled edge between two concepts."""

    head: Concept
    relation: str
    tail: Concept

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.head.normalized, normalize_label(self.relation), self.tail.normalized)

    def sentence(self) -> str:
        """Render as the flat sentence used by edge-similarity scoring."""
        return f"{self.head.label} {self.relation} {self.tail.label}"

    def __str__(self) -> str:
        return f"({self.head.label}; {self.relation}; {self.tail.label})"


class ExplanationGraph:
    """An ordered list of edges; the node set is derived from the edges."""

    def __init__(self, edges: list[Edge]):
        if not edges:
            raise EmptyGraphError("graph must contain at least one edge")
        seen: set[tuple[str, str, str]] = set()
        for e in edges:
            if e.head == e.tail:
                raise SelfLoopError(f"self-loop on {e.head.label!r}")
            if e.key in seen:
                raise DuplicateEdgeError(f"duplicate edge {e}")
            seen.add(e.key)
        self.edges: list[Edge] = list(edges)
        nodes: list[Concept] = []
        index: dict[str, Concept] = {}
        for e in edges:
            for c in (e.head, e.tail):
                if c.normalized not in index:
                    index[c.normalized] = c
                    nodes.append(c)
        self.nodes: list[Concept] = nodes

    def __len__(self) -> int:
        return len(self.edges)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ExplanationGraph):
            return NotImplemented
        return [e.key for e in self.edges] == [e.key for e in other.edges]

    def __repr__(self) -> str:
        return f"ExplanationGraph({serialize_graph(self)!r})"

    def edge_keys(self) -> set[tuple[str, str, str]]:
        return {e.key for e in self.edges}

    def without_edge(self, i: int) -> ExplanationGraph:
        """Copy with edge ``i`` removed; may be disconnected."""
        return ExplanationGraph(self.edges[:i] + self.edges[i + 1:])


def parse_graph(text: str) -> ExplanationGraph:
    """Parse a linearized graph string into an :class:`ExplanationGraph`.

    Raises :class:`GraphSyntaxError` (with byte offset) on malformed input,
    plus the self-loop / duplicate-edge / empty-graph errors.
    """
    edges: list[Edge] = []
    i = 0
    n = len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            break
        if text[i] != "(":
            raise GraphSyntaxError(f"expected '(' but found {text[i]!r}", i)
        close = text.find(")", i + 1)
        if close == -1:
            raise GraphSyntaxError("unterminated edge, missing ')'", i)
        body = text[i + 1:close]
        if "(" in body:
            raise GraphSyntaxError("unexpected '(' inside edge", i + 1 + body.index("("))
        parts = body.split(";")
        if len(parts) != 3:
            raise GraphSyntaxError(
                f"edge must have exactly 3 ';'-separated fields, got {len(parts)}", i)
        head, relation, tail = (p.strip() for p in parts)
        if not head or not relation or not tail:
            raise GraphSyntaxError("empty field in edge", i)
        edges.append(Edge(Concept(head), relation, Concept(tail)))
        i = close + 1
    if not edges:
        raise EmptyGraphError("no edges found in input")
    return ExplanationGraph(edges)


def serialize_graph(g: ExplanationGraph) -> str:
    """Inverse of :func:`parse_graph`; preserves edge order and label spelling."""
    return "".join(str(e) for e in g.edges)
