"""Immutable simple undirected graphs over string vertex ids, plus I/O.

Every iteration order in this package is lexicographic in the vertex id,
so all outputs are reproducible byte for byte.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import GraphError, ParseError

EDGE_LIST = "edge-list"
STRUCTURED = "structured"
DOT = "dot"

Edge = tuple[str, str]


def check_vertex_id(v: object) -> str:
    if not isinstance(v, str) or not v:
        raise GraphError(f"vertex id must be a non-empty string, got {v!r}")
    if "#" in v or any(ch.isspace() for ch in v):
        raise GraphError(f"vertex id may not contain whitespace or '#': {v!r}")
    return v


def edge_key(a: str, b: str) -> Edge:
    return (a, b) if a < b else (b, a)


class Graph:
    """Simple undirected graph. Treat instances as values; nothing mutates them."""

    __slots__ = ("_adj", "_edges", "_vertices")

    def __init__(self, adjacency: Mapping[str, Iterable[str]]) -> None:
        # Trusted constructor: callers go through build_graph / parse_graph.
        self._adj: dict[str, tuple[str, ...]] = {
            v: tuple(sorted(adjacency[v])) for v in sorted(adjacency)
        }
        self._vertices = tuple(self._adj)
        self._edges = frozenset(
            (a, b) for a, nbrs in self._adj.items() for b in nbrs if a < b
        )

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> frozenset[Edge]:
        """Edges as ``(a, b)`` pairs with ``a < b``."""
        return self._edges

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def neighbors(self, v: str) -> tuple[str, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise GraphError(f"vertex {v!r} not in graph") from None

    def degree(self, v: str) -> int:
        return len(self.neighbors(v))

    def has_edge(self, a: str, b: str) -> bool:
        return edge_key(a, b) in self._edges

    def require(self, *vs: str) -> None:
        for v in vs:
            if v not in self._adj:
                raise GraphError(f"vertex {v!r} not in graph")

    def without_edge(self, a: str, b: str) -> Graph:
        if not self.has_edge(a, b):
            raise GraphError(f"edge {a}-{b} not in graph")
        adj = {v: list(nbrs) for v, nbrs in self._adj.items()}
        adj[a].remove(b)
        adj[b].remove(a)
        return Graph(adj)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self._vertices, self._edges))

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self._vertices)}, |E|={len(self._edges)})"


def build_graph(
    edge_list: Iterable[Sequence[str]],
    isolated: Iterable[str] = (),
    *,
    collapse: bool = True,
) -> Graph:
    """Build a graph from vertex pairs and extra isolated vertices.

    Duplicate edges (in either orientation) are merged unless ``collapse`` is
    False, in which case they raise. Self-loops always raise.
    """
    adj: dict[str, set[str]] = {}
    for pair in edge_list:
        if len(pair) != 2:
            raise GraphError(f"edge must have two endpoints: {tuple(pair)!r}")
        a, b = (check_vertex_id(x) for x in pair)
        if a == b:
            raise GraphError(f"self-loop rejected: ({a!r}, {b!r})")
        if not collapse and b in adj.get(a, ()):
            raise GraphError(f"parallel edge rejected: ({a!r}, {b!r})")
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    for v in isolated:
        adj.setdefault(check_vertex_id(v), set())
    return Graph(adj)


def parse_graph(text: str, fmt: str = EDGE_LIST, *, collapse: bool = False) -> Graph:
    """Parse edge-list or structured (JSON) text.

    Strict by default: a repeated edge is an error unless ``collapse`` is set.
    """
    if fmt == EDGE_LIST:
        return _parse_edge_list(text, collapse)
    if fmt == STRUCTURED:
        return _parse_structured(text, collapse)
    raise GraphError(f"cannot parse format {fmt!r}")


def _parse_edge_list(text: str, collapse: bool) -> Graph:
    adj: dict[str, set[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            ids = [check_vertex_id(tok) for tok in tokens]
        except GraphError as exc:
            raise ParseError(str(exc), lineno) from None
        if len(ids) == 1:
            adj.setdefault(ids[0], set())
            continue
        if len(ids) != 2:
            raise ParseError(f"expected '<id> <id>' or '<id>', got {line!r}", lineno)
        a, b = ids
        if a == b:
            raise ParseError(f"self-loop {a} {b}", lineno)
        if b in adj.get(a, ()) and not collapse:
            raise ParseError(f"parallel edge {a} {b}", lineno)
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    return Graph(adj)


def _parse_structured(text: str, collapse: bool) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict) or "vertices" not in doc or "edges" not in doc:
        raise ParseError("structured graph needs 'vertices' and 'edges' fields")
    vertices, edges = doc["vertices"], doc["edges"]
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise ParseError("'vertices' and 'edges' must be arrays")
    if not all(isinstance(e, list) and len(e) == 2 for e in edges):
        raise ParseError("every edge must be a 2-element array")
    try:
        g = build_graph(edges, vertices, collapse=collapse)
    except GraphError as exc:
        raise ParseError(str(exc)) from None
    return g


def serialize_graph(g: Graph, fmt: str = EDGE_LIST) -> str:
    edges = g.sorted_edges()
    if fmt == EDGE_LIST:
        lines = [f"{a} {b}" for a, b in edges]
        lines += [v for v in g.vertices if not g.neighbors(v)]
        return "".join(line + "\n" for line in lines)
    if fmt == STRUCTURED:
        return json.dumps({"vertices": list(g.vertices), "edges": [list(e) for e in edges]}) + "\n"
    if fmt == DOT:
        out = ["graph G {"]
        out += [f'  "{v}";' for v in g.vertices if not g.neighbors(v)]
        out += [f'  "{a}" -- "{b}";' for a, b in edges]
        out.append("}")
        return "\n".join(out) + "\n"
    raise GraphError(f"unknown graph format {fmt!r}")


def component_containing(g: Graph, removed: Iterable[str], target: str) -> set[str]:
    """Vertices reachable from ``target`` once ``removed`` is deleted from ``g``."""
    removed = set(removed)
    g.require(target)
    if target in removed:
        raise GraphError(f"target {target!r} is among the removed vertices")
    seen = {target}
    stack = [target]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y not in seen and y not in removed:
                seen.add(y)
                stack.append(y)
    return seen


@dataclass(frozen=True)
class SpanningTree:
    root: str
    parent: dict[str, str] = field(default_factory=dict)

    @property
    def covered(self) -> frozenset[str]:
        return frozenset(self.parent) | {self.root}

    def path_to_root(self, v: str) -> list[str]:
        if v != self.root and v not in self.parent:
            raise GraphError(f"vertex {v!r} not covered by the tree")
        out = [v]
        while out[-1] != self.root:
            out.append(self.parent[out[-1]])
        return out

    def tree_path(self, a: str, b: str) -> list[str]:
        """The unique a-b path in the tree, listed from a to b."""
        up_a = self.path_to_root(a)
        up_b = self.path_to_root(b)
        on_b = set(up_b)
        i = next(i for i, x in enumerate(up_a) if x in on_b)
        meet = up_a[i]
        return up_a[: i + 1] + up_b[: up_b.index(meet)][::-1]


def bfs_tree(g: Graph, root: str, restrict_to: Iterable[str] | None = None) -> SpanningTree:
    """Breadth-first spanning tree of the subgraph induced by ``restrict_to``.

    Neighbors are expanded in id order. ``restrict_to`` defaults to the whole
    vertex set and must induce a connected subgraph containing ``root``.
    """
    g.require(root)
    allowed = set(g.vertices) if restrict_to is None else set(restrict_to)
    if root not in allowed:
        raise GraphError(f"root {root!r} not in the restricted vertex set")
    parent: dict[str, str] = {}
    seen = {root}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y in allowed and y not in seen:
                seen.add(y)
                parent[y] = x
                queue.append(y)
    missing = allowed - seen
    if missing:
        raise GraphError(f"restricted set is not connected; {min(missing)!r} unreached from {root!r}")
    return SpanningTree(root, parent)
