"""Recursive diamond graphs with their 4-ary decomposition, and <=3 cut certificates.

G_0 is the single edge s-t. G_p replaces every edge xy of G_{p-1} by the
4-cycle x-p-y-q-x. The hierarchy mirrors that: the node at address A (a tuple
of child indices in 1..4) spans a copy of G_r between its two extremities
(x, y). For r > 0 its middles are named ``"<A>/p"`` and ``"<A>/q"`` with the
address rendered as dot-joined indices (the root renders as the empty string,
so its middles are ``"/p"`` and ``"/q"``). Children are laid out cyclically:

    1: (x, p)   2: (p, y)   3: (y, q)   4: (q, x)

so children 1 and 3 (and 2 and 4) share no vertex.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from functools import cached_property

from .connectivity import (
    DEGREE_BOUND,
    VERTEX_CUT,
    UpperBoundCertificate,
    max_independent_paths,
    verify_cut,
)
from .errors import GraphError, GraphTooLargeError
from .graph import Edge, Graph, edge_key

logger = logging.getLogger(__name__)

MAX_ORDER = 10

Address = tuple[int, ...]


def render_address(address: Address) -> str:
    return ".".join(map(str, address))


def middle_names(address: Address) -> tuple[str, str]:
    a = render_address(address)
    return f"{a}/p", f"{a}/q"


def _child_spans(x: str, y: str, p: str, q: str) -> tuple[tuple[str, str], ...]:
    return ((x, p), (p, y), (y, q), (q, x))


@dataclass(frozen=True)
class DiamondNode:
    address: Address
    order: int
    extremities: tuple[str, str]
    middles: tuple[str, str] | None = None

    @property
    def name(self) -> str:
        return render_address(self.address)


class DiamondHierarchy:
    """Decomposition tree of G_p. Nodes are derived on demand from addresses."""

    def __init__(self, order: int, graph: Graph, edge_leaf: dict[Edge, Address]) -> None:
        self.order = order
        self.vertices = graph.vertices
        self.edge_leaf = edge_leaf
        self._graph = graph
        self._addresses: dict[str, frozenset[Address]] = {}

    @cached_property
    def root(self) -> DiamondNode:
        return self._make((), self.order, ("s", "t"))

    @staticmethod
    def _make(address: Address, order: int, ext: tuple[str, str]) -> DiamondNode:
        return DiamondNode(address, order, ext, middle_names(address) if order else None)

    def children(self, node: DiamondNode) -> list[DiamondNode]:
        if node.order == 0:
            return []
        assert node.middles is not None
        spans = _child_spans(*node.extremities, *node.middles)
        return [self._make((*node.address, i), node.order - 1, span)
                for i, span in enumerate(spans, start=1)]

    def node(self, address: Address) -> DiamondNode:
        cur = self.root
        for i in address:
            if not 1 <= i <= 4 or cur.order == 0:
                raise GraphError(f"no hierarchy node at address {render_address(address)!r}")
            cur = self.children(cur)[i - 1]
        return cur

    def nodes_at_depth(self, depth: int) -> list[DiamondNode]:
        level = [self.root]
        for _ in range(depth):
            level = [c for n in level for c in self.children(n)]
        return level

    def addresses_of(self, v: str) -> frozenset[Address]:
        """Addresses of every hierarchy node whose sub-diamond contains ``v``."""
        if v not in self._addresses:
            out: set[Address] = set()
            for w in self._graph.neighbors(v):
                leaf = self.edge_leaf[edge_key(v, w)]
                out.update(leaf[:i] for i in range(len(leaf) + 1))
            self._addresses[v] = frozenset(out)
        return self._addresses[v]

    @property
    def vertex_index(self) -> dict[str, frozenset[Address]]:
        return {v: self.addresses_of(v) for v in self.vertices}

    def contains(self, node: DiamondNode, v: str) -> bool:
        return node.address in self.addresses_of(v)

    def vertex_set(self, node: DiamondNode) -> set[str]:
        n = len(node.address)
        return {
            x for edge, leaf in self.edge_leaf.items() if leaf[:n] == node.address for x in edge
        }


def diamond_counts(p: int) -> tuple[int, int, int]:
    """(vertices, edges, edge-disjoint s-t paths) of G_p, in closed form."""
    return (2 * 4**p + 4) // 3, 4**p, 2**p


def generate_diamond(p: int) -> tuple[Graph, DiamondHierarchy]:
    if not isinstance(p, int) or p < 0:
        raise GraphError(f"diamond order must be a non-negative integer, got {p!r}")
    if p > MAX_ORDER:
        raise GraphTooLargeError(f"diamond order {p} exceeds the limit {MAX_ORDER}", p)
    adjacency: dict[str, list[str]] = {"s": [], "t": []}
    edge_leaf: dict[Edge, Address] = {}
    stack: list[tuple[Address, str, str]] = [((), "s", "t")]
    while stack:
        address, x, y = stack.pop()
        if len(address) == p:
            edge_leaf[edge_key(x, y)] = address
            adjacency[x].append(y)
            adjacency[y].append(x)
            continue
        mp, mq = middle_names(address)
        adjacency[mp] = []
        adjacency[mq] = []
        for i, span in enumerate(_child_spans(x, y, mp, mq), start=1):
            stack.append(((*address, i), *span))
    g = Graph(adjacency)
    return g, DiamondHierarchy(p, g, edge_leaf)


def smallest_enclosing(h: DiamondHierarchy, u: str, v: str) -> DiamondNode:
    """Deepest hierarchy node whose sub-diamond holds both u and v."""
    for w in (u, v):
        if w not in h.vertices:
            raise GraphError(f"vertex {w!r} not in the diamond graph")
    if u == v:
        raise GraphError(f"endpoints must differ, got {u!r} twice")
    both = h.addresses_of(u) & h.addresses_of(v)
    node = h.root
    while True:
        inner = [c for c in h.children(node) if c.address in both]
        if len(inner) != 1:
            return node
        node = inner[0]


def _candidate_cuts(h: DiamondHierarchy, q: DiamondNode, u: str, v: str) -> list[set[str]]:
    kids = h.children(q)
    holding = {w: [c for c in kids if h.contains(c, w)] for w in (u, v)}
    out: list[set[str]] = []
    # An endpoint inside exactly one child is walled off by that child's extremities.
    for w in (u, v):
        if len(holding[w]) == 1:
            out.append(set(holding[w][0].extremities))
    # An endpoint on two adjacent children: cut their other extremities, plus the
    # far extremity of a same-order copy J outside q that also ends at it.
    for w in (u, v):
        if len(holding[w]) != 2:
            continue
        base = {x for c in holding[w] for x in c.extremities} - {w}
        out.append(base)
        if q.order == h.order:
            continue
        depth = len(q.address)
        for address in sorted(h.addresses_of(w)):
            if len(address) != depth or address == q.address:
                continue
            j = h.node(address)
            if w in j.extremities:
                far = j.extremities[1] if j.extremities[0] == w else j.extremities[0]
                out.append(base | {far})
    return out


def structural_upper_bound(h: DiamondHierarchy, g: Graph, u: str, v: str) -> UpperBoundCertificate:
    """A <=3 bound on independent u-v paths read off the diamond structure.

    Every candidate is checked with ``verify_cut`` before it is returned. If no
    structural candidate checks out, the flow-derived certificate is returned
    with ``fallback=True``.
    """
    q = smallest_enclosing(h, u, v)
    if q.order == 0:
        w = min((u, v), key=lambda x: (g.degree(x), x))
        cert = UpperBoundCertificate(DEGREE_BOUND, g.degree(w), witness_vertex=w)
        if verify_cut(g, u, v, cert):
            return cert
    else:
        for cut in _candidate_cuts(h, q, u, v):
            if u in cut or v in cut:
                continue
            cert = UpperBoundCertificate(VERTEX_CUT, len(cut), tuple(sorted(cut)))
            if verify_cut(g, u, v, cert):
                return cert
    logger.warning("no structural certificate for pair (%s, %s); using flow cut", u, v)
    _, cert = max_independent_paths(g, u, v)
    return dataclasses.replace(cert, fallback=True)
