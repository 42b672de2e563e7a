"""Edge-disjoint and independent path systems with Menger cut certificates."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Sequence

from .errors import GraphError, GraphTooLargeError
from .flow import FlowNetwork
from .graph import Graph, component_containing, edge_key

EDGE_DISJOINT = "edge-disjoint"
INDEPENDENT = "independent"
VERTEX_CUT = "vertex-cut"
DEGREE_BOUND = "degree-bound"

ORACLE_MAX_VERTICES = 12

Path = tuple[str, ...]


@dataclass(frozen=True)
class PathSystem:
    source: str
    sink: str
    paths: tuple[Path, ...]
    kind: str = INDEPENDENT

    def __len__(self) -> int:
        return len(self.paths)

    def to_dict(self) -> dict[str, Any]:
        return {
            "source": self.source,
            "sink": self.sink,
            "kind": self.kind,
            "paths": [list(p) for p in self.paths],
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> PathSystem:
        return cls(doc["source"], doc["sink"], tuple(tuple(p) for p in doc["paths"]), doc["kind"])


@dataclass(frozen=True)
class UpperBoundCertificate:
    """Proof that at most ``bound`` independent u-v paths exist.

    A vertex cut normally separates u from v outright and ``bound == len(cut)``.
    With ``direct_edge`` set, u and v are adjacent: the cut separates them in
    the graph minus the edge uv, and the edge itself adds one to the bound.
    """

    variant: str
    bound: int
    cut: tuple[str, ...] = ()
    witness_vertex: str | None = None
    direct_edge: bool = False
    fallback: bool = False

    def to_dict(self) -> dict[str, Any]:
        doc: dict[str, Any] = {"variant": self.variant}
        if self.variant == VERTEX_CUT:
            doc["cut"] = list(self.cut)
            doc["direct_edge"] = self.direct_edge
        else:
            doc["witness_vertex"] = self.witness_vertex
        doc["bound"] = self.bound
        doc["fallback"] = self.fallback
        return doc

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> UpperBoundCertificate:
        return cls(
            variant=doc["variant"],
            bound=doc["bound"],
            cut=tuple(doc.get("cut", ())),
            witness_vertex=doc.get("witness_vertex"),
            direct_edge=doc.get("direct_edge", False),
            fallback=doc.get("fallback", False),
        )


@dataclass
class Verdict:
    failures: list[str] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.valid


def _check_pair(g: Graph, a: str, b: str) -> None:
    g.require(a, b)
    if a == b:
        raise GraphError(f"endpoints must differ, got {a!r} twice")


def max_edge_disjoint_paths(g: Graph, s: str, t: str) -> PathSystem:
    _check_pair(g, s, t)
    net: FlowNetwork[str] = FlowNetwork()
    for v in g.vertices:
        net.add_node(v)
    for a, b in g.sorted_edges():
        net.add_edge(a, b)
    net.max_flow(s, t)
    paths = tuple(tuple(p) for p in net.decompose(s, t))
    return PathSystem(s, t, paths, EDGE_DISJOINT)


def _in(w: str) -> tuple[str, str]:
    return (w, "in")


def _out(w: str) -> tuple[str, str]:
    return (w, "out")


def split_vertices(g: Graph, u: str, v: str) -> FlowNetwork[tuple[str, str]]:
    """Vertex-split network for independent u-v paths.

    Internal vertex w becomes ``(w, "in") -> (w, "out")`` with capacity 1;
    u and v stay whole as ``(u, "")`` and ``(v, "")``.
    """
    _check_pair(g, u, v)
    ends = {u: (u, ""), v: (v, "")}
    net: FlowNetwork[tuple[str, str]] = FlowNetwork()
    for w in g.vertices:
        if w in ends:
            net.add_node(ends[w])
        else:
            net.add_arc(_in(w), _out(w))
    for a, b in g.sorted_edges():
        net.add_arc(ends.get(a) or _out(a), ends.get(b) or _in(b))
        net.add_arc(ends.get(b) or _out(b), ends.get(a) or _in(a))
    return net


def _flow_independent(g: Graph, u: str, v: str) -> tuple[list[Path], tuple[str, ...]]:
    net = split_vertices(g, u, v)
    src, dst = (u, ""), (v, "")
    value = net.max_flow(src, dst)
    paths = []
    for walk in net.decompose(src, dst):
        verts = [walk[0][0]]
        for node in walk[1:]:
            if node[0] != verts[-1]:
                verts.append(node[0])
        paths.append(tuple(verts))
    reach = net.reachable(src)
    cut: set[str] = set()
    for a in reach:
        for b, c in net.cap[a].items():
            if c > 0 and b not in reach:
                # Saturated arc leaving the source side. Only w_in->w_out arcs
                # and arcs leaving u itself can cross.
                if a == src:
                    cut.add(b[0])
                else:
                    cut.add(a[0])
    if len(cut) != value:
        raise AssertionError(f"cut size {len(cut)} != flow value {value}")
    return paths, tuple(sorted(cut))


def max_independent_paths(g: Graph, u: str, v: str) -> tuple[PathSystem, UpperBoundCertificate]:
    """Maximum set of internally vertex-disjoint u-v paths, with a matching bound.

    For adjacent u, v the edge uv is taken as one path and the rest is solved on
    the graph without that edge; the certificate then has ``direct_edge`` set.
    """
    _check_pair(g, u, v)
    adjacent = g.has_edge(u, v)
    host = g.without_edge(u, v) if adjacent else g
    paths, cut = _flow_independent(host, u, v)
    if adjacent:
        paths = [(u, v)] + paths
    cert = UpperBoundCertificate(VERTEX_CUT, len(cut) + adjacent, cut, direct_edge=adjacent)
    return PathSystem(u, v, tuple(paths), INDEPENDENT), cert


def check_path_system(g: Graph, ps: PathSystem) -> Verdict:
    """List every way ``ps`` fails to be a valid path system of its kind in ``g``."""
    verdict = Verdict()
    bad = verdict.failures
    if ps.kind not in (EDGE_DISJOINT, INDEPENDENT):
        bad.append(f"unknown kind {ps.kind!r}")
    if ps.source == ps.sink:
        bad.append(f"source and sink coincide: {ps.source!r}")
    edge_owner: dict[tuple[str, str], int] = {}
    for i, path in enumerate(ps.paths):
        if len(path) < 2:
            bad.append(f"path {i} has fewer than two vertices")
            continue
        if path[0] != ps.source or path[-1] != ps.sink:
            bad.append(f"path {i} runs {path[0]}..{path[-1]}, expected {ps.source}..{ps.sink}")
        if len(set(path)) != len(path):
            bad.append(f"path {i} repeats a vertex")
        for a, b in zip(path, path[1:]):
            if a not in g or b not in g or not g.has_edge(a, b):
                bad.append(f"path {i} uses non-edge {a}-{b}")
                continue
            key = edge_key(a, b)
            if key in edge_owner and edge_owner[key] != i:
                bad.append(f"paths {edge_owner[key]} and {i} share edge {a}-{b}")
            edge_owner.setdefault(key, i)
    if ps.kind == INDEPENDENT:
        for (i, p), (j, q) in itertools.combinations(enumerate(ps.paths), 2):
            for x, y, a, b in ((i, j, p, q), (j, i, q, p)):
                shared = set(a[1:-1]) & set(b)
                if shared:
                    bad.append(f"path {y} contains interior vertex {min(shared)} of path {x}")
    return verdict


def verify_cut(g: Graph, u: str, v: str, cert: UpperBoundCertificate) -> Verdict:
    verdict = Verdict()
    bad = verdict.failures
    if u == v or u not in g or v not in g:
        bad.append(f"invalid query pair ({u!r}, {v!r})")
        return verdict
    if cert.variant == VERTEX_CUT:
        cut = set(cert.cut)
        if len(cut) != len(cert.cut):
            bad.append("cut lists a vertex twice")
        if u in cut or v in cut:
            bad.append("cut contains an endpoint")
            return verdict
        missing = sorted(cut - set(g.vertices))
        if missing:
            bad.append(f"cut vertices not in graph: {missing}")
        host = g
        if cert.direct_edge:
            if not g.has_edge(u, v):
                bad.append("direct_edge set but u, v are not adjacent")
                return verdict
            host = g.without_edge(u, v)
        if v in component_containing(host, cut & set(g.vertices), u):
            bad.append("v remains reachable from u after deleting the cut")
        expected = len(cut) + (1 if cert.direct_edge else 0)
        if cert.bound != expected:
            bad.append(f"bound {cert.bound} != {expected}")
    elif cert.variant == DEGREE_BOUND:
        w = cert.witness_vertex
        if w not in (u, v):
            bad.append(f"witness {w!r} is neither endpoint")
        elif cert.bound != g.degree(w):
            bad.append(f"bound {cert.bound} != degree({w}) = {g.degree(w)}")
        if not g.has_edge(u, v):
            bad.append("degree bound requires u and v adjacent")
    else:
        bad.append(f"unknown certificate variant {cert.variant!r}")
    return verdict


def simple_paths(g: Graph, u: str, v: str) -> list[Path]:
    """All simple u-v paths, shortest first, then by vertex sequence."""
    found: list[Path] = []
    path = [u]
    on_path = {u}

    def extend() -> None:
        for y in g.neighbors(path[-1]):
            if y == v:
                found.append((*path, v))
            elif y not in on_path:
                path.append(y)
                on_path.add(y)
                extend()
                on_path.discard(path.pop())

    extend()
    found.sort(key=lambda p: (len(p), p))
    return found


def oracle_max_independent(g: Graph, u: str, v: str) -> int:
    """Brute-force maximum number of pairwise independent u-v paths.

    Enumerates every simple path, then searches subsets exhaustively. Paths are
    grouped by their first step out of u, since two independent paths never
    share it; at most one path is picked per group.
    """
    _check_pair(g, u, v)
    if len(g) > ORACLE_MAX_VERTICES:
        raise GraphTooLargeError(
            f"oracle limited to {ORACLE_MAX_VERTICES} vertices, graph has {len(g)}", len(g)
        )
    index = {w: i for i, w in enumerate(g.vertices)}
    groups: dict[str, list[int]] = {}
    for p in simple_paths(g, u, v):
        mask = 0
        for w in p[1:-1]:
            mask |= 1 << index[w]
        groups.setdefault(p[1], []).append(mask)
    ordered: list[Sequence[int]] = [groups[k] for k in sorted(groups)]
    ceiling = min(g.degree(u), g.degree(v), len(ordered))
    best = 0

    def search(i: int, used: int, count: int) -> bool:
        nonlocal best
        if count > best:
            best = count
            if best == ceiling:
                return True
        if i == len(ordered) or count + len(ordered) - i <= best:
            return False
        for mask in ordered[i]:
            if not mask & used and search(i + 1, used | mask, count + 1):
                return True
        return search(i + 1, used, count)

    search(0, 0, 0)
    return best

