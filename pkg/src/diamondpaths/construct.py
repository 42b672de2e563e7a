"""Turn 2 or 3 edge-disjoint s-t paths into as many independent u-v paths."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .connectivity import INDEPENDENT, PathSystem, max_edge_disjoint_paths
from .errors import PreconditionError
from .graph import Graph, SpanningTree, bfs_tree, component_containing


@dataclass(frozen=True)
class IndependentWitness:
    u: str
    v: str
    system: PathSystem
    # Intermediate objects of the construction, kept for inspection only.
    trace: dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    def to_dict(self) -> dict[str, Any]:
        return {"u": self.u, "v": self.v, **self.system.to_dict()}

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> IndependentWitness:
        return cls(doc["u"], doc["v"], PathSystem.from_dict(doc))


def _edge_disjoint(g: Graph, s: str, t: str, need: int) -> tuple[list[tuple[str, ...]], int]:
    """The first ``need`` paths of the flow decomposition, and the full count."""
    paths = max_edge_disjoint_paths(g, s, t).paths
    if len(paths) < need:
        raise PreconditionError(
            f"need {need} edge-disjoint {s}-{t} paths, graph has {len(paths)}", len(paths)
        )
    return list(paths[:need]), len(paths)


def find_two_independent(g: Graph, s: str, t: str) -> IndependentWitness:
    """u = s, v = the first vertex after s on P1 that P2 also visits."""
    (p1, p2), lam = _edge_disjoint(g, s, t, 2)
    on_p2 = set(p2)
    i = next(i for i in range(1, len(p1)) if p1[i] in on_p2)
    v = p1[i]
    paths = (p1[: i + 1], p2[: p2.index(v) + 1])
    system = PathSystem(s, v, paths, INDEPENDENT)
    return IndependentWitness(s, v, system, {"edge_disjoint_paths": [p1, p2], "edge_connectivity": lam})


def tree_median(tree: SpanningTree, s1: str, s2: str, s3: str) -> str:
    """The vertex shared by the s1-s3 and s2-s3 tree paths that is closest to s2.

    It lies on all three pairwise tree paths, and the tree paths from s1, s2,
    s3 to it meet only there.
    """
    if len({s1, s2, s3}) != 3:
        raise ValueError(f"tree_median needs three distinct vertices, got {s1}, {s2}, {s3}")
    p13 = set(tree.tree_path(s1, s3))
    return next(x for x in tree.tree_path(s2, s3) if x in p13)


def find_three_independent(g: Graph, s: str, t: str) -> IndependentWitness:
    """Three independent paths from s to a tree median of s's path-neighbours.

    Take three edge-disjoint s-t paths, let s1, s2, s3 be the second vertex of
    each, span the component of G - s holding t with a BFS tree rooted at t,
    and route s -> s_i -> (tree path) -> median.
    """
    paths, lam = _edge_disjoint(g, s, t, 3)
    firsts = [p[1] for p in paths]
    component = component_containing(g, {s}, t)
    tree = bfs_tree(g, t, component)
    v = tree_median(tree, *firsts)
    legs = [tuple(tree.tree_path(si, v)) for si in firsts]
    system = PathSystem(s, v, tuple((s, *leg) for leg in legs), INDEPENDENT)
    trace = {
        "edge_disjoint_paths": paths,
        "edge_connectivity": lam,
        "s_neighbors": firsts,
        "tree": tree,
        "tree_paths": legs,
    }
    return IndependentWitness(s, v, system, trace)
