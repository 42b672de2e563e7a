import pytest
from hypothesis import given, settings

from conftest import graph_with_pair, small_graphs
from oracles import brute_edge_disjoint
from diamondpaths.connectivity import (
    DEGREE_BOUND,
    EDGE_DISJOINT,
    INDEPENDENT,
    VERTEX_CUT,
    PathSystem,
    UpperBoundCertificate,
    check_path_system,
    max_edge_disjoint_paths,
    max_independent_paths,
    oracle_max_independent,
    split_vertices,
    verify_cut,
)
from diamondpaths.diamond import generate_diamond
from diamondpaths.errors import GraphError, GraphTooLargeError
from diamondpaths.flow import FlowNetwork
from diamondpaths.graph import build_graph

K4 = build_graph([(a, b) for a in "abcd" for b in "abcd" if a < b])
C4 = build_graph([("s", "a"), ("a", "t"), ("t", "b"), ("b", "s")])


def test_flow_network_undirected_edge_shares_capacity():
    net = FlowNetwork()
    net.add_edge("s", "a")
    net.add_edge("a", "t")
    net.add_edge("s", "t")
    assert net.max_flow("s", "t") == 2
    assert net.decompose("s", "t") == [["s", "a", "t"], ["s", "t"]]


def test_decompose_drops_flow_cycle():
    net = FlowNetwork()
    for a, b in [("s", "a"), ("a", "b"), ("b", "a"), ("a", "t")]:
        net.add_arc(a, b)
    net.flow = {x: {y: 0 for y in row} for x, row in net.cap.items()}
    for a, b in [("s", "a"), ("a", "b"), ("b", "a"), ("a", "t")]:
        net.flow[a][b] += 1
    assert net.decompose("s", "t") == [["s", "a", "t"]]


def test_edge_disjoint_diamond_two():
    g2, _ = generate_diamond(2)
    ps = max_edge_disjoint_paths(g2, "s", "t")
    assert len(ps) == 4 == brute_edge_disjoint(g2, "s", "t")
    assert ps.kind == EDGE_DISJOINT
    assert check_path_system(g2, ps)


def test_edge_disjoint_single_edge():
    assert max_edge_disjoint_paths(build_graph([("s", "t")]), "s", "t").paths == (("s", "t"),)


def test_edge_disjoint_triangle():
    tri = build_graph([("s", "t"), ("s", "c"), ("c", "t")])
    ps = max_edge_disjoint_paths(tri, "s", "t")
    assert set(ps.paths) == {("s", "t"), ("s", "c", "t")}


def test_endpoint_errors():
    with pytest.raises(GraphError):
        max_edge_disjoint_paths(C4, "s", "s")
    with pytest.raises(GraphError):
        max_independent_paths(C4, "s", "zz")


@given(graph_with_pair())
@settings(max_examples=150)
def test_edge_disjoint_matches_brute_force(case):
    g, s, t = case
    ps = max_edge_disjoint_paths(g, s, t)
    assert check_path_system(g, ps).failures == []
    assert len(ps) == brute_edge_disjoint(g, s, t)


def test_independent_four_cycle():
    ps, cert = max_independent_paths(C4, "s", "t")
    assert len(ps) == 2
    assert cert.variant == VERTEX_CUT and cert.cut == ("a", "b") and cert.bound == 2


def test_independent_diamond_two():
    g2, _ = generate_diamond(2)
    ps, cert = max_independent_paths(g2, "s", "t")
    assert len(ps) == 2
    assert cert.cut == ("/p", "/q")
    assert verify_cut(g2, "s", "t", cert)


@pytest.mark.parametrize("u,v", [("a", "b"), ("a", "d"), ("c", "d")])
def test_independent_k4(u, v):
    ps, cert = max_independent_paths(K4, u, v)
    assert len(ps) == 3 == oracle_max_independent(K4, u, v)
    assert cert.direct_edge and cert.bound == 3 and len(cert.cut) == 2
    assert verify_cut(K4, u, v, cert)


def test_split_vertices_shape():
    net = split_vertices(C4, "s", "t")
    assert len(net.nodes) == 2 * (len(C4) - 2) + 2
    assert net.cap[("a", "in")][("a", "out")] == 1
    assert net.max_flow(("s", ""), ("t", "")) == 2


def test_split_vertices_single_interior():
    path = build_graph([("a", "u"), ("u", "b")])
    net = split_vertices(path, "a", "b")
    assert net.max_flow(("a", ""), ("b", "")) == 1


def test_split_vertices_k4():
    net = split_vertices(K4, "a", "b")
    assert net.max_flow(("a", ""), ("b", "")) == 3


def test_check_path_system_valid():
    g = build_graph([("s", "a"), ("a", "t"), ("s", "b"), ("b", "t")])
    assert check_path_system(g, PathSystem("s", "t", (("s", "a", "t"), ("s", "b", "t"))))


def test_check_path_system_shared_interior():
    g = build_graph([("s", "a"), ("a", "t"), ("a", "b"), ("b", "t")])
    verdict = check_path_system(g, PathSystem("s", "t", (("s", "a", "t"), ("s", "a", "b", "t"))))
    assert not verdict
    assert any("interior vertex a" in f for f in verdict.failures)


def test_check_path_system_wrong_endpoint():
    g = build_graph([("s", "a"), ("a", "t")])
    verdict = check_path_system(g, PathSystem("s", "t", (("s", "a", "t"), ("a", "t"))))
    assert any("expected s..t" in f for f in verdict.failures)


def test_check_path_system_edge_kind_allows_shared_vertex():
    g = build_graph([("s", "a"), ("a", "t"), ("s", "b"), ("b", "a"), ("a", "c"), ("c", "t")])
    ps = PathSystem("s", "t", (("s", "a", "t"), ("s", "b", "a", "c", "t")), EDGE_DISJOINT)
    assert check_path_system(g, ps)
    assert not check_path_system(g, PathSystem("s", "t", ps.paths, INDEPENDENT))


def test_check_path_system_non_edge_and_repeat():
    g = build_graph([("s", "a"), ("a", "t")])
    verdict = check_path_system(g, PathSystem("s", "t", (("s", "t"), ("s", "a", "s", "a", "t"))))
    assert any("non-edge" in f for f in verdict.failures)
    assert any("repeats" in f for f in verdict.failures)


def test_verify_cut_diamond_two():
    g2, _ = generate_diamond(2)
    cert = UpperBoundCertificate(VERTEX_CUT, 2, ("/p", "/q"))
    assert verify_cut(g2, "s", "t", cert)


def test_verify_cut_rejects_half_cut():
    g1, _ = generate_diamond(1)
    assert not verify_cut(g1, "s", "t", UpperBoundCertificate(VERTEX_CUT, 1, ("/p",)))


def test_verify_cut_degree_bound_single_edge():
    g = build_graph([("u", "v")])
    assert verify_cut(g, "u", "v", UpperBoundCertificate(DEGREE_BOUND, 1, witness_vertex="u"))
    assert not verify_cut(g, "u", "v", UpperBoundCertificate(DEGREE_BOUND, 2, witness_vertex="u"))


def test_verify_cut_degree_bound_needs_adjacency():
    assert not verify_cut(C4, "s", "t", UpperBoundCertificate(DEGREE_BOUND, 2, witness_vertex="s"))


def test_oracle_small_cases():
    assert oracle_max_independent(C4, "s", "t") == 2
    assert oracle_max_independent(build_graph([("u", "v")]), "u", "v") == 1


def test_oracle_size_guard():
    big = build_graph([(f"x{i}", f"x{i + 1}") for i in range(12)])
    with pytest.raises(GraphTooLargeError):
        oracle_max_independent(big, "x0", "x1")


@given(graph_with_pair())
@settings(max_examples=200)
def test_independent_paths_properties(case):
    g, u, v = case
    ps, cert = max_independent_paths(g, u, v)
    assert check_path_system(g, ps).failures == []
    assert verify_cut(g, u, v, cert).failures == []
    assert len(ps) == oracle_max_independent(g, u, v)
    assert len(ps) == cert.bound
    if not g.has_edge(u, v):
        assert len(cert.cut) == len(ps)
    assert len(ps) <= len(max_edge_disjoint_paths(g, u, v))


@given(small_graphs())
def test_determinism(g):
    for u in g.vertices[:2]:
        for v in g.vertices:
            if u != v:
                assert max_independent_paths(g, u, v) == max_independent_paths(g, u, v)
                assert max_edge_disjoint_paths(g, u, v) == max_edge_disjoint_paths(g, u, v)


def test_serialization_round_trip():
    ps, cert = max_independent_paths(K4, "a", "b")
    assert PathSystem.from_dict(ps.to_dict()) == ps
    assert UpperBoundCertificate.from_dict(cert.to_dict()) == cert
