import json

import pytest
from hypothesis import given

from conftest import small_graphs
from diamondpaths.diamond import generate_diamond
from diamondpaths.errors import GraphError, ParseError
from diamondpaths.graph import (
    DOT,
    STRUCTURED,
    bfs_tree,
    build_graph,
    component_containing,
    parse_graph,
    serialize_graph,
)


def test_build_single_edge():
    g = build_graph([("s", "t")])
    assert g.vertices == ("s", "t")
    assert g.edges == {("s", "t")}


def test_build_isolated_vertex():
    g = build_graph([], ["a"])
    assert len(g) == 1 and not g.edges


def test_build_collapses_reversed_duplicate():
    g = build_graph([("a", "b"), ("b", "a")])
    assert len(g) == 2 and len(g.edges) == 1


def test_build_strict_rejects_duplicate():
    with pytest.raises(GraphError, match="parallel"):
        build_graph([("a", "b"), ("b", "a")], collapse=False)


def test_build_rejects_self_loop():
    with pytest.raises(GraphError, match="'x', 'x'"):
        build_graph([("a", "b"), ("x", "x")])


@pytest.mark.parametrize("bad", ["", "a b", "a#b", 3])
def test_bad_vertex_ids(bad):
    with pytest.raises(GraphError):
        build_graph([], [bad])


def test_parse_single_edge():
    assert parse_graph("s t\n") == build_graph([("s", "t")])


def test_parse_path():
    g = parse_graph("a b\nb c\n")
    assert g.neighbors("b") == ("a", "c")
    assert len(g.edges) == 2


def test_parse_comments_blank_lines_and_isolated():
    g = parse_graph("# header\n\na b\n  \nz\n")
    assert g.vertices == ("a", "b", "z")
    assert g.degree("z") == 0


def test_parse_self_loop_reports_line():
    with pytest.raises(ParseError) as info:
        parse_graph("a b\na a\n")
    assert info.value.line == 2


def test_parse_malformed_line():
    with pytest.raises(ParseError, match="line 1"):
        parse_graph("a b c\n")


def test_parse_duplicate_edge_strict_and_collapsed():
    with pytest.raises(ParseError, match="line 2"):
        parse_graph("a b\nb a\n")
    assert len(parse_graph("a b\nb a\n", collapse=True).edges) == 1


def test_serialize_single_edge():
    assert serialize_graph(build_graph([("t", "s")])) == "s t\n"


def test_serialize_empty():
    assert serialize_graph(build_graph([])) == ""


def test_serialize_structured_fields():
    doc = json.loads(serialize_graph(build_graph([("b", "a")], ["c"]), STRUCTURED))
    assert doc == {"vertices": ["a", "b", "c"], "edges": [["a", "b"]]}


def test_structured_rejects_missing_fields():
    with pytest.raises(ParseError):
        parse_graph('{"vertices": []}', STRUCTURED)


def test_dot_export():
    text = serialize_graph(build_graph([("a", "b")], ["c"]), DOT)
    assert text == 'graph G {\n  "c";\n  "a" -- "b";\n}\n'


@pytest.mark.parametrize("fmt", ["edge-list", STRUCTURED])
def test_diamond_round_trip(fmt):
    g2, _ = generate_diamond(2)
    assert parse_graph(serialize_graph(g2, fmt), fmt) == g2


@given(small_graphs(min_vertices=0))
def test_round_trip_property(g):
    for fmt in ("edge-list", STRUCTURED):
        text = serialize_graph(g, fmt)
        assert parse_graph(text, fmt) == g
        assert serialize_graph(parse_graph(text, fmt), fmt) == text


@given(small_graphs(min_vertices=0))
def test_graph_invariants(g):
    for v in g.vertices:
        nbrs = g.neighbors(v)
        assert list(nbrs) == sorted(set(nbrs))
        assert v not in nbrs
        assert all(v in g.neighbors(w) for w in nbrs)
    assert all(a < b and a in g and b in g for a, b in g.edges)


def test_component_triangle():
    tri = build_graph([("a", "b"), ("b", "c"), ("a", "c")])
    assert component_containing(tri, {"a"}, "b") == {"b", "c"}


def test_component_diamond_order_one():
    g1, _ = generate_diamond(1)
    assert component_containing(g1, {"s"}, "t") == {"t", "/p", "/q"}


def test_component_disconnected():
    g = build_graph([("a", "b"), ("c", "d")])
    assert component_containing(g, set(), "a") == {"a", "b"}


def test_component_errors():
    g = build_graph([("a", "b")])
    with pytest.raises(GraphError):
        component_containing(g, {"a"}, "a")
    with pytest.raises(GraphError):
        component_containing(g, set(), "zz")


@given(small_graphs())
def test_component_is_equivalence_class(g):
    for v in g.vertices:
        comp = component_containing(g, set(), v)
        assert all(component_containing(g, set(), w) == comp for w in comp)


def test_bfs_path():
    tree = bfs_tree(build_graph([("a", "b"), ("b", "c")]), "a")
    assert tree.parent == {"b": "a", "c": "b"}


def test_bfs_cycle_lexicographic():
    cycle = build_graph([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
    assert bfs_tree(cycle, "a").parent == {"b": "a", "d": "a", "c": "b"}


def test_bfs_single_vertex():
    tree = bfs_tree(build_graph([], ["a"]), "a")
    assert tree.parent == {} and tree.covered == {"a"}


def test_bfs_disconnected_restriction_names_vertex():
    g = build_graph([("a", "b"), ("c", "d")])
    with pytest.raises(GraphError, match="'c'"):
        bfs_tree(g, "a", {"a", "b", "c"})


@given(small_graphs(min_vertices=1))
def test_bfs_tree_properties(g):
    root = g.vertices[0]
    comp = component_containing(g, set(), root)
    tree = bfs_tree(g, root, comp)
    assert tree.covered == comp
    assert len(tree.parent) == len(comp) - 1
    for child, parent in tree.parent.items():
        assert g.has_edge(child, parent)
        assert tree.path_to_root(child)[-1] == root
