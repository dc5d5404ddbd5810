import random

import pytest
from hypothesis import given, settings, strategies as st

from conformity import (
    AttributedGraph,
    DataError,
    ParseError,
    build_graph,
    distance_shells,
    load_attributes,
    load_edge_list,
    load_graph,
)
from conformity.graph import parse_edge_rows, write_attributes, write_edge_list

from .conftest import make_graph
from .oracles import floyd_warshall, random_attributed


def test_edge_rows_dedup_and_self_loops():
    el = parse_edge_rows(["a b", "b a", "a a"])
    assert el.edges == (("a", "b"),)
    assert el.self_loops == 1
    assert el.duplicates == 1


def test_edge_rows_plain():
    assert parse_edge_rows(["1 2", "2 3"]).edges == (("1", "2"), ("2", "3"))


def test_edge_rows_single_column():
    with pytest.raises(ParseError, match="line 1"):
        parse_edge_rows(["1"])


def test_edge_rows_empty():
    with pytest.raises(ParseError, match="empty"):
        parse_edge_rows(["", "# only a comment"])


@pytest.mark.parametrize("text,delimiter", [
    ("a,b\nb,c\n", "auto"),
    ("a\tb\nb\tc\n", "auto"),
    ("a  b\nb c\n", "auto"),
    ("a;b\nb;c\n", ";"),
    ("a b\nb c\n", "whitespace"),
])
def test_load_edge_list_delimiters(tmp_path, text, delimiter):
    p = tmp_path / "e.txt"
    p.write_text(text)
    assert load_edge_list(p, delimiter=delimiter).edges == (("a", "b"), ("b", "c"))


def test_load_edge_list_header_and_line_number(tmp_path):
    p = tmp_path / "e.csv"
    p.write_text("source,target\nx,y\n")
    assert load_edge_list(p, header=True).edges == (("x", "y"),)
    p.write_text("x,y\ny\n")
    with pytest.raises(ParseError, match="line 2"):
        load_edge_list(p)


def test_load_edge_list_missing_file(tmp_path):
    with pytest.raises(DataError):
        load_edge_list(tmp_path / "absent.csv")


def test_load_attributes(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("id,gender\nn1,male\nn2,\n")
    assert load_attributes(p) == {"n1": {"gender": "male"}, "n2": {"gender": "missing"}}


def test_load_attributes_short_row_is_missing(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("id,gender,year\nn1,male\n")
    assert load_attributes(p) == {"n1": {"gender": "male", "year": "missing"}}


def test_load_attributes_duplicate_id(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("id,gender\nn1,male\nn1,female\n")
    with pytest.raises(DataError, match="duplicate"):
        load_attributes(p)


def test_load_attributes_unknown_column(tmp_path):
    p = tmp_path / "a.csv"
    p.write_text("id,gender\nn1,male\n")
    with pytest.raises(ParseError, match="year"):
        load_attributes(p, attribute_names=["year"])
    with pytest.raises(ParseError, match="id column"):
        load_attributes(p, id_column="node")


def test_load_attributes_tab_and_selection(tmp_path):
    p = tmp_path / "a.tsv"
    p.write_text("gender\tid\tdorm\nf\tx\td1\n")
    assert load_attributes(p, attribute_names=["dorm"]) == {"x": {"dorm": "d1"}}


def test_build_graph_basic():
    g = build_graph([("a", "b")], {"a": {"c": "red"}, "b": {"c": "blue"}}, ["c"])
    assert g.ids == ("a", "b")
    assert g.adjacency == ((1,), (0,))
    assert g.n_edges == 1


def test_build_graph_missing_endpoint():
    with pytest.raises(DataError, match="'b'"):
        build_graph([("a", "b")], {"a": {"c": "red"}}, ["c"])


def test_build_graph_missing_attribute_value():
    with pytest.raises(DataError, match="'b'"):
        build_graph([("a", "b")], {"a": {"c": "red"}, "b": {}}, ["c"])


def test_build_graph_isolated_nodes():
    g = build_graph([], {x: {"c": "k"} for x in "xyz"}, ["c"])
    assert g.n_nodes == 3 and g.n_edges == 0


def test_lexicographic_indexing():
    g = build_graph([("10", "2"), ("2", "1")], {x: {"c": "k"} for x in ["2", "10", "1"]}, ["c"])
    assert g.ids == ("1", "10", "2")


def test_graph_validation_rejects_asymmetry():
    with pytest.raises(DataError, match="symmetric"):
        AttributedGraph(("a", "b"), ((1,), ()), ("c",), ({"c": "x"}, {"c": "x"}))
    with pytest.raises(DataError, match="self-loop"):
        AttributedGraph(("a",), ((0,),), ("c",), ({"c": "x"},))


def test_shells_path():
    g = make_graph(3, [(0, 1), (1, 2)], ["x"] * 3)
    assert distance_shells(g, 0).shells == ((1, (1,)), (2, (2,)))


def test_shells_star():
    g = make_graph(5, [(0, i) for i in range(1, 5)], ["x"] * 5)
    assert distance_shells(g, 0).shells == ((1, (1, 2, 3, 4)),)


def test_shells_disconnected():
    g = make_graph(4, [(0, 1), (2, 3)], ["x"] * 4)
    assert distance_shells(g, 0).shells == ((1, (1,)),)


def test_shells_isolated_and_bad_source():
    g = make_graph(2, [], ["x", "y"])
    assert distance_shells(g, 0).shells == ()
    with pytest.raises(DataError):
        distance_shells(g, 2)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_shells_match_all_pairs_oracle(seed):
    n, edges, labels = random_attributed(random.Random(seed), n_max=50)
    g = make_graph(n, edges, labels)
    dist = floyd_warshall(n, edges)
    for u in range(n):
        shells = distance_shells(g, u).shells
        ds = [d for d, _ in shells]
        assert ds == sorted(ds) and len(set(ds)) == len(ds)
        assert all(members for _, members in shells)
        got = {v: d for d, members in shells for v in members}
        want = {v: dist[u][v] for v in range(n) if v != u and dist[u][v] != float("inf")}
        assert got == want
        # symmetry of membership
        for v, d in got.items():
            assert dict((w, e) for e, ms in distance_shells(g, v).shells for w in ms)[u] == d


def test_reload_is_identical(tmp_path):
    g = make_graph(6, [(0, 1), (1, 2), (3, 4)], ["a", "b", "", "a", "c", "a"])
    write_edge_list(g, tmp_path / "e.csv")
    write_attributes(g, tmp_path / "a.csv")
    first = load_graph(tmp_path / "e.csv", tmp_path / "a.csv")
    second = load_graph(tmp_path / "e.csv", tmp_path / "a.csv")
    assert first == second
    assert first.adjacency == g.adjacency
    # empty label on write reloads as "missing"
    assert first.attributes[2]["label"] == "missing"
