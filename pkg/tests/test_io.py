from __future__ import annotations

import json
import warnings
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tfgallai.graph import Graph, complete_graph, cycle_graph, path_graph
from tfgallai.io import (
    DuplicateEdgeWarning,
    EdgeListError,
    Graph6Error,
    ReportRecord,
    edgelist_format,
    edgelist_parse,
    graph6_decode,
    graph6_encode,
    guess_format,
    read_graphs,
)


@st.composite
def graphs(draw, max_n=70):
    n = draw(st.integers(0, max_n))
    if n < 2:
        return Graph(n)
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    es = draw(st.lists(pairs, max_size=3 * n))
    return Graph(n, frozenset((min(a, b), max(a, b)) for a, b in es))


def nx_encode(g: Graph) -> str:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return nx.to_graph6_bytes(h, header=False).decode().strip()


# -- graph6 ---------------------------------------------------------------------------

def test_graph6_examples():
    k4 = graph6_decode("C~")
    assert k4 == complete_graph(4)
    one = graph6_decode("@")
    assert one.n == 1 and one.m == 0
    assert graph6_encode(Graph(0)) == "?"
    assert graph6_decode(">>graph6<<C~") == k4


@settings(max_examples=300, deadline=None)
@given(graphs())
def test_graph6_matches_networkx(g):
    text = graph6_encode(g)
    assert text == nx_encode(g)
    h = nx.from_graph6_bytes(text.encode())
    assert {tuple(sorted(e)) for e in h.edges} == set(g.edges) and h.number_of_nodes() == g.n
    assert graph6_decode(text) == g


def test_graph6_large_order_header():
    g = path_graph(100)
    text = graph6_encode(g)
    assert text[0] == "~" and graph6_decode(text) == g and text == nx_encode(g)


@pytest.mark.parametrize(
    "text, offset",
    [
        ("C~ ", None),
        ("C\x7f", 1),
        ("C", 1),
        ("C~~", 2),
        ("A`", 1),
        ("", 0),
        ("~?", 2),
    ],
)
def test_graph6_errors(text, offset):
    if offset is None:  # trailing whitespace is stripped; still valid
        assert graph6_decode(text) == complete_graph(4)
        return
    with pytest.raises(Graph6Error) as info:
        graph6_decode(text)
    assert info.value.offset == offset


def test_graph6_error_offset_respects_header():
    with pytest.raises(Graph6Error) as info:
        graph6_decode(">>graph6<<C\x10")
    assert info.value.offset == 11


# -- edge lists -------------------------------------------------------------------------

def test_edgelist_examples():
    assert edgelist_parse("4\n0 1\n1 2\n2 3\n3 0") == cycle_graph(4)
    with pytest.raises(EdgeListError) as info:
        edgelist_parse("2\n0 0")
    assert info.value.line == 2 and "loop" in str(info.value)
    with pytest.warns(DuplicateEdgeWarning):
        g = edgelist_parse("3\n0 1\n0 1")
    assert g.m == 1


@pytest.mark.parametrize(
    "text, line",
    [("3\n0 x", 2), ("3\n0 3", 2), ("3\n0 1 2", 2), ("", 1), ("# only\n-1", 2), ("2 2\n", 1)],
)
def test_edgelist_errors(text, line):
    with pytest.raises(EdgeListError) as info:
        edgelist_parse(text)
    assert info.value.line == line


def test_edgelist_comments_and_blank_lines():
    text = "# header\n5  # order\n\n0 4\n 3 2 # a comment\n"
    assert edgelist_parse(text).edges == {(0, 4), (2, 3)}


@given(graphs(max_n=12))
def test_edgelist_roundtrip(g):
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert edgelist_parse(edgelist_format(g)) == g


def test_read_graphs_and_format_guess():
    assert guess_format("x.g6") == "g6" and guess_format("x.graph6") == "g6"
    assert guess_format("x.txt") == "edgelist"
    assert read_graphs("C~\n\nBg\n", "g6") == [complete_graph(4), path_graph(3)]
    with pytest.raises(ValueError):
        read_graphs("", "sparse6")


# -- report records -----------------------------------------------------------------------

def test_report_record_roundtrip():
    rec = ReportRecord("Cl", 4, 4, 2, 2, [[0, 1, 2], [2, 3, 0]], "exact", 0.5, True)
    line = rec.to_json()
    assert json.loads(line)["pn"] == 2
    assert ReportRecord.from_json(line) == rec
    assert set(json.loads(line)) == {
        "graph", "n", "m", "pn", "bound", "decomposition", "method", "elapsed_ms", "optimal"
    }


def test_graph6_encodes_all_pairs_in_column_order():
    n = 7
    for a, b in combinations(range(n), 2):
        k = b * (b - 1) // 2 + a  # upper triangle, column by column
        body = [63] * 4
        body[k // 6] += 1 << (5 - k % 6)
        text = chr(63 + n) + "".join(map(chr, body))
        g = Graph(n, frozenset({(a, b)}))
        assert graph6_encode(g) == text and graph6_decode(text) == g
