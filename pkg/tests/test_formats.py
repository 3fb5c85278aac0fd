import random

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from conftest import random_graph, to_nx
from twforge.formats import (
    FormatError,
    decode_dimacs,
    decode_edgelist,
    decode_graph6,
    encode_dimacs,
    encode_edgelist,
    encode_graph6,
    sniff,
)
from twforge.graph import Graph


def test_graph6_matches_networkx_bytes():
    rng = random.Random(51)
    for _ in range(100):
        g = random_graph(rng, rng.randint(1, 70), rng.random())
        want = nx.to_graph6_bytes(to_nx(g), header=False).strip()
        assert encode_graph6(g) == want
        assert decode_graph6(want) == g


def test_graph6_long_size_field():
    g = Graph(300, [(0, 299), (5, 6)])
    data = encode_graph6(g)
    assert data[0] == 126
    assert decode_graph6(data) == g
    assert decode_graph6(b">>graph6<<" + data) == g


@pytest.mark.parametrize("bad", [b"", b"A\x01", b"C~~", b"~??"])
def test_graph6_errors(bad):
    with pytest.raises(FormatError):
        decode_graph6(bad)


@given(st.integers(0, 12).flatmap(lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0)))))))
def test_text_formats_round_trip(case):
    n, pairs = case
    g = Graph(n, [(u, v) for u, v in pairs if u != v])
    assert decode_dimacs(encode_dimacs(g)) == g
    assert decode_edgelist(encode_edgelist(g)) == g


def test_dimacs_errors():
    with pytest.raises(FormatError):
        decode_dimacs(b"e 1 2\n")
    with pytest.raises(FormatError):
        decode_dimacs(b"p edge 3 2\ne 1 2\n")
    with pytest.raises(FormatError):
        decode_dimacs(b"p edge 3 1\ne 1 4\n")
    with pytest.raises(FormatError):
        decode_dimacs(b"p edge 3 1\nx 1 2\n")
    assert decode_dimacs(b"c comment\np edge 3 1\ne 1 2\n") == Graph(3, [(0, 1)])


def test_edgelist_errors():
    with pytest.raises(FormatError):
        decode_edgelist(b"")
    with pytest.raises(FormatError):
        decode_edgelist(b"3\n0 5\n")
    with pytest.raises(FormatError):
        decode_edgelist(b"3\n0 x\n")


def test_sniff():
    g = Graph(4, [(0, 1), (2, 3)])
    assert sniff(encode_graph6(g)) == "graph6"
    assert sniff(encode_dimacs(g)) == "dimacs"
    assert sniff(encode_edgelist(g)) == "edgelist"
