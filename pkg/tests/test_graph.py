from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from opdkernel.errors import PreconditionError
from opdkernel.graph import (
    ContractEdge,
    DeleteEdge,
    DeleteVertex,
    Graph,
    MinorTrace,
    biconnected_components,
    block_cut_tree,
    component_of,
    connected_components,
    contract_edge,
    max_disjoint_paths,
    replay_trace,
)
from synth import complete, k23, path


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices())
    h.add_edges_from(g.edges())
    return h


def test_contract_triangle_keeps_smaller_label():
    g = Graph([(1, 2), (1, 3), (2, 3)])
    h, step = contract_edge(g, 1, 2)
    assert step == ContractEdge(1, 2, 1)
    assert h.vertices() == [1, 3]
    assert h.edges() == [(1, 3)]


def test_contract_path():
    h, _ = contract_edge(path(3), 2, 3)
    assert h.edges() == [(1, 2)]


def test_contract_k4_gives_triangle():
    for u, v in complete(4).edges():
        h, _ = contract_edge(complete(4), u, v)
        assert h.n == 3 and h == Graph(combinations(h.vertices(), 2))


def test_contract_missing_edge():
    with pytest.raises(PreconditionError):
        contract_edge(path(3), 1, 3)


def test_no_self_loops_or_parallel_edges():
    g = Graph([(1, 2), (2, 3), (1, 3)])
    with pytest.raises(PreconditionError):
        g.add_edge(2, 2)
    g.add_edge(1, 2)
    assert g.m == 3


def test_connected_components_examples():
    assert connected_components(Graph()) == []
    two = Graph([(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
    assert connected_components(two) == [[1, 2, 3], [4, 5, 6]]
    assert len(connected_components(k23())) == 1


def test_block_cut_tree_examples():
    t = block_cut_tree(complete(3))
    assert len(t.blocks) == 1 and not t.articulation_points
    bowtie = Graph([(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)])
    t = block_cut_tree(bowtie)
    assert len(t.blocks) == 2 and t.articulation_points == {3}
    t = block_cut_tree(path(4))
    assert len(t.blocks) == 3 and t.articulation_points == {2, 3}
    assert t.neighbors(("A", 2)) == [("B", 0), ("B", 1)]


def test_block_cut_tree_needs_connected_graph():
    with pytest.raises(PreconditionError):
        block_cut_tree(Graph(vertices=[1, 2]))


def test_max_disjoint_paths_examples():
    g = k23()
    assert max_disjoint_paths(g, 1, 2, 3) == (3, None)
    assert max_disjoint_paths(path(3), 1, 3, 5) == (1, {2})
    for u, v in combinations(range(1, 5), 2):
        assert max_disjoint_paths(complete(4), u, v, 10) == (3, None)
    with pytest.raises(PreconditionError):
        max_disjoint_paths(path(3), 1, 1, 2)


def test_replay_examples():
    g = complete(4)
    assert replay_trace(g, MinorTrace()) == g
    assert replay_trace(g, [DeleteVertex(4)]) == complete(3)


def test_replay_names_the_bad_step():
    with pytest.raises(PreconditionError, match="step 1"):
        replay_trace(path(3), [DeleteEdge(1, 2), DeleteEdge(1, 2)])


@given(graphs(max_n=9), st.data())
def test_contract_degree(g, data):
    if not g.m:
        return
    u, v = data.draw(st.sampled_from(g.edges()))
    h, step = contract_edge(g, u, v)
    assert h.n == g.n - 1
    assert h.degree(step.into) == len((g.neighbors(u) | g.neighbors(v)) - {u, v})
    assert step.into == min(u, v)


@given(graphs(max_n=10))
def test_biconnected_components_against_brute_force(g):
    blocks, cuts = biconnected_components(g)
    base = len(connected_components(g))
    brute = {v for v in g.vertices() if len(connected_components(g.without([v]))) > base}
    assert cuts == brute
    owner = {}
    for i, b in enumerate(blocks):
        for u, v in g.edges():
            if u in b and v in b:
                assert (u, v) not in owner
                owner[u, v] = i
    assert set(owner) == set(g.edges())
    expected = {frozenset(b) for b in nx.biconnected_components(to_nx(g))}
    assert {b for b in blocks if len(b) > 1} == expected


@given(graphs(max_n=8, min_n=2), st.data())
def test_max_disjoint_paths_against_menger(g, data):
    u, v = data.draw(st.sampled_from(list(combinations(g.vertices(), 2))))
    cap = data.draw(st.integers(1, 7))
    count, sep = max_disjoint_paths(g, u, v, cap)
    h = to_nx(g)
    direct = h.has_edge(u, v)
    h.remove_edges_from([(u, v)])
    true = nx.algorithms.connectivity.local_node_connectivity(h, u, v) + direct
    assert count == min(cap, true)
    if count < cap and not direct:
        assert sep is not None and len(sep) == count and not sep & {u, v}
        assert v not in component_of(g, u, g.vertex_set() - sep)


@given(graphs(max_n=8), st.data())
def test_trace_replay_is_exact(g, data):
    h = g.copy()
    trace = MinorTrace()
    for _ in range(data.draw(st.integers(0, 4))):
        if not h.n:
            break
        kind = data.draw(st.sampled_from(["dv", "de", "ce"]))
        if kind == "dv":
            trace.delete_vertex(h, data.draw(st.sampled_from(h.vertices())))
        elif h.m:
            u, v = data.draw(st.sampled_from(h.edges()))
            if kind == "de":
                trace.delete_edge(h, u, v)
            else:
                trace.contract(h, u, v)
    assert replay_trace(g, trace) == h
