import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import outerplanar_graphs
from opdkernel import bounds
from opdkernel.errors import PreconditionError
from opdkernel.generators import random_biconnected_outerplanar
from opdkernel.graph import Graph, connected_components, is_connected, replay_trace
from opdkernel.modulator import AugmentedModulator, OpDecomposition, OpResult, build_op_decomposition
from opdkernel.oracle import opd_exact
from opdkernel.protrusion import (
    AGGRESSIVE,
    STRICT,
    Applied,
    BlockCutSummary,
    BlockCutTarget,
    ProtrusionDecomposition,
    _rule4_plan,
    apply_target,
    build_l,
    neighborhood_path,
    reduce_protrusion,
    rule3_irrelevant_edge,
    rule4_replace_component,
    rule5_contract_bump,
    rule6_fan,
    rule7_ladder,
    shrink_blockcut,
)
from opdkernel.reducible import FanPath, LadderMatching
from synth import SYNTHESIZERS, EXACT_RULES, collect, complete, cycle, fan, ladder, path, union


def size(g: Graph) -> int:
    return g.n + g.m


def single_vertex_decomposition(x: int, z=(), k: int = 1) -> OpDecomposition:
    am = AugmentedModulator({x}, set(), {x: set()}, 1)
    return OpDecomposition(am, set(z), k, bounds.f3(1))


def fan_with_k4(n_path: int) -> Graph:
    """Apex n_path+1 over path 1..n_path, also part of a K4."""
    g = fan(n_path)
    apex = n_path + 1
    g = union(g, complete(3, apex + 1))
    for t in range(apex + 1, apex + 4):
        g.add_edge(apex, t)
    return g


# neighborhood paths


def test_neighborhood_path_examples():
    assert neighborhood_path(Graph([(1, 2), (2, 3)]), 1) == [2]
    assert neighborhood_path(fan(5), 6) == [1, 2, 3, 4, 5]
    with pytest.raises(PreconditionError):
        neighborhood_path(Graph(vertices=[1]), 1)


@given(outerplanar_graphs(max_n=40, min_n=2), st.data())
def test_neighborhood_path_is_induced(g, data):
    candidates = [v for v in g.vertices() if g.degree(v) and is_connected(g.without([v]))]
    if not candidates:
        return
    x = data.draw(st.sampled_from(candidates))
    p = neighborhood_path(g, x)
    h = g.without([x])
    assert g.neighbors(x) <= set(p)
    assert len(set(p)) == len(p)
    for i, a in enumerate(p):
        for j in range(i + 1, len(p)):
            assert h.has_edge(a, p[j]) == (j == i + 1)


# rule 3


def test_rule3_few_neighbors():
    g = fan_with_k4(3)
    od = single_vertex_decomposition(4)
    assert rule3_irrelevant_edge(g, 1, od, 4, [1, 2, 3]) is None


def test_rule3_removes_an_edge():
    g = fan_with_k4(12)
    od = single_vertex_decomposition(13)
    applied = rule3_irrelevant_edge(g, 1, od, 13, range(1, 13))
    assert isinstance(applied, Applied) and applied.graph.m == g.m - 1
    assert replay_trace(g, applied.trace) == applied.graph
    assert opd_exact(g, 3) == opd_exact(applied.graph, 3) == 1


def test_rule3_blocked_by_z():
    g = fan_with_k4(12)
    z = {3, 6, 9, 12}
    od = single_vertex_decomposition(13, z)
    # only the path pieces; the triangle with the apex is a K4 and no valid
    # decomposition would leave it as a component
    pieces = [c for c in od.components(g) if set(c) <= set(range(1, 13))]
    assert pieces
    for comp in pieces:
        assert rule3_irrelevant_edge(g, 1, od, 13, comp) is None


# final decomposition


def test_build_l_outerplanar():
    g = union(fan(6), cycle(5, 10))
    od = OpDecomposition(AugmentedModulator(set(), set(), {}, 1), set(), 0, bounds.f3(1))
    pd = build_l(g, 0, od)
    assert isinstance(pd, ProtrusionDecomposition)
    assert pd.l == set()
    assert len(pd.components(g)) == 2


def test_build_l_after_saturation():
    g = fan_with_k4(12)
    g.add_edge(1, 12)
    k = 1
    while True:
        res = build_op_decomposition(g, k)
        assert isinstance(res, OpResult)
        g, k = res.graph, res.k
        step = build_l(g, k, res.decomposition)
        if isinstance(step, ProtrusionDecomposition):
            break
        g = step.graph
    step.validate(g)
    assert step.x <= step.l


def test_f5_regression():
    assert bounds.f3(1) == 678
    assert bounds.f4(1, 678) == 3396
    assert bounds.f5(1, bounds.f3(1)) == 1_646_400


# rule 4


def test_rule4_path_becomes_one_vertex():
    g = path(7)
    comp = set(range(2, 7))
    assert _rule4_plan(g, comp)[0] == "merge"
    applied = rule4_replace_component(g, comp)
    assert applied.graph.n == 3 and applied.graph.m == 2
    assert opd_exact(g, 1) == opd_exact(applied.graph, 1) == 0


def test_rule4_two_paths_become_two_vertices():
    # x = 1, y = 8, paths 1-2-3-4-8 and 1-5-6-7-8 joined by the rung 3-6
    g = Graph([(1, 2), (2, 3), (3, 4), (4, 8), (1, 5), (5, 6), (6, 7), (7, 8), (3, 6)])
    g = union(g, complete(4, 8))
    comp = set(range(2, 8))
    assert _rule4_plan(g, comp)[0] in ("split", "twin")
    applied = rule4_replace_component(g, comp)
    assert applied.graph.n == g.n - 4
    assert replay_trace(g, applied.trace) == applied.graph
    assert opd_exact(g, 3) == opd_exact(applied.graph, 3) == 1


def test_rule4_single_vertex_keeps_size():
    g = path(3)
    applied = rule4_replace_component(g, {2})
    assert applied.graph == g


def test_rule4_preconditions():
    with pytest.raises(PreconditionError):
        rule4_replace_component(cycle(3), {2})
    with pytest.raises(PreconditionError):
        rule4_replace_component(path(5), {1})
    with pytest.raises(PreconditionError):
        # two non-adjacent neighbors but the set is not connected
        rule4_replace_component(cycle(4), {2, 4})


# block-cut shrinking


def triangle_chain(count: int) -> Graph:
    """Triangles t_i on (2i+1, 2i+2, 2i+3) sharing odd vertices."""
    g = Graph()
    for i in range(count):
        a, b, c = 2 * i + 1, 2 * i + 2, 2 * i + 3
        for s, t in [(a, b), (b, c), (a, c)]:
            g.add_edge(s, t)
    return g


def test_shrink_blockcut_triangle():
    g = union(complete(3), Graph([(1, 10), (2, 11)]))
    found = shrink_blockcut(g, {1, 2, 3})
    # the torso keeps the two pendant edges as blocks of their own
    assert isinstance(found, BlockCutSummary) and len(found.blocks) == 3


def test_shrink_blockcut_chain():
    g = triangle_chain(40)
    last = 81
    g.add_edge(1, 100)
    g.add_edge(last, 101)
    comp = set(range(1, last + 1))
    found = shrink_blockcut(g, comp)
    assert isinstance(found, BlockCutTarget) and found.rule in ("rule4", "rule5")
    applied = apply_target(g, found)
    assert size(applied.graph) < size(g)


def test_shrink_blockcut_pendant():
    g = triangle_chain(6)
    g.add_edge(1, 100)
    g.add_edge(13, 101)
    # a pendant branch of two triangles off vertex 5
    for s, t in [(5, 20), (20, 21), (5, 21), (21, 22), (22, 23), (21, 23)]:
        g.add_edge(s, t)
    comp = set(range(1, 14)) | {20, 21, 22, 23}
    found = shrink_blockcut(g, comp)
    assert isinstance(found, BlockCutTarget) and found.rule == "rule2"
    assert found.component <= {20, 21, 22, 23}


# rules 5 to 7


def test_rule5_examples():
    g = Graph([(1, 4), (1, 2), (2, 3), (3, 4)])
    applied = rule5_contract_bump(g, 1, 4, {2, 3})
    assert applied.graph == Graph([(1, 4), (1, 2), (2, 4)])
    k4 = complete(4)
    bump = Graph([(1, 5), (5, 6), (6, 7), (7, 8), (8, 2), (5, 7)])
    g = union(k4, bump)
    applied = rule5_contract_bump(g, 1, 2, {5, 6, 7, 8})
    assert applied.graph.n == 5
    assert opd_exact(g, 2) == opd_exact(applied.graph, 2) == 1
    g = Graph([(1, 2), (1, 3), (2, 3)])
    assert size(rule5_contract_bump(g, 1, 2, {3}).graph) == size(g)
    with pytest.raises(PreconditionError):
        rule5_contract_bump(path(4), 1, 3, {2})


def five_fan() -> tuple[Graph, FanPath]:
    g = fan(5)
    return g, FanPath(6, (1, 2, 3, 4, 5), (1, 2, 3, 4, 5), frozenset({2, 3, 4}))


def test_rule6_examples():
    g, f = five_fan()
    applied = rule6_fan(g, f)
    assert not applied.graph.has_edge(6, 3)
    assert opd_exact(applied.graph, 1) == opd_exact(g, 1) == 0
    glued = union(g, complete(3, 7))
    for t in (7, 8, 9):
        glued.add_edge(1, t)
    applied = rule6_fan(glued, f)
    assert opd_exact(glued, 2) == opd_exact(applied.graph, 2) == 1
    g6 = fan(6)
    with pytest.raises(PreconditionError):
        rule6_fan(g6, FanPath(7, (1, 2, 3, 4, 6), (1, 2, 3, 4, 5, 6), frozenset({2, 3, 4, 5})))


def strip() -> tuple[Graph, LadderMatching]:
    g = ladder(8)
    rungs = tuple((i, i + 8) for i in range(7))
    comp = frozenset(set(range(1, 6)) | set(range(9, 14)))
    return g, LadderMatching(rungs, comp)


def test_rule7_examples():
    g, lad = strip()
    # rung 0-8 and 6-14 bound the component; the eighth rung sits outside
    g2 = g.without([7, 15])
    applied = rule7_ladder(g2, lad)
    assert not applied.graph.has_edge(3, 11)
    assert opd_exact(g2, 1) == opd_exact(applied.graph, 1) == 0
    capped = union(g2, complete(2, 20))
    for t in (20, 21):
        capped.add_edge(6, t)
        capped.add_edge(14, t)
    applied = rule7_ladder(capped, lad)
    assert opd_exact(capped, 2) == opd_exact(applied.graph, 2) == 1
    shuffled = LadderMatching((lad.edges[0], lad.edges[2], lad.edges[1]) + lad.edges[3:], lad.component)
    with pytest.raises(PreconditionError):
        rule7_ladder(g2, shuffled)


# protrusion reduction


def test_reduce_protrusion_pendant_fan():
    g = union(complete(4), fan(14, 5))
    g.add_edge(1, 5)
    comp = set(range(5, 20))
    applied = reduce_protrusion(g, comp)
    assert size(applied.graph) < size(g)
    assert opd_exact(g, 2) == opd_exact(applied.graph, 2) == 1


def test_reduce_protrusion_strict_threshold():
    g = union(complete(4), fan(14, 5))
    g.add_edge(1, 5)
    assert reduce_protrusion(g, set(range(5, 20)), STRICT) is None
    with pytest.raises(PreconditionError):
        reduce_protrusion(g, set(range(5, 20)), "eager")
    with pytest.raises(PreconditionError):
        # the apex of the K4 sees three fan vertices
        h = g.copy()
        h.add_edge(1, 10)
        h.add_edge(1, 15)
        reduce_protrusion(h, set(range(5, 20)))


@pytest.mark.parametrize("seed", range(5))
def test_reduce_protrusion_terminates(seed):
    rng = random.Random(seed)
    g = union(complete(4), random_biconnected_outerplanar(rng, 60, 0.5, first=5))
    # 1 and 2 are adjacent, so they must meet the protrusion at one vertex
    a = rng.randint(5, 64)
    g.add_edge(1, a)
    g.add_edge(2, a)
    while True:
        comps = [c for c in connected_components(g, g.vertex_set() - {1, 2, 3, 4})]
        applied = None
        for comp in comps:
            applied = reduce_protrusion(g, comp, AGGRESSIVE)
            if applied is not None:
                break
        if applied is None:
            break
        assert size(applied.graph) < size(g)
        g = applied.graph
    assert g.n < 20


# every rule on synthesized firings


@pytest.mark.parametrize("rule", sorted(SYNTHESIZERS))
def test_rule_contracts(rule):
    for f in collect(rule, 20, start=10_000):
        assert size(f.after) < size(f.before)
        a = opd_exact(f.before, f.before.n)
        b = opd_exact(f.after, f.after.n)
        if rule in EXACT_RULES:
            assert a == b
        elif a <= f.k_before:
            assert a == b
        else:
            assert b > f.k_after
