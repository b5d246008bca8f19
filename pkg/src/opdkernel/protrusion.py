"""Protrusion decomposition and the rules that shrink protrusions.

After the irrelevant-edge rule every modulator vertex sees few vertices of
each component, so the set L = X + Z' (Z' closes Z + N(X) under separators)
leaves components of g - L that are outerplanar with at most four
neighbors. Those components are protrusions. Their block-cut trees are
shrunk by pendant removal and by replacing chains with one or two vertices,
and their large blocks are cut down via the structures in `reducible`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from . import bounds
from .errors import InternalError, PreconditionError
from .graph import (
    Graph,
    MinorTrace,
    block_cut_tree,
    component_of,
    connected_components,
    is_connected,
    neighborhood,
    shortest_path,
    torso,
)
from .modulator import OpDecomposition, rule2_remove_pendant
from .outerplanar import is_outerplanar
from .reducible import FanPath, LadderMatching, SmallCutPair, find_reducible_structure
from .treedecomp import RootedTree, expand_separator, lca_closure

AGGRESSIVE = "aggressive"
STRICT = "strict"


@dataclass
class Applied:
    """A rule fired. g is the new graph and trace the steps taken."""

    rule: str
    graph: Graph
    trace: MinorTrace


# irrelevant edges


def neighborhood_path(g: Graph, x: int) -> list[int]:
    """Induced path in g - x through every neighbor of x.

    Prunes a BFS tree of g - x down to the neighbors of x, then shortcuts
    each stretch between consecutive neighbors.
    """
    targets = g.neighbors(x)
    if not targets:
        raise PreconditionError(f"vertex {x} has no neighbors")
    if len(targets) == 1:
        return [next(iter(targets))]
    h = g.without([x])
    root = min(targets)
    parent = {root: None}
    queue = deque([root])
    while queue:
        a = queue.popleft()
        for b in sorted(h.neighbors(a)):
            if b not in parent:
                parent[b] = a
                queue.append(b)
    if not targets <= parent.keys():
        raise PreconditionError("neighbors of x are not connected in g - x")
    keep = {root}
    for t in targets:
        while t not in keep:
            keep.add(t)
            t = parent[t]
    tree_adj = {v: [] for v in keep}
    for v in keep:
        p = parent[v]
        if p is not None:
            tree_adj[v].append(p)
            tree_adj[p].append(v)
    ends = sorted(v for v in keep if len(tree_adj[v]) == 1)
    if len(ends) != 2 or any(len(a) > 2 for a in tree_adj.values()):
        raise InternalError("pruned search tree is not a path")
    walk = [ends[0]]
    prev = None
    while len(walk) < len(keep):
        nxt = next(w for w in tree_adj[walk[-1]] if w != prev)
        prev = walk[-1]
        walk.append(nxt)
    pos = {v: i for i, v in enumerate(walk)}
    # index of the next neighbor of x at or after each position
    upcoming = [0] * len(walk)
    nxt_t = len(walk)
    for i in range(len(walk) - 1, -1, -1):
        upcoming[i] = nxt_t
        if walk[i] in targets:
            nxt_t = i
    out = [walk[0]]
    i = 0
    while i < len(walk) - 1:
        limit = upcoming[i]
        j = max(pos[w] for w in h.neighbors(walk[i]) if w in pos and i < pos[w] <= limit)
        out.append(walk[j])
        i = j
    _check_induced_path(h, out, targets)
    return out


def _check_induced_path(h: Graph, path: list[int], must: set[int]) -> None:
    pos = {v: i for i, v in enumerate(path)}
    if len(pos) != len(path) or not must <= pos.keys():
        raise InternalError("neighborhood path misses a neighbor")
    for v in path:
        for w in h.neighbors(v):
            if w in pos and abs(pos[w] - pos[v]) > 1:
                raise InternalError("neighborhood path is not induced")


def rule3_irrelevant_edge(g: Graph, k: int, od: OpDecomposition, x: int, comp) -> Applied | None:
    """Delete one edge from x into a component where x has many neighbors.

    With the neighbors v1..vl of x in path order, the edge x-v(i+2) goes as
    soon as the part of the component between v(i) and v(i+4) avoids Z.
    Returns None when no such window exists; x then has at most
    NEIGHBOR_LIMIT neighbors in the component.
    """
    comp = set(comp)
    if x not in od.x or not neighborhood(g, comp) & {x}:
        return None
    plus = g.subgraph(comp | (neighborhood(g, comp) & od.z) | {x})
    path = neighborhood_path(plus, x)
    nbrs = [v for v in path if plus.has_edge(x, v)]
    for i in range(len(nbrs) - 4):
        a, b = nbrs[i], nbrs[i + 4]
        inner = component_of(plus, nbrs[i + 1], plus.vertex_set() - {a, b, x})
        if not inner & od.z:
            h = g.copy()
            trace = MinorTrace()
            trace.delete_edge(h, x, nbrs[i + 2])
            return Applied("rule3", h, trace)
    if len(g.neighbors(x) & comp) > bounds.NEIGHBOR_LIMIT:
        raise InternalError(f"vertex {x} keeps {len(g.neighbors(x) & comp)} neighbors in a component")
    return None


@dataclass
class ProtrusionDecomposition:
    """L such that every component of g - L is an outerplanar protrusion."""

    l: set[int]
    x: set[int]
    k: int
    c: int
    d: int

    def components(self, g: Graph) -> list[list[int]]:
        return connected_components(g, g.vertex_set() - self.l)

    def validate(self, g: Graph) -> None:
        comps = self.components(g)
        for comp in comps:
            if len(neighborhood(g, comp)) > 4:
                raise InternalError(f"protrusion at {comp[0]} has more than four neighbors")
            if not is_outerplanar(torso(g, comp)):
                raise InternalError(f"protrusion at {comp[0]} is not outerplanar")
        limit = bounds.f5(self.c, self.d) * (self.k + 3) ** 4
        inner_edges = sum(1 for u, v in g.edges() if u in self.l and v in self.l)
        if len(self.l) > limit or len(comps) > limit or inner_edges > limit:
            raise InternalError("protrusion decomposition exceeds its size bound")


def build_l(g: Graph, k: int, od: OpDecomposition, check: bool = True) -> Applied | ProtrusionDecomposition:
    """Apply the irrelevant-edge rule or build the protrusion decomposition."""
    x = od.x
    for comp in od.components(g):
        for v in sorted(neighborhood(g, comp) & x):
            fired = rule3_irrelevant_edge(g, k, od, v, comp)
            if fired is not None:
                return fired
    z = expand_separator(g.without(x), od.z | (neighborhood(g, x) - x))
    l = x | z
    # components with no neighbor at all stay as protrusions; inside the
    # pipeline they were already removed along with the decomposition
    for comp in connected_components(g, g.vertex_set() - l):
        if len(neighborhood(g, comp)) == 1:
            h, trace = rule2_remove_pendant(g, comp)
            return Applied("rule2", h, trace)
    for v in sorted(l):
        if g.degree(v) == 0:
            h, trace = rule2_remove_pendant(g, [v])
            return Applied("rule2", h, trace)
    pd = ProtrusionDecomposition(l, set(x), k, od.c, od.d)
    if check:
        pd.validate(g)
    return pd


# replacement rules


def _rule4_plan(g: Graph, comp: set[int]):
    """Which case of the two-neighbor replacement applies, with its parts."""
    x, y = sorted(neighborhood(g, comp))
    inside = comp | {x, y}
    path = shortest_path(g, x, y, within=inside)
    on_path = {v: i for i, v in enumerate(path)}
    rest = inside - set(path)
    parts = connected_components(g, rest)
    attach = []
    for part in parts:
        hits = sorted(on_path[w] for w in neighborhood(g, part) if w in on_path)
        attach.append(hits)
    for i, hits in enumerate(attach):
        if hits and hits[-1] - hits[0] > 1:
            return "split", path, parts, (i, hits[0], hits[-1])
    for i, j in combinations(range(len(parts)), 2):
        common = sorted(set(attach[i]) & set(attach[j]))
        if len(common) >= 2:
            return "twin", path, parts, (i, j, common[0], common[1])
    return "merge", path, parts, None


def rule4_replace_component(g: Graph, comp) -> Applied:
    """Replace a component hanging between two non-adjacent vertices by one or two vertices.

    If the component contains two disjoint x-y connections it becomes two
    vertices joined to both x and y, otherwise it is contracted to one.
    """
    comp = set(comp)
    nbrs = neighborhood(g, comp)
    if len(nbrs) != 2:
        raise PreconditionError("component must have exactly two neighbors")
    x, y = sorted(nbrs)
    if g.has_edge(x, y):
        raise PreconditionError("the two neighbors must be non-adjacent")
    if not is_connected(g, comp):
        raise PreconditionError("component must be connected")
    if not is_outerplanar(torso(g, comp)):
        raise PreconditionError("component with its neighbors must be outerplanar")
    case, path, parts, info = _rule4_plan(g, comp)
    h = g.copy()
    trace = MinorTrace()
    if case == "split":
        i, j, m = info
        for p, part in enumerate(parts):
            if p != i:
                trace.delete_vertices(h, part)
        trace.contract_set(h, path[:j + 1])
        trace.contract_set(h, path[m:])
        c1 = trace.contract_set(h, path[j + 1:m])
        c2 = trace.contract_set(h, parts[i])
        if h.has_edge(c1, c2):
            trace.delete_edge(h, c1, c2)
    elif case == "twin":
        i, i2, j, m = info
        for p, part in enumerate(parts):
            if p not in (i, i2):
                trace.delete_vertices(h, part)
        trace.delete_vertices(h, path[j + 1:m])
        if m == j + 1:
            trace.delete_edge(h, path[j], path[m])
        trace.contract_set(h, path[:j + 1])
        trace.contract_set(h, path[m:])
        trace.contract_set(h, parts[i])
        trace.contract_set(h, parts[i2])
    else:
        trace.contract_set(h, comp)
    return Applied("rule4", h, trace)


def rule5_contract_bump(g: Graph, u: int, v: int, comp) -> Applied:
    """Contract a component of g - {u, v} when uv is an edge."""
    comp = set(comp)
    if not g.has_edge(u, v):
        raise PreconditionError("u and v must be adjacent")
    if comp & {u, v} or component_of(g, min(comp), g.vertex_set() - {u, v}) != comp:
        raise PreconditionError("set must be a component of g - {u, v}")
    if not is_outerplanar(torso(g, comp)):
        raise PreconditionError("component with its neighbors must be outerplanar")
    h = g.copy()
    trace = MinorTrace()
    trace.contract_set(h, comp)
    return Applied("rule5", h, trace)


def rule6_fan(g: Graph, fan: FanPath) -> Applied:
    """Delete the edge from the fan center to the middle end."""
    fan.validate(g)
    if not is_outerplanar(torso(g, fan.component)):
        raise PreconditionError("fan component with its neighbors must be outerplanar")
    h = g.copy()
    trace = MinorTrace()
    trace.delete_edge(h, fan.x, fan.ends[2])
    return Applied("rule6", h, trace)


def rule7_ladder(g: Graph, ladder: LadderMatching) -> Applied:
    """Delete the middle rung of a ladder."""
    ladder.validate(g)
    h = g.copy()
    trace = MinorTrace()
    trace.delete_edge(h, *ladder.middle)
    return Applied("rule7", h, trace)


# block-cut tree shrinking


@dataclass
class BlockCutSummary:
    """Block-cut tree of a protrusion that no pendant or chain rule can shrink."""

    blocks: list[frozenset[int]]
    boundary: dict[int, set[int]]


@dataclass
class BlockCutTarget:
    rule: str
    component: frozenset[int]
    cut: tuple[int, ...] = ()


def _outside_boundary(g: Graph, block) -> set[int]:
    block = set(block)
    return {v for v in block if g.neighbors(v) - block}


def _size(g: Graph) -> int:
    return g.n + g.m


def _chain_targets(g: Graph, comp: set[int]) -> list[BlockCutTarget]:
    """Targets for a vertex set hanging between two vertices."""
    out = []
    for part in connected_components(g, comp):
        cut = tuple(sorted(neighborhood(g, part)))
        if len(cut) == 2:
            rule = "rule5" if g.has_edge(*cut) else "rule4"
            out.append(BlockCutTarget(rule, frozenset(part), cut))
    return out


def shrink_blockcut(g: Graph, comp) -> BlockCutTarget | BlockCutSummary:
    """Find a pendant or chain in the block-cut tree of a protrusion.

    Nodes spanning the blocks of N(comp) (closed under lowest common
    ancestors) stay. A part of the rest that touches one such node, or holds
    a leaf block, hangs off a single vertex. A part that is a path between
    two such nodes hangs between two vertices. Chain targets are reported
    only when applying them makes the graph smaller.
    """
    comp = set(comp)
    nbrs = neighborhood(g, comp)
    if len(nbrs) <= 1:
        return BlockCutTarget("rule2", frozenset(comp))
    h = torso(g, comp)
    bct = block_cut_tree(h)
    block_of = {}
    for i, b in enumerate(bct.blocks):
        for v in b & nbrs:
            block_of[v] = ("B", i)
    root = block_of[min(nbrs)]
    parent = {root: None}
    queue = deque([root])
    while queue:
        a = queue.popleft()
        for b in bct.neighbors(a):
            if b not in parent:
                parent[b] = a
                queue.append(b)
    tree = RootedTree(parent)
    keep = lca_closure(tree, set(block_of.values()))

    seen: set = set()
    chains = []
    for start in sorted(bct.nodes()):
        if start in keep or start in seen:
            continue
        part = []
        stack = [start]
        seen.add(start)
        while stack:
            a = stack.pop()
            part.append(a)
            for b in bct.neighbors(a):
                if b not in keep and b not in seen:
                    seen.add(b)
                    stack.append(b)
        touching = {b for a in part for b in bct.neighbors(a) if b in keep}
        kept_vertices: set[int] = set()
        for t in touching:
            kept_vertices |= bct.vertices_of(t)
        inside: set[int] = set()
        for a in part:
            inside |= bct.vertices_of(a)
        inside -= kept_vertices
        if len(touching) == 1:
            return BlockCutTarget("rule2", frozenset(inside))
        leaf = next((a for a in part if len(bct.neighbors(a)) == 1), None)
        if leaf is not None:
            return BlockCutTarget("rule2", frozenset(bct.vertices_of(leaf) - bct.articulation_points))
        chains.extend(_chain_targets(g, inside))
    for target in chains:
        result = apply_target(g, target)
        if _size(result.graph) < _size(g):
            return target
    blocks = list(bct.blocks)
    if len(blocks) > bounds.MAX_BLOCKS:
        raise InternalError(f"protrusion keeps {len(blocks)} blocks after shrinking")
    return BlockCutSummary(blocks, {i: _outside_boundary(g, b) for i, b in enumerate(blocks)})


def apply_target(g: Graph, target: BlockCutTarget) -> Applied:
    if target.rule == "rule2":
        h, trace = rule2_remove_pendant(g, target.component)
        return Applied("rule2", h, trace)
    if target.rule == "rule4":
        return rule4_replace_component(g, target.component)
    if target.rule == "rule5":
        return rule5_contract_bump(g, *target.cut, target.component)
    raise PreconditionError(f"unknown target rule {target.rule}")


def apply_structure(g: Graph, structure) -> Applied:
    """Dispatch a reducible structure to the rule that removes it."""
    if isinstance(structure, SmallCutPair):
        u, v = structure.u, structure.v
        if g.has_edge(u, v):
            return rule5_contract_bump(g, u, v, structure.component)
        return rule4_replace_component(g, structure.component)
    if isinstance(structure, FanPath):
        return rule6_fan(g, structure)
    if isinstance(structure, LadderMatching):
        return rule7_ladder(g, structure)
    raise PreconditionError(f"unknown structure {structure!r}")


def reduce_protrusion(g: Graph, comp, mode: str = AGGRESSIVE) -> Applied | None:
    """Shrink one protrusion by one rule application, or None if none applies.

    Strict mode leaves protrusions of at most PROTRUSION_THRESHOLD vertices
    alone. Aggressive mode acts on every protrusion but only applies rules
    that make the graph strictly smaller.
    """
    if mode not in (AGGRESSIVE, STRICT):
        raise PreconditionError(f"unknown mode {mode!r}")
    comp = set(comp)
    if not comp or not is_connected(g, comp):
        raise PreconditionError("protrusion must be a non-empty connected set")
    if len(neighborhood(g, comp)) > 4:
        raise PreconditionError("protrusion has more than four neighbors")
    if mode == STRICT and len(comp) <= bounds.PROTRUSION_THRESHOLD:
        return None
    if not is_outerplanar(torso(g, comp)):
        raise PreconditionError("protrusion with its neighbors must be outerplanar")
    found = shrink_blockcut(g, comp)
    if isinstance(found, BlockCutTarget):
        return apply_target(g, found)
    for block in found.blocks:
        if len(block) < 3:
            continue
        terminals = found.boundary[found.blocks.index(block)] or {min(block)}
        if len(terminals) > 4:
            raise InternalError("block of a shrunk protrusion has more than four boundary vertices")
        structure = find_reducible_structure(g.subgraph(block), terminals)
        if structure is None:
            continue
        applied = apply_structure(g, structure)
        if _size(applied.graph) < _size(g):
            return applied
    return None

