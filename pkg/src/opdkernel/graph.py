"""Simple undirected graphs with stable labels, minor operations and flows.

Every algorithm in the package works on :class:`Graph`. Vertices are
non-negative integers that are never renamed: a contraction keeps the smaller
of the two labels, so a :class:`MinorTrace` can be replayed label for label.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .errors import PreconditionError


class Graph:
    """Simple undirected graph stored as a dict of neighbor sets.

    Mutating methods exist for builders and for trace replay. Algorithms treat
    graphs as values: they copy before changing anything.
    """

    __slots__ = ("_adj",)

    def __init__(self, edges: Iterable[tuple[int, int]] = (), vertices: Iterable[int] = ()):
        self._adj: dict[int, set[int]] = {}
        for v in vertices:
            self.add_vertex(v)
        for u, v in edges:
            self.add_edge(u, v)

    # construction and mutation

    def add_vertex(self, v: int) -> None:
        if v not in self._adj:
            self._adj[v] = set()

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise PreconditionError(f"self-loop at {u}")
        self.add_vertex(u)
        self.add_vertex(v)
        self._adj[u].add(v)
        self._adj[v].add(u)

    def remove_vertex(self, v: int) -> None:
        if v not in self._adj:
            raise PreconditionError(f"vertex {v} does not exist")
        for w in self._adj.pop(v):
            self._adj[w].discard(v)

    def remove_edge(self, u: int, v: int) -> None:
        if not self.has_edge(u, v):
            raise PreconditionError(f"edge {u}-{v} does not exist")
        self._adj[u].discard(v)
        self._adj[v].discard(u)

    def contract(self, u: int, v: int) -> int:
        """Contract edge uv in place and return the surviving (smaller) label."""
        if not self.has_edge(u, v):
            raise PreconditionError(f"cannot contract missing edge {u}-{v}")
        keep, gone = (u, v) if u < v else (v, u)
        for w in self._adj.pop(gone):
            self._adj[w].discard(gone)
            if w != keep:
                self._adj[w].add(keep)
                self._adj[keep].add(w)
        return keep

    # queries

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._adj))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self._adj.values()) // 2

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def vertex_set(self) -> set[int]:
        return set(self._adj)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, nb in self._adj.items() for v in nb if u < v)

    def neighbors(self, v: int) -> set[int]:
        """The neighbor set of v. Callers must not mutate it."""
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        nb = self._adj.get(u)
        return nb is not None and v in nb

    def copy(self) -> Graph:
        g = Graph()
        g._adj = {v: set(nb) for v, nb in self._adj.items()}
        return g

    def subgraph(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph on the given vertices."""
        keep = set(vertices)
        g = Graph()
        g._adj = {v: self._adj[v] & keep for v in keep}
        return g

    def without(self, vertices: Iterable[int]) -> Graph:
        drop = set(vertices)
        return self.subgraph(v for v in self._adj if v not in drop)

    def without_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        g = self.copy()
        for u, v in edges:
            if g.has_edge(u, v):
                g.remove_edge(u, v)
        return g


def neighborhood(g: Graph, vertices: Iterable[int]) -> set[int]:
    """Open neighborhood N(S) = N[S] minus S."""
    s = set(vertices)
    out: set[int] = set()
    for v in s:
        out |= g.neighbors(v)
    return out - s


def closed_neighborhood(g: Graph, vertices: Iterable[int]) -> set[int]:
    s = set(vertices)
    return neighborhood(g, s) | s


def torso(g: Graph, vertices: Iterable[int]) -> Graph:
    """The graph G<C>: the subgraph induced by N[C]."""
    return g.subgraph(closed_neighborhood(g, vertices))


# minor traces


class DeleteVertex(NamedTuple):
    v: int


class DeleteEdge(NamedTuple):
    u: int
    v: int


class ContractEdge(NamedTuple):
    u: int
    v: int
    into: int


Step = DeleteVertex | DeleteEdge | ContractEdge


def apply_step(g: Graph, step: Step) -> None:
    """Apply one trace step to g in place."""
    if isinstance(step, DeleteVertex):
        g.remove_vertex(step.v)
    elif isinstance(step, DeleteEdge):
        g.remove_edge(step.u, step.v)
    elif isinstance(step, ContractEdge):
        if step.into != min(step.u, step.v):
            raise PreconditionError(f"contraction {step} must keep the smaller label")
        g.contract(step.u, step.v)
    else:
        raise PreconditionError(f"unknown step {step!r}")


@dataclass
class MinorTrace:
    """Ordered log of minor operations. The recording helpers mutate g."""

    steps: list[Step] = field(default_factory=list)

    def delete_vertex(self, g: Graph, v: int) -> None:
        g.remove_vertex(v)
        self.steps.append(DeleteVertex(v))

    def delete_vertices(self, g: Graph, vertices: Iterable[int]) -> None:
        for v in sorted(vertices):
            self.delete_vertex(g, v)

    def delete_edge(self, g: Graph, u: int, v: int) -> None:
        g.remove_edge(u, v)
        self.steps.append(DeleteEdge(min(u, v), max(u, v)))

    def contract(self, g: Graph, u: int, v: int) -> int:
        keep = g.contract(u, v)
        self.steps.append(ContractEdge(min(u, v), max(u, v), keep))
        return keep

    def contract_set(self, g: Graph, vertices: Iterable[int]) -> int:
        """Contract a connected vertex set into its smallest label."""
        group = set(vertices)
        root = min(group)
        if len(group) == 1:
            return root
        # grow from the root so that every contraction merges into it
        seen = {root}
        frontier = deque([root])
        order = []
        while frontier:
            a = frontier.popleft()
            for b in sorted(g.neighbors(a)):
                if b in group and b not in seen:
                    seen.add(b)
                    order.append(b)
                    frontier.append(b)
        if seen != group:
            raise PreconditionError("contract_set needs a connected vertex set")
        for b in order:
            self.contract(g, root, b)
        return root

    def extend(self, other: MinorTrace) -> None:
        self.steps.extend(other.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Step]:
        return iter(self.steps)


def contract_edge(g: Graph, u: int, v: int) -> tuple[Graph, ContractEdge]:
    """Return g/uv and the corresponding trace step."""
    h = g.copy()
    keep = h.contract(u, v)
    return h, ContractEdge(min(u, v), max(u, v), keep)


def replay_trace(g: Graph, trace: MinorTrace | Iterable[Step]) -> Graph:
    h = g.copy()
    for i, step in enumerate(trace):
        try:
            apply_step(h, step)
        except PreconditionError as exc:
            raise PreconditionError(f"trace step {i} ({step}) is illegal: {exc}") from None
    return h


# connectivity


def component_of(g: Graph, start: int, within: set[int] | None = None) -> set[int]:
    """Vertices reachable from start, optionally staying inside `within`."""
    seen = {start}
    stack = [start]
    while stack:
        a = stack.pop()
        for b in g.neighbors(a):
            if b not in seen and (within is None or b in within):
                seen.add(b)
                stack.append(b)
    return seen


def connected_components(g: Graph, within: Iterable[int] | None = None) -> list[list[int]]:
    """Components as sorted lists, ordered by minimum label.

    With `within`, components of the induced subgraph on that set.
    """
    allowed = set(g.vertex_set() if within is None else within)
    seen: set[int] = set()
    comps = []
    for v in sorted(allowed):
        if v in seen:
            continue
        comp = component_of(g, v, allowed)
        seen |= comp
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph, within: Iterable[int] | None = None) -> bool:
    allowed = set(g.vertex_set() if within is None else within)
    if not allowed:
        return False
    return len(component_of(g, next(iter(allowed)), allowed)) == len(allowed)


def biconnected_components(g: Graph) -> tuple[list[frozenset[int]], set[int]]:
    """Blocks and articulation points of any graph.

    Isolated vertices form singleton blocks. Iterative Hopcroft-Tarjan.
    """
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    blocks: list[frozenset[int]] = []
    cuts: set[int] = set()
    counter = 0
    for root in g.vertices():
        if root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        if not g.neighbors(root):
            blocks.append(frozenset([root]))
            continue
        root_children = 0
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, None, iter(sorted(g.neighbors(root))))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = counter
                    counter += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(sorted(g.neighbors(w)))))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent is None:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent == root:
                    root_children += 1
                else:
                    cuts.add(parent)
                block = set()
                while True:
                    a, b = edge_stack.pop()
                    block.add(a)
                    block.add(b)
                    if (a, b) == (parent, v):
                        break
                blocks.append(frozenset(block))
        if root_children > 1:
            cuts.add(root)
    blocks.sort(key=lambda b: (min(b), sorted(b)))
    return blocks, cuts


@dataclass
class BlockCutTree:
    """Block-cut tree. Nodes are ("B", i) for blocks[i] and ("A", v) for cut vertices."""

    blocks: list[frozenset[int]]
    articulation_points: frozenset[int]
    adjacency: dict[tuple[str, int], list[tuple[str, int]]]

    def nodes(self) -> list[tuple[str, int]]:
        return list(self.adjacency)

    def neighbors(self, node: tuple[str, int]) -> list[tuple[str, int]]:
        return self.adjacency[node]

    def vertices_of(self, node: tuple[str, int]) -> frozenset[int]:
        kind, i = node
        return self.blocks[i] if kind == "B" else frozenset([i])


def block_cut_tree(g: Graph) -> BlockCutTree:
    if not is_connected(g):
        raise PreconditionError("block_cut_tree needs a connected graph")
    blocks, cuts = biconnected_components(g)
    adj: dict[tuple[str, int], list[tuple[str, int]]] = {}
    for i in range(len(blocks)):
        adj[("B", i)] = []
    for v in sorted(cuts):
        adj[("A", v)] = []
    for i, b in enumerate(blocks):
        for v in sorted(b & cuts):
            adj[("B", i)].append(("A", v))
            adj[("A", v)].append(("B", i))
    return BlockCutTree(blocks, frozenset(cuts), adj)


# flows


def min_vertex_cut(
    g: Graph,
    sources: Iterable[int],
    sinks: Iterable[int],
    cap: int,
    uncuttable: Iterable[int] = (),
) -> tuple[int, set[int] | None]:
    """Vertex-capacitated max flow from `sources` to `sinks`, stopped at cap.

    Returns (flow, cut). The cut is a minimum vertex set avoiding sources,
    sinks and `uncuttable` that separates them, or None when flow reaches cap.
    """
    src = set(sources)
    dst = set(sinks)
    if src & dst:
        raise PreconditionError("sources and sinks overlap")
    hard = set(uncuttable) | src | dst
    order = g.vertices()
    index = {v: i for i, v in enumerate(order)}
    big = cap + 1
    s_node, t_node = 2 * len(order), 2 * len(order) + 1
    res: dict[int, dict[int, int]] = {s_node: {}, t_node: {}}

    def arc(a: int, b: int, c: int) -> None:
        res.setdefault(a, {})
        res.setdefault(b, {})
        res[a][b] = res[a].get(b, 0) + c
        res[b].setdefault(a, 0)

    for v in order:
        i = index[v]
        arc(2 * i, 2 * i + 1, big if v in hard else 1)
        for w in g.neighbors(v):
            arc(2 * i + 1, 2 * index[w], big)
    for v in src:
        arc(s_node, 2 * index[v], big)
    for v in dst:
        arc(2 * index[v] + 1, t_node, big)

    flow = 0
    while flow < cap:
        parent = {s_node: s_node}
        queue = deque([s_node])
        while queue and t_node not in parent:
            a = queue.popleft()
            for b, c in res[a].items():
                if c > 0 and b not in parent:
                    parent[b] = a
                    queue.append(b)
        if t_node not in parent:
            break
        b = t_node
        while b != s_node:
            a = parent[b]
            res[a][b] -= 1
            res[b][a] += 1
            b = a
        flow += 1
    if flow >= cap:
        return cap, None
    reach = {s_node}
    queue = deque([s_node])
    while queue:
        a = queue.popleft()
        for b, c in res[a].items():
            if c > 0 and b not in reach:
                reach.add(b)
                queue.append(b)
    cut = {v for v in order if 2 * index[v] in reach and 2 * index[v] + 1 not in reach}
    if len(cut) != flow:
        # only possible when an all-uncuttable route exists, which forces flow to cap
        raise PreconditionError("no finite vertex cut between the given sets")
    return flow, cut


def max_disjoint_paths(g: Graph, u: int, v: int, cap: int) -> tuple[int, set[int] | None]:
    """Internally vertex-disjoint u-v paths, capped at cap.

    The edge uv, if present, counts as one path. When the count is below cap
    and uv is not an edge, a minimum (u,v)-separator is returned as well.
    """
    if u == v:
        raise PreconditionError("max_disjoint_paths needs two distinct vertices")
    direct = 1 if g.has_edge(u, v) else 0
    if cap - direct <= 0:
        return cap, None
    h = g.without_edges([(u, v)]) if direct else g
    flow, cut = min_vertex_cut(h, [u], [v], cap - direct)
    total = flow + direct
    if total >= cap:
        return cap, None
    return total, (None if direct else cut)


def shortest_path(g: Graph, s: int, t: int, within: set[int] | None = None) -> list[int] | None:
    """BFS shortest path with ascending-label tie-breaking."""
    parent = {s: s}
    queue = deque([s])
    while queue:
        a = queue.popleft()
        if a == t:
            break
        for b in sorted(g.neighbors(a)):
            if b not in parent and (within is None or b in within or b == t):
                parent[b] = a
                queue.append(b)
    if t not in parent:
        return None
    path = [t]
    while path[-1] != s:
        path.append(parent[path[-1]])
    return path[::-1]
