"""Width-2 tree decompositions of outerplanar graphs and LCA closures."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable

from .errors import InternalError, NotOuterplanarError, PreconditionError
from .graph import Graph, biconnected_components, connected_components
from .outerplanar import Obstruction, edge_key, recognize


class RootedTree:
    """Rooted tree given by a parent map (the root maps to None)."""

    def __init__(self, parent: dict[Hashable, Hashable | None]):
        self.parent = dict(parent)
        roots = [v for v, p in self.parent.items() if p is None]
        if len(roots) != 1:
            raise PreconditionError("a rooted tree needs exactly one root")
        self.root = roots[0]
        self.children: dict = {v: [] for v in self.parent}
        for v, p in self.parent.items():
            if p is not None:
                self.children[p].append(v)
        self.depth = {self.root: 0}
        self.preorder = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            self.preorder.append(v)
            for c in reversed(self.children[v]):
                self.depth[c] = self.depth[v] + 1
                stack.append(c)
        if len(self.preorder) != len(self.parent):
            raise PreconditionError("parent map is not a tree")
        self.rank = {v: i for i, v in enumerate(self.preorder)}

    def lca(self, a, b):
        while self.depth[a] > self.depth[b]:
            a = self.parent[a]
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
        while a != b:
            a = self.parent[a]
            b = self.parent[b]
        return a

    def postorder(self) -> list:
        return self.preorder[::-1]

    def neighbors(self, v) -> list:
        out = list(self.children[v])
        if self.parent[v] is not None:
            out.append(self.parent[v])
        return out


def lca_closure(tree: RootedTree, s: Iterable) -> set:
    """All pairwise lowest common ancestors of s (s itself included).

    Consecutive nodes in preorder suffice to generate the closure.
    """
    nodes = sorted(set(s), key=tree.rank.__getitem__)
    out = set(nodes)
    for a, b in zip(nodes, nodes[1:]):
        out.add(tree.lca(a, b))
    return out


@dataclass
class TreeDecomposition:
    bags: list[frozenset[int]]
    tree: RootedTree
    topmost: dict[int, int] = field(default_factory=dict)

    @property
    def root(self) -> int:
        return self.tree.root

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=1) - 1

    def subtree_vertices(self) -> list[set[int]]:
        """For every node t, the union of bags in the subtree rooted at t."""
        out: list[set[int]] = [set() for _ in self.bags]
        for t in self.tree.postorder():
            out[t] |= self.bags[t]
            p = self.tree.parent[t]
            if p is not None:
                out[p] |= out[t]
        return out

    def validate(self, g: Graph) -> None:
        if any(len(b) > 3 for b in self.bags):
            raise InternalError("bag larger than 3")
        occ: dict[int, list[int]] = {}
        for t, b in enumerate(self.bags):
            for v in b:
                if v not in g:
                    raise InternalError(f"bag vertex {v} not in graph")
                occ.setdefault(v, []).append(t)
        for v in g.vertices():
            nodes = occ.get(v)
            if not nodes:
                raise InternalError(f"vertex {v} in no bag")
            # occurrences are connected iff exactly one of them has its parent outside
            tops = [t for t in nodes if self.tree.parent[t] is None or v not in self.bags[self.tree.parent[t]]]
            if len(tops) != 1:
                raise InternalError(f"occurrences of {v} are not connected")
        for u, v in g.edges():
            if not any(v in self.bags[t] for t in occ[u]):
                raise InternalError(f"edge {u}-{v} in no bag")


def _face_bags(face: list[int]) -> tuple[list[frozenset[int]], dict[tuple[int, int], int]]:
    """Fan triangulation of one face from its first vertex."""
    p0 = face[0]
    k = len(face) - 1
    bags = [frozenset((p0, face[i], face[i + 1])) for i in range(1, k)]
    where = {edge_key(p0, face[1]): 0, edge_key(face[k], p0): k - 2}
    for i in range(1, k):
        where[edge_key(face[i], face[i + 1])] = i - 1
    return bags, where


def decompose_outerplanar(g: Graph) -> TreeDecomposition:
    res = recognize(g)
    if isinstance(res, Obstruction):
        raise NotOuterplanarError("tree decomposition needs an outerplanar graph", res)
    bags: list[frozenset[int]] = []
    links: list[tuple[int, int]] = []
    home: dict[tuple[frozenset[int], int], int] = {}

    for be in res.blocks:
        block = frozenset(be.cycle)
        first = len(bags)
        face_nodes = []
        for face in be.faces:
            fb, where = _face_bags(face)
            base = len(bags)
            bags.extend(fb)
            links.extend((base + i, base + i + 1) for i in range(len(fb) - 1))
            face_nodes.append({e: base + i for e, i in where.items()})
        for chord, (f1, f2) in sorted(be.dual_edges.items()):
            links.append((face_nodes[f1][chord], face_nodes[f2][chord]))
        for t in range(first, len(bags)):
            for v in bags[t]:
                home.setdefault((block, v), t)
    for block in res.small_blocks:
        t = len(bags)
        bags.append(frozenset(block))
        for v in block:
            home[(block, v)] = t

    blocks, cuts = biconnected_components(g)
    for a in sorted(cuts):
        reps = [home[(b, a)] for b in blocks if a in b]
        links.extend((reps[0], r) for r in reps[1:])
    # join the trees of different connected components
    comp_rep = []
    for comp in connected_components(g):
        v = comp[0]
        block = next(b for b in blocks if v in b)
        comp_rep.append(home[(block, v)])
    links.extend((comp_rep[0], r) for r in comp_rep[1:])

    if not bags:
        raise PreconditionError("cannot decompose the empty graph")
    adj: dict[int, list[int]] = {t: [] for t in range(len(bags))}
    for a, b in links:
        adj[a].append(b)
        adj[b].append(a)
    smallest = min(g.vertices())
    root = next(t for t, b in enumerate(bags) if smallest in b)
    parent: dict[int, int | None] = {root: None}
    queue = deque([root])
    while queue:
        a = queue.popleft()
        for b in sorted(adj[a]):
            if b not in parent:
                parent[b] = a
                queue.append(b)
    if len(parent) != len(bags) or len(links) != len(bags) - 1:
        raise InternalError("decomposition tree is not a tree")
    tree = RootedTree(parent)
    topmost: dict[int, int] = {}
    for t in sorted(range(len(bags)), key=lambda t: (tree.depth[t], t)):
        for v in bags[t]:
            topmost.setdefault(v, t)
    return TreeDecomposition(bags, tree, topmost)


def mark_bags(td: TreeDecomposition, b: Iterable[int]) -> set[int]:
    nodes = set(b)
    if lca_closure(td.tree, nodes) != nodes:
        raise PreconditionError("node set is not closed under lowest common ancestors")
    out: set[int] = set()
    for t in nodes:
        out |= td.bags[t]
    return out


def expand_separator(g: Graph, z: Iterable[int], td: TreeDecomposition | None = None) -> set[int]:
    """Grow z so that every component of g - z' sees at most 4 vertices of z'."""
    z = set(z)
    if not z:
        return set()
    if td is None:
        td = decompose_outerplanar(g)
    nodes = lca_closure(td.tree, {td.topmost[v] for v in z})
    return mark_bags(td, nodes)
