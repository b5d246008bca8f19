"""Reducible structures inside a biconnected outerplanar block.

Given a block B and a small terminal set T, find one of

* a pair {u, v} cutting off a terminal-free component with more than two
  vertices,
* a fan: x with five consecutive neighbors along an induced path,
* a ladder: seven matching edges nested one inside the next,

or report that B is small. The search walks the weak dual tree: the subtree
spanning the faces of the terminals, the trees hanging off it, its large
faces and its long paths of degree-2 nodes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from . import bounds
from .errors import InternalError, PreconditionError
from .graph import Graph, biconnected_components, neighborhood, torso
from .outerplanar import embed_biconnected, is_outerplanar

# node count of a degree-2 dual path that must contain a fan or a ladder
LONG_PATH = 26
LARGE_FACE = 16


def _component_avoiding(g: Graph, start: int, blocked) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        a = queue.popleft()
        for b in g.neighbors(a):
            if b not in seen and b not in blocked:
                seen.add(b)
                queue.append(b)
    return seen


def _check_component(g: Graph, comp: frozenset[int], cut: set[int], terminals) -> None:
    if not comp:
        raise PreconditionError("component is empty")
    if comp & cut:
        raise PreconditionError("component meets its separator")
    if not comp <= g.vertex_set():
        raise PreconditionError("component vertex missing from graph")
    start = min(comp)
    if _component_avoiding(g, start, cut) != comp:
        raise PreconditionError("not a connected component of g minus the separator")
    if comp & set(terminals):
        raise PreconditionError("component contains a terminal")


@dataclass(frozen=True)
class SmallCutPair:
    """Terminal-free component of g - {u, v} with at least three vertices."""

    u: int
    v: int
    component: frozenset[int]

    def validate(self, g: Graph, terminals=()) -> None:
        if self.u == self.v or self.u not in g or self.v not in g:
            raise PreconditionError("cut pair must be two distinct vertices of g")
        if len(self.component) <= 2:
            raise PreconditionError("component must have more than two vertices")
        _check_component(g, self.component, {self.u, self.v}, terminals)


@dataclass(frozen=True)
class FanPath:
    """x with neighbors v1..v5 in order along an induced path avoiding x."""

    x: int
    ends: tuple[int, int, int, int, int]
    path: tuple[int, ...]
    component: frozenset[int]

    def validate(self, g: Graph, terminals=()) -> None:
        x, vs, path = self.x, self.ends, self.path
        if len(vs) != 5 or len(set(vs)) != 5:
            raise PreconditionError("a fan needs five distinct ends")
        if x not in g or not all(g.has_edge(x, v) for v in vs):
            raise PreconditionError("fan ends must be neighbors of x")
        if len(set(path)) != len(path) or x in path or path[0] != vs[0] or path[-1] != vs[4]:
            raise PreconditionError("fan path must run from v1 to v5 without x")
        pos = {v: i for i, v in enumerate(path)}
        for v in path:
            if v not in g:
                raise PreconditionError(f"path vertex {v} missing")
            for w in g.neighbors(v):
                if w in pos and abs(pos[w] - pos[v]) != 1:
                    raise PreconditionError("fan path is not induced")
        for a, b in zip(path, path[1:]):
            if not g.has_edge(a, b):
                raise PreconditionError("fan path is not a path")
        if not all(v in pos for v in vs) or [pos[v] for v in vs] != sorted(pos[v] for v in vs):
            raise PreconditionError("fan ends must appear in order along the path")
        if g.neighbors(x) & set(path) != set(vs):
            raise PreconditionError("x has neighbors on the path besides the ends")
        inner = set(path[1:-1])
        if not inner <= self.component:
            raise PreconditionError("component must contain the path interior")
        _check_component(g, self.component, {x, vs[0], vs[4]}, terminals)


def ladder_rails(g: Graph, edges, component) -> tuple[list[int], list[int]]:
    """The two rails of a ladder: disjoint paths through one end of every rung.

    Read off the outer cycle of the ladder's torso with the first and last
    rung removed.
    """
    h = torso(g, component)
    emb = embed_biconnected(h)
    cycle = emb.cycle
    n = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    first, last = edges[0], edges[-1]

    def on_cycle(e) -> bool:
        a, b = pos[e[0]], pos[e[1]]
        return (a - b) % n in (1, n - 1)

    if not (on_cycle(first) and on_cycle(last)):
        raise PreconditionError("first and last rung must lie on the outer cycle")
    # walk from one end of the first rung away from the other end
    a, b = first
    step = 1 if cycle[(pos[a] + 1) % n] != b else -1
    rail = [a]
    i = pos[a]
    while True:
        i = (i + step) % n
        rail.append(cycle[i])
        if cycle[i] in last:
            break
    other_end = next(v for v in last if v != rail[-1])
    rail2 = [b]
    i = pos[b]
    while cycle[i] != other_end:
        i = (i - step) % n
        rail2.append(cycle[i])
    return rail, rail2


def order_respecting(h: Graph, edges) -> bool:
    """V(e_i) and V(e_k) are separated by V(e_j) whenever i < j < k."""
    for j in range(1, len(edges) - 1):
        later = {w for e in edges[j + 1:] for w in e}
        for i in range(j):
            for a in edges[i]:
                if _component_avoiding(h, a, set(edges[j])) & later:
                    return False
    return True


@dataclass(frozen=True)
class LadderMatching:
    """Seven disjoint edges; the middle five inside a component between the outer two."""

    edges: tuple[tuple[int, int], ...]
    component: frozenset[int]

    def validate(self, g: Graph, terminals=()) -> None:
        es = self.edges
        if len(es) != 7:
            raise PreconditionError("a ladder needs seven edges")
        ends = [v for e in es for v in e]
        if len(set(ends)) != 14:
            raise PreconditionError("ladder edges must form a matching")
        if not all(g.has_edge(u, v) for u, v in es):
            raise PreconditionError("ladder edge missing from graph")
        outer = set(es[0]) | set(es[6])
        comp = self.component
        _check_component(g, comp, outer, terminals)
        if not all(set(e) <= comp for e in es[1:6]):
            raise PreconditionError("middle rungs must lie inside the component")
        if neighborhood(g, comp) != outer:
            raise PreconditionError("component must see exactly the outer rungs")
        h = torso(g, comp)
        blocks, _ = biconnected_components(h)
        if len(blocks) != 1 or not is_outerplanar(h):
            raise PreconditionError("ladder torso must be biconnected and outerplanar")
        if not order_respecting(h, es):
            raise PreconditionError("rungs are not nested")
        rails = ladder_rails(g, es, comp)
        for rail in rails:
            hits = [next(i for i, v in enumerate(rail) if v in e) for e in es]
            if hits != sorted(hits) or any(len(set(rail) & set(e)) != 1 for e in es):
                raise PreconditionError("rail does not cross the rungs in order")

    @property
    def middle(self) -> tuple[int, int]:
        return self.edges[3]


Structure = SmallCutPair | FanPath | LadderMatching


class _Dual:
    """Weak dual of a block with the subtree spanning the terminal faces."""

    def __init__(self, b: Graph, terminals: set[int]):
        emb = embed_biconnected(b)
        self.faces = emb.faces
        self.dual = emb.dual
        self.chord = {}
        for e, (f1, f2) in emb.dual_edges.items():
            self.chord[f1, f2] = e
            self.chord[f2, f1] = e
        first_face: dict[int, int] = {}
        for i, face in enumerate(self.faces):
            for v in face:
                first_face.setdefault(v, i)
        self.terminal_faces = {first_face[t] for t in terminals}
        root = min(self.terminal_faces)
        parent = {root: None}
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for h in self.dual[f]:
                if h not in parent:
                    parent[h] = f
                    queue.append(h)
        spanning = {root}
        for f in self.terminal_faces:
            while f not in spanning:
                spanning.add(f)
                f = parent[f]
        self.spanning = spanning
        self.tree_adj = {f: sorted(h for h in self.dual[f] if h in spanning) for f in spanning}
        self.important = set(self.terminal_faces)
        self.important |= {f for f in spanning if len(self.tree_adj[f]) != 2}

    def degree_two_paths(self) -> list[list[int]]:
        """Maximal paths of non-important nodes (all have tree degree 2)."""
        inner = self.spanning - self.important

        def walk(start: int, prev: int | None) -> list[int]:
            out = [start]
            while True:
                nxt = [h for h in self.tree_adj[out[-1]] if h != prev and h in inner]
                if not nxt:
                    return out
                prev = out[-1]
                out.append(nxt[0])

        seen: set[int] = set()
        paths = []
        for f in sorted(inner):
            if f in seen:
                continue
            end = walk(f, None)[-1]
            path = walk(end, None)
            seen.update(path)
            paths.append(path)
        return paths


def _attached_tree(b: Graph, dual: _Dual) -> SmallCutPair | None:
    for f in sorted(dual.spanning):
        for h in sorted(dual.dual[f]):
            if h in dual.spanning:
                continue
            u, v = dual.chord[f, h]
            start = min(w for w in dual.faces[h] if w not in (u, v))
            comp = _component_avoiding(b, start, {u, v})
            if len(comp) > 2:
                return SmallCutPair(u, v, frozenset(comp))
    return None


def _large_face(b: Graph, dual: _Dual, terminals: set[int]) -> SmallCutPair | None:
    for f in sorted(dual.spanning):
        cycle = dual.faces[f]
        n = len(cycle)
        if n <= LARGE_FACE:
            continue
        avoid = {v for v in cycle if v in terminals}
        for h in dual.tree_adj[f]:
            avoid |= set(dual.chord[f, h])
        for i in range(n):
            if all(cycle[(i + j) % n] not in avoid for j in (1, 2, 3)):
                u, v = cycle[i], cycle[(i + 4) % n]
                comp = _component_avoiding(b, cycle[(i + 2) % n], {u, v})
                return SmallCutPair(u, v, frozenset(comp))
    return None


def _fan_or_ladder(b: Graph, dual: _Dual, path: list[int]) -> Structure:
    nodes = path[:LONG_PATH]
    rungs = [dual.chord[nodes[i], nodes[i + 1]] for i in range(LONG_PATH - 1)]
    for j in range(6):
        shared = set(rungs[4 * j]) & set(rungs[4 * j + 4])
        if not shared:
            continue
        x = shared.pop()
        group = rungs[4 * j:4 * j + 5]
        if not all(x in e for e in group):
            raise InternalError("rungs sharing an end do not form a fan")
        ends = tuple(e[0] if e[1] == x else e[1] for e in group)
        walk = [ends[0]]
        for m in range(1, 5):
            face = dual.faces[nodes[4 * j + m]]
            i = face.index(x)
            rest = face[i + 1:] + face[:i]
            if rest[0] != ends[m - 1]:
                rest.reverse()
            if rest[0] != ends[m - 1] or rest[-1] != ends[m]:
                raise InternalError("fan face does not join consecutive ends")
            walk.extend(rest[1:])
        comp = _component_avoiding(b, walk[1], {x, ends[0], ends[4]})
        return FanPath(x, ends, tuple(walk), frozenset(comp))
    picked = tuple(rungs[4 * j] for j in range(7))
    comp = _component_avoiding(b, picked[1][0], set(picked[0]) | set(picked[6]))
    return LadderMatching(picked, frozenset(comp))


def find_reducible_structure(b: Graph, terminals) -> Structure | None:
    """A validated reducible structure of block b avoiding terminals, or None.

    None means no structure was found; that is only allowed when b has at
    most BLOCK_THRESHOLD vertices.
    """
    terminals = set(terminals)
    if not 1 <= len(terminals) <= 4 or not terminals <= b.vertex_set():
        raise PreconditionError("need one to four terminals inside the block")
    dual = _Dual(b, terminals)
    found = _attached_tree(b, dual) or _large_face(b, dual, terminals)
    if found is None:
        for path in dual.degree_two_paths():
            if len(path) >= LONG_PATH:
                found = _fan_or_ladder(b, dual, path)
                break
    if found is None:
        if b.n > bounds.BLOCK_THRESHOLD:
            raise InternalError(f"block with {b.n} vertices has no reducible structure")
        return None
    try:
        found.validate(b, terminals)
    except PreconditionError as exc:
        raise InternalError(f"structure finder produced an invalid {type(found).__name__}: {exc}") from None
    return found

