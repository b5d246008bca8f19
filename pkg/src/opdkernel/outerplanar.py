"""Outerplanarity recognition with certificates.

A biconnected block is reduced by repeatedly removing a degree-2 vertex v
with neighbors u, w and joining u to w by a virtual link that remembers the
stretch of outer cycle it replaces. A link may absorb one more stretch if the
real edge uw is present (uw becomes a chord) and the last two vertices may be
joined by two stretches. A third parallel stretch, or a state where every
vertex has degree at least 3, certifies a K4 or K2,3 minor.

The surviving stretches spell out the Hamiltonian cycle; faces and the weak
dual are read off from the cycle and its chords.
"""

from __future__ import annotations

from bisect import bisect_right
from collections import deque
from dataclasses import dataclass, field

from .errors import InternalError, NotOuterplanarError, PreconditionError
from .graph import Graph, biconnected_components, component_of, connected_components, torso

K4 = "K4"
K23 = "K23"


@dataclass(frozen=True)
class Obstruction:
    """Minor model of K4 or K2,3.

    For K2,3 the first two branch sets form the degree-3 side.
    """

    kind: str
    branch_sets: tuple[frozenset[int], ...]

    def required_pairs(self) -> list[tuple[int, int]]:
        if self.kind == K4:
            return [(i, j) for i in range(4) for j in range(i + 1, 4)]
        return [(i, j) for i in (0, 1) for j in (2, 3, 4)]

    def vertices(self) -> set[int]:
        out: set[int] = set()
        for b in self.branch_sets:
            out |= b
        return out

    def validate(self, g: Graph) -> None:
        expected = 4 if self.kind == K4 else 5
        if self.kind not in (K4, K23) or len(self.branch_sets) != expected:
            raise InternalError(f"malformed obstruction {self}")
        seen: set[int] = set()
        for b in self.branch_sets:
            if not b or b & seen or not all(v in g for v in b):
                raise InternalError("branch sets must be non-empty, disjoint and present")
            seen |= b
            if len(component_of(g, next(iter(b)), set(b))) != len(b):
                raise InternalError(f"branch set {sorted(b)} is not connected")
        for i, j in self.required_pairs():
            bi, bj = self.branch_sets[i], self.branch_sets[j]
            if not any(g.neighbors(v) & bj for v in bi):
                raise InternalError(f"branch sets {i} and {j} are not adjacent")


@dataclass
class BlockEmbedding:
    """Outerplanar embedding of one biconnected block with at least 3 vertices."""

    cycle: list[int]
    chords: set[tuple[int, int]]
    faces: list[list[int]]
    dual: dict[int, list[int]]
    dual_edges: dict[tuple[int, int], tuple[int, int]]

    @property
    def vertices(self) -> set[int]:
        return set(self.cycle)

    def faces_at(self, v: int) -> list[int]:
        return [i for i, f in enumerate(self.faces) if v in f]


@dataclass
class OuterplanarEmbedding:
    blocks: list[BlockEmbedding]
    small_blocks: list[frozenset[int]] = field(default_factory=list)


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


# ropes: stretches of the outer cycle stored as a lazily concatenated tree.
# A rope node is (left, left_reversed, middle_vertex, right, right_reversed).


def _flatten(rope, rev: bool) -> list[int]:
    out: list[int] = []
    stack = [(rope, rev)]
    while stack:
        item = stack.pop()
        if isinstance(item, int):
            out.append(item)
            continue
        node, r = item
        if node is None:
            continue
        left, lrev, mid, right, rrev = node
        if r:
            stack.append((left, not lrev))
            stack.append(mid)
            stack.append((right, not rrev))
        else:
            stack.append((right, rrev))
            stack.append(mid)
            stack.append((left, lrev))
    return out


class _Link:
    __slots__ = ("a", "b", "rope", "rev", "chorded")

    def __init__(self, a: int, b: int):
        self.a = a
        self.b = b
        self.rope = None
        self.rev = False
        self.chorded = False

    def oriented(self, start: int):
        return self.rope, self.rev ^ (start != self.a)

    def path_from(self, start: int) -> list[int]:
        """Original vertices along this link, from `start` to the other end."""
        end = self.b if start == self.a else self.a
        if self.rope is None or self.chorded:
            return [start, end]
        return [start] + _flatten(*self.oriented(start)) + [end]


def _eliminate(g: Graph, block: frozenset[int]):
    """Run the elimination on one block.

    Returns ("ok", cycle), ("pair", u, w, first, second, nb) when a third
    stretch between u and w appears, or ("stuck", nb).
    """
    nb: dict[int, dict[int, _Link]] = {v: {} for v in block}
    for v in block:
        for w in g.neighbors(v):
            if v < w and w in block:
                link = _Link(v, w)
                nb[v][w] = link
                nb[w][v] = link
    alive = len(block)
    queue = sorted((v for v in block if len(nb[v]) == 2), reverse=True)
    while alive > 2:
        v = None
        while queue:
            cand = queue.pop()
            if cand in nb and len(nb[cand]) == 2:
                v = cand
                break
        if v is None:
            return ("stuck", nb)
        u, w = sorted(nb[v])
        r1, f1 = nb[v][u].oriented(u)
        r2, f2 = nb[v][w].oriented(v)
        rope = (r1, f1, v, r2, f2)
        del nb[u][v]
        del nb[w][v]
        del nb[v]
        alive -= 1
        link = nb[u].get(w)
        if link is None:
            link = _Link(u, w)
            link.rope = rope
            nb[u][w] = link
            nb[w][u] = link
        elif link.rope is None:
            link.rope = rope
            link.rev = link.a != u
            link.chorded = True
        else:
            first = _flatten(*link.oriented(u))
            second = _flatten(rope, False)
            if alive == 2:
                return ("ok", [u] + first + [w] + second[::-1])
            return ("pair", u, w, first, second, nb)
        if len(nb[u]) == 2:
            queue.append(u)
        if len(nb[w]) == 2:
            queue.append(w)
    u, w = sorted(nb)
    link = nb[u][w]
    if link.rope is None or not link.chorded:
        raise InternalError("elimination ended without closing the outer cycle")
    return ("ok", [u] + _flatten(*link.oriented(u)) + [w])


def _check_cycle(g: Graph, block: frozenset[int], cycle: list[int]) -> set[tuple[int, int]]:
    """Check the Hamiltonian cycle and non-crossing chords. Returns the chords."""
    if len(cycle) != len(block) or set(cycle) != set(block):
        raise InternalError("outer cycle does not cover the block")
    n = len(cycle)
    ring = set()
    for i in range(n):
        a, b = cycle[i], cycle[(i + 1) % n]
        if not g.has_edge(a, b):
            raise InternalError(f"outer cycle uses missing edge {a}-{b}")
        ring.add(edge_key(a, b))
    pos = {v: i for i, v in enumerate(cycle)}
    chords = set()
    for v in block:
        for w in g.neighbors(v):
            if v < w and w in block and (v, w) not in ring:
                chords.add((v, w))
    spans = sorted((min(pos[a], pos[b]), -max(pos[a], pos[b])) for a, b in chords)
    ends: list[int] = []
    for i, neg_j in spans:
        j = -neg_j
        while ends and ends[-1] <= i:
            ends.pop()
        if ends and j > ends[-1]:
            raise InternalError("chords cross")
        ends.append(j)
    return chords


def _faces(g: Graph, block: frozenset[int], cycle: list[int]):
    n = len(cycle)
    pos = {v: i for i, v in enumerate(cycle)}
    npos = [sorted(pos[w] for w in g.neighbors(cycle[i]) if w in block) for i in range(n)]
    faces: list[list[int]] = []
    dual: dict[int, list[int]] = {}
    dual_edges: dict[tuple[int, int], tuple[int, int]] = {}
    stack = [(0, n - 1, None)]
    while stack:
        i, j, parent = stack.pop()
        fid = len(faces)
        boundary = [i]
        children = []
        p = i
        while p != j:
            lst = npos[p]
            k = bisect_right(lst, j) - 1
            q = lst[k]
            if p == i and q == j:
                q = lst[k - 1]
            boundary.append(q)
            if q > p + 1:
                children.append((p, q))
            p = q
        faces.append([cycle[x] for x in boundary])
        dual[fid] = []
        if parent is not None:
            dual[fid].append(parent)
            dual[parent].append(fid)
            dual_edges[edge_key(cycle[i], cycle[j])] = (parent, fid)
        for p, q in reversed(children):
            stack.append((p, q, fid))
    return faces, dual, dual_edges


def _normalize(cycle: list[int]) -> list[int]:
    """Start at the smallest label, heading to its smaller cycle neighbor."""
    i = cycle.index(min(cycle))
    rot = cycle[i:] + cycle[:i]
    if len(rot) > 2 and rot[-1] < rot[1]:
        rot = [rot[0]] + rot[1:][::-1]
    return rot


# obstruction extraction


def _fast_outerplanar(g: Graph) -> bool:
    if g.n >= 2 and g.m > 2 * g.n - 3:
        return False
    blocks, _ = biconnected_components(g)
    return all(len(b) < 3 or _eliminate(g, b)[0] == "ok" for b in blocks)


def minimal_subdivision(g: Graph) -> list[tuple[int, int]]:
    """Edge set of a subdivided K4 or K2,3 inside a non-outerplanar graph.

    Delta-debugging style deletion: drop chunks of edges while the rest stays
    non-outerplanar, then finish with single-edge passes until minimal.
    """
    edges = g.edges()
    if _fast_outerplanar(Graph(edges)):
        raise PreconditionError("graph is outerplanar")
    chunk = max(1, len(edges) // 2)
    while True:
        i = 0
        removed = False
        while i < len(edges):
            trial = edges[:i] + edges[i + chunk:]
            if not _fast_outerplanar(Graph(trial)):
                edges = trial
                removed = True
            else:
                i += chunk
        if chunk == 1 and not removed:
            return edges
        chunk = max(1, chunk // 2)


def model_from_subdivision(edges: list[tuple[int, int]]) -> Obstruction:
    h = Graph(edges)
    branch = [v for v in h.vertices() if h.degree(v) >= 3]
    if any(h.degree(v) != 3 for v in branch) or len(branch) not in (2, 4):
        raise InternalError("edge set is not a subdivided K4 or K2,3")
    bset = set(branch)
    paths = []
    for b in branch:
        for nxt in sorted(h.neighbors(b)):
            path = [b, nxt]
            while path[-1] not in bset:
                a, c = path[-2], path[-1]
                path.append(next(x for x in h.neighbors(c) if x != a))
            if path[0] < path[-1]:
                paths.append(path)
    if len(branch) == 4:
        sets = {b: {b} for b in branch}
        for p in paths:
            sets[p[0]].update(p[1:-1])
        return Obstruction(K4, tuple(frozenset(sets[b]) for b in branch))
    a, b = branch
    middles = sorted((frozenset(p[1:-1]) for p in paths), key=min)
    return Obstruction(K23, (frozenset([a]), frozenset([b])) + tuple(middles))


def _obstruction_from_pair(u, w, first, second, nb) -> Obstruction | None:
    """Three internally disjoint u-w routes: the two stretches and one more."""
    parent = {u: None}
    queue = deque([u])
    while queue and w not in parent:
        a = queue.popleft()
        for b in sorted(nb[a]):
            if b in parent or (a == u and b == w):
                continue
            parent[b] = a
            queue.append(b)
    if w not in parent:
        return None
    route = [w]
    while parent[route[-1]] is not None:
        route.append(parent[route[-1]])
    route.reverse()
    third: list[int] = []
    for a, b in zip(route, route[1:]):
        third.extend(nb[a][b].path_from(a)[1:-1])
        if b != w:
            third.append(b)
    return Obstruction(
        K23,
        (frozenset([min(u, w)]), frozenset([max(u, w)]))
        + tuple(sorted((frozenset(first), frozenset(second), frozenset(third)), key=min)),
    )


def _obstruction_from_state(nb) -> Obstruction:
    h = Graph()
    for a in nb:
        h.add_vertex(a)
        for b in nb[a]:
            h.add_edge(a, b)
    sub = minimal_subdivision(h)
    edges = []
    for a, b in sub:
        path = nb[a][b].path_from(a)
        edges.extend(zip(path, path[1:]))
    return model_from_subdivision(edges)


def _block_obstruction(g: Graph, block: frozenset[int], result) -> Obstruction:
    obs = None
    if result[0] == "pair":
        obs = _obstruction_from_pair(*result[1:])
    elif result[0] == "stuck":
        obs = _obstruction_from_state(result[1])
    if obs is None:
        obs = model_from_subdivision(minimal_subdivision(g.subgraph(block)))
    obs.validate(g)
    return obs


# public API


def recognize(g: Graph) -> OuterplanarEmbedding | Obstruction:
    blocks, _ = biconnected_components(g)
    embedded = []
    small = []
    for block in blocks:
        if len(block) < 3:
            small.append(block)
            continue
        result = _eliminate(g, block)
        if result[0] != "ok":
            return _block_obstruction(g, block, result)
        cycle = _normalize(result[1])
        chords = _check_cycle(g, block, cycle)
        faces, dual, dual_edges = _faces(g, block, cycle)
        embedded.append(BlockEmbedding(cycle, chords, faces, dual, dual_edges))
    return OuterplanarEmbedding(embedded, small)


def is_outerplanar(g: Graph) -> bool:
    return _fast_outerplanar(g)


def find_obstruction(g: Graph) -> Obstruction | None:
    res = recognize(g)
    return res if isinstance(res, Obstruction) else None


def embed_biconnected(g: Graph) -> BlockEmbedding:
    """Embedding of a graph that must be a single outerplanar block (n >= 3)."""
    res = recognize(g)
    if isinstance(res, Obstruction):
        raise NotOuterplanarError("graph is not outerplanar", res)
    if len(res.blocks) != 1 or res.small_blocks or len(res.blocks[0].cycle) != g.n:
        raise PreconditionError("graph is not biconnected")
    return res.blocks[0]


def validate_embedding(g: Graph, emb: OuterplanarEmbedding) -> None:
    """Check every documented invariant of an embedding against g."""
    for be in emb.blocks:
        block = frozenset(be.cycle)
        chords = _check_cycle(g, block, be.cycle)
        if chords != be.chords:
            raise InternalError("chord set mismatch")
        m = sum(1 for v in block for w in g.neighbors(v) if v < w and w in block)
        if len(be.faces) != m - len(block) + 1:
            raise InternalError("face count violates Euler's formula")
        seen = {0}
        stack = [0]
        while stack:
            f = stack.pop()
            for h in be.dual[f]:
                if h not in seen:
                    seen.add(h)
                    stack.append(h)
        if len(seen) != len(be.faces) or len(be.dual_edges) != len(be.faces) - 1:
            raise InternalError("weak dual is not a tree")
        if set(be.dual_edges) != chords:
            raise InternalError("dual edges do not match chords")
        for (a, b), (f1, f2) in be.dual_edges.items():
            if not ({a, b} <= set(be.faces[f1]) and {a, b} <= set(be.faces[f2])):
                raise InternalError("dual edge does not separate its faces")


# structural predicates


def count_induced_uv_paths(g: Graph, u: int, v: int, limit: int = 3) -> int:
    """Components of g - {u, v} seen by both u and v, capped at limit."""
    if u == v:
        raise PreconditionError("count_induced_uv_paths needs distinct vertices")
    rest = g.vertex_set() - {u, v}
    count = 0
    for comp in connected_components(g, rest):
        cs = set(comp)
        if g.neighbors(u) & cs and g.neighbors(v) & cs:
            count += 1
            if count >= limit:
                break
    return count


def check_edge_removal_criterion(g: Graph, e: tuple[int, int]) -> bool:
    u, v = e
    if not g.has_edge(u, v):
        raise PreconditionError(f"edge {u}-{v} not in graph")
    rest = g.vertex_set() - {u, v}
    for comp in connected_components(g, rest):
        if not is_outerplanar(torso(g, comp)):
            return False
    return count_induced_uv_paths(g.without_edges([e]), u, v, 3) < 3


def cycle_attachment_check(g: Graph, cycle: list[int]) -> bool:
    n = len(cycle)
    if n < 3 or len(set(cycle)) != n:
        raise PreconditionError("not a cycle")
    for i in range(n):
        if not g.has_edge(cycle[i], cycle[(i + 1) % n]):
            raise PreconditionError("not a cycle")
    pos = {v: i for i, v in enumerate(cycle)}
    for comp in connected_components(g, g.vertex_set() - set(cycle)):
        hits = set()
        for v in comp:
            hits |= g.neighbors(v) & pos.keys()
        if len(hits) > 2:
            return False
        if len(hits) == 2:
            a, b = sorted(pos[x] for x in hits)
            if b - a != 1 and not (a == 0 and b == n - 1):
                return False
    return True
