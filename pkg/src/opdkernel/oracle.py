"""Brute-force ground truth: minor testing and exact outerplanar deletion.

`has_minor` never looks at the recognition code. It searches K4 branch sets
directly over bitmasks of connected vertex subsets and K2,3 subdivisions by
enumerating paths. The exact deletion solver
does use recognition (to find obstructions to branch on), which is itself
cross-checked against `has_minor` in the test suite.
"""

from __future__ import annotations

from .errors import PreconditionError
from .graph import Graph, connected_components
from .outerplanar import K4, K23, find_obstruction, is_outerplanar

ABOVE_CAP = None


def _trim(g: Graph) -> Graph:
    """Drop vertices of degree at most 1. Safe for minors of min degree 2."""
    h = g.copy()
    stack = [v for v in h.vertices() if h.degree(v) <= 1]
    while stack:
        v = stack.pop()
        if v not in h or h.degree(v) > 1:
            continue
        nbrs = list(h.neighbors(v))
        h.remove_vertex(v)
        stack.extend(w for w in nbrs if h.degree(w) <= 1)
    return h


def _connected_sets(adj: list[int]) -> list[int]:
    n = len(adj)
    found = set()
    frontier = [1 << i for i in range(n)]
    found.update(frontier)
    while frontier:
        nxt = []
        for s in frontier:
            nb = 0
            x = s
            while x:
                low = x & -x
                nb |= adj[low.bit_length() - 1]
                x ^= low
            nb &= ~s
            while nb:
                low = nb & -nb
                nb ^= low
                t = s | low
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    return sorted(found, key=lambda s: ((s & -s).bit_length(), s))


def _mask_neighbors(adj: list[int], s: int) -> int:
    nb = 0
    x = s
    while x:
        low = x & -x
        nb |= adj[low.bit_length() - 1]
        x ^= low
    return nb & ~s


def _components_touching(adj: list[int], rest: int, targets: list[int]) -> int:
    """Number of components of `rest` adjacent to every mask in targets."""
    count = 0
    while rest:
        seed = rest & -rest
        comp = seed
        grow = seed
        while grow:
            nb = _mask_neighbors(adj, grow) & rest & ~comp
            comp |= nb
            grow = nb
        rest &= ~comp
        nbc = _mask_neighbors(adj, comp)
        if all(nbc & t for t in targets):
            count += 1
    return count


def _search(g: Graph, kind: str) -> bool:
    order = g.vertices()
    index = {v: i for i, v in enumerate(order)}
    adj = [0] * len(order)
    for v in order:
        for w in g.neighbors(v):
            adj[index[v]] |= 1 << index[w]
    if kind == K23:
        # K2,3 has maximum degree 3, so it is a minor iff some subdivision of it
        # is a subgraph: two single vertices joined by three internally disjoint
        # paths, each with an interior vertex
        for a in range(len(order)):
            for b in range(a + 1, len(order)):
                if _three_disjoint(_interiors(adj, a, b)):
                    return True
        return False

    full = (1 << len(order)) - 1
    sets = _connected_sets(adj)
    nbr = {s: _mask_neighbors(adj, s) for s in sets}
    sets = [s for s in sets if bin(nbr[s]).count("1") >= 3]
    lowbit = {s: s & -s for s in sets}
    for i, b1 in enumerate(sets):
        for b2 in sets[i + 1:]:
            if b2 & b1 or not nbr[b1] & b2 or lowbit[b2] <= lowbit[b1]:
                continue
            u12 = b1 | b2
            for b3 in sets:
                if lowbit[b3] <= lowbit[b2] or b3 & u12:
                    continue
                if not (nbr[b1] & b3 and nbr[b2] & b3):
                    continue
                rest = full & ~(u12 | b3)
                if _components_touching(adj, rest, [b1, b2, b3]):
                    return True
    return False


def _interiors(adj: list[int], a: int, b: int) -> list[int]:
    """Inclusion-minimal interior masks of a-b paths with at least one interior vertex."""
    found = set()
    stack = [(a, 0)]
    while stack:
        v, inside = stack.pop()
        if inside and adj[v] >> b & 1:
            found.add(inside)
            # extending further only gives supersets
            continue
        nb = adj[v] & ~inside & ~(1 << a) & ~(1 << b)
        if inside:
            # stepping onto another neighbor of a also gives a superset
            nb &= ~adj[a]
        while nb:
            low = nb & -nb
            nb ^= low
            stack.append((low.bit_length() - 1, inside | low))
    masks = sorted(found, key=lambda m: bin(m).count("1"))
    minimal: list[int] = []
    for m in masks:
        if not any(s & m == s for s in minimal):
            minimal.append(m)
    return minimal


def _three_disjoint(masks: list[int]) -> bool:
    for i, p in enumerate(masks):
        for j in range(i + 1, len(masks)):
            q = masks[j]
            if p & q:
                continue
            pq = p | q
            if any(not r & pq for r in masks[j + 1:]):
                return True
    return False


def has_minor(g: Graph, kind: str) -> bool:
    """True iff g contains K4 (kind="K4") or K2,3 (kind="K23") as a minor."""
    if kind not in (K4, K23):
        raise PreconditionError(f"unknown minor {kind}")
    need = 4 if kind == K4 else 5
    h = _trim(g)
    for comp in connected_components(h):
        if len(comp) >= need and _search(h.subgraph(comp), kind):
            return True
    return False


# exact outerplanar deletion


def _packing_bound(g: Graph, forbidden: set[int], limit: int) -> int:
    """Greedy count of vertex-disjoint obstructions, stopping past limit."""
    h = g
    count = 0
    while count <= limit:
        obs = find_obstruction(h)
        if obs is None:
            break
        count += 1
        h = h.without(obs.vertices())
    return count


def _branch(g: Graph, budget: int, forbidden: frozenset[int], failed: dict) -> set[int] | None:
    key = frozenset(g.vertex_set())
    if failed.get(key, -1) >= budget:
        return None
    obs = find_obstruction(g)
    if obs is None:
        return set()
    result = None
    if budget > 0 and _packing_bound(g, set(forbidden), budget) <= budget:
        cand = sorted(obs.vertices() - forbidden, key=lambda v: (-g.degree(v), v))
        for v in cand:
            sub = _branch(g.without([v]), budget - 1, forbidden, failed)
            if sub is not None:
                result = sub | {v}
                break
    if result is None:
        failed[key] = max(failed.get(key, -1), budget)
    return result


def min_deletion_set(g: Graph, cap: int, avoid: frozenset[int] | set[int] = frozenset()) -> set[int] | None:
    """A minimum outerplanar deletion set avoiding `avoid`, or None above cap."""
    avoid = frozenset(avoid)
    h = _trim(g)
    solution: set[int] = set()
    remaining = cap
    for comp in connected_components(h):
        sub = h.subgraph(comp)
        if is_outerplanar(sub):
            continue
        failed: dict = {}
        found = None
        for size in range(remaining + 1):
            found = _branch(sub, size, avoid, failed)
            if found is not None:
                break
        if found is None:
            return None
        solution |= found
        remaining -= len(found)
    return solution


def opd_exact(g: Graph, cap: int) -> int | None:
    """opd(g), or None when it exceeds cap."""
    sol = min_deletion_set(g, cap)
    return None if sol is None else len(sol)


def opd_exact_avoiding(g: Graph, v: int, cap: int) -> int | None:
    """Smallest deletion set that does not contain v, or None above cap."""
    if v not in g:
        raise PreconditionError(f"vertex {v} not in graph")
    sol = min_deletion_set(g, cap, {v})
    return None if sol is None else len(sol)
