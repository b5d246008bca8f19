"""Augmented modulators and outerplanar decompositions.

Pipeline order: a modulator X0 from the provider, a repair set R(v) for every
v in X0 (so v can be put back), then the degree reduction that caps how many
components two modulator vertices may share, the separator set Z, and the
removal of components hanging off a single vertex.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations

from . import bounds
from .errors import InternalError, NotOuterplanarError, PreconditionError
from .graph import (
    ContractEdge,
    DeleteVertex,
    Graph,
    MinorTrace,
    connected_components,
    max_disjoint_paths,
    min_vertex_cut,
    neighborhood,
    torso,
)
from .oracle import min_deletion_set
from .outerplanar import find_obstruction, is_outerplanar
from .treedecomp import decompose_outerplanar, expand_separator

EXACT = "exact"
HEURISTIC = "heuristic"
DEFAULT_FACTOR = {EXACT: 1, HEURISTIC: 40}

# verdict kinds
NO = "no"
UNKNOWN = "unknown"

TYPE_A = "A"
TYPE_B = "B"
TYPE_C = "C"


@dataclass
class Verdict:
    """A run that ended without a decomposition.

    kind is NO (opd exceeds the budget, certain) or UNKNOWN (the heuristic
    provider found no small enough modulator). graph, k and trace describe
    the instance reached when the verdict was made.
    """

    kind: str
    reason: str
    graph: Graph | None = None
    k: int = 0
    trace: MinorTrace = field(default_factory=MinorTrace)


def factor_for(mode: str, c: int | None = None) -> int:
    if mode not in DEFAULT_FACTOR:
        raise PreconditionError(f"unknown provider mode {mode!r}")
    return DEFAULT_FACTOR[mode] if c is None else c


def map_through(x: set[int], steps) -> set[int]:
    """Follow a vertex set through trace steps.

    A contraction touching x keeps the merged vertex in x, so g - x stays a
    minor of the old g - x.
    """
    out = set(x)
    for step in steps:
        if isinstance(step, DeleteVertex):
            out.discard(step.v)
        elif isinstance(step, ContractEdge):
            if step.u in out or step.v in out:
                out.discard(step.u)
                out.discard(step.v)
                out.add(step.into)
    return out


def _greedy_modulator(g: Graph) -> set[int]:
    x: set[int] = set()
    h = g.copy()
    while True:
        obs = find_obstruction(h)
        if obs is None:
            break
        v = max(obs.vertices(), key=lambda w: (h.degree(w), -w))
        x.add(v)
        h.remove_vertex(v)
    for v in sorted(x):
        if is_outerplanar(g.without(x - {v})):
            x.discard(v)
    return x


def _packing_exceeds(g: Graph, k: int) -> bool:
    """True when k+1 vertex-disjoint obstructions are found greedily."""
    h = g
    for _ in range(k + 1):
        obs = find_obstruction(h)
        if obs is None:
            return False
        h = h.without(obs.vertices())
    return True


def modulator_provider(
    g: Graph, k: int, mode: str = EXACT, c: int | None = None, hint: set[int] | None = None
) -> set[int] | Verdict:
    """An outerplanar deletion set of size at most c*k, or a verdict.

    Exact mode returns a minimum deletion set and answers NO when opd(g) > c*k.
    Heuristic mode deletes the highest-degree vertex of one obstruction at a
    time and answers UNKNOWN when the result is too large (or NO when it can
    certify the bound by disjoint obstructions). A hint that is still a valid
    deletion set within the size cap is returned as is.
    """
    c = factor_for(mode, c)
    cap = c * k
    if hint is not None:
        hint = {v for v in hint if v in g}
        if len(hint) <= cap and is_outerplanar(g.without(hint)):
            return hint
    if is_outerplanar(g):
        return set()
    if mode == EXACT:
        x = min_deletion_set(g, cap)
        if x is None:
            return Verdict(NO, f"no deletion set of size at most {cap}")
        return x
    x = _greedy_modulator(g)
    if len(x) <= cap:
        return x
    if _packing_exceeds(g, k):
        return Verdict(NO, f"{k + 1} disjoint obstructions")
    return Verdict(UNKNOWN, f"greedy modulator has {len(x)} > {cap} vertices")


def avoidance_set(g: Graph, v: int, k: int) -> set[int] | None:
    """A deletion set of size at most 3k avoiding v, or None (refusal).

    g - v must be outerplanar. The refusal means no deletion set of size at
    most k avoids v. Works bottom-up over a width-2 decomposition of g - v,
    marking a node whenever the part below it (minus parts already cut off)
    together with v stops being outerplanar.
    """
    if v not in g:
        raise PreconditionError(f"vertex {v} not in graph")
    h = g.without([v])
    if not is_outerplanar(h):
        raise NotOuterplanarError("g - v must be outerplanar", find_obstruction(h))
    if h.n == 0 or is_outerplanar(g):
        return set()
    td = decompose_outerplanar(h)
    below = td.subtree_vertices()
    cut_off: set[int] = set()
    marked: list[int] = []
    for t in td.tree.postorder():
        part = (below[t] - cut_off) | {v}
        if not is_outerplanar(g.subgraph(part)):
            marked.append(t)
            if len(marked) > k:
                return None
            cut_off |= below[t]
    s: set[int] = set()
    for t in marked:
        s |= td.bags[t]
    if not is_outerplanar(g.without(s)):
        raise InternalError("avoidance set does not make the graph outerplanar")
    return s


@dataclass
class AugmentedModulator:
    x0: set[int]
    x1: set[int]
    r: dict[int, set[int]]
    c: int

    @property
    def vertices(self) -> set[int]:
        return self.x0 | self.x1

    def pair_type(self, u: int, v: int) -> str:
        if u in self.x0 and v in self.x0:
            return TYPE_A
        if (u in self.x0 and v in self.r[u]) or (v in self.x0 and u in self.r[v]):
            return TYPE_A
        if u in self.x0 or v in self.x0:
            return TYPE_B
        return TYPE_C

    def validate(self, g: Graph, k: int, thorough: bool = False) -> None:
        if self.x0 & self.x1:
            raise InternalError("x0 and x1 overlap")
        if not self.vertices <= g.vertex_set():
            raise InternalError("modulator vertex missing from graph")
        if set(self.r) != self.x0:
            raise InternalError("repair sets must be indexed by x0")
        if len(self.x0) > self.c * k:
            raise InternalError(f"|x0| = {len(self.x0)} exceeds c*k = {self.c * k}")
        if not is_outerplanar(g.without(self.x0)):
            raise InternalError("g - x0 is not outerplanar")
        union: set[int] = set()
        for v, rv in self.r.items():
            if len(rv) > 3 * k:
                raise InternalError(f"repair set of {v} has {len(rv)} > 3k vertices")
            if not is_outerplanar(g.without((self.x0 - {v}) | rv)):
                raise InternalError(f"vertex {v} cannot be put back")
            union |= rv
        if union != self.x1:
            raise InternalError("x1 is not the union of the repair sets")
        if thorough:
            x = self.vertices
            for v in sorted(x):
                if not is_outerplanar(g.without(x - {v})):
                    raise InternalError(f"putting back {v} breaks outerplanarity")

    def restricted(self, g: Graph) -> AugmentedModulator:
        """Drop vertices no longer in g. Repair sets shrink accordingly."""
        x0 = {v for v in self.x0 if v in g}
        r = {v: {w for w in self.r[v] if w in g} for v in x0}
        x1: set[int] = set()
        for rv in r.values():
            x1 |= rv
        return AugmentedModulator(x0, x1, r, self.c)


@dataclass
class AugmentedResult:
    graph: Graph
    k: int
    modulator: AugmentedModulator
    trace: MinorTrace
    forced: int = 0


def build_augmented(
    g: Graph, k: int, mode: str = EXACT, c: int | None = None, hint: set[int] | None = None
) -> AugmentedResult | Verdict:
    """Compute an augmented modulator, deleting vertices every small solution needs.

    Each deletion lowers k by one. The returned graph is an induced subgraph
    of g and the trace holds the deletions.
    """
    c = factor_for(mode, c)
    g = g.copy()
    trace = MinorTrace()
    forced = 0
    while True:
        if k <= 0:
            if is_outerplanar(g):
                return AugmentedResult(g, 0, AugmentedModulator(set(), set(), {}, c), trace, forced)
            return Verdict(NO, "budget exhausted on a non-outerplanar graph", g, 0, trace)
        x0 = modulator_provider(g, k, mode, c, hint)
        if isinstance(x0, Verdict):
            x0.graph, x0.k, x0.trace = g, k, trace
            return x0
        r: dict[int, set[int]] = {}
        refused = None
        for v in sorted(x0):
            s = avoidance_set(g.without(x0 - {v}), v, k)
            if s is None:
                refused = v
                break
            r[v] = s
        if refused is None:
            x1: set[int] = set()
            for s in r.values():
                x1 |= s
            return AugmentedResult(g, k, AugmentedModulator(set(x0), x1, r, c), trace, forced)
        trace.delete_vertex(g, refused)
        k -= 1
        forced += 1
        hint = x0 - {refused}


# component graph


@dataclass
class ComponentGraph:
    """Bipartite graph between modulator vertices and components of g - x."""

    modulator: list[int]
    components: list[frozenset[int]]
    edges: list[tuple[int, int]]  # (modulator vertex, component index)

    def degree_of_component(self, i: int) -> int:
        return sum(1 for _, j in self.edges if j == i)

    def neighbors_of_component(self, i: int) -> list[int]:
        return [x for x, j in self.edges if j == i]


def component_graph(g: Graph, x: set[int]) -> ComponentGraph:
    comps = [frozenset(c) for c in connected_components(g, g.vertex_set() - set(x))]
    edges = []
    for i, comp in enumerate(comps):
        for w in sorted(neighborhood(g, comp) & set(x)):
            edges.append((w, i))
    edges.sort()
    return ComponentGraph(sorted(x), comps, edges)


# reductions


def rule1_reduce_degree(g: Graph, k: int, am: AugmentedModulator, check: bool = True) -> tuple[Graph, MinorTrace]:
    """Keep at most k+3 shared components per modulator pair.

    Components are marked in order of their smallest label. A pair's choice
    does not depend on other pairs, so the pair order is immaterial.
    """
    if check:
        am.validate(g, k)
    g = g.copy()
    trace = MinorTrace()
    x = am.vertices
    comps = connected_components(g, g.vertex_set() - x)
    attach = [sorted(neighborhood(g, comp) & x) for comp in comps]
    shared: Counter = Counter()
    marked: set[tuple[int, int]] = set()
    for i, nbrs in enumerate(attach):
        for u, v in combinations(nbrs, 2):
            if shared[u, v] < k + 3:
                shared[u, v] += 1
                marked.add((u, i))
                marked.add((v, i))
    for i, comp in enumerate(comps):
        for w in attach[i]:
            if (w, i) in marked:
                continue
            for a in sorted(g.neighbors(w) & set(comp)):
                trace.delete_edge(g, w, a)
    for comp in comps:
        if not neighborhood(g, comp):
            trace.delete_vertices(g, comp)
    for w in sorted(x):
        if g.degree(w) == 0:
            trace.delete_vertex(g, w)
    return g, trace


def rule2_remove_pendant(g: Graph, comp) -> tuple[Graph, MinorTrace]:
    """Delete a vertex set that hangs off at most one vertex."""
    comp = set(comp)
    if not comp or not comp <= g.vertex_set():
        raise PreconditionError("set must be a non-empty subset of the graph")
    if len(neighborhood(g, comp)) > 1:
        raise PreconditionError("set has more than one neighbor")
    if not is_outerplanar(torso(g, comp)):
        raise PreconditionError("set together with its neighbor is not outerplanar")
    g = g.copy()
    trace = MinorTrace()
    trace.delete_vertices(g, comp)
    return g, trace


def outerplanar_separator(g: Graph, x) -> set[int]:
    """Y disjoint from x with |Y| <= 4|x| such that x is pairwise (x+Y)-separated.

    Vertices of x are peeled off in order of decreasing depth of their
    topmost bag. Each is cut from the rest of x by a minimum vertex cut that
    avoids x; such a cut has at most four vertices.
    """
    x = set(x)
    if not is_outerplanar(g):
        raise NotOuterplanarError("separator needs an outerplanar graph", find_obstruction(g))
    if not x <= g.vertex_set():
        raise PreconditionError("x must be a subset of the graph")
    if len(x) <= 1:
        return set()
    h = g.without_edges([(u, v) for u, v in g.edges() if u in x and v in x])
    td = decompose_outerplanar(h)
    order = sorted(x, key=lambda v: (-td.tree.depth[td.topmost[v]], v))
    y: set[int] = set()
    for i, v in enumerate(order[:-1]):
        rest = set(order[i + 1:])
        _, cut = min_vertex_cut(h, [v], rest, cap=5, uncuttable=x)
        if cut is None or len(cut) > 4:
            raise InternalError(f"vertex {v} needs more than four separator vertices")
        y |= cut
        h = h.without([v])
    return y


def compute_z(g: Graph, k: int, am: AugmentedModulator) -> set[int]:
    """Separator set Z for all modulator pairs without k+4 disjoint paths."""
    x = am.vertices
    z: set[int] = set()
    for u, v in combinations(sorted(x), 2):
        if am.pair_type(u, v) == TYPE_C:
            continue
        h = g.without(x - {u, v})
        if h.has_edge(u, v):
            h = h.without_edges([(u, v)])
        count, sep = max_disjoint_paths(h, u, v, k + 4)
        if count <= k + 3:
            z |= sep
    if am.x1:
        z |= outerplanar_separator(g.without(am.x0), am.x1)
    return z


@dataclass
class OpDecomposition:
    modulator: AugmentedModulator
    z: set[int]
    k: int
    d: int

    @property
    def x0(self) -> set[int]:
        return self.modulator.x0

    @property
    def x1(self) -> set[int]:
        return self.modulator.x1

    @property
    def x(self) -> set[int]:
        return self.modulator.vertices

    @property
    def c(self) -> int:
        return self.modulator.c

    def components(self, g: Graph) -> list[list[int]]:
        return connected_components(g, g.vertex_set() - self.x - self.z)

    def validate(self, g: Graph) -> None:
        k = self.k
        self.modulator.validate(g, k)
        x = self.x
        if self.z & x or not self.z <= g.vertex_set():
            raise InternalError("z must be a subset of g disjoint from the modulator")
        comps = self.components(g)
        checked: set[tuple[int, int]] = set()
        for comp in comps:
            nbrs = neighborhood(g, comp)
            if len(nbrs & self.z) > 4:
                raise InternalError(f"component at {comp[0]} sees {len(nbrs & self.z)} vertices of z")
            for u, v in combinations(sorted(nbrs & x), 2):
                if (u, v) in checked:
                    continue
                checked.add((u, v))
                h = g.without_edges([(u, v)]) if g.has_edge(u, v) else g
                if max_disjoint_paths(h, u, v, k + 4)[0] < k + 4:
                    raise InternalError(f"pair {u},{v} is neither separated nor well connected")
        limit = self.d * (k + 3) ** 3
        if len(self.z) > limit or len(comps) > limit:
            raise InternalError("decomposition exceeds its size bound")


@dataclass
class OpResult:
    graph: Graph
    k: int
    decomposition: OpDecomposition
    trace: MinorTrace
    fired: Counter


def build_op_decomposition(
    g: Graph,
    k: int,
    mode: str = EXACT,
    c: int | None = None,
    hint: set[int] | None = None,
    check: bool = True,
) -> OpResult | Verdict:
    """Augmented modulator, degree reduction, separator Z and pendant removal."""
    c = factor_for(mode, c)
    aug = build_augmented(g, k, mode, c, hint)
    if isinstance(aug, Verdict):
        return aug
    g, k, am, trace = aug.graph, aug.k, aug.modulator, aug.trace
    fired: Counter = Counter()
    if aug.forced:
        fired["forced-vertex"] += aug.forced

    g2, t1 = rule1_reduce_degree(g, k, am, check=check)
    if len(t1):
        fired["rule1"] += 1
        trace.extend(t1)
        g = g2
        am = am.restricted(g)

    x = am.vertices
    z = expand_separator(g.without(x), compute_z(g, k, am))
    for comp in connected_components(g, g.vertex_set() - x - z):
        if len(neighborhood(g, comp)) <= 1:
            g, t2 = rule2_remove_pendant(g, comp)
            trace.extend(t2)
            fired["rule2"] += 1

    od = OpDecomposition(am, z, k, bounds.f3(c))
    if check:
        od.validate(g)
    return OpResult(g, k, od, trace, fired)
