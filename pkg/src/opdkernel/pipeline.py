"""Top-level kernelization loop and its oracle-backed verifier."""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field

from . import bounds
from .errors import InternalError, PreconditionError, UnverifiableError
from .graph import Graph, MinorTrace, replay_trace
from .modulator import EXACT, NO, OpResult, Verdict, build_op_decomposition, factor_for, map_through
from .oracle import opd_exact
from .outerplanar import find_obstruction
from .protrusion import AGGRESSIVE, STRICT, Applied, build_l, reduce_protrusion

KERNEL = "kernel"
TRIVIALLY_YES = "trivially-yes"
TRIVIALLY_NO = "trivially-no"
UNKNOWN = "unknown"

# graphs larger than this are refused by the oracle-backed checks
ORACLE_LIMIT = 40
OBSTRUCTION_LIMIT = 12


@dataclass
class KernelConfig:
    provider: str = EXACT
    c: int | None = None
    mode: str = AGGRESSIVE
    # run the validators of every intermediate decomposition
    check: bool = True

    @property
    def factor(self) -> int:
        return factor_for(self.provider, self.c)


@dataclass
class KernelResult:
    verdict: str
    graph: Graph
    k: int
    trace: MinorTrace
    c: int
    stats: dict = field(default_factory=dict)

    @property
    def bound(self) -> int:
        return bounds.kernel_bound(self.c, self.k)


def realize_obstruction(g: Graph) -> tuple[Graph, MinorTrace]:
    """Turn g into a bare K4 or K2,3 by minor operations."""
    obs = find_obstruction(g)
    if obs is None:
        raise PreconditionError("graph is outerplanar")
    h = g.copy()
    trace = MinorTrace()
    trace.delete_vertices(h, h.vertex_set() - obs.vertices())
    reps = [trace.contract_set(h, b) for b in obs.branch_sets]
    wanted = {frozenset((reps[i], reps[j])) for i, j in obs.required_pairs()}
    for u, v in h.edges():
        if frozenset((u, v)) not in wanted:
            trace.delete_edge(h, u, v)
    return h, trace


def kernelize(g: Graph, k: int, config: KernelConfig | None = None) -> KernelResult:
    """Shrink (g, k) to an equivalent instance of size polynomial in k.

    Each round rebuilds the decompositions from scratch and applies the first
    rule that fires. A round in which nothing fires ends the loop, but only
    once the modulator was computed afresh rather than carried over from the
    previous round; this makes the output a fixed point.
    """
    if k < 0:
        raise PreconditionError("budget must be non-negative")
    config = config or KernelConfig()
    if config.mode not in (AGGRESSIVE, STRICT):
        raise PreconditionError(f"unknown mode {config.mode!r}")
    c = config.factor
    start = time.perf_counter()
    fired: Counter = Counter()
    stats: dict = {"n_in": g.n, "m_in": g.m, "k_in": k, "c": c, "rounds": 0}

    def finish(verdict: str, out: Graph, k_out: int, trace: MinorTrace) -> KernelResult:
        result = KernelResult(verdict, out, k_out, trace, c, stats)
        stats.update(
            verdict=verdict,
            n_out=out.n,
            m_out=out.m,
            k_out=k_out,
            rule_fires=dict(sorted(fired.items())),
            seconds=round(time.perf_counter() - start, 4),
        )
        if verdict != UNKNOWN:
            stats["bound"] = result.bound
            if out.n > result.bound or out.m > result.bound:
                raise InternalError("output exceeds the kernel size bound")
        return result

    if k >= g.n:
        return finish(TRIVIALLY_YES, g.copy(), k, MinorTrace())

    cur = g.copy()
    trace = MinorTrace()
    hint: set[int] | None = None
    stages = []
    while True:
        stats["rounds"] += 1
        res = build_op_decomposition(cur, k, config.provider, c, hint, config.check)
        if isinstance(res, Verdict):
            trace.extend(res.trace)
            if res.kind == NO:
                h, extra = realize_obstruction(res.graph)
                trace.extend(extra)
                return finish(TRIVIALLY_NO, h, 0, trace)
            return finish(UNKNOWN, res.graph, res.k, trace)
        assert isinstance(res, OpResult)
        trace.extend(res.trace)
        fired.update(res.fired)
        cur, k = res.graph, res.k
        od = res.decomposition
        stages.append({"n": cur.n, "m": cur.m, "k": k, "x": len(od.x), "z": len(od.z)})

        step = build_l(cur, k, od, config.check)
        if not isinstance(step, Applied):
            pd = step
            stages[-1]["l"] = len(pd.l)
            step = None
            for comp in pd.components(cur):
                step = reduce_protrusion(cur, comp, config.mode)
                if step is not None:
                    break
        if step is not None:
            fired[step.rule] += 1
            trace.extend(step.trace)
            cur = step.graph
            hint = map_through(od.x0, step.trace)
            continue
        if len(res.trace) == 0 and hint is None:
            break
        hint = None if len(res.trace) == 0 else set(od.x0)
    stats["stages"] = stages
    return finish(KERNEL, cur, k, trace)


@dataclass
class VerifyReport:
    failures: list[str]
    opd_in: int | None
    opd_out: int | None

    @property
    def ok(self) -> bool:
        return not self.failures


def verify(g: Graph, k: int, result: KernelResult, limit: int = ORACLE_LIMIT) -> VerifyReport:
    """Check a kernelization result against the exact solver.

    Checks trace replay, equivalence of the answers, the shift of opd by the
    budget change and the size bound. opd values above the budget are
    reported as None.
    """
    if result.verdict == UNKNOWN:
        raise UnverifiableError("an unknown verdict makes no equivalence claim")
    if g.n > limit or result.graph.n > limit:
        raise UnverifiableError(f"unverifiable at this size (more than {limit} vertices)")
    failures = []
    try:
        replayed = replay_trace(g, result.trace)
        if replayed != result.graph:
            failures.append("replay mismatch: trace does not reproduce the output graph")
    except PreconditionError as exc:
        failures.append(f"replay mismatch: {exc}")
    if result.k > k:
        failures.append(f"budget grew from {k} to {result.k}")
    opd_in = opd_exact(g, k)
    opd_out = opd_exact(result.graph, result.k)
    if (opd_in is None) != (opd_out is None):
        failures.append(f"equivalence: opd(g) <= k is {opd_in is not None}, opd(g') <= k' is {opd_out is not None}")
    elif opd_in is not None and opd_in - opd_out != k - result.k:
        failures.append(f"shift: opd {opd_in} -> {opd_out} but budget {k} -> {result.k}")
    if result.graph.n > result.bound or result.graph.m > result.bound:
        failures.append("size bound exceeded")
    return VerifyReport(failures, opd_in, opd_out)


# minor-minimal obstructions


def single_step_minors(g: Graph):
    """Every graph one vertex deletion, edge deletion or contraction away."""
    for v in g.vertices():
        yield g.without([v])
    for u, v in g.edges():
        yield g.without_edges([(u, v)])
    for u, v in g.edges():
        h = g.copy()
        h.contract(u, v)
        yield h


def check_obstruction(g: Graph, k: int, limit: int = OBSTRUCTION_LIMIT) -> bool:
    """True iff opd(g) > k while every single-step proper minor has opd <= k."""
    if g.n > limit:
        raise UnverifiableError(f"obstruction check refused above {limit} vertices")
    if opd_exact(g, k) is not None:
        return False
    return all(opd_exact(h, k) is not None for h in single_step_minors(g))


def minimize_obstruction(g: Graph, k: int, limit: int = OBSTRUCTION_LIMIT) -> Graph:
    """Greedily take single-step minors while opd stays above k."""
    if g.n > limit:
        raise UnverifiableError(f"obstruction search refused above {limit} vertices")
    if opd_exact(g, k) is not None:
        raise PreconditionError("opd(g) must exceed k")
    while True:
        for h in single_step_minors(g):
            if opd_exact(h, k) is None:
                g = h
                break
        else:
            return g
