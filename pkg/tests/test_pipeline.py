import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import outerplanar_graphs
from opdkernel import bounds
from opdkernel.errors import PreconditionError, UnverifiableError
from opdkernel.generators import generate_instance
from opdkernel.graph import DeleteVertex, Graph, MinorTrace, replay_trace
from opdkernel.modulator import HEURISTIC
from opdkernel.oracle import opd_exact
from opdkernel.outerplanar import is_outerplanar
from opdkernel.pipeline import (
    KERNEL,
    TRIVIALLY_NO,
    TRIVIALLY_YES,
    UNKNOWN,
    KernelConfig,
    KernelResult,
    check_obstruction,
    kernelize,
    minimize_obstruction,
    realize_obstruction,
    verify,
)
from opdkernel.protrusion import STRICT
from synth import complete, k23, union, wheel


def is_k4(h: Graph) -> bool:
    return h.n == 4 and h.m == 6


def is_k23(h: Graph) -> bool:
    degrees = sorted(h.degree(v) for v in h.vertices())
    return h.n == 5 and h.m == 6 and degrees == [2, 2, 2, 3, 3] and not is_outerplanar(h)


# kernelize


@given(outerplanar_graphs(max_n=40), st.integers(0, 3))
def test_outerplanar_input_shrinks_to_a_few_vertices(g, k):
    result = kernelize(g, k)
    if k >= g.n:
        assert result.verdict == TRIVIALLY_YES
        return
    assert result.verdict == KERNEL
    assert result.graph.n <= 3
    assert is_outerplanar(result.graph)
    assert verify(g, k, result).ok


@pytest.mark.parametrize("k", [0, 1, 2])
def test_too_many_k4s_is_trivially_no(k):
    g = union(*(complete(4, 1 + 4 * i) for i in range(k + 1)))
    result = kernelize(g, k)
    assert result.verdict == TRIVIALLY_NO
    assert result.k == 0 and is_k4(result.graph)
    assert verify(g, k, result).ok


def test_trivially_yes_when_budget_covers_everything():
    g = complete(5)
    result = kernelize(g, 5)
    assert result.verdict == TRIVIALLY_YES and result.graph == g and result.k == 5
    assert verify(g, 5, result).ok


def test_negative_budget_is_rejected():
    with pytest.raises(PreconditionError):
        kernelize(complete(3), -1)
    with pytest.raises(PreconditionError):
        kernelize(complete(3), 1, KernelConfig(mode="eager"))


def test_single_k4_with_budget_one():
    g = union(complete(4), complete(3, 10))
    result = kernelize(g, 1)
    report = verify(g, 1, result)
    assert report.ok and report.opd_in == 1


@pytest.mark.parametrize("seed", range(40))
def test_random_instances_are_equivalent(seed):
    rng = random.Random(seed)
    g, meta = generate_instance(seed, rng.randint(5, 20), rng.randint(0, 3), rng.choice([0.2, 0.5]))
    k = rng.randint(0, 3)
    result = kernelize(g, k)
    report = verify(g, k, result)
    assert report.ok, report.failures
    assert result.graph.n <= result.bound and result.graph.m <= result.bound


@pytest.mark.parametrize("seed", range(10))
def test_idempotent_in_aggressive_mode(seed):
    g, _ = generate_instance(seed, 18, 2, 0.3)
    first = kernelize(g, 2)
    if first.verdict != KERNEL:
        return
    second = kernelize(first.graph, first.k)
    assert (second.graph.n, second.graph.m, second.k) == (first.graph.n, first.graph.m, first.k)


def test_strict_mode_keeps_small_protrusions():
    g, _ = generate_instance(3, 20, 1, 0.3)
    strict = kernelize(g, 1, KernelConfig(mode=STRICT))
    aggressive = kernelize(g, 1)
    assert verify(g, 1, strict).ok
    assert strict.graph.n >= aggressive.graph.n


def test_heuristic_provider():
    g, _ = generate_instance(11, 16, 1, 0.5)
    result = kernelize(g, 1, KernelConfig(provider=HEURISTIC))
    assert result.c == 40
    if result.verdict == UNKNOWN:
        with pytest.raises(UnverifiableError):
            verify(g, 1, result)
    else:
        assert verify(g, 1, result).ok
        assert result.graph.n <= bounds.kernel_bound(40, result.k)


def test_stats_record_the_run():
    g, _ = generate_instance(5, 15, 2, 0.5)
    result = kernelize(g, 2)
    stats = result.stats
    assert stats["n_in"] == g.n and stats["n_out"] == result.graph.n
    assert stats["verdict"] == result.verdict
    assert stats["rounds"] >= 1


# verify


def test_corrupted_trace_is_caught():
    g, _ = generate_instance(2, 15, 1, 0.5)
    result = kernelize(g, 1)
    bad = MinorTrace()
    bad.steps = list(result.trace.steps) + [DeleteVertex(10_000)]
    corrupted = KernelResult(result.verdict, result.graph, result.k, bad, result.c, result.stats)
    report = verify(g, 1, corrupted)
    assert any(f.startswith("replay mismatch") for f in report.failures)
    shorter = MinorTrace()
    shorter.steps = list(result.trace.steps)[:-1]
    if result.trace.steps:
        corrupted = KernelResult(result.verdict, result.graph, result.k, shorter, result.c, result.stats)
        assert any(f.startswith("replay mismatch") for f in verify(g, 1, corrupted).failures)


def test_verify_refuses_large_or_unknown():
    g = complete(3)
    big = union(*(complete(3, 1 + 3 * i) for i in range(15)))
    with pytest.raises(UnverifiableError, match="unverifiable at this size"):
        verify(big, 1, kernelize(big, 1))
    unknown = KernelResult(UNKNOWN, g, 1, MinorTrace(), 40)
    with pytest.raises(UnverifiableError):
        verify(g, 1, unknown)


def mutated_middle_edge(g: Graph, k: int, rng: random.Random) -> KernelResult | None:
    """A broken rule: drop the middle edge of some vertex's neighbor list, no questions asked."""
    candidates = [v for v in g.vertices() if g.degree(v) >= 3]
    if not candidates:
        return None
    x = rng.choice(candidates)
    nbrs = sorted(g.neighbors(x))
    mid = nbrs[len(nbrs) // 2]
    trace = MinorTrace()
    h = g.copy()
    trace.delete_edge(h, x, mid)
    return KernelResult(KERNEL, h, k, trace, 1)


def test_mutation_harness_catches_unsafe_edge_removal():
    rng = random.Random(0)
    caught = 0
    for seed in range(200):
        g, _ = generate_instance(seed, rng.randint(4, 9), rng.randint(1, 2), 0.7)
        k = rng.randint(0, 2)
        mutant = mutated_middle_edge(g, k, rng)
        if mutant is None:
            continue
        report = verify(g, k, mutant)
        a, b = opd_exact(g, g.n), opd_exact(mutant.graph, mutant.graph.n)
        # the mutant is flagged exactly when the oracle sees a change that matters
        broken = (a <= k) != (b <= k) or (a <= k and a != b)
        assert (not report.ok) == broken
        caught += broken
    assert caught > 0


def test_mutation_on_k4():
    g = complete(4)
    trace = MinorTrace()
    h = g.copy()
    trace.delete_edge(h, 1, 3)
    report = verify(g, 0, KernelResult(KERNEL, h, 0, trace, 1))
    assert any(f.startswith("equivalence") for f in report.failures)


# obstructions


def test_realize_obstruction():
    for g in (wheel(6), union(complete(4), complete(3, 10)), k23()):
        h, trace = realize_obstruction(g)
        assert is_k4(h) or is_k23(h)
        assert replay_trace(g, trace) == h
    with pytest.raises(PreconditionError):
        realize_obstruction(complete(3))


def test_check_obstruction_examples():
    assert check_obstruction(complete(4), 0)
    assert check_obstruction(k23(), 0)
    pendant = complete(4)
    pendant.add_edge(4, 5)
    assert not check_obstruction(pendant, 0)
    assert not check_obstruction(complete(3), 0)
    assert not check_obstruction(complete(4), 1)
    with pytest.raises(UnverifiableError):
        check_obstruction(complete(13), 0)


def test_two_disjoint_k4s_are_an_obstruction_for_k1():
    g = union(complete(4), complete(4, 5))
    assert check_obstruction(g, 1)


def test_minimize_obstruction():
    h = minimize_obstruction(wheel(5), 0)
    assert check_obstruction(h, 0)
    with pytest.raises(PreconditionError):
        minimize_obstruction(complete(3), 0)


# generator


def test_generator_is_deterministic():
    a, meta_a = generate_instance(9, 20, 2, 0.5)
    b, meta_b = generate_instance(9, 20, 2, 0.5)
    assert a == b and meta_a == meta_b
    assert meta_a["apexes"] == [21, 22]


@settings(max_examples=50)
@given(st.integers(0, 2**32 - 1), st.integers(3, 40), st.floats(0, 1))
def test_generator_without_apexes_is_outerplanar(seed, n, drop):
    g, _ = generate_instance(seed, n, 0, 0.5, drop)
    assert g.n == n and is_outerplanar(g)


def test_generated_batch_respects_apex_count():
    for seed in range(100):
        rng = random.Random(seed)
        k_apex = rng.randint(0, 3)
        g, meta = generate_instance(seed, rng.randint(3, 15), k_apex, rng.choice([0.2, 0.5]))
        assert opd_exact(g, k_apex) is not None
        assert meta["k_apex"] == k_apex


# size formulas


def test_formula_values():
    assert bounds.f1(40) == 24800
    assert bounds.f2(40) == 7000
    assert bounds.f3(40) == 242400
    assert bounds.f4(3, 10) == 3 * 10 + 6 * 3 + 4 * 10
    c, d = 40, bounds.f3(40)
    assert bounds.f5(c, d) == 24 * (20 * bounds.f4(c, d) + d + c + c * c)
    assert bounds.kernel_bound(1, 0) == 2 * (25 * 6288 + 5) * bounds.f5(1, 678) * 3**4
