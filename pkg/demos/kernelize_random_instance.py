"""
Kernelizing a random instance
=============================

Generate an outerplanar graph plus a few apex vertices, shrink it with the
kernelization loop and check the answer against the exact solver.
"""

from opdkernel.generators import generate_instance
from opdkernel.oracle import opd_exact
from opdkernel.pipeline import kernelize, verify

# 22 outerplanar vertices and 2 apexes, so at most 2 deletions are needed
g, meta = generate_instance(seed=42, n_base=22, k_apex=2, p_edge=0.3)
print(f"input: {g.n} vertices, {g.m} edges, apexes {meta['apexes']}")
print("opd of the input:", opd_exact(g, 3))

result = kernelize(g, 2)
print(f"verdict {result.verdict}: {result.graph.n} vertices, {result.graph.m} edges, budget {result.k}")
print("rules fired:", result.stats["rule_fires"])
print("trace length:", len(result.trace))

# the trace replays onto the input, and the answers agree
report = verify(g, 2, result)
print("verify:", "ok" if report.ok else report.failures)

# with budget 0 the instance is a no-instance and the kernel is a bare
# obstruction
no = kernelize(g, 0)
print(f"budget 0: verdict {no.verdict}, kernel has {no.graph.n} vertices and {no.graph.m} edges")
