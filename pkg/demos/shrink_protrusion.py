"""
Shrinking a large outerplanar protrusion
========================================

A big outerplanar piece hanging off a few boundary vertices always contains
a fan, a ladder or a two-vertex cut that can be reduced without changing
the deletion number. This script finds such structures in a large random
biconnected outerplanar graph and then shrinks a small protrusion to a
fixed point.
"""

import random
import time

from opdkernel.generators import random_biconnected_outerplanar
from opdkernel.graph import Graph, connected_components
from opdkernel.oracle import opd_exact
from opdkernel.protrusion import reduce_protrusion
from opdkernel.reducible import find_reducible_structure

rng = random.Random(3)
b = random_biconnected_outerplanar(rng, 8000, chord_keep=0.6)
terminals = set(rng.sample(b.vertices(), 4))
start = time.perf_counter()
found = find_reducible_structure(b, terminals)
found.validate(b, terminals)
print(f"{type(found).__name__} found in {time.perf_counter() - start:.3f}s on {b.n} vertices")

# a K4 whose vertex 1 is the apex of a fan over the path 5..44, with the
# path end also tied to vertex 2; the path is the protrusion
g = Graph([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
for v in range(5, 45):
    g.add_edge(1, v)
    if v > 5:
        g.add_edge(v - 1, v)
g.add_edge(2, 44)
before = opd_exact(g, 3)

# apply one rule at a time until none fires
rules = []
while True:
    applied = None
    for comp in connected_components(g, g.vertex_set() - {1, 2, 3, 4}):
        applied = reduce_protrusion(g, comp)
        if applied is not None:
            break
    if applied is None:
        break
    rules.append(applied.rule)
    g = applied.graph
print(f"{len(rules)} rule applications ({', '.join(sorted(set(rules)))}), {g.n} vertices and {g.m} edges left")
print("opd before and after:", before, opd_exact(g, 3))

# what is left is below the sizes the structure finder looks for: its dual
# paths are shorter than a fan-or-ladder window and its faces are small, so
# aggressive mode stops here
print("apex neighbors left on the path:", len(g.neighbors(1) & set(range(5, 45))))
