"""
Recognizing outerplanar graphs
==============================

A graph is outerplanar when it has neither a K4 nor a K2,3 minor. The
recognizer either returns an embedding or a minor model that proves the
graph is not outerplanar.
"""

from opdkernel.graph import Graph
from opdkernel.outerplanar import embed_biconnected, find_obstruction, is_outerplanar

# a fan: one apex over a path is outerplanar
fan = Graph([(1, 2), (2, 3), (3, 4), (4, 5)] + [(6, v) for v in range(1, 6)])
print("fan outerplanar:", is_outerplanar(fan))

# a biconnected outerplanar graph has exactly one Hamiltonian cycle, which is
# its outer face
emb = embed_biconnected(fan)
print("outer cycle:", emb.cycle)

# joining the path ends closes a wheel, which contains K4
wheel = fan.copy()
wheel.add_edge(1, 5)
obs = find_obstruction(wheel)
print("wheel outerplanar:", is_outerplanar(wheel))
print("obstruction:", obs.kind, [sorted(b) for b in obs.branch_sets])

# the branch sets are checked against the graph: each is connected and the
# required pairs are adjacent
obs.validate(wheel)
