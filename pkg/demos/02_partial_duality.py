"""
Counting quasi-trees of any ribbon graph
========================================

Partial duality along a spanning quasi-tree ``T`` turns a connected ribbon
graph into a bouquet, and the quasi-trees of the two are related by
``X -> X ^ T``.  So the matrix method extends to every connected ribbon graph.
"""

import numpy as np

from quasitrees import (
    boundary_components,
    enumerate_quasi_trees_oracle,
    find_spanning_quasi_tree,
    partial_dual,
    quasi_trees_via_partial_dual,
)
from quasitrees.core import format_subset
from quasitrees.sampling import random_ribbon_graph

rng = np.random.default_rng(2)
g = random_ribbon_graph(num_vertices=4, num_edges=8, rng=rng)
for k, vert in enumerate(g.vertices):
    print(f"vertex {k}:", " ".join(f"{'-' if o.sign < 0 else ''}{o.edge}{o.end}" for o in vert))
print("boundary components:", boundary_components(g).count)

t = find_spanning_quasi_tree(g)
print("spanning quasi-tree T =", format_subset(t))

# The partial dual along T has a single vertex.
bq = partial_dual(g, t).to_bouquet()
print("bouquet:", bq)

r = quasi_trees_via_partial_dual(g, t)
print("tau via the bouquet:", r.tau)

# Direct boundary tracing over every subset agrees.
oracle = enumerate_quasi_trees_oracle(g)
print("tau by brute force:", len(oracle), " same sets:", list(r.feasible) == oracle)
