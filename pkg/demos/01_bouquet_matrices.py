"""
Quasi-trees of a bouquet from its matrices
==========================================

A bouquet is one vertex with loops attached; its signed rotation lists the
loop ends in cyclic order.  Here we build the three matrices for a five-loop
bouquet and read its spanning quasi-trees off the principal minors.
"""

import numpy as np

from quasitrees import Bouquet, adjacency, quasi_tree_polynomial, symbolic_skew_adjacency
from quasitrees.matrices import format_matrix, skew_adjacency

b = Bouquet.parse("[-1a, 2a, 3a, 1b, 2b, -4a, 3b, -5a, 4b, 5b]")
print("loops:", b.n, " non-orientable:", b.non_orientable_loops())

# Entries are variables x_ij with a sign from the interlacement pattern;
# the diagonal flags the twisted loops.
print(format_matrix(symbolic_skew_adjacency(b).rows_str()))

# Setting every variable to 1 gives a skew integer matrix, and its absolute
# value is the GF(2) adjacency matrix.
a = skew_adjacency(b).values
m = np.array(adjacency(b).tolist())
print(a)
print(m)

# One GF(2) determinant per subset: the nonzero ones are the quasi-trees.
r = quasi_tree_polynomial(b)
print("tau =", r.tau)
print(", ".join(str(set(s)) if s else "{}" for s in r.feasible_sets()))

# Before reducing mod 2 the coefficients are plain integer minors.
integer = quasi_tree_polynomial(b, "integer").integer_poly
print("integer polynomial:", integer.to_text())
print("even coefficients (vanish mod 2):",
      [set(s) for s, c in integer.to_pairs() if c % 2 == 0])
