"""
Quasi-tree families as delta-matroids
=====================================

The spanning quasi-trees of a ribbon graph satisfy the symmetric exchange
axiom.  Twisting the family by a set ``A`` gives the family of the partial
dual along ``A``, and pivoting the adjacency matrix on a twisted loop gives
the adjacency matrix of the dual bouquet.
"""

from quasitrees import (
    Bouquet,
    SetSystem,
    adjacency,
    delta_matroid_of,
    is_delta_matroid,
    partial_dual,
    partial_dual_edge,
    pivot_gf2,
    twist,
)

b = Bouquet.parse("[-1a, 2a, 3a, 1b, 2b, -4a, 3b, -5a, 4b, 5b]")
d = delta_matroid_of(b)
print(len(d), "feasible sets; exchange axiom:", is_delta_matroid(d)[0])

for a in ({1}, {2, 4}, {1, 2, 3, 4, 5}):
    dual = delta_matroid_of(partial_dual(b, a))
    print(f"twist by {sorted(a)} matches partial dual: {twist(d, a) == dual}")

# A family that breaks exchange, with the witness that shows it.
ok, witness = is_delta_matroid(SetSystem.of({1, 2, 3}, [{1}, {2, 3}]))
print("bad family:", ok, witness)

# Pivoting on loop 1 (twisted) reproduces the dual's adjacency matrix.
lhs = pivot_gf2(adjacency(b), {1})
rhs = adjacency(partial_dual_edge(b, 1).to_bouquet())
print(lhs.tolist())
print("equal:", lhs == rhs)
