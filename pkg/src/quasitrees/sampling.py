"""Random bouquets and ribbon graphs for the verification harness and tests."""

from __future__ import annotations

import numpy as np

from .core import Bouquet, HalfEdgeLabel, RibbonGraph, SignedRotation


def random_bouquet(n: int, p: float, rng: np.random.Generator) -> Bouquet:
    """Uniform random cyclic order of the ``2n`` labels; each loop is
    non-orientable with probability ``p``."""
    labels = [(i, end) for i in range(1, n + 1) for end in "ab"]
    order = rng.permutation(len(labels))
    a_sign = rng.choice((-1, 1), size=n)
    flip = rng.random(n) < p
    out = []
    for k in order:
        i, end = labels[k]
        s = int(a_sign[i - 1])
        if end == "b" and flip[i - 1]:
            s = -s
        out.append(HalfEdgeLabel(i, end, s))
    return Bouquet(SignedRotation(tuple(out)))


def random_ribbon_graph(
    num_vertices: int,
    num_edges: int,
    rng: np.random.Generator,
    p_negative: float = 0.5,
) -> RibbonGraph:
    """Connected random signed rotation system.

    The first ``num_vertices - 1`` edges form a random spanning tree, the rest
    join uniformly random vertices (loops allowed).  Each end gets sign -1
    with probability ``p_negative`` and every vertex a random cyclic order.
    """
    if num_vertices < 1:
        raise ValueError("need at least one vertex")
    if num_edges < num_vertices - 1:
        raise ValueError("too few edges to connect the vertices")
    ends: list[tuple[int, int]] = []
    for e in range(num_vertices - 1):
        ends.append((e + 1, int(rng.integers(0, e + 1))))
    for _ in range(num_edges - num_vertices + 1):
        ends.append((int(rng.integers(0, num_vertices)), int(rng.integers(0, num_vertices))))
    relabel = rng.permutation(num_vertices)
    verts: list[list[HalfEdgeLabel]] = [[] for _ in range(num_vertices)]
    for e, (u, v) in enumerate(ends, 1):
        for end, w in (("a", u), ("b", v)):
            sign = -1 if rng.random() < p_negative else 1
            verts[int(relabel[w])].append(HalfEdgeLabel(e, end, sign))
    for vert in verts:
        perm = rng.permutation(len(vert))
        vert[:] = [vert[k] for k in perm]
    return RibbonGraph(tuple(tuple(v) for v in verts))
