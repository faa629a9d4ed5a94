"""Surface topology of ribbon graphs: boundary walks and partial duality.

Everything here works on *flags*.  Each edge end (occurrence) ``o`` owns two
flags ``2*o`` and ``2*o + 1``: its two corners on the vertex boundary, in
the vertex's cyclic direction ("before" and "after").  Three fixed-point-free
involutions glue the flags into a surface:

``gamma``  vertex corners: the "after" flag of an occurrence meets the
           "before" flag of the next occurrence around the same vertex;
``beta``   edge ends: the two flags of one occurrence;
``alpha``  edge sides: the long sides of the ribbon, joining flags of the
           two ends (after->before when untwisted, after->after when twisted).

Vertices are the orbits of ``<beta, gamma>``, boundary components the orbits
of ``<alpha, gamma>``.  Partial duality on ``A`` exchanges ``alpha`` and
``beta`` on the flags of the edges in ``A``, which realises every local case
of the edge-by-edge construction at once.

This module is the independent oracle for the matrix side of the package:
nothing in it looks at skew-adjacency matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from .core import (
    Bouquet,
    EdgeSubset,
    HalfEdgeLabel,
    RibbonGraph,
    as_mask,
    as_ribbon_graph,
    format_subset,
    mask_of,
    members,
    sorted_subsets,
)
from .errors import EdgeNotPresent, MalformedRibbonGraph, SizeCapExceeded

ORACLE_CAP = 20


@dataclass(frozen=True)
class SideVisit:
    """A walk passing the ``side`` corner (0 before, 1 after) of an edge end."""

    edge: int
    end: str
    side: int

    def __str__(self) -> str:
        return f"{self.edge}{self.end}{self.side}"


@dataclass(frozen=True)
class BoundaryTrace:
    count: int
    walks: tuple[tuple[SideVisit, ...], ...]


class _Flags:
    """Flag involutions of a signed rotation system."""

    def __init__(self, g: RibbonGraph):
        occ: list[HalfEdgeLabel] = []
        gamma: list[int] = []
        for vert in g.vertices:
            start = len(occ)
            k = len(vert)
            occ.extend(vert)
            gamma.extend([0] * 2 * k)
            for t in range(k):
                here = start + t
                nxt = start + (t + 1) % k
                gamma[2 * here + 1] = 2 * nxt
                gamma[2 * nxt] = 2 * here + 1
        self.occ = occ
        self.gamma = gamma
        self.beta = [f ^ 1 for f in range(2 * len(occ))]
        self.isolated = sum(1 for v in g.vertices if not v)
        where = {(o.edge, o.end): k for k, o in enumerate(occ)}
        self.end_occ = {e: (where[(e, "a")], where[(e, "b")]) for e in g.edges}
        alpha = [0] * (2 * len(occ))
        for e, (oa, ob) in self.end_occ.items():
            if occ[oa].sign * occ[ob].sign > 0:
                pairs = ((2 * oa + 1, 2 * ob), (2 * oa, 2 * ob + 1))
            else:
                pairs = ((2 * oa, 2 * ob), (2 * oa + 1, 2 * ob + 1))
            for x, y in pairs:
                alpha[x], alpha[y] = y, x
        self.alpha = alpha

    def visit(self, f: int) -> SideVisit:
        o = self.occ[f >> 1]
        return SideVisit(o.edge, o.end, f & 1)


def _orbits(first: list[int], second: list[int]) -> Iterator[list[int]]:
    """Alternating orbits of two involutions, each started with ``first``."""
    seen = [False] * len(first)
    for f0 in range(len(first)):
        if seen[f0]:
            continue
        walk = []
        f = f0
        while True:
            seen[f] = True
            walk.append(f)
            g = first[f]
            seen[g] = True
            walk.append(g)
            f = second[g]
            if f == f0:
                break
        yield walk


def boundary_components(g: Bouquet | RibbonGraph) -> BoundaryTrace:
    """Trace the boundary of the surface ``g``.

    Every walk alternates edge sides and vertex corners; each of the
    ``4 |E|`` flags is visited exactly once.  A vertex without edges is a bare
    disc and contributes a single empty walk.
    """
    rg = as_ribbon_graph(g)
    fl = _Flags(rg)
    walks = [tuple(fl.visit(f) for f in w) for w in _orbits(fl.alpha, fl.gamma)]
    walks.extend(() for _ in range(fl.isolated))
    return BoundaryTrace(len(walks), tuple(walks))


class _SubsetCounter:
    """Boundary counts of spanning subgraphs ``(V, X)``, without rebuilding graphs."""

    def __init__(self, g: RibbonGraph):
        self.g = g
        self.vertices = [[(o.edge, o.end) for o in v] for v in g.vertices]
        self.twisted = {e: g.is_twisted(e) for e in g.edges}
        self.nv = len(g.vertices)

    def count(self, mask: int) -> int:
        slot: dict[tuple[int, str], int] = {}
        gamma: list[int] = []
        isolated = 0
        k = 0
        for vert in self.vertices:
            kept = [h for h in vert if mask >> (h[0] - 1) & 1]
            if not kept:
                isolated += 1
                continue
            start = k
            for h in kept:
                slot[h] = k
                k += 1
            gamma.extend([0] * 2 * len(kept))
            for t in range(len(kept)):
                here = start + t
                nxt = start + (t + 1) % len(kept)
                gamma[2 * here + 1] = 2 * nxt
                gamma[2 * nxt] = 2 * here + 1
        if k == 0:
            return isolated
        alpha = [0] * (2 * k)
        for (e, end), oa in slot.items():
            if end != "a":
                continue
            ob = slot[(e, "b")]
            if self.twisted[e]:
                alpha[2 * oa], alpha[2 * ob] = 2 * ob, 2 * oa
                alpha[2 * oa + 1], alpha[2 * ob + 1] = 2 * ob + 1, 2 * oa + 1
            else:
                alpha[2 * oa + 1], alpha[2 * ob] = 2 * ob, 2 * oa + 1
                alpha[2 * oa], alpha[2 * ob + 1] = 2 * ob + 1, 2 * oa
        seen = bytearray(2 * k)
        comps = 0
        for f0 in range(2 * k):
            if seen[f0]:
                continue
            comps += 1
            f = f0
            while not seen[f]:
                seen[f] = 1
                a = alpha[f]
                seen[a] = 1
                f = gamma[a]
        return comps + isolated


def boundary_count(g: Bouquet | RibbonGraph, subset: EdgeSubset | None = None) -> int:
    """Number of boundary components of the spanning subgraph ``(V, X)``."""
    rg = as_ribbon_graph(g)
    mask = rg.edge_mask if subset is None else as_mask(subset)
    return _SubsetCounter(rg).count(mask)


def is_quasi_tree(g: Bouquet | RibbonGraph, subset: EdgeSubset) -> bool:
    """Whether ``(V, X)`` has exactly one boundary component."""
    return boundary_count(g, subset) == 1


def _check_subset(rg: RibbonGraph, mask: int) -> None:
    extra = mask & ~rg.edge_mask
    if extra:
        raise EdgeNotPresent(f"edges {format_subset(extra)} are not in the ribbon graph")


def enumerate_quasi_trees_oracle(g: Bouquet | RibbonGraph, cap: int = ORACLE_CAP) -> list[int]:
    """Edge sets of all spanning quasi-trees, by brute-force boundary tracing.

    Returned as bitmasks in canonical (cardinality, lexicographic) order.
    """
    rg = as_ribbon_graph(g)
    edges = rg.edges
    if len(edges) > cap:
        raise SizeCapExceeded(f"oracle enumeration of {len(edges)} edges exceeds cap {cap}")
    counter = _SubsetCounter(rg)
    bits = [1 << (e - 1) for e in edges]
    found = []
    for r in range(len(edges) + 1):
        for combo in combinations(bits, r):
            mask = sum(combo)
            if counter.count(mask) == 1:
                found.append(mask)
    return sorted_subsets(found)


# ---------------------------------------------------------------- duality


def _rebuild(fl: _Flags, alpha: list[int], beta: list[int]) -> RibbonGraph:
    """Read a signed rotation system back off flag involutions."""
    edge_of = [fl.occ[f >> 1].edge for f in range(len(alpha))]
    # the new end containing the old (a, before) flag keeps the name "a"
    name: dict[int, str] = {}
    for e, (oa, _) in fl.end_occ.items():
        f = 2 * oa
        for x in (f, beta[f]):
            name[x] = "a"
    for f in range(len(alpha)):
        name.setdefault(f, "b")

    vertices: list[list[tuple[int, str]]] = []
    sides: dict[tuple[int, str], tuple[int, int]] = {}
    for walk in _orbits(beta, fl.gamma):
        vert = []
        for t in range(0, len(walk), 2):
            entry, exit_ = walk[t], walk[t + 1]
            key = (edge_of[entry], name[entry])
            sides[key] = (entry, exit_)
            vert.append(key)
        vertices.append(vert)

    twisted = {}
    for e in fl.end_occ:
        (_, after_a), (before_b, after_b) = sides[(e, "a")], sides[(e, "b")]
        if alpha[after_a] == before_b:
            twisted[e] = False
        elif alpha[after_a] == after_b:
            twisted[e] = True
        else:  # pragma: no cover - would mean alpha does not pair distinct ends
            raise MalformedRibbonGraph(f"edge {e} sides are not glued end to end")

    out = [
        tuple(HalfEdgeLabel(e, end, -1 if (end == "b" and twisted[e]) else 1) for e, end in vert)
        for vert in vertices
    ]
    out.extend(() for _ in range(fl.isolated))
    return RibbonGraph(tuple(out))


def _dual(rg: RibbonGraph, mask: int) -> RibbonGraph:
    fl = _Flags(rg)
    alpha, beta = list(fl.alpha), list(fl.beta)
    for e, (oa, ob) in fl.end_occ.items():
        if mask >> (e - 1) & 1:
            for f in (2 * oa, 2 * oa + 1, 2 * ob, 2 * ob + 1):
                alpha[f], beta[f] = beta[f], alpha[f]
    return _rebuild(fl, alpha, beta)


def partial_dual_edge(g: Bouquet | RibbonGraph, e: int) -> RibbonGraph:
    """``g^{delta(e)}``: re-glue vertex discs along the boundary of ``(V, {e})``."""
    rg = as_ribbon_graph(g)
    if e not in rg.edges:
        raise EdgeNotPresent(f"edge {e} is not in the ribbon graph")
    return _dual(rg, 1 << (e - 1))


def partial_dual(g: Bouquet | RibbonGraph, subset: EdgeSubset) -> RibbonGraph:
    """``g^{delta(A)}`` as single-edge duals applied in ascending edge order."""
    rg = as_ribbon_graph(g)
    mask = as_mask(subset)
    _check_subset(rg, mask)
    for e in members(mask):
        rg = _dual(rg, 1 << (e - 1))
    return rg


def delete(g: Bouquet | RibbonGraph, e: int) -> RibbonGraph:
    rg = as_ribbon_graph(g)
    if e not in rg.edges:
        raise EdgeNotPresent(f"edge {e} is not in the ribbon graph")
    return RibbonGraph(tuple(tuple(o for o in v if o.edge != e) for v in rg.vertices))


def contract(g: Bouquet | RibbonGraph, e: int) -> RibbonGraph:
    """``g / e``, defined as the partial dual at ``e`` followed by deleting ``e``."""
    return delete(partial_dual_edge(g, e), e)


def find_spanning_quasi_tree(g: Bouquet | RibbonGraph, cap: int = ORACLE_CAP) -> int | None:
    """First edge set (by cardinality, then lexicographically) of a spanning
    quasi-tree, or ``None`` when ``g`` is disconnected."""
    rg = as_ribbon_graph(g)
    if not rg.is_connected():
        return None
    edges = rg.edges
    if len(edges) > cap:
        raise SizeCapExceeded(f"search over {len(edges)} edges exceeds cap {cap}")
    counter = _SubsetCounter(rg)
    for r in range(len(edges) + 1):
        for combo in combinations(edges, r):
            mask = mask_of(combo)
            if counter.count(mask) == 1:
                return mask
    return None  # pragma: no cover - a connected graph has a spanning tree
