"""Spanning quasi-trees from determinants.

The coefficient of ``x_X`` in ``f(det(I + A^s))`` is ``det(A^u[X])`` (each
Leibniz term of ``A^s[X]`` involves every index of ``X`` exactly as a row and
a column).  Mod 2 that is ``det(M[X])`` and it is 1 exactly on spanning
quasi-trees, so the production path is a sweep of GF(2) principal minors
over all ``2^n`` subsets.  The integer and symbolic paths compute the same
thing the long way and exist for cross-checking.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .core import (
    Bouquet,
    EdgeSubset,
    RibbonGraph,
    as_mask,
    as_ribbon_graph,
    format_subset,
    members,
    sorted_subsets,
)
from .errors import (
    IndexOutOfRange,
    NotABouquet,
    NotAQuasiTree,
    NotConnected,
    SizeCapExceeded,
)
from .matrices import (
    SYMBOLIC_CAP,
    SymbolicPolynomial,
    adjacency,
    det_int,
    det_symbolic,
    gf2_principal_minors,
    int_principal_minors,
    skew_adjacency,
    symbolic_skew_adjacency,
)
from .topology import (
    ORACLE_CAP,
    boundary_count,
    enumerate_quasi_trees_oracle,
    find_spanning_quasi_tree,
    partial_dual,
)

DEFAULT_CAP = 26
METHODS = ("gf2", "integer", "symbolic", "oracle")
CHUNK = 1 << 15


def default_cap() -> int:
    """Enumeration cap, overridable through ``QUASITREE_CAP``."""
    value = os.environ.get("QUASITREE_CAP")
    return int(value) if value else DEFAULT_CAP


class SubsetPolynomial:
    """Integer combination of the generators ``x_A``, ``A`` a subset of ``[n]``.

    Keys are edge bitmasks; zero coefficients are never stored.  Products
    follow ``x_A * x_B = x_{A | B}``.
    """

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Mapping[int, int] | None = None):
        self.n = n
        self.coeffs: dict[int, int] = {}
        for mask, c in (coeffs or {}).items():
            if mask >> n:
                raise IndexOutOfRange(f"subset {format_subset(mask)} outside 1..{n}")
            if c:
                self.coeffs[int(mask)] = int(c)

    def __getitem__(self, subset: EdgeSubset) -> int:
        return self.coeffs.get(as_mask(subset), 0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SubsetPolynomial) and self.n == other.n and self.coeffs == other.coeffs

    def __add__(self, other: "SubsetPolynomial") -> "SubsetPolynomial":
        acc = dict(self.coeffs)
        for m, c in other.coeffs.items():
            acc[m] = acc.get(m, 0) + c
        return SubsetPolynomial(max(self.n, other.n), acc)

    def __mul__(self, other: "SubsetPolynomial") -> "SubsetPolynomial":
        acc: dict[int, int] = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                acc[m1 | m2] = acc.get(m1 | m2, 0) + c1 * c2
        return SubsetPolynomial(max(self.n, other.n), acc)

    def mod2(self) -> "SubsetPolynomial":
        return SubsetPolynomial(self.n, {m: c % 2 for m, c in self.coeffs.items()})

    def evaluate_at_one(self) -> int:
        return sum(self.coeffs.values())

    def support(self) -> list[int]:
        return sorted_subsets(self.coeffs)

    def items(self) -> list[tuple[int, int]]:
        return [(m, self.coeffs[m]) for m in self.support()]

    def to_text(self) -> str:
        """``"x_{} + x_{1} + 2*x_{1 2 3 4}"``, terms in canonical subset order."""
        if not self.coeffs:
            return "0"
        parts = []
        for m, c in self.items():
            var = "x_{" + " ".join(str(i) for i in members(m)) + "}"
            parts.append(var if c == 1 else f"{c}*{var}")
        return " + ".join(parts)

    def to_pairs(self) -> list[list]:
        return [[list(members(m)), c] for m, c in self.items()]

    def __repr__(self) -> str:
        return f"SubsetPolynomial(n={self.n}, {self.to_text()})"


def reduce(p: SymbolicPolynomial, n: int) -> SubsetPolynomial:
    """Send each monomial to ``x_A``, ``A`` the union of its pair indices."""
    acc: dict[int, int] = {}
    for mono, c in p.terms.items():
        mask = 0
        for (i, j), _ in mono:
            if not (1 <= i <= n and 1 <= j <= n):
                raise IndexOutOfRange(f"x_{{{i}{j}}} outside 1..{n}")
            mask |= (1 << (i - 1)) | (1 << (j - 1))
        acc[mask] = acc.get(mask, 0) + c
    return SubsetPolynomial(n, acc)


@dataclass(frozen=True)
class QuasiTreeReport:
    n: int
    tau: int
    feasible: tuple[int, ...]
    mod2_poly: SubsetPolynomial
    method: str
    integer_poly: SubsetPolynomial | None = None
    edges: tuple[int, ...] = ()
    bouquet: Bouquet | None = field(default=None, compare=False)
    twist: int = 0

    def feasible_sets(self) -> list[tuple[int, ...]]:
        """Feasible sets as tuples of (original) edge labels."""
        return [self.label(m) for m in self.feasible]

    def label(self, mask: int) -> tuple[int, ...]:
        if not self.edges:
            return members(mask)
        return tuple(self.edges[i - 1] for i in members(mask))

    def to_dict(self) -> dict:
        out = {
            "schema": 1,
            "n": self.n,
            "method": self.method,
            "tau": self.tau,
            "feasible": [list(s) for s in self.feasible_sets()],
            "mod2_poly": self.mod2_poly.to_pairs(),
        }
        if self.integer_poly is not None:
            out["integer_poly"] = self.integer_poly.to_pairs()
        if self.bouquet is not None:
            out["bouquet"] = str(self.bouquet)
            out["quasi_tree"] = list(self.label(self.twist))
        return out


# ---------------------------------------------------------------- sweeps


def _sweep_chunk(args: tuple) -> np.ndarray:
    kind, payload, lo, hi = args
    masks = np.arange(lo, hi, dtype=np.int64)
    if kind == "gf2":
        return gf2_principal_minors(payload, masks)
    return int_principal_minors(payload, masks)


def _sweep(kind: str, payload, n: int, workers: int | None) -> np.ndarray:
    total = 1 << n
    bounds = [(lo, min(lo + CHUNK, total)) for lo in range(0, total, CHUNK)]
    jobs = [(kind, payload, lo, hi) for lo, hi in bounds]
    if workers and workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_chunk, jobs))
    else:
        parts = [_sweep_chunk(job) for job in jobs]
    return np.concatenate(parts)


def gf2_coefficients(b: Bouquet, workers: int | None = None) -> np.ndarray:
    """``det(M[X]) mod 2`` indexed by mask ``X``, all ``2^n`` of them."""
    return _sweep("gf2", adjacency(b), b.n, workers)


def integer_coefficients(b: Bouquet, workers: int | None = None) -> np.ndarray:
    """``det(A^u[X])`` indexed by mask ``X``."""
    return _sweep("int", skew_adjacency(b).values, b.n, workers)


def _report(n: int, mod2: SubsetPolynomial, method: str, integer: SubsetPolynomial | None = None) -> QuasiTreeReport:
    feasible = tuple(mod2.support())
    return QuasiTreeReport(n, len(feasible), feasible, mod2, method, integer)


def quasi_tree_polynomial(
    b: Bouquet,
    method: str = "gf2",
    cap: int | None = None,
    symbolic_cap: int = SYMBOLIC_CAP,
    workers: int | None = None,
) -> QuasiTreeReport:
    """Expand ``f(det(I + A^s)) mod 2`` for the bouquet ``b``.

    ``method`` selects the route: ``gf2`` (GF(2) principal minors),
    ``integer`` (exact minors, also fills ``integer_poly``), ``symbolic``
    (expanded determinant pushed through the reduction map) or ``oracle``
    (boundary tracing, no matrices at all).
    """
    n = b.n
    cap = default_cap() if cap is None else cap
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if n > cap:
        raise SizeCapExceeded(f"enumerating 2^{n} subsets exceeds cap {cap}")
    if method == "gf2":
        dets = gf2_coefficients(b, workers)
        return _report(n, SubsetPolynomial(n, {int(m): 1 for m in np.flatnonzero(dets)}), method)
    if method == "integer":
        dets = integer_coefficients(b, workers)
        integer = SubsetPolynomial(n, {int(m): int(dets[m]) for m in np.flatnonzero(dets)})
        return _report(n, integer.mod2(), method, integer)
    if method == "symbolic":
        if n > symbolic_cap:
            raise SizeCapExceeded(f"symbolic expansion of size {n} exceeds cap {symbolic_cap}")
        poly = det_symbolic(symbolic_skew_adjacency(b), add_identity=True, cap=symbolic_cap)
        integer = reduce(poly, n)
        return _report(n, integer.mod2(), method, integer)
    found = enumerate_quasi_trees_oracle(b, cap=min(cap, ORACLE_CAP))
    return _report(n, SubsetPolynomial(n, {m: 1 for m in found}), method)


def tau(b: Bouquet, workers: int | None = None) -> int:
    """Number of spanning quasi-trees of ``b``."""
    return int(gf2_coefficients(b, workers).sum())


def orientable_determinant(b: Bouquet) -> int:
    """``det(I + A^u)``; equals ``tau(b)`` when ``b`` is orientable."""
    a = skew_adjacency(b).values
    return det_int(np.eye(b.n, dtype=np.int64) + a)


# ---------------------------------------------------------------- general graphs


def quasi_trees_via_partial_dual(
    g: RibbonGraph | Bouquet,
    quasi_tree: EdgeSubset,
    method: str = "gf2",
    cap: int | None = None,
) -> QuasiTreeReport:
    """Spanning quasi-trees of a connected ribbon graph through a bouquet.

    ``g^{delta(T)}`` is a bouquet whenever ``T`` is a spanning quasi-tree;
    its feasible sets ``X`` correspond to those of ``g`` as ``X ^ T``.
    Reported masks are over ``g``'s own edge labels.
    """
    rg = as_ribbon_graph(g)
    t = as_mask(quasi_tree)
    if not rg.is_connected():
        raise NotConnected(f"ribbon graph has {len(rg.components())} components")
    comps = boundary_count(rg, t)
    if comps != 1:
        raise NotAQuasiTree(
            f"{format_subset(t)} is not a spanning quasi-tree: {comps} boundary components", comps
        )
    dual = partial_dual(rg, t)
    if dual.num_vertices != 1:
        raise NotABouquet(
            f"partial dual over a quasi-tree has {dual.num_vertices} vertices; expected 1"
        )
    bq = dual.to_bouquet()
    inner = quasi_tree_polynomial(bq, method=method, cap=cap)
    # bouquet edge k is g's edge originals[k-1]
    originals = bq.rotation.original_indices

    def lift(mask: int) -> int:
        out = 0
        for k in members(mask):
            out |= 1 << (originals[k - 1] - 1)
        return out

    n_g = max(rg.edges, default=0)
    feasible = tuple(sorted_subsets(lift(m) ^ t for m in inner.feasible))
    mod2 = SubsetPolynomial(n_g, {m: 1 for m in feasible})
    return QuasiTreeReport(
        n=rg.num_edges,
        tau=len(feasible),
        feasible=feasible,
        mod2_poly=mod2,
        method=inner.method,
        bouquet=bq,
        twist=t,
    )


def feasible_family(g: RibbonGraph | Bouquet, method: str = "gf2") -> list[int]:
    """Feasible masks of any connected ribbon graph, via the cheapest route."""
    if isinstance(g, Bouquet):
        return list(quasi_tree_polynomial(g, method=method).feasible)
    if g.num_vertices == 1:
        bq = g.to_bouquet()
        originals = bq.rotation.original_indices
        return sorted_subsets(
            sum(1 << (originals[k - 1] - 1) for k in members(m))
            for m in quasi_tree_polynomial(bq, method=method).feasible
        )
    t = find_spanning_quasi_tree(g)
    if t is None:
        raise NotConnected("ribbon graph is not connected")
    return list(quasi_trees_via_partial_dual(g, t, method=method).feasible)

