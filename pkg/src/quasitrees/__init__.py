"""Spanning quasi-trees of ribbon graphs via skew-adjacency determinants."""

from .core import (
    Bouquet,
    HalfEdgeLabel,
    Interlacement,
    Orientability,
    RibbonGraph,
    SignedRotation,
    format_subset,
    interlacement,
    is_orientable,
    loop_orientability,
    mask_of,
    members,
    parse_signed_rotation,
    restrict,
)
from .deltamatroid import SetSystem, delta_matroid_of, is_delta_matroid, twist
from .matrices import (
    BinaryMatrix,
    IntegerSkewMatrix,
    SymbolicPolynomial,
    SymbolicSkewMatrix,
    adjacency,
    det_gf2,
    det_int,
    det_symbolic,
    pivot_gf2,
    symbolic_skew_adjacency,
    unsymbolic,
)
from .quasitree import (
    QuasiTreeReport,
    SubsetPolynomial,
    quasi_tree_polynomial,
    quasi_trees_via_partial_dual,
    reduce,
    tau,
)
from .topology import (
    boundary_components,
    contract,
    delete,
    enumerate_quasi_trees_oracle,
    find_spanning_quasi_tree,
    is_quasi_tree,
    partial_dual,
    partial_dual_edge,
)

__all__ = [
    "adjacency",
    "BinaryMatrix",
    "boundary_components",
    "Bouquet",
    "contract",
    "delete",
    "delta_matroid_of",
    "det_gf2",
    "det_int",
    "det_symbolic",
    "enumerate_quasi_trees_oracle",
    "find_spanning_quasi_tree",
    "format_subset",
    "HalfEdgeLabel",
    "IntegerSkewMatrix",
    "interlacement",
    "Interlacement",
    "is_delta_matroid",
    "is_orientable",
    "is_quasi_tree",
    "loop_orientability",
    "mask_of",
    "members",
    "Orientability",
    "parse_signed_rotation",
    "partial_dual",
    "partial_dual_edge",
    "pivot_gf2",
    "quasi_tree_polynomial",
    "quasi_trees_via_partial_dual",
    "QuasiTreeReport",
    "reduce",
    "restrict",
    "RibbonGraph",
    "SetSystem",
    "SignedRotation",
    "SubsetPolynomial",
    "symbolic_skew_adjacency",
    "SymbolicPolynomial",
    "SymbolicSkewMatrix",
    "tau",
    "twist",
    "unsymbolic",
]

__version__ = "0.1.0"
