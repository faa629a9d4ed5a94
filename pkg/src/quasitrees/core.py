"""Bouquets, signed rotations and general ribbon graphs.

A bouquet is stored as a signed rotation: the cyclic order of the ``2n``
half-edge labels ``i^a``, ``i^b`` around its single vertex, each label
carrying a sign.  A loop is non-orientable when its two ends carry opposite
signs.

General ribbon graphs are signed rotation systems: every vertex holds a
cyclic list of edge ends (occurrences) and every occurrence carries a sign.
An edge is twisted when the product of its two end signs is negative.

Edge subsets are plain ``int`` bitmasks, edge ``i`` living in bit ``i - 1``.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    DuplicateEnd,
    IndexOutOfRange,
    MalformedRibbonGraph,
    MalformedToken,
    MissingEnd,
    NotABouquet,
    RequiresIStrictlyLessThanJ,
)

EdgeSubset = Union[int, Iterable[int]]


# ---------------------------------------------------------------- subsets


def mask_of(edges: Iterable[int]) -> int:
    mask = 0
    for e in edges:
        if e < 1:
            raise IndexOutOfRange(f"edge index {e} is not positive")
        mask |= 1 << (e - 1)
    return mask


def as_mask(subset: EdgeSubset) -> int:
    """Accept either a bitmask or an iterable of 1-based edge indices."""
    if isinstance(subset, int):
        if subset < 0:
            raise IndexOutOfRange("negative edge mask")
        return subset
    return mask_of(subset)


def members(mask: int) -> tuple[int, ...]:
    """1-based edge indices contained in ``mask``, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def subset_sort_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Canonical order: by cardinality, then lexicographically on indices."""
    m = members(mask)
    return (len(m), m)


def sorted_subsets(masks: Iterable[int]) -> list[int]:
    return sorted(masks, key=subset_sort_key)


def format_subset(mask: int) -> str:
    return "{" + ",".join(str(i) for i in members(mask)) + "}"


# ---------------------------------------------------------------- labels


class Orientability(enum.Enum):
    ORIENTABLE = "orientable"
    NON_ORIENTABLE = "non-orientable"


class Interlacement(enum.Enum):
    ALIGNED = "aligned"
    REVERSED = "reversed"
    NON_INTERLACED = "non-interlaced"


@dataclass(frozen=True)
class HalfEdgeLabel:
    """One end of an edge: ``edge`` index, ``end`` in ``{"a", "b"}``, ``sign`` +-1."""

    edge: int
    end: str
    sign: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.edge, int) or self.edge < 1:
            raise MalformedToken(f"edge index must be a positive integer, got {self.edge!r}")
        if self.end not in ("a", "b"):
            raise MalformedToken(f"end marker must be 'a' or 'b', got {self.end!r}")
        if self.sign not in (1, -1):
            raise MalformedToken(f"sign must be +1 or -1, got {self.sign!r}")

    def __str__(self) -> str:
        return f"{'-' if self.sign < 0 else ''}{self.edge}{self.end}"


# ---------------------------------------------------------------- rotations


@dataclass(frozen=True)
class SignedRotation:
    """Cyclic sequence of ``2n`` signed half-edge labels with edges ``1..n``.

    ``original_indices[i - 1]`` is the label edge ``i`` carried in the input
    before canonical relabelling.
    """

    labels: tuple[HalfEdgeLabel, ...]
    original_indices: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        labels = tuple(self.labels)
        object.__setattr__(self, "labels", labels)
        if len(labels) % 2:
            raise MissingEnd("a signed rotation has even length")
        n = len(labels) // 2
        seen: set[tuple[int, str]] = set()
        for lab in labels:
            key = (lab.edge, lab.end)
            if key in seen:
                raise DuplicateEnd(f"label {lab.edge}{lab.end} occurs twice")
            seen.add(key)
        for i in range(1, n + 1):
            for end in "ab":
                if (i, end) not in seen:
                    raise MissingEnd(f"edge {i} has no '{end}' end")
        if not self.original_indices:
            object.__setattr__(self, "original_indices", tuple(range(1, n + 1)))
        elif len(self.original_indices) != n:
            raise ValueError("original_indices must have one entry per edge")

    @property
    def n(self) -> int:
        return len(self.labels) // 2

    @cached_property
    def positions(self) -> tuple[tuple[int, int], ...]:
        """``positions[i - 1] == (position of i^a, position of i^b)``."""
        pos = [[0, 0] for _ in range(self.n)]
        for k, lab in enumerate(self.labels):
            pos[lab.edge - 1][0 if lab.end == "a" else 1] = k
        return tuple((a, b) for a, b in pos)

    @cached_property
    def signs(self) -> tuple[tuple[int, int], ...]:
        s = [[1, 1] for _ in range(self.n)]
        for lab in self.labels:
            s[lab.edge - 1][0 if lab.end == "a" else 1] = lab.sign
        return tuple((a, b) for a, b in s)

    def __str__(self) -> str:
        return "[" + ", ".join(str(lab) for lab in self.labels) + "]"

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[HalfEdgeLabel]:
        return iter(self.labels)


_TOKEN = re.compile(r"^(?P<neg>[-−]?)(?P<idx>\d+)\^?(?P<end>[ab])$")
_PIECE = re.compile(r"[^\s,]+")


def parse_signed_rotation(text: str) -> SignedRotation:
    """Parse ``"[-1a, 2a, 3a, 1b, ...]"`` into a :class:`SignedRotation`.

    Tokens are separated by commas and/or whitespace; surrounding brackets are
    optional, and ``-1^a`` is accepted as a synonym of ``-1a``.  Indices need
    not be contiguous: they are relabelled ``1..n`` by increasing value and the
    original values are kept in ``original_indices``.

    >>> str(parse_signed_rotation("[5a 7a 5b 7b]"))
    '[1a, 2a, 1b, 2b]'
    """
    body_start, body_end = 0, len(text)
    stripped = text.strip()
    if stripped.startswith("["):
        body_start = text.index("[") + 1
        if not stripped.endswith("]"):
            raise MalformedToken("unbalanced '['", text, text.index("["))
        body_end = text.rindex("]")
    elif stripped.endswith("]"):
        raise MalformedToken("unbalanced ']'", text, text.rindex("]"))

    raw: list[tuple[int, str, int, int]] = []  # (index, end, sign, position)
    seen: dict[tuple[int, str], int] = {}
    for m in _PIECE.finditer(text, body_start, body_end):
        tok = _TOKEN.match(m.group())
        if tok is None:
            raise MalformedToken(f"malformed token {m.group()!r}", text, m.start())
        idx = int(tok.group("idx"))
        if idx < 1:
            raise MalformedToken("edge indices start at 1", text, m.start())
        end = tok.group("end")
        if (idx, end) in seen:
            raise DuplicateEnd(f"label {idx}{end} occurs twice", text, m.start())
        seen[(idx, end)] = m.start()
        raw.append((idx, end, -1 if tok.group("neg") else 1, m.start()))

    for (idx, end), pos in seen.items():
        other = "b" if end == "a" else "a"
        if (idx, other) not in seen:
            raise MissingEnd(f"edge {idx} has no '{other}' end", text, pos)

    originals = sorted({idx for idx, _, _, _ in raw})
    relabel = {orig: k + 1 for k, orig in enumerate(originals)}
    labels = tuple(HalfEdgeLabel(relabel[idx], end, sign) for idx, end, sign, _ in raw)
    return SignedRotation(labels, tuple(originals))


# ---------------------------------------------------------------- bouquets


@dataclass(frozen=True)
class Bouquet:
    """A one-vertex ribbon graph, identified with the signed rotation given."""

    rotation: SignedRotation

    @classmethod
    def parse(cls, text: str) -> "Bouquet":
        return cls(parse_signed_rotation(text))

    @classmethod
    def from_labels(cls, labels: Iterable[tuple[int, str, int] | HalfEdgeLabel]) -> "Bouquet":
        labs = [lab if isinstance(lab, HalfEdgeLabel) else HalfEdgeLabel(*lab) for lab in labels]
        return cls(SignedRotation(tuple(labs)))

    @property
    def n(self) -> int:
        return self.rotation.n

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(range(1, self.n + 1))

    def __str__(self) -> str:
        return str(self.rotation)

    def to_ribbon_graph(self) -> "RibbonGraph":
        return RibbonGraph((self.rotation.labels,))

    def non_orientable_loops(self) -> tuple[int, ...]:
        return tuple(i for i, (sa, sb) in enumerate(self.rotation.signs, 1) if sa != sb)


def _check_edge(b: Bouquet, i: int) -> None:
    if not 1 <= i <= b.n:
        raise IndexOutOfRange(f"edge {i} outside 1..{b.n}")


def loop_orientability(b: Bouquet, i: int) -> Orientability:
    _check_edge(b, i)
    sa, sb = b.rotation.signs[i - 1]
    return Orientability.ORIENTABLE if sa == sb else Orientability.NON_ORIENTABLE


def interlacement(b: Bouquet, i: int, j: int) -> Interlacement:
    """Relative cyclic order of the ends of loops ``i < j``, signs ignored."""
    _check_edge(b, i)
    _check_edge(b, j)
    if not i < j:
        raise RequiresIStrictlyLessThanJ(f"need i < j, got ({i}, {j})")
    length = len(b.rotation)
    ia, ib = b.rotation.positions[i - 1]
    ja, jb = b.rotation.positions[j - 1]
    rel = {k: (p - ia) % length for k, p in (("ja", ja), ("ib", ib), ("jb", jb))}
    order = tuple(sorted(rel, key=rel.__getitem__))
    if order == ("ja", "ib", "jb"):
        return Interlacement.ALIGNED
    if order == ("jb", "ib", "ja"):
        return Interlacement.REVERSED
    return Interlacement.NON_INTERLACED


def restrict(b: Bouquet, subset: EdgeSubset) -> Bouquet:
    """The bouquet ``b|_X``, relabelled ``1..|X|`` in increasing index order.

    ``original_indices`` of the result refers to the *input-level* labels of
    ``b`` so that chains of restrictions keep track of where edges came from.
    """
    mask = as_mask(subset)
    keep = [i for i in range(1, b.n + 1) if mask >> (i - 1) & 1]
    if mask >> b.n:
        raise IndexOutOfRange(f"subset {format_subset(mask)} not inside 1..{b.n}")
    relabel = {old: new for new, old in enumerate(keep, 1)}
    labels = tuple(
        HalfEdgeLabel(relabel[lab.edge], lab.end, lab.sign)
        for lab in b.rotation.labels
        if lab.edge in relabel
    )
    originals = tuple(b.rotation.original_indices[i - 1] for i in keep)
    return Bouquet(SignedRotation(labels, originals))


def is_orientable(g: "Bouquet | RibbonGraph") -> bool:
    """Whether the surface contains no Moebius band.

    For a ribbon graph this is a 2-colouring problem: choose a local
    orientation per vertex such that every edge becomes untwisted.
    """
    if isinstance(g, Bouquet):
        return not g.non_orientable_loops()
    orient: dict[int, int] = {}
    for start in range(len(g.vertices)):
        if start in orient:
            continue
        orient[start] = 1
        stack = [start]
        while stack:
            v = stack.pop()
            for e in g.incident_edges(v):
                (va, sa), (vb, sb) = g.edge_ends(e)
                u = vb if va == v else va
                want = orient[v] * sa * sb
                if u not in orient:
                    orient[u] = want
                    stack.append(u)
                elif orient[u] != want:
                    return False
    return True


# ------------------------------------------------------ rotation re-encodings


def rotate_start(rotation: SignedRotation, k: int) -> SignedRotation:
    """Same cyclic sequence read from position ``k``."""
    labs = rotation.labels
    if not labs:
        return rotation
    k %= len(labs)
    return SignedRotation(labs[k:] + labs[:k], rotation.original_indices)


def reverse_direction(rotation: SignedRotation) -> SignedRotation:
    return SignedRotation(tuple(reversed(rotation.labels)), rotation.original_indices)


def swap_ends(rotation: SignedRotation, edges: EdgeSubset) -> SignedRotation:
    """Exchange the ``a``/``b`` markers of every loop in ``edges``."""
    mask = as_mask(edges)
    labels = tuple(
        HalfEdgeLabel(lab.edge, "b" if lab.end == "a" else "a", lab.sign)
        if mask >> (lab.edge - 1) & 1
        else lab
        for lab in rotation.labels
    )
    return SignedRotation(labels, rotation.original_indices)


# ---------------------------------------------------------------- ribbon graphs


@dataclass(frozen=True)
class RibbonGraph:
    """Signed rotation system.

    ``vertices[v]`` is the cyclic tuple of edge ends around vertex ``v``.
    Edge labels are arbitrary positive integers; each must appear exactly
    once with end ``a`` and once with end ``b``.
    """

    vertices: tuple[tuple[HalfEdgeLabel, ...], ...]

    def __post_init__(self) -> None:
        verts = tuple(tuple(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        seen: dict[tuple[int, str], int] = {}
        for vi, vert in enumerate(verts):
            for occ in vert:
                if not isinstance(occ, HalfEdgeLabel):
                    raise MalformedRibbonGraph(f"vertex {vi} holds a non-occurrence {occ!r}")
                key = (occ.edge, occ.end)
                if key in seen:
                    raise MalformedRibbonGraph(f"end {occ.edge}{occ.end} occurs twice")
                seen[key] = vi
        for edge, end in seen:
            other = "b" if end == "a" else "a"
            if (edge, other) not in seen:
                raise MalformedRibbonGraph(f"edge {edge} is missing its '{other}' end")

    # -- structure -------------------------------------------------------

    @cached_property
    def _ends(self) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
        ends: dict[int, list] = {}
        for vi, vert in enumerate(self.vertices):
            for occ in vert:
                ends.setdefault(occ.edge, [None, None])[0 if occ.end == "a" else 1] = (vi, occ.sign)
        return {e: (v[0], v[1]) for e, v in sorted(ends.items())}

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(self._ends)

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self._ends)

    def edge_ends(self, e: int) -> tuple[tuple[int, int], tuple[int, int]]:
        """``((vertex of a, sign of a), (vertex of b, sign of b))``."""
        return self._ends[e]

    def is_twisted(self, e: int) -> bool:
        (_, sa), (_, sb) = self._ends[e]
        return sa * sb < 0

    def incident_edges(self, v: int) -> tuple[int, ...]:
        return tuple(dict.fromkeys(occ.edge for occ in self.vertices[v]))

    def components(self) -> list[list[int]]:
        parent = list(range(len(self.vertices)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (va, _), (vb, _) in self._ends.values():
            ra, rb = find(va), find(vb)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        groups: dict[int, list[int]] = {}
        for v in range(len(self.vertices)):
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def spanning_subgraph(self, subset: EdgeSubset) -> "RibbonGraph":
        """Keep every vertex and only the edges in ``subset``."""
        mask = as_mask(subset)
        return RibbonGraph(
            tuple(tuple(o for o in v if mask >> (o.edge - 1) & 1) for v in self.vertices)
        )

    @property
    def edge_mask(self) -> int:
        return mask_of(self.edges)

    # -- conversions -----------------------------------------------------

    def is_bouquet(self) -> bool:
        return len(self.vertices) == 1

    def to_bouquet(self) -> Bouquet:
        """Single-vertex graph as a bouquet; edges relabelled ``1..n`` ascending."""
        if len(self.vertices) != 1:
            raise NotABouquet(f"ribbon graph has {len(self.vertices)} vertices")
        originals = self.edges
        relabel = {e: k for k, e in enumerate(originals, 1)}
        labels = tuple(HalfEdgeLabel(relabel[o.edge], o.end, o.sign) for o in self.vertices[0])
        return Bouquet(SignedRotation(labels, originals))

    def to_json(self) -> str:
        return json.dumps(ribbon_graph_to_dict(self))

    @classmethod
    def from_json(cls, text: str) -> "RibbonGraph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedRibbonGraph(f"invalid JSON: {exc}") from exc
        return ribbon_graph_from_dict(data)

    @classmethod
    def from_lists(cls, vertices: Sequence[Sequence[tuple[int, str, int]]]) -> "RibbonGraph":
        return cls(tuple(tuple(HalfEdgeLabel(*o) for o in v) for v in vertices))


def ribbon_graph_to_dict(g: RibbonGraph) -> dict:
    return {
        "vertices": [
            [{"edge": o.edge, "end": o.end, "sign": o.sign} for o in v] for v in g.vertices
        ]
    }


def ribbon_graph_from_dict(data: dict) -> RibbonGraph:
    if not isinstance(data, dict) or not isinstance(data.get("vertices"), list):
        raise MalformedRibbonGraph("expected an object with a 'vertices' list")
    verts = []
    for vi, v in enumerate(data["vertices"]):
        if not isinstance(v, list):
            raise MalformedRibbonGraph(f"vertex {vi} is not a list")
        occs = []
        for occ in v:
            try:
                edge, end, sign = occ["edge"], occ["end"], occ.get("sign", 1)
            except (TypeError, KeyError) as exc:
                raise MalformedRibbonGraph(f"bad occurrence {occ!r} at vertex {vi}") from exc
            if isinstance(edge, bool) or not isinstance(edge, int):
                raise MalformedRibbonGraph(f"edge must be an integer, got {edge!r}")
            try:
                occs.append(HalfEdgeLabel(edge, end, sign))
            except MalformedToken as exc:
                raise MalformedRibbonGraph(str(exc)) from exc
        verts.append(tuple(occs))
    return RibbonGraph(tuple(verts))


def as_ribbon_graph(g: Bouquet | RibbonGraph) -> RibbonGraph:
    return g.to_ribbon_graph() if isinstance(g, Bouquet) else g
