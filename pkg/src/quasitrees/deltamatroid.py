"""Set systems, twists and the symmetric exchange axiom."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import Bouquet, EdgeSubset, RibbonGraph, as_mask, mask_of, members, sorted_subsets
from .errors import ImproperSystem, NotConnected, SubsetOutOfGround
from .quasitree import feasible_family


@dataclass(frozen=True)
class SetSystem:
    """``ground`` and every member of ``family`` are edge bitmasks."""

    ground: int
    family: frozenset[int]

    def __post_init__(self) -> None:
        fam = frozenset(int(m) for m in self.family)
        object.__setattr__(self, "family", fam)
        for m in fam:
            if m & ~self.ground:
                raise SubsetOutOfGround(f"feasible set {sorted(members(m))} leaves the ground set")

    @classmethod
    def of(cls, ground: EdgeSubset, family: Iterable[EdgeSubset]) -> "SetSystem":
        return cls(as_mask(ground), frozenset(as_mask(f) for f in family))

    @property
    def proper(self) -> bool:
        return bool(self.family)

    def sorted_family(self) -> list[int]:
        return sorted_subsets(self.family)

    def __len__(self) -> int:
        return len(self.family)

    def __contains__(self, subset: EdgeSubset) -> bool:
        return as_mask(subset) in self.family

    def to_dict(self) -> dict:
        return {
            "ground": list(members(self.ground)),
            "family": [list(members(m)) for m in self.sorted_family()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def twist(d: SetSystem, subset: EdgeSubset) -> SetSystem:
    """``D * A``: every feasible set replaced by its symmetric difference with ``A``."""
    a = as_mask(subset)
    if a & ~d.ground:
        raise SubsetOutOfGround(f"twist set {sorted(members(a))} leaves the ground set")
    return SetSystem(d.ground, frozenset(a ^ x for x in d.family))


@dataclass(frozen=True)
class ExchangeViolation:
    x: int
    y: int
    u: int

    def __str__(self) -> str:
        return f"X={sorted(members(self.x))}, Y={sorted(members(self.y))}, u={self.u}"


def is_delta_matroid(d: SetSystem) -> tuple[bool, ExchangeViolation | None]:
    """Check Bouchet's symmetric exchange axiom exhaustively.

    For each feasible ``X`` and each ``u``, let ``G`` be the set of ``v`` with
    ``X ^ {u, v}`` feasible.  The axiom holds at ``(X, u)`` iff every feasible
    ``Y`` whose difference from ``X`` contains ``u`` meets ``G`` inside that
    difference.  Returns ``(True, None)`` or ``(False, witness)``.
    """
    if not d.proper:
        raise ImproperSystem("the empty set system is not proper")
    fam = d.sorted_family()
    ground = members(d.ground)
    if not ground:
        return True, None
    if d.ground.bit_length() > _DENSE_BITS:
        return _exchange_sparse(fam, ground, d.family)
    bits = np.array([1 << (u - 1) for u in ground], dtype=np.int64)
    table = np.zeros(1 << d.ground.bit_length(), dtype=bool)
    xs = np.array(fam, dtype=np.int64)
    table[xs] = True
    pairs = bits[:, None] | bits[None, :]
    # good[x, u] = mask of v with X ^ {u, v} feasible
    good_bool = table[xs[:, None, None] ^ pairs[None, :, :]]
    good = (good_bool * bits[None, None, :]).sum(axis=2)
    diff = xs[:, None] ^ xs[None, :]
    for k, u in enumerate(ground):
        touched = (diff & bits[k]) != 0
        bad = touched & ((diff & good[:, k][:, None]) == 0)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            return False, ExchangeViolation(int(xs[i]), int(xs[j]), u)
    return True, None


_DENSE_BITS = 22


def _exchange_sparse(fam: list[int], ground: tuple[int, ...], feasible: frozenset[int]):
    for x in fam:
        for u in ground:
            ubit = 1 << (u - 1)
            good = 0
            for v in ground:
                vbit = 1 << (v - 1)
                if x ^ (ubit | vbit) in feasible:
                    good |= vbit
            for y in fam:
                diff = x ^ y
                if diff & ubit and not diff & good:
                    return False, ExchangeViolation(x, y, u)
    return True, None


def delta_matroid_of(g: Bouquet | RibbonGraph, method: str = "gf2") -> SetSystem:
    """``D(G)``: the ground set and the edge sets of all spanning quasi-trees."""
    if isinstance(g, RibbonGraph) and not g.is_connected():
        raise NotConnected("delta-matroid of a disconnected ribbon graph")
    ground = mask_of(g.edges)
    return SetSystem(ground, frozenset(feasible_family(g, method=method)))
