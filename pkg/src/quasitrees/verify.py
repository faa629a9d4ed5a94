"""Randomised cross-validation of the determinant side against topology.

Each instance is a random bouquet; the checks are

``oracle``       feasible sets from GF(2) minors == boundary-tracing enumeration
``sigma``        mod-2 polynomial unchanged by a start shift, a reversal and an
                 a/b swap of the signed rotation
``determinant``  ``det(I + A^u) == tau`` (orientable instances only)
``pivot``        ``M * {e} == M(B^{delta(e)})`` for a non-orientable loop ``e``
``twist``        quasi-trees of ``B^{delta(A)}`` == twist of those of ``B``

Pre-mod-2 polynomials are compared across the same re-encodings too; a
difference there is recorded as a finding, not a failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import matrices, quasitree, topology
from .core import Bouquet, format_subset, is_orientable, reverse_direction, rotate_start, swap_ends
from .deltamatroid import SetSystem, twist
from .sampling import random_bouquet

CHECKS = ("oracle", "sigma", "determinant", "pivot", "twist")


@dataclass
class CheckSummary:
    count: int
    n: int
    p: float
    seed: int
    passed: int = 0
    failed: int = 0
    ran: dict[str, int] = field(default_factory=lambda: dict.fromkeys(CHECKS, 0))
    ok: dict[str, int] = field(default_factory=lambda: dict.fromkeys(CHECKS, 0))
    integer_discrepancies: int = 0
    first_failure: str | None = None

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "count": self.count,
            "n": self.n,
            "p": self.p,
            "seed": self.seed,
            "passed": self.passed,
            "failed": self.failed,
            "checks": {c: {"ran": self.ran[c], "ok": self.ok[c]} for c in CHECKS},
            "integer_discrepancies": self.integer_discrepancies,
            "first_failure": self.first_failure,
        }

    def to_text(self) -> str:
        lines = [
            f"check: count={self.count} n={self.n} p={self.p} seed={self.seed}",
            f"instances: {self.count} passed: {self.passed} failed: {self.failed}",
            "checks: " + ", ".join(f"{c} {self.ok[c]}/{self.ran[c]}" for c in CHECKS),
            f"pre-mod-2 invariance discrepancies: {self.integer_discrepancies}",
        ]
        if self.first_failure:
            lines.append(f"first failure: {self.first_failure}")
        return "\n".join(lines)


def check_instance(b: Bouquet, rng: np.random.Generator) -> tuple[dict[str, str | None], bool]:
    """Run every applicable check on ``b``.

    Returns ``({check: None if ok else reason}, integer_discrepancy)``.
    """
    results: dict[str, str | None] = {}
    n = b.n
    report = quasitree.quasi_tree_polynomial(b, "integer")
    gf2 = quasitree.quasi_tree_polynomial(b, "gf2")
    oracle = topology.enumerate_quasi_trees_oracle(b)

    if list(gf2.feasible) == oracle and report.mod2_poly == gf2.mod2_poly:
        results["oracle"] = None
    else:
        results["oracle"] = (
            f"matrix {[format_subset(m) for m in gf2.feasible]} vs oracle {[format_subset(m) for m in oracle]}"
        )

    rot = b.rotation
    variants = {
        "start": rotate_start(rot, int(rng.integers(0, max(len(rot), 1)))),
        "reverse": reverse_direction(rot),
        "swap": swap_ends(rot, int(rng.integers(0, 1 << n))),
    }
    bad = []
    discrepancy = False
    for name, r in variants.items():
        other = quasitree.quasi_tree_polynomial(Bouquet(r), "integer")
        if other.mod2_poly != report.mod2_poly:
            bad.append(name)
        if other.integer_poly != report.integer_poly:
            discrepancy = True
    results["sigma"] = f"mod-2 polynomial changed under {bad}" if bad else None

    if is_orientable(b):
        det = quasitree.orientable_determinant(b)
        results["determinant"] = None if det == gf2.tau else f"det(I+A)={det} but tau={gf2.tau}"

    loops = b.non_orientable_loops()
    if loops:
        e = loops[0]
        lhs = matrices.pivot_gf2(matrices.adjacency(b), [e])
        dual = topology.partial_dual_edge(b, e)
        if dual.num_vertices != 1:
            results["pivot"] = f"dual at {e} has {dual.num_vertices} vertices"
        else:
            rhs = matrices.adjacency(dual.to_bouquet())
            results["pivot"] = None if lhs == rhs else f"pivot at {e}: {lhs.tolist()} vs {rhs.tolist()}"

    a = int(rng.integers(0, 1 << n))
    ground = (1 << n) - 1
    lhs_fam = SetSystem(ground, frozenset(topology.enumerate_quasi_trees_oracle(topology.partial_dual(b, a))))
    rhs_fam = twist(SetSystem(ground, frozenset(oracle)), a)
    results["twist"] = None if lhs_fam == rhs_fam else f"twist by {format_subset(a)} disagrees"
    return results, discrepancy


def run_checks(count: int, n: int, p: float, seed: int) -> CheckSummary:
    """Check ``count`` random bouquets on ``n`` loops; ``seed`` fixes everything."""
    summary = CheckSummary(count, n, p, seed)
    rng = np.random.default_rng(seed)
    for k in range(count):
        b = random_bouquet(n, p, rng)
        results, discrepancy = check_instance(b, rng)
        summary.integer_discrepancies += discrepancy
        failures = {c: why for c, why in results.items() if why is not None}
        for c in results:
            summary.ran[c] += 1
            summary.ok[c] += results[c] is None
        if failures:
            summary.failed += 1
            if summary.first_failure is None:
                c, why = next(iter(failures.items()))
                summary.first_failure = f"instance {k} {b} [{c}] {why}"
        else:
            summary.passed += 1
    return summary
