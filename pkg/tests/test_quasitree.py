import numpy as np
import pytest
from hypothesis import given, settings
from strategies import bouquets

from worked_example import EXAMPLE_FEASIBLE, EXAMPLE_INTEGER_POLY
from quasitrees import (
    Bouquet,
    RibbonGraph,
    SubsetPolynomial,
    SymbolicPolynomial,
    enumerate_quasi_trees_oracle,
    is_orientable,
    mask_of,
    quasi_tree_polynomial,
    quasi_trees_via_partial_dual,
    reduce,
    tau,
)
from quasitrees.errors import IndexOutOfRange, NotAQuasiTree, NotConnected, SizeCapExceeded
from quasitrees.quasitree import default_cap, feasible_family, orientable_determinant
from quasitrees.sampling import random_bouquet, random_ribbon_graph
from quasitrees.topology import find_spanning_quasi_tree

EXAMPLE_MASKS = {mask_of(s) for s in EXAMPLE_FEASIBLE}


def x(i, j, e=1):
    p = SymbolicPolynomial.var(i, j)
    out = SymbolicPolynomial.const(1)
    for _ in range(e):
        out = out * p
    return out


# ------------------------------------------------------------- reduction map


def test_reduce_examples():
    p = x(1, 2, 2) * x(3, 4, 2) * x(5, 5)
    assert reduce(p, 5).coeffs == {0b11111: 1}
    assert reduce(SymbolicPolynomial.const(1), 5).coeffs == {0: 1}
    q = SymbolicPolynomial.const(3) * x(1, 1) * x(2, 3)
    assert reduce(q, 3).coeffs == {0b111: 3}


def test_reduce_is_additive_and_rejects_out_of_range():
    p = x(1, 2) + x(1, 2, 3) + x(2, 2)
    assert reduce(p, 2).coeffs == {0b11: 2, 0b10: 1}
    with pytest.raises(IndexOutOfRange):
        reduce(x(1, 4), 3)


def test_subset_polynomial_algebra_and_text():
    p = SubsetPolynomial(3, {0: 1, 0b1: 1, 0b111: 2})
    assert p.to_text() == "x_{} + x_{1} + 2*x_{1 2 3}"
    assert p.to_pairs() == [[[], 1], [[1], 1], [[1, 2, 3], 2]]
    assert p.mod2().coeffs == {0: 1, 1: 1}
    assert p.evaluate_at_one() == 4
    assert (p * SubsetPolynomial(3, {0b10: 1})).coeffs == {0b10: 1, 0b11: 1, 0b111: 2}
    assert p[{1, 2, 3}] == 2 and p[{2}] == 0
    assert SubsetPolynomial(2).to_text() == "0"
    with pytest.raises(IndexOutOfRange):
        SubsetPolynomial(2, {0b100: 1})


# ------------------------------------------------------------- the main sweep


@pytest.mark.parametrize("method", ["gf2", "integer", "symbolic", "oracle"])
def test_example_all_methods(example, method):
    r = quasi_tree_polynomial(example, method)
    assert r.tau == 20
    assert set(r.feasible) == EXAMPLE_MASKS
    assert r.method == method


def test_example_integer_poly(example):
    r = quasi_tree_polynomial(example, "integer")
    assert r.integer_poly.coeffs == {mask_of(s): c for s, c in EXAMPLE_INTEGER_POLY.items()}
    assert r.integer_poly[{1, 2, 3, 4, 5}] == 3
    assert r.integer_poly[{1, 2, 3, 4}] == 2
    assert r.integer_poly[{4, 5}] == 2
    assert quasi_tree_polynomial(example, "symbolic").integer_poly == r.integer_poly


def test_small_cases():
    r = quasi_tree_polynomial(Bouquet.parse("[]"))
    assert r.tau == 1 and r.feasible == (0,)
    assert tau(Bouquet.parse("[-1a,1b]")) == 2
    b = Bouquet.parse("[1a,2a,1b,2b]")
    assert tau(b) == 2 == orientable_determinant(b)
    assert quasi_tree_polynomial(b).feasible == (0, 0b11)


def test_caps(example, monkeypatch):
    with pytest.raises(SizeCapExceeded):
        quasi_tree_polynomial(example, cap=4)
    big = Bouquet.parse(" ".join(f"{i}a {i}b" for i in range(1, 10)))
    with pytest.raises(SizeCapExceeded):
        quasi_tree_polynomial(big, "symbolic")
    with pytest.raises(ValueError):
        quasi_tree_polynomial(example, "nonsense")
    monkeypatch.setenv("QUASITREE_CAP", "3")
    assert default_cap() == 3
    with pytest.raises(SizeCapExceeded):
        quasi_tree_polynomial(example)


def test_report_dict(example):
    d = quasi_tree_polynomial(example, "integer").to_dict()
    assert d["schema"] == 1 and d["tau"] == 20
    assert [] in d["feasible"] and [1, 2, 3, 4, 5] in d["feasible"]
    assert [[4, 5], 2] in d["integer_poly"]


@given(bouquets(max_n=7))
@settings(max_examples=60, deadline=None)
def test_methods_agree(b):
    reports = [quasi_tree_polynomial(b, m) for m in ("gf2", "integer", "oracle")]
    assert reports[0].feasible == reports[1].feasible == reports[2].feasible
    assert reports[1].integer_poly.mod2() == reports[0].mod2_poly


@given(bouquets(max_n=5))
@settings(max_examples=30, deadline=None)
def test_symbolic_route_agrees(b):
    sym = quasi_tree_polynomial(b, "symbolic")
    integer = quasi_tree_polynomial(b, "integer")
    assert sym.integer_poly == integer.integer_poly


def test_orientable_specialization():
    rng = np.random.default_rng(5)
    for _ in range(100):
        b = random_bouquet(int(rng.integers(0, 10)), 0.0, rng)
        assert is_orientable(b)
        assert orientable_determinant(b) == tau(b)


def test_workers_path_matches_serial():
    rng = np.random.default_rng(6)
    b = random_bouquet(17, 0.5, rng)
    serial = quasi_tree_polynomial(b)
    parallel = quasi_tree_polynomial(b, workers=2)
    assert serial.feasible == parallel.feasible
    assert tau(b, workers=2) == serial.tau


# ------------------------------------------------------------- general graphs


def test_via_partial_dual_identity_on_bouquet(example):
    r = quasi_trees_via_partial_dual(example.to_ribbon_graph(), set())
    assert r.feasible == quasi_tree_polynomial(example).feasible


def test_via_partial_dual_example_twisted(example):
    r = quasi_trees_via_partial_dual(example.to_ribbon_graph(), {1})
    assert set(r.feasible) == EXAMPLE_MASKS and r.tau == 20
    assert r.to_dict()["quasi_tree"] == [1]


def test_parallel_edges():
    g = RibbonGraph.from_lists([[(1, "a", 1), (2, "a", 1)], [(2, "b", 1), (1, "b", 1)]])
    r = quasi_trees_via_partial_dual(g, {1})
    assert r.tau == 2 and r.feasible == (0b01, 0b10)
    assert list(r.feasible) == enumerate_quasi_trees_oracle(g)


def test_theta_graph():
    # plane theta: three spanning trees, each a single edge
    g = RibbonGraph.from_lists([
        [(1, "a", 1), (2, "a", 1), (3, "a", 1)],
        [(3, "b", 1), (2, "b", 1), (1, "b", 1)],
    ])
    r = quasi_trees_via_partial_dual(g, {2})
    assert r.feasible == (0b001, 0b010, 0b100)


def test_via_partial_dual_errors():
    g = RibbonGraph.from_lists([[(1, "a", 1), (2, "a", 1)], [(2, "b", 1), (1, "b", 1)]])
    with pytest.raises(NotAQuasiTree) as info:
        quasi_trees_via_partial_dual(g, {1, 2})
    assert info.value.components == 2
    with pytest.raises(NotAQuasiTree):
        quasi_trees_via_partial_dual(g, set())
    disconnected = RibbonGraph.from_lists([[(1, "a", 1), (1, "b", 1)], []])
    with pytest.raises(NotConnected):
        quasi_trees_via_partial_dual(disconnected, set())


def test_result_independent_of_quasi_tree_choice():
    rng = np.random.default_rng(23)
    for _ in range(25):
        nv = int(rng.integers(1, 5))
        g = random_ribbon_graph(nv, int(rng.integers(nv - 1, 8)), rng)
        oracle = enumerate_quasi_trees_oracle(g)
        for t in oracle[:: max(1, len(oracle) // 4)]:
            assert list(quasi_trees_via_partial_dual(g, t).feasible) == oracle
        assert feasible_family(g) == oracle
        assert find_spanning_quasi_tree(g) in oracle
