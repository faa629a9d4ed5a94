import itertools
import math

import numpy as np
import pytest
import sympy
from sympy.combinatorics import Permutation
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import bouquets

from worked_example import EXAMPLE_EXPANSION, EXAMPLE_SYMBOLIC
from quasitrees import (
    BinaryMatrix,
    Bouquet,
    SymbolicPolynomial,
    adjacency,
    det_gf2,
    det_int,
    det_symbolic,
    members,
    pivot_gf2,
    reduce,
    symbolic_skew_adjacency,
    unsymbolic,
)
from quasitrees.core import reverse_direction, rotate_start, swap_ends
from quasitrees.errors import DeterminantOverflow, SingularPivotBlock, SizeCapExceeded
from quasitrees.matrices import (
    bareiss_det,
    format_matrix,
    gf2_principal_minors,
    int_principal_minors,
    matrices_dict,
    skew_adjacency,
)


def leibniz(a):
    """Determinant straight from the permutation sum."""
    k = len(a)
    total = 0
    for perm in itertools.permutations(range(k)):
        sign = Permutation(list(perm)).signature() if k else 1
        prod = 1
        for i, j in enumerate(perm):
            prod *= int(a[i][j])
        total += sign * prod
    return total


def sub(a, mask):
    idx = [i - 1 for i in members(mask)]
    return np.asarray(a)[np.ix_(idx, idx)]


# ------------------------------------------------------------- constructions


def test_symbolic_matches_displayed_matrix(example):
    s = symbolic_skew_adjacency(example)
    expected = np.zeros((5, 5), dtype=int)
    for (i, j), sign in EXAMPLE_SYMBOLIC.items():
        expected[i - 1, j - 1] = sign
    assert np.array_equal(s.signs, expected)
    assert s.entry_str(1, 1) == "x_{11}"
    assert s.entry_str(2, 1) == "-x_{12}"
    assert s.entry_str(1, 4) == "0"


def test_symbolic_small():
    assert symbolic_skew_adjacency(Bouquet.parse("[1a,1b]")).rows_str() == [["0"]]
    assert symbolic_skew_adjacency(Bouquet.parse("[-1a,1b]")).rows_str() == [["x_{11}"]]


def test_unsymbolic_rows(example):
    u = unsymbolic(symbolic_skew_adjacency(example)).tolist()
    assert u[0] == [1, 1, 1, 0, 0]
    assert u[3] == [0, 0, -1, 1, 1]
    assert unsymbolic(symbolic_skew_adjacency(Bouquet.parse("[-1a,1b]"))).tolist() == [[1]]
    assert unsymbolic(symbolic_skew_adjacency(Bouquet.parse("[1a,2a,2b,1b]"))).tolist() == [[0, 0], [0, 0]]


def test_adjacency(example):
    m = adjacency(example)
    ones = {(1, 1), (1, 2), (1, 3), (2, 3), (3, 4), (4, 4), (4, 5), (5, 5)}
    ones |= {(j, i) for i, j in ones}
    assert m.tolist() == [[int((i, j) in ones) for j in range(1, 6)] for i in range(1, 6)]
    assert adjacency(Bouquet.parse("[1a,1b]")).tolist() == [[0]]
    assert adjacency(Bouquet.parse("[1a,2a,1b,2b]")).tolist() == [[0, 1], [1, 0]]


def test_matrix_rendering(example):
    text = format_matrix(symbolic_skew_adjacency(example).rows_str())
    assert text.splitlines()[0].split() == ["[", "x_{11}", "x_{12}", "x_{13}", "0", "0]"]
    d = matrices_dict(example)
    assert d["unsymbolic"][4] == [0, 0, 0, -1, 1]


def test_binary_matrix_must_be_symmetric():
    with pytest.raises(ValueError):
        BinaryMatrix.from_array([[0, 1], [0, 0]])


# ------------------------------------------------------------- determinants


def test_det_gf2_example(example):
    m = adjacency(example)
    assert det_gf2(m, {2, 3}) == 1
    assert det_gf2(m, {2}) == 0
    assert det_gf2(m, set()) == 1
    assert det_gf2(BinaryMatrix(()), 0) == 1


def test_det_int_example(example):
    a = skew_adjacency(example)
    assert det_int(a, {4, 5}) == 2
    assert det_int(a, range(1, 6)) == 3
    assert det_int(a, {1}) == 1
    assert det_int(a, set()) == 1


def test_det_int_int64_backend(example):
    a = skew_adjacency(example)
    assert det_int(a, {4, 5}, backend="int64") == 2
    big = np.full((20, 20), 10**6, dtype=object)
    with pytest.raises(DeterminantOverflow):
        det_int(big, backend="int64")


def test_det_int_exact_on_large_values():
    # Hadamard-extremal Sylvester matrix of order 32: det = 32^16 > 2^64
    h = np.array([[1]])
    for _ in range(5):
        h = np.block([[h, h], [h, -h]])
    assert det_int(h) == 32**16
    assert int_principal_minors(h, [(1 << 32) - 1])[0] == 32**16


@given(st.integers(1, 6), st.data())
@settings(max_examples=60)
def test_bareiss_matches_leibniz(k, data):
    entries = data.draw(st.lists(st.integers(-3, 3), min_size=k * k, max_size=k * k))
    a = np.array(entries).reshape(k, k)
    assert bareiss_det(a.tolist()) == leibniz(a)


@given(bouquets(max_n=6))
@settings(max_examples=60)
def test_batched_kernels_match_single(b):
    masks = np.arange(1 << b.n)
    g = gf2_principal_minors(adjacency(b), masks)
    i = int_principal_minors(skew_adjacency(b), masks)
    o = int_principal_minors(skew_adjacency(b), masks, backend="object")
    for x in range(1 << b.n):
        assert g[x] == det_gf2(adjacency(b), x)
        assert i[x] == o[x] == det_int(skew_adjacency(b), x)


@given(bouquets(max_n=6))
@settings(max_examples=60)
def test_det_int_against_sympy(b):
    a = skew_adjacency(b).values
    for x in range(0, 1 << b.n, 3):
        s = sub(a, x)
        expected = int(sympy.Matrix(s.tolist()).det()) if len(s) else 1
        assert det_int(a, x) == expected


@given(bouquets(max_n=7))
@settings(max_examples=80)
def test_int_det_reduces_to_gf2(b):
    a, m = skew_adjacency(b), adjacency(b)
    ints = int_principal_minors(a, np.arange(1 << b.n))
    gf2 = gf2_principal_minors(m, np.arange(1 << b.n))
    assert np.array_equal(ints % 2, gf2)


@given(bouquets(max_n=7))
@settings(max_examples=80)
def test_at_most_one_nonorientable_loop_gives_01(b):
    # force all but the first loop orientable
    labels = [(lab.edge, lab.end, 1 if lab.edge > 1 else lab.sign) for lab in b.rotation]
    b1 = Bouquet.from_labels(labels)
    dets = int_principal_minors(skew_adjacency(b1), np.arange(1 << b1.n))
    assert set(dets.tolist()) <= {0, 1}


@given(bouquets(max_n=7))
@settings(max_examples=60)
def test_skew_even_minors_nonnegative(b):
    a = skew_adjacency(b).values
    diag = np.diag(a)
    for x in range(1 << b.n):
        idx = [i - 1 for i in members(x)]
        if len(idx) % 2 == 0 and not diag[idx].any():
            d = det_int(a, x)
            assert d >= 0 and math.isqrt(d) ** 2 == d


@given(bouquets(max_n=6), st.integers(0, 11), st.integers(0, 63))
@settings(max_examples=60)
def test_sigma_invariance_of_minors(b, shift, swap):
    base = int_principal_minors(skew_adjacency(b), np.arange(1 << b.n))
    rot = b.rotation
    mask = swap & ((1 << b.n) - 1)
    for r in (rotate_start(rot, shift), reverse_direction(rot), swap_ends(rot, mask)):
        other = int_principal_minors(skew_adjacency(Bouquet(r)), np.arange(1 << b.n))
        assert np.array_equal(base, other)
        assert adjacency(Bouquet(r)) == adjacency(b)
    # start shift leaves the matrix itself alone, reversal transposes
    assert skew_adjacency(Bouquet(rotate_start(rot, shift))) == skew_adjacency(b)
    assert np.array_equal(skew_adjacency(Bouquet(reverse_direction(rot))).values, skew_adjacency(b).values.T)


# ------------------------------------------------------------- symbolic


def test_det_symbolic_empty(example):
    assert det_symbolic(symbolic_skew_adjacency(example), set()) == SymbolicPolynomial.const(1)


def test_det_symbolic_small():
    s = symbolic_skew_adjacency(Bouquet.parse("[1a,2a,1b,2b]"))
    x12 = sympy.Symbol("x12")
    expected = sympy.expand(sympy.Matrix([[1, x12], [-x12, 1]]).det())
    assert expected == 1 + x12**2
    assert det_symbolic(s, add_identity=True) == SymbolicPolynomial.var(1, 2) * SymbolicPolynomial.var(1, 2) + 1


def test_det_symbolic_example_expansion(example):
    poly = det_symbolic(symbolic_skew_adjacency(example), add_identity=True)
    expected = SymbolicPolynomial.from_terms((1, m) for m in EXAMPLE_EXPANSION)
    assert len(EXAMPLE_EXPANSION) == 36
    assert poly == expected


def test_det_symbolic_cap():
    b = Bouquet.parse(" ".join(f"{i}a {i}b" for i in range(1, 10)))
    with pytest.raises(SizeCapExceeded):
        det_symbolic(symbolic_skew_adjacency(b))
    assert det_symbolic(symbolic_skew_adjacency(b), cap=9) == SymbolicPolynomial()


def _sympy_det(s, mask, add_identity):
    idx = members(mask)
    sym = {}

    def var(i, j):
        i, j = min(i, j), max(i, j)
        return sym.setdefault((i, j), sympy.Symbol(f"x_{i}_{j}"))

    rows = [[int(s.signs[i - 1, j - 1]) * var(i, j) + (1 if add_identity and i == j else 0)
             for j in idx] for i in idx]
    return sympy.Poly(sympy.Matrix(rows).det(), *sym.values()) if rows else None, sym


@given(bouquets(max_n=5), st.integers(0, 31), st.booleans())
@settings(max_examples=40, deadline=None)
def test_det_symbolic_against_sympy(b, raw, add_identity):
    s = symbolic_skew_adjacency(b)
    mask = raw & ((1 << b.n) - 1)
    ours = det_symbolic(s, mask, add_identity=add_identity)
    poly, sym = _sympy_det(s, mask, add_identity)
    if poly is None:
        assert ours == SymbolicPolynomial.const(1)
        return
    keys = list(sym)
    theirs = SymbolicPolynomial.from_terms(
        (int(c), {keys[k]: e for k, e in enumerate(exps) if e}) for exps, c in poly.terms()
    )
    assert ours == theirs


@given(bouquets(max_n=6), st.integers(0, 63))
@settings(max_examples=60)
def test_reduction_of_minor_is_scalar_times_generator(b, raw):
    mask = raw & ((1 << b.n) - 1)
    reduced = reduce(det_symbolic(symbolic_skew_adjacency(b), mask), b.n)
    d = det_int(skew_adjacency(b), mask)
    assert reduced.coeffs == ({mask: d} if d else {})


# ------------------------------------------------------------- pivot


def _pivot_oracle(a, mask):
    """Pivot from the block formula with sympy's modular inverse."""
    n = len(a)
    xs = [i - 1 for i in members(mask)]
    ys = [i for i in range(n) if i not in xs]
    A = sympy.Matrix(a)
    P = A.extract(xs, xs)
    Pi = P.inv_mod(2)
    out = sympy.zeros(n, n)
    blocks = {
        (0, 0): Pi,
        (0, 1): Pi * A.extract(xs, ys),
        (1, 0): A.extract(ys, xs) * Pi,
        (1, 1): A.extract(ys, ys) + A.extract(ys, xs) * Pi * A.extract(xs, ys),
    }
    for (r, c), blk in blocks.items():
        rows, cols = (xs, ys)[r], (xs, ys)[c]
        for i, ri in enumerate(rows):
            for j, cj in enumerate(cols):
                out[ri, cj] = blk[i, j] % 2
    return out.tolist()


def test_pivot_examples():
    m = BinaryMatrix.from_array([[1, 1], [1, 0]])
    assert pivot_gf2(m, {1}).tolist() == [[1, 1], [1, 1]] == _pivot_oracle([[1, 1], [1, 0]], 1)
    assert pivot_gf2(m, set()) == m
    assert pivot_gf2(BinaryMatrix.from_array([[1]]), {1}).tolist() == [[1]]
    with pytest.raises(SingularPivotBlock):
        pivot_gf2(m, {2})


@given(bouquets(max_n=6), st.integers(0, 63))
@settings(max_examples=60, deadline=None)
def test_pivot_against_block_oracle(b, raw):
    m = adjacency(b)
    mask = raw & ((1 << b.n) - 1)
    if not det_gf2(m, mask):
        with pytest.raises(SingularPivotBlock):
            pivot_gf2(m, mask)
        return
    assert pivot_gf2(m, mask).tolist() == _pivot_oracle(m.tolist(), mask)
    # pivoting twice on the same set undoes it
    assert pivot_gf2(pivot_gf2(m, mask), mask) == m
