"""Skew-adjacency matrices of bouquets and the determinant/pivot kernels.

Three matrices are attached to a signed rotation:

* the symbolic skew-adjacency matrix, entries ``0`` or ``+-x_{ij}``
  (``i <= j``), with ``x_{ii}`` on the diagonal of non-orientable loops;
* the unsymbolic one, the same with every ``x_{ij} = 1``;
* the GF(2) adjacency matrix, its entrywise absolute value.

Determinants of principal submatrices come in three flavours: GF(2) on
bit-packed rows, exact integers (fraction-free elimination), and a symbolic
expansion gated behind a size cap.  The ``*_principal_minors`` functions are
the batched numpy kernels that sweep many subsets at once.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .core import Bouquet, EdgeSubset, Interlacement, as_mask, interlacement, members
from .errors import DeterminantOverflow, IndexOutOfRange, SingularPivotBlock, SizeCapExceeded

SYMBOLIC_CAP = 8

Monomial = tuple[tuple[tuple[int, int], int], ...]


def var_name(i: int, j: int) -> str:
    if i > j:
        i, j = j, i
    if j < 10:
        return f"x_{{{i}{j}}}"
    return f"x_{{{i},{j}}}"


# ---------------------------------------------------------------- matrix types


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class SymbolicSkewMatrix:
    """Entry ``(i, j)`` is ``signs[i, j] * x_{min(i,j) max(i,j)}`` (0-based array)."""

    signs: np.ndarray

    def __post_init__(self) -> None:
        s = _frozen(np.asarray(self.signs, dtype=np.int64))
        if s.ndim != 2 or s.shape[0] != s.shape[1]:
            raise ValueError("matrix must be square")
        off = ~np.eye(len(s), dtype=bool)
        if not np.array_equal(s[off], -s.T[off]):
            raise ValueError("off-diagonal part must be skew-symmetric")
        if not np.isin(np.diag(s), (0, 1)).all():
            raise ValueError("diagonal entries must be 0 or x_ii")
        object.__setattr__(self, "signs", s)

    @property
    def n(self) -> int:
        return len(self.signs)

    def entry(self, i: int, j: int) -> "SymbolicPolynomial":
        """Entry at 1-based position ``(i, j)`` as a polynomial."""
        s = int(self.signs[i - 1, j - 1])
        return SymbolicPolynomial.var(i, j) * s if s else SymbolicPolynomial()

    def entry_str(self, i: int, j: int) -> str:
        s = int(self.signs[i - 1, j - 1])
        if s == 0:
            return "0"
        return ("-" if s < 0 else "") + var_name(i, j)

    def rows_str(self) -> list[list[str]]:
        return [[self.entry_str(i, j) for j in range(1, self.n + 1)] for i in range(1, self.n + 1)]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymbolicSkewMatrix) and np.array_equal(self.signs, other.signs)

    def __hash__(self) -> int:
        return hash(self.signs.tobytes())


@dataclass(frozen=True, eq=False)
class IntegerSkewMatrix:
    values: np.ndarray

    def __post_init__(self) -> None:
        v = _frozen(np.asarray(self.values, dtype=np.int64))
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("matrix must be square")
        off = ~np.eye(len(v), dtype=bool)
        if not np.array_equal(v[off], -v.T[off]) or not np.isin(v, (-1, 0, 1)).all():
            raise ValueError("expected a skew {-1,0,1} matrix")
        if not np.isin(np.diag(v), (0, 1)).all():
            raise ValueError("diagonal entries must be 0 or 1")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return len(self.values)

    def tolist(self) -> list[list[int]]:
        return self.values.tolist()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntegerSkewMatrix) and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash(self.values.tobytes())


@dataclass(frozen=True)
class BinaryMatrix:
    """Symmetric GF(2) matrix; ``rows[i]`` has bit ``j`` set iff entry ``(i, j)`` is 1."""

    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if r >> n:
                raise ValueError(f"row {i} has bits beyond column {n - 1}")
            for j in range(n):
                if (r >> j & 1) != (rows[j] >> i & 1):
                    raise ValueError("binary adjacency matrices are symmetric")

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i] >> j & 1

    @classmethod
    def from_array(cls, a: Sequence[Sequence[int]] | np.ndarray) -> "BinaryMatrix":
        arr = np.asarray(a, dtype=np.int64) % 2
        return cls(tuple(sum(int(v) << j for j, v in enumerate(row)) for row in arr))

    def to_array(self) -> np.ndarray:
        n = self.n
        return np.array([[r >> j & 1 for j in range(n)] for r in self.rows], dtype=np.uint8).reshape(n, n)

    def tolist(self) -> list[list[int]]:
        return self.to_array().tolist()

    def submatrix(self, subset: EdgeSubset) -> "BinaryMatrix":
        idx = [i - 1 for i in members(as_mask(subset))]
        return BinaryMatrix.from_array(self.to_array()[np.ix_(idx, idx)])


# ---------------------------------------------------------------- builders


def _interlacement_signs(b: Bouquet) -> np.ndarray:
    n = b.n
    s = np.zeros((n, n), dtype=np.int64)
    for i, (sa, sb) in enumerate(b.rotation.signs):
        if sa != sb:
            s[i, i] = 1
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            kind = interlacement(b, i, j)
            if kind is Interlacement.ALIGNED:
                s[i - 1, j - 1], s[j - 1, i - 1] = 1, -1
            elif kind is Interlacement.REVERSED:
                s[i - 1, j - 1], s[j - 1, i - 1] = -1, 1
    return s


def symbolic_skew_adjacency(b: Bouquet) -> SymbolicSkewMatrix:
    return SymbolicSkewMatrix(_interlacement_signs(b))


def unsymbolic(s: SymbolicSkewMatrix) -> IntegerSkewMatrix:
    return IntegerSkewMatrix(s.signs)


def skew_adjacency(b: Bouquet) -> IntegerSkewMatrix:
    """Shortcut for ``unsymbolic(symbolic_skew_adjacency(b))``."""
    return unsymbolic(symbolic_skew_adjacency(b))


def adjacency(b: Bouquet) -> BinaryMatrix:
    return BinaryMatrix.from_array(np.abs(skew_adjacency(b).values))


# ---------------------------------------------------------------- GF(2)


def det_gf2(m: BinaryMatrix, subset: EdgeSubset | None = None) -> int:
    """Determinant of the principal submatrix ``m[X]`` over GF(2).

    Elimination on bit-packed rows, first nonzero pivot in each column.
    The empty matrix has determinant 1.
    """
    mask = (1 << m.n) - 1 if subset is None else as_mask(subset)
    if mask >> m.n:
        raise IndexOutOfRange("subset exceeds the matrix dimension")
    rows = [m.rows[i - 1] & mask for i in members(mask)]
    for col in members(mask):
        bit = 1 << (col - 1)
        for k, r in enumerate(rows):
            if r & bit:
                pivot = rows.pop(k)
                break
        else:
            return 0
        rows = [r ^ pivot if r & bit else r for r in rows]
    return 1


def _gf2_inverse(a: np.ndarray) -> np.ndarray:
    k = len(a)
    aug = np.concatenate([a.astype(np.uint8) % 2, np.eye(k, dtype=np.uint8)], axis=1)
    for col in range(k):
        nz = np.nonzero(aug[col:, col])[0]
        if not len(nz):
            raise SingularPivotBlock("pivot block is singular over GF(2)")
        p = col + nz[0]
        if p != col:
            aug[[col, p]] = aug[[p, col]]
        hit = aug[:, col].astype(bool)
        hit[col] = False
        aug[hit] ^= aug[col]
    return aug[:, k:]


def pivot_gf2(m: BinaryMatrix, subset: EdgeSubset) -> BinaryMatrix:
    """Principal pivot ``m * X`` over GF(2), rows/columns keep their labels.

    With ``P = m[X]`` and the other blocks ``Q = m[X, ~X]``, ``R = m[~X, X]``,
    ``S = m[~X, ~X]`` the result is ``[[P^-1, P^-1 Q], [R P^-1, S - R P^-1 Q]]``
    (signs are irrelevant in characteristic 2).
    """
    mask = as_mask(subset)
    if mask >> m.n:
        raise IndexOutOfRange("subset exceeds the matrix dimension")
    a = m.to_array().astype(np.int64)
    xs = [i - 1 for i in members(mask)]
    ys = [i for i in range(m.n) if not mask >> i & 1]
    if not xs:
        return m
    pinv = _gf2_inverse(a[np.ix_(xs, xs)]).astype(np.int64)
    q = a[np.ix_(xs, ys)]
    r = a[np.ix_(ys, xs)]
    s = a[np.ix_(ys, ys)]
    out = np.zeros_like(a)
    out[np.ix_(xs, xs)] = pinv
    out[np.ix_(xs, ys)] = pinv @ q
    out[np.ix_(ys, xs)] = r @ pinv
    out[np.ix_(ys, ys)] = s + r @ pinv @ q
    return BinaryMatrix.from_array(out % 2)


def gf2_principal_minors(m: BinaryMatrix, masks: Iterable[int] | np.ndarray) -> np.ndarray:
    """``det(m[X]) mod 2`` for every mask in ``masks`` (vectorised).

    Each ``m[X]`` is padded to ``n x n`` with identity rows outside ``X`` so a
    whole batch runs through the same elimination schedule.
    """
    n = m.n
    masks = np.asarray(masks, dtype=np.uint64).ravel()
    if n == 0:
        return np.ones(len(masks), dtype=np.uint8)
    if n > 63:
        raise SizeCapExceeded("bit-packed sweep supports at most 63 edges")
    cols = np.arange(n, dtype=np.uint64)
    unit = np.left_shift(np.uint64(1), cols)
    base = np.array(m.rows, dtype=np.uint64)
    in_x = ((masks[:, None] >> cols) & np.uint64(1)).astype(bool)
    rows = np.where(in_x, base[None, :] & masks[:, None], unit[None, :])
    alive = np.ones(len(masks), dtype=bool)
    idx = np.arange(len(masks))
    one = np.uint64(1)
    for c in range(n):
        cu = np.uint64(c)
        bits = ((rows[:, c:] >> cu) & one).astype(bool)
        alive &= bits.any(axis=1)
        p = bits.argmax(axis=1) + c
        swap = p != c
        if swap.any():
            si = idx[swap]
            top = rows[si, c].copy()
            rows[si, c] = rows[si, p[swap]]
            rows[si, p[swap]] = top
        if c + 1 < n:
            below = rows[:, c + 1:]
            hit = ((below >> cu) & one).astype(bool)
            below ^= np.where(hit, rows[:, c:c + 1], np.uint64(0))
    return alive.astype(np.uint8)


# ---------------------------------------------------------------- integers


def _as_int_array(a: IntegerSkewMatrix | np.ndarray | Sequence[Sequence[int]]) -> np.ndarray:
    if isinstance(a, IntegerSkewMatrix):
        return a.values
    return np.asarray(a, dtype=object if _has_big(a) else np.int64)


def _has_big(a) -> bool:
    try:
        np.asarray(a, dtype=np.int64)
        return False
    except OverflowError:
        return True


def bareiss_det(rows: list[list[int]]) -> int:
    """Exact determinant by fraction-free elimination on Python ints."""
    a = [list(map(int, r)) for r in rows]
    k = len(a)
    if k == 0:
        return 1
    sign, prev = 1, 1
    for c in range(k - 1):
        if a[c][c] == 0:
            for p in range(c + 1, k):
                if a[p][c] != 0:
                    a[c], a[p] = a[p], a[c]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[c][c]
        for i in range(c + 1, k):
            for j in range(c + 1, k):
                a[i][j] = (a[i][j] * piv - a[i][c] * a[c][j]) // prev
        prev = piv
    return sign * a[k - 1][k - 1]


def hadamard_bound(a: np.ndarray) -> int:
    """Integer upper bound on ``|det|`` of every principal submatrix of ``a``."""
    sq = [sum(int(v) * int(v) for v in row) for row in np.asarray(a, dtype=object)]
    return math.isqrt(math.prod(max(s, 1) for s in sq)) + 1


_INT64_SAFE = 2**62


def det_int(
    a: IntegerSkewMatrix | np.ndarray | Sequence[Sequence[int]],
    subset: EdgeSubset | None = None,
    backend: str = "exact",
) -> int:
    """Exact integer determinant of the principal submatrix ``a[X]``.

    ``backend="exact"`` uses Python integers and never overflows.
    ``backend="int64"`` runs the fixed-width kernel and raises
    :class:`DeterminantOverflow` when the Hadamard bound does not leave room
    for the intermediate products.
    """
    arr = _as_int_array(a)
    n = len(arr)
    mask = (1 << n) - 1 if subset is None else as_mask(subset)
    if mask >> n:
        raise IndexOutOfRange("subset exceeds the matrix dimension")
    idx = [i - 1 for i in members(mask)]
    sub = arr[np.ix_(idx, idx)] if idx else np.zeros((0, 0), dtype=np.int64)
    if backend == "exact":
        return bareiss_det(sub.tolist())
    if backend == "int64":
        if hadamard_bound(sub) ** 2 >= _INT64_SAFE:
            raise DeterminantOverflow(f"{len(idx)}x{len(idx)} determinant may overflow int64")
        return int(int_principal_minors(sub, [(1 << len(idx)) - 1], backend="int64")[0])
    raise ValueError(f"unknown backend {backend!r}")


def int_principal_minors(
    a: IntegerSkewMatrix | np.ndarray | Sequence[Sequence[int]],
    masks: Iterable[int] | np.ndarray,
    backend: str = "auto",
) -> np.ndarray:
    """``det(a[X])`` for every mask, vectorised Bareiss elimination.

    ``backend="auto"`` picks int64 when the Hadamard bound allows it and
    Python integers (``dtype=object``) otherwise; ``"int64"`` raises
    :class:`DeterminantOverflow` instead of falling back.
    """
    arr = _as_int_array(a)
    n = len(arr)
    masks = np.asarray(list(masks) if not isinstance(masks, np.ndarray) else masks, dtype=np.int64).ravel()
    if n == 0:
        return np.ones(len(masks), dtype=np.int64)
    fits = hadamard_bound(arr) ** 2 < _INT64_SAFE
    if backend == "int64" and not fits:
        raise DeterminantOverflow(f"{n}x{n} principal minors may overflow int64")
    if backend not in ("auto", "int64", "object"):
        raise ValueError(f"unknown backend {backend!r}")
    dtype = np.int64 if (fits and backend != "object") else object
    batch = len(masks)
    in_x = ((masks[:, None] >> np.arange(n)) & 1).astype(bool)
    keep = in_x[:, :, None] & in_x[:, None, :]
    eye = np.eye(n, dtype=np.int64)
    mat = np.where(keep, arr.astype(np.int64) if dtype is np.int64 else arr, eye).astype(dtype)
    mat = mat.copy()
    sign = np.ones(batch, dtype=np.int64)
    prev = np.ones(batch, dtype=dtype)
    zero = np.zeros(batch, dtype=bool)
    idx = np.arange(batch)
    for c in range(n):
        nz = mat[:, c:, c] != 0
        has = nz.any(axis=1)
        dead = ~has & ~zero
        if dead.any():
            zero |= dead
            mat[dead] = eye.astype(dtype)
            prev[dead] = 1
        p = np.where(zero, c, nz.argmax(axis=1) + c)
        swap = p != c
        if swap.any():
            si = idx[swap]
            top = mat[si, c].copy()
            mat[si, c] = mat[si, p[swap]]
            mat[si, p[swap]] = top
            sign[swap] = -sign[swap]
        piv = mat[:, c, c]
        if c + 1 < n:
            num = mat[:, c + 1:, c + 1:] * piv[:, None, None] - mat[:, c + 1:, c:c + 1] * mat[:, c:c + 1, c + 1:]
            mat[:, c + 1:, c + 1:] = num // prev[:, None, None]
        prev = piv.copy()
    det = mat[:, n - 1, n - 1] * sign
    det[zero] = 0
    return det


# ---------------------------------------------------------------- symbolic


class SymbolicPolynomial:
    """Integer polynomial in the pair-indexed indeterminates ``x_{ij}``, ``i <= j``.

    A monomial is a sorted tuple of ``((i, j), exponent)`` pairs; the empty
    tuple is the constant monomial.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms: dict[Monomial, int] = {m: int(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c: int) -> "SymbolicPolynomial":
        return cls({(): c})

    @classmethod
    def var(cls, i: int, j: int) -> "SymbolicPolynomial":
        if i > j:
            i, j = j, i
        return cls({(((i, j), 1),): 1})

    @classmethod
    def from_terms(cls, items: Iterable[tuple[int, Mapping[tuple[int, int], int]]]) -> "SymbolicPolynomial":
        """Build from ``(coefficient, {(i, j): exponent})`` pairs, merging like terms."""
        acc: dict[Monomial, int] = {}
        for c, powers in items:
            mono = tuple(sorted(((min(p), max(p)), e) for p, e in powers.items() if e))
            acc[mono] = acc.get(mono, 0) + c
        return cls(acc)

    def __add__(self, other: "SymbolicPolynomial | int") -> "SymbolicPolynomial":
        if isinstance(other, int):
            other = SymbolicPolynomial.const(other)
        acc = dict(self.terms)
        for m, c in other.terms.items():
            acc[m] = acc.get(m, 0) + c
        return SymbolicPolynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> "SymbolicPolynomial":
        return SymbolicPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "SymbolicPolynomial | int") -> "SymbolicPolynomial":
        return self + (-other)

    def __mul__(self, other: "SymbolicPolynomial | int") -> "SymbolicPolynomial":
        if isinstance(other, int):
            return SymbolicPolynomial({m: c * other for m, c in self.terms.items()})
        acc: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                acc[m] = acc.get(m, 0) + c1 * c2
        return SymbolicPolynomial(acc)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = SymbolicPolynomial.const(other)
        return isinstance(other, SymbolicPolynomial) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def indices(self) -> set[int]:
        return {k for m in self.terms for (i, j), _ in m for k in (i, j)}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (-sum(e for _, e in m), m)):
            c = self.terms[mono]
            body = " ".join(var_name(*p) + (f"^{e}" if e > 1 else "") for p, e in mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SymbolicPolynomial({self})"


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    acc = dict(a)
    for p, e in b:
        acc[p] = acc.get(p, 0) + e
    return tuple(sorted(acc.items()))


def det_symbolic(
    s: SymbolicSkewMatrix,
    subset: EdgeSubset | None = None,
    add_identity: bool = False,
    cap: int = SYMBOLIC_CAP,
) -> SymbolicPolynomial:
    """Expanded determinant of ``s[X]`` (or ``I + s[X]``) in ``Z[x_ij]``.

    Laplace expansion along rows, memoised on the set of unused columns.
    """
    mask = (1 << s.n) - 1 if subset is None else as_mask(subset)
    if mask >> s.n:
        raise IndexOutOfRange("subset exceeds the matrix dimension")
    idx = members(mask)
    k = len(idx)
    if k > cap:
        raise SizeCapExceeded(f"symbolic determinant of size {k} exceeds cap {cap}")
    entries = [[s.entry(i, j) for j in idx] for i in idx]
    if add_identity:
        for t in range(k):
            entries[t][t] = entries[t][t] + 1

    memo: dict[int, SymbolicPolynomial] = {}

    def expand(cols: int) -> SymbolicPolynomial:
        # rows consumed so far == columns consumed so far
        if cols == 0:
            return SymbolicPolynomial.const(1)
        if cols in memo:
            return memo[cols]
        row = k - bin(cols).count("1")
        total = SymbolicPolynomial()
        parity = 0
        for c in range(k):
            if cols >> c & 1:
                e = entries[row][c]
                if not e.is_zero():
                    minor = expand(cols & ~(1 << c))
                    term = e * minor
                    total = total - term if parity else total + term
                parity ^= 1
        memo[cols] = total
        return total

    return expand((1 << k) - 1)


# ---------------------------------------------------------------- rendering


def format_matrix(rows: Sequence[Sequence[object]]) -> str:
    """Right-aligned text rendering, one bracketed line per row."""
    cells = [[str(v) for v in row] for row in rows]
    if not cells:
        return "[]"
    width = max(len(c) for row in cells for c in row)
    return "\n".join("[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells)


def matrices_dict(b: Bouquet) -> dict:
    s = symbolic_skew_adjacency(b)
    return {
        "n": b.n,
        "symbolic": s.rows_str(),
        "unsymbolic": unsymbolic(s).tolist(),
        "adjacency": adjacency(b).tolist(),
    }


def matrices_json(b: Bouquet) -> str:
    return json.dumps({"schema": 1, **matrices_dict(b)})
