"""Exact dense linear algebra over a field context.

Determinants over Q run fraction-free (Bareiss) elimination on a
denominator-cleared integer matrix; quadratic-field determinants use
ordinary elimination with exact division. Pivoting always takes the first
nonzero candidate in row order, so every result is deterministic. Minor
enumeration recomputes each minor independently: clarity over speed at
desk scale, and trivially safe to parallelize across index sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

from .field import FieldCtx, QNum


class PreconditionError(ValueError):
    """Input violates an operation's stated precondition."""


class QMatrix:
    """Immutable dense matrix of exact field elements."""

    __slots__ = ("ctx", "rows", "cols", "_e")

    def __init__(self, ctx: FieldCtx, entries, cols: int | None = None):
        data = []
        for row in entries:
            data.append(tuple(ctx.element(x) for x in row))
        self.ctx = ctx
        self.rows = len(data)
        if data:
            ncols = len(data[0])
            if any(len(r) != ncols for r in data):
                raise ValueError("ragged rows")
            if cols is not None and cols != ncols:
                raise ValueError("cols does not match entry rows")
            self.cols = ncols
        else:
            if cols is None:
                raise ValueError("a 0-row matrix needs an explicit column count")
            self.cols = cols
        self._e = tuple(data)

    @classmethod
    def identity(cls, ctx: FieldCtx, n: int) -> QMatrix:
        one, zero = ctx.one, ctx.zero
        return cls(ctx, [[one if i == j else zero for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, ctx: FieldCtx, rows: int, cols: int) -> QMatrix:
        zero = ctx.zero
        return cls(ctx, [[zero] * cols for _ in range(rows)], cols=cols)

    def __getitem__(self, ij) -> QNum:
        i, j = ij
        return self._e[i][j]

    def row(self, i: int) -> tuple[QNum, ...]:
        return self._e[i]

    def col(self, j: int) -> tuple[QNum, ...]:
        return tuple(r[j] for r in self._e)

    def columns(self) -> list[tuple[QNum, ...]]:
        return [self.col(j) for j in range(self.cols)]

    def transpose(self) -> QMatrix:
        return QMatrix(
            self.ctx,
            [[self._e[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows,
        )

    def take_rows(self, idx) -> QMatrix:
        return QMatrix(self.ctx, [self._e[i] for i in idx], cols=self.cols)

    def take_cols(self, idx) -> QMatrix:
        idx = list(idx)
        return QMatrix(self.ctx, [[r[j] for j in idx] for r in self._e], cols=len(idx))

    def hstack(self, other: QMatrix) -> QMatrix:
        if other.ctx != self.ctx or other.rows != self.rows:
            raise ValueError("hstack needs same field and row count")
        return QMatrix(
            self.ctx,
            [self._e[i] + other._e[i] for i in range(self.rows)],
            cols=self.cols + other.cols,
        )

    def vstack(self, other: QMatrix) -> QMatrix:
        if other.ctx != self.ctx or other.cols != self.cols:
            raise ValueError("vstack needs same field and column count")
        return QMatrix(self.ctx, list(self._e) + list(other._e), cols=self.cols)

    def conj(self) -> QMatrix:
        return QMatrix(self.ctx, [[x.conj() for x in r] for r in self._e], cols=self.cols)

    def __matmul__(self, other: QMatrix) -> QMatrix:
        if other.ctx != self.ctx:
            raise ValueError("matmul needs matching field contexts")
        if self.cols != other.rows:
            raise ValueError("matmul shape mismatch")
        ot = other.transpose()
        out = []
        for i in range(self.rows):
            ri = self._e[i]
            out.append(
                [_dot(ri, ot._e[j], self.ctx) for j in range(other.cols)]
            )
        return QMatrix(self.ctx, out, cols=other.cols)

    def mul_vector(self, v) -> tuple[QNum, ...]:
        v = tuple(self.ctx.element(x) for x in v)
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(_dot(r, v, self.ctx) for r in self._e)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (
            self.ctx == other.ctx
            and self.rows == other.rows
            and self.cols == other.cols
            and self._e == other._e
        )

    def __hash__(self):
        return hash((self.ctx, self.rows, self.cols, self._e))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __repr__(self):
        return f"QMatrix({self.ctx}, {self.rows}x{self.cols})"


def _dot(u, v, ctx) -> QNum:
    acc = ctx.zero
    for x, y in zip(u, v):
        if not (x.is_zero or y.is_zero):
            acc = acc + x * y
    return acc


def index_sets(n: int, size: int):
    """All size-element subsets of {1..n} as sorted tuples, lexicographic."""
    return combinations(range(1, n + 1), size)


def validate_index_set(s, n: int, size: int | None = None) -> tuple[int, ...]:
    t = tuple(int(x) for x in s)
    if size is not None and len(t) != size:
        raise PreconditionError(f"index set must have {size} elements, got {len(t)}")
    if any(not 1 <= x <= n for x in t):
        raise PreconditionError(f"index set entries must lie in [1, {n}]: {t}")
    if any(t[i] >= t[i + 1] for i in range(len(t) - 1)):
        raise PreconditionError(f"index set must be strictly increasing: {t}")
    return t


def _int_rows_and_scale(m: QMatrix) -> tuple[list[list[int]], int]:
    """Clear denominators row by row; det(m) = bareiss(result) / scale."""
    mat = []
    scale = 1
    for i in range(m.rows):
        row = [x.a for x in m.row(i)]
        mult = 1
        for f in row:
            mult = lcm(mult, f.denominator)
        scale *= mult
        mat.append([int(f * mult) for f in row])
    return mat, scale


def _det_bareiss(a: list[list[int]]) -> int:
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        ak = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (pk * ai[j] - aik * ak[j]) // prev
        prev = pk
    return sign * a[n - 1][n - 1]


def _det_division(m: QMatrix) -> QNum:
    n = m.rows
    ctx = m.ctx
    a = [list(m.row(i)) for i in range(n)]
    detv = ctx.one
    for c in range(n):
        piv = None
        for r in range(c, n):
            if not a[r][c].is_zero:
                piv = r
                break
        if piv is None:
            return ctx.zero
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            detv = -detv
        p = a[c][c]
        detv = detv * p
        pinv = p.inverse()
        for r in range(c + 1, n):
            f = a[r][c]
            if f.is_zero:
                continue
            f = f * pinv
            rowc = a[c]
            rowr = a[r]
            for j in range(c + 1, n):
                rowr[j] = rowr[j] - f * rowc[j]
    return detv


def det(m: QMatrix) -> QNum:
    """Exact determinant; the empty 0x0 determinant is 1."""
    if m.rows != m.cols:
        raise PreconditionError("determinant needs a square matrix")
    if m.rows == 0:
        return m.ctx.one
    if m.ctx.is_rational:
        mat, scale = _int_rows_and_scale(m)
        return m.ctx.element(Fraction(_det_bareiss(mat), scale))
    return _det_division(m)


def _rref(a: list[list[QNum]], ctx: FieldCtx) -> list[int]:
    """Reduce in place to reduced row echelon form; return pivot columns."""
    nr = len(a)
    nc = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = None
        for i in range(r, nr):
            if not a[i][c].is_zero:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(nr):
            if i != r and not a[i][c].is_zero:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return pivots


def rank(m: QMatrix) -> int:
    a = [list(m.row(i)) for i in range(m.rows)]
    return len(_rref(a, m.ctx))


def inverse(m: QMatrix) -> QMatrix:
    if m.rows != m.cols:
        raise PreconditionError("inverse needs a square matrix")
    n = m.rows
    aug = [list(m.row(i)) + list(QMatrix.identity(m.ctx, n).row(i)) for i in range(n)]
    pivots = _rref(aug, m.ctx)
    if pivots != list(range(n)):
        raise PreconditionError("matrix is singular")
    return QMatrix(m.ctx, [r[n:] for r in aug], cols=n)


def kernel_basis(m: QMatrix) -> QMatrix:
    """Basis of {x : m x = 0} as the columns of an N x L matrix.

    Normalization: reduced row echelon form with unit pivots; one basis
    column per free variable, free variables in increasing column order.
    A trivial kernel gives a 0-column matrix.
    """
    a = [list(m.row(i)) for i in range(m.rows)]
    pivots = _rref(a, m.ctx)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    zero, one = m.ctx.zero, m.ctx.one
    cols = []
    for f in free:
        v = [zero] * m.cols
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -a[r][f]
        cols.append(v)
    rows = [[c[i] for c in cols] for i in range(m.cols)]
    return QMatrix(m.ctx, rows, cols=len(free))


def minor(m: QMatrix, row_set, col_set) -> QNum:
    """Determinant of the submatrix picked by 1-based sorted index sets."""
    rs = validate_index_set(row_set, m.rows)
    cs = validate_index_set(col_set, m.cols)
    if len(rs) != len(cs):
        raise PreconditionError("minor needs equally sized row and column sets")
    return det(m.take_rows([i - 1 for i in rs]).take_cols([j - 1 for j in cs]))


@dataclass(frozen=True)
class GrassmannVector:
    """Vector of maximal minors, indexed by row sets in lexicographic order."""

    ambient: int
    dim: int
    coords: tuple[QNum, ...]
    ctx: FieldCtx

    @property
    def is_zero(self) -> bool:
        return all(x.is_zero for x in self.coords)

    def coord(self, row_set) -> QNum:
        rs = validate_index_set(row_set, self.ambient, size=self.dim)
        pos = list(index_sets(self.ambient, self.dim)).index(rs)
        return self.coords[pos]


def grassmann(m: QMatrix) -> GrassmannVector:
    """All L-row minors of an N x L matrix, rows taken in increasing order."""
    if m.rows < m.cols:
        raise PreconditionError("grassmann needs rows >= cols")
    coords = tuple(
        det(m.take_rows([i - 1 for i in rs])) for rs in index_sets(m.rows, m.cols)
    )
    return GrassmannVector(m.rows, m.cols, coords, m.ctx)


def hnf2(rows) -> tuple[tuple[int, int], tuple[int, int]]:
    """Column-style Hermite normal form of a rank-2 module in Z^2.

    Input: two equal-length integer rows whose columns generate the module.
    Output: ((g1, x), (0, g2)) upper triangular with g1, g2 > 0 and
    0 <= x < g1; g1*g2 is the index of the module in Z^2.
    """
    if len(rows) != 2 or len(rows[0]) != len(rows[1]):
        raise ValueError("hnf2 needs a 2-row integer matrix")
    gens = [(int(x), int(y)) for x, y in zip(rows[0], rows[1]) if (int(x), int(y)) != (0, 0)]
    w = None
    firsts = []
    for g in gens:
        if g[1] == 0:
            firsts.append(g[0])
            continue
        if w is None:
            w = g
            continue
        v = g
        while v[1] != 0:
            q = w[1] // v[1]
            w = (w[0] - q * v[0], w[1] - q * v[1])
            w, v = v, w
        firsts.append(v[0])
    if w is None:
        raise PreconditionError("hnf2: generators span a rank < 2 module")
    if w[1] < 0:
        w = (-w[0], -w[1])
    g1 = 0
    for z in firsts:
        g1 = gcd(g1, z)
    if g1 == 0:
        raise PreconditionError("hnf2: generators span a rank < 2 module")
    return ((g1, w[0] % g1), (0, w[1]))


def column_space_basis(m: QMatrix) -> QMatrix:
    """Lexicographically first independent subset of the columns."""
    a = [list(m.row(i)) for i in range(m.rows)]
    pivots = _rref(a, m.ctx)
    return m.take_cols(pivots)


def span_column_spaces(a: QMatrix, b: QMatrix) -> QMatrix:
    """Basis of col(a) + col(b) via concatenation and rank filtering."""
    return column_space_basis(a.hstack(b))


def intersect_column_spaces(a: QMatrix, b: QMatrix) -> QMatrix:
    """Basis of col(a) ∩ col(b) as the kernel of stacked constraints."""
    ca = kernel_basis(a.transpose()).transpose()
    cb = kernel_basis(b.transpose()).transpose()
    return kernel_basis(ca.vstack(cb))
