"""Sparse small-height basis construction via pivot-minor normalization.

Given an N x L basis matrix A of full column rank and a row set J with
det(A_J) nonzero, the matrix X = A * A_J^{-1} spans the same column space,
carries the identity on the rows J (hence (N-L+1)-sparse columns), and its
column subsets have monotone subspace heights, all bounded by the height
of the full column space. Equality between nested subsets happens exactly
when the added columns are standard basis vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .heights import ExactHeight, height_subspace, height_vector
from .linalg import (
    PreconditionError,
    QMatrix,
    _rref,
    det,
    inverse,
    validate_index_set,
)

DEFAULT_SUBSET_BUDGET = 4096


def select_pivot(a: QMatrix, pivot_set=None) -> tuple[int, ...]:
    """Pick a row set J with det(A_J) != 0.

    Default is the lexicographically first such J (greedy independent
    rows); an explicit 1-based set is validated instead when given.
    """
    n, l = a.rows, a.cols
    if not 1 <= l <= n:
        raise PreconditionError("need 1 <= cols <= rows")
    if pivot_set is not None:
        j = validate_index_set(pivot_set, n, size=l)
        if det(a.take_rows([i - 1 for i in j])).is_zero:
            raise PreconditionError(f"pivot rows {j} give a singular minor")
        return j
    kept: list[list] = []
    chosen: list[int] = []
    for i in range(n):
        trial = [row[:] for row in kept] + [list(a.row(i))]
        if len(_rref(trial, a.ctx)) == len(kept) + 1:
            kept.append(list(a.row(i)))
            chosen.append(i + 1)
            if len(chosen) == l:
                return tuple(chosen)
    raise PreconditionError("matrix rank is below its column count")


def is_standard_basis_column(col) -> bool:
    """Exactly one nonzero coordinate and that coordinate equals 1."""
    nz = [x for x in col if not x.is_zero]
    return len(nz) == 1 and nz[0] == 1


def _mask(subset) -> int:
    return sum(1 << (i - 1) for i in subset)


def subset_from_mask(mask: int, l: int) -> tuple[int, ...]:
    return tuple(i for i in range(1, l + 1) if mask >> (i - 1) & 1)


@dataclass
class BasisReport:
    """Everything the construction produces plus its verification verdicts."""

    input_matrix: QMatrix
    pivot_set: tuple[int, ...]
    basis_matrix: QMatrix
    column_heights: list[ExactHeight]
    column_sparsity: list[int]
    subspace_height: ExactHeight
    subset_heights: dict[tuple[int, ...], ExactHeight]
    subset_table_partial: bool
    monotonicity_verified: bool
    equality_witnesses: list[tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]]
    pivot_identity_ok: bool
    sparsity_ok: bool
    column_heights_ok: bool
    standard_columns: tuple[bool, ...] = field(default=())

    @property
    def construction_ok(self) -> bool:
        return (
            self.pivot_identity_ok
            and self.sparsity_ok
            and self.column_heights_ok
            and self.monotonicity_verified
        )


def _nested_pairs(table: dict[tuple[int, ...], ExactHeight], l: int):
    """Yield (I1, I2) with I1 a proper nonempty subset of I2, both in table."""
    by_mask = {_mask(k): k for k in table}
    for m2, k2 in by_mask.items():
        sub = (m2 - 1) & m2
        while sub:
            if sub in by_mask:
                yield by_mask[sub], k2
            sub = (sub - 1) & m2


def sparse_basis(
    a: QMatrix,
    pivot_set=None,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
) -> BasisReport:
    """Run the construction and verify its claims on this instance.

    Subset heights are enumerated exhaustively when 2**L fits the budget;
    otherwise only singletons and the full set are tabulated and the
    report is flagged partial.
    """
    n, l = a.rows, a.cols
    if not 1 <= l < n:
        raise PreconditionError("need 1 <= cols < rows")
    j = select_pivot(a, pivot_set)
    x = a @ inverse(a.take_rows([i - 1 for i in j]))

    ident = QMatrix.identity(a.ctx, l)
    pivot_identity_ok = x.take_rows([i - 1 for i in j]) == ident

    cols = x.columns()
    sparsity = [sum(0 if e.is_zero else 1 for e in c) for c in cols]
    sparsity_ok = all(s <= n - l + 1 for s in sparsity)

    hz = height_subspace(a)
    col_heights = [height_vector(c, a.ctx) for c in cols]
    column_heights_ok = all(h <= hz for h in col_heights)

    partial = 2 ** l > subset_budget
    if partial:
        subsets = [(i,) for i in range(1, l + 1)]
        subsets.append(tuple(range(1, l + 1)))
    else:
        subsets = [
            subset_from_mask(m, l) for m in range(1, 2 ** l)
        ]
    table: dict[tuple[int, ...], ExactHeight] = {}
    for s in subsets:
        table[s] = height_subspace(x.take_cols([i - 1 for i in s]))

    standard = tuple(is_standard_basis_column(c) for c in cols)
    monotone = True
    witnesses = []
    for i1, i2 in _nested_pairs(table, l):
        h1, h2 = table[i1], table[i2]
        if not h1 <= h2:
            monotone = False
        if h1 == h2:
            diff = tuple(sorted(set(i2) - set(i1)))
            std_in_diff = tuple(i for i in diff if standard[i - 1])
            witnesses.append((i1, i2, std_in_diff))

    return BasisReport(
        input_matrix=a,
        pivot_set=j,
        basis_matrix=x,
        column_heights=col_heights,
        column_sparsity=sparsity,
        subspace_height=hz,
        subset_heights=table,
        subset_table_partial=partial,
        monotonicity_verified=monotone,
        equality_witnesses=witnesses,
        pivot_identity_ok=pivot_identity_ok,
        sparsity_ok=sparsity_ok,
        column_heights_ok=column_heights_ok,
        standard_columns=standard,
    )


def check_equality_characterization(report: BasisReport) -> bool:
    """Equality H(Y_I1) = H(Y_I2) holds iff every added column is standard.

    Needs the exhaustive subset table.
    """
    if report.subset_table_partial:
        raise PreconditionError("equality characterization needs the full subset table")
    l = report.basis_matrix.cols
    std = report.standard_columns
    table = report.subset_heights
    for i1, i2 in _nested_pairs(table, l):
        expected = all(std[i - 1] for i in set(i2) - set(i1))
        if (table[i1] == table[i2]) != expected:
            return False
    return True
