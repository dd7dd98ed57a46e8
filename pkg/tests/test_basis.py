import random
from itertools import combinations

import pytest

from conftest import rand_int_matrix, rand_quad_matrix
from siegel import (
    RATIONAL,
    FieldCtx,
    PreconditionError,
    QMatrix,
    check_equality_characterization,
    det,
    height_subspace,
    rank,
    select_pivot,
    sparse_basis,
)
from siegel.basis import is_standard_basis_column
from siegel.linalg import index_sets

WORKED = QMatrix(RATIONAL, [[1, 2, 3], [4, 3, 1], [5, 2, 1], [2, 1, 3]])


def test_select_pivot_worked():
    assert select_pivot(WORKED) == (1, 2, 3)


def test_select_pivot_identity_topped():
    m = QMatrix(RATIONAL, [[1, 0], [0, 1], [7, 8], [9, 1]])
    assert select_pivot(m) == (1, 2)


def test_select_pivot_skips_zero_row():
    m = QMatrix(RATIONAL, [[0], [3], [1]])
    assert select_pivot(m) == (2,)


def test_select_pivot_explicit():
    assert select_pivot(WORKED, (1, 2, 4)) == (1, 2, 4)
    with pytest.raises(PreconditionError):
        select_pivot(QMatrix(RATIONAL, [[1, 0], [2, 0], [0, 1]]), (1, 2))
    with pytest.raises(PreconditionError):
        select_pivot(WORKED, (1, 2))
    with pytest.raises(PreconditionError):
        select_pivot(WORKED, (1, 2, 9))


def test_select_pivot_rank_deficient():
    with pytest.raises(PreconditionError):
        select_pivot(QMatrix(RATIONAL, [[1, 1], [2, 2], [3, 3]]))


def test_worked_report():
    rep = sparse_basis(WORKED)
    assert rep.pivot_set == (1, 2, 3)
    assert rep.basis_matrix == QMatrix(
        RATIONAL, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 1]]
    )
    assert rep.column_sparsity == [2, 2, 2]
    assert rep.subspace_height.value == 4
    assert all(h.value == 2 for h in rep.column_heights)
    for pair in [(1, 2), (1, 3), (2, 3)]:
        assert rep.subset_heights[pair].value == 3
    # the renormalized basis spans the same space: its full-set height is
    # again 2, i.e. the primitive minor vector of X has squared norm 4
    assert rep.subset_heights[(1, 2, 3)].value == 4
    assert rep.subset_heights[(1,)] < rep.subset_heights[(1, 2)] < rep.subspace_height
    assert rep.construction_ok and not rep.subset_table_partial
    assert check_equality_characterization(rep)
    assert rep.equality_witnesses == []
    assert not any(rep.standard_columns)


def test_identity_over_zeros_all_equalities():
    a = QMatrix(RATIONAL, [[1, 0], [0, 1], [0, 0], [0, 0]])
    rep = sparse_basis(a)
    assert rep.basis_matrix == a
    assert all(h.value == 1 for h in rep.subset_heights.values())
    assert all(rep.standard_columns)
    assert rep.construction_ok
    assert check_equality_characterization(rep)
    # every nested pair is an equality and every witness column is standard
    assert len(rep.equality_witnesses) == 2
    for i1, i2, std in rep.equality_witnesses:
        assert std == tuple(sorted(set(i2) - set(i1)))


def test_single_standard_column_equality_pattern():
    a = QMatrix(RATIONAL, [[1, 0], [0, 1], [0, 0], [0, 1]])
    rep = sparse_basis(a)
    assert rep.standard_columns == (True, False)
    assert rep.subset_heights[(2,)] == rep.subset_heights[(1, 2)]
    assert rep.subset_heights[(1,)] < rep.subset_heights[(1, 2)]
    assert check_equality_characterization(rep)
    assert rep.equality_witnesses == [((2,), (1, 2), (1,))]


def test_standard_basis_column_predicate():
    ctx = RATIONAL
    assert is_standard_basis_column([ctx.zero, ctx.one, ctx.zero])
    assert not is_standard_basis_column([ctx.zero, ctx.element(2), ctx.zero])
    assert not is_standard_basis_column([ctx.one, ctx.one])
    assert not is_standard_basis_column([ctx.zero, ctx.zero])


def test_random_reports_and_column_space():
    rng = random.Random(30)
    for n, l in [(4, 2), (5, 3), (6, 3)]:
        for _ in range(8):
            a = rand_int_matrix(rng, n, l)
            rep = sparse_basis(a)
            x = rep.basis_matrix
            assert rank(a.hstack(x)) == l
            assert rep.pivot_identity_ok
            assert all(s <= n - l + 1 for s in rep.column_sparsity)
            assert rep.monotonicity_verified
            assert rep.column_heights_ok
            assert check_equality_characterization(rep)


def test_chain_monotonicity():
    rng = random.Random(31)
    for _ in range(10):
        a = rand_int_matrix(rng, 6, 4)
        rep = sparse_basis(a)
        chain = [(1,), (1, 3), (1, 3, 4), (1, 2, 3, 4)]
        heights = [rep.subset_heights[c] for c in chain]
        for h1, h2 in zip(heights, heights[1:]):
            assert h1 <= h2


def test_every_valid_pivot_works():
    rng = random.Random(32)
    a = rand_int_matrix(rng, 5, 2, span=4)
    for j in index_sets(5, 2):
        if det(a.take_rows([i - 1 for i in j])).is_zero:
            continue
        rep = sparse_basis(a, pivot_set=j)
        assert rep.pivot_set == j
        assert rep.construction_ok
        assert check_equality_characterization(rep)


def test_block_shape_strict_and_equality():
    rng = random.Random(33)
    for _ in range(10):
        l = rng.randint(2, 4)
        extra = rng.randint(1, 3)
        rows = [[1 if j == i else 0 for j in range(l)] for i in range(l - 1)]
        rows.append([0] * (l - 1) + [1])
        u = [[rng.randint(-5, 5) for _ in range(l - 1)] for _ in range(extra)]
        a_zero = QMatrix(RATIONAL, rows + [ui + [0] for ui in u])
        a_nonzero = QMatrix(
            RATIONAL, rows + [ui + [rng.randint(1, 5)] for ui in u]
        )
        trimmed_zero = a_zero.take_cols(range(l - 1))
        trimmed_nonzero = a_nonzero.take_cols(range(l - 1))
        assert height_subspace(a_zero) == height_subspace(trimmed_zero)
        assert height_subspace(a_nonzero) > height_subspace(trimmed_nonzero)


def test_sparse_basis_over_quadratic_field():
    rng = random.Random(35)
    for d in (-1, 2):
        ctx = FieldCtx(d)
        a = rand_quad_matrix(rng, ctx, 4, 2)
        rep = sparse_basis(a)
        assert rep.pivot_identity_ok and rep.sparsity_ok
        assert rep.monotonicity_verified and rep.column_heights_ok
        assert check_equality_characterization(rep)


def test_subset_budget_partial():
    rng = random.Random(34)
    a = rand_int_matrix(rng, 5, 3)
    rep = sparse_basis(a, subset_budget=4)
    assert rep.subset_table_partial
    assert set(rep.subset_heights) == {(1,), (2,), (3,), (1, 2, 3)}
    assert rep.monotonicity_verified
    with pytest.raises(PreconditionError):
        check_equality_characterization(rep)


def test_shape_preconditions():
    with pytest.raises(PreconditionError):
        sparse_basis(QMatrix(RATIONAL, [[1, 2], [3, 4]]))  # L == N
    with pytest.raises(PreconditionError):
        sparse_basis(QMatrix(RATIONAL, [[1, 1], [2, 2], [3, 3]]))  # rank < L
