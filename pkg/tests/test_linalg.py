import random
from fractions import Fraction
from itertools import combinations

import pytest

from conftest import (
    det_cofactor,
    principal_norm_by_cosets,
    rand_frac_matrix,
    rand_int_matrix,
    rand_quad_matrix,
)
from siegel import (
    RATIONAL,
    FieldCtx,
    PreconditionError,
    QMatrix,
    det,
    grassmann,
    hnf2,
    index_sets,
    inverse,
    kernel_basis,
    minor,
    rank,
)
from siegel.linalg import column_space_basis

WORKED = QMatrix(RATIONAL, [[1, 2, 3], [4, 3, 1], [5, 2, 1], [2, 1, 3]])
CTX_I = FieldCtx(-1)


def test_det_trivia():
    assert det(QMatrix.identity(RATIONAL, 4)) == 1
    assert det(QMatrix(RATIONAL, [[1, 2], [3, 4]])) == -2


def test_det_worked_pivot_minor_matches_cofactor_oracle():
    aj = WORKED.take_rows([0, 1, 2])
    oracle = det_cofactor(aj)
    assert oracle == -18
    assert det(aj) == oracle
    assert not det(aj).is_zero


def test_det_requires_square():
    with pytest.raises(PreconditionError):
        det(WORKED)


def test_det_matches_cofactor_random():
    rng = random.Random(10)
    for n in (1, 2, 3, 4, 5):
        m = rand_frac_matrix(rng, n, n, full_rank=False)
        assert det(m) == det_cofactor(m)
    for n in (1, 2, 3, 4):
        m = rand_quad_matrix(rng, CTX_I, n, n, full_rank=False)
        assert det(m) == det_cofactor(m)
        m2 = rand_quad_matrix(rng, FieldCtx(5), n, n, full_rank=False)
        assert det(m2) == det_cofactor(m2)


def test_det_multiplicative():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(1, 4)
        a = rand_frac_matrix(rng, n, n, full_rank=False)
        b = rand_frac_matrix(rng, n, n, full_rank=False)
        assert det(a @ b) == det(a) * det(b)


def test_rank_of_transpose():
    rng = random.Random(12)
    for _ in range(20):
        m = rand_int_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), full_rank=False)
        assert rank(m) == rank(m.transpose())
    assert rank(WORKED) == 3


def test_inverse_round_trip_and_singular():
    rng = random.Random(13)
    for _ in range(15):
        n = rng.randint(1, 4)
        m = rand_frac_matrix(rng, n, n)
        assert m @ inverse(m) == QMatrix.identity(RATIONAL, n)
    singular = QMatrix(RATIONAL, [[1, 2], [2, 4]])
    with pytest.raises(PreconditionError):
        inverse(singular)


def test_kernel_simple():
    k = kernel_basis(QMatrix(RATIONAL, [[1, 1]]))
    assert k.cols == 1
    # up to scale: (1, -1)
    assert k.col(0)[0] * (-1) == k.col(0)[1]


def test_kernel_random_annihilates():
    rng = random.Random(14)
    for _ in range(25):
        n, l = rng.randint(1, 4), rng.randint(1, 5)
        m = rand_frac_matrix(rng, n, l, full_rank=False)
        k = kernel_basis(m)
        assert k.cols == l - rank(m)
        if k.cols:
            prod = m @ k
            assert all(prod[i, j].is_zero for i in range(n) for j in range(k.cols))
        assert rank(k) == k.cols


def test_kernel_trivial_is_zero_columns():
    k = kernel_basis(QMatrix(RATIONAL, [[1, 0], [0, 1], [3, 4]]))
    assert k.cols == 0 and k.rows == 2


def test_minor_full_sets_equal_det():
    aj = WORKED.take_rows([0, 1, 2])
    assert minor(aj, (1, 2, 3), (1, 2, 3)) == det(aj)


def test_minor_zero_row():
    m = QMatrix(RATIONAL, [[1, 2], [0, 0], [5, 6]])
    assert minor(m, (1, 2), (1, 2)).is_zero


def test_minor_out_of_range():
    with pytest.raises(PreconditionError):
        minor(WORKED, (1, 5), (1, 2))
    with pytest.raises(PreconditionError):
        minor(WORKED, (2, 1), (1, 2))


def test_worked_maximal_minors_all_match_oracle():
    for rs in index_sets(4, 3):
        sub = WORKED.take_rows([i - 1 for i in rs])
        assert det_cofactor(sub) == -18
        assert minor(WORKED, rs, (1, 2, 3)) == -18


def test_grassmann_square_is_det():
    m = QMatrix(RATIONAL, [[1, 2], [3, 4]])
    g = grassmann(m)
    assert g.coords == (det(m),)


def test_grassmann_worked():
    g = grassmann(WORKED)
    assert all(x == -18 for x in g.coords)
    assert g.coord((1, 2, 4)) == -18


def test_grassmann_needs_tall_matrix():
    with pytest.raises(PreconditionError):
        grassmann(QMatrix(RATIONAL, [[1, 2, 3]]))


def test_grassmann_covariance_under_column_change():
    rng = random.Random(15)
    for _ in range(10):
        n, l = 5, 2
        m = rand_int_matrix(rng, n, l)
        while True:
            g = rand_frac_matrix(rng, l, l, span=3, den=2, full_rank=False)
            if not det(g).is_zero:
                break
        lhs = grassmann(m @ g).coords
        dg = det(g)
        rhs = tuple(dg * x for x in grassmann(m).coords)
        assert lhs == rhs


def test_archimedean_determinant_bound_exact():
    rng = random.Random(16)
    for _ in range(30):
        n = rng.randint(1, 5)
        m = rand_frac_matrix(rng, n, n, full_rank=False)
        lhs = det(m).a ** 2
        rhs = Fraction(1)
        for j in range(n):
            rhs *= sum(x.a ** 2 for x in m.col(j))
        assert lhs <= rhs


def test_hnf2_unimodular_and_diagonal():
    h = hnf2([[1, 0], [0, 1]])
    assert h == ((1, 0), (0, 1))
    h = hnf2([[2, 0], [0, 2]])
    assert h == ((2, 0), (0, 2))
    assert h[0][0] * h[1][1] == 4


def test_hnf2_gaussian_ideal_norm():
    # ideal (1 + 2i) in Z[i]: generators alpha and alpha * i
    alpha = CTX_I.element(1, 2)
    gens = [alpha, alpha * CTX_I.sqrt_d]
    coords = [g.integral_coords() for g in gens]
    h = hnf2([[int(u) for u, _ in coords], [int(v) for _, v in coords]])
    index = h[0][0] * h[1][1]
    assert index == 5
    assert index == principal_norm_by_cosets(alpha)


@pytest.mark.parametrize("d", [-1, 2, 5, -3])
def test_hnf2_matches_coset_oracle_random(d):
    ctx = FieldCtx(d)
    rng = random.Random(17 + d)
    done = 0
    while done < 6:
        u, v = rng.randint(-3, 3), rng.randint(-3, 3)
        alpha = ctx.element(u) + ctx.element(v) * ctx.omega
        if alpha.is_zero or abs(alpha.norm()) > 20:
            continue
        gens = [alpha, alpha * ctx.omega]
        coords = [g.integral_coords() for g in gens]
        h = hnf2([[int(cu) for cu, _ in coords], [int(cv) for _, cv in coords]])
        assert h[0][0] * h[1][1] == principal_norm_by_cosets(alpha)
        assert h[1][0] == 0 and h[0][0] > 0 and h[1][1] > 0 and 0 <= h[0][1] < h[0][0]
        done += 1


def test_hnf2_rank_deficient_errors():
    with pytest.raises(PreconditionError):
        hnf2([[1, 2], [0, 0]])
    with pytest.raises(PreconditionError):
        hnf2([[0, 0], [0, 0]])


def test_index_sets_lexicographic():
    sets = list(index_sets(4, 3))
    assert sets == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    assert list(index_sets(3, 0)) == [()]


def test_column_space_basis_deterministic():
    m = QMatrix(RATIONAL, [[1, 2, 0], [2, 4, 1]])
    b = column_space_basis(m)
    assert b.cols == 2
    assert b.col(0) == m.col(0) and b.col(1) == m.col(2)


def test_matmul_and_stack_shapes():
    a = QMatrix(RATIONAL, [[1, 2], [3, 4], [5, 6]])
    assert (a @ QMatrix.identity(RATIONAL, 2)) == a
    assert a.hstack(a).cols == 4
    assert a.vstack(a).rows == 6
    with pytest.raises(ValueError):
        a.hstack(QMatrix(RATIONAL, [[1], [2]]))
