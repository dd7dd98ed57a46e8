import math

import pytest

from siegel import RATIONAL, FieldCtx, QMatrix, compare_regimes, compute_bounds, envelope_constant
from siegel.bounds import place_factor_complex, place_factor_real, render_table

WORKED = QMatrix(RATIONAL, [[1, 2, 3], [4, 3, 1], [5, 2, 1], [2, 1, 3]])


def test_envelope_closed_forms_over_q():
    # Gamma(3/2) = sqrt(pi)/2 makes the L = 1 constant collapse to 1
    assert abs(envelope_constant(RATIONAL, 1) - 1.0) <= 1e-12
    expect = 2.0 / math.sqrt(math.pi)
    got = envelope_constant(RATIONAL, 2)
    assert abs(got - expect) / expect <= 1e-12


def test_place_factors():
    assert abs(place_factor_real(2) - math.pi ** -0.5) < 1e-15
    assert abs(place_factor_complex(1) - (2 * math.pi) ** -0.5) < 1e-15


def test_worked_table():
    table = compute_bounds(WORKED)
    assert table.n == 4 and table.l == 3
    assert table.subspace_bound == 2.0
    assert abs(table.product_bound_bv - 4 ** 1.5 * 2.0) < 1e-9
    rt_expect = (math.exp(1.5) + 1e-6) * 2.0
    assert abs(table.product_bound_rt - rt_expect) < 1e-9
    regimes = compare_regimes(table)
    assert regimes.smallest == "subspace-height"
    assert regimes.ordering[0][1] == 2.0
    text = render_table(table, regimes)
    assert "subspace-height" in text and "smallest guarantee" in text


def test_rt_strictly_increasing_in_l():
    vals = []
    for l in range(1, 6):
        z = QMatrix.identity(RATIONAL, 6).take_cols(range(l))
        vals.append(compute_bounds(z).product_bound_rt)
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_bv_increasing_in_n():
    vals = []
    for n in range(3, 7):
        z = QMatrix.identity(RATIONAL, n).take_cols(range(2))
        vals.append(compute_bounds(z).product_bound_bv)
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_envelope_at_least_one_over_q():
    for l in range(1, 9):
        assert envelope_constant(RATIONAL, l) >= 1.0 - 1e-12


def test_envelope_finite_for_large_l():
    for ctx in (RATIONAL, FieldCtx(-1)):
        v = envelope_constant(ctx, 500)
        assert math.isfinite(v) and v > 1.0


def test_dimension_one_regimes_coincide():
    z = QMatrix(RATIONAL, [[1], [0], [0]])
    table = compute_bounds(z)
    regimes = compare_regimes(table)
    # c(1) = 1 over Q, so the envelope branch equals H(Z); the tie goes to
    # the constant-free subspace-height bound
    assert abs(table.envelope_bound - table.subspace_bound) < 1e-12
    assert regimes.smallest == "subspace-height"


def test_huge_height_subspace_ordering():
    big = 10 ** 6
    z = QMatrix(RATIONAL, [[1, 0], [0, 1], [big, big]])
    table = compute_bounds(z)
    regimes = compare_regimes(table)
    assert regimes.smallest == "subspace-height"
    names = [n for n, _ in regimes.ordering]
    # for large H(Z) the envelope branch beats roy-thunder and bombieri-vaaler
    assert names.index("hermite-envelope") < names.index("roy-thunder")
    vals = [v for _, v in regimes.ordering]
    assert vals == sorted(vals)


def test_imaginary_quadratic_constants():
    ctx = FieldCtx(-1)
    z = QMatrix.identity(ctx, 3).take_cols(range(2))
    table = compute_bounds(z)
    expect_bv = 3 ** 1.0 * ((2 / math.pi) * 4) ** (2 / 4.0) * 1.0
    assert abs(table.product_bound_bv - expect_bv) < 1e-9
    expect_env = 2 * 4 ** 0.25 * place_factor_complex(2)
    assert abs(table.envelope - expect_env) < 1e-12


def test_epsilon_validated():
    with pytest.raises(ValueError):
        compute_bounds(WORKED, epsilon=0.0)
