"""Built-in verification suites, runnable via the `selftest` subcommand.

Each suite draws seeded random instances, checks the exact inequalities
and identities the library promises, and reports one pass/fail line. A
failure signals an implementation bug, never bad luck: every comparison
is exact rational arithmetic.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .basis import check_equality_characterization, sparse_basis
from .bounds import compare_regimes, compute_bounds, envelope_constant
from .field import RATIONAL, FieldCtx, parse_qnum, qnum_str
from .heights import ExactHeight, height_dual, height_subspace, height_vector
from .linalg import (
    QMatrix,
    det,
    grassmann,
    intersect_column_spaces,
    kernel_basis,
    rank,
    span_column_spaces,
)
from .matfile import parse_matrix_text, render_matrix
from .relative import conjugate_stack, relative_report
from .sensing import many_bases, search_sensing, strict_monotonicity, vandermonde_sensing

# 4x3 worked example: all four maximal minors are -18, so the column space
# has height 2 and the pivot basis has columns of height sqrt(2).
WORKED_4X3 = ((1, 2, 3), (4, 3, 1), (5, 2, 1), (2, 1, 3))


def _rand_fraction(rng, span=9, den=4) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def _rand_int_matrix(rng, n, l, span=9) -> QMatrix:
    while True:
        m = QMatrix(RATIONAL, [[rng.randint(-span, span) for _ in range(l)] for _ in range(n)])
        if rank(m) == l:
            return m


def _rand_frac_matrix(rng, n, l, span=9, den=4) -> QMatrix:
    while True:
        m = QMatrix(RATIONAL, [[_rand_fraction(rng, span, den) for _ in range(l)] for _ in range(n)])
        if rank(m) == min(n, l):
            return m


def _rand_qnum(rng, ctx, span=4, den=3):
    b = _rand_fraction(rng, span, den) if ctx.is_quadratic else 0
    return ctx.element(_rand_fraction(rng, span, den), b)


def suite_worked_example():
    a = QMatrix(RATIONAL, WORKED_4X3)
    g = grassmann(a)
    vals = {x.a for x in g.coords}
    if vals != {Fraction(-18)} and vals != {Fraction(18)}:
        return False, f"maximal minors {[str(x) for x in g.coords]}"
    rep = sparse_basis(a)
    x_expect = QMatrix(RATIONAL, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, -1, 1]])
    checks = [
        rep.pivot_set == (1, 2, 3),
        rep.basis_matrix == x_expect,
        rep.subspace_height.exponent == 2 and rep.subspace_height.value == 4,
        all(h.value == 2 and h.exponent == 2 for h in rep.column_heights),
        all(
            rep.subset_heights[p].value == 3
            for p in [(1, 2), (1, 3), (2, 3)]
        ),
        rep.subset_heights[(1,)] < rep.subset_heights[(1, 2)],
        rep.subset_heights[(1, 2)] < rep.subspace_height,
        rep.construction_ok,
        check_equality_characterization(rep),
        not any(rep.standard_columns),
    ]
    return all(checks), f"H(Z)^2 = {rep.subspace_height.value}, X pivot {rep.pivot_set}"


def suite_pivot_basis_random():
    rng = random.Random("pivot-basis-random")
    shapes = [(4, 2), (5, 3), (6, 3), (7, 4)]
    count = 0
    for n, l in shapes:
        for _ in range(50):
            a = _rand_int_matrix(rng, n, l)
            rep = sparse_basis(a)
            if not (
                rep.pivot_identity_ok
                and rep.sparsity_ok
                and all(s <= n - l + 1 for s in rep.column_sparsity)
                and rep.column_heights_ok
                and not rep.subset_table_partial
                and rep.monotonicity_verified
                and check_equality_characterization(rep)
            ):
                return False, f"failure at {n}x{l} instance {count}"
            count += 1
    return True, f"{count} instances, all verdicts hold"


def suite_duality():
    rng = random.Random("duality")
    for i in range(100):
        n = rng.randint(2, 6)
        m_rows = rng.randint(1, n - 1)
        m = _rand_frac_matrix(rng, m_rows, n)
        if not height_dual(m) == height_subspace(m.transpose()):
            return False, f"instance {i}"
    return True, "100 instances, kernel height equals row-space height"


def suite_hadamard():
    rng = random.Random("hadamard")
    for i in range(100):
        n = rng.randint(2, 6)
        l = rng.randint(1, min(4, n))
        x = _rand_int_matrix(rng, n, l)
        hz = height_subspace(x)
        prod = ExactHeight.one(RATIONAL)
        for j in range(l):
            prod = prod * height_vector(x.col(j))
        if not hz <= prod:
            return False, f"column product instance {i}"
    for i in range(100):
        n = rng.randint(2, 6)
        l = rng.randint(2, min(4, n))
        x = _rand_int_matrix(rng, n, l)
        j = rng.randint(1, l - 1)
        idx = list(range(l))
        rng.shuffle(idx)
        y, z = x.take_cols(sorted(idx[:j])), x.take_cols(sorted(idx[j:]))
        if not height_subspace(x) <= height_subspace(y) * height_subspace(z):
            return False, f"partition instance {i}"
    for i in range(100):
        n = rng.randint(1, 5)
        m = QMatrix(RATIONAL, [[_rand_fraction(rng) for _ in range(n)] for _ in range(n)])
        d2 = det(m).a ** 2
        bound = Fraction(1)
        for j in range(n):
            bound *= sum(x.a ** 2 for x in m.col(j))
        if d2 > bound:
            return False, f"determinant instance {i}"
    return True, "3 x 100 instances, all inequalities exact"


def suite_struppeck_vaaler():
    rng = random.Random("struppeck-vaaler")
    for i in range(100):
        dz, dy = rng.randint(1, 3), rng.randint(1, 3)
        z = _rand_int_matrix(rng, 6, dz, span=4)
        y = _rand_int_matrix(rng, 6, dy, span=4)
        lhs = height_subspace(span_column_spaces(z, y)) * height_subspace(
            intersect_column_spaces(z, y)
        )
        rhs = height_subspace(z) * height_subspace(y)
        if not lhs <= rhs:
            return False, f"instance {i}"
    return True, "100 subspace pairs in Q^6"


def _block_instance(rng, l, extra, zero_v):
    ctx = RATIONAL
    rows = []
    for i in range(l - 1):
        rows.append([1 if j == i else 0 for j in range(l)])
    rows.append([0] * (l - 1) + [1])
    for _ in range(extra):
        u = [rng.randint(-5, 5) for _ in range(l - 1)]
        v = 0 if zero_v else rng.randint(1, 5) * rng.choice([-1, 1])
        rows.append(u + [v])
    return QMatrix(ctx, rows)


def suite_block_equality():
    rng = random.Random("block-equality")
    for i in range(50):
        l = rng.randint(2, 4)
        extra = rng.randint(1, 3)
        a = _block_instance(rng, l, extra, zero_v=False)
        if not height_subspace(a) > height_subspace(a.take_cols(range(l - 1))):
            return False, f"strict instance {i}"
    for i in range(50):
        l = rng.randint(2, 4)
        extra = rng.randint(1, 3)
        a = _block_instance(rng, l, extra, zero_v=True)
        if not height_subspace(a) == height_subspace(a.take_cols(range(l - 1))):
            return False, f"equality instance {i}"
    return True, "50 strict + 50 equality block instances"


def suite_relative():
    ctx_i = FieldCtx(-1)
    a = QMatrix(ctx_i, [[ctx_i.one, ctx_i.sqrt_d, ctx_i.one + ctx_i.sqrt_d]])
    rep = relative_report(a)
    kern_expect = QMatrix(RATIONAL, [[-1], [-1], [1]])
    worked = (
        rep.instance.kernel_basis_q == kern_expect
        and rep.h_z.exponent == 2
        and rep.h_z.value == 3
        and rep.h_stack.exponent == 4
        and rep.h_stack.value == 9
        and rep.height_identity_ok
        and rep.bound_product == ExactHeight.from_square(ctx_i, 16)
        and rep.bounds_ok
    )
    if not worked:
        return False, "worked 1x3 instance over Q(sqrt -1)"
    rng = random.Random("relative")
    done = 0
    for d in (-1, 2):
        ctx = FieldCtx(d)
        for _ in range(25):
            n = rng.randint(3, 5)
            while True:
                a = QMatrix(ctx, [[_rand_qnum(rng, ctx) for _ in range(n)]])
                if rank(conjugate_stack(a)) == 2:
                    break
            rep = relative_report(a)
            if not (
                rep.instance.dim == n - 2
                and rep.height_identity_ok
                and rep.bounds_ok
                and rep.basis_report.construction_ok
            ):
                return False, f"random instance over {ctx}"
            done += 1
    return True, f"worked instance + {done} random rows over Q(sqrt -1), Q(sqrt 2)"


def suite_sensing():
    generated = []
    for l in range(1, 5):
        for m in range(l + 1, 9):
            v = vandermonde_sensing(l, m)
            if not v.verified:
                return False, f"vandermonde {l}x{m} not full spark"
            generated.append(v)
    found = search_sensing(3, 6, 6, seed=20260810, max_tries=100_000)
    if found is None:
        return False, "search 3x6 with T=6 exhausted its budget"
    generated.append(found)
    z = QMatrix(RATIONAL, WORKED_4X3)
    sens = vandermonde_sensing(3, 5)
    res = many_bases(z, sens)
    t = sens.sup_norm
    bound_sq = Fraction(27 * t ** 2 * 4 ** 3)
    if not (res.all_bases_ok and not res.subsets_sampled and res.checked_subsets == 10):
        return False, "many-bases span check"
    if not all(h.exponent == 2 and h.value <= bound_sq for h in res.heights):
        return False, "many-bases height bound"
    if not res.heights_ok:
        return False, "many-bases bound object"
    for s in generated:
        if not strict_monotonicity(s):
            return False, f"strict monotonicity on {s.method} {s.rows}x{s.cols}"
    return True, f"{len(generated)} sensing matrices, search hit in {found.trials} trials"


def suite_height_properties():
    rng = random.Random("height-properties")
    ctxs = [RATIONAL, FieldCtx(2), FieldCtx(-1), FieldCtx(5), FieldCtx(-3)]
    for i in range(50):
        ctx = ctxs[i % len(ctxs)]
        n = rng.randint(2, 5)
        while True:
            v = [_rand_qnum(rng, ctx) for _ in range(n)]
            if any(not x.is_zero for x in v):
                break
        h = height_vector(v, ctx)
        while True:
            c = _rand_qnum(rng, ctx)
            if not c.is_zero:
                break
        if not height_vector([c * x for x in v], ctx) == h:
            return False, f"scaling instance {i}"
        perm = v[:]
        rng.shuffle(perm)
        if not height_vector(perm, ctx) == h:
            return False, f"permutation instance {i}"
        if not height_vector(v + [ctx.zero, ctx.zero], ctx) == h:
            return False, f"zero-padding instance {i}"
        if not h >= ExactHeight.one(ctx):
            return False, f"height below 1 at instance {i}"
    for i in range(100):
        ctx = ctxs[i % len(ctxs)]
        n = rng.randint(3, 5)
        l = rng.randint(1, 2)
        while True:
            x = QMatrix(ctx, [[_rand_qnum(rng, ctx, 3, 2) for _ in range(l)] for _ in range(n)])
            if rank(x) == l:
                break
        while True:
            g = QMatrix(ctx, [[_rand_qnum(rng, ctx, 3, 2) for _ in range(l)] for _ in range(l)])
            if not det(g).is_zero:
                break
        if not height_subspace(x @ g) == height_subspace(x):
            return False, f"basis invariance instance {i}"
    for i in range(30):
        n = rng.randint(2, 5)
        while True:
            fr = [_rand_fraction(rng) for _ in range(n)]
            if any(fr):
                break
        hq = height_vector(fr, RATIONAL)
        for ctx in ctxs[1:]:
            if not height_vector([ctx.element(f) for f in fr], ctx) == hq:
                return False, f"absoluteness instance {i} over {ctx}"
    return True, "scaling, permutation, padding, 100 GL changes, absoluteness"


def suite_bounds_table():
    c1 = envelope_constant(RATIONAL, 1)
    c2 = envelope_constant(RATIONAL, 2)
    if abs(c1 - 1.0) > 1e-12:
        return False, f"c(1) = {c1!r}"
    expect2 = 2.0 / math.sqrt(math.pi)
    if abs(c2 - expect2) / expect2 > 1e-12:
        return False, f"c(2) = {c2!r}"
    table = compute_bounds(QMatrix(RATIONAL, WORKED_4X3))
    regimes = compare_regimes(table)
    rt_expect = (math.exp(1.5) + table.epsilon) * 2.0
    if regimes.smallest != "subspace-height" or table.subspace_bound != 2.0:
        return False, f"smallest regime {regimes.smallest}"
    if abs(table.product_bound_rt - rt_expect) > 1e-9:
        return False, "roy-thunder evaluation"
    return True, f"c(1) = 1, c(2) = 2/sqrt(pi), smallest guarantee {table.subspace_bound}"


def suite_field_axioms():
    rng = random.Random("field-axioms")
    ctxs = [RATIONAL, FieldCtx(2), FieldCtx(-1), FieldCtx(5), FieldCtx(-3), FieldCtx(-7)]
    for i in range(200):
        ctx = ctxs[i % len(ctxs)]
        x, y, z = (_rand_qnum(rng, ctx) for _ in range(3))
        if (x + y) + z != x + (y + z) or x * (y + z) != x * y + x * z:
            return False, f"ring axiom instance {i}"
        if (x * y) * z != x * (y * z):
            return False, f"associativity instance {i}"
        if not x.is_zero and x * x.inverse() != ctx.one:
            return False, f"inverse instance {i}"
        if x.conj().conj() != x:
            return False, f"involution instance {i}"
        if (x + y).conj() != x.conj() + y.conj() or (x * y).conj() != x.conj() * y.conj():
            return False, f"automorphism instance {i}"
        if (x * y).norm() != x.norm() * y.norm():
            return False, f"norm multiplicativity instance {i}"
        u, v = x.integral_coords()
        if ctx.element(u) + ctx.element(v) * ctx.omega != x:
            return False, f"integral coordinates instance {i}"
        if (x * x.conj()).norm() != x.norm() ** 2:
            return False, f"norm of product with conjugate instance {i}"
    return True, "200 samples over 6 field contexts"


def suite_serialization():
    rng = random.Random("serialization")
    ctxs = [RATIONAL, FieldCtx(5), FieldCtx(-1), FieldCtx(-3), FieldCtx(7)]
    for i in range(40):
        ctx = ctxs[i % len(ctxs)]
        n, l = rng.randint(1, 5), rng.randint(1, 4)
        m = QMatrix(ctx, [[_rand_qnum(rng, ctx) for _ in range(l)] for _ in range(n)])
        if parse_matrix_text(render_matrix(m)) != m:
            return False, f"matrix round-trip instance {i}"
        for row in range(n):
            for x in m.row(row):
                if parse_qnum(qnum_str(x), ctx) != x:
                    return False, f"entry round-trip instance {i}"
    return True, "40 matrices round-trip entrywise"


SUITES = [
    ("worked-example-regression", suite_worked_example),
    ("pivot-basis-random", suite_pivot_basis_random),
    ("duality", suite_duality),
    ("hadamard", suite_hadamard),
    ("struppeck-vaaler", suite_struppeck_vaaler),
    ("block-equality", suite_block_equality),
    ("relative-kernel", suite_relative),
    ("sensing", suite_sensing),
    ("height-properties", suite_height_properties),
    ("bounds-table", suite_bounds_table),
    ("field-axioms", suite_field_axioms),
    ("serialization-roundtrip", suite_serialization),
]


def run_all(out=print) -> bool:
    ok_all = True
    for name, fn in SUITES:
        ok, detail = fn()
        ok_all = ok_all and ok
        out(f"{'PASS' if ok else 'FAIL'}  {name:<26} {detail}")
    out(f"{'OK' if ok_all else 'FAILED'}: {len(SUITES)} suites")
    return ok_all
