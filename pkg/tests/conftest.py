"""Shared helpers and independent oracles for the test suite.

The oracles deliberately avoid the library's computation paths: cofactor
expansion instead of elimination, coset counting instead of Hermite forms,
cross products instead of echelon kernels.
"""

from fractions import Fraction

from siegel import RATIONAL, QMatrix, rank


def rand_fraction(rng, span=9, den=4):
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_qnum(rng, ctx, span=4, den=3):
    b = rand_fraction(rng, span, den) if ctx.is_quadratic else 0
    return ctx.element(rand_fraction(rng, span, den), b)


def rand_int_matrix(rng, n, l, span=9, full_rank=True):
    while True:
        m = QMatrix(RATIONAL, [[rng.randint(-span, span) for _ in range(l)] for _ in range(n)])
        if not full_rank or rank(m) == min(n, l):
            return m


def rand_frac_matrix(rng, n, l, span=9, den=4, full_rank=True):
    while True:
        m = QMatrix(RATIONAL, [[rand_fraction(rng, span, den) for _ in range(l)] for _ in range(n)])
        if not full_rank or rank(m) == min(n, l):
            return m


def rand_quad_matrix(rng, ctx, n, l, span=3, den=2, full_rank=True):
    while True:
        m = QMatrix(ctx, [[rand_qnum(rng, ctx, span, den) for _ in range(l)] for _ in range(n)])
        if not full_rank or rank(m) == min(n, l):
            return m


def det_cofactor(m):
    """First-row cofactor expansion, independent of elimination order."""
    n = m.rows
    assert n == m.cols
    if n == 0:
        return m.ctx.one
    if n == 1:
        return m[0, 0]
    acc = m.ctx.zero
    rest = m.take_rows(range(1, n))
    for j in range(n):
        sub = rest.take_cols([c for c in range(n) if c != j])
        term = m[0, j] * det_cofactor(sub)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def principal_norm_by_cosets(alpha):
    """|O_K / (alpha)| counted by residue enumeration.

    alpha must be a nonzero algebraic integer; N * O_K is contained in the
    ideal for N = |Norm(alpha)|, so residues modulo N in the (1, omega)
    basis cover every coset, all cosets have equal size, and the index is
    N^2 divided by the number of residues divisible by alpha.
    """
    ctx = alpha.ctx
    u, v = alpha.integral_coords()
    assert u.denominator == 1 and v.denominator == 1, "alpha must be integral"
    nrm = alpha.norm()
    assert nrm != 0 and nrm.denominator == 1
    n = abs(int(nrm))
    count = 0
    for x in range(n):
        for y in range(n):
            z = ctx.element(x) + ctx.element(y) * ctx.omega
            q = z / alpha
            qu, qv = q.integral_coords()
            if qu.denominator == 1 and qv.denominator == 1:
                count += 1
    assert n * n % count == 0
    return n * n // count


def cross_product(r, s):
    """Kernel generator of a full-rank 2x3 matrix with rows r, s."""
    return (
        r[1] * s[2] - r[2] * s[1],
        r[2] * s[0] - r[0] * s[2],
        r[0] * s[1] - r[1] * s[0],
    )
