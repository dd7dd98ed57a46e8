"""Integer sensing matrices and the many-bases construction.

A full-spark L x M integer matrix (every L columns independent) pushed
through an invertible change of basis turns any L-dimensional subspace
into M vectors, every L of which form a basis, each of height at most
L^(3/2) * T * H(Z)^L for T the sup norm of the matrix. Random search keeps
the sup norm small; the Vandermonde construction is deterministic but
grows like M^(L-1).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .basis import DEFAULT_SUBSET_BUDGET, _nested_pairs, sparse_basis
from .bounds import envelope_constant
from .field import RATIONAL
from .heights import ExactHeight, height_subspace, height_vector
from .linalg import PreconditionError, QMatrix, rank


@dataclass
class SensingMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]
    sup_norm: int
    sparsity_level: int
    verified: bool
    method: str = "vandermonde"
    seed: int | None = None
    trials: int | None = None

    def as_qmatrix(self, ctx=RATIONAL) -> QMatrix:
        return QMatrix(ctx, self.entries, cols=self.cols)


def _int_det(rows: list[list[int]]) -> int:
    a = [r[:] for r in rows]
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
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (pk * a[i][j] - aik * a[k][j]) // prev
        prev = pk
    return sign * a[n - 1][n - 1]


def _int_rank(rows: list[list[int]]) -> int:
    a = [[Fraction(x) for x in r] for r in rows]
    nr, nc = len(a), len(a[0]) if a else 0
    rk = 0
    for c in range(nc):
        piv = next((i for i in range(rk, nr) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        inv = 1 / a[rk][c]
        a[rk] = [x * inv for x in a[rk]]
        for i in range(nr):
            if i != rk and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rk])]
        rk += 1
        if rk == nr:
            break
    return rk


def _verify_entries(entries, s: int) -> bool:
    l = len(entries)
    m = len(entries[0])
    for sel in combinations(range(m), s):
        sub = [[row[j] for j in sel] for row in entries]
        if s == l:
            if _int_det(sub) == 0:
                return False
        elif _int_rank(sub) != s:
            return False
    return True


def verify_sensing(matrix, s: int | None = None) -> bool:
    """Exhaustive check that every s columns are linearly independent."""
    entries = matrix.entries if isinstance(matrix, SensingMatrix) else tuple(
        tuple(int(x) for x in row) for row in matrix
    )
    l = len(entries)
    if s is None:
        s = l
    if s > l:
        raise PreconditionError("sparsity level cannot exceed the row count")
    return _verify_entries(entries, s)


def vandermonde_sensing(l: int, m: int) -> SensingMatrix:
    """Columns (1, t, t^2, ..., t^(L-1)) at the nodes t = 1..M."""
    if not 1 <= l < m:
        raise PreconditionError("need 1 <= L < M")
    entries = tuple(
        tuple((j + 1) ** i for j in range(m)) for i in range(l)
    )
    ok = _verify_entries(entries, l)
    return SensingMatrix(
        rows=l,
        cols=m,
        entries=entries,
        sup_norm=m ** (l - 1),
        sparsity_level=l,
        verified=ok,
        method="vandermonde",
    )


def search_sensing(
    l: int,
    m: int,
    t: int,
    seed: int = 0,
    max_tries: int = 100_000,
    s: int | None = None,
) -> SensingMatrix | None:
    """Random entries in [-T, T]; first matrix passing verification wins.

    Trials draw from independent generators seeded by (seed, trial), so the
    outcome is reproducible and trials could run concurrently. Returns None
    when the budget is exhausted, which does not disprove existence.
    """
    if t < 0:
        raise PreconditionError("need T >= 0")
    if not 1 <= l < m:
        raise PreconditionError("need 1 <= L < M")
    if s is None:
        s = l
    if t == 0:
        # only the zero matrix exists in range and it is never full spark
        return None
    for trial in range(max_tries):
        rng = random.Random(f"{seed}:{trial}")
        entries = tuple(
            tuple(rng.randint(-t, t) for _ in range(m)) for _ in range(l)
        )
        if _verify_entries(entries, s):
            return SensingMatrix(
                rows=l,
                cols=m,
                entries=entries,
                sup_norm=max((abs(x) for row in entries for x in row), default=0),
                sparsity_level=s,
                verified=True,
                method="search",
                seed=seed,
                trials=trial + 1,
            )
    return None


@dataclass
class ManyBasesResult:
    source: QMatrix
    basis_choice: str
    omega_matrix: QMatrix
    sensing: SensingMatrix
    product: QMatrix
    heights: list[ExactHeight]
    subspace_height: ExactHeight
    bound: ExactHeight
    heights_ok: bool
    all_bases_ok: bool
    subsets_sampled: bool
    checked_subsets: int
    sup_norm_within_reference: bool
    envelope_branch_bound: float

    @property
    def all_ok(self) -> bool:
        return self.heights_ok and self.all_bases_ok


def many_bases(
    z: QMatrix,
    sensing: SensingMatrix,
    omega: QMatrix | None = None,
    subset_budget: int = DEFAULT_SUBSET_BUDGET,
    sample_seed: int = 0,
) -> ManyBasesResult:
    """M vectors in col(z), every L of which span it, with exact height bound.

    The change-of-basis matrix comes from the pivot construction unless a
    caller basis is supplied; pivot columns already carry a coordinate
    equal to 1, which is the normalization the height bound needs.
    """
    l, m = sensing.rows, sensing.cols
    if z.cols != l:
        raise PreconditionError("sensing row count must match subspace dimension")
    if m <= l:
        raise PreconditionError("need more vectors than the dimension")
    if omega is None:
        w = sparse_basis(z, subset_budget=2).basis_matrix
        choice = "pivot-basis"
    else:
        if omega.rows != z.rows or omega.cols != l:
            raise PreconditionError("caller basis has the wrong shape")
        if rank(omega) != l or rank(z.hstack(omega)) != l:
            raise PreconditionError("caller basis does not span the subspace")
        w = omega
        choice = "user"
    amat = sensing.as_qmatrix(z.ctx)
    product = w @ amat
    heights = [height_vector(product.col(j), z.ctx) for j in range(m)]
    hz = height_subspace(z)
    tnorm = sensing.sup_norm
    bound = ExactHeight.from_square(z.ctx, Fraction(l ** 3 * tnorm ** 2)) * hz.pow(l)
    heights_ok = all(h <= bound for h in heights)

    total = comb(m, l)
    if total <= subset_budget:
        subsets = list(combinations(range(m), l))
        sampled = False
    else:
        rng = random.Random(f"manybases:{sample_seed}")
        subsets = [tuple(sorted(rng.sample(range(m), l))) for _ in range(subset_budget)]
        sampled = True
    all_bases = all(rank(product.take_cols(sel)) == l for sel in subsets)

    within_ref = tnorm ** l <= (2 * m) ** (l - 1)
    env = envelope_constant(z.ctx, l)
    env_branch = l ** 1.5 * tnorm * env ** l * float(hz)
    return ManyBasesResult(
        source=z,
        basis_choice=choice,
        omega_matrix=w,
        sensing=sensing,
        product=product,
        heights=heights,
        subspace_height=hz,
        bound=bound,
        heights_ok=heights_ok,
        all_bases_ok=all_bases,
        subsets_sampled=sampled,
        checked_subsets=len(subsets),
        sup_norm_within_reference=within_ref,
        envelope_branch_bound=env_branch,
    )


def strict_monotonicity(
    sensing: SensingMatrix, subset_budget: int = DEFAULT_SUBSET_BUDGET
) -> bool:
    """Strictly increasing subset heights for the row span of the matrix.

    Guaranteed true for verified full-spark input; callable on anything to
    exhibit the failure mode of non-sensing matrices.
    """
    z = sensing.as_qmatrix().transpose()
    rep = sparse_basis(z, subset_budget=subset_budget)
    table = rep.subset_heights
    for i1, i2 in _nested_pairs(table, sensing.rows):
        if not table[i1] < table[i2]:
            return False
    return True
