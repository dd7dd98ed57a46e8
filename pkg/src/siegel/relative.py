"""Rational kernels of matrices over a quadratic field.

For an M x N matrix A over K = Q(sqrt d), a rational vector solves Ax = 0
exactly when it solves A'x = 0, where A' stacks the two coefficient
matrices of A in the integral basis (1, omega). When the conjugate stack
(A over conj(A)) has full rank 2M, the rational kernel has dimension
N - 2M, its height equals the height of the conjugate stack, and every
subset of the constructed basis stays below the product of the squared
row heights of A.
"""

from __future__ import annotations

from dataclasses import dataclass

from .basis import DEFAULT_SUBSET_BUDGET, BasisReport, sparse_basis
from .field import RATIONAL, FieldCtx
from .heights import ExactHeight, height_subspace, height_vector
from .linalg import PreconditionError, QMatrix, kernel_basis, rank


@dataclass
class RelativeInstance:
    ctx_k: FieldCtx
    matrix: QMatrix
    expanded: QMatrix
    stacked: QMatrix
    kernel_basis_q: QMatrix
    dim: int


def expand_over_base(a: QMatrix) -> QMatrix:
    """Stack the (1, omega) coefficient matrices of A into a matrix over Q."""
    if not a.ctx.is_quadratic:
        raise PreconditionError("expansion needs a quadratic field matrix")
    top = []
    bottom = []
    for i in range(a.rows):
        coords = [x.integral_coords() for x in a.row(i)]
        top.append([u for u, _ in coords])
        bottom.append([v for _, v in coords])
    return QMatrix(RATIONAL, top + bottom, cols=a.cols)


def conjugate_stack(a: QMatrix) -> QMatrix:
    """Rows of A followed by the rows of its Galois conjugate."""
    return a.vstack(a.conj())


def relative_kernel(a: QMatrix) -> RelativeInstance:
    """Basis over Q of ker(A) ∩ Q^N for A over a quadratic field."""
    if not a.ctx.is_quadratic:
        raise PreconditionError("relative kernel needs a quadratic field matrix")
    r = a.ctx.degree
    rm = r * a.rows
    if rm >= a.cols:
        raise PreconditionError("need r*M < N")
    stacked = conjugate_stack(a)
    if rank(stacked) != rm:
        raise PreconditionError("conjugate stack is rank deficient: hypothesis violated")
    expanded = expand_over_base(a)
    kern = kernel_basis(expanded)
    if kern.cols != a.cols - rm:
        raise PreconditionError("kernel dimension mismatch")
    for jcol in range(kern.cols):
        lifted = [a.ctx.element(x.a) for x in kern.col(jcol)]
        if any(not v.is_zero for v in a.mul_vector(lifted)):
            raise PreconditionError("kernel column fails A x = 0 over the extension")
    return RelativeInstance(a.ctx, a, expanded, stacked, kern, kern.cols)


@dataclass
class RelativeReport:
    instance: RelativeInstance
    basis_report: BasisReport
    h_z: ExactHeight
    h_stack: ExactHeight
    bound_product: ExactHeight
    height_identity_ok: bool
    bounds_ok: bool

    @property
    def all_ok(self) -> bool:
        return (
            self.height_identity_ok
            and self.bounds_ok
            and self.basis_report.construction_ok
        )


def relative_report(a: QMatrix, subset_budget: int = DEFAULT_SUBSET_BUDGET) -> RelativeReport:
    """Full pipeline: rational kernel, sparse basis, height identity, bounds."""
    inst = relative_kernel(a)
    rep = sparse_basis(inst.kernel_basis_q, subset_budget=subset_budget)
    h_z = rep.subspace_height
    h_stack = height_subspace(inst.stacked.transpose())
    r = a.ctx.degree
    bound = ExactHeight.one(a.ctx)
    for i in range(a.rows):
        bound = bound * height_vector(a.row(i), a.ctx).pow(r)
    identity_ok = h_z == h_stack
    bounds_ok = all(h <= bound for h in rep.subset_heights.values()) and h_z <= bound
    return RelativeReport(
        instance=inst,
        basis_report=rep,
        h_z=h_z,
        h_stack=h_stack,
        bound_product=bound,
        height_identity_ok=identity_ok,
        bounds_ok=bounds_ok,
    )
