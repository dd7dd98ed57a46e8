"""Exact Arakelov/Schmidt heights and sparse small-height bases.

Everything is exact rational arithmetic over Q or a quadratic field
Q(sqrt d); floating point appears only in advisory displays.
"""

from .basis import BasisReport, check_equality_characterization, select_pivot, sparse_basis
from .bounds import compare_regimes, compute_bounds, envelope_constant
from .field import RATIONAL, FieldCtx, FieldMismatchError, QNum, parse_qnum, qnum_str
from .heights import ExactHeight, height_dual, height_subspace, height_vector
from .linalg import (
    GrassmannVector,
    PreconditionError,
    QMatrix,
    det,
    grassmann,
    hnf2,
    index_sets,
    intersect_column_spaces,
    inverse,
    kernel_basis,
    minor,
    rank,
    span_column_spaces,
)
from .matfile import ParseError, parse_matrix_file, parse_matrix_text, render_matrix
from .relative import expand_over_base, relative_kernel, relative_report
from .sensing import (
    ManyBasesResult,
    SensingMatrix,
    many_bases,
    search_sensing,
    strict_monotonicity,
    vandermonde_sensing,
    verify_sensing,
)

__version__ = "0.1.0"

__all__ = [
    "BasisReport",
    "ExactHeight",
    "FieldCtx",
    "FieldMismatchError",
    "GrassmannVector",
    "ManyBasesResult",
    "ParseError",
    "PreconditionError",
    "QMatrix",
    "QNum",
    "RATIONAL",
    "check_equality_characterization",
    "compare_regimes",
    "compute_bounds",
    "det",
    "envelope_constant",
    "expand_over_base",
    "grassmann",
    "height_dual",
    "height_subspace",
    "height_vector",
    "hnf2",
    "index_sets",
    "intersect_column_spaces",
    "inverse",
    "kernel_basis",
    "many_bases",
    "minor",
    "parse_matrix_file",
    "parse_matrix_text",
    "parse_qnum",
    "qnum_str",
    "rank",
    "relative_kernel",
    "relative_report",
    "render_matrix",
    "search_sensing",
    "select_pivot",
    "span_column_spaces",
    "sparse_basis",
    "strict_monotonicity",
    "vandermonde_sensing",
    "verify_sensing",
]
