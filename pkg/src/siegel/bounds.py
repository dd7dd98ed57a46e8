"""Floating-point comparison of the competing basis height guarantees.

Everything here is display only and never feeds an exact verdict. The
gamma function is evaluated through exact factorial and half-integer
closed forms, so the small arguments used in practice are correct to
double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .field import FieldCtx
from .heights import height_subspace
from .linalg import QMatrix


def _gamma_exact(two_x: int) -> float:
    """Gamma(two_x / 2) for integer two_x >= 1."""
    if two_x <= 0:
        raise ValueError("need a positive half-integer argument")
    if two_x % 2 == 0:
        return float(math.factorial(two_x // 2 - 1))
    n = (two_x - 1) // 2
    return math.factorial(2 * n) * math.sqrt(math.pi) / (4 ** n * math.factorial(n))


def place_factor_real(l: int) -> float:
    """pi^(-1/2) * Gamma(L/2 + 1)^(1/L), the real-place volume factor."""
    if l <= 170:
        root = _gamma_exact(l + 2) ** (1.0 / l)
    else:
        # the exact factorial form no longer fits a double
        root = math.exp(math.lgamma(l / 2.0 + 1) / l)
    return math.pi ** -0.5 * root


def place_factor_complex(l: int) -> float:
    """(2 pi)^(-1/2) * Gamma(L + 1)^(1/(2L)), the complex-place factor."""
    if l <= 170:
        root = float(math.factorial(l)) ** (1.0 / (2 * l))
    else:
        root = math.exp(math.lgamma(l + 1.0) / (2 * l))
    return (2 * math.pi) ** -0.5 * root


def envelope_constant(ctx: FieldCtx, l: int) -> float:
    """Computable upper envelope for the generalized Hermite constant.

    2 * |disc|^(1/(2d)) * product over infinite places of the volume
    factor to the power d_v / d.
    """
    if l < 1:
        raise ValueError("need L >= 1")
    disc_part = abs(ctx.disc) ** (1.0 / (2 * ctx.degree))
    if ctx.is_rational:
        places = place_factor_real(l)
    elif ctx.d > 0:
        # two real places, each d_v/d = 1/2
        places = place_factor_real(l)
    else:
        # one complex place with d_v/d = 1
        places = place_factor_complex(l)
    return 2.0 * disc_part * places


@dataclass
class BoundTable:
    n: int
    l: int
    ctx: FieldCtx
    epsilon: float
    h_z: float
    subspace_bound: float
    product_bound_bv: float
    product_bound_rt: float
    envelope: float
    envelope_bound: float

    def labeled(self) -> list[tuple[str, float]]:
        return [
            ("subspace-height", self.subspace_bound),
            ("bombieri-vaaler", self.product_bound_bv),
            ("roy-thunder", self.product_bound_rt),
            ("hermite-envelope", self.envelope_bound),
        ]


def compute_bounds(z: QMatrix, epsilon: float = 1e-6) -> BoundTable:
    """Evaluate the guarantee table for the column space of z."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    n, l = z.rows, z.cols
    ctx = z.ctx
    h_z = float(height_subspace(z))
    d = ctx.degree
    bv = n ** (l / 2.0) * ((2 / math.pi) ** ctx.r2 * abs(ctx.disc)) ** (l / (2.0 * d)) * h_z
    rt = (math.exp(l * (l - 1) / 4.0) + epsilon) * h_z
    env = envelope_constant(ctx, l)
    return BoundTable(
        n=n,
        l=l,
        ctx=ctx,
        epsilon=epsilon,
        h_z=h_z,
        subspace_bound=h_z,
        product_bound_bv=bv,
        product_bound_rt=rt,
        envelope=env,
        envelope_bound=env ** l * h_z,
    )


@dataclass
class RegimeReport:
    ordering: list[tuple[str, float]]
    smallest: str
    caveat: str


def compare_regimes(table: BoundTable) -> RegimeReport:
    """Order the guarantees; ties keep the listing order, so the
    constant-free subspace-height bound wins ties. Values within a relative
    1e-9 count as tied, absorbing double-precision noise in the constants."""
    labeled = table.labeled()
    listing = {name: i for i, (name, _) in enumerate(labeled)}
    ordered = sorted(labeled, key=lambda kv: kv[1])
    i = 0
    while i < len(ordered):
        j = i + 1
        while j < len(ordered) and abs(ordered[j][1] - ordered[i][1]) <= 1e-9 * max(
            1.0, abs(ordered[i][1])
        ):
            j += 1
        ordered[i:j] = sorted(ordered[i:j], key=lambda kv: listing[kv[0]])
        i = j
    caveat = (
        "bombieri-vaaler and roy-thunder bound the product of the basis "
        "heights; a single vector may take up the whole product, so they "
        "are read here as max-height guarantees"
    )
    return RegimeReport(ordering=ordered, smallest=ordered[0][0], caveat=caveat)


def render_table(table: BoundTable, regimes: RegimeReport) -> str:
    lines = [
        f"field {table.ctx}, N = {table.n}, L = {table.l}",
        f"H(Z) ≈ {table.h_z:.6f}    c(L) ≈ {table.envelope:.6f}    epsilon = {table.epsilon:g}",
        "",
        f"{'bound':<20} {'max-height guarantee':>22}",
    ]
    for name, val in table.labeled():
        lines.append(f"{name:<20} {val:>22.6f}")
    lines.append("")
    lines.append(f"smallest guarantee: {regimes.smallest}")
    lines.append(f"note: {regimes.caveat}")
    lines.append(
        "note: the subspace-within-subspace constant of the classical "
        "comparison result is unspecified and reported nowhere"
    )
    return "\n".join(lines)
