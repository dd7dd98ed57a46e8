"""Exact Arakelov heights of vectors, matrices, and subspaces.

The height H of a nonzero vector over a field of degree d is carried as
the exact rational H**(2d), so every inequality in this package is decided
by rational arithmetic. Over Q the finite places contribute through the
primitive integer representative (gcd removal); over a quadratic field
they contribute through the norm of the content ideal, computed from a
2x2 Hermite normal form after clearing denominators. The archimedean part
is a norm of a sum of squares (real quadratic: one element norm; imaginary
quadratic: a square of a sum of element norms), always rational.

Decimal renderings are 12 significant digits obtained by integer root
bisection; they are display only and never take part in a comparison.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .field import FieldCtx, QNum
from .linalg import PreconditionError, QMatrix, grassmann, hnf2, kernel_basis, rank


def _iroot(n: int, e: int) -> int:
    """floor(n ** (1/e)) for n >= 0 by integer Newton iteration."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    if e == 1:
        return n
    x = 1 << ((n.bit_length() + e - 1) // e + 1)
    while True:
        y = ((e - 1) * x + n // x ** (e - 1)) // e
        if y >= x:
            return x
        x = y


def root_decimal(value: Fraction, exponent: int, sig: int = 12) -> str:
    """value ** (1/exponent) as a plain decimal with sig significant digits."""
    if value <= 0:
        raise ValueError("root_decimal needs a positive value")
    p, q = value.numerator, value.denominator
    s = sig + 8
    while True:
        m = _iroot(p * 10 ** (exponent * s) // q, exponent)
        if m >= 10 ** (sig + 1):
            break
        s += sig + 8
    digits = str(m)
    exp10 = len(digits) - 1 - s
    h = (int(digits[: sig + 1]) + 5) // 10
    if h >= 10 ** sig:
        h //= 10
        exp10 += 1
    ds = str(h)
    point = exp10 + 1
    if point <= 0:
        return "0." + "0" * (-point) + ds
    if point >= sig:
        return ds + "0" * (point - sig)
    return ds[:point] + "." + ds[point:]


class ExactHeight:
    """A positive height carried exactly as value = H**exponent.

    exponent is twice the field degree. Heights with different exponents
    compare exactly through cross powers: H1 <= H2 iff
    value1**e2 <= value2**e1.
    """

    __slots__ = ("ctx", "exponent", "value")
    __hash__ = None

    def __init__(self, ctx: FieldCtx, exponent: int, value):
        value = Fraction(value)
        if value <= 0:
            raise ValueError("height carrier must be positive")
        self.ctx = ctx
        self.exponent = int(exponent)
        self.value = value

    @classmethod
    def one(cls, ctx: FieldCtx) -> ExactHeight:
        return cls(ctx, 2 * ctx.degree, Fraction(1))

    @classmethod
    def from_square(cls, ctx: FieldCtx, square) -> ExactHeight:
        """The positive real whose square is the given rational."""
        return cls(ctx, 2, Fraction(square))

    def _cross(self, other: ExactHeight) -> tuple[Fraction, Fraction]:
        return self.value ** other.exponent, other.value ** self.exponent

    def __eq__(self, other):
        if not isinstance(other, ExactHeight):
            return NotImplemented
        a, b = self._cross(other)
        return a == b

    def __le__(self, other):
        a, b = self._cross(other)
        return a <= b

    def __lt__(self, other):
        a, b = self._cross(other)
        return a < b

    def __ge__(self, other):
        a, b = self._cross(other)
        return a >= b

    def __gt__(self, other):
        a, b = self._cross(other)
        return a > b

    def __mul__(self, other: ExactHeight) -> ExactHeight:
        e = lcm(self.exponent, other.exponent)
        v = self.value ** (e // self.exponent) * other.value ** (e // other.exponent)
        return ExactHeight(self.ctx, e, v)

    def pow(self, k: int) -> ExactHeight:
        if k < 0:
            raise ValueError("negative height power")
        return ExactHeight(self.ctx, self.exponent, self.value ** k)

    @property
    def approx(self) -> str:
        return root_decimal(self.value, self.exponent)

    def __float__(self) -> float:
        return float(self.value) ** (1.0 / self.exponent)

    def render(self) -> str:
        return f"H^{self.exponent} = {self.value} (≈ {self.approx})"

    def __repr__(self):
        return f"ExactHeight(H^{self.exponent}={self.value})"


def _primitive_int_vector(fracs: list[Fraction]) -> list[int]:
    """Scale a nonzero rational vector to the canonical primitive form.

    gcd of the entries is 1 and the first nonzero entry is positive.
    """
    mult = 1
    for f in fracs:
        mult = lcm(mult, f.denominator)
    ints = [int(f * mult) for f in fracs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v != 0)
    if first < 0:
        ints = [-v for v in ints]
    return ints


def _content_ideal_norm(entries: list[QNum], ctx: FieldCtx) -> Fraction:
    """Norm of the fractional ideal generated by the coordinates.

    Denominators are cleared first; the resulting integral ideal is the
    Z-module spanned by each generator and its omega multiple, whose index
    in the ring of integers comes from the 2x2 Hermite normal form.
    """
    coords = [x.integral_coords() for x in entries if not x.is_zero]
    mult = 1
    for u, v in coords:
        mult = lcm(mult, lcm(u.denominator, v.denominator))
    scaled = [(int(u * mult), int(v * mult)) for u, v in coords]
    d = ctx.d
    row0, row1 = [], []
    for u, v in scaled:
        if (u, v) == (0, 0):
            continue
        row0.append(u)
        row1.append(v)
        # omega * (u + v*omega) in the (1, omega) basis
        if ctx.omega_is_half:
            row0.append(v * (d - 1) // 4)
            row1.append(u + v)
        else:
            row0.append(v * d)
            row1.append(u)
    h = hnf2([row0, row1])
    index = h[0][0] * h[1][1]
    return Fraction(index, mult * mult)


def height_vector(entries, ctx: FieldCtx | None = None) -> ExactHeight:
    """Projective (Arakelov) height of a nonzero coordinate vector."""
    entries = list(entries)
    if ctx is None:
        if not entries or not isinstance(entries[0], QNum):
            raise ValueError("ctx required unless entries are QNum")
        ctx = entries[0].ctx
    xs = [ctx.element(x) for x in entries]
    if not xs or all(x.is_zero for x in xs):
        raise PreconditionError("projective height of the zero vector is undefined")
    if ctx.is_rational:
        prim = _primitive_int_vector([x.a for x in xs])
        return ExactHeight(ctx, 2, sum(v * v for v in prim))
    na = _content_ideal_norm(xs, ctx)
    if ctx.d > 0:
        sq = ctx.zero
        for x in xs:
            sq = sq + x * x
        arch = sq.norm()
    else:
        arch = sum(x.norm() for x in xs) ** 2
    return ExactHeight(ctx, 4, arch / (na * na))


def height_subspace(basis_matrix: QMatrix) -> ExactHeight:
    """Height of the column space: height of the vector of maximal minors.

    By convention the zero subspace (0 columns) and the full space have
    height exactly 1.
    """
    if basis_matrix.cols == 0:
        return ExactHeight.one(basis_matrix.ctx)
    g = grassmann(basis_matrix)
    if g.is_zero:
        raise PreconditionError("height of a rank-deficient basis matrix")
    return height_vector(g.coords, basis_matrix.ctx)


def height_dual(m: QMatrix) -> ExactHeight:
    """Height of the null space of a full-rank wide matrix.

    Exactly equals height_subspace(m.transpose()): the duality identity
    between a matrix's row space and its kernel.
    """
    if m.rows >= m.cols:
        raise PreconditionError("height_dual needs a wide matrix (rows < cols)")
    if rank(m) != m.rows:
        raise PreconditionError("height_dual needs full row rank")
    return height_subspace(kernel_basis(m))
