"""Exact arithmetic in Q and in quadratic number fields Q(sqrt d).

Elements are a + b*sqrt(d) with rational a, b held as fully reduced
fractions.Fraction values, so equality is exact and canonical. Nothing in
this module ever touches floating point. All values are immutable and the
operations are pure, hence safe to use from concurrent contexts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class FieldMismatchError(ValueError):
    """Operands belong to different field contexts."""


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return False
        p += 1
    return True


@dataclass(frozen=True)
class FieldCtx:
    """Descriptor of the working field: Q when d is None, else Q(sqrt d).

    d must be squarefree and different from 0 and 1. The ring of integers
    is Z[omega] with omega = sqrt(d) unless d = 1 mod 4, in which case
    omega = (1 + sqrt(d))/2.
    """

    d: int | None = None

    def __post_init__(self):
        if self.d is not None:
            if self.d in (0, 1) or not is_squarefree(self.d):
                raise ValueError(
                    f"quadratic field needs squarefree d not in {{0, 1}}, got {self.d}"
                )

    @property
    def is_rational(self) -> bool:
        return self.d is None

    @property
    def is_quadratic(self) -> bool:
        return self.d is not None

    @property
    def degree(self) -> int:
        return 1 if self.d is None else 2

    @property
    def disc(self) -> int:
        if self.d is None:
            return 1
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def r1(self) -> int:
        """Number of real embeddings."""
        if self.d is None:
            return 1
        return 2 if self.d > 0 else 0

    @property
    def r2(self) -> int:
        """Number of conjugate pairs of complex embeddings."""
        return 1 if (self.d is not None and self.d < 0) else 0

    @property
    def omega_is_half(self) -> bool:
        return self.d is not None and self.d % 4 == 1

    @property
    def omega_label(self) -> str:
        if self.d is None:
            return "1"
        return "(1+sqrt(d))/2" if self.omega_is_half else "sqrt(d)"

    @property
    def omega(self) -> QNum:
        """Second ring-of-integers generator as a field element."""
        if self.d is None:
            return self.one
        if self.omega_is_half:
            return QNum(self, Fraction(1, 2), Fraction(1, 2))
        return QNum(self, Fraction(0), Fraction(1))

    @property
    def zero(self) -> QNum:
        return QNum(self, Fraction(0))

    @property
    def one(self) -> QNum:
        return QNum(self, Fraction(1))

    @property
    def sqrt_d(self) -> QNum:
        if self.d is None:
            raise ValueError("rational field has no sqrt(d)")
        return QNum(self, Fraction(0), Fraction(1))

    def element(self, a, b=0) -> QNum:
        """Coerce a value (QNum, int, or Fraction) into this field."""
        if isinstance(a, QNum):
            if a.ctx != self:
                raise FieldMismatchError(f"element of {a.ctx} used in {self}")
            if b:
                raise ValueError("b given together with a QNum")
            return a
        if isinstance(a, float) or isinstance(b, float):
            raise TypeError("floating point values are rejected; use Fraction")
        return QNum(self, Fraction(a), Fraction(b))

    def __str__(self) -> str:
        return "Q" if self.d is None else f"Q(sqrt {self.d})"


RATIONAL = FieldCtx()


@dataclass(frozen=True)
class QNum:
    """Exact field element a + b*sqrt(d); b is 0 over the rational field."""

    ctx: FieldCtx
    a: Fraction
    b: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.a, Fraction):
            object.__setattr__(self, "a", Fraction(self.a))
        if not isinstance(self.b, Fraction):
            object.__setattr__(self, "b", Fraction(self.b))
        if self.ctx.is_rational and self.b != 0:
            raise ValueError("rational field element with nonzero sqrt part")

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self) -> bool:
        return not self.is_zero

    def _coerce(self, other):
        if isinstance(other, QNum):
            if other.ctx != self.ctx:
                raise FieldMismatchError(
                    f"mixed field operands: {self.ctx} and {other.ctx}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return QNum(self.ctx, Fraction(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QNum(self.ctx, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QNum(self.ctx, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return QNum(self.ctx, -self.a, -self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = self.ctx.d or 0
        return QNum(
            self.ctx,
            self.a * o.a + d * self.b * o.b,
            self.a * o.b + self.b * o.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> QNum:
        if self.ctx.is_rational:
            if self.a == 0:
                raise ZeroDivisionError("inverse of zero field element")
            return QNum(self.ctx, 1 / self.a)
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero field element")
        return QNum(self.ctx, self.a / n, -self.b / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = self.ctx.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.a == other and self.b == 0
        if isinstance(other, QNum):
            return self.ctx == other.ctx and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.a, self.b))

    def conj(self) -> QNum:
        """The nontrivial Galois automorphism a + b*sqrt(d) -> a - b*sqrt(d).

        Identity on the rational field.
        """
        return QNum(self.ctx, self.a, -self.b)

    def norm(self) -> Fraction:
        """Field norm down to Q: x * conj(x) = a^2 - d*b^2; x itself over Q."""
        if self.ctx.is_rational:
            return self.a
        return self.a * self.a - self.ctx.d * self.b * self.b

    def trace(self) -> Fraction:
        """Field trace down to Q: 2a over a quadratic field, x itself over Q."""
        if self.ctx.is_rational:
            return self.a
        return 2 * self.a

    def integral_coords(self) -> tuple[Fraction, Fraction]:
        """Coordinates (u, v) with x = u + v*omega in the (1, omega) basis."""
        if self.ctx.is_rational or not self.ctx.omega_is_half:
            return (self.a, self.b)
        # omega = (1 + sqrt(d))/2: a + b*sqrt(d) = (a - b) + 2b*omega
        return (self.a - self.b, 2 * self.b)

    def __str__(self) -> str:
        return qnum_str(self)

    def __repr__(self) -> str:
        return f"QNum({self.ctx}, {self.a}, {self.b})"


# Element text grammar: rat := ['-'] digits ['/' digits]
#                       qnum := rat | rat '*w' | rat ('+'|'-') rat '*w'
# where w denotes sqrt(d) of the declared field. Whitespace inside an
# entry is ignored.
_RAT = r"-?\d+(?:/\d+)?"
_RE_PLAIN = re.compile(rf"^(?P<a>{_RAT})$")
_RE_WONLY = re.compile(rf"^(?P<b>{_RAT})\*w$")
_RE_FULL = re.compile(rf"^(?P<a>{_RAT})(?P<sign>[+-])(?P<b>{_RAT})\*w$")


def _parse_rat(text: str) -> Fraction:
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ValueError(f"zero denominator in {text!r}") from None


def parse_qnum(text: str, ctx: FieldCtx) -> QNum:
    """Parse one field element per the entry grammar."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty field element")
    m = _RE_PLAIN.match(s)
    if m:
        return QNum(ctx, _parse_rat(m.group("a")))
    if ctx.is_rational:
        raise ValueError(f"'w' entry needs a quadratic field: {text!r}")
    m = _RE_WONLY.match(s)
    if m:
        return QNum(ctx, Fraction(0), _parse_rat(m.group("b")))
    m = _RE_FULL.match(s)
    if m:
        b = _parse_rat(m.group("b"))
        if m.group("sign") == "-":
            b = -b
        return QNum(ctx, _parse_rat(m.group("a")), b)
    raise ValueError(f"cannot parse field element: {text!r}")


def qnum_str(x: QNum) -> str:
    """Render an element in the entry grammar; parse_qnum round-trips it."""
    if x.b == 0:
        return str(x.a)
    if x.a == 0:
        return f"{x.b}*w"
    if x.b > 0:
        return f"{x.a}+{x.b}*w"
    return f"{x.a}-{-x.b}*w"
