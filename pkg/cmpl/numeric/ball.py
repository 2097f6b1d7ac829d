from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Optional, Union

from flint import acb, arb, ctx, fmpz

Number = Union[int, Fraction, 'BallComplex']


def nearest_int(x: arb) -> int:
    """Integer nearest to the midpoint of x"""
    m, e = x.mid().man_exp()
    m, e = int(m), int(e)
    if e >= 0:
        return m << e
    return (m + (1 << (-e - 1))) >> (-e)


def log2_upper(x: arb) -> float:
    """Upper bound of log2(|x|) up to one bit; -inf for an exact zero"""
    u = abs(x).upper()
    if u.is_zero():
        return -math.inf
    m, e = u.man_exp()
    return int(e) + int(m).bit_length()


def to_arb(x: Union[int, Fraction]) -> arb:
    if isinstance(x, Fraction):
        return arb(fmpz(x.numerator)) / fmpz(x.denominator)
    return arb(fmpz(int(x)))


def to_acb(x: Union[int, Fraction, complex]) -> acb:
    if isinstance(x, complex):
        return acb(x.real, x.imag)
    return acb(to_arb(x))


class BallComplex:
    """
    Complex ball with certified radius, backed by an acb value. A ball created from a source function can be
    re-evaluated at any precision, which is how certificates are re-verified at doubled precision.
    """

    def __init__(self, value: acb, prec: int, source: Optional[Callable[[int], acb]] = None):
        self.value = value
        self.prec = prec
        self.source = source

    @staticmethod
    def from_function(fn: Callable[[int], acb], prec: int) -> BallComplex:
        with ctx.workprec(prec):
            value = fn(prec)
        return BallComplex(value, prec, fn)

    @staticmethod
    def exact(x: Union[int, Fraction, complex], prec: int = 64) -> BallComplex:
        return BallComplex.from_function(lambda p: to_acb(x), prec)

    @staticmethod
    def pi(prec: int) -> BallComplex:
        return BallComplex.from_function(lambda p: acb.pi(), prec)

    @staticmethod
    def two_pi_i(prec: int) -> BallComplex:
        return BallComplex.from_function(lambda p: acb(0, 2 * arb.pi()), prec)

    @staticmethod
    def from_decimal(re: str, im: str = '0', rad: str = '0', prec: int = 64) -> BallComplex:
        """Fixed ball from decimal strings, e.g. values imported from another system. Cannot be refined."""
        with ctx.workprec(prec):
            err = arb(rad) * arb(0, 1)
            value = acb(arb(re) + err, arb(im) + err)
        return BallComplex(value, prec)

    @property
    def refinable(self) -> bool:
        return self.source is not None

    def refine(self, prec: int) -> BallComplex:
        if self.source is None:
            # local import due to circular imports
            from cmpl.core.errors import InsufficientPrecision
            raise InsufficientPrecision(f'Ball without source cannot be refined to {prec} bits')
        return BallComplex.from_function(self.source, prec)

    def evaluate(self, prec: int) -> acb:
        """Raw acb at the requested precision, or the fixed value for balls without source"""
        if self.source is None:
            return self.value
        with ctx.workprec(prec):
            return self.source(prec)

    @property
    def real(self) -> arb:
        return self.value.real

    @property
    def imag(self) -> arb:
        return self.value.imag

    @property
    def radius(self) -> arb:
        return self.value.rad()

    def accuracy_bits(self) -> int:
        """Relative accuracy of the ball in bits"""
        return int(self.value.rel_accuracy_bits())

    def abs_upper(self) -> arb:
        return abs(self.value).upper()

    def log2_magnitude(self) -> float:
        return log2_upper(self.value)

    def contains(self, other: Number) -> bool:
        return self.value.contains(_coerce(other, self.prec).value)

    def overlaps(self, other: Number) -> bool:
        return self.value.overlaps(_coerce(other, self.prec).value)

    def is_certainly_zero(self, tol_log2: float) -> bool:
        return self.log2_magnitude() <= tol_log2

    def is_certainly_nonzero(self) -> bool:
        return not self.value.contains(0)

    def conjugate(self) -> BallComplex:
        return self._unary(lambda v: v.conjugate())

    def sqrt(self) -> BallComplex:
        return self._unary(lambda v: v.sqrt())

    def exp(self) -> BallComplex:
        return self._unary(lambda v: v.exp())

    def _unary(self, op: Callable[[acb], acb]) -> BallComplex:
        with ctx.workprec(self.prec):
            value = op(self.value)
        source = None
        if self.source is not None:
            src = self.source
            source = lambda p: op(src(p))
        return BallComplex(value, self.prec, source)

    def _binary(self, other: Number, op: Callable[[acb, acb], acb], swap: bool = False) -> BallComplex:
        other = _coerce(other, self.prec)
        a, b = (other, self) if swap else (self, other)
        prec = min(a.prec, b.prec)
        with ctx.workprec(prec):
            value = op(a.value, b.value)
        source = None
        if a.source is not None and b.source is not None:
            sa, sb = a.source, b.source
            source = lambda p: op(sa(p), sb(p))
        return BallComplex(value, prec, source)

    def __add__(self, other):
        return self._binary(other, lambda x, y: x + y)

    def __radd__(self, other):
        return self._binary(other, lambda x, y: x + y, swap=True)

    def __sub__(self, other):
        return self._binary(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return self._binary(other, lambda x, y: x - y, swap=True)

    def __mul__(self, other):
        return self._binary(other, lambda x, y: x * y)

    def __rmul__(self, other):
        return self._binary(other, lambda x, y: x * y, swap=True)

    def __truediv__(self, other):
        return self._binary(other, lambda x, y: x / y)

    def __rtruediv__(self, other):
        return self._binary(other, lambda x, y: x / y, swap=True)

    def __neg__(self):
        return self._unary(lambda v: -v)

    def __pow__(self, n: int):
        return self._unary(lambda v: v ** n)

    def as_dict(self, digits: int = 30):
        return {
            're': self.real.mid().str(digits, radius=False),
            'im': self.imag.mid().str(digits, radius=False),
            'rad_log2': self.radius_log2(),
            'prec_bits': self.prec,
        }

    def radius_log2(self) -> Optional[float]:
        r = log2_upper(self.real.rad() + self.imag.rad())
        return None if r == -math.inf else r

    def __repr__(self):
        return f'BallComplex({self.value.str(10)}, prec={self.prec})'


def _coerce(x: Number, prec: int) -> BallComplex:
    if isinstance(x, BallComplex):
        return x
    if isinstance(x, (int, Fraction, complex)):
        return BallComplex.exact(x, prec)
    raise TypeError(f'Cannot convert {type(x)} to BallComplex')
