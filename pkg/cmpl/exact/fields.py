from __future__ import annotations

import logging
import math
import threading
from fractions import Fraction
from typing import List, Dict, Optional, Sequence, Tuple, Union

import sympy
from flint import acb, ctx, fmpz_poly
from sympy import Poly, QQ, invert

from cmpl.core.errors import (InputError, ReduciblePolynomial, RootIndexOutOfRange, InsufficientPrecision,
                              DegreeCapExceeded)
from cmpl.exact import polynomials
from cmpl.exact.polynomials import IntPoly, x, y, to_poly, from_poly, primitive, factor_q, is_squarefree
from cmpl.numeric.ball import BallComplex

MAX_ROOT_PREC = 1 << 16


class NumberField:

    def __init__(self, min_poly: Sequence[int], root_index: int = 0, check: bool = True,
                 logger: logging.Logger = None):
        """
        Number field Q[y]/(min_poly) together with its complex embeddings. Embeddings are the roots of min_poly,
        ordered by argument in [0, 2pi); roots of equal argument are ordered by increasing modulus in the upper half
        plane and decreasing modulus in the lower half plane, so that for a totally imaginary field the embedding k
        and 2*degree-1-k are complex conjugate.
        :param min_poly: monic irreducible integer polynomial, lowest degree first
        :param root_index: embedding realizing the field inside C
        :param check: verify irreducibility of min_poly
        """
        if logger is None:
            self.logger = logging.getLogger('NumberField')
        else:
            self.logger = logger

        min_poly = polynomials.normalize([int(c) for c in min_poly])
        if polynomials.degree(min_poly) < 1:
            raise InputError(f'Defining polynomial {min_poly} must have degree at least 1')
        if min_poly[-1] != 1:
            raise InputError(f'Defining polynomial {polynomials.poly_str(min_poly)} must be monic')
        if check and not polynomials.is_irreducible(min_poly):
            raise ReduciblePolynomial(f'{polynomials.poly_str(min_poly)} is reducible over Q')
        if not 0 <= root_index < len(min_poly) - 1:
            raise RootIndexOutOfRange(f'Root index {root_index} out of range for degree {len(min_poly) - 1}')

        self.min_poly: IntPoly = min_poly
        self.degree = len(min_poly) - 1
        self.root_index = root_index
        self.modulus = to_poly(min_poly, y)

        self._lock = threading.Lock()
        self._base: Optional[List[acb]] = None
        self._roots: Dict[int, List[acb]] = {}

    @staticmethod
    def rationals() -> NumberField:
        return NumberField([0, 1], check=False)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, NumberField):
            return self.min_poly == other.min_poly
        return False

    def __hash__(self):
        return hash(tuple(self.min_poly))

    def __repr__(self):
        return f'NumberField({polynomials.poly_str(self.min_poly, "y")})'

    def as_dict(self):
        return {
            'min_poly': self.min_poly,
            'root_index': self.root_index,
        }

    @staticmethod
    def from_dict(raw: dict) -> NumberField:
        return NumberField(raw['min_poly'], raw.get('root_index', 0))

    # Embeddings

    def _ordered_roots(self) -> List[acb]:
        prec = 64
        while prec <= MAX_ROOT_PREC:
            with ctx.workprec(prec):
                roots = [r for r, _ in fmpz_poly(self.min_poly).complex_roots()]
            if all(not roots[i].overlaps(roots[j]) for i in range(len(roots)) for j in range(i)):
                return sorted(roots, key=_embedding_key)
            prec *= 2
        raise InsufficientPrecision(f'Could not separate the roots of {self}')

    def embedding_values(self, prec: int) -> List[acb]:
        """Certified roots of min_poly at the given precision, in embedding order"""
        with self._lock:
            if self._base is None:
                self._base = self._ordered_roots()
            if prec in self._roots:
                return self._roots[prec]

            with ctx.workprec(prec):
                roots = [r for r, _ in fmpz_poly(self.min_poly).complex_roots()]
            ordered = []
            for base in self._base:
                matches = [r for r in roots if r.overlaps(base)]
                if len(matches) != 1:
                    raise InsufficientPrecision(f'Ambiguous refinement of root {base} of {self}')
                ordered.append(matches[0])
            self._roots[prec] = ordered
            return ordered

    def embeddings(self, prec: int = 64) -> List[BallComplex]:
        return [BallComplex.from_function(lambda p, k=k: self.embedding_values(p)[k], prec)
                for k in range(self.degree)]

    def is_totally_imaginary(self) -> bool:
        return all(not r.imag.contains(0) for r in self.embedding_values(64))

    # Elements

    def element(self, coords: Union[Sequence[Union[int, Fraction]], Poly, int, Fraction]) -> AlgebraicNumber:
        return AlgebraicNumber(self, coords)

    @property
    def gen(self) -> AlgebraicNumber:
        return AlgebraicNumber(self, [0, 1]) if self.degree > 1 else AlgebraicNumber(self, [-self.min_poly[0]])

    @property
    def one(self) -> AlgebraicNumber:
        return AlgebraicNumber(self, [1])

    @property
    def zero(self) -> AlgebraicNumber:
        return AlgebraicNumber(self, [0])

    def element_min_poly(self, a: AlgebraicNumber) -> IntPoly:
        """Minimal polynomial over Q of a field element, from the characteristic polynomial of multiplication by a"""
        basis = [self.gen ** j for j in range(self.degree)]
        columns = [(a * b).coords for b in basis]
        M = sympy.Matrix(self.degree, self.degree,
                         lambda i, j: sympy.Rational(columns[j][i].numerator, columns[j][i].denominator))
        charpoly = primitive(from_poly(M.charpoly(x)))
        factors = [f for f, _ in factor_q(charpoly) if polynomials.degree(f) > 0]
        assert len(factors) == 1, f'Characteristic polynomial of {a} is not a power of an irreducible polynomial'
        return factors[0]

    def automorphisms(self) -> List[AlgebraicNumber]:
        """Images of the generator under the automorphisms of the field, identity first"""
        factors = factor_over_field(self, [self.element(c) for c in self.min_poly])
        images = [-f[0] for f in factors if len(f) == 2]
        return sorted(images, key=lambda a: (a != self.gen, a.sort_key()))


def _embedding_key(r: acb) -> Tuple[float, float]:
    re, im = float(r.real.mid()), float(r.imag.mid())
    if r.imag.contains(0) and r.imag.rad() < 1e-30:
        im = 0.0
    arg = math.atan2(im, re) % (2 * math.pi)
    modulus = math.hypot(re, im)
    return round(arg, 10), modulus if arg <= math.pi else -modulus


class AlgebraicNumber:

    def __init__(self, parent: NumberField, coords: Union[Sequence[Union[int, Fraction]], Poly, int, Fraction],
                 embedding_index: int = None):
        """
        Element of a number field in the power basis of its generator.
        :param coords: rational coordinates, lowest power first, or a polynomial in y
        :param embedding_index: embedding realizing the element in C, defaults to the root index of the field
        """
        self.parent = parent
        if isinstance(coords, (int, Fraction)):
            coords = [coords]
        if not isinstance(coords, Poly):
            coords = to_poly(coords, y)
        self.poly: Poly = coords.rem(parent.modulus) if coords.degree() >= parent.degree else coords
        self.embedding_index = parent.root_index if embedding_index is None else embedding_index

    @property
    def coords(self) -> List[Fraction]:
        c = [Fraction(v) for v in from_poly(self.poly)]
        return c + [Fraction(0)] * (self.parent.degree - len(c))

    def _coerce(self, other) -> AlgebraicNumber:
        if isinstance(other, AlgebraicNumber):
            if other.parent != self.parent:
                raise InputError(f'Elements of different fields {self.parent} and {other.parent}')
            return other
        if isinstance(other, (int, Fraction)):
            return AlgebraicNumber(self.parent, [other], self.embedding_index)
        return NotImplemented

    def _new(self, poly: Poly) -> AlgebraicNumber:
        return AlgebraicNumber(self.parent, poly, self.embedding_index)

    def __add__(self, other):
        other = self._coerce(other)
        return self._new(self.poly + other.poly)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return self._new(self.poly - other.poly)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return self._new(self.poly * other.poly)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.poly)

    def inverse(self) -> AlgebraicNumber:
        if self.is_zero():
            raise ZeroDivisionError('Inverse of zero')
        if self.poly.degree() <= 0:
            return self._new(to_poly([1 / self.coords[0]], y))
        return self._new(invert(self.poly, self.parent.modulus))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        res = self.parent.one
        base = self
        while n > 0:
            if n & 1:
                res = res * base
            base = base * base
            n >>= 1
        return self._new(res.poly)

    def is_zero(self) -> bool:
        return self.poly.is_zero

    def is_rational(self) -> bool:
        return self.poly.degree() <= 0

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraicNumber) and other.parent != self.parent:
            return False
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return (self.poly - other.poly).is_zero

    def __hash__(self):
        return hash((self.parent, tuple(self.coords)))

    def sort_key(self):
        return tuple((c.numerator, c.denominator) for c in self.coords)

    def substitute(self, image: AlgebraicNumber) -> AlgebraicNumber:
        """Replace the generator by image, which may live in another field"""
        res = image.parent.zero
        for c in reversed(self.coords):
            res = res * image + c
        return res

    def value(self, prec: int, index: int = None) -> acb:
        index = self.embedding_index if index is None else index
        root = self.parent.embedding_values(prec)[index]
        with ctx.workprec(prec):
            return polynomials.evaluate(self.coords, root)

    def evaluate(self, prec: int, index: int = None) -> BallComplex:
        """Certified value under the embedding index (default: the element's own embedding)"""
        index = self.embedding_index if index is None else index
        return BallComplex.from_function(lambda p: self.value(p, index), prec)

    def min_poly(self) -> IntPoly:
        return self.parent.element_min_poly(self)

    def as_dict(self):
        return {
            'field': self.parent.min_poly,
            'coords': [str(c) for c in self.coords],
            'embedding': self.embedding_index,
        }

    def __repr__(self):
        return str(self.poly.as_expr()).replace('y', 'a')


# Polynomials over number fields, lowest degree first

FieldPoly = List[AlgebraicNumber]


def fpoly_trim(f: FieldPoly) -> FieldPoly:
    f = list(f)
    while len(f) > 1 and f[-1].is_zero():
        f.pop()
    return f


def fpoly_is_zero(f: FieldPoly) -> bool:
    return all(c.is_zero() for c in f)


def fpoly_monic(f: FieldPoly) -> FieldPoly:
    f = fpoly_trim(f)
    lc = f[-1].inverse()
    return [c * lc for c in f]


def fpoly_divmod(a: FieldPoly, b: FieldPoly) -> Tuple[FieldPoly, FieldPoly]:
    a, b = fpoly_trim(a), fpoly_trim(b)
    if fpoly_is_zero(b):
        raise ZeroDivisionError('Division by the zero polynomial')
    K = b[0].parent
    inv = b[-1].inverse()
    rem = list(a)
    quot = [K.zero] * max(1, len(a) - len(b) + 1)
    while len(rem) >= len(b) and not fpoly_is_zero(rem):
        shift = len(rem) - len(b)
        q = rem[-1] * inv
        quot[shift] = q
        for i, c in enumerate(b):
            rem[shift + i] = rem[shift + i] - q * c
        rem = fpoly_trim(rem[:-1]) if len(rem) > 1 else [K.zero]
    return fpoly_trim(quot), fpoly_trim(rem)


def fpoly_gcd(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    """Monic gcd over the number field by Euclid's algorithm"""
    a, b = fpoly_trim(a), fpoly_trim(b)
    while not fpoly_is_zero(b):
        a, b = b, fpoly_divmod(a, b)[1]
    return fpoly_monic(a)


def fpoly_from_q(K: NumberField, p: Sequence[Union[int, Fraction]]) -> FieldPoly:
    return [K.element(c) for c in p]


def _bivariate(f: FieldPoly) -> sympy.Expr:
    """f(x) with coefficients written as polynomials in y"""
    return sum((c.poly.as_expr() * x ** k for k, c in enumerate(f)), sympy.Integer(0))


def _shifted_norm(K: NumberField, f: FieldPoly, s: int) -> Poly:
    """Res_y(G(y), f(x - s*y, y)), the norm of f(x - s*a) from K[x] down to Q[x]"""
    G = Poly(K.modulus.as_expr(), y, x, domain=QQ)
    F = Poly(_bivariate(f).subs(x, x - s * y), y, x, domain=QQ)
    return Poly(G.resultant(F).as_expr(), x, domain=QQ)


def norm_shift(K: NumberField, f: FieldPoly, max_tries: int = 64) -> Tuple[int, Poly]:
    """Smallest shift s in 0, 1, -1, 2, ... whose shifted norm is squarefree"""
    for i in range(max_tries):
        s = (i + 1) // 2 * (1 if i % 2 else -1)
        N = _shifted_norm(K, f, s)
        if is_squarefree(from_poly(N)):
            return s, N
    raise DegreeCapExceeded(f'No squarefree norm found within {max_tries} shifts')


def factor_over_field(K: NumberField, f: Union[FieldPoly, Sequence[int]],
                      logger: logging.Logger = None) -> List[FieldPoly]:
    """
    Factor a squarefree polynomial over a number field with Trager's norm method: for a shift s making the norm
    N(x) = Res_y(G(y), f(x - s*y)) squarefree, every irreducible factor N_i of N over Q yields the irreducible
    factor gcd(f(x), N_i(x + s*a)) of f over K.
    :return: monic irreducible factors, sorted by degree
    """
    if logger is None:
        logger = logging.getLogger('Trager')
    if len(f) > 0 and not isinstance(f[0], AlgebraicNumber):
        f = fpoly_from_q(K, f)
    f = fpoly_trim(f)
    if len(f) <= 2:
        return [fpoly_monic(f)] if len(f) == 2 else []
    if K.degree == 1:
        factors = factor_q(primitive([c.coords[0] for c in f]))
        return [fpoly_from_q(K, fpoly_monic_q(g)) for g, _ in factors if len(g) > 1]

    s, N = norm_shift(K, f)
    logger.debug(f'Norm of degree {N.degree()} with shift {s} over {K}')
    res = []
    for g, _ in factor_q(primitive(from_poly(N))):
        if len(g) <= 1:
            continue
        shifted = Poly(to_poly(g).as_expr().subs(x, x + s * y), x)
        g_K = [K.element(Poly(c, y, domain=QQ)) for c in reversed(shifted.all_coeffs())]
        h = fpoly_gcd(f, g_K)
        if len(h) > 1:
            res.append(h)
    assert sum(len(h) - 1 for h in res) == len(f) - 1, 'Trager factors do not multiply to the input degree'
    return sorted(res, key=len)


def fpoly_monic_q(p: Sequence[int]) -> List[Fraction]:
    return [Fraction(c, p[-1]) for c in p]


def field_rank(rows: Sequence[Sequence[AlgebraicNumber]]) -> int:
    """Rank of a matrix over a number field by exact Gaussian elimination"""
    M = [list(r) for r in rows]
    if len(M) == 0 or len(M[0]) == 0:
        return 0
    rank = 0
    for c in range(len(M[0])):
        pivot = next((i for i in range(rank, len(M)) if not M[i][c].is_zero()), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        inv = M[rank][c].inverse()
        for i in range(rank + 1, len(M)):
            if M[i][c].is_zero():
                continue
            factor = M[i][c] * inv
            M[i] = [a - factor * b for a, b in zip(M[i], M[rank])]
        rank += 1
        if rank == len(M):
            break
    return rank
