from __future__ import annotations

import logging
from typing import List, Sequence, Tuple

from cmpl.core.errors import DegreeCapExceeded, InputError, InsufficientPrecision
from cmpl.exact import polynomials
from cmpl.exact.fields import (NumberField, AlgebraicNumber, FieldPoly, factor_over_field, fpoly_divmod, fpoly_gcd,
                               fpoly_from_q, fpoly_monic_q, fpoly_trim, norm_shift)
from cmpl.exact.polynomials import IntPoly, from_poly, primitive

DEGREE_CAP = 8
ORDER_CAP = 10 ** 4
MAX_MATCH_PREC = 4096

Permutation = Tuple[int, ...]


class SplittingField:

    def __init__(self, field: NumberField, roots: List[AlgebraicNumber], degrees: List[int]):
        """
        Splitting field of a squarefree rational polynomial.
        :param field: the splitting field as simple extension of Q
        :param roots: all roots of the polynomial as elements of field, in the order of discovery
        :param degrees: degree of every step of the tower
        """
        self.field = field
        self.roots = roots
        self.degrees = degrees

    @property
    def order(self) -> int:
        return self.field.degree

    def __repr__(self):
        return f'SplittingField({self.field}, tower {self.degrees})'


class SplittingFieldBuilder:

    def __init__(self, max_order: int = ORDER_CAP, logger: logging.Logger = None):
        """
        Builds splitting fields as a tower of simple extensions. Each step factors the not yet split part of the
        polynomial over the current field K = Q(a) with Trager's norm method and adjoins a root b of a non-linear
        factor q through the primitive element b + s*a, whose minimal polynomial is the squarefree norm of q(x - s*a).
        Everything found so far is then rewritten in the new generator.
        """
        self.max_order = max_order
        if logger is None:
            self.logger = logging.getLogger('Galois')
        else:
            self.logger = logger

    def build(self, p: Sequence[int]) -> SplittingField:
        p = polynomials.normalize(p)
        if polynomials.degree(p) < 1:
            raise InputError('Splitting field of a constant polynomial')
        if not polynomials.is_squarefree(p):
            raise InputError(f'{polynomials.poly_str(p)} is not squarefree')

        K = NumberField.rationals()
        roots: List[AlgebraicNumber] = []
        pending: List[FieldPoly] = [fpoly_from_q(K, fpoly_monic_q(p))]
        degrees = []
        while True:
            nonlinear = []
            for h in pending:
                for f in factor_over_field(K, h, self.logger):
                    if len(f) == 2:
                        roots.append(-f[0])
                    else:
                        nonlinear.append(f)
            if len(nonlinear) == 0:
                break

            q = min(nonlinear, key=len)
            nonlinear.remove(q)
            L, old_gen, beta = self.adjoin(K, q)
            degrees.append(len(q) - 1)
            self.logger.debug(f'Adjoined a root of a degree {len(q) - 1} factor, field degree is {L.degree}')

            roots = [r.substitute(old_gen) for r in roots] + [beta]
            rest, remainder = fpoly_divmod([c.substitute(old_gen) for c in q], [-beta, L.one])
            assert all(c.is_zero() for c in remainder), 'Adjoined root does not divide its factor'
            pending = [[c.substitute(old_gen) for c in f] for f in nonlinear]
            if len(rest) > 1:
                pending.append(rest)
            K = L

        assert len(roots) == len(p) - 1, 'Splitting field does not contain all roots'
        return SplittingField(K, roots, degrees)

    def adjoin(self, K: NumberField, q: FieldPoly) -> Tuple[NumberField, AlgebraicNumber, AlgebraicNumber]:
        """
        Adjoin a root of the irreducible monic factor q to K.
        :return: (new field, generator of K in the new field, the adjoined root in the new field)
        """
        if K.degree * (len(q) - 1) > self.max_order:
            raise DegreeCapExceeded(f'Splitting field degree exceeds {self.max_order}')
        s, N = norm_shift(K, q)
        G, c = monic_integral(primitive(from_poly(N)))
        L = NumberField(G, check=False)
        # root of the squarefree norm: b + s*a = gen / c
        theta = L.gen / c

        if K.degree == 1:
            old_gen = L.element(K.gen.coords[0])
        else:
            # a is the only common root of min_poly(y) and q(theta - s*y) over L
            g = fpoly_gcd(fpoly_from_q(L, K.min_poly), _compose_shift(q, L, theta, s))
            if len(g) != 2:
                raise InsufficientPrecision(f'Generator of {K} is not determined by the norm (gcd degree '
                                            f'{len(g) - 1})')
            old_gen = -g[0]
        return L, old_gen, theta - s * old_gen


def monic_integral(P: IntPoly) -> Tuple[IntPoly, int]:
    """
    For a primitive integer polynomial with leading coefficient c, the monic integer polynomial
    c^(n-1) * P(x / c), whose roots are c times the roots of P.
    """
    n = len(P) - 1
    c = P[-1]
    return [P[k] * c ** (n - 1 - k) if k < n else 1 for k in range(n + 1)], c


def _compose_shift(q: FieldPoly, L: NumberField, theta: AlgebraicNumber, s: int) -> FieldPoly:
    """q(theta - s*y) as polynomial in y over L, reading the coefficients of q as polynomials in y"""
    res: FieldPoly = [L.zero]
    linear = [theta, L.element(-s)]
    power: FieldPoly = [L.one]
    for c in q:
        res = _fpoly_add(res, _fpoly_mul(power, [L.element(v) for v in c.coords]))
        power = _fpoly_mul(power, linear)
    return fpoly_trim(res)


def _fpoly_add(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    K = a[0].parent
    n = max(len(a), len(b))
    a = a + [K.zero] * (n - len(a))
    b = b + [K.zero] * (n - len(b))
    return [u + v for u, v in zip(a, b)]


def _fpoly_mul(a: FieldPoly, b: FieldPoly) -> FieldPoly:
    K = a[0].parent
    res = [K.zero] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u.is_zero():
            continue
        for j, v in enumerate(b):
            res[i + j] = res[i + j] + u * v
    return res


def splitting_field(p: Sequence[int], max_order: int = ORDER_CAP) -> SplittingField:
    return SplittingFieldBuilder(max_order).build(p)


def splitting_field_order(p: Sequence[int], degree_cap: int = DEGREE_CAP) -> int:
    """
    Order of the Galois group of the splitting field of a squarefree polynomial, the product of the degrees of
    the tower.
    """
    p = polynomials.parse_polynomial(p)
    if polynomials.degree(p) > degree_cap:
        raise DegreeCapExceeded(f'Degree {polynomials.degree(p)} exceeds the cap {degree_cap}')
    return splitting_field(p).order


def _precisions() -> List[int]:
    res, prec = [], 64
    while prec <= MAX_MATCH_PREC:
        res.append(prec)
        prec *= 2
    return res


def galois_permutations(factors: Sequence[IntPoly], max_order: int = ORDER_CAP,
                        logger: logging.Logger = None) -> List[Permutation]:
    """
    Galois group of the splitting field of a product of distinct monic irreducible polynomials, acting on the
    concatenated roots of the factors (each factor's roots in embedding order of its number field).
    :return: permutations perm with perm[i] the image of root i, identity first
    """
    if logger is None:
        logger = logging.getLogger('Galois')
    factors = [polynomials.normalize(f) for f in factors]
    if len(set(map(tuple, factors))) != len(factors):
        raise InputError('Factors must be distinct')
    for f in factors:
        if not polynomials.is_monic(f) or not polynomials.is_irreducible(f):
            raise InputError(f'{polynomials.poly_str(f)} is not monic irreducible')
    product = [1]
    for f in factors:
        product = polynomials.multiply(product, f)

    S = SplittingFieldBuilder(max_order, logger).build(product)
    n = len(S.roots)
    fields = [NumberField(f, check=False) for f in factors]

    for prec in _precisions():
        targets = [r for K in fields for r in K.embedding_values(prec)]
        images = []
        for j in range(S.order):
            image = []
            for r in S.roots:
                v = r.value(prec, j)
                matches = [k for k in range(n) if targets[k].overlaps(v)]
                if len(matches) != 1:
                    break
                image.append(matches[0])
            if len(image) != n:
                break
            images.append(image)
        if len(images) == S.order:
            inverse = [0] * n
            for i, k in enumerate(images[0]):
                inverse[k] = i
            perms = [tuple(image[inverse[k]] for k in range(n)) for image in images]
            assert len(set(perms)) == S.order, 'Embeddings of the splitting field induce equal permutations'
            logger.debug(f'Galois group of order {S.order} matched at {prec} bits')
            return perms
    raise InsufficientPrecision(f'Could not match the roots of {S} below {MAX_MATCH_PREC} bits')
