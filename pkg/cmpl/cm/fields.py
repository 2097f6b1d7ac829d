from __future__ import annotations

import itertools
import logging
from typing import List, Sequence, Tuple, Union

from cmpl.core.errors import InputError, NotCM, OddDegree
from cmpl.exact import polynomials
from cmpl.exact.fields import NumberField, AlgebraicNumber

ROOT_PREC = 128

logger = logging.getLogger('CM')


class CMField:

    def __init__(self, field: NumberField, conjugation: AlgebraicNumber, permutation: Sequence[int]):
        """
        CM field E of degree 2g.
        :param field: the number field
        :param conjugation: image of the generator under complex conjugation, an automorphism of E
        :param permutation: complex conjugation on the embedding indices, sigma_k composed with c = sigma_perm[k]
        """
        self.field = field
        self.conjugation = conjugation
        self.permutation: Tuple[int, ...] = tuple(permutation)

    @property
    def g(self) -> int:
        return self.field.degree // 2

    @property
    def min_poly(self) -> List[int]:
        return self.field.min_poly

    def conjugate(self, a: AlgebraicNumber) -> AlgebraicNumber:
        return a.substitute(self.conjugation)

    def pairs(self) -> List[Tuple[int, int]]:
        """Conjugate pairs of embeddings (k, c(k)) with k < c(k), sorted"""
        return sorted((k, c) for k, c in enumerate(self.permutation) if k < c)

    def __eq__(self, other):
        if isinstance(other, CMField):
            return self.field == other.field
        return False

    def __hash__(self):
        return hash(self.field)

    def __repr__(self):
        return f'CMField({polynomials.poly_str(self.min_poly)}, g={self.g})'

    def as_dict(self):
        return {
            'min_poly': self.min_poly,
            'g': self.g,
            'conjugation': list(self.permutation)
        }


def is_cm_field(f: Union[str, Sequence[int]]) -> CMField:
    """
    Recognize a CM field by the unique automorphism inducing complex conjugation under every embedding. The
    automorphism is an exact involution, and its action on the separated roots is certified with balls.
    """
    f = polynomials.parse_polynomial(f)
    n = polynomials.degree(f)
    if n < 1:
        raise InputError(f'{polynomials.poly_str(f)} defines no number field')
    if n % 2 == 1:
        raise OddDegree(f'{polynomials.poly_str(f)} has odd degree {n}')
    K = NumberField(f)
    if not K.is_totally_imaginary():
        raise NotCM(f'{K} has a real embedding')

    roots = K.embedding_values(ROOT_PREC)
    permutation = []
    for r in roots:
        conj = r.conjugate()
        matches = [k for k, s in enumerate(roots) if s.overlaps(conj)]
        if len(matches) != 1:
            raise NotCM(f'Complex conjugate of a root of {K} is not a root')
        permutation.append(matches[0])

    for rho in K.automorphisms():
        if rho == K.gen or rho.substitute(rho) != K.gen:
            continue
        if all(rho.value(ROOT_PREC, k).overlaps(roots[permutation[k]]) and
               not any(rho.value(ROOT_PREC, k).overlaps(roots[j]) for j in range(n) if j != permutation[k])
               for k in range(n)):
            logger.debug(f'Complex conjugation of {K} is a -> {rho}')
            return CMField(K, rho, permutation)
    raise NotCM(f'{K} has no automorphism inducing complex conjugation')


class CMType:

    def __init__(self, parent: CMField, phi: Sequence[int]):
        """
        CM type, one embedding out of every conjugate pair.
        :param phi: 0-based embedding indices
        """
        phi = tuple(sorted(int(k) for k in phi))
        if len(set(phi)) != len(phi) or len(phi) != parent.g:
            raise InputError(f'A CM type of {parent} needs {parent.g} distinct embeddings, got {list(phi)}')
        if any(not 0 <= k < parent.field.degree for k in phi):
            raise InputError(f'Embedding index out of range in {list(phi)}')
        if any(parent.permutation[k] in phi for k in phi):
            raise InputError(f'{list(phi)} contains a conjugate pair of embeddings')
        self.parent = parent
        self.phi: Tuple[int, ...] = phi

    @property
    def g(self) -> int:
        return self.parent.g

    def conjugate(self) -> CMType:
        return CMType(self.parent, [self.parent.permutation[k] for k in self.phi])

    def indicator(self) -> List[int]:
        """mu_Phi as 0/1 vector on the embeddings"""
        return [1 if k in self.phi else 0 for k in range(self.parent.field.degree)]

    def __eq__(self, other):
        if isinstance(other, CMType):
            return self.parent == other.parent and self.phi == other.phi
        return False

    def __hash__(self):
        return hash((self.parent, self.phi))

    def __repr__(self):
        return f'CMType({polynomials.poly_str(self.parent.min_poly)}, phi={list(self.phi)})'

    def as_dict(self):
        return {
            'min_poly': self.parent.min_poly,
            'phi': list(self.phi)
        }

    @staticmethod
    def from_dict(raw: dict) -> CMType:
        try:
            return CMType(is_cm_field(raw['min_poly']), raw['phi'])
        except (KeyError, TypeError) as ex:
            raise InputError(f'Invalid CM type {raw}: {ex}')


def cm_types(E: CMField) -> List[CMType]:
    """All 2^g CM types; the first one picks the smaller index of every conjugate pair"""
    return [CMType(E, choice) for choice in itertools.product(*E.pairs())]


def maximal_real_subfield(E: CMField) -> Tuple[NumberField, AlgebraicNumber]:
    """
    Fixed field F of complex conjugation, degree g.
    :return: F and the image of its generator in E
    """
    a = E.field.gen
    ca = E.conjugation
    candidates = [a ** j + ca ** j for j in range(1, 2 * E.g + 1)]
    candidates += [a * ca + k * (a + ca) for k in range(1, 2 * E.g + 1)]
    for beta in candidates:
        f = beta.min_poly()
        if polynomials.degree(f) == E.g and polynomials.is_monic(f):
            F = NumberField(f, check=False)
            roots = F.embedding_values(ROOT_PREC)
            value = beta.value(ROOT_PREC, 0)
            matches = [k for k, r in enumerate(roots) if r.overlaps(value)]
            if len(matches) == 1:
                return NumberField(f, root_index=matches[0], check=False), beta
    raise AssertionError(f'No generator of the maximal real subfield of {E} found')
