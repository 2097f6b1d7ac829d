from __future__ import annotations

from typing import List, Sequence, Tuple, Union

from cmpl.core.errors import InputError

SUPERSCRIPTS = str.maketrans('0123456789-', '⁰¹²³⁴⁵⁶⁷⁸⁹⁻')


class PeriodMonomial:
    """
    Class of (2 pi i)^L * t_1^theta_1 * ... * t_g^theta_g in C*/Qbar*. Algebraic factors are identified, so only
    exponents are stored. pi and 2 pi i differ by the algebraic 2i and share the exponent L.
    """

    def __init__(self, L: int = 0, theta: Sequence[int] = ()):
        theta = [int(t) for t in theta]
        while len(theta) > 0 and theta[-1] == 0:
            theta.pop()
        self.L = int(L)
        self.theta: Tuple[int, ...] = tuple(theta)

    @staticmethod
    def one() -> PeriodMonomial:
        return PeriodMonomial()

    @staticmethod
    def two_pi_i() -> PeriodMonomial:
        return PeriodMonomial(1)

    @staticmethod
    def symbol(j: int) -> PeriodMonomial:
        """The period t_j, 1-based"""
        if j < 1:
            raise InputError(f'Period symbols are numbered from 1, got {j}')
        return PeriodMonomial(0, [0] * (j - 1) + [1])

    @property
    def n_symbols(self) -> int:
        return len(self.theta)

    def exponent(self, j: int) -> int:
        return self.theta[j - 1] if j <= len(self.theta) else 0

    def vector(self, g: int) -> List[int]:
        """Exponent vector (L; t_1 ... t_g)"""
        if len(self.theta) > g:
            raise InputError(f'{self} uses more than {g} period symbols')
        return [self.L] + list(self.theta) + [0] * (g - len(self.theta))

    @staticmethod
    def from_vector(v: Sequence[int]) -> PeriodMonomial:
        return PeriodMonomial(v[0], v[1:])

    def is_trivial(self) -> bool:
        return self.L == 0 and len(self.theta) == 0

    def __mul__(self, other: PeriodMonomial) -> PeriodMonomial:
        n = max(len(self.theta), len(other.theta))
        return PeriodMonomial(self.L + other.L, [self.exponent(j) + other.exponent(j) for j in range(1, n + 1)])

    def __pow__(self, k: int) -> PeriodMonomial:
        return PeriodMonomial(self.L * k, [t * k for t in self.theta])

    def inverse(self) -> PeriodMonomial:
        return self ** -1

    def __truediv__(self, other: PeriodMonomial) -> PeriodMonomial:
        return self * other.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, PeriodMonomial):
            return self.L == other.L and self.theta == other.theta
        return False

    def __hash__(self):
        return hash((self.L, self.theta))

    def __lt__(self, other: PeriodMonomial) -> bool:
        return (self.L, self.theta) < (other.L, other.theta)

    def as_dict(self):
        return {
            'L': self.L,
            'theta': list(self.theta)
        }

    @staticmethod
    def from_dict(raw: Union[dict, str]) -> PeriodMonomial:
        if isinstance(raw, str):
            return parse_monomial(raw)
        try:
            return PeriodMonomial(int(raw.get('L', 0)), [int(t) for t in raw.get('theta', [])])
        except (AttributeError, TypeError, ValueError) as ex:
            raise InputError(f'Invalid period label {raw}: {ex}')

    def symbolic(self) -> str:
        """Formal notation in the generators, e.g. t1*t2*L^-1"""
        factors = [f't{j}' if e == 1 else f't{j}^{e}' for j, e in enumerate(self.theta, start=1) if e != 0]
        if self.L != 0:
            factors.append('L' if self.L == 1 else f'L^{self.L}')
        return '*'.join(factors) if factors else '1'

    def __str__(self):
        """Period notation with theta_j and pi, e.g. θ1θ2/π"""
        num, den = [], []
        for j, e in enumerate(self.theta, start=1):
            if e != 0:
                (num if e > 0 else den).append(_power(f'θ{j}', abs(e)))
        if self.L != 0:
            (num if self.L > 0 else den).append(_power('π', abs(self.L)))
        text = ''.join(num) if num else '1'
        if den:
            text += '/' + ''.join(den)
        return text

    def __repr__(self):
        return f'PeriodMonomial({self.symbolic()})'


def _power(base: str, e: int) -> str:
    return base if e == 1 else base + str(e).translate(SUPERSCRIPTS)


def parse_monomial(text: str) -> PeriodMonomial:
    """Parse the formal notation produced by PeriodMonomial.symbolic"""
    text = text.replace(' ', '')
    if text in ('', '1'):
        return PeriodMonomial()
    L = 0
    theta: List[int] = []
    for factor in text.split('*'):
        base, _, exp = factor.partition('^')
        try:
            e = int(exp) if exp else 1
        except ValueError:
            raise InputError(f'Invalid exponent in {factor}')
        if base == 'L':
            L += e
        elif base.startswith('t') and base[1:].isdigit() and int(base[1:]) >= 1:
            j = int(base[1:])
            theta += [0] * (j - len(theta))
            theta[j - 1] += e
        else:
            raise InputError(f'Unknown period symbol {base} in {text}')
    return PeriodMonomial(L, theta)
