from __future__ import annotations

from cmpl.core.model import StatusType


class CmplError(Exception):
    """Base class of all errors raised by cmpl. ``status`` is the exit status reported for the error."""
    status = StatusType.INPUT_ERROR


class InputError(CmplError, ValueError):
    """Malformed user input (polynomial strings, CLI arguments, JSON files)."""


class ReduciblePolynomial(InputError):
    pass


class RootIndexOutOfRange(InputError, IndexError):
    pass


class DependentRows(InputError):
    pass


class SymbolMismatch(InputError):
    pass


class NotBiQ(InputError):
    pass


class NotCM(InputError):
    pass


class OddDegree(NotCM):
    pass


class IndexOutOfRange(InputError, IndexError):
    pass


class NotWeyl(InputError):
    pass


class EllipticPointDegenerate(InputError):
    pass


class UnsupportedDiscriminant(InputError):
    pass


class InsufficientPrecision(CmplError):
    status = StatusType.INCONCLUSIVE


class PrecisionExhausted(CmplError):
    status = StatusType.INCONCLUSIVE


class DegreeCapExceeded(CmplError):
    status = StatusType.INCONCLUSIVE


class CacheIoError(CmplError, OSError):
    status = StatusType.FAILED
