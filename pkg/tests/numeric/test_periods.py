import mpmath
import pytest
from flint import arb

from cmpl.core.errors import InputError, UnsupportedDiscriminant
from cmpl.core.model import StatusType
from cmpl.exact.relations import find_algdep
from cmpl.numeric.ball import BallComplex
from cmpl.numeric.harness import legendre_check
from cmpl.numeric.periods import SUPPORTED_DISCRIMINANTS, CMPoint, cm_point, cm_theta, curve_model, elliptic_periods


def _mp(x: arb):
    return mpmath.mpf(x.mid().str(60, radius=False))


@pytest.mark.parametrize('text,form', [
    ('2i', (1, 0, 4)),
    ('i', (1, 0, 1)),
    ('(1+i√7)/2', (1, -1, 2)),
    ('(1+sqrt(-7))/2', (1, -1, 2)),
])
def test_cm_point(text, form):
    point = cm_point(text)
    assert (point.a, point.b, point.c) == form


@pytest.mark.parametrize('text', ['3', '-2i', 'sqrt(2)', 'abc('])
def test_cm_point_rejects(text):
    with pytest.raises(InputError):
        cm_point(text)


def test_cm_point_form():
    assert CMPoint(1, -1, 2).discriminant == -7
    with pytest.raises(InputError):
        CMPoint(2, 0, 2)
    with pytest.raises(InputError):
        CMPoint(1, 0, -1)


def test_curve_models():
    assert curve_model(-4) == (-1, 0)
    assert curve_model(-3) == (0, 1)
    assert curve_model(-4, scale=2) == (-16, 0)
    with pytest.raises(UnsupportedDiscriminant):
        curve_model(-5)


@pytest.mark.parametrize('disc', sorted(SUPPORTED_DISCRIMINANTS))
def test_theta_class_does_not_depend_on_the_model(disc):
    ratio = cm_theta(disc, 128) / cm_theta(disc, 128, scale=2)
    candidate = find_algdep(ratio, 4, 10 ** 6)
    assert candidate is not None
    assert candidate.coefficients == [-2, 1]
    assert candidate.verified_at_bits >= 256


def test_lemniscatic_period():
    mpmath.mp.dps = 60
    # real period 2 * int_1^oo dx / sqrt(x^3 - x) of y^2 = x^3 - x, with x = 1 / t
    omega = 2 * mpmath.quad(lambda t: 1 / mpmath.sqrt(t * (1 - t ** 2)), [0, 1])
    assert abs(omega - mpmath.gamma(0.25) ** 2 / (2 * mpmath.sqrt(2 * mpmath.pi))) < mpmath.mpf(10) ** -40
    theta = cm_theta(-4, 256)
    assert abs(_mp(theta.real) - omega) < mpmath.mpf(10) ** -40
    assert abs(_mp(theta.imag)) < mpmath.mpf(10) ** -40


def test_equianharmonic_period():
    mpmath.mp.dps = 60
    # theta is a period of y^2 = x^3 + 1, hence a Q(sqrt(-3)) multiple of the real period
    omega = 2 * (mpmath.quad(lambda x: 1 / mpmath.sqrt(x ** 3 + 1), [-1, 1]) +
                 mpmath.quad(lambda t: 1 / mpmath.sqrt(t * (1 + t ** 3)), [0, 1]))
    theta = cm_theta(-3, 256)
    re, im = _mp(theta.real) / omega, _mp(theta.imag) / omega
    tol = mpmath.mpf(10) ** -30
    assert mpmath.pslq([re, 1], tol=tol, maxcoeff=100) is not None
    assert mpmath.pslq([im, mpmath.sqrt(3)], tol=tol, maxcoeff=100) is not None


def test_legendre_relation():
    tau = BallComplex.exact(complex(0.25, 1.5), 256)
    residual = elliptic_periods(tau, 256).legendre_residual()
    assert residual.log2_magnitude() < -240


def test_legendre_check_few_samples():
    outcome = legendre_check(5, 128, seed=3)
    assert outcome.status == StatusType.SUCCESS
    assert outcome.payload['failures'] == []
    assert outcome.payload['max_residual_log2'] <= -112


@pytest.mark.slow
@pytest.mark.parametrize('prec', [128, 256, 512])
def test_legendre_acceptance(prec):
    outcome = legendre_check(100, prec)
    assert outcome.status == StatusType.SUCCESS
