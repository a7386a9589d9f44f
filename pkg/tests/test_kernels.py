import math

import numpy as np
import pytest
from scipy import integrate

from levyweak import DomainError
from levyweak.simaps import (check_condition_c, conjugate, custom_kernel, kernel_integrals, kernel_profile,
                             lambda_kernel, phi_bar, psi_kernel)

NAMED = [phi_bar(1, 0), phi_bar(1, 1), phi_bar(1, -1), phi_bar(2.5, 0.5), phi_bar(0.5, -0.5), lambda_kernel(1, 0),
         lambda_kernel(2, 1), lambda_kernel(1.5, -0.5), psi_kernel(1, 1), psi_kernel(0, 2), psi_kernel(-0.5, 1)]


def _interior(prof, n=25):
    """t grid well inside (a, b) where g is neither saturated nor underflowed."""
    k = prof.kernel
    if k.b == math.inf:
        return np.geomspace(1.01 * k.a if k.a else 0.3, max(10 * k.a, 8.0), n)
    return np.linspace(k.a + 1e-3 * (k.b - k.a), k.b - 1e-2 * (k.b - k.a), n)


# conjugation -------------------------------------------------------------------

def test_conjugate_inverse_power():
    h = custom_kernel(lambda u: 1.0 / u, 0.0, 1.0)
    hs = conjugate(h)
    assert (hs.a, hs.b) == (1.0, math.inf)
    u = np.geomspace(1.01, 1e3, 30)
    assert np.allclose(hs(u), u ** -3.0, rtol=1e-15)


def test_conjugate_phi_bar_1_1():
    hs = conjugate(phi_bar(1, 1))
    u = np.geomspace(1.01, 1e3, 30)
    assert (hs.a, hs.b) == (1.0, math.inf)
    assert np.allclose(hs(u), u ** -2.0, rtol=1e-14)


@pytest.mark.parametrize("k", NAMED, ids=lambda k: k.tag)
def test_double_conjugate_is_identity(k):
    kk = conjugate(conjugate(k))
    u = np.geomspace(1e-3, 50, 200)
    assert (kk.a, kk.b) == (k.a, k.b)
    assert np.array_equal(kk(u), k(u))


@pytest.mark.parametrize("k", NAMED, ids=lambda k: k.tag)
def test_conjugate_satisfies_condition_c(k):
    i0, i2 = check_condition_c(conjugate(k))
    assert min(i0, i2) < math.inf


def test_condition_c_rejects_bad_kernel():
    with pytest.raises(DomainError):
        custom_kernel(lambda u: u ** -3.0, 0.0, 1.0)


def test_kernel_integrals_against_quadrature():
    k = phi_bar(2.5, 0.5)  # int h diverges at 0, int h u^2 finite
    i0, i2 = kernel_integrals(k)
    assert i0 == math.inf
    assert i2 == pytest.approx(integrate.quad(lambda u: float(k(u)) * u * u, 0, 1)[0], rel=1e-9)


# profiles ------------------------------------------------------------------------

def test_profile_inverse_power():
    prof = kernel_profile(phi_bar(1, 0))
    t = np.geomspace(1e-6, 0.99, 20)
    assert prof.c == math.inf
    assert np.allclose(prof.g(t), -np.log(t), rtol=1e-14)
    s = np.linspace(0, 30, 20)
    assert np.allclose(prof.f(s), np.exp(-s), rtol=1e-14)


def test_profile_inverse_cube():
    prof = kernel_profile(custom_kernel(lambda u: u ** -3.0, 1.0, math.inf))
    t = np.geomspace(1.01, 100, 15)
    assert prof.c == pytest.approx(0.5, rel=1e-10)
    assert np.allclose(prof.g(t), 1 / (2 * t * t), rtol=1e-10)
    s = np.linspace(0.01, 0.49, 15)
    assert np.allclose(prof.f(s), (2 * s) ** -0.5, rtol=1e-10)
    conj = kernel_profile(conjugate(phi_bar(1, 0)))
    assert conj.closed_form and conj.c == pytest.approx(0.5)
    assert np.allclose(conj.f(s), (2 * s) ** -0.5, rtol=1e-14)


def test_profile_constant_kernel():
    prof = kernel_profile(phi_bar(1, -1))
    t = np.linspace(0.01, 0.99, 11)
    assert prof.c == pytest.approx(1.0)
    assert np.allclose(prof.g(t), 1 - t, atol=1e-15)
    assert np.allclose(prof.f(1 - t), t, atol=1e-15)


@pytest.mark.parametrize("k", NAMED + [conjugate(k) for k in NAMED], ids=lambda k: k.tag)
def test_f_inverts_g(k):
    prof = kernel_profile(k)
    t = _interior(prof)
    g = prof.g(t)
    assert np.all(np.diff(g) < 0)
    assert np.allclose(prof.f(g), t, rtol=1e-10, atol=0)


@pytest.mark.parametrize("k", NAMED, ids=lambda k: k.tag)
def test_finite_c_iff_negative_alpha(k):
    alpha = k.params[1] if k.family in ("phi_bar", "lambda") else k.params[0]
    assert (kernel_profile(k).c < math.inf) == (alpha < 0)


@pytest.mark.parametrize("k", [phi_bar(2.5, 0.5), lambda_kernel(2, 1), psi_kernel(0, 2), conjugate(psi_kernel(1, 1)),
                               conjugate(lambda_kernel(1.5, -0.5))], ids=lambda k: k.tag)
def test_closed_g_against_quadrature(k):
    prof = kernel_profile(k)
    for t in _interior(prof, 6):
        ref = integrate.quad(lambda u: float(k(u)), t, k.b, limit=400, epsabs=1e-13, epsrel=1e-11)[0]
        assert float(prof.g(t)) == pytest.approx(ref, rel=1e-8)


def test_numeric_profile_matches_closed_form():
    closed, numeric = kernel_profile(phi_bar(1, 0)), kernel_profile(phi_bar(1, 0), method="numeric")
    assert not numeric.closed_form
    t = np.geomspace(1e-4, 0.95, 12)
    assert np.allclose(numeric.g(t), closed.g(t), rtol=1e-10, atol=1e-12)
    s = np.linspace(0.05, 8.0, 12)
    assert np.allclose(numeric.f(s), closed.f(s), rtol=1e-10)


def test_endpoint_limits_of_f():
    prof = kernel_profile(phi_bar(1, -1))
    assert float(prof.f(0.0)) == 1.0 and float(prof.f(1.0)) == 0.0
    prof = kernel_profile(psi_kernel(1, 1))
    assert float(prof.f(1e-9)) > 1.0
    assert float(prof.f(1e6)) < 1e-5


def test_regime_labels():
    assert kernel_profile(phi_bar(1, 0)).regime == "integral-at-c"
    assert kernel_profile(phi_bar(1, -1)).regime == "integral-at-c"
    assert kernel_profile(conjugate(phi_bar(1, 1.5))).regime == "integral-at-0"


def test_family_parameter_validation():
    with pytest.raises(DomainError):
        phi_bar(0, 1)
    with pytest.raises(DomainError):
        lambda_kernel(1, 2)
    with pytest.raises(DomainError):
        psi_kernel(1, -1)
