import numpy as np
import pytest

from levyweak import NotDefinableError, NumericalError
from levyweak.inversion import invert
from levyweak.levy_core import Stable, char_exponent, symmetric_pair, triplet
from levyweak.simaps import (DEFINABILITY_CLASSES, classify_definability, conjugate, map_exponent,
                             map_exponent_t_domain, phi_bar, psi_kernel)

from conftest import cauchy, compound_poisson, gamma_subordinator, half_at_two, stable_one_sided

Z1 = np.linspace(-4, 4, 9)[:, None]


def pure_drift(c=1.0):
    return triplet([c])


def test_strictly_one_stable_fixed_point():
    z = np.concatenate([-np.geomspace(0.01, 50, 8), np.geomspace(0.01, 50, 8)])[:, None]
    assert np.allclose(map_exponent(phi_bar(1, 0), cauchy(), z), -np.abs(z[:, 0]), atol=1e-8)


def test_uniform_profile_on_pure_drift():
    # f(s) = 1 - s on (0, 1): int (1 - s) ds = 1/2
    assert np.allclose(map_exponent(phi_bar(1, -1), pure_drift(), Z1), 0.5j * Z1[:, 0], atol=1e-12)


@pytest.mark.parametrize("k", [phi_bar(1, 0), phi_bar(1, 1), psi_kernel(1, 1), conjugate(phi_bar(2, 0.5))],
                         ids=lambda k: k.tag)
def test_point_mass_at_zero(k):
    assert np.all(map_exponent(k, triplet([0.0]), Z1) == 0)


def test_single_z_returns_scalar():
    val = map_exponent(phi_bar(1, 0), cauchy(), [2.0])
    assert isinstance(val, complex) and val == pytest.approx(-2.0, abs=1e-10)


def test_proper_integral_against_closed_form():
    # f(s) = 1 - s, nu = 2 delta_0.5 with drift 0: int_0^1 2(e^{iuz/2} - 1) du = 2((e^{iz/2} - 1)/(iz/2) - 1)
    z = np.array([-3.0, -0.7, 0.4, 1.9, 5.0])
    expected = 2 * ((np.exp(0.5j * z) - 1) / (0.5j * z) - 1)
    assert np.allclose(map_exponent(phi_bar(1, -1), compound_poisson(), z[:, None]), expected, atol=1e-8)


def test_proper_integral_against_fixed_step_quadrature():
    # h(t) = (1 - t) t^-1/2 on (0, 1); with t = x^2 the t-domain integral becomes
    # int_0^1 2 (1 - x^2) psi(x^2 z) dx, smooth enough for a composite Simpson rule
    k = phi_bar(2, -0.5)
    rho = gamma_subordinator()
    n = 4000
    x = np.linspace(0, 1, n + 1)
    w = np.ones(n + 1)
    w[1:-1:2], w[2:-1:2] = 4.0, 2.0
    for zz in ([0.5], [-1.3], [2.2]):
        vals = 2 * (1 - x * x) * char_exponent(rho, (x * x)[:, None] * zz)
        simpson = (vals * w).sum() / (3 * n)
        assert map_exponent(k, rho, zz) == pytest.approx(simpson, abs=1e-8)


@pytest.mark.parametrize("k,rho", [
    (phi_bar(1, 0), gamma_subordinator()),
    (psi_kernel(0, 1), compound_poisson()),
    (conjugate(phi_bar(1, 1)), gamma_subordinator()),
    (conjugate(psi_kernel(0.5, 1)), cauchy(0.3)),
    (phi_bar(2.5, -0.5), half_at_two()),
], ids=["phibar10-gamma", "psi01-cp", "phibar11star-gamma", "psistar-cauchy", "phibar25-half"])
def test_s_domain_matches_t_domain(k, rho):
    z = np.array([[-2.0], [0.3], [1.7]])
    assert np.allclose(map_exponent(k, rho, z), map_exponent_t_domain(k, rho, z), atol=1e-8)


def test_stable_image_closed_form():
    # h*(t) = t^-2.5 e^{-1/t}: int t h*(t) dt = Gamma(1/2), so psi -> sqrt(pi) psi for a 1-stable rho
    z = np.array([[-2.0], [0.3], [1.7]])
    expected = np.sqrt(np.pi) * (-np.abs(z[:, 0]) + 0.3j * z[:, 0])
    assert np.allclose(map_exponent(conjugate(psi_kernel(0.5, 1)), cauchy(0.3), z), expected, atol=1e-9)


@pytest.mark.parametrize("k,rho", [(phi_bar(1, 0), gamma_subordinator()), (psi_kernel(0, 1), cauchy(0.4))],
                         ids=["phibar10", "psi01"])
def test_map_output_is_an_exponent(k, rho):
    z = np.array([[0.6], [2.5]])
    assert map_exponent(k, rho, [0.0]) == 0
    assert np.allclose(map_exponent(k, rho, -z), np.conj(map_exponent(k, rho, z)), atol=1e-12)


@pytest.mark.parametrize("alpha", [0.5, 1.5])
@pytest.mark.parametrize("k", [phi_bar(1, 0), psi_kernel(0, 1)], ids=lambda k: k.tag)
def test_conjugacy_commutes_with_inversion(k, alpha):
    # symmetric alpha-stable rho: Lambda_h rho is the same stable law with its spherical part scaled by
    # M = int t^alpha h(t) dt, so (Lambda_h rho)' is known in closed form
    sphere = symmetric_pair(1, 0, 1.0)
    rho = triplet([0.0], Stable(alpha, sphere))
    z = np.array([[0.4], [1.0], [3.0]])
    M = (map_exponent(k, rho, z) / char_exponent(rho, z)).real
    assert np.ptp(M) < 1e-10
    image_inv = invert(triplet([0.0], Stable(alpha, sphere.scaled(M[0]))))
    lhs = map_exponent(conjugate(k), invert(rho), z)
    assert np.allclose(lhs, char_exponent(image_inv, z), atol=1e-6)


def test_unresolvable_oscillation_is_reported():
    # f(s) = 1/s near s = 0 turns an atom into e^{2iz/s}: the quadrature must fail loudly
    with pytest.raises(NumericalError):
        map_exponent(conjugate(phi_bar(1, 1)), half_at_two(), [1.0])


def test_not_definable_raises_with_partials():
    with pytest.raises(NotDefinableError) as exc:
        map_exponent(phi_bar(1, 1), cauchy(), [1.0])
    assert exc.value.partials is not None and len(exc.value.partials) > 0


# classification ----------------------------------------------------------------

@pytest.mark.parametrize("k,rho,label", [
    (phi_bar(1, 0), cauchy(), "absolutely-definable"),
    (phi_bar(1, 0), pure_drift(), "absolutely-definable"),
    (phi_bar(1, 0), triplet([0.0]), "absolutely-definable"),
    (phi_bar(1, 0), stable_one_sided(1.0), "absolutely-definable"),
    (phi_bar(1, -1), cauchy(), "absolutely-definable"),
    (phi_bar(1, 1), pure_drift(), "essentially-definable-only"),
    (psi_kernel(1, 1), pure_drift(), "essentially-definable-only"),
    (phi_bar(1, 1), cauchy(), "not-definable"),
    (conjugate(phi_bar(1, 1)), gamma_subordinator(), "absolutely-definable"),
], ids=["phibar10-cauchy", "phibar10-drift", "phibar10-zero", "phibar10-onesided1stable", "phibar1m1-cauchy",
        "phibar11-drift", "psi11-drift", "phibar11-cauchy", "phibar11star-gamma"])
def test_classification(k, rho, label):
    rep = classify_definability(k, rho)
    assert rep.label in DEFINABILITY_CLASSES
    assert rep.label == label, rep.reason
    assert rep.to_dict()["class"] == label


def test_absolute_classification_agrees_with_map():
    rep = classify_definability(phi_bar(1, 0), gamma_subordinator())
    assert rep.label == "absolutely-definable"
    map_exponent(phi_bar(1, 0), gamma_subordinator(), Z1)  # must not raise
