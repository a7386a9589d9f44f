import math

import numpy as np
import pytest
from scipy import integrate

from levyweak import DomainError
from levyweak.levy_core import (Atoms, PolarProduct, PowerExp, RadialDecomposition, ScalarDensity, SphereAtoms,
                                SphereUniform, Stable, char_exponent, convolution_power, dilate, drift_of,
                                gamma_radial, mean_of, point_mass, sharp_location, spherical_decomposition,
                                symmetric_density1d, symmetric_pair, triplet, triplet_allclose)
from levyweak.levy_core.specfile import triplet_from_dict, triplet_to_dict

from conftest import (cauchy, compound_poisson, gamma_subordinator, half_at_two, mixture_1d, planar_polar,
                      planar_uniform_stable, tempered_symmetric, two_sided_25)


# char_exponent ------------------------------------------------------------

def test_exponent_at_origin_is_zero(case):
    assert char_exponent(case.build(), [0.0]) == 0


def test_gaussian_only():
    mu = triplet([0.0], A=[[4.0]])
    assert char_exponent(mu, [1.0]) == pytest.approx(-2.0, abs=1e-14)


def test_compound_poisson_hand_value():
    # 2(e^{i pi/2} - 1 - i pi/2) + i pi = -2 + 2i
    assert char_exponent(compound_poisson(), [math.pi]) == pytest.approx(-2 + 2j, abs=1e-12)


@pytest.mark.parametrize("z", [-3.0, -0.4, 0.01, 1.0, 7.5, 120.0])
def test_symmetric_cauchy_exponent(z):
    assert char_exponent(cauchy(), [z]) == pytest.approx(-abs(z), abs=1e-10)


@pytest.mark.parametrize("build", [cauchy, compound_poisson, gamma_subordinator, two_sided_25, tempered_symmetric,
                                   mixture_1d, planar_polar, planar_uniform_stable])
def test_conjugate_symmetry(build):
    mu = build()
    rng = np.random.default_rng(0)
    z = rng.normal(size=(8, mu.dim)) * 3
    assert np.allclose(char_exponent(mu, -z), np.conj(char_exponent(mu, z)), atol=1e-10)


def test_gamma_subordinator_exponent_against_closed_form():
    # drift 0 and nu(dr) = r^-1 e^-r dr give psi(z) = -log(1 - iz)
    z = np.array([0.3, 1.0, 4.0, -2.5])
    assert np.allclose(char_exponent(gamma_subordinator(), z[:, None]), -np.log(1 - 1j * z), atol=1e-10)


def test_finite_measure_exponent_uses_drift():
    mu = triplet([0.2, -0.3], Atoms([[0.4, 0.1], [-2.0, 1.0], [0.0, 0.7]], [1.5, 0.3, 2.0]))
    g0 = drift_of(mu).value
    z = np.array([[0.7, -1.1], [2.0, 0.5]])
    direct = (np.exp(1j * z @ mu.nu.points.T) - 1) @ mu.nu.masses + 1j * z @ g0
    assert np.allclose(char_exponent(mu, z), direct, atol=1e-12)


# drift / mean / sharp location ---------------------------------------------

def test_location_examples():
    cp, h2, c = compound_poisson(), half_at_two(), cauchy()
    assert drift_of(cp).value == pytest.approx([0.0])
    assert mean_of(cp).value == pytest.approx([1.0])
    assert sharp_location(cp) == pytest.approx([1.0])
    assert mean_of(h2).value == pytest.approx([0.0])
    assert sharp_location(h2) == pytest.approx([-0.5])
    assert drift_of(gamma_subordinator()).value == pytest.approx([0.0], abs=1e-13)
    assert not drift_of(c).defined and drift_of(c).value is None
    assert not mean_of(c).defined
    assert sharp_location(cauchy(0.7)) == pytest.approx([0.7])


def test_locations_against_brute_force_quadrature():
    mu = triplet([0.1], ScalarDensity(PowerExp(1.0, 0.5, 2.0, 1.0), PowerExp(0.3, 0.2, 1.0, 1.0)))

    def dens(x):
        r = abs(x)
        return r ** -1.5 * math.exp(-2 * r) if x > 0 else 0.3 * r ** -1.2 * math.exp(-r)

    def q(f, a, b):
        return integrate.quad(f, a, b, limit=200, epsabs=1e-13, epsrel=1e-12)[0]

    inner = q(lambda x: x * dens(x), 0, 1) + q(lambda x: x * dens(x), -1, 0)
    outer = q(lambda x: x * dens(x), 1, np.inf) + q(lambda x: x * dens(x), -np.inf, -1)
    sharp = q(dens, 1, np.inf) - q(dens, -np.inf, -1)
    assert drift_of(mu).value[0] == pytest.approx(0.1 - inner, abs=1e-8)
    assert mean_of(mu).value[0] == pytest.approx(0.1 + outer, abs=1e-8)
    assert sharp_location(mu)[0] == pytest.approx(0.1 + sharp, abs=1e-8)


# dilation / convolution power --------------------------------------------

def test_dilate_identity_and_example():
    cp = compound_poisson()
    assert triplet_allclose(dilate(cp, 1.0), cp, 1e-14)
    d = dilate(cp, 0.5)
    assert np.allclose(d.nu.points, [[0.25]]) and np.allclose(d.nu.masses, [2.0])
    assert d.gamma == pytest.approx([0.5])
    with pytest.raises(DomainError):
        dilate(cp, 0.0)


@pytest.mark.parametrize("build", [cauchy, compound_poisson, half_at_two, gamma_subordinator, planar_polar])
@pytest.mark.parametrize("b", [0.3, 3.0])
def test_dilation_exponent_identity(build, b):
    mu = build()
    z = np.random.default_rng(1).normal(size=(6, mu.dim))
    assert np.allclose(char_exponent(dilate(mu, b), z), char_exponent(mu, b * z), atol=1e-9)


def test_dilate_cauchy_by_three():
    z = np.linspace(-2, 2, 9)[:, None]
    assert np.allclose(char_exponent(dilate(cauchy(), 3.0), z), -3 * np.abs(z[:, 0]), atol=1e-10)


@pytest.mark.parametrize("build", [compound_poisson, half_at_two, gamma_subordinator, cauchy])
def test_dilation_round_trip(build):
    mu = build()
    assert triplet_allclose(dilate(dilate(mu, 2.7), 1 / 2.7), mu, 1e-10)


def test_convolution_power():
    cp = compound_poisson()
    assert triplet_allclose(convolution_power(cp, 1.0), cp, 1e-15)
    assert convolution_power(cp, 2.0).nu.masses == pytest.approx([4.0])
    mu = planar_polar()
    z = np.random.default_rng(2).normal(size=(5, 2))
    assert np.allclose(char_exponent(convolution_power(mu, 3.5), z), 3.5 * char_exponent(mu, z), atol=1e-10)
    with pytest.raises(DomainError):
        convolution_power(cp, -1.0)


# spherical decomposition ------------------------------------------------

def test_spherical_decomposition_single_atom():
    sd = spherical_decomposition(Atoms([[0.5]], [2.0]))
    assert sd.radial().mass() == pytest.approx(2.0)
    lam = sd.sphere_at(0.5)
    assert lam.first_moment() == pytest.approx([1.0])
    assert lam.mass == pytest.approx(1.0)


def test_spherical_decomposition_cauchy():
    sd = spherical_decomposition(cauchy().nu)
    # nubar(dr) = 2/pi r^-2 dr, lambda_r = (delta_+1 + delta_-1)/2
    assert sd.radial().mass(1.0, 2.0) == pytest.approx(2 / math.pi * 0.5, abs=1e-12)
    lam = sd.sphere_at(1.3)
    assert lam.mass == pytest.approx(1.0) and lam.first_moment() == pytest.approx([0.0])


def test_spherical_decomposition_reproduces_cones():
    nu = planar_polar().nu
    sd = spherical_decomposition(nu)
    upper = lambda xi: xi[:, 1] > 0  # noqa: E731
    assert sd.measure_of_cone(0.5, 3.0, upper) == pytest.approx(nu.measure_of_cone(0.5, 3.0, upper), rel=1e-9)


# validation and distribution files -----------------------------------------------

def test_triplet_validation():
    with pytest.raises(DomainError):
        triplet([0.0], A=[[-1.0]])
    with pytest.raises(DomainError):
        triplet([0.0, 0.0], A=[[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(DomainError):
        Atoms([[0.0]], [1.0])
    with pytest.raises(DomainError):
        SphereAtoms(np.array([[0.5]]), np.ones(1))
    with pytest.raises(DomainError):
        triplet([0.0], ScalarDensity(PowerExp(1.0, 2.5), None))  # not Levy-integrable at 0


@pytest.mark.parametrize("build", [cauchy, compound_poisson, gamma_subordinator, two_sided_25, mixture_1d,
                                   planar_polar, planar_uniform_stable])
def test_distribution_file_round_trip(build):
    mu = build()
    assert triplet_allclose(triplet_from_dict(triplet_to_dict(mu)), mu, 1e-15)


def test_distribution_file_rejects_unknown_kind():
    with pytest.raises(DomainError):
        triplet_from_dict({"dim": 1, "levy": {"kind": "mystery"}})


def test_variants_construct():
    PolarProduct(SphereUniform(2, 1.0), gamma_radial())
    RadialDecomposition(np.array([[1.0, 0.0]]), np.ones(1), (PowerExp(1.0, 0.5),))
    Stable(1.2, point_mass([0.0, 0.0, 1.0]))
    symmetric_density1d(PowerExp(1.0, 0.5))
    symmetric_pair(3, 2, 1.0)
