import numpy as np
import pytest

from levyweak import DomainError
from levyweak.inversion import invert
from levyweak.levy_core import (Atoms, CustomDensity, PowerExp, RadialMixture, ScalarDensity, SphereAtoms, Stable,
                                char_exponent, symmetric_density1d, symmetric_pair, triplet)
from levyweak.simaps import (LInftyLaw, LInftyRepr, completely_monotone_check, conjugate, exp_mixture, exp_power,
                             k_sum, lambda_kernel, linfty_repr_from_dict, linfty_synthesize, monotone_order_check,
                             phi_bar, power, psi_kernel, r_infinity_membership, range_membership, structural_check,
                             truncated_power)
from levyweak.weak_moments import weak_mean

from conftest import cauchy, gamma_subordinator

U = np.linspace(0.01, 4.0, 200)


def grid(fn, u=U):
    return u, fn(u)


# monotone of order p --------------------------------------------------------------

def test_exponential_is_monotone_of_orders_one_and_two():
    for p in (1, 2):
        assert monotone_order_check(grid(lambda u: np.exp(-u)), p).verdict == "holds"
        assert monotone_order_check(exp_power(1, 0, 1, 1), p).verdict == "holds"


def test_increasing_fails():
    res = monotone_order_check(grid(lambda u: u, np.linspace(0.01, 0.99, 50)), 1)
    assert res.verdict == "fails" and res.certified


def test_truncated_linear_is_order_two():
    k = truncated_power(1.0)
    assert monotone_order_check(k, 2).verdict == "holds"
    assert monotone_order_check(k, 2.5).verdict == "fails"
    assert monotone_order_check(grid(lambda u: np.clip(1 - u, 0, None)), 2).verdict == "holds"


def test_grid_verdict_is_not_a_certificate():
    res = monotone_order_check(grid(lambda u: np.exp(-u)), 2)
    assert res.verdict == "holds" and not res.certified


def test_concave_fails_order_two_only():
    s = grid(lambda u: 1 - u * u / 20)
    assert monotone_order_check(s, 1).verdict == "holds"
    assert monotone_order_check(s, 2).verdict == "fails"


def test_grid_input_validation():
    with pytest.raises(DomainError):
        monotone_order_check(np.ones(5), 1)
    with pytest.raises(DomainError):
        completely_monotone_check((np.array([0.1, 0.1, 0.2]), np.ones(3)))


# complete monotonicity ----------------------------------------------------------

def test_completely_monotone_examples():
    assert completely_monotone_check(exp_power(1, 0, 1, 1)).verdict == "holds"
    assert completely_monotone_check(power(1, 0.5)).verdict == "holds"
    assert completely_monotone_check(exp_mixture([1, 2], [0.5, 3])).verdict == "holds"
    assert completely_monotone_check(truncated_power(1.0)).verdict == "fails"
    res = completely_monotone_check(grid(lambda u: np.clip(1 - u, 0, None), np.linspace(0.05, 2.0, 60)))
    assert res.verdict == "fails" and "order 3" in res.reason
    assert completely_monotone_check(grid(lambda u: np.exp(-u))).verdict == "holds"
    assert completely_monotone_check(grid(lambda u: u ** -0.5)).verdict == "holds"


def test_gaussian_bump_is_not_cm():
    assert completely_monotone_check(exp_power(1, 0, 1, 2)).verdict == "fails"
    assert completely_monotone_check(grid(lambda u: np.exp(-u * u))).verdict == "fails"


def test_k_sum_keeps_shared_properties():
    assert completely_monotone_check(k_sum(power(1, 0.5), exp_mixture([1], [2]))).verdict == "holds"
    assert completely_monotone_check(k_sum(truncated_power(1.0), power(1, 0.5))).verdict != "holds"


# range membership ------------------------------------------------------------------

E_SHAPE = PowerExp(1.0, 1.0, 1.0, 1.0)  # u^-2 e^-u


def test_range_symmetric_cm_r0():
    mu = triplet([0.0], symmetric_density1d(E_SHAPE))
    v = range_membership(mu, psi_kernel(1, 1), star=False, tier="R0")
    assert v.verdict == "holds", v.reasons


def test_range_inverted_shape_starred_r0():
    mu = invert(triplet([0.0], symmetric_density1d(E_SHAPE)))  # density u^-2 e^{-1/u}
    u = np.array([0.3, 1.0, 2.0])
    assert np.allclose(mu.nu.positive.density(u), u ** -2 * np.exp(-1 / u))
    v = range_membership(mu, psi_kernel(1, 1), star=True, tier="R0")
    assert v.verdict == "holds", v.reasons


def test_range_one_sided_fails_on_weak_mean():
    mu = triplet([0.5], ScalarDensity(E_SHAPE, None))
    assert weak_mean(mu).value[0] != pytest.approx(0.0)
    v = range_membership(mu, psi_kernel(1, 1), star=False, tier="R")
    assert v.verdict == "fails"
    assert v.structural == "holds" and v.moment_condition == "fails"
    assert range_membership(mu, psi_kernel(1, 1), tier="Re").verdict == "holds"


def test_range_one_sided_with_zero_weak_mean_holds():
    nu = ScalarDensity(E_SHAPE, None)
    m = nu.vector_moment(1.0, 1.0, np.inf)
    mu = triplet(-m, nu)
    assert range_membership(mu, psi_kernel(1, 1), tier="R").verdict == "holds"
    # not absolute? a one-sided finite-mean tail is absolute, so R0 holds too
    assert range_membership(mu, psi_kernel(1, 1), tier="R0").verdict == "holds"


def test_range_composed_power():
    # density u^-2 e^{-u^2}: Psi(1, 2) sees k(v) = e^{-v}, Psi(1, 1) sees e^{-v^2}
    mu = triplet([0.0], symmetric_density1d(PowerExp(1.0, 1.0, 1.0, 2.0)))
    assert range_membership(mu, psi_kernel(1, 2), tier="Re").verdict == "holds"
    assert range_membership(mu, psi_kernel(1, 1), tier="Re").verdict == "fails"


def test_range_phi_bar_orders():
    mu = triplet([0.0], symmetric_density1d(E_SHAPE))
    assert range_membership(mu, phi_bar(2, 1), tier="R0").verdict == "holds"
    step = triplet([0.0], symmetric_density1d(PowerExp(1.0, 1.0, hi=1.0)))  # k = 1 on (0, 1)
    assert range_membership(step, phi_bar(1, 1), tier="Re").verdict == "holds"
    assert range_membership(step, phi_bar(2, 1), tier="Re").verdict == "fails"


def test_range_stable_fails_since_k_does_not_vanish():
    v = range_membership(cauchy(), phi_bar(1, 1), tier="Re")
    assert v.verdict == "fails"


def test_range_numeric_density_is_never_certified():
    dens = CustomDensity(lambda r: r ** -2.0 * np.exp(-r) * (1 + 0.1 * np.exp(-r)))
    mu = triplet([0.0], symmetric_density1d(dens))
    v = range_membership(mu, psi_kernel(1, 1), tier="Re")
    assert v.verdict == "unknown"
    bumpy = CustomDensity(lambda r: r ** -2.0 * (1.5 + np.sin(3 * r)), hi=5.0)
    assert range_membership(triplet([0.0], symmetric_density1d(bumpy)), phi_bar(1, 1), tier="Re").verdict == "fails"


def test_range_atoms_fail_structurally():
    v = range_membership(triplet([0.0], Atoms([[0.5], [-0.5]], [1.0, 1.0])), psi_kernel(1, 1), tier="Re")
    assert v.verdict == "fails"


def test_range_starred_gaussian_fails():
    mu = triplet([0.0], symmetric_density1d(PowerExp(1.0, 1.0, 1.0, -1.0)), A=[[1.0]])
    assert range_membership(mu, psi_kernel(1, 1), star=True, tier="Re").verdict == "fails"


def test_range_conjugate_kernel_equals_star_flag():
    mu = invert(triplet([0.0], symmetric_density1d(E_SHAPE)))
    a = range_membership(mu, conjugate(psi_kernel(1, 1)), tier="R0")
    b = range_membership(mu, psi_kernel(1, 1), star=True, tier="R0")
    assert a.verdict == b.verdict == "holds" and a.star and b.star


def test_range_lambda_kernel():
    mu = triplet([0.0], symmetric_density1d(E_SHAPE))
    assert range_membership(mu, lambda_kernel(2, 1), tier="R").verdict == "unknown"
    assert range_membership(mu, lambda_kernel(2, 1), tier="Re").verdict in ("unknown", "fails")
    bumpy = CustomDensity(lambda r: r ** -2.0 * (1.5 + np.sin(3 * r)), hi=5.0)
    assert range_membership(triplet([0.0], symmetric_density1d(bumpy)), lambda_kernel(2, 1),
                            tier="Re").verdict == "fails"


def test_range_rejects_other_alpha_and_tiers():
    mu = triplet([0.0], symmetric_density1d(E_SHAPE))
    with pytest.raises(DomainError):
        range_membership(mu, psi_kernel(0.5, 1))
    with pytest.raises(DomainError):
        range_membership(mu, psi_kernel(1, 1), tier="Q")


def test_structural_check_zero_measure():
    verdict, reasons, _, _ = structural_check(triplet([0.0]), psi_kernel(1, 1))
    assert verdict == "holds"


# L_inf ------------------------------------------------------------------------------

def _sym():
    return symmetric_pair(1, 0, 1.0)


def test_linfty_single_ray():
    nu = linfty_synthesize(LInftyRepr([0.5], [1.0], (SphereAtoms(np.array([[1.0]]), np.ones(1)),)))
    r = np.geomspace(0.1, 10, 7)
    assert len(nu.directions) == 1
    assert np.allclose(nu.weights[0] * nu.radials[0].density(r), r ** -1.5, rtol=1e-14)


def test_linfty_symmetric_one_stable():
    nu = linfty_synthesize(LInftyRepr([1.0], [2.0 / np.pi], (_sym(),)))
    z = np.linspace(-3, 3, 7)[:, None]
    assert np.allclose(char_exponent(triplet([0.0], nu), z), -np.abs(z[:, 0]), atol=1e-10)


def test_linfty_mixture_density():
    nu = linfty_synthesize(LInftyRepr([0.5, 1.5], [0.5, 0.5], (_sym(), _sym())))
    r = np.geomspace(0.05, 20, 9)
    for w, rad in zip(nu.weights, nu.radials):
        assert w == pytest.approx(0.5)
        assert isinstance(rad, RadialMixture)
        assert np.allclose(rad.density(r), 0.5 * (r ** -1.5 + r ** -2.5), rtol=1e-14)


def test_linfty_round_trip_integration():
    rep = LInftyRepr([0.5, 1.5], [0.3, 0.7], (SphereAtoms(np.array([[1.0]]), np.ones(1)), _sym()))
    nu = linfty_synthesize(rep)
    # nu(r > 2 on ray +1) = 0.3 * 2^-0.5 / 0.5 + 0.7 * 0.5 * 2^-1.5 / 1.5
    expected = 0.3 * 2 ** -0.5 / 0.5 + 0.35 * 2 ** -1.5 / 1.5
    assert nu.measure_of_cone(2.0, np.inf, lambda xi: xi[:, 0] > 0) == pytest.approx(expected, rel=1e-12)


def test_linfty_validation():
    with pytest.raises(DomainError):
        LInftyRepr([2.0], [1.0], (_sym(),))
    with pytest.raises(DomainError):
        LInftyRepr([1.0], [1.0], (symmetric_pair(1, 0, 2.0),))  # mass 2
    with pytest.raises(DomainError):
        linfty_repr_from_dict({"gamma_density": "x", "betas": [], "weights": [], "lambdas": []})
    rep = linfty_repr_from_dict(LInftyRepr([0.5], [1.0], (_sym(),)).to_dict())
    assert rep.integrability() == pytest.approx(1 / 0.5 + 1 / 1.5)


def test_r_infinity_examples():
    law = LInftyLaw(LInftyRepr([1.5], [1.0], (_sym(),)), [0.0])
    assert r_infinity_membership(law, psi_kernel(1, 1)).verdict == "holds"
    law = LInftyLaw(LInftyRepr([0.5], [1.0], (_sym(),)), [0.0])
    assert r_infinity_membership(law, phi_bar(1, 1), star=True).verdict == "holds"
    law = LInftyLaw(LInftyRepr([0.5], [1.0], (SphereAtoms(np.array([[1.0]]), np.ones(1)),)), [0.3])
    v = r_infinity_membership(law, phi_bar(2, 1), star=True)
    assert v.verdict == "fails" and any("weak drift" in r for r in v.reasons)


def test_r_infinity_support_conditions():
    law = LInftyLaw(LInftyRepr([0.5, 1.5], [1.0, 1.0], (_sym(), _sym())), [0.0])
    assert r_infinity_membership(law, psi_kernel(1, 1)).verdict == "fails"
    assert r_infinity_membership(law, psi_kernel(1, 1), star=True).verdict == "fails"
    gauss = LInftyLaw(LInftyRepr([0.5], [1.0], (_sym(),)), [0.0], A=[[1.0]])
    assert r_infinity_membership(gauss, psi_kernel(1, 1), star=True).verdict == "fails"


def test_r_infinity_rejects_other_inputs():
    with pytest.raises(DomainError):
        r_infinity_membership(cauchy(), psi_kernel(1, 1))
    law = LInftyLaw(LInftyRepr([1.5], [1.0], (_sym(),)), [0.0])
    with pytest.raises(DomainError):
        r_infinity_membership(law, psi_kernel(1, 2))
    with pytest.raises(DomainError):
        r_infinity_membership(law, phi_bar(0.5, 1))


def test_linfty_law_triplet_matches_stable():
    law = LInftyLaw(LInftyRepr([1.5], [1.0], (_sym(),)), [0.2])
    stable = triplet([0.2], Stable(1.5, _sym()))
    z = np.array([[0.5], [-2.0]])
    assert np.allclose(char_exponent(law.triplet, z), char_exponent(stable, z), atol=1e-10)
    assert gamma_subordinator() is not None
