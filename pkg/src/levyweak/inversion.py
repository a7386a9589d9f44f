"""Inversion mu -> mu' on Gaussian-free laws, and the identities it satisfies.

nu' is the image of |x|^2 nu(dx) under x -> x/|x|^2 and
gamma' = -gamma + int_{|x|=1} x nu(dx).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .levy_core.triplet import LevyTriplet, char_exponent, convolution_power, dilate, triplet_allclose
from .weak_moments import WeakMomentResult, weak_drift, weak_mean

DUAL_TOL = 1e-8
TRUNC_TOL = 1e-9


@dataclass(frozen=True)
class InversionPair:
    original: LevyTriplet
    inverted: LevyTriplet


def invert(mu: LevyTriplet) -> LevyTriplet:
    if not mu.gaussian_free:
        raise DomainError("inversion is defined only for laws without Gaussian part")
    return LevyTriplet(np.zeros_like(mu.A), mu.nu.invert(), -mu.gamma + mu.nu.sphere_vector())


def inversion_pair(mu: LevyTriplet) -> InversionPair:
    return InversionPair(mu, invert(mu))


def truncation_identity_errors(mu: LevyTriplet, levels=10):
    """|int_{eps<|x|<=1} x nu'(dx) - int_{1<=|x|<1/eps} x nu(dx)| for eps = 2^-1 .. 2^-levels."""
    nu_inv = mu.nu.invert()
    errs = []
    for k in range(1, levels + 1):
        eps = 2.0 ** -k
        lhs = nu_inv.vector_moment(1.0, eps, 1.0)
        rhs = mu.nu.vector_moment(1.0, 1.0, 1.0 / eps, include_a=True, include_b=False)
        errs.append(float(np.max(np.abs(lhs - rhs))))
    return errs


@dataclass(frozen=True)
class DualityReport:
    mean: WeakMomentResult
    drift_of_inverse: WeakMomentResult
    statuses_match: bool
    absolute_match: bool
    value_error: float | None
    truncation_errors: tuple
    passed: bool

    def to_dict(self):
        return {
            "weak_mean": self.mean.to_dict(),
            "weak_drift_of_inverse": self.drift_of_inverse.to_dict(),
            "statuses_match": self.statuses_match,
            "absolute_match": self.absolute_match,
            "value_error": self.value_error,
            "truncation_errors": list(self.truncation_errors),
            "passed": self.passed,
        }


def weak_dual_check(mu: LevyTriplet, levels=60) -> DualityReport:
    """weak mean of mu against weak drift of mu' (gamma'^0 = -m)."""
    mu_inv = invert(mu)
    wm = weak_mean(mu, levels)
    wd = weak_drift(mu_inv, levels)
    statuses = wm.status == wd.status
    absolute = wm.absolute == wd.absolute
    err = None
    if wm.status == "exists" and wd.status == "exists":
        err = float(np.max(np.abs(wd.value + wm.value)))
    trunc = tuple(truncation_identity_errors(mu))
    passed = statuses and absolute and (err is None or err <= DUAL_TOL) and max(trunc) <= TRUNC_TOL
    return DualityReport(wm, wd, statuses, absolute, err, trunc, passed)


@dataclass(frozen=True)
class DilationInversionReport:
    b: float
    lhs: LevyTriplet
    rhs: LevyTriplet
    triplets_match: bool
    psi_error: float
    passed: bool

    def to_dict(self):
        return {"b": self.b, "triplets_match": self.triplets_match, "psi_error": self.psi_error,
                "passed": self.passed}


def dilation_inversion_identity(mu: LevyTriplet, b: float, z=None) -> DilationInversionReport:
    """(T_b mu)' against (T_{1/b} mu')^{b^2}."""
    if not b > 0:
        raise DomainError("b must be positive")
    lhs = invert(dilate(mu, b))
    rhs = convolution_power(dilate(invert(mu), 1.0 / b), b * b)
    if z is None:
        rng = np.random.default_rng(11)
        z = rng.normal(size=(16, mu.dim)) * 2.0
    err = float(np.max(np.abs(char_exponent(lhs, z) - char_exponent(rhs, z))))
    same = triplet_allclose(lhs, rhs, 1e-10)
    return DilationInversionReport(b, lhs, rhs, same, err, same and err <= 1e-8)
