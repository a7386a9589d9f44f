"""Generating triplets (A, nu, gamma) and the operations defined directly on them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from .measures import LevyMeasure, zero_measure
from .radial import INF

EIG_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class LevyTriplet:
    """Infinitely divisible law via its generating triplet, truncation 1_{|x|<=1}."""

    A: np.ndarray
    nu: LevyMeasure
    gamma: np.ndarray

    def __post_init__(self):
        gamma = np.atleast_1d(np.asarray(self.gamma, dtype=float))
        d = gamma.shape[0]
        A = np.asarray(self.A, dtype=float).reshape(d, d) if np.size(self.A) == d * d else None
        if A is None:
            raise DomainError("A must be a d x d matrix")
        if not np.allclose(A, A.T, atol=EIG_TOL, rtol=0):
            raise DomainError("A must be symmetric")
        if d and np.min(np.linalg.eigvalsh(A)) < -EIG_TOL:
            raise DomainError("A must be nonnegative definite")
        if self.nu.dim != d:
            raise DomainError("nu and gamma have different dimensions")
        if self.nu.moment_finite(2.0, "zero") is False or self.nu.moment_finite(0.0, "inf") is False:
            raise DomainError("nu does not integrate min(|x|^2, 1)")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "gamma", gamma)

    @property
    def dim(self):
        return self.gamma.shape[0]

    @property
    def gaussian_free(self):
        return not np.any(self.A)

    def replace(self, A=None, nu=None, gamma=None):
        return LevyTriplet(self.A if A is None else A, self.nu if nu is None else nu,
                           self.gamma if gamma is None else gamma)


def triplet(gamma, nu=None, A=None):
    """Convenience constructor accepting scalars for d = 1."""
    gamma = np.atleast_1d(np.asarray(gamma, dtype=float))
    d = gamma.shape[0]
    if nu is None:
        nu = zero_measure(d)
    if A is None:
        A = np.zeros((d, d))
    return LevyTriplet(np.atleast_2d(np.asarray(A, dtype=float)), nu, gamma)


def char_exponent(mu: LevyTriplet, z):
    """log of the characteristic function at z (shape (d,) or (n, d))."""
    z = np.asarray(z, dtype=float)
    single = z.ndim <= 1
    Z = z.reshape(-1, mu.dim)
    gauss = -0.5 * np.einsum("ni,ij,nj->n", Z, mu.A, Z)
    out = gauss + 1j * (Z @ mu.gamma) + mu.nu.exponent(Z)
    return complex(out[0]) if single else out


@dataclass(frozen=True)
class DerivedLocation:
    kind: str  # drift | mean | sharp
    defined: bool | None  # None: integrability inconclusive
    value: np.ndarray | None = None

    @property
    def status(self):
        return {True: "defined", False: "undefined", None: "inconclusive"}[self.defined]

    def to_dict(self):
        return {"kind": self.kind, "status": self.status,
                "value": None if self.value is None else np.asarray(self.value).tolist()}


def drift_of(mu: LevyTriplet) -> DerivedLocation:
    ok = mu.nu.moment_finite(1.0, "zero")
    if ok is not True:
        return DerivedLocation("drift", ok)
    return DerivedLocation("drift", True, mu.gamma - mu.nu.vector_moment(1.0, 0.0, 1.0))


def mean_of(mu: LevyTriplet) -> DerivedLocation:
    ok = mu.nu.moment_finite(1.0, "inf")
    if ok is not True:
        return DerivedLocation("mean", ok)
    return DerivedLocation("mean", True, mu.gamma + mu.nu.vector_moment(1.0, 1.0, INF))


def sharp_location(mu: LevyTriplet) -> np.ndarray:
    """gamma + int_{|x|>1} x/|x| nu(dx)."""
    return mu.gamma + mu.nu.vector_moment(0.0, 1.0, INF)


def dilate(mu: LevyTriplet, b: float) -> LevyTriplet:
    """Law of bX: nu pushed forward by x -> bx, with the location corrected for
    the moving truncation boundary (valid for every b > 0)."""
    if not b > 0:
        raise DomainError("dilation factor must be positive")
    if b == 1:
        return mu
    if b < 1:
        corr = mu.nu.vector_moment(1.0, 1.0, 1.0 / b)
    else:
        corr = -mu.nu.vector_moment(1.0, 1.0 / b, 1.0)
    return LevyTriplet(b * b * mu.A, mu.nu.dilate(b), b * mu.gamma + b * corr)


def convolution_power(mu: LevyTriplet, t: float) -> LevyTriplet:
    if not t > 0:
        raise DomainError("convolution power must be positive")
    if t == 1:
        return mu
    return LevyTriplet(t * mu.A, mu.nu.scaled(t), t * mu.gamma)


def spherical_decomposition(nu: LevyMeasure):
    return nu.spherical_decomposition()


def triplet_allclose(m1: LevyTriplet, m2: LevyTriplet, tol=1e-10):
    from .measures import nu_allclose

    return (m1.dim == m2.dim and np.allclose(m1.A, m2.A, rtol=tol, atol=tol)
            and np.allclose(m1.gamma, m2.gamma, rtol=tol, atol=tol) and nu_allclose(m1.nu, m2.nu, tol))
