"""Finite measures on the unit sphere S (the two-point set {-1, +1} when d = 1)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..errors import DomainError

UNIT_TOL = 1e-12
DEFAULT_ORDER = 64


class SphereMeasure:
    """Common interface; subclasses provide ``quadrature``."""

    dim: int

    def quadrature(self, order=DEFAULT_ORDER):
        """Return (directions (n, d), weights (n,)) representing the measure."""
        raise NotImplementedError

    @property
    def mass(self):
        return float(self.quadrature()[1].sum())

    def first_moment(self):
        """The vector integral of xi against the measure."""
        dirs, w = self.quadrature()
        return w @ dirs

    def measure_of(self, indicator):
        """Mass of {xi : indicator(xi)} for a vectorised indicator."""
        dirs, w = self.quadrature()
        return float(w[np.asarray(indicator(dirs), dtype=bool)].sum())

    def scaled(self, t):
        raise NotImplementedError

    def sample(self, rng, n):
        """n directions drawn from the normalised measure (quadrature nodes by default)."""
        dirs, w = self.quadrature(4 * DEFAULT_ORDER)
        idx = rng.choice(len(w), size=n, p=w / w.sum())
        return dirs[idx]

    @property
    def is_atomic(self):
        return False


@dataclass(frozen=True, eq=False)
class SphereAtoms(SphereMeasure):
    directions: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        dirs = np.atleast_2d(np.asarray(self.directions, dtype=float))
        w = np.atleast_1d(np.asarray(self.weights, dtype=float))
        if dirs.shape[0] != w.shape[0]:
            raise DomainError("directions and weights differ in length")
        if np.any(w <= 0) or not np.all(np.isfinite(w)):
            raise DomainError("sphere weights must be positive and finite")
        norms = np.linalg.norm(dirs, axis=1)
        if np.any(np.abs(norms - 1.0) > UNIT_TOL):
            raise DomainError("sphere atoms must have unit norm")
        object.__setattr__(self, "directions", dirs)
        object.__setattr__(self, "weights", w)

    @property
    def dim(self):
        return self.directions.shape[1]

    @property
    def is_atomic(self):
        return True

    def quadrature(self, order=DEFAULT_ORDER):
        return self.directions, self.weights

    def scaled(self, t):
        return SphereAtoms(self.directions, self.weights * t)

    def to_dict(self):
        return {"kind": "atoms", "directions": self.directions.tolist(), "weights": self.weights.tolist()}


def _uniform_rule(dim, order):
    if dim == 1:
        return np.array([[1.0], [-1.0]]), np.array([0.5, 0.5])
    if dim == 2:
        th = 2 * np.pi * (np.arange(order) + 0.5) / order
        return np.column_stack([np.cos(th), np.sin(th)]), np.full(order, 1.0 / order)
    if dim == 3:
        ct, wt = np.polynomial.legendre.leggauss(order // 2)
        nphi = order
        phi = 2 * np.pi * (np.arange(nphi) + 0.5) / nphi
        st = np.sqrt(1 - ct ** 2)
        dirs = np.stack([
            np.outer(st, np.cos(phi)).ravel(),
            np.outer(st, np.sin(phi)).ravel(),
            np.repeat(ct, nphi),
        ], axis=1)
        w = np.repeat(wt / 2.0, nphi) / nphi
        return dirs, w
    raise DomainError("continuous spherical parts are supported only for d <= 3")


@dataclass(frozen=True, eq=False)
class SphereUniform(SphereMeasure):
    """Uniform measure of total mass ``mass`` on S in dimension 1, 2 or 3."""

    dim: int
    mass_: float = 1.0

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise DomainError("uniform spherical measure supported for d in {1, 2, 3}")
        if not self.mass_ > 0:
            raise DomainError("mass must be positive")

    @property
    def mass(self):
        return float(self.mass_)

    def first_moment(self):
        return np.zeros(self.dim)

    def quadrature(self, order=DEFAULT_ORDER):
        dirs, w = _uniform_rule(self.dim, order)
        return dirs, w * self.mass_

    def scaled(self, t):
        return SphereUniform(self.dim, self.mass_ * t)

    def sample(self, rng, n):
        if self.dim == 1:
            return rng.choice([-1.0, 1.0], size=(n, 1))
        g = rng.standard_normal((n, self.dim))
        return g / np.linalg.norm(g, axis=1, keepdims=True)

    def to_dict(self):
        return {"kind": "uniform", "dim": self.dim, "mass": self.mass_}


@dataclass(frozen=True, eq=False)
class SphereDensity(SphereMeasure):
    """Measure with a density (w.r.t. the normalised uniform measure) on S, d in {2, 3}."""

    dim: int
    density: Callable[[np.ndarray], np.ndarray]
    name: str = "custom"
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        if self.dim not in (2, 3):
            raise DomainError("spherical densities supported for d in {2, 3}")

    def quadrature(self, order=None):
        dirs, w = _uniform_rule(self.dim, order or self.order)
        return dirs, w * np.asarray(self.density(dirs), dtype=float)

    def scaled(self, t):
        dens = self.density
        return SphereDensity(self.dim, lambda x: t * dens(x), self.name, self.order)


@dataclass(frozen=True, eq=False)
class SphereMixture(SphereMeasure):
    """Nonnegative combination of sphere measures; used by spherical decompositions."""

    parts: tuple
    coefs: tuple

    @property
    def dim(self):
        return self.parts[0].dim

    @property
    def is_atomic(self):
        return all(p.is_atomic for p in self.parts)

    def quadrature(self, order=DEFAULT_ORDER):
        ds, ws = [], []
        for p, c in zip(self.parts, self.coefs):
            d, w = p.quadrature(order)
            ds.append(d)
            ws.append(c * w)
        return np.vstack(ds), np.concatenate(ws)

    def first_moment(self):
        return sum(c * p.first_moment() for p, c in zip(self.parts, self.coefs))

    @property
    def mass(self):
        return float(sum(c * p.mass for p, c in zip(self.parts, self.coefs)))

    def scaled(self, t):
        return SphereMixture(self.parts, tuple(c * t for c in self.coefs))


def point_mass(direction):
    d = np.asarray(direction, dtype=float).reshape(1, -1)
    return SphereAtoms(d, np.ones(1))


def symmetric_pair(dim, axis=0, mass=1.0):
    e = np.zeros(dim)
    e[axis] = 1.0
    return SphereAtoms(np.vstack([e, -e]), np.array([mass / 2, mass / 2]))
