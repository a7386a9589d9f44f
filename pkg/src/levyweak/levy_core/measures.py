"""Levy measure representations.

Every variant can be viewed as a finite sum of polar components
lambda_k(d xi) nubar_k(dr), which is what the generic integration,
exponent and transformation code works with.  Atoms are handled directly so
that inversion and dilation stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .._numerics import expi_compensated, expi_minus_one
from ..errors import DomainError
from .radial import INF, SNAP_TOL, PowerExp, RadialAtoms, RadialMeasure, RadialMixture, radial_from_dict
from .spherical import SphereAtoms, SphereMeasure, SphereMixture, SphereUniform


@dataclass(frozen=True)
class PolarComponent:
    sphere: SphereMeasure
    radial: RadialMeasure

    @property
    def first_moment(self):
        return np.asarray(self.sphere.first_moment(), dtype=float)

    @property
    def mass(self):
        return self.sphere.mass


def _sphere_from_dict(d, dim):
    kind = d.get("kind")
    if kind == "atoms":
        return SphereAtoms(np.asarray(d["directions"], float), np.asarray(d["weights"], float))
    if kind == "uniform":
        return SphereUniform(int(d.get("dim", dim)), float(d.get("mass", 1.0)))
    raise DomainError(f"unknown sphere kind {kind!r}")


def _sphere_to_dict(s):
    if not hasattr(s, "to_dict"):
        raise DomainError("this spherical measure cannot be serialised")
    return s.to_dict()


class LevyMeasure:
    """Base class (the representation tag is the subclass)."""

    kind = "abstract"
    dim: int

    def components(self) -> list[PolarComponent]:
        raise NotImplementedError

    # -- integrals ---------------------------------------------------------

    def vector_moment(self, p, a=0.0, b=INF, include_a=False, include_b=True):
        """int_{a<|x|<=b} |x|^{p-1} x nu(dx)."""
        out = np.zeros(self.dim)
        for c in self.components():
            m = c.first_moment
            if not np.any(m):
                continue
            out = out + m * c.radial.moment(p, a, b, include_a, include_b)
        return out

    def scalar_moment(self, p, a=0.0, b=INF, include_a=False, include_b=True):
        """int_{a<|x|<=b} |x|^p nu(dx)."""
        return float(sum(c.mass * c.radial.moment(p, a, b, include_a, include_b) for c in self.components()))

    def moment_finite(self, p, end):
        """Finiteness of int |x|^p nu(dx) near ``end`` ('zero' or 'inf'); None if inconclusive."""
        flags = [c.radial.moment_finite(p, end) for c in self.components() if c.mass > 0]
        if all(f is True for f in flags):
            return True
        if any(f is False for f in flags):
            return False
        return None

    def mass_outside(self, t):
        return self.scalar_moment(0.0, t, INF)

    def is_finite(self):
        return self.moment_finite(0.0, "zero") is True

    def sphere_vector(self):
        """int_{|x|=1} x nu(dx)."""
        out = np.zeros(self.dim)
        for c in self.components():
            w = c.radial.mass_at(1.0)
            if w:
                out = out + w * c.first_moment
        return out

    def measure_of_cone(self, a, b, direction_indicator=None):
        """nu({x : a < |x| <= b, x/|x| in C}) for a vectorised indicator of C."""
        total = 0.0
        for c in self.components():
            lam = c.mass if direction_indicator is None else c.sphere.measure_of(direction_indicator)
            if lam:
                total += lam * c.radial.moment(0.0, a, b)
        return total

    # -- characteristic exponent -------------------------------------------

    def exponent(self, z, a=0.0, b=INF):
        """int_{a<|x|<=b} (e^{i<z,x>} - 1 - i<z,x> 1_{|x|<=1}) nu(dx) for z of shape (n, d) or (d,)."""
        z = np.asarray(z, dtype=float)
        single = z.ndim == 1
        Z = np.atleast_2d(z)
        out = np.zeros(len(Z), dtype=complex)
        full = a == 0.0 and b == INF
        for c in self.components():
            dirs, w = c.sphere.quadrature()
            U = Z @ dirs.T
            vals = c.radial.exponent(U) if full else c.radial.exponent_restricted(U, a, b)
            out = out + vals @ w
        return out[0] if single else out

    # -- transformations ---------------------------------------------------

    def dilate(self, b):
        raise NotImplementedError

    def invert(self):
        raise NotImplementedError

    def scaled(self, t):
        raise NotImplementedError

    @property
    def is_atomic(self):
        return all(c.sphere.is_atomic and c.radial.is_atomic for c in self.components())

    def spherical_decomposition(self):
        return SphericalDecomposition(tuple(self.components()), self.dim)

    # -- sampling ------------------------------------------------------------

    def sample_jumps(self, rng, n, delta):
        """n jumps drawn from nu restricted to {|x| > delta}, normalised."""
        comps = self.components()
        rates = np.array([c.mass * c.radial.moment(0.0, delta, INF) for c in comps])
        if not np.all(np.isfinite(rates)) or rates.sum() <= 0:
            raise DomainError("nu has infinite or zero mass above the threshold")
        counts = rng.multinomial(n, rates / rates.sum())
        out = []
        for c, k in zip(comps, counts):
            if k:
                r = c.radial.sample(rng, k, delta)
                out.append(r[:, None] * c.sphere.sample(rng, k))
        x = np.vstack(out)
        return x[rng.permutation(len(x))]

    def to_dict(self):
        raise NotImplementedError


@dataclass(frozen=True)
class SphericalDecomposition:
    """nu(dx) = sum_k lambda_k(d xi) nubar_k(dr) exposed as (nubar, lambda_r)."""

    components: tuple
    dim: int

    def radial(self):
        """nubar(dr) = sum_k |lambda_k| nubar_k(dr)."""
        parts = [c.radial.scaled(c.mass) for c in self.components if c.mass > 0]
        if not parts:
            return None
        return parts[0] if len(parts) == 1 else RadialMixture(tuple(parts))

    def sphere_at(self, r):
        """lambda_r, a probability measure on S (normalisation: nubar carries the mass)."""
        weights = []
        for c in self.components:
            rad = c.radial
            if rad.is_atomic:
                w = rad.mass_at(r)
            else:
                w = float(rad.density(np.array([r]))[0]) if hasattr(rad, "density") else 0.0
            weights.append(c.mass * w)
        total = sum(weights)
        if total <= 0:
            return None
        parts = [c.sphere.scaled(1.0 / c.mass) for c, w in zip(self.components, weights) if w > 0]
        coefs = [w / total for w in weights if w > 0]
        return SphereMixture(tuple(parts), tuple(coefs))

    def measure_of_cone(self, a, b, direction_indicator=None):
        total = 0.0
        for c in self.components:
            lam = c.mass if direction_indicator is None else c.sphere.measure_of(direction_indicator)
            total += lam * c.radial.moment(0.0, a, b)
        return total


# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Atoms(LevyMeasure):
    """Finitely many atoms (x_i, m_i) with x_i != 0."""

    points: np.ndarray
    masses: np.ndarray

    kind = "atoms"

    def __post_init__(self):
        X = np.asarray(self.points, dtype=float)
        if X.ndim == 1:
            X = X[:, None]
        m = np.atleast_1d(np.asarray(self.masses, dtype=float))
        if X.shape[0] != m.shape[0]:
            raise DomainError("points and masses differ in length")
        if np.any(m <= 0) or not np.all(np.isfinite(m)) or not np.all(np.isfinite(X)):
            raise DomainError("atom masses must be positive and finite")
        if len(X) and np.any(np.linalg.norm(X, axis=1) == 0):
            raise DomainError("atoms at the origin are not allowed")
        object.__setattr__(self, "points", X)
        object.__setattr__(self, "masses", m)

    @property
    def dim(self):
        return self.points.shape[1]

    @property
    def norms(self):
        r = np.linalg.norm(self.points, axis=1)
        return np.where(np.abs(r - 1.0) <= SNAP_TOL, 1.0, r)

    @property
    def on_sphere(self):
        return self.norms == 1.0

    def components(self):
        r = self.norms
        return [PolarComponent(SphereAtoms(x / ri, np.ones(1)), RadialAtoms(np.array([ri]), np.array([mi])))
                for x, ri, mi in zip(self.points, r, self.masses)]

    def _mask(self, a, b, include_a, include_b):
        r = self.norms
        left = r >= a if include_a else r > a
        right = r <= b if include_b else r < b
        return left & right

    def vector_moment(self, p, a=0.0, b=INF, include_a=False, include_b=True):
        sel = self._mask(a, b, include_a, include_b)
        r = self.norms[sel]
        return (self.masses[sel] * r ** (p - 1)) @ self.points[sel] if sel.any() else np.zeros(self.dim)

    def scalar_moment(self, p, a=0.0, b=INF, include_a=False, include_b=True):
        sel = self._mask(a, b, include_a, include_b)
        return float(np.sum(self.masses[sel] * self.norms[sel] ** p))

    def moment_finite(self, p, end):
        return True

    def sphere_vector(self):
        sel = self.on_sphere
        return self.masses[sel] @ self.points[sel] if sel.any() else np.zeros(self.dim)

    def exponent(self, z, a=0.0, b=INF):
        z = np.asarray(z, dtype=float)
        single = z.ndim == 1
        Z = np.atleast_2d(z)
        sel = self._mask(a, b, False, True)
        X, m, r = self.points[sel], self.masses[sel], self.norms[sel]
        U = Z @ X.T
        vals = np.where(r <= 1.0, expi_compensated(U), expi_minus_one(U))
        out = vals @ m
        return out[0] if single else out

    def dilate(self, b):
        return Atoms(self.points * b, self.masses)

    def invert(self):
        r2 = self.norms ** 2
        X = self.points / r2[:, None]
        X[self.on_sphere] = self.points[self.on_sphere]
        return Atoms(X, self.masses * r2)

    def scaled(self, t):
        return Atoms(self.points, self.masses * t)

    @property
    def is_atomic(self):
        return True

    def sample_jumps(self, rng, n, delta):
        sel = self.norms > delta
        if not sel.any():
            raise DomainError("no atoms above the threshold")
        m = self.masses[sel]
        idx = rng.choice(int(sel.sum()), size=n, p=m / m.sum())
        return self.points[sel][idx]

    def to_dict(self):
        return {"kind": "atoms", "points": self.points.tolist(), "masses": self.masses.tolist()}


def zero_measure(dim):
    return Atoms(np.zeros((0, dim)), np.zeros(0))


@dataclass(frozen=True, eq=False)
class PolarProduct(LevyMeasure):
    """nu(dx) = lambda(d xi) nubar(dr)."""

    sphere: SphereMeasure
    radial: RadialMeasure

    kind = "polar"

    @property
    def dim(self):
        return self.sphere.dim

    def components(self):
        return [PolarComponent(self.sphere, self.radial)]

    def dilate(self, b):
        return PolarProduct(self.sphere, self.radial.dilate(b))

    def invert(self):
        return PolarProduct(self.sphere, self.radial.invert())

    def scaled(self, t):
        return PolarProduct(self.sphere, self.radial.scaled(t))

    def to_dict(self):
        return {"kind": "polar", "sphere": _sphere_to_dict(self.sphere), "radial": self.radial.to_dict()}


@dataclass(frozen=True, eq=False)
class Stable(LevyMeasure):
    """alpha-stable Levy measure lambda(d xi) c r^{-1-alpha} dr."""

    alpha: float
    sphere: SphereMeasure
    c: float = 1.0

    kind = "stable"

    def __post_init__(self):
        if not 0 < self.alpha < 2:
            raise DomainError("alpha must lie in (0, 2)")
        if not self.c > 0:
            raise DomainError("c must be positive")

    @property
    def dim(self):
        return self.sphere.dim

    @property
    def radial(self):
        return PowerExp(self.c, self.alpha)

    def components(self):
        return [PolarComponent(self.sphere, self.radial)]

    def dilate(self, b):
        return Stable(self.alpha, self.sphere, self.c * b ** self.alpha)

    def invert(self):
        return Stable(2.0 - self.alpha, self.sphere, self.c)

    def scaled(self, t):
        return Stable(self.alpha, self.sphere, self.c * t)

    def to_dict(self):
        return {"kind": "stable", "alpha": self.alpha, "c": self.c, "sphere": _sphere_to_dict(self.sphere)}


@dataclass(frozen=True, eq=False)
class RadialDecomposition(LevyMeasure):
    """Finitely many rays xi_j with weights lambda_j and radial measures nu_j."""

    directions: np.ndarray
    weights: np.ndarray
    radials: tuple

    kind = "radial"

    def __post_init__(self):
        sph = SphereAtoms(self.directions, self.weights)
        if len(self.radials) != len(sph.weights):
            raise DomainError("one radial measure per direction is required")
        object.__setattr__(self, "directions", sph.directions)
        object.__setattr__(self, "weights", sph.weights)
        object.__setattr__(self, "radials", tuple(self.radials))

    @property
    def dim(self):
        return self.directions.shape[1]

    def components(self):
        return [PolarComponent(SphereAtoms(xi[None, :], np.array([w])), rad)
                for xi, w, rad in zip(self.directions, self.weights, self.radials)]

    def _map(self, fn):
        return RadialDecomposition(self.directions, self.weights, tuple(fn(r) for r in self.radials))

    def dilate(self, b):
        return self._map(lambda r: r.dilate(b))

    def invert(self):
        return self._map(lambda r: r.invert())

    def scaled(self, t):
        return RadialDecomposition(self.directions, self.weights * t, self.radials)

    def to_dict(self):
        return {"kind": "radial", "directions": self.directions.tolist(), "weights": self.weights.tolist(),
                "radials": [r.to_dict() for r in self.radials]}


@dataclass(frozen=True, eq=False)
class ScalarDensity(LevyMeasure):
    """One-dimensional nu with densities on the two half-lines.

    ``positive`` is the radial measure of nu on (0, inf); ``negative`` is the
    image of nu restricted to (-inf, 0) under x -> -x.  Either may be None.
    """

    positive: RadialMeasure | None
    negative: RadialMeasure | None

    kind = "density1d"
    dim = 1

    def __post_init__(self):
        if self.positive is None and self.negative is None:
            raise DomainError("at least one half-line density is required")

    def components(self):
        out = []
        if self.positive is not None:
            out.append(PolarComponent(SphereAtoms(np.array([[1.0]]), np.ones(1)), self.positive))
        if self.negative is not None:
            out.append(PolarComponent(SphereAtoms(np.array([[-1.0]]), np.ones(1)), self.negative))
        return out

    def density(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        if self.positive is not None:
            out = np.where(x > 0, self.positive.density(np.abs(x)), out)
        if self.negative is not None:
            out = np.where(x < 0, self.negative.density(np.abs(x)), out)
        return out

    def _map(self, fn):
        return ScalarDensity(None if self.positive is None else fn(self.positive),
                             None if self.negative is None else fn(self.negative))

    def dilate(self, b):
        return self._map(lambda r: r.dilate(b))

    def invert(self):
        return self._map(lambda r: r.invert())

    def scaled(self, t):
        return self._map(lambda r: r.scaled(t))

    def to_dict(self):
        return {"kind": "density1d",
                "positive": None if self.positive is None else self.positive.to_dict(),
                "negative": None if self.negative is None else self.negative.to_dict()}


def symmetric_density1d(radial):
    return ScalarDensity(radial, radial)


def measure_from_dict(d, dim):
    kind = d.get("kind")
    if kind == "atoms":
        pts = np.asarray(d["points"], float).reshape(-1, dim)
        return Atoms(pts, np.asarray(d["masses"], float))
    if kind == "polar":
        return PolarProduct(_sphere_from_dict(d["sphere"], dim), radial_from_dict(d["radial"]))
    if kind == "stable":
        return Stable(float(d["alpha"]), _sphere_from_dict(d["sphere"], dim), float(d.get("c", 1.0)))
    if kind == "radial":
        return RadialDecomposition(np.asarray(d["directions"], float).reshape(-1, dim),
                                   np.asarray(d["weights"], float),
                                   tuple(radial_from_dict(r) for r in d["radials"]))
    if kind == "density1d":
        if dim != 1:
            raise DomainError("density1d requires dim = 1")
        pos, neg = d.get("positive"), d.get("negative")
        return ScalarDensity(None if pos is None else radial_from_dict(pos),
                             None if neg is None else radial_from_dict(neg))
    raise DomainError(f"unknown Levy measure kind {kind!r}")


def _match_atoms(X1, m1, X2, m2, tol):
    if X1.shape != X2.shape:
        return False
    if not len(X1):
        return True
    used = np.zeros(len(X2), dtype=bool)
    for x, m in zip(X1, m1):
        d = np.max(np.abs(X2 - x), axis=1) + np.abs(m2 - m) / max(1.0, abs(m))
        d[used] = INF
        j = int(np.argmin(d))
        if d[j] > tol * max(1.0, np.max(np.abs(x))):
            return False
        used[j] = True
    return True


def nu_allclose(nu1, nu2, tol=1e-10, z=None):
    """Compare two Levy measures: exact matching for atoms, otherwise band
    moments and exponents on a small z-grid."""
    if nu1.dim != nu2.dim:
        return False
    if isinstance(nu1, Atoms) and isinstance(nu2, Atoms):
        return _match_atoms(nu1.points, nu1.masses, nu2.points, nu2.masses, tol)
    edges = [0.0] + [2.0 ** k for k in range(-8, 9)] + [INF]
    for lo, hi in zip(edges[:-1], edges[1:]):
        for p in (2.0,) if lo == 0 else ((0.0,) if hi == INF else (0.0, 1.0)):
            s1, s2 = nu1.scalar_moment(p, lo, hi), nu2.scalar_moment(p, lo, hi)
            if not math.isclose(s1, s2, rel_tol=tol, abs_tol=tol):
                return False
        if lo > 0 and hi < INF:
            v1, v2 = nu1.vector_moment(1.0, lo, hi), nu2.vector_moment(1.0, lo, hi)
            if not np.allclose(v1, v2, rtol=tol, atol=tol):
                return False
    if z is None:
        rng = np.random.default_rng(0)
        z = rng.normal(size=(4, nu1.dim)) * 2.0
    e1, e2 = nu1.exponent(z), nu2.exponent(z)
    return bool(np.allclose(e1, e2, rtol=max(tol, 1e-8), atol=max(tol, 1e-8)))
