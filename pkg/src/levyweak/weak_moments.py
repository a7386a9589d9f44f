"""Weak means and weak drifts: limits of truncated first moments of nu.

Truncated integrals are tabulated on geometric grids (a = 2^k for the tail,
eps = 2^-k near the origin) and handed to :func:`detect_limit`.  When the
ordinary mean or drift exists the answer is known analytically and the grid
only serves as a trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._numerics import detect_limit
from .errors import DomainError, NumericalError
from .levy_core.measures import LevyMeasure, PolarProduct, Stable
from .levy_core.radial import INF, AtomSeries, CustomDensity, PowerExp, RadialAtoms, RadialMixture
from .levy_core.triplet import LevyTriplet, char_exponent, drift_of, mean_of

DEFAULT_LEVELS = 60
LIMIT_TOL = 1e-8
VERIFY_TOL = 1e-6
ZERO_TOL = 1e-12


@dataclass(frozen=True)
class WeakMomentResult:
    kind: str  # weak-mean | weak-drift
    status: str  # exists | diverges | inconclusive
    value: np.ndarray | None
    absolute: bool | None  # None: unknown
    trace: tuple = field(default=(), repr=False)  # ((level, partial vector), ...)
    accelerated: bool = False
    reason: str = ""
    verification: float | None = None  # max residual of the exponent check

    def to_dict(self):
        return {
            "kind": self.kind,
            "status": self.status,
            "value": None if self.value is None else np.asarray(self.value).tolist(),
            "absolute": "unknown" if self.absolute is None else self.absolute,
            "accelerated": self.accelerated,
            "reason": self.reason,
            "verification_residual": self.verification,
            "trace": [[float(lv), np.asarray(p).tolist()] for lv, p in self.trace],
        }


def tail_moment(nu: LevyMeasure, a: float) -> np.ndarray:
    """int_{1<|x|<=a} x nu(dx)."""
    if not a > 1:
        raise DomainError("a must exceed 1")
    return nu.vector_moment(1.0, 1.0, a)


def small_moment(nu: LevyMeasure, eps: float) -> np.ndarray:
    """int_{eps<|x|<=1} x nu(dx)."""
    if not 0 < eps < 1:
        raise DomainError("eps must lie in (0, 1)")
    return nu.vector_moment(1.0, eps, 1.0)


# --------------------------------------------------------------------------
# absolute variants: total variation of the vector measure r * sum_k m_k nubar_k(dr)


def _shape_terms(radial, coef, end):
    """Split a radial measure into (shape key, vector coefficient, finite?) terms
    describing its behaviour near ``end``.  Terms with the same key are the
    same measure up to a scalar multiple near that end."""
    if isinstance(radial, RadialMixture):
        out = []
        for part in radial.components:
            out.extend(_shape_terms(part, coef, end))
        return out
    finite = radial.moment_finite(1.0, end)
    if isinstance(radial, RadialAtoms):
        return [(("atoms", id(radial)), coef, True)]
    if isinstance(radial, PowerExp):
        key = ("power_exp", radial.beta, radial.theta, radial.kappa)
        return [(key, coef * radial.c, finite)]
    if isinstance(radial, AtomSeries):
        key = ("atom_series", radial.radius0, radial.ratio, radial.mass_ratio, radial.power, radial.start,
               radial.step, radial.stop)
        return [(key, coef * radial.mass0, finite)]
    if isinstance(radial, CustomDensity):
        return [(("custom", id(radial.func)), coef, finite)]
    return [(("other", id(radial)), coef, finite)]


def _absolute_condition(nu: LevyMeasure, end: str):
    groups: dict = {}
    for comp in nu.components():
        m = comp.first_moment
        if not np.any(np.abs(m) > ZERO_TOL):
            continue
        for key, coef, finite in _shape_terms(comp.radial, m, end):
            if finite is True:
                continue
            g = groups.setdefault(key, [np.zeros(nu.dim), finite])
            g[0] = g[0] + coef
            if finite is None:
                g[1] = None
    verdict = True
    for net, finite in groups.values():
        if np.linalg.norm(net) <= ZERO_TOL:
            continue
        if finite is False:
            return False
        verdict = None
    return verdict


def weak_mean_absolute(mu) -> bool | None:
    """Whether int_{(1,inf)} r nubar(dr) |int_S xi lambda_r(d xi)| < inf (None: unknown)."""
    nu = mu.nu if isinstance(mu, LevyTriplet) else mu
    return _absolute_condition(nu, "inf")


def weak_drift_absolute(mu) -> bool | None:
    """Whether int_{(0,1]} r nubar(dr) |int_S xi lambda_r(d xi)| < inf (None: unknown)."""
    nu = mu.nu if isinstance(mu, LevyTriplet) else mu
    return _absolute_condition(nu, "zero")


# --------------------------------------------------------------------------


def _z_grid(dim, n=16, seed=7):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(n, dim)) * np.linspace(0.2, 3.0, n)[:, None]


def _settled_residual(seq, target):
    """Limit of a sequence of complex z-vectors (accelerated if needed) minus ``target``."""
    seq = np.asarray(seq)
    det = detect_limit(np.hstack([seq.real, seq.imag]), tol=LIMIT_TOL)
    if det.status != "exists":
        return None
    n = seq.shape[1]
    lim = det.value[:n] + 1j * det.value[n:]
    return float(np.max(np.abs(lim - target)))


def verify_weak_mean(mu: LevyTriplet, m, levels=40, z=None):
    """Check that lim_a int_{|x|<=a} (e^{i<z,x>} - 1 - i<z,x>) nu(dx) + i<m,z> equals psi(z).

    Returns the maximal residual over the z-grid, or None if the truncated
    exponents do not settle."""
    z = _z_grid(mu.dim) if z is None else z
    target = char_exponent(mu, z) + 0.5 * np.einsum("ni,ij,nj->n", z, mu.A, z) - 1j * (z @ m)
    acc = mu.nu.exponent(z, 0.0, 1.0)
    seq = []
    lo = 1.0
    for k in range(1, levels + 1):
        hi = 2.0 ** k
        acc = acc + mu.nu.exponent(z, lo, hi) - 1j * (z @ mu.nu.vector_moment(1.0, lo, hi))
        seq.append(acc.copy())
        lo = hi
    return _settled_residual(seq, target)


def verify_weak_drift(mu: LevyTriplet, g0, levels=40, z=None):
    """Check that lim_eps int_{|x|>eps} (e^{i<z,x>} - 1) nu(dx) + i<g0,z> equals psi(z)."""
    z = _z_grid(mu.dim) if z is None else z
    target = char_exponent(mu, z) + 0.5 * np.einsum("ni,ij,nj->n", z, mu.A, z) - 1j * (z @ g0)
    acc = mu.nu.exponent(z, 1.0, INF)
    seq = []
    hi = 1.0
    for k in range(1, levels + 1):
        lo = 2.0 ** -k
        acc = acc + mu.nu.exponent(z, lo, hi) + 1j * (z @ mu.nu.vector_moment(1.0, lo, hi))
        seq.append(acc.copy())
        hi = lo
    return _settled_residual(seq, target)


def _finish(kind, mu, partials, levels, exact, absolute, verify, verifier):
    trace = tuple((lv, p) for lv, p in zip(levels, partials))
    if exact is not None:
        res = dict(status="exists", value=exact, absolute=True, reason="ordinary moment exists")
    else:
        det = detect_limit(np.array(partials), tol=LIMIT_TOL)
        if det.status == "exists":
            value = det.value
            res = dict(status="exists", value=value, absolute=absolute, accelerated=det.accelerated, reason=det.reason)
        else:
            if absolute is True:
                raise NumericalError(f"{kind}: absolute condition holds but the truncated integrals did not settle")
            res = dict(status=det.status, value=None, absolute=False if det.status == "diverges" else absolute,
                       reason=det.reason)
    ver = None
    if verify and res["status"] == "exists":
        try:
            ver = verifier(mu, res["value"])
        except NumericalError:
            ver = None
    return WeakMomentResult(kind, res["status"], res["value"], res["absolute"], trace,
                            res.get("accelerated", False), res["reason"], ver)


def weak_mean(mu: LevyTriplet, levels=DEFAULT_LEVELS, verify=False) -> WeakMomentResult:
    grid = [2.0 ** k for k in range(1, levels + 1)]
    partials = [mu.gamma + tail_moment(mu.nu, a) for a in grid]
    mean = mean_of(mu)
    exact = mean.value if mean.defined else None
    absolute = True if exact is not None else weak_mean_absolute(mu)
    return _finish("weak-mean", mu, partials, grid, exact, absolute, verify, verify_weak_mean)


def weak_drift(mu: LevyTriplet, levels=DEFAULT_LEVELS, verify=False) -> WeakMomentResult:
    grid = [2.0 ** -k for k in range(1, levels + 1)]
    partials = [mu.gamma - small_moment(mu.nu, e) for e in grid]
    drift = drift_of(mu)
    exact = drift.value if drift.defined else None
    absolute = True if exact is not None else weak_drift_absolute(mu)
    return _finish("weak-drift", mu, partials, grid, exact, absolute, verify, verify_weak_drift)


# --------------------------------------------------------------------------


def _polar_parts(nu):
    if isinstance(nu, (PolarProduct, Stable)):
        return nu.sphere, nu.radial
    raise DomainError("Levy measure is not of polar product type")


@dataclass(frozen=True)
class PolarEquivalenceReport:
    conditions: dict  # name -> True / False / None
    agreed: bool
    value: bool | None

    def to_dict(self):
        return {"conditions": {k: ("unknown" if v is None else v) for k, v in self.conditions.items()},
                "agreed": self.agreed, "value": self.value}


def polar_equivalence_report(mu: LevyTriplet, levels=DEFAULT_LEVELS) -> PolarEquivalenceReport:
    """Evaluate the five equivalent conditions for a polar-product nu with
    int_{|x|<=1} |x| nu(dx) = inf, each by its own route."""
    sphere, _ = _polar_parts(mu.nu)
    if mu.nu.moment_finite(1.0, "zero") is not False:
        raise DomainError("requires int_{|x|<=1} |x| nu(dx) = inf")
    wd = weak_drift(mu, levels)
    c1 = {"exists": True, "diverges": False}.get(wd.status)
    seq = [small_moment(mu.nu, 2.0 ** -k) for k in range(1, levels + 1)]
    det = detect_limit(np.array(seq), tol=LIMIT_TOL)
    if det.status == "exists":
        c2 = bool(np.linalg.norm(det.value) < LIMIT_TOL)
    else:
        c2 = False if det.status == "diverges" else None
    c3 = weak_drift_absolute(mu)
    c4 = None if (c2 is None or c3 is None) else (c2 and c3)
    c5 = bool(np.linalg.norm(sphere.first_moment()) <= ZERO_TOL)
    conds = {"weak_drift_exists": c1, "small_moment_to_zero": c2, "weak_drift_absolute": c3,
             "absolute_and_to_zero": c4, "sphere_mean_zero": c5}
    known = [v for v in conds.values() if v is not None]
    agreed = len(set(known)) <= 1 and len(known) == len(conds)
    return PolarEquivalenceReport(conds, agreed, known[0] if agreed else None)


def strict_one_stability_check(mu: LevyTriplet) -> bool:
    """A 1-stable law with nonzero nu is strictly 1-stable iff int_S xi lambda(d xi) = 0."""
    nu = mu.nu
    if isinstance(nu, Stable):
        alpha = nu.alpha
    elif isinstance(nu, PolarProduct) and isinstance(nu.radial, PowerExp) and nu.radial.theta == 0 \
            and nu.radial.lo == 0 and nu.radial.hi == INF:
        alpha = nu.radial.beta
    else:
        raise DomainError("expected a stable Levy measure")
    if alpha != 1.0:
        raise DomainError("strict 1-stability check needs alpha = 1")
    verdict = bool(np.linalg.norm(nu.sphere.first_moment()) <= ZERO_TOL)
    rep = polar_equivalence_report(mu)
    if not rep.agreed or rep.value != verdict:
        raise NumericalError("strict 1-stability cross-check against the polar conditions failed")
    return verdict
