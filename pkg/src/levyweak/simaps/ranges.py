"""Range tests for the mappings Phi_bar(p, 1), Psi(1, beta) and Lambda(q, 1).

The Levy measure is split into rays; on each ray the radial density n(u) is
rewritten as u^-2 k(v) for the change of variable v = v(u) attached to the
family (v = u, 1/u, u^beta or u^-beta), and k is tested for monotonicity of
order p or complete monotonicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DomainError
from ..levy_core.radial import AtomSeries, CustomDensity, DensityRadial, PowerExp, RadialAtoms, RadialMixture
from ..levy_core.triplet import LevyTriplet
from ..weak_moments import weak_drift, weak_mean
from .kernels import MappingKernel
from .shapes import (FAILS, HOLDS, UNKNOWN, KFunction, ShapeVerdict, completely_monotone_check, exp_power, k_sum,
                     monotone_order_check)

INF = math.inf
TIERS = ("Re", "R", "R0")
ZERO_TOL = 1e-8
MIXED = "continuous part (mixed)"


@dataclass(frozen=True)
class RangeVerdict:
    verdict: str  # holds | fails | unknown
    tier: str
    family: str
    star: bool
    structural: str
    moment_condition: str | None
    reasons: tuple

    def to_dict(self):
        return {"verdict": self.verdict, "tier": self.tier, "family": self.family, "star": self.star,
                "structural": self.structural, "moment_condition": self.moment_condition,
                "reasons": list(self.reasons)}


def _combine(verdicts):
    if FAILS in verdicts:
        return FAILS
    if all(v == HOLDS for v in verdicts):
        return HOLDS
    return UNKNOWN


# --------------------------------------------------------------------------
# radial density -> k


def _change(mode, bp):
    """(u as a function of v, map of support endpoints) for each mode."""
    if mode == "u":
        return (lambda v: v), (lambda lo, hi: (lo, hi))
    if mode == "1/u":
        return (lambda v: 1.0 / v), (lambda lo, hi: (_inv(hi), _inv(lo)))
    if mode == "u^b":
        return (lambda v: v ** (1.0 / bp)), (lambda lo, hi: (lo ** bp, hi ** bp))
    if mode == "u^-b":
        return (lambda v: v ** (-1.0 / bp)), (lambda lo, hi: (_inv(hi) ** bp, _inv(lo) ** bp))
    raise DomainError(f"unknown change of variable {mode!r}")


def _inv(x):
    return INF if x == 0 else (0.0 if x == INF else 1.0 / x)


def _power_exp_k(r: PowerExp, mode, bp, weight):
    c = r.c * weight
    a1, sg = r.beta - 1.0, r.kappa
    if mode == "u":
        a, s = a1, sg
    elif mode == "1/u":
        a, s = -a1, -sg
    elif mode == "u^b":
        a, s = a1 / bp, sg / bp
    else:
        a, s = -a1 / bp, -sg / bp
    _, supp = _change(mode, bp)
    lo, hi = supp(r.lo, r.hi)
    return exp_power(c, a, r.theta, s, lo, hi)


def _numeric_k(r: DensityRadial, mode, bp, weight):
    u_of, supp = _change(mode, bp)
    lo, hi = supp(r.lo, r.hi)

    def f(v):
        u = u_of(np.asarray(v, dtype=float))
        return weight * u * u * r.density(u)

    return KFunction(f"sampled({getattr(r, 'name', type(r).__name__)})", f, lo, hi)


def radial_to_k(radial, mode, beta_prime=1.0, weight=1.0):
    """KFunction with n(u) du = u^-2 k(v(u)) du, or None for atomic radial parts."""
    if isinstance(radial, RadialMixture):
        parts = [radial_to_k(p, mode, beta_prime, weight) for p in radial.components]
        if any(p is None for p in parts):
            return None
        return k_sum(*parts)
    if isinstance(radial, (RadialAtoms, AtomSeries)):
        return None
    if isinstance(radial, PowerExp):
        return _power_exp_k(radial, mode, beta_prime, weight)
    if isinstance(radial, (CustomDensity, DensityRadial)):
        return _numeric_k(radial, mode, beta_prime, weight)
    return None


# --------------------------------------------------------------------------
# rays


def _rays(nu, mode, bp):
    """Group the measure into rays.  Returns (list of (label, KFunction or None), notes).

    Atomic spherical parts give one ray per direction; the non-atomic part is
    a single group whose k is the sum of the components' k (exact for
    proportional spherical parts)."""
    atomic: dict = {}
    cont = []
    notes = []
    for comp in nu.components():
        sph = comp.sphere
        if sph.is_atomic or sph.dim == 1:
            dirs, w = sph.quadrature()
            for xi, wt in zip(dirs, w):
                if wt <= 0:
                    continue
                key = tuple(np.round(xi, 12))
                atomic.setdefault(key, []).append(radial_to_k(comp.radial, mode, bp, float(wt)))
        else:
            cont.append((sph, radial_to_k(comp.radial, mode, bp, float(sph.mass))))
    rays = []
    for key, ks in atomic.items():
        rays.append((f"ray {[float(x) for x in key]}", None if any(k is None for k in ks) else k_sum(*ks)))
    if cont:
        ks = [k for _, k in cont]
        if any(k is None for k in ks):
            rays.append(("continuous part", None))
        else:
            same = all(type(s).__name__ == "SphereUniform" for s, _ in cont)
            if not same and len(cont) > 1:
                notes.append("non-proportional spherical parts: a failure of the sum is not conclusive")
                rays.append((MIXED, k_sum(*ks)))
            else:
                rays.append(("continuous part", k_sum(*ks)))
    return rays, notes


def _check_k(k: KFunction, test, p):
    if test == "cm":
        return completely_monotone_check(k)
    if test == "increasing-log":
        # necessary condition: k nonincreasing (checked on the sampled grid only)
        res = monotone_order_check(k.sample(), 1.0)
        if res.verdict == HOLDS:
            return ShapeVerdict(UNKNOWN, False, "nonincreasing on the grid; higher structure not tested")
        return res
    return monotone_order_check(k, p)


def _family(kernel: MappingKernel, star: bool):
    fam, prm = kernel.family, kernel.params
    if kernel.conjugated:
        star = not star
    if fam == "phi_bar":
        p, alpha = prm
        if alpha != 1.0:
            raise DomainError("range tests cover Phi_bar(p, 1) only")
        return f"Phi_bar({p:g},1)", ("1/u" if star else "u"), 1.0, "order", p, star
    if fam == "psi":
        alpha, bp = prm
        if alpha != 1.0:
            raise DomainError("range tests cover Psi(1, beta) only")
        return f"Psi(1,{bp:g})", ("u^-b" if star else "u^b"), bp, "cm", None, star
    if fam == "lambda":
        q, alpha = prm
        if alpha != 1.0:
            raise DomainError("range tests cover Lambda(q, 1) only")
        return f"Lambda({q:g},1)", ("1/u" if star else "u"), 1.0, "increasing-log", q, star
    raise DomainError(f"no range test for kernel family {fam!r}")


def structural_check(mu: LevyTriplet, kernel: MappingKernel, star=False):
    name, mode, bp, test, p, star = _family(kernel, star)
    rays, notes = _rays(mu.nu, mode, bp)
    reasons = list(notes)
    if not rays:
        return HOLDS, ["nu = 0 lies in every range shape class"], name, star
    verdicts = []
    for label, k in rays:
        if k is None:
            verdicts.append(FAILS)
            reasons.append(f"{label}: atomic radial part, no density")
            continue
        res = _check_k(k, test, p)
        v = res.verdict
        if (v == HOLDS and not res.certified) or (v == FAILS and label == MIXED):
            v = UNKNOWN
        verdicts.append(v)
        tag = "" if res.certified else " (grid)"
        reasons.append(f"{label}: {res.verdict}{tag}; {res.reason}")
    return _combine(verdicts), reasons, name, star


def _moment_condition(mu, star, absolute):
    res = weak_drift(mu) if star else weak_mean(mu)
    what = "weak drift" if star else "weak mean"
    if res.status == "diverges":
        return FAILS, f"{what} does not exist"
    if res.status != "exists":
        return UNKNOWN, f"{what}: {res.reason or 'inconclusive'}"
    size = float(np.max(np.abs(res.value)))
    if size > ZERO_TOL:
        return FAILS, f"{what} = {np.asarray(res.value).tolist()} is not 0"
    if not absolute:
        return HOLDS, f"{what} is 0"
    if res.absolute is None:
        return UNKNOWN, f"{what} is 0; absoluteness undecided"
    if res.absolute:
        return HOLDS, f"{what} is 0 absolutely"
    return FAILS, f"{what} is 0 but not absolutely"


def range_membership(mu: LevyTriplet, kernel: MappingKernel, star: bool = False, tier: str = "R") -> RangeVerdict:
    """Three-valued membership in R^e, R or R^0 of the (conjugate) mapping."""
    if tier not in TIERS:
        raise DomainError(f"tier must be one of {TIERS}")
    struct, reasons, name, star = structural_check(mu, kernel, star)
    verdicts = [struct]
    if star and mu.A is not None and np.any(mu.A):
        verdicts.append(FAILS)
        reasons.append("Gaussian part present: conjugate ranges contain only A = 0")
    moment = None
    if tier != "Re":
        if kernel.family == "lambda":
            moment = UNKNOWN
            reasons.append(f"tier {tier} is not characterised for {name}")
        else:
            moment, why = _moment_condition(mu, star, tier == "R0")
            reasons.append(why)
        verdicts.append(moment)
    return RangeVerdict(_combine(verdicts), tier, name, star, struct, moment, tuple(reasons))
