"""Weak law of large numbers and weak Shtatland verdicts, and their duality under inversion."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import DomainError
from ..inversion import invert
from ..levy_core.triplet import LevyTriplet
from ..weak_moments import WeakMomentResult, weak_drift, weak_mean
from .conditions import (ConditionCurve, compensation_trace, delta_convergence_diagnostic, shtatland_small_condition,
                         wlln_tail_condition)

DUAL_TOL = 1e-8


@dataclass(frozen=True)
class LimitVerdict:
    theorem: str  # WLLN | Shtatland
    verdict: str  # holds | fails | inconclusive
    c: np.ndarray | None
    moment: WeakMomentResult
    condition: ConditionCurve
    diagnostic: ConditionCurve
    notes: tuple = ()
    extra: dict = field(default_factory=dict)

    @property
    def diagnostic_agrees(self):
        if self.verdict == "holds":
            return self.diagnostic.classification == "tends-to-zero"
        if self.verdict == "fails":
            return self.diagnostic.classification != "tends-to-zero"
        return True

    def to_dict(self):
        return {
            "theorem": self.theorem,
            "verdict": self.verdict,
            "c": None if self.c is None else np.asarray(self.c).tolist(),
            "evidence": {
                "moment": self.moment.to_dict(),
                "condition": self.condition.to_dict(),
                "diagnostic": self.diagnostic.to_dict(),
                "diagnostic_agrees": self.diagnostic_agrees,
                **self.extra,
            },
            "notes": list(self.notes),
        }


def _decide(moment: WeakMomentResult, curve: ConditionCurve):
    if moment.status == "diverges" or curve.classification == "bounded-away":
        return "fails"
    if moment.status == "exists" and curve.classification == "tends-to-zero":
        return "holds"
    return "inconclusive"


@dataclass(frozen=True)
class LawRoute:
    """Integrals against mu itself: truncated_mean(t) = int_{|x|<=t} x mu(dx) and
    tail_probability(t) = mu(|x| > t)."""

    truncated_mean: Callable
    tail_probability: Callable


def _route_iii(route: LawRoute, c, verdict, K=20):
    grid = 2.0 ** np.arange(4, K + 1)
    means = np.array([np.atleast_1d(route.truncated_mean(t)) for t in grid])
    tails = np.array([t * route.tail_probability(t) for t in grid])
    mean_ok = c is not None and float(np.max(np.abs(means[-1] - c))) < 1e-3
    tail_ok = bool(tails[-1] < 1e-3 and tails[-1] <= tails[len(tails) // 2])
    consistent = (mean_ok and tail_ok) == (verdict == "holds") if verdict != "inconclusive" else None
    return {"grid": grid.tolist(), "truncated_means": means.tolist(), "t_tail": tails.tolist(),
            "consistent": consistent}


def wlln_verdict(mu: LevyTriplet, K=30, law_route: LawRoute | None = None) -> LimitVerdict:
    """t^-1 X_t -> c in law iff mu has weak mean c and t nu(|x| > t) -> 0."""
    wm = weak_mean(mu)
    curve = wlln_tail_condition(mu.nu, K)
    verdict = _decide(wm, curve)
    c = wm.value if wm.status == "exists" else None
    diag = delta_convergence_diagnostic(mu, c, "inf")
    notes = []
    extra = {"compensation_trace": compensation_trace(mu.nu, min(K, 20))}
    if law_route is None:
        notes.append("integrals against mu itself not supplied; route through mu skipped")
    else:
        extra["law_route"] = _route_iii(law_route, c, verdict)
        if extra["law_route"]["consistent"] is False:
            notes.append("route through mu disagrees with the condition route")
    return LimitVerdict("WLLN", verdict, c if verdict == "holds" else None, wm, curve, diag, tuple(notes), extra)


def shtatland_verdict(mu: LevyTriplet, K=30) -> LimitVerdict:
    """eps^-1 X_eps -> c in law as eps -> 0 iff mu has weak drift c and
    eps^-1 int_{|x|<=eps} |x|^2 nu(dx) -> 0 (Gaussian-free mu only)."""
    if not mu.gaussian_free:
        raise DomainError("the weak Shtatland theorem is stated for laws without Gaussian part")
    wd = weak_drift(mu)
    curve = shtatland_small_condition(mu.nu, K)
    verdict = _decide(wd, curve)
    c = wd.value if wd.status == "exists" else None
    diag = delta_convergence_diagnostic(mu, c, "zero")
    return LimitVerdict("Shtatland", verdict, c if verdict == "holds" else None, wd, curve, diag)


@dataclass(frozen=True)
class LimitDualityReport:
    shtatland: LimitVerdict
    wlln_of_inverse: LimitVerdict
    passed: bool | None  # None when a side is inconclusive
    c_error: float | None

    def to_dict(self):
        return {"shtatland": self.shtatland.to_dict(), "wlln_of_inverse": self.wlln_of_inverse.to_dict(),
                "passed": self.passed, "c_error": self.c_error}


def duality_check(mu: LevyTriplet, K=30) -> LimitDualityReport:
    """Shtatland for mu with constant c against WLLN for mu' with constant -c."""
    if not mu.gaussian_free:
        raise DomainError("duality of the limit theorems needs A = 0")
    sv = shtatland_verdict(mu, K)
    wv = wlln_verdict(invert(mu), K)
    err = None
    if "inconclusive" in (sv.verdict, wv.verdict):
        passed = None
    elif sv.verdict != wv.verdict:
        passed = False
    elif sv.verdict == "holds":
        err = float(np.max(np.abs(sv.c + wv.c)))
        passed = err <= DUAL_TOL
    else:
        passed = True
    return LimitDualityReport(sv, wv, passed, err)
