"""Shared numerical helpers: stable oscillatory kernels, checked quadrature,
limit detection along geometric grids, and trend classification."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate

from .errors import NumericalError

QUAD_ABS_TOL = 1e-13
QUAD_REL_TOL = 1e-11
# Reported failure threshold: quad estimates above this are treated as failures.
QUAD_FAIL_TOL = 1e-7


def cos_minus_one(x):
    """cos(x) - 1 without cancellation."""
    s = np.sin(0.5 * np.asarray(x, dtype=float))
    return -2.0 * s * s


def sin_minus_id(x):
    """sin(x) - x, using a series near zero."""
    x = np.asarray(x, dtype=float)
    out = np.sin(x) - x
    small = np.abs(x) < 0.1
    if np.any(small):
        xs = x[small]
        x2 = xs * xs
        out[small] = -xs * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    return out


def expi_minus_one(x):
    """e^{ix} - 1."""
    return cos_minus_one(x) + 1j * np.sin(np.asarray(x, dtype=float))


def expi_compensated(x):
    """e^{ix} - 1 - ix."""
    return cos_minus_one(x) + 1j * sin_minus_id(x)


def quad(func, a, b, *, atol=QUAD_ABS_TOL, rtol=QUAD_REL_TOL, fail_tol=QUAD_FAIL_TOL, **kwargs):
    """scipy quad that raises :class:`NumericalError` instead of warning."""
    kwargs.setdefault("limit", 400)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        val, err = integrate.quad(func, a, b, epsabs=atol, epsrel=rtol, **kwargs)
    if not np.isfinite(val) or err > max(fail_tol, 1e-6 * abs(val)):
        raise NumericalError(f"quadrature on [{a}, {b}] did not converge", estimate=err)
    return val


@lru_cache(maxsize=None)
def gauss_legendre(n):
    return np.polynomial.legendre.leggauss(n)


def gl_integrate(func, a, b, n=48):
    """Fixed-order Gauss-Legendre on [a, b]; ``func`` must accept an array of nodes.

    Returns (value, error estimate) where the estimate is the difference to the
    half-order rule.  Works for array-valued integrands (nodes on axis 0).
    """
    x, w = gauss_legendre(n)
    xh, wh = gauss_legendre(n // 2)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    vals = np.asarray(func(mid + half * x))
    valsh = np.asarray(func(mid + half * xh))
    full = half * np.tensordot(w, vals, axes=(0, 0))
    low = half * np.tensordot(wh, valsh, axes=(0, 0))
    return full, np.max(np.abs(full - low))


@dataclass(frozen=True)
class LimitDetection:
    status: str  # "exists" | "diverges" | "inconclusive"
    value: np.ndarray | None
    accelerated: bool = False
    reason: str = ""


def detect_limit(partials, tol=1e-8, window=4, bound=1e8, max_levels=10):
    """Decide whether a sequence of partial integrals converges.

    ``partials`` has shape (K,) or (K, d), evaluated along a geometric grid.
    The sequence "exists" when the last ``window`` increments are below ``tol``
    (directly, or after repeated pairwise averaging when the raw increments
    decay but alternate).  It "diverges" when increments stop shrinking while
    keeping one direction, or when the partials exceed ``bound`` while growing.
    Anything else is "inconclusive"; no value is coerced in that case.
    """
    P = np.asarray(partials, dtype=float)
    if P.ndim == 1:
        P = P[:, None]
    if len(P) < 2 * window + 2:
        return LimitDetection("inconclusive", None, reason="grid too short")
    D = np.diff(P, axis=0)
    dn = np.linalg.norm(D, axis=1)

    if np.all(dn[-window:] < tol):
        return LimitDetection("exists", P[-1].copy(), reason="raw increments below tolerance")

    q = len(dn) // 4
    decaying = q > 0 and np.max(dn[-q:]) < 0.9 * np.max(dn[q:2 * q])

    tail = D[-2 * window:]
    same_direction = np.all(tail @ D[-1] > 0)
    if same_direction and dn[-1] >= 0.999 * dn[-2 * window] and dn[-1] > tol:
        return LimitDetection("diverges", None, reason="increments do not shrink and keep one direction")
    pn = np.linalg.norm(P, axis=1)
    if pn[-1] > bound and np.all(np.diff(pn[-window:]) > 0):
        return LimitDetection("diverges", None, reason="partials exceed bound with monotone growth")

    if decaying:
        geo = _aitken_limit(P, tol, window)
        if geo is not None:
            return LimitDetection("exists", geo, accelerated=True,
                                  reason="increments decay geometrically; extrapolated limit is stable")
        S = P.copy()
        lo = P[-2 * window:].min(axis=0) - tol
        hi = P[-2 * window:].max(axis=0) + tol
        for _ in range(max_levels):
            S = 0.5 * (S[1:] + S[:-1])
            if len(S) < window + 1:
                break
            sd = np.linalg.norm(np.diff(S, axis=0), axis=1)
            if np.all(sd[-window:] < tol):
                val = S[-1]
                if np.all(val >= lo) and np.all(val <= hi):
                    return LimitDetection("exists", val.copy(), accelerated=True,
                                          reason="averaged partials settle inside the bracket of raw partials")
                break
    return LimitDetection("inconclusive", None, reason="no convergence or divergence pattern detected")


def _aitken_limit(P, tol, window, max_ratio=0.95, levels=3):
    """Iterated Aitken extrapolation for sequences whose increments shrink by a
    roughly constant factor.  Returns the limit or None."""
    D = np.diff(P, axis=0)
    dn = np.linalg.norm(D, axis=1)
    tail = dn[-2 * window:]
    if np.any(tail == 0) or np.any(tail[1:] / tail[:-1] > max_ratio):
        return None
    S = P
    for _ in range(levels):
        if len(S) < 2 * window + 3:
            return None
        d1 = S[1:-1] - S[:-2]
        d2 = S[2:] - 2 * S[1:-1] + S[:-2]
        with np.errstate(divide="ignore", invalid="ignore"):
            corr = np.where(np.abs(d2) > 0, d1 * d1 / d2, 0.0)
        S = S[:-2] - corr
        sd = np.linalg.norm(np.diff(S[-window - 1:], axis=0), axis=1)
        if np.all(np.isfinite(S[-1])) and np.all(sd < tol):
            return S[-1].copy()
    return None


TREND_DECAY_SLOPE = -0.1
TREND_FLAT_SLOPE = 0.05
TREND_FLOOR = 1e-6


def classify_trend(scales, values, toward="inf", decay_slope=TREND_DECAY_SLOPE,
                   flat_slope=TREND_FLAT_SLOPE, floor=TREND_FLOOR):
    """Classify a nonnegative curve as the scale goes to ``toward`` (inf or zero).

    Uses a log-log fit over the trailing half of the grid.  Returns
    (classification, exponent) where exponent is d log(value) / d log(scale)
    (None when the trailing values vanish).
    """
    scales = np.asarray(scales, dtype=float)
    values = np.asarray(values, dtype=float)
    n = len(values)
    tail = slice(n // 2, n)
    ts, tv = scales[tail], values[tail]
    if np.all(tv <= 0.0):
        return "tends-to-zero", None
    if tv[-1] <= 0.0:
        # curve hits exactly zero at the end of the grid (e.g. compact support)
        return "tends-to-zero", None
    pos = tv > 0.0
    if pos.sum() < 3:
        return "inconclusive", None
    slope = float(np.polyfit(np.log(ts[pos]), np.log(tv[pos]), 1)[0])
    directed = slope if toward == "inf" else -slope
    if directed < decay_slope and tv[-1] < tv[0]:
        return "tends-to-zero", slope
    if abs(directed) <= flat_slope and tv.min() > floor:
        return "bounded-away", slope
    if directed > flat_slope and tv.min() > floor:
        return "bounded-away", slope
    return "inconclusive", slope
