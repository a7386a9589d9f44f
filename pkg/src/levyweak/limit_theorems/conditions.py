"""Tail and small-jump condition curves, and the exponent-level convergence diagnostic."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .._numerics import classify_trend
from ..errors import NumericalError
from ..levy_core.radial import INF
from ..levy_core.triplet import LevyTriplet, char_exponent

DEFAULT_K = 30
DIAG_K = 20


@dataclass(frozen=True)
class ConditionCurve:
    name: str  # tail | small-jump | diagnostic
    grid: np.ndarray
    values: np.ndarray  # nan marks a failed grid point
    classification: str  # tends-to-zero | bounded-away | inconclusive
    exponent: float | None = None  # d log(value) / d log(scale)
    failed: tuple = field(default=())

    def to_dict(self):
        return {"name": self.name, "grid": self.grid.tolist(),
                "values": [None if not np.isfinite(v) else float(v) for v in self.values],
                "classification": self.classification, "exponent": self.exponent,
                "failed_points": list(self.failed)}


def _curve(name, grid, fn, toward):
    vals = np.empty(len(grid))
    failed = []
    for i, s in enumerate(grid):
        try:
            vals[i] = fn(s)
        except NumericalError:
            vals[i] = np.nan
            failed.append(float(s))
    ok = np.isfinite(vals)
    if ok.sum() < 3:
        cls, expo = "inconclusive", None
    else:
        cls, expo = classify_trend(grid[ok], np.maximum(vals[ok], 0.0), toward)
        if failed and cls != "inconclusive" and not ok[-1]:
            cls = "inconclusive"
    return ConditionCurve(name, np.asarray(grid, dtype=float), vals, cls, expo, tuple(failed))


def _nu(x):
    return x.nu if isinstance(x, LevyTriplet) else x


def wlln_tail_condition(nu, K=DEFAULT_K) -> ConditionCurve:
    """T(t) = t nu(|x| > t) on t = 2^k, k = 0..K."""
    nu = _nu(nu)
    grid = 2.0 ** np.arange(K + 1)
    return _curve("tail", grid, lambda t: t * nu.scalar_moment(0.0, t, INF), "inf")


def shtatland_small_condition(nu, K=DEFAULT_K) -> ConditionCurve:
    """S(eps) = eps^-1 int_{|x|<=eps} |x|^2 nu(dx) on eps = 2^-k, k = 0..K."""
    nu = _nu(nu)
    grid = 2.0 ** -np.arange(K + 1)
    return _curve("small-jump", grid, lambda e: nu.scalar_moment(2.0, 0.0, e) / e, "zero")


def compensation_trace(nu, K=DEFAULT_K):
    """t int_{|x|>t} x/|x| nu(dx) on t = 2^k (reported as evidence only)."""
    nu = _nu(nu)
    return [(float(t), (t * nu.vector_moment(0.0, t, INF)).tolist()) for t in 2.0 ** np.arange(K + 1)]


def default_z_grid(dim, n=None, seed=3):
    if n is None:
        n = 16 if dim == 1 else 8
    if dim == 1:
        return np.concatenate([-np.geomspace(0.25, 4.0, n // 2), np.geomspace(0.25, 4.0, n // 2)])[:, None]
    rng = np.random.default_rng(seed)
    return rng.normal(size=(n, dim))


def delta_convergence_diagnostic(mu: LevyTriplet, c, direction="inf", K=DIAG_K, z=None) -> ConditionCurve:
    """D(t) = max_z |t psi(z/t) - i<c, z>| as t -> inf (direction 'inf') or,
    with eps = 1/t, as eps -> 0 (direction 'zero')."""
    c = np.zeros(mu.dim) if c is None else np.atleast_1d(np.asarray(c, dtype=float))
    Z = default_z_grid(mu.dim) if z is None else np.atleast_2d(np.asarray(z, dtype=float))
    target = 1j * (Z @ c)
    if direction == "inf":
        grid = 2.0 ** np.arange(K + 1)
    elif direction == "zero":
        grid = 2.0 ** -np.arange(K + 1)
    else:
        raise ValueError("direction must be 'inf' or 'zero'")

    def fn(s):
        # law of s^-1 X_s has exponent s psi(z / s)
        return float(np.max(np.abs(s * char_exponent(mu, Z / s) - target)))

    return _curve("diagnostic", grid, fn, direction)
