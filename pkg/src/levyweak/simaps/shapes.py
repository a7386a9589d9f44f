"""Shape tests for the functions k in radial densities u^-2 k(.).

Two routes are available.  Registered parametric forms (:class:`KFunction`)
carry certificates derived from their integral representations, so "holds"
is conclusive for them.  Sampled grids only admit necessary conditions:
"fails" is conclusive, "holds" means that no violation was found.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from ..errors import DomainError

INF = math.inf
EPS = np.finfo(float).eps
CM_ORDER = 6

HOLDS, FAILS, UNKNOWN = "holds", "fails", "unknown"


@dataclass(frozen=True)
class ShapeVerdict:
    verdict: str  # holds | fails | unknown
    certified: bool  # True when the verdict does not rest on a finite grid
    reason: str

    def to_dict(self):
        return {"verdict": self.verdict, "certified": self.certified, "reason": self.reason}


@dataclass(frozen=True, eq=False)
class KFunction:
    """A function k on (0, inf), zero outside the support (lo, hi).

    ``cm`` is True/False when complete monotonicity is decided and None
    otherwise; ``order_rule(p)`` returns (verdict, reason) for monotonicity
    of order p derived from the registered representation."""

    name: str
    func: Callable = field(repr=False)
    lo: float = 0.0
    hi: float = INF
    cm: bool | None = None
    order_rule: Callable | None = field(default=None, repr=False)
    params: tuple = ()

    def __call__(self, v):
        v = np.asarray(v, dtype=float)
        out = np.zeros_like(v)
        inside = (v > self.lo) & (v < self.hi)
        if np.any(inside):
            out[inside] = self.func(v[inside])
        return out if out.ndim else float(out)

    def monotone_order(self, p) -> ShapeVerdict:
        if self.cm:
            return ShapeVerdict(HOLDS, True, f"{self.name} is completely monotone")
        if self.order_rule is None:
            return ShapeVerdict(UNKNOWN, False, f"no certificate for {self.name}")
        verdict, reason = self.order_rule(p)
        return ShapeVerdict(verdict, verdict != UNKNOWN, f"{self.name}: {reason}")

    def completely_monotone(self) -> ShapeVerdict:
        if self.cm is None:
            return ShapeVerdict(UNKNOWN, False, f"no certificate for {self.name}")
        return ShapeVerdict(HOLDS if self.cm else FAILS, True,
                            f"{self.name} is {'' if self.cm else 'not '}completely monotone")

    def sample(self, n=400):
        lo = self.lo / 2 if self.lo > 0 else 1e-3
        hi = 2 * self.hi if self.hi < INF else max(lo * 1e4, 50.0)
        v = np.geomspace(lo, hi, n)
        return v, self(v)


# --------------------------------------------------------------------------
# registry


def _rule_up_to(pmax, above, reason_hold, reason_above):
    def rule(p):
        if p <= pmax:
            return HOLDS, reason_hold
        return above, reason_above

    return rule


def _rule_not_decreasing(reason):
    def rule(p):
        if p >= 1:
            return FAILS, reason
        return UNKNOWN, "orders below 1 are not decided"

    return rule


def exp_power(c: float, a: float, theta: float = 0.0, s: float = 1.0, lo: float = 0.0, hi: float = INF) -> KFunction:
    """k(v) = c v^-a exp(-theta v^s) on (lo, hi), zero elsewhere."""
    if not c > 0 or theta < 0:
        raise DomainError("exp_power needs c > 0 and theta >= 0")
    if not 0 <= lo < hi:
        raise DomainError("need 0 <= lo < hi")
    if theta == 0:
        s = 1.0
    a, s = a + 0.0, s + 0.0  # drop signed zeros

    def f(v):
        return c * np.exp(-a * np.log(v) - theta * v ** s)

    name = f"exp_power(c={c:g}, a={a:g}, theta={theta:g}, s={s:g})"
    prm = (c, a, theta, s, lo, hi)
    nonincreasing = a >= 0 and (theta == 0 or s > 0)
    vanishing = a > 0 or (theta > 0 and s > 0)
    if lo > 0:
        return KFunction(name, f, lo, hi, False, _rule_not_decreasing("vanishes below lo, then jumps up"), prm)
    if hi < INF:
        if nonincreasing:
            return KFunction(name, f, lo, hi, False,
                             _rule_up_to(1.0, FAILS, "nonincreasing with a downward jump at hi",
                                         "a jump is incompatible with orders above 1"), prm)
        return KFunction(name, f, lo, hi, False, _rule_not_decreasing("increasing somewhere"), prm)
    if nonincreasing and vanishing and (theta == 0 or s <= 1):
        return KFunction(name, f, lo, hi, True, None, prm)
    if nonincreasing and vanishing:
        return KFunction(name, f, lo, hi, False,
                         _rule_up_to(1.0, UNKNOWN, "nonincreasing and vanishing at infinity",
                                     "orders above 1 are not certified"), prm)
    why = "does not vanish at infinity" if nonincreasing else "increasing somewhere"
    return KFunction(name, f, lo, hi, False, _rule_not_decreasing(why), prm)


def power(c: float, s: float) -> KFunction:
    """k(v) = c v^-s, s > 0 (completely monotone)."""
    if not s > 0:
        raise DomainError("power law needs s > 0")
    return exp_power(c, s)


def exp_mixture(weights, rates) -> KFunction:
    """k(v) = sum_i w_i exp(-r_i v) with w_i, r_i > 0 (completely monotone)."""
    w = np.asarray(weights, dtype=float)
    r = np.asarray(rates, dtype=float)
    if w.shape != r.shape or w.ndim != 1 or np.any(w <= 0) or np.any(r <= 0):
        raise DomainError("exp_mixture needs matching positive weights and rates")

    def f(v):
        return np.exp(-np.multiply.outer(v, r)) @ w

    return KFunction(f"exp_mixture({len(w)})", f, cm=True, params=(tuple(w), tuple(r)))


def truncated_power(m: float, c: float = 1.0, scale: float = 1.0) -> KFunction:
    """k(v) = c (1 - v/scale)_+^m: monotone of order p exactly when p <= m + 1, never CM."""
    if m < 0 or not c > 0 or not scale > 0:
        raise DomainError("truncated_power needs m >= 0, c > 0, scale > 0")

    def f(v):
        return c * (1.0 - v / scale) ** m

    rule = _rule_up_to(m + 1.0, FAILS, f"sigma is a point mass at {scale:g}", f"orders above {m + 1:g} fail")
    return KFunction(f"truncated_power(m={m:g})", f, 0.0, scale, False, rule, (m, c, scale))


def k_sum(*parts: KFunction) -> KFunction:
    """Sum of registered functions; a property shared by all parts is kept."""
    if not parts:
        raise DomainError("empty sum")
    if len(parts) == 1:
        return parts[0]
    lo = min(p.lo for p in parts)
    hi = max(p.hi for p in parts)

    def f(v):
        return sum(p(v) for p in parts)

    if all(p.cm for p in parts):
        cm = True
    elif hi < INF or lo > 0:
        cm = False  # a CM function is positive on all of (0, inf)
    else:
        cm = None

    def rule(p):
        verdicts = [q.monotone_order(p).verdict for q in parts]
        if all(v == HOLDS for v in verdicts):
            return HOLDS, "every summand holds"
        return UNKNOWN, "summands disagree"

    return KFunction(" + ".join(p.name for p in parts), f, lo, hi, cm, rule, tuple(parts))


# --------------------------------------------------------------------------
# grid tests


def _as_grid(samples):
    if isinstance(samples, tuple) and len(samples) == 2:
        u, k = samples
    else:
        arr = np.asarray(samples, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise DomainError("expected a grid of (u, k(u)) pairs")
        u, k = arr[:, 0], arr[:, 1]
    u = np.asarray(u, dtype=float)
    k = np.asarray(k, dtype=float)
    if u.ndim != 1 or u.shape != k.shape or len(u) < 3:
        raise DomainError("expected matching one-dimensional grids with at least 3 points")
    if np.any(np.diff(u) <= 0):
        order = np.argsort(u)
        u, k = u[order], k[order]
        if np.any(np.diff(u) <= 0):
            raise DomainError("grid abscissae must be distinct")
    if not np.all(np.isfinite(k)):
        raise DomainError("grid values must be finite")
    return u, k


def _divided_differences(u, k, n):
    """n-th divided differences on consecutive windows, with roundoff bounds."""
    m = len(u) - n
    if m <= 0:
        return np.empty(0), np.empty(0)
    vals = np.zeros(m)
    noise = np.zeros(m)
    for j in range(n + 1):
        w = np.ones(m)
        for i in range(n + 1):
            if i != j:
                w = w * (u[j:j + m] - u[i:i + m])
        vals += k[j:j + m] / w
        noise += np.abs(k[j:j + m] / w)
    # relative spacing error is O(eps) per factor, plus summation error
    return vals, 8 * (n + 2) * EPS * noise


def _grid_sign_check(u, k, orders):
    for n in orders:
        dd, noise = _divided_differences(u, k, n)
        bad = (-1) ** n * dd < -noise
        if np.any(bad):
            i = int(np.argmax(bad))
            return n, float(u[i]), float(u[min(i + n, len(u) - 1)])
    return None


def monotone_order_check(samples, p: float) -> ShapeVerdict:
    """Monotone of order p: certificate for registered functions, necessary conditions on grids."""
    if isinstance(samples, KFunction):
        cert = samples.monotone_order(p)
        if cert.verdict != UNKNOWN:
            return cert
        grid = monotone_order_check(samples.sample(), p)
        if grid.verdict == FAILS:
            return grid
        return ShapeVerdict(UNKNOWN, False, f"{cert.reason}; grid test found no violation")
    u, k = _as_grid(samples)
    if p < 1:
        return ShapeVerdict(UNKNOWN, False, "grid tests cover p >= 1 only")
    if np.any(k < 0):
        return ShapeVerdict(FAILS, True, "negative values on the grid")
    orders = [0, 1] if p < 2 else [0, 1, 2]
    hit = _grid_sign_check(u, k, orders)
    if hit is not None:
        n, a, b = hit
        what = "increasing" if n == 1 else "not convex"
        return ShapeVerdict(FAILS, True, f"{what} on [{a:g}, {b:g}]")
    return ShapeVerdict(HOLDS, False, f"no violation of the order-{min(p, 2):g} necessary conditions on the grid")


def completely_monotone_check(samples) -> ShapeVerdict:
    """Complete monotonicity: certificate for registered functions; alternating
    divided differences up to order 6 on grids."""
    if isinstance(samples, KFunction):
        cert = samples.completely_monotone()
        if cert.verdict != UNKNOWN:
            return cert
        grid = completely_monotone_check(samples.sample())
        if grid.verdict == FAILS:
            return grid
        return ShapeVerdict(UNKNOWN, False, f"{cert.reason}; grid test found no violation")
    u, k = _as_grid(samples)
    if np.any(k < 0):
        return ShapeVerdict(FAILS, True, "negative values on the grid")
    hit = _grid_sign_check(u, k, range(CM_ORDER + 1))
    if hit is not None:
        n, a, b = hit
        return ShapeVerdict(FAILS, True, f"divided difference of order {n} has the wrong sign on [{a:g}, {b:g}]")
    return ShapeVerdict(HOLDS, False, f"alternating divided differences hold up to order {CM_ORDER} on the grid")
