"""Measures on (0, inf) used as radial parts of Levy measures.

Every family knows how to integrate powers of r over intervals, decide
whether such integrals are finite near 0 or near infinity, push itself
forward under r -> b r (dilation) and under r -> 1/r with weight r^2
(inversion), and evaluate

    I(u) = int (e^{iur} - 1 - iur 1_{r<=1}) nu(dr).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import mpmath
import numpy as np
from scipy import special

from .._numerics import expi_compensated, expi_minus_one, quad
from ..errors import DomainError, NumericalError

INF = math.inf
SNAP_TOL = 1e-12
# |u| r below this uses the small-argument series for the remainder near 0.
SERIES_CUTOFF = 1e-3
# |u| r above this switches a piece to the weighted (oscillatory) quadrature.
OSC_CUTOFF = 50.0


def _sin_minus_id_scalar(x):
    if abs(x) < 0.1:
        x2 = x * x
        return -x * x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0)))
    return math.sin(x) - x


def _inv(x):
    if x == 0:
        return INF
    if x == INF:
        return 0.0
    return 1.0 / x


def _in_interval(r, a, b, include_a, include_b):
    r = np.asarray(r, dtype=float)
    left = r >= a if include_a else r > a
    right = r <= b if include_b else r < b
    return left & right


class RadialMeasure:
    """Interface shared by all radial families."""

    is_atomic = False

    def moment(self, p, a=0.0, b=INF, include_a=False, include_b=True):
        """int_{a<r<=b} r^p nu(dr) (endpoint inclusion configurable); may be inf."""
        raise NotImplementedError

    def moment_finite(self, p, end):
        """Whether int r^p nu(dr) is finite near ``end`` ('zero' or 'inf').

        Returns True, False, or None when the answer is inconclusive.
        """
        raise NotImplementedError

    def mass(self, a=0.0, b=INF):
        return self.moment(0.0, a, b)

    def mass_at(self, r0):
        return 0.0

    def exponent(self, u):
        """I(u) for an array of real u (returns complex array of the same shape)."""
        u = np.asarray(u, dtype=float)
        return self.exponent_restricted(u, 0.0, INF)

    def exponent_restricted(self, u, a, b):
        """Same integrand as :meth:`exponent` restricted to a < r <= b."""
        raise NotImplementedError

    def dilate(self, b):
        raise NotImplementedError

    def invert(self):
        raise NotImplementedError

    def scaled(self, t):
        raise NotImplementedError

    def parts(self):
        return [self]

    def sample(self, rng, n, lo=0.0):
        """Draw n radii from nu restricted to (lo, inf), normalised."""
        raise NotImplementedError


# --------------------------------------------------------------------------
# absolutely continuous families


class DensityRadial(RadialMeasure):
    """Base class for radial measures with a density on (lo, hi)."""

    lo: float
    hi: float

    def density(self, r):
        raise NotImplementedError

    def _rho(self, x):
        """Scalar density evaluation used inside quadrature loops."""
        return float(self.density(x))

    def _mom(self, p, A, B):
        """int_A^B r^p rho(r) dr for lo <= A < B <= hi."""
        raise NotImplementedError

    def moment(self, p, a=0.0, b=INF, include_a=False, include_b=True):
        A, B = max(a, self.lo), min(b, self.hi)
        if not B > A:
            return 0.0
        return self._mom(p, A, B)

    # -- characteristic exponent, numeric route ----------------------------

    def exponent_restricted(self, u, a, b):
        u = np.asarray(u, dtype=float)
        out = np.zeros(u.shape, dtype=complex)
        A, B = max(a, self.lo), min(b, self.hi)
        if not B > A:
            return out
        flat = u.reshape(-1)
        # the integral at -u is the conjugate of the one at u
        mags, inv = np.unique(np.abs(flat), return_inverse=True)
        vals = np.zeros(len(mags), dtype=complex)
        for j, m in enumerate(mags):
            if m == 0.0:
                continue
            if A < 1.0:
                vals[j] += self._inner(m, A, min(B, 1.0))
            if B > 1.0:
                vals[j] += self._outer(m, max(A, 1.0), B)
        res = vals[inv.reshape(-1)]
        res = np.where(flat < 0, np.conj(res), res)
        return res.reshape(u.shape)

    def _piece(self, u, l, r, compensate):
        """int_l^r (e^{iur} - 1 - iur [compensate]) rho(r) dr on a bounded piece."""
        au = abs(u)
        sgn = 1.0 if u > 0 else -1.0
        rho = self._rho
        if au * r <= OSC_CUTOFF:
            re = quad(lambda x: -2.0 * math.sin(0.5 * u * x) ** 2 * rho(x), l, r)
            if compensate:
                im = quad(lambda x: _sin_minus_id_scalar(u * x) * rho(x), l, r)
            else:
                im = quad(lambda x: math.sin(u * x) * rho(x), l, r)
            return re + 1j * im
        c = quad(rho, l, r, weight="cos", wvar=au)
        s = quad(rho, l, r, weight="sin", wvar=au)
        re = c - self._mom(0.0, l, r)
        im = sgn * s
        if compensate:
            im -= u * self._mom(1.0, l, r)
        return re + 1j * im

    def _inner(self, u, A, top):
        """Compensated integral over (A, top] with top <= 1."""
        au = abs(u)
        total = 0.0 + 0.0j
        right = top
        while right > A:
            left = max(A, 0.5 * right)
            if au * right < SERIES_CUTOFF and A < left * (1 - 1e-15):
                left = A
            if left == A and au * right < SERIES_CUTOFF:
                m2 = self._mom(2.0, A, right) if right > A else 0.0
                m3 = self._mom(3.0, A, right)
                m4 = self._mom(4.0, A, right)
                m5 = self._mom(5.0, A, right)
                total += (-u * u / 2 * m2 + u ** 4 / 24 * m4) + 1j * (-u ** 3 / 6 * m3 + u ** 5 / 120 * m5)
                break
            total += self._piece(u, left, right, True)
            right = left
        return total

    def _outer(self, u, A, B):
        """Uncompensated integral over (A, B] with A >= 1."""
        au = abs(u)
        total = 0.0 + 0.0j
        left = A
        if B < INF:
            while left < B:
                right = min(B, 2.0 * left)
                total += self._piece(u, left, right, False)
                left = right
            return total
        R = max(A, 1.0 / au)
        while left < R:
            right = min(R, 2.0 * left)
            total += self._piece(u, left, right, False)
            left = right
        sgn = 1.0 if u > 0 else -1.0
        # rescale v = |u| r so that the Fourier tail always has unit frequency
        rho = self._rho
        g = lambda v: rho(v / au) / au
        c = quad(g, au * R, INF, weight="cos", wvar=1.0)
        s = quad(g, au * R, INF, weight="sin", wvar=1.0)
        total += (c - self._mom(0.0, R, INF)) + 1j * sgn * s
        return total

    # -- sampling via tabulated inverse cdf --------------------------------

    def sample(self, rng, n, lo=0.0):
        L = max(lo, self.lo)
        total = self.moment(0.0, L, INF)
        if not (np.isfinite(total) and total > 0):
            raise DomainError("radial measure has infinite or zero mass above the threshold")
        if L <= 0:
            raise DomainError("sampling needs a positive threshold for densities")
        grid = [L]
        cum = [0.0]
        r = L
        while True:
            nxt = min(self.hi, r * 1.02) if self.hi < INF else r * 1.02
            cum.append(cum[-1] + self._mom(0.0, r, nxt))
            grid.append(nxt)
            r = nxt
            if nxt >= self.hi or total - cum[-1] < 1e-12 * total or len(grid) > 200000:
                break
        cum = np.array(cum) / total
        grid = np.log(np.array(grid))
        uu = rng.random(n) * cum[-1]
        return np.exp(np.interp(uu, cum, grid))


def _gammainc_lower_upper(a, x1, x2):
    """int_{x1}^{x2} t^{a-1} e^{-t} dt for 0 <= x1 < x2 <= inf; inf if divergent."""
    if x1 == 0.0 and a <= 0:
        return INF
    return float(mpmath.gammainc(a, x1, mpmath.inf if x2 == INF else x2))


@dataclass(frozen=True, eq=False)
class PowerExp(DensityRadial):
    """Density c r^{-1-beta} exp(-theta r^kappa) on (lo, hi).

    Stable radial parts (theta = 0), gamma and tempered-stable parts
    (kappa = 1) and their inversions (kappa = -1) all live here; the family is
    closed under dilation and inversion.
    """

    c: float
    beta: float
    theta: float = 0.0
    kappa: float = 1.0
    lo: float = 0.0
    hi: float = INF

    def __post_init__(self):
        if not (self.c > 0 and np.isfinite(self.c)):
            raise DomainError("c must be positive")
        if self.theta < 0 or self.kappa == 0:
            raise DomainError("need theta >= 0 and kappa != 0")
        if not (0 <= self.lo < self.hi):
            raise DomainError("need 0 <= lo < hi")
        if self.theta == 0:
            object.__setattr__(self, "kappa", 1.0)

    def density(self, r):
        r = np.asarray(r, dtype=float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            val = self.c * r ** (-1 - self.beta)
            if self.theta > 0:
                val = val * np.exp(-self.theta * r ** self.kappa)
        val = np.where((r > self.lo) & (r < self.hi), val, 0.0)
        return val if val.ndim else float(val)

    def _rho(self, x):
        if not self.lo < x < self.hi:
            return 0.0
        val = self.c * x ** (-1.0 - self.beta)
        if self.theta > 0:
            val *= math.exp(-self.theta * x ** self.kappa)
        return val

    def _raw(self, s, A, B):
        """int_A^B r^{s-1} exp(-theta r^kappa) dr."""
        if self.theta == 0:
            if s == 0:
                if A == 0 or B == INF:
                    return INF
                return math.log(B / A)
            if s > 0:
                if B == INF:
                    return INF
                return (B ** s - A ** s) / s
            if A == 0:
                return INF
            return ((0.0 if B == INF else B ** s) - A ** s) / s
        k, th = self.kappa, self.theta
        # substitute v = theta r^kappa; the v-range is reversed when kappa < 0
        if k > 0:
            x1 = 0.0 if A == 0 else th * A ** k
            x2 = INF if B == INF else th * B ** k
        else:
            x1 = 0.0 if B == INF else th * B ** k
            x2 = INF if A == 0 else th * A ** k
        a = s / k
        val = _gammainc_lower_upper(a, x1, x2)
        if val == INF:
            return INF
        return val * th ** (-a) / abs(k)

    def _mom(self, p, A, B):
        return self.c * self._raw(p - self.beta, A, B)

    def moment_finite(self, p, end):
        s = p - self.beta
        if end == "zero":
            if self.lo > 0:
                return True
            return bool((self.theta > 0 and self.kappa < 0) or s > 0)
        if self.hi < INF:
            return True
        return bool((self.theta > 0 and self.kappa > 0) or s < 0)

    @property
    def full_support(self):
        return self.lo == 0 and self.hi == INF

    def exponent(self, u):
        u = np.asarray(u, dtype=float)
        b, th = self.beta, self.theta
        if self.full_support and th == 0 and 0 < b < 2:
            return self.c * stable_radial_exponent(b, u)
        if self.full_support and th > 0 and self.kappa == 1:
            if b == 0:
                val = np.log(th) - np.log(th - 1j * u)
                return self.c * val - 1j * u * self._mom(1.0, 0.0, 1.0)
            if b < 1 and b != round(b):
                val = special.gamma(-b) * ((th - 1j * u) ** b - th ** b)
                return self.c * val - 1j * u * self._mom(1.0, 0.0, 1.0)
            if 1 < b < 2:
                val = special.gamma(-b) * ((th - 1j * u) ** b - th ** b + 1j * u * b * th ** (b - 1))
                return self.c * val + 1j * u * self._mom(1.0, 1.0, INF)
        return self.exponent_restricted(u, 0.0, INF)

    def dilate(self, b):
        return PowerExp(self.c * b ** self.beta, self.beta, self.theta * b ** (-self.kappa), self.kappa,
                        self.lo * b, self.hi * b)

    def invert(self):
        return PowerExp(self.c, 2.0 - self.beta, self.theta, -self.kappa, _inv(self.hi), _inv(self.lo))

    def scaled(self, t):
        return PowerExp(self.c * t, self.beta, self.theta, self.kappa, self.lo, self.hi)

    def sample(self, rng, n, lo=0.0):
        L = max(lo, self.lo)
        if self.theta == 0 and self.beta > 0 and self.hi == INF and L > 0:
            return L * rng.random(n) ** (-1.0 / self.beta)
        return super().sample(rng, n, lo)

    def to_dict(self):
        return {"family": "power_exp", "c": self.c, "beta": self.beta, "theta": self.theta,
                "kappa": self.kappa, "lo": self.lo, "hi": None if self.hi == INF else self.hi}


def stable_radial_exponent(alpha, u):
    """int_0^inf (e^{iur} - 1 - iur 1_{r<=1}) r^{-1-alpha} dr in closed form."""
    u = np.asarray(u, dtype=float)
    au = np.abs(u)
    sg = np.sign(u)
    if alpha == 1.0:
        with np.errstate(divide="ignore", invalid="ignore"):
            logu = np.where(au > 0, np.log(np.where(au > 0, au, 1.0)), 0.0)
        return -0.5 * np.pi * au - 1j * u * logu + 1j * u * (1 - np.euler_gamma)
    core = special.gamma(-alpha) * au ** alpha * np.exp(-0.5j * np.pi * alpha * sg)
    if alpha < 1:
        return core - 1j * u / (1 - alpha)
    return core + 1j * u / (alpha - 1)


class CustomDensity(DensityRadial):
    """User-supplied density evaluated numerically; integrability is decided by
    geometric-grid quadrature with a Cauchy test (inconclusive -> None)."""

    CAUCHY_TOL = 1e-9

    def __init__(self, func: Callable, lo: float = 0.0, hi: float = INF, name: str = "custom"):
        if not (0 <= lo < hi):
            raise DomainError("need 0 <= lo < hi")
        self.func, self.lo, self.hi, self.name = func, float(lo), float(hi), name

    def density(self, r):
        r = np.asarray(r, dtype=float)
        inside = (r > self.lo) & (r < self.hi)
        out = np.zeros_like(r)
        if np.any(inside):
            out[inside] = self.func(r[inside])
        return out if out.ndim else float(out)

    def _pieces(self, p, end, start, nmax=80):
        f = lambda x: x ** p * self.density(x)
        vals = []
        x = start
        for _ in range(nmax):
            if end == "zero":
                l, r = max(self.lo, 0.5 * x), x
                if r <= self.lo:
                    break
            else:
                l, r = x, min(self.hi, 2.0 * x)
                if l >= self.hi:
                    break
            vals.append(quad(f, l, r))
            x = l if end == "zero" else r
            if (end == "zero" and l <= self.lo) or (end == "inf" and r >= self.hi):
                break
        return np.array(vals)

    def _tail_verdict(self, p, end, start):
        vals = self._pieces(p, end, start)
        if len(vals) < 8:
            return True, float(vals.sum())
        tail = vals[-4:]
        if np.all(np.abs(tail) < self.CAUCHY_TOL) and tail[-1] <= tail[0]:
            return True, float(vals.sum())
        if np.all(np.diff(vals[-8:]) >= 0) or vals[-1] >= 0.999 * vals[-8]:
            return False, INF
        return None, None

    def moment_finite(self, p, end):
        if end == "zero":
            if self.lo > 0:
                return True
            return self._tail_verdict(p, "zero", min(1.0, self.hi))[0]
        if self.hi < INF:
            return True
        return self._tail_verdict(p, "inf", max(1.0, self.lo))[0]

    def _mom(self, p, A, B):
        f = lambda x: x ** p * self.density(x)
        total = 0.0
        if A == 0:
            top = min(B, 1.0)
            ok, val = self._tail_verdict(p, "zero", top)
            if ok is None:
                raise NumericalError("moment near 0 is inconclusive")
            if not ok:
                return INF
            total += val
            A = top
        if B == INF:
            start = max(A, 1.0)
            ok, val = self._tail_verdict(p, "inf", start)
            if ok is None:
                raise NumericalError("moment near infinity is inconclusive")
            if not ok:
                return INF
            total += val
            B = start
        x = A
        while x < B:
            nxt = min(B, 2.0 * x) if x > 0 else B
            total += quad(f, x, nxt)
            x = nxt
        return total

    def dilate(self, b):
        f = self.func
        return CustomDensity(lambda r: f(r / b) / b, self.lo * b, self.hi * b, f"dilate({self.name},{b})")

    def invert(self):
        f = self.func
        return CustomDensity(lambda s: f(1.0 / s) * s ** -4.0, _inv(self.hi), _inv(self.lo), f"invert({self.name})")

    def scaled(self, t):
        f = self.func
        return CustomDensity(lambda r: t * f(r), self.lo, self.hi, self.name)

    def to_dict(self):
        raise DomainError("custom densities cannot be serialised")


# --------------------------------------------------------------------------
# atomic families


@dataclass(frozen=True, eq=False)
class RadialAtoms(RadialMeasure):
    radii: np.ndarray
    masses: np.ndarray

    is_atomic = True

    def __post_init__(self):
        r = np.atleast_1d(np.asarray(self.radii, dtype=float)).copy()
        m = np.atleast_1d(np.asarray(self.masses, dtype=float))
        if r.shape != m.shape:
            raise DomainError("radii and masses differ in length")
        if np.any(r <= 0) or np.any(m <= 0) or not np.all(np.isfinite(r)):
            raise DomainError("radii and masses must be positive")
        r[np.abs(r - 1.0) <= SNAP_TOL] = 1.0
        object.__setattr__(self, "radii", r)
        object.__setattr__(self, "masses", m)

    def moment(self, p, a=0.0, b=INF, include_a=False, include_b=True):
        sel = _in_interval(self.radii, a, b, include_a, include_b)
        return float(np.sum(self.masses[sel] * self.radii[sel] ** p))

    def moment_finite(self, p, end):
        return True

    def mass_at(self, r0):
        return float(self.masses[self.radii == r0].sum())

    def exponent_restricted(self, u, a, b):
        u = np.asarray(u, dtype=float)
        sel = _in_interval(self.radii, a, b, False, True)
        r, m = self.radii[sel], self.masses[sel]
        x = u[..., None] * r
        val = np.where(r <= 1.0, expi_compensated(x), expi_minus_one(x))
        return val @ m

    def dilate(self, b):
        return RadialAtoms(self.radii * b, self.masses)

    def invert(self):
        return RadialAtoms(1.0 / self.radii, self.masses * self.radii ** 2)

    def scaled(self, t):
        return RadialAtoms(self.radii, self.masses * t)

    def sample(self, rng, n, lo=0.0):
        sel = self.radii > lo
        r, m = self.radii[sel], self.masses[sel]
        if not len(r):
            raise DomainError("no mass above threshold")
        return rng.choice(r, size=n, p=m / m.sum())

    def to_dict(self):
        return {"family": "atoms", "radii": self.radii.tolist(), "masses": self.masses.tolist()}


@dataclass(frozen=True, eq=False)
class AtomSeries(RadialMeasure):
    """Countably many atoms: radius_n = radius0 * ratio^n with mass
    mass0 * mass_ratio^n * n^{-power}, for n = start, start+step, ... (<= stop).

    Used for principal-value constructions where cancellation across radii
    makes truncated integrals converge without absolute convergence.
    """

    radius0: float
    ratio: float
    mass0: float
    mass_ratio: float
    power: float = 0.0
    start: int = 1
    step: int = 1
    stop: int | None = None

    is_atomic = True
    MAX_TERMS = 200000

    def __post_init__(self):
        if not (self.radius0 > 0 and self.ratio > 0 and self.mass0 > 0 and self.mass_ratio > 0):
            raise DomainError("atom series parameters must be positive")
        if self.ratio == 1.0 and self.stop is None:
            raise DomainError("an infinite series needs ratio != 1")
        if self.power != 0 and self.start < 1:
            raise DomainError("power weights need start >= 1")
        if self.step < 1:
            raise DomainError("step must be >= 1")

    def _n(self, j):
        return self.start + np.asarray(j) * self.step

    def _radius(self, j):
        n = self._n(j)
        r = self.radius0 * self.ratio ** np.asarray(n, dtype=float)
        r = np.where(np.abs(r - 1.0) <= SNAP_TOL, 1.0, r)
        return r

    def _mass(self, j):
        n = np.asarray(self._n(j), dtype=float)
        return self.mass0 * self.mass_ratio ** n * n ** (-self.power)

    @property
    def _jmax(self):
        return INF if self.stop is None else (self.stop - self.start) // self.step

    def _j_range(self, a, b, include_a, include_b):
        """Index range [j_lo, j_hi] (j_hi may be inf) of atoms with radius in the interval."""
        jmax = self._jmax
        L = math.log(self.ratio) * self.step
        base = math.log(self.radius0) + math.log(self.ratio) * self.start

        def ok(j):
            return bool(_in_interval(self._radius(j), a, b, include_a, include_b))

        def approx(x):
            lx = -INF if x <= 0 else (INF if x == INF else math.log(x))
            return (lx - base) / L

        ja, jb = approx(a), approx(b)
        lo_f, hi_f = min(ja, jb), max(ja, jb)
        if hi_f < 0 or lo_f == INF:
            return 0, -1
        j_lo = 0 if lo_f < 0 else int(math.floor(lo_f)) - 2
        j_lo = max(0, j_lo)
        j_hi = jmax if hi_f == INF else min(jmax, int(math.ceil(hi_f)) + 2)
        if j_hi != INF and j_hi < j_lo:
            return 0, -1
        while (j_hi == INF or j_lo <= j_hi) and not ok(j_lo):
            j_lo += 1
            if j_hi == INF and j_lo > 10 ** 7:
                return 0, -1
        if j_hi != INF:
            while j_hi >= j_lo and not ok(j_hi):
                j_hi -= 1
        return j_lo, j_hi

    def _series_tail(self, p, j0):
        """sum_{j >= j0} mass_j radius_j^p, inf when divergent."""
        q = self.mass_ratio * self.ratio ** p
        qs = q ** self.step
        if qs > 1 or (qs == 1 and self.power <= 1):
            return INF
        n0 = self.start + j0 * self.step
        lead = self.mass0 * self.radius0 ** p * q ** n0 * self.step ** (-self.power)
        return float(lead * mpmath.lerchphi(qs, self.power, n0 / self.step))

    def moment(self, p, a=0.0, b=INF, include_a=False, include_b=True):
        j_lo, j_hi = self._j_range(a, b, include_a, include_b)
        if j_hi == INF:
            head = np.arange(j_lo, j_lo + 64)
            val = float(np.sum(self._mass(head) * self._radius(head) ** p))
            tail = self._series_tail(p, j_lo + 64)
            return val + tail
        if j_hi < j_lo:
            return 0.0
        if j_hi - j_lo > self.MAX_TERMS:
            raise NumericalError("atom series range too long")
        j = np.arange(j_lo, j_hi + 1)
        return float(np.sum(self._mass(j) * self._radius(j) ** p))

    def moment_finite(self, p, end):
        if self.stop is not None:
            return True
        grows = self.ratio > 1
        if (end == "inf") != grows:
            return True
        qs = (self.mass_ratio * self.ratio ** p) ** self.step
        return bool(qs < 1 or (qs == 1 and self.power > 1))

    def mass_at(self, r0):
        j_lo, j_hi = self._j_range(r0, r0, True, True)
        if j_hi == INF or j_hi < j_lo:
            return 0.0
        j = np.arange(j_lo, j_hi + 1)
        return float(self._mass(j).sum())

    def _terms(self, a, b, u_max, tol=1e-16):
        j_lo, j_hi = self._j_range(a, b, False, True)
        if j_hi != INF:
            return np.arange(j_lo, j_hi + 1) if j_hi >= j_lo else np.arange(0)
        # truncate the infinite end once the remaining contribution is negligible
        j = j_lo
        while True:
            j += 32
            r = float(self._radius(j))
            if self.ratio > 1:
                bound = 2.0 * self.moment(0.0, r, INF)
            else:
                bound = 0.5 * u_max ** 2 * self.moment(2.0, 0.0, r)
            if bound < tol or j - j_lo > self.MAX_TERMS:
                return np.arange(j_lo, j + 1)

    def exponent_restricted(self, u, a, b):
        u = np.asarray(u, dtype=float)
        j = self._terms(a, b, float(np.max(np.abs(u))) if u.size else 0.0)
        r, m = self._radius(j), self._mass(j)
        x = u[..., None] * r
        val = np.where(r <= 1.0, expi_compensated(x), expi_minus_one(x))
        return val @ m

    def dilate(self, b):
        return AtomSeries(self.radius0 * b, self.ratio, self.mass0, self.mass_ratio, self.power,
                          self.start, self.step, self.stop)

    def invert(self):
        return AtomSeries(1.0 / self.radius0, 1.0 / self.ratio, self.mass0 * self.radius0 ** 2,
                          self.mass_ratio * self.ratio ** 2, self.power, self.start, self.step, self.stop)

    def scaled(self, t):
        return AtomSeries(self.radius0, self.ratio, self.mass0 * t, self.mass_ratio, self.power,
                          self.start, self.step, self.stop)

    def sample(self, rng, n, lo=0.0):
        j = self._terms(lo, INF, 0.0, tol=1e-14)
        if self.ratio < 1 and self.stop is None:
            j_lo, j_hi = self._j_range(lo, INF, False, True)
            j = np.arange(j_lo, j_hi + 1)
        r, m = self._radius(j), self._mass(j)
        return rng.choice(r, size=n, p=m / m.sum())

    def to_dict(self):
        return {"family": "atom_series", "radius0": self.radius0, "ratio": self.ratio, "mass0": self.mass0,
                "mass_ratio": self.mass_ratio, "power": self.power, "start": self.start,
                "step": self.step, "stop": self.stop}


# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RadialMixture(RadialMeasure):
    components: tuple

    def __post_init__(self):
        flat = []
        for c in self.components:
            flat.extend(c.parts())
        if not flat:
            raise DomainError("empty mixture")
        object.__setattr__(self, "components", tuple(flat))

    def parts(self):
        return list(self.components)

    @property
    def is_atomic(self):
        return all(c.is_atomic for c in self.components)

    def density(self, r):
        return sum(c.density(r) for c in self.components if not c.is_atomic)

    def moment(self, p, a=0.0, b=INF, include_a=False, include_b=True):
        return float(sum(c.moment(p, a, b, include_a, include_b) for c in self.components))

    def moment_finite(self, p, end):
        flags = [c.moment_finite(p, end) for c in self.components]
        if all(f is True for f in flags):
            return True
        if any(f is False for f in flags):
            return False
        return None

    def mass_at(self, r0):
        return float(sum(c.mass_at(r0) for c in self.components))

    def exponent(self, u):
        return sum(c.exponent(u) for c in self.components)

    def exponent_restricted(self, u, a, b):
        return sum(c.exponent_restricted(u, a, b) for c in self.components)

    def dilate(self, b):
        return RadialMixture(tuple(c.dilate(b) for c in self.components))

    def invert(self):
        return RadialMixture(tuple(c.invert() for c in self.components))

    def scaled(self, t):
        return RadialMixture(tuple(c.scaled(t) for c in self.components))

    def sample(self, rng, n, lo=0.0):
        masses = np.array([c.moment(0.0, lo, INF) for c in self.components])
        counts = rng.multinomial(n, masses / masses.sum())
        out = [c.sample(rng, k, lo) for c, k in zip(self.components, counts) if k]
        res = np.concatenate(out)
        rng.shuffle(res)
        return res

    def to_dict(self):
        return {"family": "mixture", "parts": [c.to_dict() for c in self.components]}


# --------------------------------------------------------------------------
# named families for distribution files


def stable_radial(alpha, c=1.0):
    if not 0 < alpha < 2:
        raise DomainError("stable index must lie in (0, 2)")
    return PowerExp(c, alpha)


def gamma_radial(c=1.0, rate=1.0):
    return PowerExp(c, 0.0, rate, 1.0)


def tempered_radial(alpha, c=1.0, rate=1.0):
    return PowerExp(c, alpha, rate, 1.0)


def radial_from_dict(d):
    fam = d.get("family")
    if fam == "atoms":
        return RadialAtoms(np.asarray(d["radii"], float), np.asarray(d["masses"], float))
    if fam == "power_exp":
        hi = d.get("hi")
        return PowerExp(float(d["c"]), float(d["beta"]), float(d.get("theta", 0.0)), float(d.get("kappa", 1.0)),
                        float(d.get("lo", 0.0)), INF if hi is None else float(hi))
    if fam == "stable":
        return stable_radial(float(d["alpha"]), float(d.get("c", 1.0)))
    if fam == "gamma":
        return gamma_radial(float(d.get("c", 1.0)), float(d.get("rate", 1.0)))
    if fam == "tempered":
        return tempered_radial(float(d["alpha"]), float(d.get("c", 1.0)), float(d.get("rate", 1.0)))
    if fam == "power":
        hi = d.get("hi")
        return PowerExp(float(d.get("c", 1.0)), float(d["beta"]), 0.0, 1.0, float(d.get("lo", 0.0)),
                        INF if hi is None else float(hi))
    if fam == "atom_series":
        return AtomSeries(float(d["radius0"]), float(d["ratio"]), float(d["mass0"]), float(d["mass_ratio"]),
                          float(d.get("power", 0.0)), int(d.get("start", 1)), int(d.get("step", 1)),
                          None if d.get("stop") is None else int(d["stop"]))
    if fam == "mixture":
        return RadialMixture(tuple(radial_from_dict(p) for p in d["parts"]))
    raise DomainError(f"unknown radial family {fam!r}")
