"""Kernels h on (a, b) for stochastic-integral mappings, their conjugates
h*(u) = h(1/u) u^-4, and the profiles g(t) = int_t^b h(u) du, f = g^{-1}."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import mpmath
import numpy as np
from scipy import optimize, special

from .._numerics import quad
from ..errors import DomainError, NumericalError

INF = math.inf


def _inv(x):
    return INF if x == 0 else (0.0 if x == INF else 1.0 / x)


@dataclass(frozen=True, eq=False)
class MappingKernel:
    """h on (a, b); ``family`` is one of phi_bar, lambda, psi, custom.

    ``conjugated`` marks kernels obtained by conjugation of a named family,
    so that closed-form profiles stay available.
    """

    a: float
    b: float
    h_base: Callable = field(repr=False)
    family: str = "custom"
    params: tuple = ()
    conjugated: bool = False

    def __post_init__(self):
        if not (0 <= self.a < self.b):
            raise DomainError("need 0 <= a < b")

    def h(self, u):
        u = np.asarray(u, dtype=float)
        inside = (u > self.a) & (u < self.b)
        out = np.zeros_like(u)
        if np.any(inside):
            ui = u[inside]
            if self.conjugated:
                out[inside] = self.h_base(1.0 / ui) * ui ** -4.0
            else:
                out[inside] = self.h_base(ui)
        return out if out.ndim else float(out)

    __call__ = h

    @property
    def tag(self):
        star = "*" if self.conjugated else ""
        return f"{self.family}{self.params}{star}"

    def to_dict(self):
        return {"family": self.family, "params": list(self.params), "conjugate": self.conjugated,
                "a": self.a, "b": None if self.b == INF else self.b}


def phi_bar(p: float, alpha: float) -> MappingKernel:
    """h(u) = Gamma(p)^-1 (1-u)^{p-1} u^{-alpha-1} on (0, 1)."""
    if not (p > 0 and alpha < 2):
        raise DomainError("phi_bar needs p > 0 and alpha < 2")
    lg = special.gammaln(p)

    def h(u):
        return np.exp((p - 1) * np.log1p(-u) - (alpha + 1) * np.log(u) - lg)

    return MappingKernel(0.0, 1.0, h, "phi_bar", (float(p), float(alpha)))


def lambda_kernel(q: float, alpha: float) -> MappingKernel:
    """h(u) = Gamma(q)^-1 (-log u)^{q-1} u^{-alpha-1} on (0, 1)."""
    if not (q > 0 and alpha < 2):
        raise DomainError("lambda kernel needs q > 0 and alpha < 2")
    lg = special.gammaln(q)

    def h(u):
        return np.exp((q - 1) * np.log(-np.log(u)) - (alpha + 1) * np.log(u) - lg)

    return MappingKernel(0.0, 1.0, h, "lambda", (float(q), float(alpha)))


def psi_kernel(alpha: float, beta: float) -> MappingKernel:
    """h(u) = u^{-alpha-1} exp(-u^beta) on (0, inf)."""
    if not (alpha < 2 and beta > 0):
        raise DomainError("psi kernel needs alpha < 2 and beta > 0")

    def h(u):
        return u ** (-alpha - 1.0) * np.exp(-u ** beta)

    return MappingKernel(0.0, INF, h, "psi", (float(alpha), float(beta)))


def custom_kernel(h: Callable, a: float, b: float, name: str = "custom") -> MappingKernel:
    k = MappingKernel(float(a), float(b), h, "custom", (name,))
    check_condition_c(k)
    return k


def conjugate(kernel: MappingKernel) -> MappingKernel:
    """h*(u) = h(1/u) u^-4 on (1/b, 1/a); conjugating twice returns the original h exactly."""
    return MappingKernel(_inv(kernel.b), _inv(kernel.a), kernel.h_base, kernel.family, kernel.params,
                         not kernel.conjugated)


# --------------------------------------------------------------------------
# integrability


def _integral_h(kernel, weight_power):
    """int_a^b h(u) u^w du in closed form for named families; inf when divergent, None if unknown."""
    fam, prm = kernel.family, kernel.params
    w = weight_power
    if kernel.conjugated:
        # int h*(u) u^w du = int h(v) v^{2-w} dv
        w = 2 - w
    if fam == "phi_bar":
        p, al = prm
        s = w - al
        return INF if s <= 0 else math.exp(special.betaln(s, p) - special.gammaln(p))
    if fam == "lambda":
        q, al = prm
        s = w - al
        return INF if s <= 0 else s ** (-q)
    if fam == "psi":
        al, be = prm
        s = w - al
        return INF if s <= 0 else special.gamma(s / be) / be
    return None


def _numeric_integral(kernel, w):
    f = lambda u: float(kernel.h(u)) * u ** w
    a, b = kernel.a, kernel.b
    total = 0.0
    # geometric pieces toward each end; stop when pieces are negligible
    mid = 1.0 if a < 1.0 < b else (math.sqrt(a * b) if (a > 0 and b < INF) else (2 * a if a > 0 else b / 2))
    for end, step in (("lo", 0.5), ("hi", 2.0)):
        x = mid
        pieces = []
        for _ in range(200):
            nx = x * step
            if end == "lo":
                nx = max(nx, a)
                if nx >= x:
                    break
                val = quad(f, nx, x)
            else:
                nx = min(nx, b)
                if nx <= x:
                    break
                val = quad(f, x, nx)
            pieces.append(val)
            x = nx
            if len(pieces) >= 6 and max(pieces[-4:]) < 1e-12:
                break
            if len(pieces) >= 8 and pieces[-1] >= 0.999 * pieces[-8] and pieces[-1] > 1e-12:
                return INF
            if (end == "lo" and x <= a) or (end == "hi" and x >= b):
                break
        else:
            return None
        total += sum(pieces)
    return total


def kernel_integrals(kernel):
    """(int h du, int h u^2 du) over (a, b)."""
    i0, i2 = _integral_h(kernel, 0.0), _integral_h(kernel, 2.0)
    if i0 is None:
        i0, i2 = _numeric_integral(kernel, 0.0), _numeric_integral(kernel, 2.0)
    return i0, i2


def check_condition_c(kernel):
    """min(int h u^2, int h) < inf; raises on violation."""
    grid = np.geomspace(max(kernel.a, 1e-6) if kernel.a > 0 else 1e-6, min(kernel.b, 1e6), 257)
    grid = grid[(grid > kernel.a) & (grid < kernel.b)]
    vals = np.asarray(kernel.h(grid))
    if len(grid) and (np.any(~(vals >= 0)) or not np.any(vals > 0)):
        raise DomainError("kernel must be positive on its interval")
    i0, i2 = kernel_integrals(kernel)
    if i0 is None or i2 is None:
        raise NumericalError("could not decide integrability of the kernel")
    if min(i0, i2) == INF:
        raise DomainError("kernel violates condition (C)")
    return i0, i2


# --------------------------------------------------------------------------
# profiles


@dataclass(frozen=True, eq=False)
class KernelProfile:
    kernel: MappingKernel
    c: float
    g: Callable = field(repr=False)
    f: Callable = field(repr=False)
    regime: str  # integral-at-c | integral-at-0
    closed_form: bool

    def to_dict(self):
        return {"kernel": self.kernel.to_dict(), "c": None if self.c == INF else self.c, "regime": self.regime,
                "closed_form": self.closed_form}


def _upper_gamma(a, x):
    """Gamma(a, x) for x > 0 and any real a, via scipy where it has a direct form."""
    x = np.asarray(x, dtype=float)
    if a > 0:
        return special.gammaincc(a, x) * special.gamma(a)
    if a == 0:
        return special.exp1(x)
    if float(a).is_integer():
        n = int(-a)
        return x ** (-n) * special.expn(n + 1, x)
    return _vec(lambda v: float(mpmath.gammainc(a, v)), x)


def _g_closed(kernel):
    """Closed-form g and c, or None."""
    fam, prm = kernel.family, kernel.params
    star = kernel.conjugated
    if fam == "phi_bar":
        p, al = prm
        lg = special.gammaln(p)
        if not star:
            if p == 1.0:
                if al == 0:
                    return (lambda t: -np.log(t)), INF
                return (lambda t: (np.power(t, -al) - 1.0) / al), (INF if al > 0 else -1.0 / al)
            if al < 0:
                B = math.exp(special.betaln(-al, p) - lg)
                return (lambda t: special.betaincc(-al, p, np.asarray(t, dtype=float)) * B), B

            def g(t):
                return _vec(lambda x: float(mpmath.betainc(-al, p, x, 1)) * math.exp(-lg), t)

            return g, INF
        if p == 1.0:
            return (lambda t: np.power(t, al - 2.0) / (2.0 - al)), 1.0 / (2.0 - al)
        B = math.exp(special.betaln(2 - al, p) - lg)
        return (lambda t: special.betainc(2 - al, p, 1.0 / np.asarray(t, dtype=float)) * B), B
    if fam == "lambda":
        q, al = prm
        lg = special.gammaln(q)
        if not star:
            def g(t):
                def one(x):
                    W = -math.log(x)
                    return float(W ** q / q * mpmath.hyp1f1(q, q + 1, al * W)) * math.exp(-lg)
                return _vec(one, t)

            return g, (INF if al >= 0 else (-al) ** (-q))
        c = (2 - al) ** (-q)
        return (lambda t: special.gammaincc(q, (2 - al) * np.log(np.asarray(t, dtype=float))) * c), c
    if fam == "psi":
        al, be = prm
        if not star:
            def g(t):
                out = _upper_gamma(-al / be, np.asarray(t, dtype=float) ** be) / be
                return out if np.ndim(out) else float(out)

            return g, (INF if al >= 0 else special.gamma(-al / be) / be)
        a = (2 - al) / be
        c = special.gamma(a) / be
        return (lambda t: special.gammainc(a, np.asarray(t, dtype=float) ** (-be)) * c), c
    return None


def _f_closed(kernel):
    fam, prm = kernel.family, kernel.params
    if fam == "phi_bar" and prm[0] == 1.0:
        al = prm[1]
        if not kernel.conjugated:
            if al == 0:
                return lambda s: np.exp(-np.asarray(s, dtype=float))
            return lambda s: np.power(1.0 + al * np.asarray(s, dtype=float), -1.0 / al)
        return lambda s: np.power((2.0 - al) * np.asarray(s, dtype=float), -1.0 / (2.0 - al))
    return None


def _vec(fn, t):
    t = np.asarray(t, dtype=float)
    out = np.vectorize(fn, otypes=[float])(t)
    return out if out.ndim else float(out)


def _g_numeric(kernel):
    """g(t) = int_t^b h(u) du by quadrature over geometric pieces."""
    b = kernel.b
    h = lambda u: float(kernel.h(u))

    def one(t):
        if t >= b:
            return 0.0
        total = 0.0
        x = t
        while x < b:
            nx = min(b, 2.0 * x if x > 0 else 1.0)
            if b == INF and nx > 1e8:
                # remaining tail as an integral over w = 1/u in (0, 1/x]
                total += quad(lambda w: h(1.0 / w) / (w * w) if w > 0 else 0.0, 0.0, 1.0 / x)
                break
            total += quad(h, x, nx)
            x = nx
        return total

    return lambda t: _vec(one, t)


def _f_from_g(kernel, g, c):
    """Inverse of the strictly decreasing g by root finding in log t."""
    a, b = kernel.a, kernel.b
    lo_t = a if a > 0 else None
    hi_t = b if b < INF else None

    def one(s):
        if s <= 0:
            return b
        if c < INF and s >= c:
            return a
        L = math.log(lo_t) if lo_t else -1.0
        H = math.log(hi_t) if hi_t else 1.0
        F = lambda y: g(math.exp(y)) - s
        # widen toward the open ends until the root is bracketed
        if lo_t is None:
            while F(L) < 0:
                L *= 2.0
                if L < -700:
                    return a
        if hi_t is None:
            while F(H) > 0:
                H *= 2.0
                if H > 700:
                    return b
        if lo_t is not None and F(L) <= 0:
            return a
        if hi_t is not None and F(H) >= 0:
            return b
        y = optimize.brentq(F, L, H, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
        return math.exp(y)

    return lambda s: _vec(one, s)


def kernel_profile(kernel: MappingKernel, method: str = "auto") -> KernelProfile:
    """c, g, f and the endpoint regime.  ``method='numeric'`` bypasses closed forms."""
    i0, i2 = check_condition_c(kernel)
    regime = "integral-at-c" if i2 < INF else "integral-at-0"
    closed = _g_closed(kernel) if method == "auto" else None
    if closed is not None:
        g, c = closed
        f = _f_closed(kernel) or _f_from_g(kernel, g, c)
        return KernelProfile(kernel, c, g, f, regime, True)
    g = _g_numeric(kernel)
    c = i0
    return KernelProfile(kernel, c, g, _f_from_g(kernel, g, c), regime, False)
