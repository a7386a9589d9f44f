"""Composed exponents int_0^c psi_rho(f(s) z) ds and definability labels."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .._numerics import detect_limit, gl_integrate
from ..errors import NotDefinableError, NumericalError
from ..levy_core.triplet import LevyTriplet, char_exponent
from .kernels import INF, KernelProfile, MappingKernel, kernel_profile

CAUCHY_TOL = 1e-10
PIECE_BUDGET = 64
GL_ORDER = 48
MAX_SPLIT_DEPTH = 10

DEFINABILITY_CLASSES = ("absolutely-definable", "definable", "essentially-definable-only", "not-definable",
                        "unknown")


def _profile(kernel_or_profile):
    if isinstance(kernel_or_profile, KernelProfile):
        return kernel_or_profile
    return kernel_profile(kernel_or_profile)


def _integrand(prof, rho, Z, absolute=False):
    """s-nodes (m,) -> values (m, n) of psi_rho(f(s) z_j) (or their modulus)."""
    d = Z.shape[1]

    def fn(s):
        t = np.asarray(prof.f(s), dtype=float).reshape(-1)
        pts = (t[:, None, None] * Z[None, :, :]).reshape(-1, d)
        vals = np.asarray(char_exponent(rho, pts)).reshape(len(t), len(Z))
        return np.abs(vals) if absolute else vals

    return fn


def _piece(fn, a, b, depth=0):
    val, err = gl_integrate(fn, a, b, GL_ORDER)
    scale = max(1.0, float(np.max(np.abs(val))))
    if err <= 1e-11 * scale or depth >= MAX_SPLIT_DEPTH:
        if err > 1e-7 * scale:
            raise NumericalError("Gauss-Legendre piece did not converge", estimate=err)
        return val
    m = 0.5 * (a + b)
    return _piece(fn, a, m, depth + 1) + _piece(fn, m, b, depth + 1)


def _core_and_ends(prof):
    """A proper core interval in s plus the improper ends to refine toward.

    Returns (core, ends) where each end is (start, direction, ratio, limit)."""
    c = prof.c
    kern = prof.kernel
    near_zero = kern.b == INF  # f(0+) = b_h is infinite
    if c < INF:
        lo, hi = c / 8.0, c * 7.0 / 8.0
        ends = []
        # toward s = 0: pieces [s/8, s]
        ends.append(("zero", lo, 0.125))
        # toward s = c: pieces [c - r, c - r/8]
        ends.append(("c", c - hi, 0.125))
        return (lo, hi), ends, near_zero
    lo, hi = 0.125, 1.0
    return (lo, hi), [("zero", lo, 0.125), ("inf", hi, 4.0)], near_zero


def _end_pieces(fn, prof, end, start, ratio, budget):
    """Yield successive piece integrals toward an endpoint."""
    c = prof.c
    x = start
    for _ in range(budget):
        if end == "zero":
            a, b = x * ratio, x
        elif end == "inf":
            a, b = x, x * ratio
        else:  # toward finite c, x is the distance to c
            a, b = c - x, c - x * ratio
        yield _piece(fn, a, b)
        x = x * ratio


@dataclass(frozen=True)
class EndpointTrace:
    end: str
    partials: np.ndarray  # (k, n) cumulative contributions
    settled: bool


def _walk_end(fn, prof, end, start, ratio, budget=PIECE_BUDGET, tol=CAUCHY_TOL):
    acc = None
    parts = []
    quiet = 0
    for val in _end_pieces(fn, prof, end, start, ratio, budget):
        acc = val if acc is None else acc + val
        parts.append(acc.copy())
        quiet = quiet + 1 if float(np.max(np.abs(val))) < tol else 0
        if quiet >= 2:
            return EndpointTrace(end, np.array(parts), True)
    return EndpointTrace(end, np.array(parts), False)


def map_exponent(kernel, rho: LevyTriplet, z, tol=CAUCHY_TOL, budget=PIECE_BUDGET):
    """int_0^{c} psi_rho(f(s) z) ds for z of shape (d,) or (n, d).

    The proper middle part uses Gauss-Legendre; the improper ends are refined
    geometrically and stopped by a Cauchy criterion.  Raises
    :class:`NotDefinableError` (with the partial values) when an end does not
    settle within the piece budget."""
    prof = _profile(kernel)
    z = np.asarray(z, dtype=float)
    single = z.ndim <= 1
    Z = z.reshape(-1, rho.dim)
    fn = _integrand(prof, rho, Z)
    (lo, hi), ends, _ = _core_and_ends(prof)
    total = _piece(fn, lo, hi)
    for end, start, ratio in ends:
        tr = _walk_end(fn, prof, end, start, ratio, budget, tol)
        if not tr.settled:
            raise NotDefinableError(f"integral toward s -> {end} did not settle", partials=tr.partials)
        total = total + tr.partials[-1]
    return complex(total[0]) if single else total


def map_exponent_t_domain(kernel: MappingKernel, rho: LevyTriplet, z):
    """Oracle form int_a^b psi_rho(t z) h(t) dt (same value after s = g(t))."""
    from .._numerics import quad

    Z = np.atleast_2d(np.asarray(z, dtype=float))
    out = []
    for zz in Z:
        def re(t):
            return (char_exponent(rho, t * zz) * kernel.h(t)).real

        def im(t):
            return (char_exponent(rho, t * zz) * kernel.h(t)).imag

        val = 0.0 + 0.0j
        a, b = kernel.a, kernel.b
        edges = [a]
        x = max(a, 1e-12) if a > 0 else 1e-12
        while True:
            x *= 4.0
            if x >= b or x > 1e12:
                break
            if x > a:
                edges.append(x)
        edges.append(b)
        for l, r in zip(edges[:-1], edges[1:]):
            if r == INF:
                # unbounded last piece in w = 1/t
                l, r = 0.0, 1.0 / l
                re, im = (lambda w, f=re: f(1.0 / w) / (w * w) if w > 0 else 0.0), \
                    (lambda w, f=im: f(1.0 / w) / (w * w) if w > 0 else 0.0)
            val += quad(re, l, r, atol=1e-14, rtol=1e-12) + 1j * quad(im, l, r, atol=1e-14, rtol=1e-12)
        out.append(val)
    return np.array(out)


# --------------------------------------------------------------------------


@dataclass(frozen=True)
class DefinabilityReport:
    label: str
    reason: str
    details: dict

    def to_dict(self):
        return {"class": self.label, "reason": self.reason,
                "details": {k: (v.tolist() if isinstance(v, np.ndarray) else v) for k, v in self.details.items()}}


def _is_delta_zero(rho):
    return (not np.any(rho.A)) and not np.any(rho.gamma) and rho.nu.scalar_moment(0.0, 1e-300) == 0.0


def _default_z(dim):
    if dim == 1:
        return np.array([[-3.0], [-1.5], [-0.7], [-0.2], [0.3], [0.8], [1.7], [2.9]])
    rng = np.random.default_rng(5)
    return rng.normal(size=(8, dim)) * 1.5


def _drift_residuals(partials, Z):
    """Subtract the least-squares i<k_q, z> from each partial row."""
    P = np.asarray(partials)
    coef, *_ = np.linalg.lstsq(Z, P.imag.T, rcond=None)  # (d, q)
    fitted = (Z @ coef).T
    return P - 1j * fitted


def classify_definability(kernel, rho: LevyTriplet, z=None, budget=PIECE_BUDGET) -> DefinabilityReport:
    prof = _profile(kernel)
    kern = prof.kernel
    if _is_delta_zero(rho):
        return DefinabilityReport("absolutely-definable", "rho is the point mass at 0", {})
    if prof.c < INF and kern.b < INF:
        return DefinabilityReport("absolutely-definable",
                                  "finite c with bounded f: the integrand is bounded on a finite interval", {})
    Z = _default_z(rho.dim) if z is None else np.atleast_2d(np.asarray(z, dtype=float))
    fn = _integrand(prof, rho, Z)
    fabs = _integrand(prof, rho, Z, absolute=True)
    (lo, hi), ends, _ = _core_and_ends(prof)
    details = {}
    try:
        abs_ok = True
        for end, start, ratio in ends:
            tr = _walk_end(fabs, prof, end, start, ratio, budget)
            details[f"abs_{end}_pieces"] = len(tr.partials)
            abs_ok = abs_ok and tr.settled
        if abs_ok:
            return DefinabilityReport("absolutely-definable", "integral of |psi(f(s)z)| converges on the z-grid",
                                      details)
        verdicts = []
        for end, start, ratio in ends:
            tr = _walk_end(fn, prof, end, start, ratio, budget)
            if tr.settled:
                verdicts.append("converges")
                continue
            P = np.hstack([tr.partials.real, tr.partials.imag])
            det = detect_limit(P, tol=1e-8)
            if det.status == "exists":
                verdicts.append("converges")
                continue
            if end == "zero":
                # local integrability near s = 0 is not negotiable
                verdicts.append("fails")
                continue
            R = _drift_residuals(tr.partials, Z)
            detR = detect_limit(np.hstack([R.real, R.imag]), tol=1e-8)
            tail = np.linalg.norm(np.diff(R, axis=0), axis=1)
            details[f"{end}_residual_increments"] = tail[-4:]
            if detR.status == "exists" or (len(tail) >= 4 and np.all(tail[-4:] < 1e-8)):
                verdicts.append("essential")
            elif detR.status == "diverges" or (len(tail) >= 8 and tail[-1] >= 0.5 * tail[-8]):
                verdicts.append("fails")
            else:
                verdicts.append("unknown")
    except NumericalError as exc:
        return DefinabilityReport("unknown", f"numerical failure: {exc}", details)
    details["ends"] = verdicts
    if "fails" in verdicts:
        return DefinabilityReport("not-definable", "partial integrals do not settle even after drift removal",
                                  details)
    if "unknown" in verdicts:
        return DefinabilityReport("unknown", "inconclusive partial integrals", details)
    if "essential" in verdicts:
        return DefinabilityReport("essentially-definable-only",
                                  "partials converge only after subtracting a linear drift term", details)
    return DefinabilityReport("definable", "partial integrals converge but not absolutely", details)
