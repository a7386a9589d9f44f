"""Command-line front end: ``levyweak <verb> [options]``.

Exit codes: 0 success, 1 domain or parse error, 2 numerical failure.
JSON reports carry the tool version and the sha256 of the distribution file.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import DomainError, NumericalError
from .inversion import invert, weak_dual_check
from .levy_core.specfile import load_triplet, triplet_to_dict
from .levy_core.triplet import drift_of, mean_of, sharp_location
from .limit_theorems import corroborate, duality_check, sample_increments, shtatland_verdict, wlln_verdict
from .simaps import (classify_definability, conjugate, kernel_profile, lambda_kernel, map_exponent, phi_bar,
                     psi_kernel, range_membership)
from .weak_moments import weak_drift, weak_mean

TOOL = "levyweak"
FAMILIES = ("phi-bar", "lambda", "psi")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


def _clean(x):
    """JSON-safe copy: numpy to builtins, non-finite floats to null."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, complex):
        return {"re": _clean(x.real), "im": _clean(x.imag)}
    return x


def _report(command, digest, result):
    return {"tool": TOOL, "version": __version__, "command": command, "spec_sha256": digest,
            "result": _clean(result)}


def _emit(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _emit_json(obj, out):
    _emit(json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n", out)


def _csv(header, rows, comment=None):
    buf = io.StringIO()
    if comment:
        buf.write(f"# {comment}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([repr(float(v)) for v in r])
    return buf.getvalue()


def _kernel_from_args(a):
    fam = a.family
    if fam == "phi-bar":
        k = phi_bar(a.p, a.alpha)
    elif fam == "lambda":
        k = lambda_kernel(a.q, a.alpha)
    elif fam == "psi":
        k = psi_kernel(a.alpha, a.beta)
    else:
        raise DomainError(f"unknown kernel family {fam!r}")
    return conjugate(k) if getattr(a, "conjugate", False) else k


def _z_grid(a, dim):
    if a.z:
        vals = [float(v) for v in a.z.split(",") if v.strip()]
        if len(vals) % dim:
            raise DomainError(f"--z needs a multiple of {dim} values")
        return np.array(vals).reshape(-1, dim)
    if dim != 1:
        raise DomainError("give --z explicitly for dim > 1")
    return np.linspace(a.zmin, a.zmax, a.nz)[:, None]


# --------------------------------------------------------------------------
# verbs


def cmd_describe(a):
    mu, digest = load_triplet(a.spec)
    res = {
        "dim": mu.dim,
        "levy_kind": mu.nu.kind,
        "gaussian_free": mu.gaussian_free,
        "finite_levy_measure": mu.nu.is_finite(),
        "drift": drift_of(mu).to_dict(),
        "mean": mean_of(mu).to_dict(),
        "sharp_location": sharp_location(mu),
    }
    _emit_json(_report("describe", digest, res), a.out)


def cmd_invert(a):
    mu, digest = load_triplet(a.spec)
    d = triplet_to_dict(invert(mu))
    d["meta"] = {"tool": TOOL, "version": __version__, "inverted_from_sha256": digest}
    _emit_json(_clean(d), a.out)


def cmd_weak_moments(a):
    mu, digest = load_triplet(a.spec)
    res = {"weak_mean": weak_mean(mu, a.levels, verify=a.verify).to_dict(),
           "weak_drift": weak_drift(mu, a.levels, verify=a.verify).to_dict()}
    if mu.gaussian_free:
        res["duality"] = weak_dual_check(mu, a.levels).to_dict()
    _emit_json(_report("weak-moments", digest, res), a.out)


def cmd_kernel(a):
    k = _kernel_from_args(a)
    prof = kernel_profile(k, a.method)
    lo = k.a if k.a > 0 else 1e-3
    hi = k.b if k.b < math.inf else 1e3
    t = np.geomspace(lo, hi, a.n + 2)[1:-1] if lo > 0 else np.linspace(lo, hi, a.n + 2)[1:-1]
    if prof.c < math.inf:
        s = np.linspace(0.0, prof.c, a.n + 2)[1:-1]
    else:
        s = np.geomspace(1e-3, 1e3, a.n)
    g, f, h = prof.g(t), prof.f(s), k.h(t)
    if a.format == "csv":
        rows = zip(t, h, g, s, f)
        _emit(_csv(["t", "h", "g", "s", "f"], rows, f"{TOOL} {__version__} kernel {k.tag}"), a.out)
        return
    res = {**prof.to_dict(), "table": {"t": t, "h": h, "g": g, "s": s, "f": f}}
    _emit_json(_report("kernel", None, res), a.out)


def cmd_map(a):
    mu, digest = load_triplet(a.spec)
    k = _kernel_from_args(a)
    Z = _z_grid(a, mu.dim)
    vals = map_exponent(k, mu, Z, tol=a.tol, budget=a.budget)
    if a.format == "json":
        res = {"kernel": k.to_dict(), "z": Z, "re": vals.real, "im": vals.imag}
        if a.classify:
            res["definability"] = classify_definability(k, mu).to_dict()
        _emit_json(_report("map", digest, res), a.out)
        return
    head = [f"z{i + 1}" for i in range(mu.dim)] if mu.dim > 1 else ["z"]
    rows = (list(z) + [v.real, v.imag] for z, v in zip(Z, vals))
    _emit(_csv(head + ["re_psi", "im_psi"], rows, f"{TOOL} {__version__} spec_sha256={digest}"), a.out)


def cmd_range_check(a):
    mu, digest = load_triplet(a.spec)
    k = _kernel_from_args(a)
    res = range_membership(mu, k, a.star, a.tier).to_dict()
    _emit_json(_report("range-check", digest, res), a.out)


def cmd_limits(a):
    mu, digest = load_triplet(a.spec)
    if a.theorem == "wlln":
        v = wlln_verdict(mu, a.K)
        res = v.to_dict()
        scales = [1e2, 1e3, 1e4]
    elif a.theorem == "shtatland":
        v = shtatland_verdict(mu, a.K)
        res = v.to_dict()
        scales = [1e-2, 1e-3, 1e-4]
    else:
        rep = duality_check(mu, a.K)
        res = {"verdict": rep.shtatland.verdict, "c": rep.shtatland.c,
               "dual_verdict": rep.wlln_of_inverse.verdict, "dual_c": rep.wlln_of_inverse.c,
               "passed": rep.passed, "c_error": rep.c_error, "details": rep.to_dict()}
        v, scales = None, None
    if a.mc and v is not None:
        c = v.c if v.c is not None else (v.moment.value if v.moment.status == "exists" else None)
        res["monte_carlo"] = corroborate(mu, c, scales, n=a.mc, eta=a.eta, seed=a.seed)
    _emit_json(_report(f"limits/{a.theorem}", digest, res), a.out)


def cmd_simulate(a):
    mu, digest = load_triplet(a.spec)
    mc = sample_increments(mu, a.t, a.n, a.threshold, a.seed)
    head = [f"x{i + 1}" for i in range(mu.dim)]
    note = (f"{TOOL} {__version__} spec_sha256={digest} t={a.t:g} delta={mc.delta:g} "
            f"bias_bound={mc.bias_bound:g} seed={a.seed}")
    _emit(_csv(head, mc.samples, note), a.out)


# --------------------------------------------------------------------------


def _kernel_opts(p, need_family=True):
    p.add_argument("--family", choices=FAMILIES, required=need_family)
    p.add_argument("--p", type=float, default=1.0, help="order p of phi-bar (default 1)")
    p.add_argument("--q", type=float, default=1.0, help="order q of lambda (default 1)")
    p.add_argument("--alpha", type=float, default=0.0, help="alpha (default 0)")
    p.add_argument("--beta", type=float, default=1.0, help="beta of psi (default 1)")
    p.add_argument("--conjugate", action="store_true", help="use the conjugate kernel h*")


def build_parser():
    ap = _Parser(prog=TOOL, description="Infinitely divisible laws: inversion, weak moments, "
                                        "stochastic-integral mappings and limit theorems.")
    ap.add_argument("--version", action="version", version=f"{TOOL} {__version__}")
    sub = ap.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def spec_cmd(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--spec", required=True, help="distribution file (JSON)")
        p.add_argument("--out", default=None, help="output path (default stdout)")
        return p

    spec_cmd("describe", "drift, mean and sharp location").set_defaults(fn=cmd_describe)
    spec_cmd("invert", "write the inverted distribution file").set_defaults(fn=cmd_invert)

    p = spec_cmd("weak-moments", "weak mean, weak drift and their duality")
    p.add_argument("--levels", type=int, default=60, help="geometric truncation levels (default 60)")
    p.add_argument("--verify", action="store_true", help="check the exponent limit form")
    p.set_defaults(fn=cmd_weak_moments)

    p = sub.add_parser("kernel", help="profile data c, g, f of a kernel")
    _kernel_opts(p)
    p.add_argument("--method", choices=("auto", "numeric"), default="auto")
    p.add_argument("--n", type=int, default=50, help="table size (default 50)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(fn=cmd_kernel)

    p = spec_cmd("map", "composed exponent int_0^c psi(f(s) z) ds over a z-grid")
    _kernel_opts(p)
    p.add_argument("--z", default=None, help="comma-separated z values (row-major for dim > 1)")
    p.add_argument("--zmin", type=float, default=-5.0)
    p.add_argument("--zmax", type=float, default=5.0)
    p.add_argument("--nz", type=int, default=21)
    p.add_argument("--tol", type=float, default=1e-10, help="Cauchy stopping tolerance (default 1e-10)")
    p.add_argument("--budget", type=int, default=64, help="pieces per improper end (default 64)")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("--classify", action="store_true", help="attach the definability class (json only)")
    p.set_defaults(fn=cmd_map)

    p = spec_cmd("range-check", "three-valued range membership")
    _kernel_opts(p)
    p.add_argument("--star", action="store_true", help="test the range of the conjugate mapping")
    p.add_argument("--tier", choices=("Re", "R", "R0"), default="R")
    p.set_defaults(fn=cmd_range_check)

    p = spec_cmd("limits", "weak law of large numbers / weak Shtatland verdicts")
    p.add_argument("--theorem", choices=("wlln", "shtatland", "duality"), required=True)
    p.add_argument("--K", type=int, default=30, help="condition grid 2^0 .. 2^K (default 30)")
    p.add_argument("--mc", type=int, default=0, help="Monte Carlo sample size (0: none)")
    p.add_argument("--eta", type=float, default=0.1, help="ball radius for the empirical distance")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_limits)

    p = spec_cmd("simulate", "CSV samples of X_t")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--threshold", type=float, default=None, help="jump threshold delta (default 0 or 1e-3 t)")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_simulate)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.fn(args)
    except UsageError as exc:
        sys.stderr.write(str(exc))
        return 1
    except (DomainError, OSError) as exc:
        sys.stderr.write(f"{TOOL}: error: {exc}\n")
        return 1
    except NumericalError as exc:
        sys.stderr.write(f"{TOOL}: numerical failure: {exc}\n")
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
