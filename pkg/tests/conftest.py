"""Shared test distributions.

Each builder returns a fresh LevyTriplet.  ``SUITE`` tags every law with
what is known about it in closed form, so that tests can use the tags as
oracles instead of the package's own answers.
"""

import math
from dataclasses import dataclass

import numpy as np
import pytest

from levyweak.levy_core import (AtomSeries, Atoms, PolarProduct, PowerExp, RadialDecomposition, RadialMixture,
                                ScalarDensity, SphereUniform, Stable, gamma_radial, point_mass,
                                symmetric_density1d, symmetric_pair, triplet)

E1 = 1.0 - math.exp(-1.0)


def cauchy(gamma=0.0):
    """Standard symmetric Cauchy: nu(dx) = pi^-1 |x|^-2 dx, psi(z) = -|z| + i gamma z."""
    return triplet([gamma], Stable(1.0, symmetric_pair(1, 0, 2.0 / math.pi)))


def compound_poisson():
    """nu = 2 delta_0.5, gamma = 1: drift 0, mean 1."""
    return triplet([1.0], Atoms([[0.5]], [2.0]))


def half_at_two():
    """nu = 0.5 delta_2, gamma = -1: mean 0, sharp location -0.5."""
    return triplet([-1.0], Atoms([[2.0]], [0.5]))


def gamma_subordinator():
    """nu(dr) = r^-1 e^-r dr on (0, inf), gamma = 1 - e^-1 (drift 0, mean 1)."""
    return triplet([E1], ScalarDensity(gamma_radial(), None))


def one_sided_tail(gamma=0.0):
    """density r^-2 on r > 1 only: weak mean diverges."""
    return triplet([gamma], ScalarDensity(PowerExp(1.0, 1.0, lo=1.0), None))


def one_sided_small(gamma=0.0):
    """density r^-2 on (0, 1) only: weak drift diverges."""
    return triplet([gamma], ScalarDensity(PowerExp(1.0, 1.0, hi=1.0), None))


def two_sided_25():
    """symmetric density |x|^-2.5: T(t) = (4/3) t^-1/2."""
    return triplet([0.0], symmetric_density1d(PowerExp(1.0, 1.5)))


def alternating_tail(gamma=0.0):
    """Atoms at (-1)^n 2^n with mass 2^-n / n: the tail moments are partial sums of
    sum (-1)^n / n, so the weak mean is gamma - log 2 and not absolute."""
    pos = AtomSeries(1.0, 2.0, 1.0, 0.5, 1.0, start=2, step=2)
    neg = AtomSeries(1.0, 2.0, 1.0, 0.5, 1.0, start=1, step=2)
    return triplet([gamma], RadialDecomposition(np.array([[1.0], [-1.0]]), np.ones(2), (pos, neg)))


def stable_one_sided(alpha, gamma=0.0):
    return triplet([gamma], Stable(alpha, point_mass([1.0])))


def tempered_symmetric():
    return triplet([0.3], symmetric_density1d(PowerExp(1.0, 0.5, 2.0, 1.0)))


def planar_uniform_stable(alpha=1.5):
    return triplet([0.2, -0.1], Stable(alpha, SphereUniform(2, 1.0)))


def planar_polar():
    return triplet([0.0, 0.5], PolarProduct(SphereUniform(2, 2.0), gamma_radial(1.0, 2.0)))


def mixture_1d():
    rad = RadialMixture((PowerExp(0.5, 0.5), PowerExp(0.5, 1.5)))
    return triplet([0.1], ScalarDensity(rad, PowerExp(0.3, 1.2, 1.0, 1.0)))


@dataclass
class Case:
    name: str
    build: callable
    mean: object = None  # vector, or "none" when the mean does not exist
    drift: object = None
    weak_mean: object = None  # vector, or "diverges"
    weak_drift: object = None
    mean_abs: object = None
    drift_abs: object = None


SUITE = [
    Case("compound_poisson", compound_poisson, [1.0], [0.0], [1.0], [0.0], True, True),
    Case("half_at_two", half_at_two, [0.0], [-1.0], [0.0], [-1.0], True, True),
    Case("cauchy", cauchy, "none", "none", [0.0], [0.0], True, True),
    Case("gamma_subordinator", gamma_subordinator, [1.0], [0.0], [1.0], [0.0], True, True),
    Case("one_sided_tail", one_sided_tail, "none", [0.0], "diverges", [0.0], False, True),
    Case("one_sided_small", one_sided_small, [0.0], "none", [0.0], "diverges", True, False),
    Case("two_sided_25", two_sided_25, [0.0], "none", [0.0], [0.0], True, True),
    Case("alternating_tail", alternating_tail, "none", [0.0], [-math.log(2.0)], [0.0], False, True),
]


@pytest.fixture(params=SUITE, ids=lambda c: c.name)
def case(request):
    return request.param


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion (tests tagged with record_property)."""
    rows = []
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            props = dict(getattr(rep, "user_properties", ()))
            if "criterion" in props and rep.when == "call":
                rows.append((props["criterion"], "PASS" if key == "passed" else "FAIL", props.get("title", "")))
    if rows:
        terminalreporter.section("acceptance criteria")
        for num, status, title in sorted(rows):
            terminalreporter.write_line(f"criterion {num:>2}: {status}  {title}")
