"""JSON distribution files: {"dim", "gaussian", "gamma", "levy": {"kind": ...}}."""

from __future__ import annotations

import hashlib
import json

import numpy as np

from ..errors import DomainError
from .measures import measure_from_dict
from .triplet import LevyTriplet

LEVY_KINDS = ("atoms", "polar", "radial", "stable", "density1d")


def triplet_from_dict(d: dict) -> LevyTriplet:
    try:
        dim = int(d["dim"])
        gamma = np.asarray(d.get("gamma", [0.0] * dim), dtype=float).reshape(dim)
        A = np.asarray(d.get("gaussian", np.zeros((dim, dim))), dtype=float).reshape(dim, dim)
        levy = d.get("levy")
        if levy is None:
            levy = {"kind": "atoms", "points": [], "masses": []}
        if levy.get("kind") not in LEVY_KINDS:
            raise DomainError(f"unknown Levy measure kind {levy.get('kind')!r}")
        nu = measure_from_dict(levy, dim)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed distribution file: {exc}") from exc
    return LevyTriplet(A, nu, gamma)


def triplet_to_dict(mu: LevyTriplet) -> dict:
    return {"dim": mu.dim, "gaussian": mu.A.tolist(), "gamma": mu.gamma.tolist(), "levy": mu.nu.to_dict()}


def load_triplet(path) -> tuple[LevyTriplet, str]:
    """Read a distribution file; returns the triplet and the sha256 of the file bytes."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path}: not valid JSON ({exc})") from exc
    return triplet_from_dict(data), hashlib.sha256(raw).hexdigest()


def dump_triplet(mu: LevyTriplet, path=None) -> str:
    text = json.dumps(triplet_to_dict(mu), indent=2)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text
