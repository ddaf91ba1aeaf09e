"""JSON forms of states, bases, specs and pair files.

A state is a 2d x 1 matrix object plus ``"d"``; a basis is
``{"d", "labels", "states"}``; a spec is ``{"d", "S", "W"}``; a pair file is
``{"d", "first", "second", "spec"?}``. Floats are written with ``repr``
precision, which round-trips doubles exactly.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .bases import BasisSet
from .entanglement import BipartiteState
from .errors import ShapeError
from .linalg import matrix_from_json, matrix_to_json
from .mub import MubPairSpec, PhaseSpec


def state_to_json(s: BipartiteState) -> dict:
    return {"d": s.d, **matrix_to_json(s.amplitudes.reshape(-1, 1))}


def state_from_json(obj) -> BipartiteState:
    M = matrix_from_json(obj)
    if M.shape[1] != 1:
        raise ShapeError(f"a state must be a column vector, got {M.shape[0]}x{M.shape[1]}")
    d = _int_field(obj, "d")
    return BipartiteState(d, M[:, 0])


def basis_to_json(b: BasisSet) -> dict:
    return {
        "d": b.d,
        "labels": [list(lab) for lab in b.labels],
        "states": [state_to_json(s) for s in b.states],
    }


def basis_from_json(obj) -> BasisSet:
    d = _int_field(obj, "d")
    try:
        labels = tuple((int(n), int(m)) for n, m in obj["labels"])
        states = tuple(state_from_json(s) for s in obj["states"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"malformed basis object: {exc}") from None
    return BasisSet(d, labels, states)


def spec_to_json(spec: MubPairSpec) -> dict:
    return {"d": spec.d, "S": matrix_to_json(spec.S), "W": matrix_to_json(spec.W)}


def spec_from_json(obj) -> MubPairSpec:
    d = _int_field(obj, "d")
    try:
        S, W = obj["S"], obj["W"]
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"malformed spec object: missing {exc}") from None
    return MubPairSpec(d, matrix_from_json(S), matrix_from_json(W))


def phase_spec_to_json(ps: PhaseSpec) -> dict:
    return {
        "d": ps.d,
        "phi1": ps.phi1,
        "phi2": ps.phi2,
        "r": matrix_to_json(ps.r),
        "theta": matrix_to_json(ps.theta),
    }


def phase_spec_from_json(obj) -> PhaseSpec:
    d = _int_field(obj, "d")
    try:
        phi1, phi2 = float(obj["phi1"]), float(obj["phi2"])
        r, theta = matrix_from_json(obj["r"]), matrix_from_json(obj["theta"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"malformed phase spec: {exc}") from None
    if np.any(r.imag != 0) or np.any(theta.imag != 0):
        raise ShapeError("r and theta must be real matrices")
    return PhaseSpec(d, phi1, phi2, r.real, theta.real)


def pair_to_json(first: BasisSet, second: BasisSet, spec: MubPairSpec | None = None) -> dict:
    out = {"d": first.d, "first": basis_to_json(first), "second": basis_to_json(second)}
    if spec is not None:
        out["spec"] = spec_to_json(spec)
    return out


def pair_from_json(obj) -> tuple[BasisSet, BasisSet]:
    try:
        first, second = obj["first"], obj["second"]
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"malformed pair file: missing {exc}") from None
    return basis_from_json(first), basis_from_json(second)


def read_json(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=1) + "\n")


def _int_field(obj, key) -> int:
    try:
        return int(obj[key])
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeError(f"missing or invalid integer field {key!r}: {exc}") from None
