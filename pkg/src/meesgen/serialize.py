"""JSON export of complex matrices and gate plans.

Complex entries are encoded as [re, im] pairs; gate plans as ordered
factor records plus the trailing CNOT tag.
"""

from __future__ import annotations

import json

import numpy as np

from .synthesis import GatePlan


def matrix_to_json(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    return {
        "dim": m.shape[0],
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in m],
    }


def matrix_from_json(doc: dict) -> np.ndarray:
    entries = doc["entries"]
    return np.array([[complex(re, im) for re, im in row] for row in entries])


def gate_plan_to_json(plan: GatePlan) -> dict:
    return {
        "dim": plan.dim,
        "subsystem": plan.subsystem,
        "cnot": plan.cnot,
        "factors": [
            {"kind": f.kind, "index": f.index, "c": f.c, "s": f.s, "theta": f.theta}
            for f in plan.factors
        ],
    }


def dump_json(doc: dict, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
