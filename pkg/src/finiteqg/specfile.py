"""Text file formats: quantum-group spec files (version 1) and pipeline exports.

All complex numbers are stored as (re, im) pairs, matrices as nested lists,
sparse structure data as (indices..., re, im) tuples.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

import numpy as np

from . import builders, numlin, star_algebra
from .builders import FiniteQuantumGroup, GroupTable
from .errors import SpecInvalid, ValidationFailed, VersionUnsupported
from .numlin import Array, DEFAULT_TOL, Tolerance, cmat, dagger
from .star_algebra import StarAlgebra

VERSION = 1
KINDS = ("group_function", "group_algebra", "structure_constants", "kac_paljutkin")


def _pair(z: complex) -> list[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _unpair(p) -> complex:
    return complex(p[0], p[1])


def vec_to_json(v: Array) -> list:
    return [_pair(z) for z in np.asarray(v).reshape(-1)]


def vec_from_json(data) -> Array:
    return np.array([_unpair(p) for p in data], dtype=complex)


def mat_to_json(m: Array) -> list:
    return [[_pair(z) for z in row] for row in np.asarray(m)]


def mat_from_json(data) -> Array:
    return np.array([[_unpair(p) for p in row] for row in data], dtype=complex)


def _sparse(arr: Array) -> list:
    entries = []
    a = np.asarray(arr)
    for idx in np.argwhere(np.abs(a) > 0):
        z = a[tuple(idx)]
        entries.append([int(i) for i in idx] + [float(z.real), float(z.imag)])
    return entries


def _unsparse(entries, shape) -> Array:
    a = np.zeros(shape, dtype=complex)
    for entry in entries:
        *idx, re, im = entry
        a[tuple(int(i) for i in idx)] = complex(re, im)
    return a


# -- spec files ------------------------------------------------------------------


def validate_spec(spec: dict) -> None:
    if not isinstance(spec, dict):
        raise SpecInvalid("spec must be a JSON object")
    if spec.get("version") != VERSION:
        raise SpecInvalid(f"unsupported spec version {spec.get('version')!r}")
    kind = spec.get("kind")
    if kind not in KINDS:
        raise SpecInvalid(f"unknown kind {kind!r}")
    if kind in ("group_function", "group_algebra") and "table" not in spec:
        raise SpecInvalid("group kinds require a Cayley table")
    if kind == "structure_constants":
        for key in ("dim", "structure", "involution", "unit", "comul"):
            if key not in spec:
                raise SpecInvalid(f"structure_constants spec lacks {key!r}")
        n = spec["dim"]
        for key, arity in (("structure", 3), ("involution", 2), ("unit", 1), ("comul", 3)):
            for entry in spec[key]:
                if len(entry) != arity + 2:
                    raise SpecInvalid(f"{key} entries must be (indices..., re, im)")
                if not all(0 <= int(i) < n for i in entry[:arity]):
                    raise SpecInvalid(f"{key} index out of range")


def load_spec(path: str) -> dict:
    with open(path) as fh:
        spec = json.load(fh)
    validate_spec(spec)
    return spec


def parse_structure_constants(spec: dict) -> tuple[StarAlgebra, Array, tuple[str, ...]]:
    n = int(spec["dim"])
    c = _unsparse(spec["structure"], (n, n, n))
    s = _unsparse(spec["involution"], (n, n))
    unit = _unsparse(spec["unit"], (n,))
    comul = _unsparse(spec["comul"], (n, n, n)).reshape(n * n, n)
    labels = tuple(spec.get("labels") or ())
    return StarAlgebra(c, s, unit, labels), comul, labels


def structure_spec(alg: StarAlgebra, comul: Array, name: str = "") -> dict:
    n = alg.dim
    return {
        "version": VERSION,
        "kind": "structure_constants",
        "name": name,
        "dim": n,
        "labels": list(alg.labels),
        "structure": _sparse(alg.structure),
        "involution": _sparse(alg.involution),
        "unit": _sparse(alg.unit),
        "comul": _sparse(np.asarray(comul).reshape(n, n, n)),
    }


def spec_to_qg(spec: dict, tol: Tolerance = DEFAULT_TOL) -> FiniteQuantumGroup:
    validate_spec(spec)
    kind = spec["kind"]
    if kind == "kac_paljutkin":
        return builders.kac_paljutkin(tol)
    if kind in ("group_function", "group_algebra"):
        table = GroupTable.from_table(spec["table"], tuple(spec.get("labels") or ()))
        build = builders.function_algebra if kind == "group_function" else builders.group_algebra
        qg = build(table, tol)
        if spec.get("name"):
            qg = FiniteQuantumGroup(qg.alg, qg.comul, qg.haar_left, qg.haar_right,
                                    spec["name"])
        return qg
    alg, comul, _ = parse_structure_constants(spec)
    return builders.make_quantum_group(alg, comul, spec.get("name", "custom"), tol)


def dual_spec(pipe) -> dict:
    """Spec file for the dual quantum group, re-ingestable as structure_constants."""
    dp = pipe.dual.pipe
    return structure_spec(dp.qg.alg, dp.qg.comul, name=dp.qg.name)


# -- pipeline exports -------------------------------------------------------------


EXPORT_KIND = "pipeline_export"


def export_qg(pipe, spec: dict, path: str | None = None) -> dict:
    """Versioned, round-trippable snapshot of the computed operators.

    Sections that were not computed (for instance the dual of a shallow
    pipeline) are marked explicitly as null.
    """
    out = {
        "version": VERSION,
        "kind": EXPORT_KIND,
        "example_id": pipe.name,
        "spec": spec,
        "haar_left": vec_to_json(pipe.qg.haar_left),
        "haar_right": vec_to_json(pipe.qg.haar_right),
        "gram": mat_to_json(pipe.gns.gram),
        "lam": mat_to_json(pipe.gns.lam),
        "W": mat_to_json(pipe.W),
        "nabla": mat_to_json(pipe.modular.nabla),
        "J": mat_to_json(pipe.modular.J.mat),
        "N": mat_to_json(pipe.polar.N),
        "I": mat_to_json(pipe.polar.I.mat),
        "delta": vec_to_json(pipe.melt.delta),
        "nu": pipe.nu,
    }
    if pipe.dual is not None:
        dp = pipe.dual.pipe
        out["dual"] = {
            "basis": [mat_to_json(b) for b in pipe.dual.b_mats],
            "W_hat": mat_to_json(dp.W),
            "nabla_hat": mat_to_json(dp.modular.nabla),
            "J_hat": mat_to_json(dp.modular.J.mat),
            "phi_hat": vec_to_json(dp.qg.haar_left),
            "delta_hat": vec_to_json(dp.melt.delta),
        }
    else:
        out["dual"] = None
    if path is not None:
        with open(path, "w") as fh:
            json.dump(out, fh, indent=1, sort_keys=True)
    return out


@dataclass
class ImportedState:
    qg: FiniteQuantumGroup
    data: dict

    def matrix(self, key: str) -> Array:
        return mat_from_json(self.data[key])


def import_qg(path_or_data, tol: Tolerance = DEFAULT_TOL) -> ImportedState:
    """Load an export file; a fast re-validation pass (algebra axioms,
    comultiplication axioms, unitarity of W) gates acceptance."""
    if isinstance(path_or_data, (str, os.PathLike)):
        with open(path_or_data) as fh:
            data = json.load(fh)
    else:
        data = path_or_data
    if data.get("version") != VERSION:
        raise VersionUnsupported(f"export version {data.get('version')!r}")
    if data.get("kind") != EXPORT_KIND:
        raise ValidationFailed("not a pipeline export file")

    qg = spec_to_qg(data["spec"], tol)
    rep = star_algebra.axioms_check(qg.alg, tol)
    rep.merge(builders.comultiplication_check(qg.alg, qg.comul, tol))
    if not rep.all_passed:
        raise ValidationFailed("algebra or comultiplication axioms fail on import")
    w = mat_from_json(data["W"])
    n2 = w.shape[0]
    if numlin.resid(dagger(w) @ w, np.eye(n2)) > tol.effective(n2):
        raise ValidationFailed("stored W is not unitary")
    if numlin.resid(vec_from_json(data["haar_left"]), qg.haar_left) > tol.effective(qg.dim):
        raise ValidationFailed("stored left Haar functional does not match the spec")
    return ImportedState(qg, data)
