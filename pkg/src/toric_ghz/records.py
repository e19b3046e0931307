"""JSON records for D-sets.

Schema::

    {"k", "anchor"?, "lx", "lz1", "lz2",
     "splits": {"d1": {"pre", "post"}, ..., "d4": {...}},
     "equations": [{"terms": [[qubit, axis], ...], "parity"}],
     "eigenvalues": [4 ints], "lr_satisfying": int}

Edge ids follow :mod:`toric_ghz.lattice`.
"""

from __future__ import annotations

import json
from typing import Optional

from .ghz import (
    LABELS,
    DOperation,
    MeasurementEquation,
    DSet,
    eigenvalues,
    lr_assignment_search,
    measurement_equations,
    parity_contradiction,
)
from .lattice import TorusLattice, dual
from .stabilizer import StabilizerGroup


class RecordError(ValueError):
    """A D-set record that does not match the schema."""


def equation_dict(eq) -> dict:
    return {"terms": [[q, a] for q, a in eq.terms], "parity": eq.parity}


def dset_record(
    lattice: TorusLattice, dset: DSet, ground: Optional[StabilizerGroup] = None
) -> dict:
    eqs = measurement_equations(lattice, dset, ground)
    rec: dict = {"k": dset.k}
    if dset.anchor is not None:
        rec["anchor"] = list(dset.anchor)
    rec["lx"] = list(dset.lx.sorted_edges())
    rec["lz1"] = list(dset.lz1.sorted_edges())
    rec["lz2"] = list(dset.lz2.sorted_edges())
    rec["splits"] = {
        op.label.lower(): {"pre": list(op.pre_z), "post": list(op.post_z)} for op in dset.ops
    }
    rec["equations"] = [equation_dict(eq) for eq in eqs]
    rec["eigenvalues"] = eigenvalues(lattice, dset, ground)
    rec["lr_satisfying"] = lr_assignment_search(eqs)
    return rec


def dumps(rec: dict) -> str:
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def _int_list(rec: dict, key: str) -> list[int]:
    val = rec.get(key)
    if not isinstance(val, list) or not all(isinstance(e, int) and not isinstance(e, bool) for e in val):
        raise RecordError(f"field {key!r} must be a list of integers")
    return val


def dset_from_record(rec: dict) -> DSet:
    if not isinstance(rec, dict):
        raise RecordError("record must be a JSON object")
    k = rec.get("k")
    if not isinstance(k, int) or isinstance(k, bool):
        raise RecordError("field 'k' must be an integer")
    lattice = TorusLattice(k)
    splits = rec.get("splits")
    if not isinstance(splits, dict):
        raise RecordError("field 'splits' must be an object")
    lx = dual(_int_list(rec, "lx"))
    ops = []
    for label in LABELS:
        part = splits.get(label.lower())
        if not isinstance(part, dict):
            raise RecordError(f"missing split for {label}")
        pre, post = _int_list(part, "pre"), _int_list(part, "post")
        try:
            lattice.validate_edges(pre + post + sorted(lx.edges))
            ops.append(DOperation(label, tuple(pre), lx, tuple(post)))
        except ValueError as err:
            raise RecordError(str(err)) from err
    anchor = rec.get("anchor")
    if anchor is not None:
        if not (isinstance(anchor, list) and len(anchor) == 2 and all(isinstance(a, int) for a in anchor)):
            raise RecordError("field 'anchor' must be a pair of integers")
        anchor = tuple(anchor)
    try:
        dset = DSet(k, tuple(ops), anchor=anchor)
    except ValueError as err:
        raise RecordError(str(err)) from err
    for key, loop in (("lz1", dset.lz1), ("lz2", dset.lz2)):
        if sorted(_int_list(rec, key)) != list(loop.sorted_edges()):
            raise RecordError(f"field {key!r} disagrees with the splits")
    return dset


def verify_record(rec: dict, ground: Optional[StabilizerGroup] = None) -> tuple[dict, list[str]]:
    """Recompute a record from its loops and splits; list every disagreeing field."""
    dset = dset_from_record(rec)
    lattice = TorusLattice(dset.k)
    fresh = dset_record(lattice, dset, ground)
    problems = []
    for key in ("equations", "eigenvalues", "lr_satisfying"):
        if key in rec and rec[key] != fresh[key]:
            problems.append(f"{key}: stored {rec[key]!r}, recomputed {fresh[key]!r}")
    return fresh, problems


def paradox_holds(rec: dict) -> bool:
    eqs = [MeasurementEquation(tuple(map(tuple, e["terms"])), e["parity"]) for e in rec["equations"]]
    product = 1
    for lam in rec["eigenvalues"]:
        product *= lam
    return product == -1 and rec["lr_satisfying"] == 0 and parity_contradiction(eqs)
