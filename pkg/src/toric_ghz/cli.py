"""Command-line entry point: ``toric-ghz {verify,enumerate,fringe,oracle-check}``.

Every flag can also come from an environment variable ``TORIC_<FLAG>``
(dashes become underscores); flags win.  Exit codes: 0 success, 1 negative
result, 2 usage or validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import dense, ghz, interferometry, records, toric
from .lattice import TorusLattice

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    k: Optional[int] = None
    anchor: tuple[int, int] = (0, 0)
    input: Optional[str] = None
    index: int = 0
    max_loop_len: int = 4
    limit: Optional[int] = 100
    op: Optional[str] = None
    points: int = 64
    shots: Optional[int] = None
    seed: Optional[int] = None
    trials: int = 1000
    output: Optional[str] = None
    format: str = "json"

    def validate(self) -> None:
        if self.k is not None and self.k < 2:
            raise UsageError(f"--k must be >= 2, got {self.k}")
        if self.command in ("verify", "fringe") and self.input is None:
            if self.k is None:
                raise UsageError("--k is required unless --input is given")
            if self.k < 3:
                raise UsageError("the canonical D-set needs --k >= 3")
        if self.command == "enumerate":
            if self.k is None or self.k < 3:
                raise UsageError("enumerate needs --k >= 3")
            if self.max_loop_len < 4:
                raise UsageError("--max-loop-len must be >= 4")
            if self.limit is not None and self.limit < 0:
                raise UsageError("--limit must be >= 0")
        if self.command == "fringe":
            if self.input is None and self.op not in ("d1", "d2", "d3", "d4"):
                raise UsageError("--op must be one of d1, d2, d3, d4")
            if self.points < 1:
                raise UsageError("--points must be >= 1")
            if self.shots is not None:
                if self.shots < 1:
                    raise UsageError("--shots must be >= 1")
                if self.seed is None:
                    raise UsageError("--seed is required with --shots")
            if self.format not in ("csv", "json"):
                raise UsageError("--format must be csv or json")
        if self.command == "oracle-check":
            if self.k is None:
                raise UsageError("--k is required")
            if self.k > 3:
                raise UsageError(f"dense oracle supports k <= 3, got {self.k}")
            if self.trials < 0:
                raise UsageError("--trials must be >= 0")
        if self.k is not None:
            r, c = self.anchor
            if not (0 <= r < self.k and 0 <= c < self.k):
                raise UsageError(f"--anchor {self.anchor} outside the {self.k}x{self.k} lattice")


def _anchor(text: str) -> tuple[int, int]:
    try:
        r, c = (int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"anchor must look like 'r,c', got {text!r}")
    return r, c


def _optional_int(text: str) -> Optional[int]:
    return None if text.lower() in ("", "none", "all") else int(text)


def _env(name: str, default=None):
    return os.environ.get("TORIC_" + name.upper().replace("-", "_"), default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toric-ghz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(p, flag, **kw):
        name = flag.lstrip("-")
        default = kw.pop("default", None)
        p.add_argument(flag, default=_env(name, default), **kw)

    verify = sub.add_parser("verify", help="check the D-set eigenvalues and the LR contradiction")
    add(verify, "--k", type=int)
    add(verify, "--anchor", type=_anchor, default="0,0")
    add(verify, "--input", help="D-set JSON (or JSON-lines, see --index)")
    add(verify, "--index", type=int, default="0")
    add(verify, "--output")

    enum = sub.add_parser("enumerate", help="stream paradox-admitting D-sets as JSON lines")
    add(enum, "--k", type=int)
    add(enum, "--max-loop-len", type=int, default="4")
    add(enum, "--limit", type=_optional_int, default="100")
    add(enum, "--output")

    fringe = sub.add_parser("fringe", help="probe fringe <sigma_phi> for one D operation")
    add(fringe, "--k", type=int)
    add(fringe, "--anchor", type=_anchor, default="0,0")
    add(fringe, "--op", type=str.lower)
    add(fringe, "--input")
    add(fringe, "--index", type=int, default="0")
    add(fringe, "--points", type=int, default="64")
    add(fringe, "--shots", type=int)
    add(fringe, "--seed", type=int)
    add(fringe, "--format", default="csv")
    add(fringe, "--output")

    oracle = sub.add_parser("oracle-check", help="cross-check the stabilizer engine against state vectors")
    add(oracle, "--k", type=int)
    add(oracle, "--trials", type=int, default="1000")
    add(oracle, "--seed", type=int, default="0")
    add(oracle, "--output")
    return parser


def _emit(text: str, output: Optional[str]) -> None:
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _load_record(path: str, index: int) -> dict:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        lines = [ln for ln in text.splitlines() if ln.strip()]
        try:
            data = [json.loads(ln) for ln in lines]
        except json.JSONDecodeError as err:
            raise records.RecordError(f"{path}: not JSON or JSON lines: {err}") from err
    if isinstance(data, list):
        if not 0 <= index < len(data):
            raise records.RecordError(f"{path}: index {index} out of range ({len(data)} records)")
        data = data[index]
    return data


def _dset_for(cfg: RunConfig) -> tuple[TorusLattice, ghz.DSet, Optional[dict]]:
    if cfg.input is not None:
        rec = _load_record(cfg.input, cfg.index)
        dset = records.dset_from_record(rec)
        return TorusLattice(dset.k), dset, rec
    lattice = TorusLattice(cfg.k)
    return lattice, ghz.canonical_dset(lattice, cfg.anchor), None


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_verify(cfg: RunConfig) -> int:
    lattice, dset, stored = _dset_for(cfg)
    if stored is not None:
        fresh, problems = records.verify_record(stored)
    else:
        fresh, problems = records.dset_record(lattice, dset), []
    eqs = [ghz.MeasurementEquation(tuple(map(tuple, e["terms"])), e["parity"]) for e in fresh["equations"]]
    holds = records.paradox_holds(fresh) and not problems
    report = dict(fresh)
    report["parity_contradiction"] = ghz.parity_contradiction(eqs)
    report["mismatches"] = problems
    report["paradox"] = holds
    _emit(_dump(report), cfg.output)
    return EXIT_OK if holds else EXIT_NEGATIVE


def cmd_enumerate(cfg: RunConfig) -> int:
    lattice = TorusLattice(cfg.k)
    ground = toric.ground_stabilizers(lattice)
    out = sys.stdout if cfg.output is None else open(cfg.output, "w", encoding="utf-8", newline="\n")
    count = lr_zero = 0
    try:
        for dset in ghz.generate_paradox_sets(lattice, cfg.max_loop_len, cfg.limit, ground):
            rec = records.dset_record(lattice, dset, ground)
            out.write(records.dumps(rec) + "\n")
            count += 1
            lr_zero += rec["lr_satisfying"] == 0
    finally:
        if out is not sys.stdout:
            out.close()
        else:
            out.flush()
    summary = {"k": cfg.k, "max_loop_len": cfg.max_loop_len, "limit": cfg.limit, "records": count, "lr_zero": lr_zero}
    sys.stderr.write(json.dumps({"summary": summary}, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_fringe(cfg: RunConfig) -> int:
    lattice, dset, _ = _dset_for(cfg)
    op = dset.ops[int(cfg.op[1]) - 1] if cfg.op else dset.ops[0]
    ground = toric.ground_stabilizers(lattice)
    try:
        series = interferometry.fringe_scan(
            ground, op, interferometry.phi_grid(cfg.points), cfg.shots, cfg.seed, lattice
        )
    except interferometry.DecoheringProbeError as err:
        sys.stderr.write(f"{op.label}: {err}\n")
        return EXIT_NEGATIVE
    text = series.to_csv() if cfg.format == "csv" else _dump(series.to_dict())
    _emit(text, cfg.output)
    return EXIT_OK


def cmd_oracle_check(cfg: RunConfig) -> int:
    lattice = TorusLattice(cfg.k)
    rep = dense.equivalence_check(lattice, cfg.trials, cfg.seed)
    k2 = lattice.k**2
    norm_const = dense.normalization_constant(lattice)
    expected = 2 ** (-(k2 + 1) / 2)
    g0 = dense.dense_ground_state(lattice)
    bases = [dense.dense_ground_basis(lattice, label, g0) for label in toric.ALL_LABELS]
    orthonormal = all(
        abs(abs(dense.overlap(a, b)) - (i == j)) < dense.TOL
        for i, a in enumerate(bases)
        for j, b in enumerate(bases)
    )
    report = {
        "k": lattice.k,
        "trials": cfg.trials,
        "seed": cfg.seed,
        "mismatches": rep.mismatches,
        "classification_counts": {str(key): v for key, v in rep.counts.items()},
        "normalization": {"measured": norm_const, "expected": expected, "match": math.isclose(norm_const, expected, rel_tol=1e-12)},
        "ground_basis_orthonormal": orthonormal,
    }
    ok = rep.ok and report["normalization"]["match"] and orthonormal
    if lattice.n_edges <= 12:
        dim = dense.projector_rank(lattice.n_edges, toric.check_generators(lattice))
        report["code_space_dimension"] = dim
        ok = ok and dim == 4
    if lattice.k >= 3:
        dset = ghz.canonical_dset(lattice, (0, 0))
        dense_lams = [
            dense.classify(dense.expectation_dense(g0, p)) for p in ghz.composites(lattice, dset)
        ]
        report["canonical_dense_eigenvalues"] = dense_lams
        ok = ok and dense_lams == ghz.eigenvalues(lattice, dset)
    report["ok"] = ok
    _emit(_dump(report), cfg.output)
    return EXIT_OK if ok else EXIT_NEGATIVE


COMMANDS = {
    "verify": cmd_verify,
    "enumerate": cmd_enumerate,
    "fringe": cmd_fringe,
    "oracle-check": cmd_oracle_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(**vars(args))
    try:
        cfg.validate()
        return COMMANDS[cfg.command](cfg)
    except ghz.ParadoxError as err:
        sys.stderr.write(f"toric-ghz {cfg.command}: {err}\n")
        return EXIT_NEGATIVE
    except (UsageError, records.RecordError) as err:
        sys.stderr.write(f"toric-ghz {cfg.command}: error: {err}\n")
        return EXIT_USAGE
    except OSError as err:
        sys.stderr.write(f"toric-ghz {cfg.command}: I/O error: {err}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
