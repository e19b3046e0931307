"""Probe-qubit read-out of D-operation eigenvalues.

The controlled string operation puts the eigenvalue phase of the memory onto
the probe's |1> branch; measuring sigma_phi then traces cos(phi - theta).
The memory is never simulated jointly with the probe.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from .ghz import DOperation, composite_operator
from .lattice import TorusLattice
from .pauli import PauliTerm
from .stabilizer import StabilizerGroup


class DecoheringProbeError(ValueError):
    """The memory state is not an eigenstate of the applied operation."""


@dataclass(frozen=True)
class ProbeState:
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta) % (2 * math.pi))


@dataclass(frozen=True)
class ShotRecord:
    count: int
    plus: int
    seed: int


@dataclass(frozen=True)
class FringePoint:
    phi: float
    expectation: float
    shots: Optional[ShotRecord] = None


@dataclass
class FringeSeries:
    theta: float
    points: list[FringePoint] = field(default_factory=list)

    @property
    def phis(self) -> list[float]:
        return [p.phi for p in self.points]

    @property
    def values(self) -> list[float]:
        return [p.expectation for p in self.points]

    def argmax_phi(self) -> float:
        return self.points[int(np.argmax(self.values))].phi

    def contrast(self) -> float:
        vals = self.values
        return max(vals) - min(vals)

    def to_csv(self) -> str:
        sampled = any(p.shots is not None for p in self.points)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["phi", "expectation", "shots", "plus"] if sampled else ["phi", "expectation"])
        for p in self.points:
            row = [f"{p.phi:.12g}", f"{p.expectation:.12g}"]
            if sampled:
                row += [p.shots.count, p.shots.plus] if p.shots else ["", ""]
            w.writerow(row)
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, theta: float = 0.0) -> "FringeSeries":
        rows = list(csv.DictReader(io.StringIO(text)))
        points = []
        for row in rows:
            shots = None
            if row.get("shots"):
                shots = ShotRecord(int(row["shots"]), int(row["plus"]), seed=-1)
            points.append(FringePoint(float(row["phi"]), float(row["expectation"]), shots))
        return cls(theta, points)

    def to_dict(self) -> dict:
        return {
            "theta": self.theta,
            "points": [
                {
                    "phi": p.phi,
                    "expectation": p.expectation,
                    "shots": None if p.shots is None else vars(p.shots),
                }
                for p in self.points
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FringeSeries":
        points = [
            FringePoint(p["phi"], p["expectation"], None if p["shots"] is None else ShotRecord(**p["shots"]))
            for p in data["points"]
        ]
        return cls(data["theta"], points)


def probe_from_term(ground: StabilizerGroup, p: PauliTerm) -> ProbeState:
    lam = ground.eigenvalue(p)
    if lam == 0:
        raise DecoheringProbeError("operation has zero expectation; the probe would entangle with the memory")
    return ProbeState(0.0 if lam == 1 else math.pi)


def controlled_string_probe(
    ground: StabilizerGroup, d: DOperation, lattice: Optional[TorusLattice] = None
) -> ProbeState:
    """Probe state after the controlled version of ``d`` acts on the |1> branch."""
    if lattice is None:
        lattice = TorusLattice(round(math.sqrt(ground.n / 2)))
    return probe_from_term(ground, composite_operator(lattice, d))


def sigma_phi_expectation(probe: ProbeState, phi: float) -> float:
    return math.cos(phi - probe.theta)


def sample_shots(probe: ProbeState, phi: float, shots: int, seed: int) -> tuple[int, int]:
    """Seeded Bernoulli read-outs of sigma_phi; returns (plus_count, minus_count)."""
    if shots < 1:
        raise ValueError("need at least one shot")
    p_plus = min(1.0, max(0.0, (1.0 + sigma_phi_expectation(probe, phi)) / 2.0))
    rng = np.random.default_rng(seed)
    plus = int(np.count_nonzero(rng.random(shots) < p_plus))
    return plus, shots - plus


def phi_grid(points: int = 64) -> list[float]:
    """Uniform closed-open grid on [0, 2pi)."""
    if points < 1:
        raise ValueError("need at least one grid point")
    return [2 * math.pi * j / points for j in range(points)]


def fringe_from_probe(
    probe: ProbeState,
    phis: Iterable[float],
    shots: Optional[int] = None,
    seed: Optional[int] = None,
) -> FringeSeries:
    """Analytic fringe, or a shot-sampled one when ``shots`` is given.

    Each phi gets its own generator, seeded from ``(seed, grid index)``.
    """
    if shots is not None and seed is None:
        raise ValueError("a seed is required for sampled fringes")
    series = FringeSeries(probe.theta)
    for j, phi in enumerate(phis):
        if shots is None:
            series.points.append(FringePoint(phi, sigma_phi_expectation(probe, phi)))
            continue
        point_seed = int(np.random.SeedSequence([seed, j]).generate_state(1)[0])
        plus, minus = sample_shots(probe, phi, shots, point_seed)
        series.points.append(FringePoint(phi, (plus - minus) / shots, ShotRecord(shots, plus, point_seed)))
    return series


def fringe_scan(
    ground: StabilizerGroup,
    d: DOperation,
    phis: Sequence[float],
    shots: Optional[int] = None,
    seed: Optional[int] = None,
    lattice: Optional[TorusLattice] = None,
) -> FringeSeries:
    return fringe_from_probe(controlled_string_probe(ground, d, lattice), phis, shots, seed)
