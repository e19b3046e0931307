"""Brute-force state vectors for small lattices.

Basis index bit q is the computational value of qubit q.  Used only to
certify the stabilizer path, so everything here is plain numpy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lattice import TorusLattice
from .pauli import PauliTerm
from .stabilizer import StabilizerGroup
from .toric import GroundBasisLabel, ground_stabilizers, logical_x, vertex_op

MAX_QUBITS = 20
TOL = 1e-9

_PHASES = np.array([1, 1j, -1, -1j])


@dataclass(frozen=True)
class DenseState:
    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n > MAX_QUBITS:
            raise ValueError(f"{self.n} qubits exceed the dense limit of {MAX_QUBITS}")
        if self.amplitudes.shape != (1 << self.n,):
            raise ValueError("amplitude vector has the wrong length")

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def allclose(self, other: "DenseState", atol: float = 1e-12) -> bool:
        return self.n == other.n and np.allclose(self.amplitudes, other.amplitudes, atol=atol, rtol=0)


def _check_size(n: int) -> None:
    if n > MAX_QUBITS:
        raise ValueError(f"{n} qubits exceed the dense limit of {MAX_QUBITS}")


def _apply(amps: np.ndarray, n: int, p: PauliTerm) -> np.ndarray:
    if p.n != n:
        raise ValueError(f"size mismatch: {p.n} vs {n} qubits")
    idx = np.arange(1 << n, dtype=np.uint64)
    # Z first (diagonal sign), then X permutes |b> -> |b ^ x>
    sign = 1 - 2 * (np.bitwise_count(idx & np.uint64(p.z_mask)) & 1).astype(np.int8)
    out = np.empty_like(amps)
    out[idx ^ np.uint64(p.x_mask)] = amps * sign
    return out * _PHASES[p.phase_exp]


def apply_pauli_dense(state: DenseState, p: PauliTerm) -> DenseState:
    return DenseState(state.n, _apply(state.amplitudes, state.n, p))


def expectation_dense(state: DenseState, p: PauliTerm) -> complex:
    return complex(np.vdot(state.amplitudes, _apply(state.amplitudes, state.n, p)))


def unnormalized_ground(lattice: TorusLattice) -> np.ndarray:
    """prod_V (1 + A_V) applied to |0...0>, before normalization."""
    n = lattice.n_edges
    _check_size(n)
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = 1.0
    for v in lattice.vertices():
        amps = amps + _apply(amps, n, vertex_op(lattice, v))
    return amps


def overlap(a: DenseState, b: DenseState) -> complex:
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def normalization_constant(lattice: TorusLattice) -> float:
    return 1.0 / float(np.linalg.norm(unnormalized_ground(lattice)))


def dense_ground_state(lattice: TorusLattice) -> DenseState:
    amps = unnormalized_ground(lattice)
    return DenseState(lattice.n_edges, amps / np.linalg.norm(amps))


def dense_ground_basis(
    lattice: TorusLattice, label: GroundBasisLabel, g0: DenseState | None = None
) -> DenseState:
    """|g0> with the selected logical x-loops applied."""
    state = g0 if g0 is not None else dense_ground_state(lattice)
    lx1, lx2 = logical_x(lattice)
    if label.a:
        state = apply_pauli_dense(state, lx1)
    if label.b:
        state = apply_pauli_dense(state, lx2)
    return state


def dense_from_group(group: StabilizerGroup, seed: int = 0) -> DenseState:
    """Stabilizer state of a full-rank group, projected out of a random vector."""
    if not group.full_rank:
        raise ValueError("need a full-rank group to fix a single state")
    n = group.n
    _check_size(n)
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    for g in group.generators:
        amps = 0.5 * (amps + _apply(amps, n, g))
    amps = amps / np.linalg.norm(amps)
    # fix the global phase on the largest amplitude for reproducible output
    j = int(np.argmax(np.abs(amps)))
    amps = amps * (abs(amps[j]) / amps[j])
    return DenseState(n, amps)


def projector_rank(n: int, terms: list[PauliTerm]) -> int:
    """Dimension of the joint +1 eigenspace, as the trace of prod (1 + g)/2."""
    _check_size(n)
    dim = 1 << n
    if dim > 1 << 12:
        raise ValueError("projector rank is computed with dense matrices; n <= 12 only")
    proj = np.eye(dim, dtype=complex)
    for g in terms:
        cols = np.stack([_apply(proj[:, j], n, g) for j in range(dim)], axis=1)
        proj = 0.5 * (proj + cols)
    return int(round(np.trace(proj).real))


def classify(value: complex, tol: float = TOL) -> int:
    """Snap an expectation that must be -1, 0 or +1; raise otherwise."""
    for target in (-1, 0, 1):
        if abs(value - target) <= tol:
            return target
    raise ValueError(f"expectation {value} is not within {tol} of -1, 0 or +1")


@dataclass
class EquivalenceReport:
    k: int
    trials: int
    seed: int
    mismatches: list
    counts: dict

    @property
    def ok(self) -> bool:
        return not self.mismatches


def random_hermitian_term(n: int, rng: np.random.Generator) -> PauliTerm:
    x = int.from_bytes(rng.bytes((n + 7) // 8), "little") & ((1 << n) - 1)
    z = int.from_bytes(rng.bytes((n + 7) // 8), "little") & ((1 << n) - 1)
    overlap = bin(x & z).count("1")
    sign = int(rng.integers(2))
    return PauliTerm(n, x, z, overlap + 2 * sign)


def equivalence_check(
    lattice: TorusLattice,
    trials: int,
    seed: int,
    group: StabilizerGroup | None = None,
    state: DenseState | None = None,
) -> EquivalenceReport:
    """Compare stabilizer-engine eigenvalues with dense expectations on random terms.

    Without an explicit group the dense side is the expanded |g0>, so the
    check also ties the generator list to the vertex-product construction.

    Half the terms are products of random group generators times a random
    sign, so that members show up often enough to exercise both outcomes.
    """
    if lattice.n_edges > MAX_QUBITS:
        raise ValueError(f"k={lattice.k} exceeds the dense limit")
    if group is None:
        group = ground_stabilizers(lattice)
        state = state if state is not None else dense_ground_state(lattice)
    elif state is None:
        state = dense_from_group(group)
    rng = np.random.default_rng(seed)
    n = lattice.n_edges
    mismatches = []
    counts = {-1: 0, 0: 0, 1: 0}
    for t in range(trials):
        if t % 2:
            p = random_hermitian_term(n, rng)
        else:
            p = PauliTerm(n, phase_exp=2 * int(rng.integers(2)))
            for g, pick in zip(group.generators, rng.integers(2, size=len(group))):
                if pick:
                    p = p * g
        engine = group.eigenvalue(p)
        try:
            dense = classify(expectation_dense(state, p))
        except ValueError as err:
            mismatches.append({"trial": t, "term": p.label(), "engine": engine, "dense": str(err)})
            continue
        counts[dense] += 1
        if dense != engine:
            mismatches.append({"trial": t, "term": p.label(), "engine": engine, "dense": dense})
    return EquivalenceReport(lattice.k, trials, seed, mismatches, counts)
