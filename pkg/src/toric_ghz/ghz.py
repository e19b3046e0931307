"""Composite string operations D1-D4 and the all-versus-nothing contradiction.

Each operation creates a z-particle pair with ``pre_z``, drags an x-particle
pair around ``x_loop`` and closes the z-string with ``post_z``.  The product
``S^z(post) S^x(x_loop) S^z(pre)`` is a Pauli word with Y wherever the two
loops share an edge.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

from .lattice import Loop, LoopKind, TorusLattice, dual, loop_xor, primal
from .pauli import PauliTerm, bits_of, hermitian_sign, multiply
from .stabilizer import StabilizerGroup
from .toric import ground_stabilizers, string_op

LABELS = ("D1", "D2", "D3", "D4")
MAX_LR_VARIABLES = 25


class ParadoxError(ValueError):
    """A D-set that cannot be turned into measurement equations."""


@dataclass(frozen=True)
class DOperation:
    label: str
    pre_z: tuple[int, ...]
    x_loop: Loop
    post_z: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pre_z", tuple(self.pre_z))
        object.__setattr__(self, "post_z", tuple(self.post_z))
        if self.x_loop.kind is not LoopKind.DUAL:
            raise ValueError("x_loop must be a dual loop")
        if set(self.pre_z) & set(self.post_z):
            raise ValueError(f"{self.label}: pre and post z-strings overlap")
        if len(set(self.pre_z)) != len(self.pre_z) or len(set(self.post_z)) != len(self.post_z):
            raise ValueError(f"{self.label}: repeated edge in a z-string")

    @property
    def z_loop(self) -> Loop:
        return primal(self.pre_z + self.post_z)


@dataclass(frozen=True)
class MeasurementEquation:
    """Product of the local outcomes ``m_q^axis`` over ``terms`` equals ``parity``."""

    terms: tuple[tuple[int, str], ...]
    parity: int

    def __post_init__(self):
        terms = tuple((int(q), str(a)) for q, a in self.terms)
        qubits = [q for q, _ in terms]
        if len(set(qubits)) != len(qubits):
            raise ValueError("a qubit appears twice in one measurement equation")
        if self.parity not in (1, -1):
            raise ValueError("parity must be +1 or -1")
        object.__setattr__(self, "terms", terms)

    def observables(self) -> frozenset:
        return frozenset(self.terms)


@dataclass(frozen=True)
class DSet:
    k: int
    ops: tuple[DOperation, DOperation, DOperation, DOperation]
    anchor: Optional[tuple[int, int]] = None
    # figure labels 1..8 -> edge ids, for the canonical embedding only
    qubit_labels: Optional[dict] = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.ops) != 4:
            raise ValueError("a D-set holds exactly four operations")
        object.__setattr__(self, "ops", tuple(self.ops))
        if len({op.x_loop for op in self.ops}) != 1:
            raise ValueError("all four operations must share one x-loop")
        if self.ops[3].z_loop.edges:
            raise ValueError("D4 carries no z-string")
        if loop_xor(self.ops[0].z_loop, self.ops[1].z_loop) != self.ops[2].z_loop:
            raise ValueError("z-loop of D3 must be the symmetric difference of those of D1 and D2")

    @property
    def lx(self) -> Loop:
        return self.ops[0].x_loop

    @property
    def lz1(self) -> Loop:
        return self.ops[0].z_loop

    @property
    def lz2(self) -> Loop:
        return self.ops[1].z_loop

    @property
    def lz3(self) -> Loop:
        return self.ops[2].z_loop

    def key(self) -> tuple:
        """Identity of the set up to split choice and the order of the two z-loops."""
        pair = sorted((self.lz1.sorted_edges(), self.lz2.sorted_edges()))
        return (self.k, self.lx.sorted_edges(), tuple(pair))


def check_operation(lattice: TorusLattice, d: DOperation) -> None:
    lattice.validate_edges(d.x_loop.edges | d.z_loop.edges)
    if not lattice.is_contractible(d.x_loop):
        raise ParadoxError(f"{d.label}: x-loop is not a contractible dual cycle")
    z = d.z_loop
    if z.edges and not lattice.is_contractible(z):
        raise ParadoxError(f"{d.label}: z-string is not a contractible primal cycle")


def composite_operator(lattice: TorusLattice, d: DOperation) -> PauliTerm:
    check_operation(lattice, d)
    pre = string_op(lattice, d.pre_z, "z")
    loop = string_op(lattice, d.x_loop.edges, "x")
    post = string_op(lattice, d.post_z, "z")
    out = multiply(post, multiply(loop, pre))
    if hermitian_sign(out) is None:
        raise ParadoxError(f"{d.label}: composite is not Hermitian, the split is invalid")
    return out


def _split_sign(lx: frozenset, lz: frozenset, pre: frozenset) -> int:
    # S^z(post) S^x S^z(pre) = i**(2|post & lx| - |lx & lz|) * (positive word)
    rel = 2 * len((lz - pre) & lx) - len(lx & lz)
    return 1 if rel % 4 == 0 else -1


def canonical_split(lx: Loop, lz: Loop) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Pick (pre, post) so the composite equals the sign-free Pauli word.

    Shared single edges are tried first, in id order, then any single edge,
    then an empty pre-string.
    """
    lxe, lze = lx.edges, lz.edges
    if not lze:
        return (), ()
    shared = sorted(lxe & lze)
    for e in shared + sorted(lze):
        if _split_sign(lxe, lze, frozenset({e})) == 1:
            return (e,), tuple(sorted(lze - {e}))
    return (), tuple(sorted(lze))


def make_dset(
    lattice: TorusLattice,
    lx: Loop,
    lz1: Loop,
    lz2: Loop,
    anchor: Optional[tuple[int, int]] = None,
) -> DSet:
    lz3 = loop_xor(lz1, lz2)
    ops = []
    for label, lz in zip(LABELS, (lz1, lz2, lz3, primal(()))):
        pre, post = canonical_split(lx, lz)
        ops.append(DOperation(label, pre, lx, post))
    return DSet(lattice.k, tuple(ops), anchor=anchor)


def canonical_dset(lattice: TorusLattice, anchor: tuple[int, int]) -> DSet:
    """The two-plaquette embedding around vertex ``anchor``.

    Qubits 1-4 are the star of the anchor (up, right, down, left).  The face
    above the anchor's right edge contributes qubits 5, 6 and the face below
    contributes 7, 8, labelled so that each post-string is a walk.
    """
    if lattice.k < 3:
        raise ValueError("the canonical embedding needs k >= 3")
    r, c = anchor
    lattice.star(anchor)  # range check
    h, v = lattice.h, lattice.v
    q = {
        1: v(r - 1, c),
        2: h(r, c),
        3: v(r, c),
        4: h(r, c - 1),
        5: h(r - 1, c),
        6: v(r - 1, c + 1),
        7: v(r, c + 1),
        8: h(r + 1, c),
    }
    lx = dual(lattice.star(anchor))

    def ids(*labels):
        return tuple(q[i] for i in labels)

    ops = (
        DOperation("D1", ids(2), lx, ids(6, 5, 1)),
        DOperation("D2", ids(3), lx, ids(8, 7, 2)),
        DOperation("D3", ids(3), lx, ids(8, 7, 6, 5, 1)),
        DOperation("D4", (), lx, ()),
    )
    return DSet(lattice.k, ops, anchor=(r, c), qubit_labels=q)


def composites(lattice: TorusLattice, dset: DSet) -> list[PauliTerm]:
    if dset.k != lattice.k:
        raise ValueError(f"D-set built for k={dset.k}, lattice has k={lattice.k}")
    return [composite_operator(lattice, d) for d in dset.ops]


def eigenvalues(
    lattice: TorusLattice, dset: DSet, ground: Optional[StabilizerGroup] = None
) -> list[int]:
    ground = ground if ground is not None else ground_stabilizers(lattice)
    return [ground.eigenvalue(p) for p in composites(lattice, dset)]


def equation_from_term(p: PauliTerm, eigenvalue: int) -> MeasurementEquation:
    # outcomes multiply to the eigenvalue of the sign-free word, not of +-word
    sign = hermitian_sign(p)
    terms = tuple((q, p.axis(q)) for q in bits_of(p.support))
    return MeasurementEquation(terms, sign * eigenvalue)


def measurement_equations(
    lattice: TorusLattice, dset: DSet, ground: Optional[StabilizerGroup] = None
) -> list[MeasurementEquation]:
    ground = ground if ground is not None else ground_stabilizers(lattice)
    out = []
    for d, p in zip(dset.ops, composites(lattice, dset)):
        lam = ground.eigenvalue(p)
        if lam == 0:
            raise ParadoxError(f"{d.label} has zero expectation on the ground state")
        out.append(equation_from_term(p, lam))
    return out


def _variables(equations: Sequence[MeasurementEquation]) -> list[tuple[int, str]]:
    return sorted({t for eq in equations for t in eq.terms})


def lr_assignment_search(equations: Sequence[MeasurementEquation]) -> int:
    """Count +-1 value assignments to the observables that satisfy every equation.

    Every assignment is visited.  The variables are split in two halves that
    are enumerated separately; full assignments are matched by their
    per-equation parity pattern, which keeps the cost near ``2 * 2**(n/2)``.
    """
    variables = _variables(equations)
    nv = len(variables)
    if nv > MAX_LR_VARIABLES:
        raise ValueError(f"{nv} observables exceed the exhaustive bound of {MAX_LR_VARIABLES}")
    if not equations:
        return 2**nv
    index = {t: i for i, t in enumerate(variables)}
    masks = [sum(1 << index[t] for t in eq.terms) for eq in equations]
    # bit j of target set <=> equation j needs an odd number of -1 outcomes
    target = sum(1 << j for j, eq in enumerate(equations) if eq.parity == -1)
    lo_bits = nv // 2
    hi_bits = nv - lo_bits

    def pattern_counts(nbits: int, shift: int) -> Counter:
        assign = np.arange(1 << nbits, dtype=np.uint64)
        pattern = np.zeros(assign.shape, dtype=np.int64)
        for j, m in enumerate(masks):
            part = np.uint64((m >> shift) & ((1 << nbits) - 1))
            odd = np.bitwise_count(assign & part).astype(np.int64) & 1
            pattern |= odd << j
        values, counts = np.unique(pattern, return_counts=True)
        return Counter(dict(zip(values.tolist(), counts.tolist())))

    lo = pattern_counts(lo_bits, 0)
    hi = pattern_counts(hi_bits, lo_bits)
    return sum(c * hi.get(s ^ target, 0) for s, c in lo.items())


def parity_contradiction(equations: Sequence[MeasurementEquation]) -> bool:
    """True when the product of all but the last equation refutes the last one.

    Observables occurring an even number of times cancel (each outcome
    squares to one); what survives must be exactly the last equation's
    observables, with the opposite parity.
    """
    if len(equations) < 2:
        return False
    *first, last = equations
    counts = Counter(t for eq in first for t in eq.terms)
    survivors = {t for t, n in counts.items() if n % 2}
    product = 1
    for eq in first:
        product *= eq.parity
    return survivors == set(last.terms) and product == -last.parity


# -- enumeration ------------------------------------------------------------


def simple_cycles(lattice: TorusLattice, kind: LoopKind, max_len: int) -> set[frozenset]:
    """Edge sets of all simple cycles with at most ``max_len`` edges."""
    k = lattice.k
    adj: dict[int, list[tuple[int, int]]] = {i: [] for i in range(k * k)}
    for e in range(lattice.n_edges):
        a, b = lattice.edge_nodes(e, kind)
        ia, ib = a[0] * k + a[1], b[0] * k + b[1]
        adj[ia].append((e, ib))
        adj[ib].append((e, ia))
    found: set[frozenset] = set()

    # each cycle is found from its lowest node, once per direction
    for start in sorted(adj):

        def walk(node: int, edges: list[int], seen: set[int]) -> None:
            for e, nxt in adj[node]:
                if e in edges:
                    continue
                if nxt == start:
                    found.add(frozenset(edges + [e]))
                elif nxt > start and nxt not in seen and len(edges) + 1 < max_len:
                    seen.add(nxt)
                    edges.append(e)
                    walk(nxt, edges, seen)
                    edges.pop()
                    seen.discard(nxt)

        walk(start, [], {start})
    return found


def contractible_loops(lattice: TorusLattice, kind: LoopKind, max_len: int) -> list[Loop]:
    """Contractible simple loops with at most ``max_len`` edges, sorted by edge ids."""
    loops = [Loop(c, kind) for c in simple_cycles(lattice, kind, max_len)]
    loops = [lp for lp in loops if lattice.homology_class(lp) == (0, 0)]
    return sorted(loops, key=Loop.sorted_edges)


def generate_paradox_sets(
    lattice: TorusLattice,
    max_loop_len: int,
    limit: Optional[int] = None,
    ground: Optional[StabilizerGroup] = None,
) -> Iterator[DSet]:
    """Yield D-sets whose four ground eigenvalues multiply to -1.

    Every loop involved, including the merged z-loop of D3, is a single
    contractible closed curve; ``max_loop_len`` bounds the x-loop and the two
    input z-loops.

    Order: by the x-loop's sorted edge ids, then by the (z1, z2) pair with
    ``z1 < z2``.  ``limit=None`` streams everything.
    """
    if lattice.k < 3:
        raise ValueError("paradox enumeration needs k >= 3")
    if limit is not None and limit <= 0:
        return
    ground = ground if ground is not None else ground_stabilizers(lattice)
    x_loops = contractible_loops(lattice, LoopKind.DUAL, max_loop_len)
    z_loops = contractible_loops(lattice, LoopKind.PRIMAL, max_loop_len)

    @lru_cache(maxsize=None)
    def lam(lx: Loop, lz: Loop) -> int:
        pre, post = canonical_split(lx, lz)
        return ground.eigenvalue(composite_operator(lattice, DOperation("D", pre, lx, post)))

    # requirement (iii) does not depend on the x-loop
    pairs = []
    for a, b in itertools.combinations(z_loops, 2):
        lz3 = loop_xor(a, b)
        if lattice.is_simple(lz3):
            pairs.append((a, b, lz3))

    emitted = 0
    for lx in x_loops:
        lam4 = lam(lx, primal(()))
        for a, b, lz3 in pairs:
            if lam(lx, a) * lam(lx, b) * lam(lx, lz3) * lam4 != -1:
                continue
            yield make_dset(lattice, lx, a, b)
            emitted += 1
            if limit is not None and emitted >= limit:
                return
        lam.cache_clear()
