"""Signed stabilizer groups: membership reduction, eigenvalues, Pauli updates."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

from .pauli import PauliTerm, commutes, hermitian_sign, multiply


class InvalidGroupError(ValueError):
    """Generators that do not define a stabilizer group."""


class Outcome(str, Enum):
    MEMBER = "member"
    COMMUTING = "non-member-commuting"
    ANTICOMMUTING = "anticommuting"


@dataclass(frozen=True)
class Reduction:
    outcome: Outcome
    # P == i**phase * (element of the group); only meaningful for members
    phase: int = 0

    @property
    def sign(self) -> int | complex:
        return (1, 1j, -1, -1j)[self.phase % 4]


@dataclass(frozen=True)
class _Row:
    pivot: int
    vec: int
    term: PauliTerm


def _vec(p: PauliTerm) -> int:
    return p.x_mask | (p.z_mask << p.n)


def _lowest_bit(v: int) -> int:
    return (v & -v).bit_length() - 1


class StabilizerGroup:
    """Independent, commuting, Hermitian generators with their signs.

    Instances are immutable; :meth:`apply_pauli` returns a new group.
    """

    def __init__(self, n: int, generators: Sequence[PauliTerm], _validated: bool = False):
        self.n = n
        self.generators = tuple(generators)
        if not _validated:
            self._validate()

    def _validate(self) -> None:
        gens = self.generators
        for i, g in enumerate(gens):
            if g.n != self.n:
                raise InvalidGroupError(f"generator {i} acts on {g.n} qubits, expected {self.n}")
            if hermitian_sign(g) is None:
                raise InvalidGroupError(f"generator {i} is not Hermitian: {g}")
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                if not commutes(gens[i], gens[j]):
                    raise InvalidGroupError(f"generators {i} and {j} anticommute")
        self._echelon  # raises on dependence

    @classmethod
    def from_generators(cls, terms: Iterable[PauliTerm]) -> "StabilizerGroup":
        terms = list(terms)
        if not terms:
            raise InvalidGroupError("at least one generator is needed to fix the qubit count")
        return cls(terms[0].n, terms)

    def __len__(self) -> int:
        return len(self.generators)

    @property
    def rank(self) -> int:
        return len(self.generators)

    @property
    def full_rank(self) -> bool:
        return self.rank == self.n

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(hermitian_sign(g) for g in self.generators)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StabilizerGroup)
            and other.n == self.n
            and other.generators == self.generators
        )

    def __hash__(self) -> int:
        return hash((self.n, self.generators))

    def __repr__(self) -> str:
        return f"StabilizerGroup(n={self.n}, rank={self.rank})"

    @cached_property
    def _echelon(self) -> tuple[_Row, ...]:
        # fully reduced: every pivot bit is set in exactly one row
        rows: list[_Row] = []
        for i, g in enumerate(self.generators):
            vec, term = _vec(g), g
            for row in rows:
                if (vec >> row.pivot) & 1:
                    vec ^= row.vec
                    term = multiply(term, row.term)
            if vec == 0:
                if term.phase_exp == 2:
                    raise InvalidGroupError(
                        f"generator {i} completes a product equal to -identity (inconsistent group)"
                    )
                raise InvalidGroupError(f"generator {i} is dependent on earlier generators")
            pivot = _lowest_bit(vec)
            new = _Row(pivot, vec, term)
            rows = [
                _Row(r.pivot, r.vec ^ vec, multiply(r.term, term)) if (r.vec >> pivot) & 1 else r
                for r in rows
            ]
            rows.append(new)
        rows.sort(key=lambda r: r.pivot)
        return tuple(rows)

    def reduce(self, p: PauliTerm) -> Reduction:
        if p.n != self.n:
            raise ValueError(f"size mismatch: {p.n} vs {self.n} qubits")
        if not all(commutes(p, g) for g in self.generators):
            return Reduction(Outcome.ANTICOMMUTING)
        vec = _vec(p)
        acc = PauliTerm(self.n)
        for row in self._echelon:
            if (vec >> row.pivot) & 1:
                vec ^= row.vec
                acc = multiply(acc, row.term)
        if vec:
            return Reduction(Outcome.COMMUTING)
        return Reduction(Outcome.MEMBER, (p.phase_exp - acc.phase_exp) % 4)

    def contains(self, p: PauliTerm) -> bool:
        red = self.reduce(p)
        return red.outcome is Outcome.MEMBER and red.phase == 0

    def eigenvalue(self, p: PauliTerm) -> int:
        """Return +1 or -1 for a stabilized observable, 0 when the expectation vanishes."""
        red = self.reduce(p)
        if red.outcome is Outcome.ANTICOMMUTING:
            return 0
        if red.outcome is Outcome.COMMUTING:
            raise ValueError("operator commutes with the group but is not determined by it")
        if red.phase % 2:
            raise ValueError("operator is i times a stabilizer and has no real eigenvalue")
        return 1 if red.phase == 0 else -1

    def apply_pauli(self, p: PauliTerm) -> "StabilizerGroup":
        """Group stabilizing ``p|psi>``: generators anticommuting with p flip sign."""
        if p.n != self.n:
            raise ValueError(f"size mismatch: {p.n} vs {self.n} qubits")
        if hermitian_sign(p) is None:
            raise ValueError("only Hermitian Pauli operators can be applied")
        gens = [
            g if commutes(g, p) else PauliTerm(g.n, g.x_mask, g.z_mask, g.phase_exp + 2)
            for g in self.generators
        ]
        return StabilizerGroup(self.n, gens, _validated=True)

    def without(self, indices: Iterable[int]) -> "StabilizerGroup":
        drop = set(indices)
        gens = [g for i, g in enumerate(self.generators) if i not in drop]
        return StabilizerGroup(self.n, gens, _validated=True)


def from_generators(terms: Iterable[PauliTerm]) -> StabilizerGroup:
    return StabilizerGroup.from_generators(terms)
