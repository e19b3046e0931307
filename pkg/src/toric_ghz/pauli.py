"""Exact n-qubit Pauli algebra with global phase tracking.

A term is stored as ``i**phase * prod_q X_q**x[q] Z_q**z[q]`` with X placed
left of Z on every qubit.  Masks are Python ints used as bit vectors, bit q
holding qubit q.  Under this encoding ``Y = i X Z`` is ``(x=1, z=1,
phase=1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

AXES = ("x", "y", "z")


def popcount(v: int) -> int:
    return bin(v).count("1")


def mask_from(qubits: Iterable[int]) -> int:
    m = 0
    for q in qubits:
        m |= 1 << q
    return m


def bits_of(mask: int) -> list[int]:
    """Sorted indices of the set bits of ``mask``."""
    out = []
    q = 0
    while mask:
        if mask & 1:
            out.append(q)
        mask >>= 1
        q += 1
    return out


@dataclass(frozen=True)
class PauliTerm:
    n: int
    x_mask: int = 0
    z_mask: int = 0
    phase_exp: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("qubit count must be non-negative")
        full = (1 << self.n) - 1
        if (self.x_mask | self.z_mask) & ~full:
            raise ValueError(f"mask exceeds {self.n} qubits")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    # -- constructors -----------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "PauliTerm":
        return cls(n)

    @classmethod
    def from_word(cls, n: int, word: dict[int, str], sign: int = 1) -> "PauliTerm":
        """Build ``sign * prod_q sigma_q^{word[q]}`` from a ``{qubit: axis}`` map."""
        term = cls(n, phase_exp=0 if sign == 1 else 2)
        for q, axis in word.items():
            term = multiply(term, single_pauli(n, q, axis))
        return term

    # -- derived quantities -----------------------------------------------

    @property
    def overlap(self) -> int:
        """Number of qubits carrying Y content."""
        return popcount(self.x_mask & self.z_mask)

    @property
    def support(self) -> int:
        return self.x_mask | self.z_mask

    @property
    def weight(self) -> int:
        return popcount(self.support)

    def is_hermitian(self) -> bool:
        return (self.phase_exp - self.overlap) % 2 == 0

    def axis(self, q: int) -> Optional[str]:
        """Single-qubit content on ``q`` as ``'x'``, ``'y'``, ``'z'`` or None."""
        xb = (self.x_mask >> q) & 1
        zb = (self.z_mask >> q) & 1
        return {(0, 0): None, (1, 0): "x", (1, 1): "y", (0, 1): "z"}[(xb, zb)]

    def word(self) -> dict[int, str]:
        return {q: self.axis(q) for q in bits_of(self.support)}

    def label(self) -> str:
        """Dense string such as ``'-XIYZ'`` (qubit 0 first)."""
        coeff = {0: "+", 1: "+i", 2: "-", 3: "-i"}
        # the word carries its own i per Y, so the printed coefficient differs
        rel = (self.phase_exp - self.overlap) % 4
        letters = "".join((self.axis(q) or "i").upper() for q in range(self.n))
        return coeff[rel] + letters

    def __mul__(self, other: "PauliTerm") -> "PauliTerm":
        return multiply(self, other)

    def __repr__(self) -> str:
        return f"PauliTerm({self.label()})"


def single_pauli(n: int, q: int, axis: str) -> PauliTerm:
    if not 0 <= q < n:
        raise ValueError(f"qubit {q} out of range for n={n}")
    bit = 1 << q
    if axis == "x":
        return PauliTerm(n, x_mask=bit)
    if axis == "z":
        return PauliTerm(n, z_mask=bit)
    if axis == "y":
        return PauliTerm(n, x_mask=bit, z_mask=bit, phase_exp=1)
    raise ValueError(f"unknown axis {axis!r}")


def _check_sizes(p: PauliTerm, q: PauliTerm) -> None:
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n} qubits")


def multiply(p: PauliTerm, q: PauliTerm) -> PauliTerm:
    """Return the operator product ``p @ q`` (``q`` acts first)."""
    _check_sizes(p, q)
    # moving Z of p past X of q costs a factor -1 per shared qubit
    phase = p.phase_exp + q.phase_exp + 2 * popcount(p.z_mask & q.x_mask)
    return PauliTerm(p.n, p.x_mask ^ q.x_mask, p.z_mask ^ q.z_mask, phase)


def symplectic(p: PauliTerm, q: PauliTerm) -> int:
    _check_sizes(p, q)
    return (popcount(p.x_mask & q.z_mask) + popcount(p.z_mask & q.x_mask)) % 2


def commutes(p: PauliTerm, q: PauliTerm) -> bool:
    return symplectic(p, q) == 0


def hermitian_sign(p: PauliTerm) -> Optional[int]:
    """Sign ``s`` with ``p == s * (tensor of X/Y/Z)``, or None if not Hermitian."""
    rel = (p.phase_exp - p.overlap) % 4
    if rel == 0:
        return 1
    if rel == 2:
        return -1
    return None
