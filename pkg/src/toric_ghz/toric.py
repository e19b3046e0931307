"""Toric-code constructions: check operators, ground groups, string operators, braiding."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .lattice import Loop, LoopKind, TorusLattice
from .pauli import PauliTerm, mask_from
from .stabilizer import StabilizerGroup


@dataclass(frozen=True)
class GroundBasisLabel:
    """Which logical x-loops were applied to |g0>: ``a`` for the first, ``b`` the second."""

    a: int = 0
    b: int = 0

    def __post_init__(self):
        if self.a not in (0, 1) or self.b not in (0, 1):
            raise ValueError("ground basis label bits must be 0 or 1")


ALL_LABELS = tuple(GroundBasisLabel(a, b) for a in (0, 1) for b in (0, 1))


def string_op(lattice: TorusLattice, edges: Iterable[int], kind: str) -> PauliTerm:
    edges = list(edges)
    lattice.validate_edges(edges)
    m = mask_from(edges)
    if kind == "z":
        return PauliTerm(lattice.n_edges, z_mask=m)
    if kind == "x":
        return PauliTerm(lattice.n_edges, x_mask=m)
    raise ValueError(f"string kind must be 'x' or 'z', got {kind!r}")


def vertex_op(lattice: TorusLattice, v: tuple[int, int]) -> PauliTerm:
    """A_V: product of sigma^x on the star of ``v``."""
    return string_op(lattice, lattice.star(v), "x")


def face_op(lattice: TorusLattice, f: tuple[int, int]) -> PauliTerm:
    """B_F: product of sigma^z around face ``f``."""
    return string_op(lattice, lattice.boundary(f), "z")


def logical_z(lattice: TorusLattice) -> tuple[PauliTerm, PauliTerm]:
    return (
        string_op(lattice, lattice.row_cycle, "z"),
        string_op(lattice, lattice.column_cycle, "z"),
    )


def logical_x(lattice: TorusLattice) -> tuple[PauliTerm, PauliTerm]:
    """Dual-cycle x-loops; the i-th anticommutes with the i-th of :func:`logical_z`."""
    return (
        string_op(lattice, lattice.dual_column_cycle, "x"),
        string_op(lattice, lattice.dual_row_cycle, "x"),
    )


def check_generators(lattice: TorusLattice) -> list[PauliTerm]:
    """All A_V then B_F except the ones at ``(k-1, k-1)``, which are products of the rest."""
    last = (lattice.k - 1, lattice.k - 1)
    gens = [vertex_op(lattice, v) for v in lattice.vertices() if v != last]
    gens += [face_op(lattice, f) for f in lattice.faces() if f != last]
    return gens


def code_group(lattice: TorusLattice) -> StabilizerGroup:
    """Rank 2k^2 - 2 group of the check operators; fixes the 4-dim ground space."""
    return StabilizerGroup(lattice.n_edges, check_generators(lattice))


def ground_stabilizers(lattice: TorusLattice) -> StabilizerGroup:
    """Full-rank group of |g0> = J prod_V (1 + A_V) |0...0>."""
    gens = check_generators(lattice) + list(logical_z(lattice))
    return StabilizerGroup(lattice.n_edges, gens)


def ground_basis(lattice: TorusLattice, label: GroundBasisLabel = GroundBasisLabel()) -> StabilizerGroup:
    group = ground_stabilizers(lattice)
    lx1, lx2 = logical_x(lattice)
    if label.a:
        group = group.apply_pauli(lx1)
    if label.b:
        group = group.apply_pauli(lx2)
    return group


def all_ground_bases(lattice: TorusLattice) -> dict[GroundBasisLabel, StabilizerGroup]:
    return {label: ground_basis(lattice, label) for label in ALL_LABELS}


def excitations(lattice: TorusLattice, group: StabilizerGroup) -> dict[str, list]:
    """Anyon positions of a sign-flipped ground group.

    Only the generators kept in the group are inspected, so an anyon sitting
    on the dropped vertex or face is invisible here.
    """
    last = (lattice.k - 1, lattice.k - 1)
    verts = [v for v in lattice.vertices() if v != last]
    faces = [f for f in lattice.faces() if f != last]
    signs = group.signs
    z_particles = [v for v, s in zip(verts, signs[: len(verts)]) if s == -1]
    x_particles = [f for f, s in zip(faces, signs[len(verts) : len(verts) + len(faces)]) if s == -1]
    return {"z": z_particles, "x": x_particles}


def braiding_phase(
    lattice: TorusLattice,
    z_path: Iterable[int],
    x_loop: Loop,
    ground: StabilizerGroup | None = None,
) -> int:
    """Phase picked up by carrying an x-particle pair around ``x_loop``.

    The z-particles sit at the two ends of ``z_path``.  The result is the
    eigenvalue of the x-loop operator on the excited state.
    """
    z_path = frozenset(z_path)
    lattice.validate_edges(z_path)
    if len(lattice.vertex_boundary(z_path)) != 2:
        raise ValueError("z_path must be an open string with exactly two endpoints")
    if x_loop.kind is not LoopKind.DUAL:
        raise ValueError("x_loop must be a dual loop")
    if not lattice.is_cycle(x_loop):
        raise ValueError("x_loop is not a closed dual loop")
    if lattice.homology_class(x_loop) != (0, 0):
        raise ValueError("x_loop must be contractible")
    ground = ground if ground is not None else ground_stabilizers(lattice)
    excited = ground.apply_pauli(string_op(lattice, z_path, "z"))
    return excited.eigenvalue(string_op(lattice, x_loop.edges, "x"))
