"""Geometry of the k x k periodic square lattice.

Qubits sit on edges.  Horizontal edge ``H(r, c)`` joins vertex ``(r, c)`` to
``(r, c+1)`` and has id ``r*k + c``; vertical edge ``V(r, c)`` joins ``(r, c)``
to ``(r+1, c)`` and has id ``k*k + r*k + c``.  Face ``(r, c)`` has corners
``(r, c)`` and ``(r+1, c+1)``.  A dual edge shares the id of the primal edge
it crosses, so primal and dual loops live in one id space.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property, reduce
from typing import Iterable, Iterator


class LoopKind(str, Enum):
    PRIMAL = "primal"  # z-strings, along lattice edges
    DUAL = "dual"  # x-strings, across lattice edges


@dataclass(frozen=True)
class Loop:
    edges: frozenset
    kind: LoopKind

    def __init__(self, edges: Iterable[int], kind: LoopKind | str):
        object.__setattr__(self, "edges", frozenset(int(e) for e in edges))
        object.__setattr__(self, "kind", LoopKind(kind))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.edges))

    def sorted_edges(self) -> tuple[int, ...]:
        return tuple(sorted(self.edges))


def primal(edges: Iterable[int]) -> Loop:
    return Loop(edges, LoopKind.PRIMAL)


def dual(edges: Iterable[int]) -> Loop:
    return Loop(edges, LoopKind.DUAL)


class TorusLattice:
    def __init__(self, k: int):
        if int(k) != k or k < 2:
            raise ValueError(f"lattice side must be an integer >= 2, got {k}")
        self.k = int(k)

    def __repr__(self) -> str:
        return f"TorusLattice(k={self.k})"

    def __eq__(self, other) -> bool:
        return isinstance(other, TorusLattice) and other.k == self.k

    def __hash__(self) -> int:
        return hash(("TorusLattice", self.k))

    @property
    def n_vertices(self) -> int:
        return self.k * self.k

    @property
    def n_faces(self) -> int:
        return self.k * self.k

    @property
    def n_edges(self) -> int:
        return 2 * self.k * self.k

    def vertices(self) -> list[tuple[int, int]]:
        return [(r, c) for r in range(self.k) for c in range(self.k)]

    faces = vertices

    def _check_coords(self, rc: tuple[int, int], what: str) -> tuple[int, int]:
        r, c = rc
        if not (0 <= r < self.k and 0 <= c < self.k):
            raise ValueError(f"{what} {rc} out of range for k={self.k}")
        return r, c

    def h(self, r: int, c: int) -> int:
        """Id of the horizontal edge leaving vertex ``(r, c)`` to the right."""
        k = self.k
        return (r % k) * k + (c % k)

    def v(self, r: int, c: int) -> int:
        """Id of the vertical edge leaving vertex ``(r, c)`` downwards."""
        k = self.k
        return k * k + (r % k) * k + (c % k)

    def edge_endpoints(self, e: int) -> tuple[tuple[int, int], tuple[int, int]]:
        k = self.k
        if not 0 <= e < self.n_edges:
            raise ValueError(f"edge id {e} out of range for k={k}")
        if e < k * k:
            r, c = divmod(e, k)
            return (r, c), (r, (c + 1) % k)
        r, c = divmod(e - k * k, k)
        return (r, c), ((r + 1) % k, c)

    def star(self, v: tuple[int, int]) -> frozenset:
        r, c = self._check_coords(v, "vertex")
        return frozenset({self.h(r, c), self.h(r, c - 1), self.v(r, c), self.v(r - 1, c)})

    def boundary(self, f: tuple[int, int]) -> frozenset:
        r, c = self._check_coords(f, "face")
        return frozenset({self.h(r, c), self.h(r + 1, c), self.v(r, c), self.v(r, c + 1)})

    @cached_property
    def stars(self) -> dict[tuple[int, int], frozenset]:
        return {v: self.star(v) for v in self.vertices()}

    @cached_property
    def boundaries(self) -> dict[tuple[int, int], frozenset]:
        return {f: self.boundary(f) for f in self.faces()}

    # reference cycles fixing the homology frame
    @cached_property
    def row_cycle(self) -> frozenset:
        """Primal cycle ``{H(0, c)}`` along row 0."""
        return frozenset(self.h(0, c) for c in range(self.k))

    @cached_property
    def column_cycle(self) -> frozenset:
        """Primal cycle ``{V(r, 0)}`` along column 0."""
        return frozenset(self.v(r, 0) for r in range(self.k))

    @cached_property
    def dual_column_cycle(self) -> frozenset:
        """Dual cycle crossing ``{H(r, 0)}``; pairs oddly with the row cycle."""
        return frozenset(self.h(r, 0) for r in range(self.k))

    @cached_property
    def dual_row_cycle(self) -> frozenset:
        """Dual cycle crossing ``{V(0, c)}``; pairs oddly with the column cycle."""
        return frozenset(self.v(0, c) for c in range(self.k))

    def validate_edges(self, edges: Iterable[int]) -> None:
        for e in edges:
            if not (isinstance(e, int) and 0 <= e < self.n_edges):
                raise ValueError(f"edge id {e!r} out of range for k={self.k}")

    def vertex_boundary(self, edges: Iterable[int]) -> set[tuple[int, int]]:
        """Vertices meeting an odd number of the given edges (endpoints of a z-string)."""
        odd: set[tuple[int, int]] = set()
        for e in edges:
            for p in self.edge_endpoints(e):
                odd ^= {p}
        return odd

    def face_boundary(self, edges: Iterable[int]) -> set[tuple[int, int]]:
        """Faces meeting an odd number of the given dual edges."""
        edges = set(edges)
        return {f for f, b in self.boundaries.items() if len(b & edges) % 2}

    def is_cycle(self, loop: Loop) -> bool:
        self.validate_edges(loop.edges)
        if loop.kind is LoopKind.PRIMAL:
            return not self.vertex_boundary(loop.edges)
        return not self.face_boundary(loop.edges)

    def homology_class(self, loop: Loop) -> tuple[int, int]:
        if not self.is_cycle(loop):
            raise ValueError("homology class is only defined for cycles")
        if loop.kind is LoopKind.PRIMAL:
            refs = (self.dual_column_cycle, self.dual_row_cycle)
        else:
            refs = (self.row_cycle, self.column_cycle)
        return tuple(len(loop.edges & ref) % 2 for ref in refs)

    def is_contractible(self, loop: Loop) -> bool:
        return self.is_cycle(loop) and self.homology_class(loop) == (0, 0)

    def is_simple(self, loop: Loop) -> bool:
        """A single closed curve: a nonempty connected cycle with every node of degree 2."""
        edges = loop.edges
        if not edges or not self.is_cycle(loop):
            return False
        adj: dict = {}
        for e in edges:
            a, b = self.edge_nodes(e, loop.kind)
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        if any(len(nb) != 2 for nb in adj.values()):
            return False
        start = next(iter(adj))
        seen, todo = {start}, [start]
        while todo:
            for nb in adj[todo.pop()]:
                if nb not in seen:
                    seen.add(nb)
                    todo.append(nb)
        return len(seen) == len(adj)

    def edge_nodes(self, e: int, kind: LoopKind) -> tuple[tuple[int, int], tuple[int, int]]:
        """Endpoints of ``e`` as vertices (primal) or as the two faces it separates (dual)."""
        (r, c), (r2, c2) = self.edge_endpoints(e)
        if LoopKind(kind) is LoopKind.PRIMAL:
            return (r, c), (r2, c2)
        k = self.k
        if e < k * k:  # H(r, c) lies between faces (r-1, c) and (r, c)
            return ((r - 1) % k, c), (r, c)
        return (r, (c - 1) % k), (r, c)  # V(r, c) between (r, c-1) and (r, c)

    def face_sum(self, faces: Iterable[tuple[int, int]]) -> frozenset:
        """Primal cycle bounding the given set of faces."""
        return reduce(frozenset.symmetric_difference, (self.boundary(f) for f in faces), frozenset())

    def star_sum(self, vertices: Iterable[tuple[int, int]]) -> frozenset:
        """Dual cycle surrounding the given set of vertices."""
        return reduce(frozenset.symmetric_difference, (self.star(v) for v in vertices), frozenset())


def build(k: int) -> TorusLattice:
    return TorusLattice(k)


def loop_xor(a: Loop, b: Loop) -> Loop:
    if a.kind is not b.kind:
        raise ValueError(f"cannot combine {a.kind.value} and {b.kind.value} loops")
    return Loop(a.edges ^ b.edges, a.kind)


def intersection_count(x_loop: Loop, z_edges: Iterable[int]) -> int:
    if x_loop.kind is not LoopKind.DUAL:
        raise ValueError("x_loop must be a dual loop")
    return len(x_loop.edges & frozenset(z_edges))
