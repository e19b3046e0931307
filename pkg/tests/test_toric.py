import pytest

from toric_ghz.lattice import build, dual, primal
from toric_ghz.pauli import PauliTerm, commutes, single_pauli
from toric_ghz.stabilizer import Outcome
from toric_ghz.toric import (
    ALL_LABELS,
    GroundBasisLabel,
    braiding_phase,
    code_group,
    excitations,
    face_op,
    ground_basis,
    ground_stabilizers,
    logical_x,
    logical_z,
    string_op,
    vertex_op,
)

from conftest import lattice_and_ground


def random_open_path(lat, rng, max_steps=12):
    """Self-avoiding walk of at least one step; returns its edge set."""
    v = lat.vertices()[rng.integers(lat.n_vertices)]
    visited, edges = {v}, []
    for _ in range(int(rng.integers(1, max_steps + 1))):
        moves = []
        r, c = v
        k = lat.k
        for e, w in (
            (lat.h(r, c), (r, (c + 1) % k)),
            (lat.h(r, c - 1), (r, (c - 1) % k)),
            (lat.v(r, c), ((r + 1) % k, c)),
            (lat.v(r - 1, c), ((r - 1) % k, c)),
        ):
            if w not in visited:
                moves.append((e, w))
        if not moves:
            break
        e, v = moves[rng.integers(len(moves))]
        visited.add(v)
        edges.append(e)
    return frozenset(edges)


def test_string_op_examples():
    lat = build(3)
    assert string_op(lat, [5], "z") == single_pauli(18, 5, "z")
    assert string_op(lat, lat.star((1, 2)), "x") == vertex_op(lat, (1, 2))
    assert string_op(lat, lat.boundary((2, 0)), "z") == face_op(lat, (2, 0))
    with pytest.raises(ValueError):
        string_op(lat, [18], "z")
    with pytest.raises(ValueError):
        string_op(lat, [1], "y")


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_ground_stabilizers_rank(k):
    lat, ground = lattice_and_ground(k)
    assert ground.rank == 2 * k * k
    assert all(s == 1 for s in ground.signs)
    assert code_group(lat).rank == 2 * k * k - 2


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_products_of_all_checks_reduce_to_identity(k):
    lat, ground = lattice_and_ground(k)
    ax = PauliTerm(lat.n_edges)
    bz = PauliTerm(lat.n_edges)
    for v in lat.vertices():
        ax = ax * vertex_op(lat, v)
    for f in lat.faces():
        bz = bz * face_op(lat, f)
    assert (ax.x_mask, ax.z_mask) == (0, 0)
    assert (bz.x_mask, bz.z_mask) == (0, 0)
    assert ground.reduce(ax).sign == 1
    assert ground.reduce(bz).sign == 1
    # the dropped checks are members all the same
    last = (k - 1, k - 1)
    assert ground.eigenvalue(vertex_op(lat, last)) == 1
    assert ground.eigenvalue(face_op(lat, last)) == 1


def test_ground_basis_labels():
    lat = build(3)
    g0 = ground_stabilizers(lat)
    assert ground_basis(lat, GroundBasisLabel(0, 0)) == g0
    flipped = ground_basis(lat, GroundBasisLabel(1, 0))
    diff = [i for i, (a, b) in enumerate(zip(g0.signs, flipped.signs)) if a != b]
    assert diff == [len(g0) - 2]
    patterns = {ground_basis(lat, lab).signs for lab in ALL_LABELS}
    assert len(patterns) == 4
    with pytest.raises(ValueError):
        GroundBasisLabel(2, 0)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_logical_commutation_table(k):
    lat = build(k)
    (x1, x2), (z1, z2) = logical_x(lat), logical_z(lat)
    assert not commutes(x1, z1) and not commutes(x2, z2)
    assert commutes(x1, z2) and commutes(x2, z1)
    assert commutes(x1, x2) and commutes(z1, z2)
    code = code_group(lat)
    for op in (x1, x2, z1, z2):
        assert all(commutes(op, g) for g in code.generators)
        assert code.reduce(op).outcome is Outcome.COMMUTING


def test_z_string_creates_endpoint_anyons():
    lat, ground = lattice_and_ground(4)
    e = lat.h(1, 1)
    excited = ground.apply_pauli(string_op(lat, [e], "z"))
    assert excitations(lat, excited) == {"z": [(1, 1), (1, 2)], "x": []}
    expected = {i for i, v in enumerate(v for v in lat.vertices() if v != (3, 3)) if v in lat.edge_endpoints(e)}
    flipped = {i for i, (a, b) in enumerate(zip(ground.signs, excited.signs)) if a != b}
    assert flipped == expected
    # an endpoint on the dropped vertex shows up only through the full A_V
    e_last = lat.h(3, 2)
    excited = ground.apply_pauli(string_op(lat, [e_last], "z"))
    assert excitations(lat, excited)["z"] == [(3, 2)]
    assert excited.eigenvalue(vertex_op(lat, (3, 3))) == -1


def test_x_string_creates_face_anyons():
    lat, ground = lattice_and_ground(4)
    excited = ground.apply_pauli(string_op(lat, [lat.v(1, 1)], "x"))
    assert excitations(lat, excited)["x"] == [(1, 0), (1, 1)]


def test_fusion_rule(rng):
    lat, ground = lattice_and_ground(4)
    for _ in range(30):
        p = random_open_path(lat, rng)
        q = random_open_path(lat, rng)
        two_step = ground.apply_pauli(string_op(lat, p, "z")).apply_pauli(string_op(lat, q, "z"))
        at_once = ground.apply_pauli(string_op(lat, p ^ q, "z"))
        assert two_step == at_once
    # a closed string leaves no anyons behind
    loop = lat.face_sum([(0, 0), (0, 1)])
    assert ground.apply_pauli(string_op(lat, loop, "z")) == ground


def test_braiding_examples():
    lat, ground = lattice_and_ground(4)
    path = frozenset({lat.h(1, 0), lat.h(1, 1)})  # endpoints (1,0) and (1,2)
    assert braiding_phase(lat, path, dual(lat.star((1, 0))), ground) == -1
    both = dual(lat.star_sum([(1, 0), (1, 1), (1, 2)]))
    assert braiding_phase(lat, path, both, ground) == 1
    assert braiding_phase(lat, path, dual(lat.star((3, 3))), ground) == 1


def test_braiding_rejects_bad_input():
    lat, ground = lattice_and_ground(3)
    with pytest.raises(ValueError):
        braiding_phase(lat, lat.boundary((0, 0)), dual(lat.star((0, 0))), ground)
    with pytest.raises(ValueError):
        braiding_phase(lat, {0}, dual({0}), ground)
    with pytest.raises(ValueError):
        braiding_phase(lat, {0}, dual(lat.dual_row_cycle), ground)
    with pytest.raises(ValueError):
        braiding_phase(lat, {0}, primal(lat.star((0, 0))), ground)
