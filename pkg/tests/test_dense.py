import numpy as np
import pytest

from toric_ghz.dense import (
    DenseState,
    apply_pauli_dense,
    classify,
    dense_from_group,
    dense_ground_basis,
    dense_ground_state,
    equivalence_check,
    expectation_dense,
    normalization_constant,
    projector_rank,
    unnormalized_ground,
)
from toric_ghz.ghz import canonical_dset, composites, eigenvalues
from toric_ghz.lattice import build, dual
from toric_ghz.pauli import PauliTerm, single_pauli
from toric_ghz.toric import (
    ALL_LABELS,
    braiding_phase,
    check_generators,
    face_op,
    ground_basis,
    ground_stabilizers,
    logical_x,
    string_op,
    vertex_op,
)

from oracles import dense_matrix


@pytest.fixture(scope="module")
def g0_k2():
    return dense_ground_state(build(2))


@pytest.fixture(scope="module")
def g0_k3():
    return dense_ground_state(build(3))


def test_dense_pauli_action_matches_matrices(rng):
    for _ in range(100):
        n = int(rng.integers(1, 4))
        p = PauliTerm(n, int(rng.integers(1 << n)), int(rng.integers(1 << n)), int(rng.integers(4)))
        psi = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
        psi /= np.linalg.norm(psi)
        out = apply_pauli_dense(DenseState(n, psi), p)
        assert np.allclose(out.amplitudes, dense_matrix(p) @ psi)


def test_ground_k2_checks(g0_k2):
    lat = build(2)
    assert abs(g0_k2.norm - 1) < 1e-12
    for v in lat.vertices():
        assert expectation_dense(g0_k2, vertex_op(lat, v)) == pytest.approx(1.0)
    for f in lat.faces():
        assert expectation_dense(g0_k2, face_op(lat, f)) == pytest.approx(1.0)
    assert np.count_nonzero(np.abs(g0_k2.amplitudes) > 1e-12) == 2 ** (4 - 1)


@pytest.mark.parametrize("k", [2, 3])
def test_normalization_constant(k):
    assert normalization_constant(build(k)) == pytest.approx(2 ** (-(k * k + 1) / 2), rel=1e-12)
    raw = unnormalized_ground(build(k))
    support = np.abs(raw) > 1e-12
    assert np.count_nonzero(support) == 2 ** (k * k - 1)
    assert np.allclose(raw[support], 2.0)


def test_size_cap():
    with pytest.raises(ValueError):
        dense_ground_state(build(4))


def test_apply_examples(g0_k3):
    n = 18
    assert apply_pauli_dense(g0_k3, PauliTerm(n)).allclose(g0_k3)
    x = single_pauli(n, 4, "x")
    assert apply_pauli_dense(apply_pauli_dense(g0_k3, x), x).allclose(g0_k3)
    lat = build(3)
    d1 = composites(lat, canonical_dset(lat, (1, 1)))[0]
    out = apply_pauli_dense(g0_k3, d1)
    assert np.max(np.abs(out.amplitudes + g0_k3.amplitudes)) < 1e-12
    with pytest.raises(ValueError):
        apply_pauli_dense(g0_k3, PauliTerm(8))


def test_expectation_examples(g0_k3):
    lat = build(3)
    assert expectation_dense(g0_k3, vertex_op(lat, (2, 1))) == pytest.approx(1.0)
    assert abs(expectation_dense(g0_k3, single_pauli(18, 3, "x"))) < 1e-12
    assert abs(expectation_dense(g0_k3, logical_x(lat)[0])) < 1e-12


@pytest.mark.parametrize("k", [2, 3])
def test_equivalence_check(k):
    rep = equivalence_check(build(k), 1000, seed=k)
    assert rep.ok, rep.mismatches[:3]
    assert rep.counts[0] > 0 and rep.counts[1] > 0 and rep.counts[-1] > 0


def test_equivalence_on_other_ground_states():
    lat = build(2)
    for label in ALL_LABELS:
        group = ground_basis(lat, label)
        assert equivalence_check(lat, 200, seed=5, group=group).ok
        state = dense_ground_basis(lat, label)
        via_group = dense_from_group(group)
        assert abs(abs(np.vdot(state.amplitudes, via_group.amplitudes)) - 1) < 1e-9


def test_canonical_eigenvalues_dense(g0_k3):
    lat = build(3)
    dset = canonical_dset(lat, (0, 0))
    dense = [classify(expectation_dense(g0_k3, p)) for p in composites(lat, dset)]
    assert dense == eigenvalues(lat, dset) == [-1, -1, -1, 1]


def test_braiding_dense(g0_k3):
    lat = build(3)
    path = {lat.h(1, 0)}
    excited = apply_pauli_dense(g0_k3, string_op(lat, path, "z"))
    around_one = string_op(lat, lat.star((1, 0)), "x")
    assert classify(expectation_dense(excited, around_one)) == -1
    assert braiding_phase(lat, path, dual(lat.star((1, 0)))) == -1


def test_unique_ground_state_and_degeneracy():
    lat = build(2)
    full = list(ground_stabilizers(lat).generators)
    assert projector_rank(8, full) == 1
    assert projector_rank(8, check_generators(lat)) == 4
    g0 = dense_ground_state(lat)
    z1 = string_op(lat, lat.row_cycle, "z")
    # (1 + Z1)/2 keeps |g0>; (1 - Z1)/2 annihilates it
    plus = 0.5 * (g0.amplitudes + apply_pauli_dense(g0, z1).amplitudes)
    minus = 0.5 * (g0.amplitudes - apply_pauli_dense(g0, z1).amplitudes)
    assert np.allclose(plus, g0.amplitudes) and np.allclose(minus, 0)


def test_ground_basis_orthonormal(g0_k3):
    lat = build(3)
    states = [dense_ground_basis(lat, lab, g0_k3) for lab in ALL_LABELS]
    gram = np.array([[np.vdot(a.amplitudes, b.amplitudes) for b in states] for a in states])
    assert np.allclose(gram, np.eye(4), atol=1e-12)


def test_reproducible():
    a = dense_ground_state(build(2)).amplitudes
    b = dense_ground_state(build(2)).amplitudes
    assert np.array_equal(a, b)
    assert equivalence_check(build(2), 50, 9).counts == equivalence_check(build(2), 50, 9).counts


def test_classify():
    assert classify(1 + 1e-12j) == 1
    assert classify(-1e-11) == 0
    with pytest.raises(ValueError):
        classify(0.5)
