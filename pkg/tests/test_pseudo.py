import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncfock.errors import ModelInvalid, NoSubspace
from ncfock.fock import FockSpace, reference_exponential
from ncfock.jc import JCParams, full_jc_hamiltonian
from ncfock.pseudo import (
    PseudoModel,
    admissible_level,
    evolution_closed_pseudo,
    h_pjc,
    ladder,
    projector_q_pjc,
    pseudo_factorization,
    pseudo_full_hamiltonian,
    pseudo_spectral_residual,
    s_op,
    signature,
    v_inverse,
    v_operator,
)

THETAS = [1.5, 2.2, 3.0, 3.1, 9.5]


def test_admissible_level_examples():
    assert admissible_level(1.5) == 2
    assert admissible_level(np.sqrt(3)) == 2
    assert admissible_level(np.sqrt(3.0000001)) == 3
    assert admissible_level(2.0) == 3
    with pytest.raises(NoSubspace):
        admissible_level(1.0)
    with pytest.raises(ModelInvalid):
        admissible_level(-2.0)


@given(st.floats(1.01, 20))
def test_level_brackets_theta_squared(theta):
    n = admissible_level(theta)
    assert n < theta ** 2 <= n + 1


def test_level_is_monotone():
    levels = [admissible_level(t) for t in np.linspace(1.05, 6, 300)]
    assert all(b - a in (0, 1) for a, b in zip(levels, levels[1:]))


def test_s_op_entries():
    m = PseudoModel(1.5)
    assert np.allclose(np.diag(s_op(m, 1, 2)), [np.sqrt(1.25), np.sqrt(0.25)])
    assert s_op(PseudoModel(2.0), 0, 3)[0, 0] == 2.0


def test_ladder_blocks_close():
    a = ladder(2, 3)
    assert a.shape == (2, 3)
    # a^dagger a is the number operator on F_3 exactly: nothing is truncated
    assert np.allclose(a.T @ a, np.diag([0, 1, 2]))
    assert np.allclose(a @ a.T, np.diag([1, 2]))


def test_h_pjc_shape_and_pseudo_hermiticity():
    m = PseudoModel(1.5)
    h, j = h_pjc(m).dense, signature(m).dense
    assert h.shape == (5, 5)
    assert np.abs(j @ h @ j - h.conj().T).max() < 1e-14


@pytest.mark.parametrize("theta", THETAS)
def test_eigenvalues_are_real_and_match_the_diagonal(theta):
    m = PseudoModel(theta)
    n = m.level
    ev = np.linalg.eigvals(h_pjc(m).dense)
    assert np.abs(ev.imag).max() < 1e-10
    expected = np.r_[np.sqrt(theta ** 2 - np.arange(1, n + 1)), -np.sqrt(theta ** 2 - np.arange(n + 1))]
    assert np.allclose(np.sort(ev.real), np.sort(expected), atol=1e-10)


@pytest.mark.parametrize("theta", THETAS)
def test_diagonalizer(theta):
    m = PseudoModel(theta)
    v, j = v_operator(m).dense, signature(m).dense
    assert np.abs(v.conj().T @ j @ v - j).max() < 1e-12
    assert np.abs(v_inverse(m).dense @ v - np.eye(len(v))).max() < 1e-12
    assert pseudo_factorization(m) < 1e-12


@pytest.mark.parametrize("theta", THETAS)
def test_projector(theta):
    m = PseudoModel(theta)
    q, j = projector_q_pjc(m).dense, signature(m).dense
    assert np.abs(q @ q - q).max() < 1e-12
    assert np.abs(j @ q @ j - q.conj().T).max() < 1e-12
    assert pseudo_spectral_residual(m) < 1e-12


def test_evolution_examples():
    m = PseudoModel(1.5)
    assert np.allclose(evolution_closed_pseudo(m, 0.0).dense, np.eye(5))
    ref = reference_exponential(h_pjc(m), 3.7, hermitian=False).dense
    assert np.abs(evolution_closed_pseudo(m, 3.7).dense - ref).max() < 1e-10


@given(st.sampled_from([1.5, 2.2, 3.1]), st.floats(-10, 10), st.floats(-10, 10))
def test_pseudo_unitary_group_law(theta, t1, t2):
    m = PseudoModel(theta)
    e1, e2 = evolution_closed_pseudo(m, t1).dense, evolution_closed_pseudo(m, t2).dense
    j = signature(m).dense
    assert np.abs(e1 @ e2 - evolution_closed_pseudo(m, t1 + t2).dense).max() < 1e-9
    assert np.abs(e1.conj().T @ j @ e1 - j).max() < 1e-9


def test_pseudo_full_hamiltonian():
    sp = FockSpace(16)
    params = JCParams(1.0, 1.2, 0.1)
    hp = pseudo_full_hamiltonian(params, sp).dense
    j = np.kron(np.diag([1, -1]), np.eye(16))
    assert np.abs(j @ hp @ j - hp.conj().T).max() < 1e-14
    h = full_jc_hamiltonian(params, sp)[0].dense
    diff = h - hp
    # only the lower-left coupling block changes sign
    assert np.allclose(diff[:16], 0) and np.allclose(diff[16:, 16:], 0)
    assert np.allclose(diff[16:, :16], 2 * params.g * np.diag(np.sqrt(np.arange(1, 16)), -1))
