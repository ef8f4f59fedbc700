import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ncfock.errors import DepthExceedsDomain, ModelInvalid, NotPseudoNormalized, SingularGram
from ncfock.fock import BlockOperator, FockOperator, FockSpace, band_residual, identity, window_residual
from ncfock.jc import DetunedModel, projector_p_jc, u_chart
from ncfock.pseudo import PseudoModel, projector_q_pjc, signature, v_operator
from ncfock.veronese import (
    MAX_PSEUDO_DIM,
    bhat_column,
    bhat_defects,
    classical_pseudo_veronese,
    classical_veronese,
    gamma_op,
    local_column,
    oike_projector,
    omega_op,
    pseudo_local_coordinate,
    pseudo_space,
    pseudo_veronese_column,
    pseudo_veronese_projector,
    signature_signs,
    sphere_column,
    veronese_column,
    veronese_projector,
    w_op,
    x_op,
    y_op,
    z0_alt,
    z_op,
)


def model(theta=1.0, dim=32):
    return DetunedModel(theta, FockSpace(dim))


def test_x_frozen_entry():
    r2 = math.sqrt(2)
    assert x_op(model(1.0), 0).diagonal()[0] == pytest.approx((r2 + 1) / math.sqrt(2 * r2 * (r2 + 1)))


def test_negative_theta_rejected():
    with pytest.raises(ModelInvalid):
        x_op(model(-1.0))


def test_signature_signs():
    assert signature_signs(3) == [1, -1, 1, -1]


@pytest.mark.parametrize("theta", [0.5, 1.0, 2.5])
@pytest.mark.parametrize("j", range(5))
def test_xy_identities(theta, j):
    m = model(theta, 64)
    one = identity(m.space)
    x, y = x_op(m, j), y_op(m, j)
    assert band_residual(x @ x + y.dag @ y, one, 2, start=j) < 1e-10
    if j:
        yp = y_op(m, j - 1)
        assert band_residual(y.dag @ y, yp @ yp.dag, 2, start=j) < 1e-10


@pytest.mark.parametrize("j", range(4))
@pytest.mark.parametrize("k", range(4))
def test_shift_commutation(j, k):
    m = model(1.3, 40)

    def xinv(i):
        d = x_op(m, i).diagonal().real
        return FockOperator(m.space, np.diag(np.where(d > 0, 1 / np.where(d > 0, d, 1), 0)))

    y = y_op(m, j)
    assert band_residual(y @ xinv(k), xinv(k + 1) @ y, 6, start=j + k + 1) < 1e-12


def test_z_relations():
    m = model(1.0, 32)
    x0, y0, z0 = x_op(m), y_op(m), z_op(m)
    xinv = FockOperator(m.space, np.diag(1 / x0.diagonal().real))
    assert band_residual(z0, y0 @ xinv, 2) < 1e-12
    assert band_residual(z0, z0_alt(m), 2) < 1e-12
    assert band_residual(identity(m.space) + z0.dag @ z0, xinv @ xinv, 2) < 1e-12


def test_classical_limit_of_z_symbol(rng):
    # Z0 = a^dagger / (R(N+1) + theta) has the symbol (x + iy) / (r + z)
    for x, y, z in rng.normal(size=(100, 3)):
        r = math.sqrt(x * x + y * y + z * z)
        if r + z < 1e-9:
            continue
        w = complex(x, y)
        v1, v2 = (r + z), w
        assert abs(v2 / v1 - w / (r + z)) < 1e-12
        # and the normalized column reproduces the classical chart-I column
        col = np.array([r + z, w]) / math.sqrt(2 * r * (r + z))
        assert abs(col[1] / col[0] - w / (r + z)) < 1e-12


@pytest.mark.parametrize("theta", [1.0, 2.5])
def test_sphere_column_is_first_column_of_u(theta):
    m = model(theta)
    col = sphere_column(m)
    u = u_chart(m, "I")
    assert np.allclose(col[0].matrix, u.block(0, 0)) and np.allclose(col[1].matrix, u.block(1, 0))
    gram = col.as_block().dag @ col.as_block()
    assert band_residual(gram, identity(m.space), 2) < 1e-10


def test_veronese_column_weights_and_normalization():
    m = model(1.0, 48)
    col = veronese_column(m, 3)
    x0 = x_op(m).matrix
    assert np.allclose(col[0].matrix, np.linalg.matrix_power(x0, 3))
    assert np.allclose(col[3].matrix, y_op(m, 2).matrix @ y_op(m, 1).matrix @ y_op(m, 0).matrix)
    gram = col.as_block().dag @ col.as_block()
    assert band_residual(gram, identity(m.space), 4, start=3) < 1e-9


@pytest.mark.parametrize("n", range(1, 5))
def test_projector_and_local_column(n):
    m = model(1.0, 48)
    p = veronese_projector(m, n)
    assert band_residual(p @ p, p, n + 2) < 1e-9
    assert np.array_equal(p.dense, p.dense.conj().T)
    z0 = z_op(m).matrix
    g = np.eye(48) + z0.conj().T @ z0
    assert band_residual(np.eye(48) + local_column(m, n).gram(),
                         np.linalg.matrix_power(g, n), n + 1) < 1e-9
    # A_n = (1, Z_n)^T (1 + Z0^dagger Z0)^{-n/2}
    w, v = np.linalg.eigh(g)
    root = (v * w ** (-n / 2)) @ v.conj().T
    col = veronese_column(m, n)
    loc = [np.eye(48)] + [e.matrix for e in local_column(m, n).entries]
    for k in range(n + 1):
        assert band_residual(loc[k] @ root, col[k].matrix, n + 1) < 1e-9


def test_veronese_projector_degree_one_is_p_jc():
    m = model(1.0)
    assert band_residual(veronese_projector(m, 1), projector_p_jc(m), 2) < 1e-10


def test_oike_projector():
    sp = FockSpace(8)
    p = oike_projector(FockOperator(sp, np.zeros((8, 8))))
    assert np.allclose(p.dense, np.diag([1] * 8 + [0] * 8))
    m = model(1.0, 64)
    assert band_residual(oike_projector(z_op(m)), projector_p_jc(m), 2) < 1e-9


@given(st.integers(0, 2 ** 31 - 1))
def test_oike_projector_idempotent_for_generic_z(seed):
    rng = np.random.default_rng(seed)
    sp = FockSpace(10)
    z = np.diag(rng.normal(size=10)) + np.diag(rng.normal(size=9), -1)
    p = oike_projector(FockOperator(sp, z)).dense
    assert np.abs(p @ p - p).max() < 1e-9
    assert np.abs(p - p.conj().T).max() < 1e-12


def test_oike_projector_on_a_column():
    m = model(1.0, 48)
    p = oike_projector(local_column(m, 2))
    assert band_residual(p, veronese_projector(m, 2), 3) < 1e-9


def test_singular_gram_detected():
    from ncfock.veronese import _gram_inverse
    with pytest.raises(SingularGram):
        _gram_inverse(np.array([[1.0, 1.0], [1.0, 1.0]]))


def test_classical_veronese_examples(rng):
    assert np.allclose(classical_veronese((1, 0), 3), [1, 0, 0, 0])
    assert np.allclose(classical_veronese((1 / math.sqrt(2),) * 2, 2), [0.5, 1 / math.sqrt(2), 0.5])
    for n in range(1, 7):
        v = rng.normal(size=2) + 1j * rng.normal(size=2)
        v /= np.linalg.norm(v)
        assert abs(np.linalg.norm(classical_veronese(v, n)) - 1) < 1e-12
    with pytest.raises(ValueError):
        classical_veronese((1, 1), 2)


def test_classical_pseudo_veronese():
    assert np.allclose(classical_pseudo_veronese((1, 0), 4), [1, 0, 0, 0, 0])
    v = classical_pseudo_veronese((math.cosh(1), math.sinh(1)), 2)
    assert abs(np.sum(np.array(signature_signs(2)) * np.abs(v) ** 2) - 1) < 1e-12
    with pytest.raises(NotPseudoNormalized):
        classical_pseudo_veronese((1, 1), 2)
    assert abs(pseudo_local_coordinate((math.cosh(2), -math.sinh(2)))) < 1


# pseudo family ---------------------------------------------------------------

def test_pseudo_space_guard():
    assert pseudo_space(PseudoModel(1.5), 1).dim == 4
    with pytest.raises(DepthExceedsDomain):
        pseudo_space(PseudoModel(1.5), MAX_PSEUDO_DIM)
    with pytest.raises(DepthExceedsDomain):
        pseudo_veronese_column(PseudoModel(1.5), 2)


def test_gamma_omega_match_v():
    m = PseudoModel(2.2)
    sp = pseudo_space(m, 1)
    v = v_operator(m)
    n = m.level
    assert np.allclose(np.diag(gamma_op(m, 0, sp).matrix)[:n], np.diag(v.block(0, 0)))
    # the lower entry of the column is Omega_0 on admissible inputs
    om = omega_op(m, 0, sp).matrix
    assert np.allclose(om[: n + 1, :n], v.block(1, 0))
    g0 = np.diag(gamma_op(m, 0, sp).matrix).real
    inv = np.diag(np.where(g0 > 0, 1 / np.where(g0 > 0, g0, 1), 0))
    w = w_op(m, sp).matrix
    assert window_residual(om @ inv, w, [(0, n)]) < 1e-12
    g = np.eye(sp.dim) - w.conj().T @ w
    assert window_residual(inv @ inv, g, [(0, n)]) < 1e-12


@pytest.mark.parametrize("theta", [1.5, 2.2, 3.1])
def test_gamma_omega_identities(theta):
    m = PseudoModel(theta)
    sp = pseudo_space(m, 4)
    n = m.level
    for j in range(4):
        g, o = gamma_op(m, j, sp), omega_op(m, j, sp)
        assert window_residual(g @ g - o.dag @ o, identity(sp), [(max(j - 1, 0), n + j)]) < 1e-10
        if j:
            op = omega_op(m, j - 1, sp)
            assert window_residual(o.dag @ o, op @ op.dag, [(j, n + j)]) < 1e-10


@pytest.mark.parametrize("theta,n", [(1.5, 1), (2.2, 2), (3.1, 3), (3.1, 4)])
def test_pseudo_column_and_projector(theta, n):
    m = PseudoModel(theta)
    c = pseudo_veronese_column(m, n)
    assert window_residual(c.gram(signature_signs(n)), np.eye(c.space.dim), [c.input_window]) < 1e-10
    q = pseudo_veronese_projector(m, n)
    assert window_residual(q @ q, q, list(c.windows)) < 1e-10
    sg = np.repeat(signature_signs(n), c.space.dim)
    jqj = BlockOperator(sg[:, None] * q.dense * sg[None, :], q.row_dims, q.col_dims)
    assert window_residual(jqj, q.dag, list(c.windows)) < 1e-10


def test_pseudo_projector_degree_one_is_q_pjc():
    m = PseudoModel(1.5)
    q1 = pseudo_veronese_projector(m, 1)
    q = projector_q_pjc(m)
    n = m.level
    # compare on admissible inputs of the first component
    d = q1.dense
    dim = q1.row_dims[0]
    rows = list(range(n)) + [dim + k for k in range(n + 1)]
    assert np.abs(d[np.ix_(rows, list(range(n)))] - q.dense[:, :n]).max() < 1e-12
    j = signature(m).dense
    assert np.abs(j @ q.dense @ j - q.dense.conj().T).max() < 1e-12


def test_bhat_column():
    m = PseudoModel(3.1)
    col = bhat_column(m, 1, 0)
    n = m.level
    g0 = gamma_op(m, 0, col.space).diagonal().real[:n]
    assert np.allclose(col[0].diagonal().real[:n], g0 ** -2)
    d = bhat_defects(m, 1, 5)
    assert np.all(np.diff(d, axis=0) <= 1e-15)
    assert np.all(d >= -1e-12)
