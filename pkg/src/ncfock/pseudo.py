"""The pseudo-Hermitian (SU(1,1)) Jaynes-Cummings model.

Swapping the sign of the lower-left coupling gives

    H_pJC = [[theta, a], [-a^dagger, -theta]],

which is J-Hermitian for ``J = diag(1, -1)``.  Its diagonalizer involves
``S(N) = sqrt(theta^2 - N)``, which is real only on a finite stretch of the
ladder.  The model therefore lives on ``F_n + F_{n+1}`` where ``F_k`` is
spanned by ``|0>, ..., |k-1>`` and ``n < theta^2 <= n+1``.  On that space
the ladder blocks are rectangular and close exactly, so no truncation
band is needed anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classical import su11_generators
from .errors import ModelInvalid, NoSubspace
from .fock import BlockOperator, FockSpace, annihilation, creation, identity, number
from .jc import JCParams

__all__ = [
    "PseudoModel",
    "admissible_level",
    "ladder",
    "s_op",
    "h_pjc",
    "signature",
    "v_operator",
    "v_inverse",
    "pseudo_factorization",
    "projector_q_pjc",
    "pseudo_spectral_residual",
    "evolution_closed_pseudo",
    "pseudo_full_hamiltonian",
]


def admissible_level(theta: float) -> int:
    """The unique ``n >= 1`` with ``n < theta^2 <= n + 1``."""
    if not theta > 0:
        raise ModelInvalid("theta must be positive")
    t2 = theta * theta
    if t2 <= 1:
        raise NoSubspace(f"theta^2 = {t2} <= 1 leaves no subspace where S(N+1) is real")
    return math.ceil(t2) - 1


@dataclass(frozen=True)
class PseudoModel:
    theta: float
    level: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "level", admissible_level(self.theta))

    @property
    def dims(self) -> tuple[int, int]:
        return self.level, self.level + 1


def ladder(dim_out: int, dim_in: int) -> np.ndarray:
    """Rectangular annihilation block ``F_{dim_in} -> F_{dim_out}``."""
    out = np.zeros((dim_out, dim_in))
    for k in range(1, min(dim_in, dim_out + 1)):
        out[k - 1, k] = math.sqrt(k)
    return out


def _s_values(theta: float, shift: int, dim: int) -> np.ndarray:
    args = theta * theta - (np.arange(dim) + shift)
    if np.any(args <= 0):
        raise ModelInvalid("S is not real on the requested component")
    # S(0) is theta exactly
    return np.where(args == theta * theta, theta, np.sqrt(args))


def s_op(model: PseudoModel, shift: int, component_dim: int) -> np.ndarray:
    """Diagonal matrix of ``S(N + shift)`` on ``F_{component_dim}``."""
    return np.diag(_s_values(model.theta, shift, component_dim))


def _blocks(model: PseudoModel, grid) -> BlockOperator:
    n, n1 = model.dims
    return BlockOperator.from_grid(grid, row_dims=[n, n1], col_dims=[n, n1], valid_band=0)


def h_pjc(model: PseudoModel) -> BlockOperator:
    n, n1 = model.dims
    a = ladder(n, n1)
    th = model.theta
    return _blocks(model, [[th, a], [-a.T, -th]])


def signature(model: PseudoModel) -> BlockOperator:
    return _blocks(model, [[1.0, 0], [0, -1.0]])


def _normalizers(model: PseudoModel):
    th = model.theta
    n, n1 = model.dims
    s1, s0 = _s_values(th, 1, n), _s_values(th, 0, n1)
    return s1, s0, 1 / np.sqrt(2 * s1 * (s1 + th)), 1 / np.sqrt(2 * s0 * (s0 + th))


def v_operator(model: PseudoModel) -> BlockOperator:
    """Pseudo-unitary diagonalizer, ``V^dagger J V = J``."""
    th = model.theta
    n, n1 = model.dims
    a = ladder(n, n1)
    s1, s0, h1, h0 = _normalizers(model)
    core = np.block([[np.diag(s1 + th), -a], [-a.T, np.diag(s0 + th)]])
    d = np.concatenate([h1, h0])
    left, right = d[:, None] * core, core * d[None, :]
    gap = np.max(np.abs(left - right))
    if gap > 1e-13:
        raise ArithmeticError(f"product orderings disagree by {gap:.3e}")
    return BlockOperator(left, [n, n1], [n, n1])


def v_inverse(model: PseudoModel) -> BlockOperator:
    """``J V^dagger J``."""
    j = signature(model)
    return j @ v_operator(model).dag @ j


def _eigen_diag(model: PseudoModel) -> BlockOperator:
    n, n1 = model.dims
    s1, s0, _, _ = _normalizers(model)
    return _blocks(model, [[np.diag(s1), 0], [0, np.diag(-s0)]])


def pseudo_factorization(model: PseudoModel) -> float:
    """Max entry of ``H_pJC - V diag(S(N+1), -S(N)) V^{-1}``."""
    v = v_operator(model)
    rebuilt = v @ _eigen_diag(model) @ v_inverse(model)
    return float(np.max(np.abs(rebuilt.dense - h_pjc(model).dense)))


def projector_q_pjc(model: PseudoModel) -> BlockOperator:
    th = model.theta
    n, n1 = model.dims
    a = ladder(n, n1)
    s1, s0, _, _ = _normalizers(model)
    core = np.block([[np.diag(s1 + th), a], [-a.T, np.diag(s0 - th)]])
    d = np.concatenate([1 / (2 * s1), 1 / (2 * s0)])
    return BlockOperator(d[:, None] * core, [n, n1], [n, n1])


def pseudo_spectral_residual(model: PseudoModel) -> float:
    """Rebuild ``H_pJC`` as ``D Q - D (1 - Q)`` with ``D = diag(S(N+1), S(N))``."""
    q = projector_q_pjc(model)
    s1, s0, _, _ = _normalizers(model)
    d = np.concatenate([s1, s0])[:, None]
    rebuilt = d * q.dense - d * (np.eye(q.dense.shape[0]) - q.dense)
    return float(np.max(np.abs(rebuilt - h_pjc(model).dense)))


def evolution_closed_pseudo(model: PseudoModel, gt: float) -> BlockOperator:
    """Closed form of ``exp(-i gt H_pJC)``; pseudo-unitary rather than unitary."""
    th = model.theta
    n, n1 = model.dims
    a = ladder(n, n1)
    s1, s0, _, _ = _normalizers(model)
    c1, c0 = np.cos(gt * s1), np.cos(gt * s0)
    q1, q0 = np.sin(gt * s1) / s1, np.sin(gt * s0) / s0
    grid = [[np.diag(c1 - 1j * th * q1), -1j * q1[:, None] * a],
            [1j * q0[:, None] * a.T, np.diag(c0 + 1j * th * q0)]]
    return _blocks(model, grid)


def pseudo_full_hamiltonian(params: JCParams, space: FockSpace) -> BlockOperator:
    """``omega N + (Delta/2) tau_3 + g (tau_+ a + tau_- a^dagger)`` on a square truncation."""
    t1, t2, t3, tp, tm = su11_generators()
    a, ad, num = annihilation(space), creation(space), number(space)
    w, d, g = params.omega, params.delta, params.g
    return (w * BlockOperator.kron(np.eye(2), num)
            + (d / 2) * BlockOperator.kron(t3, identity(space))
            + g * (BlockOperator.kron(tp, a) + BlockOperator.kron(tm, ad)))
