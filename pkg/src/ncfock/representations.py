"""Spin representations, their non-commutative analogues, and Clebsch-Gordan checks.

``phi_j(A)`` acts on polynomials of degree ``<= 2j`` by

    (phi_j(A) f)(z) = (alpha + beta z)^{2j} f((-conj(beta) + conj(alpha) z) / (alpha + beta z)),

written in the orthonormal basis ``sqrt(C(2j, k)) z^k``.  The SU(1,1)
representation ``psi_j(B)`` is the analogous action on the weighted Hardy
space with basis ``sqrt((2j)_k / k!) z^k``; it is infinite-dimensional and
is truncated to a finite cutoff here.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.special import binom, poch

from .classical import is_su11, is_su2
from .errors import DegreeTooHigh, ModelInvalid, NotInGroup
from .fock import BlockOperator, FockOperator, window_residual
from .jc import DetunedModel
from .quadrature import QuadratureConfig, half_line_integral, interval_integral
from .veronese import x_op, y_op

__all__ = [
    "two_j_of",
    "spin_rep_su2",
    "spin_closed_form",
    "nc_phi_one",
    "nc_phi_three_half",
    "phi_window",
    "su11_rep",
    "su11_first_column",
    "su11_displayed_rows",
    "su11_auto_cutoff",
    "clebsch_T",
    "tensor_decomposition_su2",
    "tensor_obstruction_residual",
    "nc_tensor_obstruction",
    "compact_moment",
    "noncompact_moment",
    "inner_product",
]

GROUP_TOL = 1e-10
DEFAULT_CUTOFF = 64
MAX_CUTOFF = 4096


def two_j_of(j) -> int:
    """``2j`` as an integer, rejecting labels that are not positive half-integers."""
    two_j = Fraction(j).limit_denominator(2) * 2
    if two_j.denominator != 1 or two_j < 1 or abs(float(two_j) - 2 * float(j)) > 1e-12:
        raise ValueError(f"{j!r} is not a positive half-integer")
    return int(two_j)


def _su2_entries(A):
    A = np.asarray(A, dtype=complex)
    if A.shape != (2, 2) or not is_su2(A, GROUP_TOL):
        raise NotInGroup("matrix is not in SU(2)")
    return A[0, 0], A[1, 0]


def spin_rep_su2(j, A) -> np.ndarray:
    """Matrix of ``phi_j(A)`` by exact polynomial expansion."""
    n = two_j_of(j)
    alpha, beta = _su2_entries(A)
    lin_a = np.array([alpha, beta])
    lin_b = np.array([-np.conj(beta), np.conj(alpha)])
    norms = np.sqrt([binom(n, k) for k in range(n + 1)])
    out = np.zeros((n + 1, n + 1), dtype=complex)
    for k in range(n + 1):
        coeffs = npoly.polymul(npoly.polypow(lin_a, n - k), npoly.polypow(lin_b, k))
        coeffs = np.pad(coeffs, (0, n + 1 - len(coeffs)))[: n + 1]
        out[:, k] = norms[k] * coeffs / norms
    return out


def spin_closed_form(j, A) -> np.ndarray:
    """The explicit matrices for spin 1/2, 1 and 3/2."""
    n = two_j_of(j)
    al, be = _su2_entries(A)
    ac, bc = np.conj(al), np.conj(be)
    a2, b2 = abs(al) ** 2, abs(be) ** 2
    s2, s3 = math.sqrt(2), math.sqrt(3)
    if n == 1:
        return np.array([[al, -bc], [be, ac]])
    if n == 2:
        return np.array([
            [al ** 2, -s2 * al * bc, bc ** 2],
            [s2 * al * be, a2 - b2, -s2 * ac * bc],
            [be ** 2, s2 * ac * be, ac ** 2]])
    if n == 3:
        return np.array([
            [al ** 3, -s3 * al ** 2 * bc, s3 * al * bc ** 2, -bc ** 3],
            [s3 * al ** 2 * be, (a2 - 2 * b2) * al, -(2 * a2 - b2) * bc, s3 * ac * bc ** 2],
            [s3 * al * be ** 2, (2 * a2 - b2) * be, (a2 - 2 * b2) * ac, -s3 * ac ** 2 * bc],
            [be ** 3, s3 * ac * be ** 2, s3 * ac ** 2 * be, ac ** 3]])
    raise ValueError("closed forms exist only for j = 1/2, 1, 3/2")


# non-commutative phi_1 and phi_3/2 -------------------------------------------

def phi_window(j, dim: int, band: int = 2) -> tuple[int, int]:
    """Index window on which ``Phi_j(U)`` is unitary: ``[2j, dim - max(band, 2j))``."""
    n = two_j_of(j)
    return n, dim - max(band, n)


def _xy(model: DetunedModel, depth: int):
    xs = [x_op(model, k).matrix for k in range(depth + 1)]
    ys = [y_op(model, k).matrix for k in range(depth)]
    return xs, ys


def _h(m):
    return m.conj().T


def nc_phi_one(model: DetunedModel) -> BlockOperator:
    """Three-by-three operator analogue of the spin-1 matrix built from X and Y."""
    (x0, x1, x2), (y0, y1) = _xy(model, 2)
    s2 = math.sqrt(2)
    grid = [[x0 @ x0, -s2 * x0 @ _h(y0), _h(y0) @ _h(y1)],
            [s2 * y0 @ x0, x1 @ x1 - _h(y1) @ y1, -s2 * x1 @ _h(y1)],
            [y1 @ y0, s2 * y1 @ x1, x2 @ x2]]
    return BlockOperator.from_grid(grid, valid_band=2)


def nc_phi_three_half(model: DetunedModel) -> BlockOperator:
    """Four-by-four operator analogue of the spin-3/2 matrix."""
    (x0, x1, x2, x3), (y0, y1, y2) = _xy(model, 3)
    s3 = math.sqrt(3)
    grid = [
        [x0 @ x0 @ x0, -s3 * x0 @ x0 @ _h(y0), s3 * x0 @ _h(y0) @ _h(y1),
         -_h(y0) @ _h(y1) @ _h(y2)],
        [s3 * y0 @ x0 @ x0, x1 @ (x1 @ x1 - 2 * _h(y1) @ y1),
         -(2 * x1 @ x1 - _h(y1) @ y1) @ _h(y1), s3 * x1 @ _h(y1) @ _h(y2)],
        [s3 * y1 @ y0 @ x0, y1 @ (2 * x1 @ x1 - _h(y1) @ y1),
         x2 @ (x2 @ x2 - 2 * _h(y2) @ y2), -s3 * x2 @ x2 @ _h(y2)],
        [y2 @ y1 @ y0, s3 * y2 @ y1 @ x1, s3 * y2 @ x2 @ x2, x3 @ x3 @ x3]]
    return BlockOperator.from_grid(grid, valid_band=3)


# SU(1,1) ---------------------------------------------------------------------

def _su11_entries(B):
    B = np.asarray(B, dtype=complex)
    if B.shape != (2, 2) or not is_su11(B, GROUP_TOL):
        raise NotInGroup("matrix is not in SU(1,1)")
    alpha, beta = B[0, 0], -B[1, 0]
    if not abs(beta) < abs(alpha):
        raise NotInGroup("|beta/alpha| must be below one")
    return alpha, beta


def _weights(two_j: int, size: int) -> np.ndarray:
    """``sqrt((2j)_n / n!)`` for ``n < size``, built by a stable recurrence."""
    w = np.ones(size)
    for n in range(1, size):
        w[n] = w[n - 1] * math.sqrt((two_j + n - 1) / n)
    return w


def _neg_binomial_series(alpha, beta, power: int, size: int) -> np.ndarray:
    """Taylor coefficients of ``(alpha + beta z)^{-power}`` up to ``z^{size-1}``."""
    c = np.empty(size, dtype=complex)
    c[0] = alpha ** (-power)
    ratio = -beta / alpha
    for n in range(size - 1):
        c[n + 1] = c[n] * ratio * (power + n) / (n + 1)
    return c


def su11_first_column(j, B, cutoff: int) -> np.ndarray:
    """Orthonormal-basis coefficients of ``psi_j(B) 1``."""
    two_j = two_j_of(j)
    alpha, beta = _su11_entries(B)
    w = _weights(two_j, cutoff)
    return _neg_binomial_series(alpha, beta, two_j, cutoff) / w


def su11_auto_cutoff(j, B, tol: float = 1e-8, start: int = DEFAULT_CUTOFF,
                     limit: int = MAX_CUTOFF) -> int:
    """Smallest doubling of ``start`` at which column 0 has norm defect below ``tol``."""
    cutoff = start
    while True:
        col = su11_first_column(j, B, cutoff)
        if abs(np.vdot(col, col).real - 1) < tol or cutoff >= limit:
            return cutoff
        cutoff = min(2 * cutoff, limit)


def su11_rep(j, B, cutoff: int | None = None) -> np.ndarray:
    """Truncated matrix of ``psi_j(B)``; column ``k`` is the image of ``sqrt((2j)_k/k!) z^k``.

    With ``cutoff=None`` the size is chosen by :func:`su11_auto_cutoff`.
    """
    two_j = two_j_of(j)
    if two_j < 2:
        raise ValueError("the SU(1,1) series needs j >= 1")
    alpha, beta = _su11_entries(B)
    if cutoff is None:
        cutoff = su11_auto_cutoff(j, B)
    w = _weights(two_j, cutoff)
    # g(z) = (conj(beta) + conj(alpha) z) / (alpha + beta z); column k+1 = column k * g
    inv = _neg_binomial_series(alpha, beta, 1, cutoff)
    g = np.convolve(np.array([np.conj(beta), np.conj(alpha)]), inv)[:cutoff]
    col = _neg_binomial_series(alpha, beta, two_j, cutoff)
    out = np.empty((cutoff, cutoff), dtype=complex)
    for k in range(cutoff):
        out[:, k] = w[k] * col / w
        col = np.convolve(col, g)[:cutoff]
    return out


def su11_displayed_rows(j, B, k: int) -> np.ndarray:
    """The first three coefficients of ``psi_j(B) f_k`` in closed form.

    Needs ``beta != 0`` when ``k < 2`` because of the negative powers of
    ``conj(beta)`` in the formulas.
    """
    two_j = two_j_of(j)
    al, be = _su11_entries(B)
    bc = np.conj(be)
    a2, b2 = abs(al) ** 2, abs(be) ** 2
    pre = math.sqrt(poch(two_j, k) / math.factorial(k))
    p = two_j + k
    r0 = pre * bc ** k / al ** p
    r1 = pre * math.sqrt(1 / two_j) * (k * a2 - p * b2) * bc ** (k - 1) / al ** (p + 1)
    r2 = (pre * math.sqrt(2 / poch(two_j, 2))
          * (k * (k - 1) / 2 * a2 ** 2 - k * p * a2 * b2 + p * (p + 1) / 2 * b2 ** 2)
          * bc ** (k - 2) / al ** (p + 2))
    return np.array([r0, r1, r2])


# Clebsch-Gordan --------------------------------------------------------------

def clebsch_T(fold: int) -> np.ndarray:
    """The orthogonal change of basis splitting two or three spin-1/2 factors."""
    r2, r3, r6 = math.sqrt(2), math.sqrt(3), math.sqrt(6)
    if fold == 2:
        return np.array([[0, 1, 0, 0],
                         [1 / r2, 0, 1 / r2, 0],
                         [-1 / r2, 0, 1 / r2, 0],
                         [0, 0, 0, 1]])
    if fold == 3:
        return np.array([
            [0, 0, 0, 0, 1, 0, 0, 0],
            [1 / r2, 0, 1 / r6, 0, 0, 1 / r3, 0, 0],
            [-1 / r2, 0, 1 / r6, 0, 0, 1 / r3, 0, 0],
            [0, 0, 0, r2 / r3, 0, 0, 1 / r3, 0],
            [0, 0, -r2 / r3, 0, 0, 1 / r3, 0, 0],
            [0, 1 / r2, 0, -1 / r6, 0, 0, 1 / r3, 0],
            [0, -1 / r2, 0, -1 / r6, 0, 0, 1 / r3, 0],
            [0, 0, 0, 0, 0, 0, 0, 1]])
    raise ValueError("fold must be 2 or 3")


def _block_diag(*mats):
    size = sum(m.shape[0] for m in mats)
    out = np.zeros((size, size), dtype=complex)
    off = 0
    for m in mats:
        d = m.shape[0]
        out[off:off + d, off:off + d] = m
        off += d
    return out


def tensor_decomposition_su2(A, fold: int) -> float:
    """Max entry of ``T^T (A x ... x A) T`` minus its block-diagonal target."""
    A = np.asarray(A, dtype=complex)
    _su2_entries(A)
    T = clebsch_T(fold)
    if fold == 2:
        prod = np.kron(A, A)
        target = _block_diag(np.eye(1), spin_rep_su2(1, A))
    else:
        prod = np.kron(np.kron(A, A), A)
        target = _block_diag(A, A, spin_rep_su2(1.5, A))
    return float(np.max(np.abs(T.T @ prod @ T - target)))


def tensor_obstruction_residual(v, phi1: np.ndarray, window=None) -> float:
    """Compare ``T^T (V x V) T`` with ``diag(1, Phi_1)`` for an operator-valued 2x2 ``V``.

    ``v`` is a 2x2 nested list of equal square matrices, multiplied as
    ``(V x V)[(i,k),(j,l)] = V[i][j] @ V[k][l]``.  ``window`` restricts the
    comparison to a per-component index range.
    """
    m = v[0][0].shape[0]
    vv = [[v[i][j] @ v[k][l] for j in range(2) for l in range(2)]
          for i in range(2) for k in range(2)]
    vv = np.block(vv)
    T = np.kron(clebsch_T(2), np.eye(m))
    lhs = T.T @ vv @ T
    rhs = np.zeros_like(lhs)
    rhs[:m, :m] = np.eye(m)
    rhs[m:, m:] = phi1
    dims = [m] * 4
    window = window or (0, m)
    return window_residual(BlockOperator(lhs, dims, dims), BlockOperator(rhs, dims, dims),
                           [window] * 4)


def nc_tensor_obstruction(model: DetunedModel, band: int = 2, start: int = 2) -> float:
    """Residual of the naive tensor-product route to ``Phi_1`` with operator entries.

    The comparison is made on indices ``[start, M - band)`` of every
    component, where ``Phi_1`` itself is unitary, so a nonzero value is a
    genuine consequence of non-commutativity rather than of truncation.
    """
    if model.theta <= 0:
        raise ModelInvalid("theta must be positive")
    (x0, x1), (y0,) = _xy(model, 1)
    v = [[x0, -_h(y0)], [y0, x1]]
    phi1 = nc_phi_one(model).dense
    dim = model.space.dim
    return tensor_obstruction_residual(v, phi1, (start, dim - band))


# inner-product integrals -----------------------------------------------------

def compact_moment(j, k: int, l: int, quadrature: QuadratureConfig | None = None) -> complex:
    """``(2(2j+1)/2pi) int z^k conj(z)^l (1+|z|^2)^{-(2j+2)} dx dy``.

    The angular integral kills ``k != l`` exactly; the radial part
    ``(2j+1) int_0^inf u^k (1+u)^{-(2j+2)} du`` is done numerically.
    """
    two_j = two_j_of(j)
    if k > two_j or l > two_j or k < 0 or l < 0:
        raise DegreeTooHigh(f"degrees must lie in [0, {two_j}]")
    if k != l:
        return 0.0
    p = two_j + 2
    return (two_j + 1) * half_line_integral(lambda u: u ** k / (1 + u) ** p, quadrature)


def noncompact_moment(j, k: int, l: int, quadrature: QuadratureConfig | None = None) -> complex:
    """``(2(2j-1)/2pi) int_D (1-|z|^2)^{2j-2} z^k conj(z)^l dx dy`` for ``j >= 1``."""
    two_j = two_j_of(j)
    if two_j < 2:
        raise ValueError("the weighted Hardy measure needs j >= 1")
    if k < 0 or l < 0:
        raise ValueError("degrees must be non-negative")
    if k != l:
        return 0.0
    return (two_j - 1) * interval_integral(lambda u: (1 - u) ** (two_j - 2) * u ** k,
                                           0.0, 1.0, quadrature)


def inner_product(f, g, j, kind: str = "compact", check: bool = False,
                  quadrature: QuadratureConfig | None = None) -> complex:
    """Inner product of two polynomials given by monomial coefficients.

    Compact: ``sum_k f_k conj(g_k) / C(2j, k)``.  Noncompact:
    ``sum_n n! / (2j)_n f_n conj(g_n)``.  With ``check`` the weights are
    recomputed by quadrature and must agree within 1e-6.
    """
    f = np.atleast_1d(np.asarray(f, dtype=complex))
    g = np.atleast_1d(np.asarray(g, dtype=complex))
    size = max(len(f), len(g))
    f, g = np.pad(f, (0, size - len(f))), np.pad(g, (0, size - len(g)))
    two_j = two_j_of(j)
    ks = np.arange(size)
    if kind == "compact":
        if size - 1 > two_j and np.any(np.abs(np.concatenate([f, g])[np.r_[ks, ks] > two_j]) > 0):
            raise DegreeTooHigh(f"degree exceeds 2j = {two_j}")
        size = min(size, two_j + 1)
        f, g, ks = f[:size], g[:size], ks[:size]
        w = np.array([1 / binom(two_j, k) for k in ks])
        moment = compact_moment
    elif kind == "noncompact":
        if two_j < 2:
            raise ValueError("the noncompact inner product needs j >= 1")
        w = np.array([math.factorial(k) / poch(two_j, k) for k in ks])
        moment = noncompact_moment
    else:
        raise ValueError(f"unknown kind {kind!r}")
    value = complex(np.sum(w * f * np.conj(g)))
    if check:
        quad = complex(sum(moment(j, k, k, quadrature) * f[k] * np.conj(g[k]) for k in ks))
        if abs(quad - value) > 1e-6:
            raise ArithmeticError(f"quadrature {quad} disagrees with closed form {value}")
    return value
