"""Non-commutative spheres, hyperboloids and their Veronese maps.

The first column of the JC diagonalizer ``U_I`` is a unit-norm column of
operators ``A = (X_0, Y_0)^T``, a non-commutative 2-sphere.  Raising it to
degree ``n`` with ordered products of the ladder-shifted families
``X_{-j}`` and ``Y_{-j}`` gives a non-commutative Veronese column ``A_n``.
The pseudo model gives the hyperboloid ``B = (Gamma_0, Omega_0)^T`` and its
pseudo-Veronese column ``B_n``, normalized against an alternating
signature.

Conventions for the diagonal factors, all evaluated through
:func:`~ncfock.fock.diag_fn`:

* ``X_{-j}`` is ``f(N + 1 - j)`` with ``f(u) = sqrt((R(u) + theta) / 2R(u))``.
* ``Y_{-j} = D_j(N) a^dagger`` where ``D_j(k)`` is
  ``sqrt((k - j)/k) / sqrt(2 R(k - j)(R(k - j) + theta))``.  Entries with
  ``k < j`` (or ``k = 0`` when ``j >= 1``) are clamped to zero; for ``j = 0``
  the ratio ``(k - j)/k`` is taken to be 1 on the vacuum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import binom, poch

from .errors import DepthExceedsDomain, ModelInvalid, NotPseudoNormalized, SingularGram
from .fock import BlockOperator, FockOperator, FockSpace, annihilation, creation, diag_fn, identity
from .jc import DetunedModel, _radius
from .pseudo import PseudoModel

__all__ = [
    "OperatorColumn",
    "signature_signs",
    "x_op",
    "y_op",
    "z_op",
    "z0_alt",
    "sphere_column",
    "veronese_column",
    "veronese_projector",
    "local_column",
    "oike_projector",
    "classical_veronese",
    "classical_pseudo_veronese",
    "pseudo_local_coordinate",
    "pseudo_space",
    "gamma_op",
    "omega_op",
    "w_op",
    "hyperboloid_column",
    "pseudo_veronese_column",
    "pseudo_veronese_projector",
    "bhat_column",
    "bhat_defects",
    "MAX_PSEUDO_DIM",
]

MAX_PSEUDO_DIM = 4096


@dataclass(frozen=True)
class OperatorColumn:
    """A column of Fock operators, ``(E_0, ..., E_n)^T``.

    ``valid_band`` counts trailing untrusted indices; ``windows`` optionally
    gives a per-entry ``(start, stop)`` output window, overriding the band.
    """

    entries: tuple
    space: FockSpace
    valid_band: int = 0
    windows: tuple | None = None
    input_window: tuple | None = None

    def __post_init__(self):
        if any(e.space != self.space for e in self.entries):
            raise ValueError("all entries must share one Fock space")

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, k) -> FockOperator:
        return self.entries[k]

    def as_block(self) -> BlockOperator:
        return BlockOperator.from_grid([[e] for e in self.entries], valid_band=self.valid_band)

    def gram(self, signs: Sequence[int] | None = None) -> np.ndarray:
        """``sum_k s_k E_k^dagger E_k`` as a dense matrix."""
        signs = signs if signs is not None else [1] * len(self.entries)
        return sum(s * (e.matrix.conj().T @ e.matrix) for s, e in zip(signs, self.entries))

    def row_windows(self):
        if self.windows is not None:
            return list(self.windows)
        return [(0, self.space.dim - self.valid_band)] * len(self.entries)


def signature_signs(n: int) -> list[int]:
    """Diagonal of the alternating signature ``J_n``, length ``n + 1``."""
    return [(-1) ** k for k in range(n + 1)]


def _require_positive(model: DetunedModel):
    if model.theta <= 0:
        raise ModelInvalid("the Veronese construction uses chart I and needs theta > 0")


def _x_fn(theta, radius):
    def f(u):
        r = radius(u)
        return (r + theta) / np.sqrt(2 * r * (r + theta))
    return f


def _ratio(j: int):
    """``sqrt((k - j)/k)``, equal to 1 on the vacuum when ``j = 0``."""
    def f(k):
        k = np.asarray(k, dtype=float)
        if j == 0:
            return np.ones_like(k)
        with np.errstate(all="ignore"):
            return np.sqrt((k - j) / k)
    return f


def _y_fn(theta, radius, j, sign=1.0):
    ratio = _ratio(j)

    def f(k):
        r = radius(np.asarray(k) - j)
        return sign * ratio(k) / np.sqrt(2 * r * (r + theta))
    return f


def _z_fn(theta, radius, j, sign=1.0):
    ratio = _ratio(j)

    def f(k):
        return sign * ratio(k) / (radius(np.asarray(k) - j) + theta)
    return f


def _real_radius(theta):
    """R(u) for real arguments; negative radicands give NaN so diag_fn clamps them."""
    base = _radius(theta)

    def f(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(invalid="ignore"):
            return np.where(u < 0, np.nan, base(np.maximum(u, 0)))
    return f


def x_op(model: DetunedModel, j: int = 0) -> FockOperator:
    """The diagonal operator ``X_{-j}``."""
    _require_positive(model)
    th = model.theta
    return diag_fn(model.space, _x_fn(th, _real_radius(th)), 1 - j)


def y_op(model: DetunedModel, j: int = 0) -> FockOperator:
    """``Y_{-j}``, a diagonal factor times ``a^dagger``; valid from index ``j``."""
    _require_positive(model)
    th = model.theta
    d = diag_fn(model.space, _y_fn(th, _real_radius(th), j), 0)
    out = d @ creation(model.space)
    return FockOperator(model.space, out.matrix, d.valid_rows, max(j, d.valid_start))


def z_op(model: DetunedModel, j: int = 0) -> FockOperator:
    """``Z_{-j} = Y_{-j} X_{-j}^{-1}``, built directly from its closed form."""
    _require_positive(model)
    th = model.theta
    d = diag_fn(model.space, _z_fn(th, _real_radius(th), j), 0)
    out = d @ creation(model.space)
    return FockOperator(model.space, out.matrix, d.valid_rows, max(j, d.valid_start))


def z0_alt(model: DetunedModel) -> FockOperator:
    """The other ordering, ``a^dagger (R(N+1) + theta)^{-1}``."""
    _require_positive(model)
    th = model.theta
    d = diag_fn(model.space, lambda u: 1 / (_radius(th)(u) + th), 1)
    return creation(model.space) @ d


def _power(op: FockOperator, p: float) -> FockOperator:
    """Entrywise power of a positive diagonal operator (zeros stay zero)."""
    v = op.diagonal().real
    with np.errstate(divide="ignore"):
        out = np.where(v > 0, np.abs(v) ** p, 0.0)
    return FockOperator(op.space, np.diag(out), op.valid_rows, op.valid_start)


def _chain(factors) -> FockOperator:
    """Ordered product ``F_{k-1} ... F_1 F_0`` of ``factors = [F_0, ..., F_{k-1}]``."""
    out = None
    for f in factors:
        out = f if out is None else f @ out
    return out


def sphere_column(model: DetunedModel) -> OperatorColumn:
    return veronese_column(model, 1)


def veronese_column(model: DetunedModel, n: int) -> OperatorColumn:
    """``A_n`` with entries ``sqrt(C(n, j)) Y_{-(j-1)} ... Y_0 X_0^{n-j}``.

    Entry ``j`` raises the number by ``j``, so truncation pollutes the last
    ``n + 1`` inputs; ``valid_band`` is set accordingly.
    """
    if n < 1:
        raise ValueError("degree must be positive")
    _require_positive(model)
    x0 = x_op(model, 0)
    ys = [y_op(model, j) for j in range(n)]
    one = identity(model.space)
    entries = []
    for j in range(n + 1):
        head = _chain(ys[:j]) if j else one
        entries.append(math.sqrt(binom(n, j)) * (head @ _power(x0, n - j)))
    return OperatorColumn(tuple(entries), model.space, valid_band=n + 1)


def veronese_projector(model: DetunedModel, n: int) -> BlockOperator:
    """``P_n = A_n A_n^dagger``."""
    col = veronese_column(model, n).as_block()
    return col @ col.dag


def local_column(model: DetunedModel, n: int) -> OperatorColumn:
    """``Z_n`` with entries ``sqrt(C(n, j)) Z_{-(j-1)} ... Z_0`` for ``j = 1..n``."""
    if n < 1:
        raise ValueError("degree must be positive")
    zs = [z_op(model, j) for j in range(n)]
    entries = [math.sqrt(binom(n, j)) * _chain(zs[:j]) for j in range(1, n + 1)]
    return OperatorColumn(tuple(entries), model.space, valid_band=n + 1)


def _gram_inverse(g: np.ndarray) -> np.ndarray:
    off = g - np.diag(np.diag(g))
    if not np.any(off):
        d = np.diag(g).real
        if np.any(d <= 1e-300):
            raise SingularGram("Gram block has a vanishing diagonal entry")
        return np.diag(1 / d)
    try:
        chol = np.linalg.cholesky(g)
    except np.linalg.LinAlgError as exc:
        raise SingularGram("Gram block is not positive definite") from exc
    piv = np.abs(np.diag(chol))
    if piv.min() < 1e-12 * piv.max():
        raise SingularGram("Gram block is numerically singular")
    inv_l = np.linalg.solve(chol, np.eye(g.shape[0]))
    return inv_l.conj().T @ inv_l


def oike_projector(Z) -> BlockOperator:
    """Projector ``[[G^-1, G^-1 Z^dagger], [Z G^-1, Z G^-1 Z^dagger]]``, ``G = 1 + Z^dagger Z``.

    ``Z`` may be a single Fock operator or a column of them, in which case
    the lower-right block is itself a block matrix.
    """
    if isinstance(Z, OperatorColumn):
        zb = Z.as_block()
    elif isinstance(Z, FockOperator):
        zb = BlockOperator(Z.matrix, [Z.dim], [Z.dim], Z.dim - Z.valid_rows)
    else:
        zb = Z
    z = zb.dense
    m = z.shape[1]
    ginv = _gram_inverse(np.eye(m) + z.conj().T @ z)
    zg = z @ ginv
    dense = np.block([[ginv, ginv @ z.conj().T], [zg, zg @ z.conj().T]])
    dims = (m,) + zb.row_dims
    return BlockOperator(dense, dims, dims, zb.valid_band)


def classical_veronese(v, n: int) -> np.ndarray:
    """``(sqrt(C(n, j)) v_1^{n-j} v_2^j)_j`` for a unit vector ``v``."""
    v1, v2 = np.asarray(v, dtype=complex)
    if abs(abs(v1) ** 2 + abs(v2) ** 2 - 1) > 1e-12:
        raise ValueError("input must be a unit vector")
    return np.array([math.sqrt(binom(n, j)) * v1 ** (n - j) * v2 ** j for j in range(n + 1)])


def classical_pseudo_veronese(v, n: int) -> np.ndarray:
    """Degree-``n`` image of ``v = (alpha, -beta)`` with ``|alpha|^2 - |beta|^2 = 1``."""
    v1, v2 = np.asarray(v, dtype=complex)
    if abs(abs(v1) ** 2 - abs(v2) ** 2 - 1) > 1e-12:
        raise NotPseudoNormalized("need |v_1|^2 - |v_2|^2 = 1")
    return np.array([math.sqrt(binom(n, j)) * v1 ** (n - j) * v2 ** j for j in range(n + 1)])


def pseudo_local_coordinate(v) -> complex:
    """Local coordinate ``w = -beta / alpha`` of ``v = (alpha, -beta)``.

    This is the ratio for which ``|w| < 1`` actually holds on the
    hyperboloid (the reciprocal ratio always has modulus above one).
    """
    v1, v2 = np.asarray(v, dtype=complex)
    if abs(abs(v1) ** 2 - abs(v2) ** 2 - 1) > 1e-12:
        raise NotPseudoNormalized("need |v_1|^2 - |v_2|^2 = 1")
    w = v2 / v1
    return complex(w)


# pseudo family -------------------------------------------------------------

def pseudo_space(model: PseudoModel, depth: int = 1) -> FockSpace:
    """Square Fock space large enough to raise every admissible state ``depth`` times."""
    dim = model.level + depth + 1
    if dim > MAX_PSEUDO_DIM:
        raise DepthExceedsDomain(f"depth {depth} needs dimension {dim} > {MAX_PSEUDO_DIM}")
    return FockSpace(dim)


def _s_radius(theta):
    def f(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(invalid="ignore"):
            arg = theta * theta - u
            return np.where(u == 0, theta, np.where(arg > 0, np.sqrt(np.abs(arg)), np.nan))
    return f


def gamma_op(model: PseudoModel, j: int = 0, space: FockSpace | None = None) -> FockOperator:
    """``Gamma_{-j}``; entries where ``theta^2 - (m + 1 - j) <= 0`` are clamped."""
    space = space or pseudo_space(model)
    th = model.theta
    return diag_fn(space, _x_fn(th, _s_radius(th)), 1 - j)


def omega_op(model: PseudoModel, j: int = 0, space: FockSpace | None = None) -> FockOperator:
    """``Omega_{-j}``: like ``Y_{-j}`` with S in place of R and an overall minus sign."""
    space = space or pseudo_space(model)
    th = model.theta
    d = diag_fn(space, _y_fn(th, _s_radius(th), j, sign=-1.0), 0)
    out = d @ creation(space)
    return FockOperator(space, out.matrix, d.valid_rows, max(j, d.valid_start))


def w_op(model: PseudoModel, space: FockSpace | None = None) -> FockOperator:
    """``W = Omega_0 Gamma_0^{-1} = -a^dagger / (S(N) + theta)``."""
    space = space or pseudo_space(model)
    th = model.theta
    d = diag_fn(space, _z_fn(th, _s_radius(th), 0, sign=-1.0), 0)
    return d @ creation(space)


def _check_depth(model: PseudoModel, n: int):
    if n < 1:
        raise ValueError("depth must be positive")
    if model.level <= n:
        raise DepthExceedsDomain(
            f"admissible level {model.level} does not support depth {n}")


def hyperboloid_column(model: PseudoModel) -> OperatorColumn:
    return pseudo_veronese_column(model, 1)


def pseudo_veronese_column(model: PseudoModel, n: int) -> OperatorColumn:
    """``B_n`` with entries ``sqrt(C(n, j)) Omega_{-(j-1)} ... Omega_0 Gamma_0^{n-j}``.

    Valid inputs are ``m < level``; entry ``k`` is then valid on outputs
    ``p < level + k``.
    """
    _check_depth(model, n)
    space = pseudo_space(model, n)
    g0 = gamma_op(model, 0, space)
    oms = [omega_op(model, j, space) for j in range(n)]
    one = identity(space)
    entries = []
    for j in range(n + 1):
        head = _chain(oms[:j]) if j else one
        entries.append(math.sqrt(binom(n, j)) * (head @ _power(g0, n - j)))
    windows = tuple((0, model.level + k) for k in range(n + 1))
    return OperatorColumn(tuple(entries), space, windows=windows,
                          input_window=(0, model.level))


def pseudo_veronese_projector(model: PseudoModel, n: int) -> BlockOperator:
    """``Q_n = B_n B_n^dagger J_n``."""
    col = pseudo_veronese_column(model, n)
    b = col.as_block()
    signs = np.repeat(signature_signs(n), col.space.dim)
    return BlockOperator(b.dense @ b.dense.conj().T * signs[None, :], b.row_dims, b.row_dims)


def bhat_column(model: PseudoModel, j_spin: float, depth: int) -> OperatorColumn:
    """Truncation of the first column of the SU(1,1) representation of V.

    Entries are ``sqrt((2j)_k / k!) Omega_{-(k-1)} ... Omega_0 Gamma_0^{-(2j+k)}``
    for ``k = 0..depth``.  The full infinite column is normalized; a finite
    depth leaves a positive defect that shrinks as the depth grows.
    """
    two_j = round(2 * j_spin)
    if two_j < 1 or abs(two_j - 2 * j_spin) > 1e-12:
        raise ValueError("j_spin must be a positive half-integer")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    space = pseudo_space(model, depth)
    g0 = gamma_op(model, 0, space)
    oms = [omega_op(model, j, space) for j in range(depth)]
    one = identity(space)
    entries = []
    for k in range(depth + 1):
        head = _chain(oms[:k]) if k else one
        weight = math.sqrt(poch(two_j, k) / math.factorial(k))
        entries.append(weight * (head @ _power(g0, -(two_j + k))))
    windows = tuple((0, model.level + k) for k in range(depth + 1))
    return OperatorColumn(tuple(entries), space, windows=windows,
                          input_window=(0, model.level))


def bhat_defects(model: PseudoModel, j_spin: float, depth: int) -> np.ndarray:
    """Normalization defect ``1 - sum_{k <= d} E_k^dagger E_k`` per depth ``d``.

    Returned as an array of shape ``(depth + 1, level)`` over valid inputs.
    """
    col = bhat_column(model, j_spin, depth)
    lvl = model.level
    partial = np.zeros(lvl)
    out = []
    for e in col.entries:
        partial = partial + np.real(np.diag(e.matrix.conj().T @ e.matrix))[:lvl]
        out.append(1 - partial)
    return np.array(out)
