"""Truncated Fock space, ladder operators and block-operator algebra.

All operators are dense complex matrices on the span of |0>, ..., |M-1>.
Truncation corrupts the top of the ladder, so every operator carries a
validity region and comparisons are made on an interior window only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence, Union

import numpy as np

from .errors import BandTooLarge, NotHermitian, ShapeMismatch

__all__ = [
    "FockSpace",
    "FockOperator",
    "BlockOperator",
    "ValidityBand",
    "annihilation",
    "creation",
    "number",
    "identity",
    "diag_fn",
    "basis_state",
    "op_algebra",
    "interior_equal",
    "band_residual",
    "window_residual",
    "expm_series",
    "reference_exponential",
    "commutator",
]

DEFAULT_DIM = 64
DEFAULT_BAND = 2
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class FockSpace:
    """Span of the number states |0>, ..., |dim-1>."""

    dim: int = DEFAULT_DIM

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise ValueError(f"Fock space dimension must be an integer >= 2, got {self.dim}")


@dataclass(frozen=True)
class ValidityBand:
    """Number of trailing basis indices per component excluded from checks."""

    band: int = DEFAULT_BAND

    def __post_init__(self):
        if int(self.band) != self.band or self.band < 0:
            raise ValueError(f"band must be a non-negative integer, got {self.band}")


def _readonly(mat: np.ndarray) -> np.ndarray:
    mat = np.array(mat, dtype=complex)
    mat.setflags(write=False)
    return mat


class FockOperator:
    """A complex ``M x M`` matrix with a record of which rows are trustworthy.

    Rows ``valid_start <= m < valid_rows`` are meaningful; the rest are
    present but flagged as untrusted (clamped or truncated).  ``truncated``
    lists input states whose image was cut off by the finite ladder.
    """

    __array_ufunc__ = None

    def __init__(self, space: FockSpace, matrix, valid_rows: int | None = None,
                 valid_start: int = 0, truncated: Sequence[int] = ()):
        matrix = np.asarray(matrix)
        if matrix.shape != (space.dim, space.dim):
            raise ShapeMismatch(f"matrix shape {matrix.shape} does not match dim {space.dim}")
        self.space = space
        self.matrix = _readonly(matrix)
        self.valid_rows = space.dim if valid_rows is None else int(valid_rows)
        if not 0 <= self.valid_rows <= space.dim:
            raise ValueError("valid_rows out of range")
        self.valid_start = int(valid_start)
        self.truncated = tuple(sorted(set(int(k) for k in truncated)))

    @property
    def dim(self) -> int:
        return self.space.dim

    def __repr__(self):
        return (f"FockOperator(dim={self.dim}, valid=[{self.valid_start}, {self.valid_rows}))")

    def _check(self, other: "FockOperator"):
        if not isinstance(other, FockOperator):
            raise TypeError(f"expected FockOperator, got {type(other).__name__}")
        if other.space != self.space:
            raise ShapeMismatch(f"dims differ: {self.dim} vs {other.dim}")

    def _combine(self, other, matrix):
        return FockOperator(self.space, matrix,
                            min(self.valid_rows, other.valid_rows),
                            max(self.valid_start, other.valid_start))

    def __matmul__(self, other):
        if isinstance(other, np.ndarray):
            return self.matrix @ other
        self._check(other)
        return self._combine(other, self.matrix @ other.matrix)

    def __add__(self, other):
        self._check(other)
        return self._combine(other, self.matrix + other.matrix)

    def __sub__(self, other):
        self._check(other)
        return self._combine(other, self.matrix - other.matrix)

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, c):
        if isinstance(c, (FockOperator, BlockOperator)):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def scale(self, c) -> "FockOperator":
        return FockOperator(self.space, c * self.matrix, self.valid_rows, self.valid_start)

    @property
    def dag(self) -> "FockOperator":
        return FockOperator(self.space, self.matrix.conj().T, self.valid_rows, self.valid_start)

    def apply(self, k: int):
        """Image of the number state ``|k>`` and whether it was truncated."""
        return self.matrix[:, k].copy(), k in self.truncated

    def diagonal(self) -> np.ndarray:
        return np.diag(self.matrix).copy()


Operand = Union[FockOperator, "BlockOperator", np.ndarray, complex, float, int]


class BlockOperator:
    """A grid of rectangular blocks acting on a direct sum of components.

    The blocks are stored as one dense matrix in component-major order, so
    a 2x2 grid over one Fock space is the same as ``kron(sigma, op)``.
    """

    __array_ufunc__ = None

    def __init__(self, dense, row_dims: Sequence[int], col_dims: Sequence[int],
                 valid_band: int = 0):
        dense = np.asarray(dense)
        row_dims = tuple(int(d) for d in row_dims)
        col_dims = tuple(int(d) for d in col_dims)
        if any(d <= 0 for d in row_dims + col_dims):
            raise ShapeMismatch("component dimensions must be positive")
        if dense.shape != (sum(row_dims), sum(col_dims)):
            raise ShapeMismatch(
                f"dense shape {dense.shape} inconsistent with dims {row_dims} x {col_dims}")
        self.dense = _readonly(dense)
        self.row_dims = row_dims
        self.col_dims = col_dims
        self.valid_band = int(valid_band)

    @classmethod
    def from_grid(cls, grid, row_dims=None, col_dims=None, valid_band=None) -> "BlockOperator":
        """Assemble from a nested list of FockOperators, arrays or scalars.

        A scalar ``c`` in a diagonal-compatible slot stands for ``c`` times
        the identity; dimensions are inferred from the matrix entries when
        not given.
        """
        nr, nc = len(grid), len(grid[0])
        if any(len(row) != nc for row in grid):
            raise ShapeMismatch("ragged block grid")
        rd = list(row_dims) if row_dims is not None else [None] * nr
        cd = list(col_dims) if col_dims is not None else [None] * nc
        band = 0
        for i, row in enumerate(grid):
            for j, entry in enumerate(row):
                if isinstance(entry, FockOperator):
                    band = max(band, entry.dim - entry.valid_rows)
                    entry = entry.matrix
                if isinstance(entry, np.ndarray) and entry.ndim == 2:
                    for dims, idx, size in ((rd, i, entry.shape[0]), (cd, j, entry.shape[1])):
                        if dims[idx] is None:
                            dims[idx] = size
                        elif dims[idx] != size:
                            raise ShapeMismatch(f"block ({i},{j}) has shape {entry.shape}")
        if None in rd or None in cd:
            raise ShapeMismatch("cannot infer all component dimensions")
        blocks = []
        for i, row in enumerate(grid):
            brow = []
            for j, entry in enumerate(row):
                if isinstance(entry, FockOperator):
                    entry = entry.matrix
                if np.isscalar(entry):
                    if entry == 0:
                        entry = np.zeros((rd[i], cd[j]), dtype=complex)
                    elif rd[i] == cd[j]:
                        entry = entry * np.eye(rd[i], dtype=complex)
                    else:
                        raise ShapeMismatch(f"scalar in non-square slot ({i},{j})")
                brow.append(np.asarray(entry, dtype=complex))
            blocks.append(brow)
        return cls(np.block(blocks), rd, cd, band if valid_band is None else valid_band)

    @classmethod
    def diag(cls, entries, valid_band=None) -> "BlockOperator":
        n = len(entries)
        grid = [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)]
        return cls.from_grid(grid, valid_band=valid_band)

    @classmethod
    def kron(cls, small, op, valid_band=None) -> "BlockOperator":
        """``small (x) op`` for a constant matrix ``small`` and a Fock operator."""
        small = np.asarray(small)
        grid = [[small[i, j] * (op.matrix if isinstance(op, FockOperator) else op)
                 for j in range(small.shape[1])] for i in range(small.shape[0])]
        band = valid_band
        if band is None and isinstance(op, FockOperator):
            band = op.dim - op.valid_rows
        return cls.from_grid(grid, valid_band=band)

    @property
    def shape(self):
        return len(self.row_dims), len(self.col_dims)

    def _offsets(self, dims):
        return np.concatenate([[0], np.cumsum(dims)]).astype(int)

    def block(self, i: int, j: int) -> np.ndarray:
        r = self._offsets(self.row_dims)
        c = self._offsets(self.col_dims)
        return self.dense[r[i]:r[i + 1], c[j]:c[j + 1]]

    @property
    def blocks(self):
        return [[self.block(i, j) for j in range(len(self.col_dims))]
                for i in range(len(self.row_dims))]

    def __repr__(self):
        return f"BlockOperator(rows={self.row_dims}, cols={self.col_dims}, band={self.valid_band})"

    @staticmethod
    def _lift(other):
        if isinstance(other, FockOperator):
            return BlockOperator(other.matrix, [other.dim], [other.dim], other.dim - other.valid_rows)
        return other

    def __matmul__(self, other):
        other = self._lift(other)
        if isinstance(other, np.ndarray):
            return self.dense @ other
        if self.col_dims != other.row_dims:
            raise ShapeMismatch(f"cannot multiply {self.col_dims} by {other.row_dims}")
        return BlockOperator(self.dense @ other.dense, self.row_dims, other.col_dims,
                             max(self.valid_band, other.valid_band))

    def _same(self, other):
        other = self._lift(other)
        if not isinstance(other, BlockOperator):
            raise TypeError(f"expected BlockOperator, got {type(other).__name__}")
        if (self.row_dims, self.col_dims) != (other.row_dims, other.col_dims):
            raise ShapeMismatch("block dimensions differ")
        return other

    def __add__(self, other):
        other = self._same(other)
        return BlockOperator(self.dense + other.dense, self.row_dims, self.col_dims,
                             max(self.valid_band, other.valid_band))

    def __sub__(self, other):
        other = self._same(other)
        return BlockOperator(self.dense - other.dense, self.row_dims, self.col_dims,
                             max(self.valid_band, other.valid_band))

    def __neg__(self):
        return self.scale(-1)

    def __mul__(self, c):
        if isinstance(c, (FockOperator, BlockOperator)):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def scale(self, c) -> "BlockOperator":
        return BlockOperator(c * self.dense, self.row_dims, self.col_dims, self.valid_band)

    @property
    def dag(self) -> "BlockOperator":
        return BlockOperator(self.dense.conj().T, self.col_dims, self.row_dims, self.valid_band)


def annihilation(space: FockSpace) -> FockOperator:
    """Lowering operator, ``a|n> = sqrt(n)|n-1>``."""
    return FockOperator(space, np.diag(np.sqrt(np.arange(1, space.dim)), k=1))


def creation(space: FockSpace) -> FockOperator:
    """Raising operator; the image of the top state is cut off and flagged."""
    a = annihilation(space)
    return FockOperator(space, a.matrix.T, truncated=[space.dim - 1])


def number(space: FockSpace) -> FockOperator:
    return FockOperator(space, np.diag(np.arange(space.dim, dtype=float)))


def identity(space: FockSpace) -> FockOperator:
    return FockOperator(space, np.eye(space.dim))


def basis_state(space: FockSpace, k: int) -> np.ndarray:
    vec = np.zeros(space.dim, dtype=complex)
    vec[k] = 1.0
    return vec


def diag_fn(space: FockSpace, f: Callable[[np.ndarray], np.ndarray], shift: int = 0) -> FockOperator:
    """The operator ``f(N + shift)``, with undefined entries clamped to zero.

    ``f`` is called once on the float array of arguments.  Entries that come
    out non-finite (e.g. square roots of negative numbers) are set to 0 and
    the validity window ``[valid_start, valid_rows)`` is shrunk to the
    longest leading run of finite values.
    """
    args = np.arange(space.dim, dtype=float) + shift
    with np.errstate(all="ignore"):
        vals = np.asarray(f(args), dtype=complex)
    vals = np.broadcast_to(vals, args.shape).copy()
    ok = np.isfinite(vals) & (np.abs(vals.imag) <= 1e-300)
    vals[~ok] = 0.0
    vals = vals.real
    good = np.flatnonzero(ok)
    if good.size == 0:
        start, stop = 0, 0
    else:
        start = int(good[0])
        bad_after = np.flatnonzero(~ok[start:])
        stop = start + int(bad_after[0]) if bad_after.size else space.dim
    return FockOperator(space, np.diag(vals), valid_rows=stop, valid_start=start)


def commutator(x, y):
    return x @ y - y @ x


def op_algebra(lhs, rhs=None, kind: str = "multiply"):
    """Dispatch a binary or unary operation by name.

    ``kind`` is one of multiply, add, subtract, adjoint, scale.  For
    ``scale`` the right operand is the scalar; for ``adjoint`` it is ignored.
    """
    if kind == "multiply":
        return lhs @ rhs
    if kind == "add":
        return lhs + rhs
    if kind == "subtract":
        return lhs - rhs
    if kind == "adjoint":
        return lhs.dag
    if kind == "scale":
        return lhs.scale(rhs)
    raise ValueError(f"unknown operation {kind!r}")


def _as_blocks(x):
    if isinstance(x, BlockOperator):
        return x.dense, x.row_dims, x.col_dims
    if isinstance(x, FockOperator):
        return x.matrix, (x.dim,), (x.dim,)
    x = np.atleast_2d(np.asarray(x))
    return x, (x.shape[0],), (x.shape[1],)


def _window(dims, band, start):
    idx = []
    off = 0
    for d in dims:
        if band >= d:
            raise BandTooLarge(f"band {band} not smaller than component dimension {d}")
        idx.extend(range(off + min(start, d), off + d - band))
        off += d
    return np.asarray(idx, dtype=int)


def band_residual(lhs, rhs, band=DEFAULT_BAND, start: int = 0) -> float:
    """Max entry difference over rows/cols ``start <= k < dim - band`` per component."""
    if isinstance(band, ValidityBand):
        band = band.band
    a, ra, ca = _as_blocks(lhs)
    b, rb, cb = _as_blocks(rhs)
    if (ra, ca) != (rb, cb):
        raise ShapeMismatch(f"shapes differ: {ra}x{ca} vs {rb}x{cb}")
    rows = _window(ra, band, start)
    cols = _window(ca, band, start) if ca != (1,) or ra == (1,) else np.arange(1)
    if rows.size == 0 or cols.size == 0:
        return 0.0
    diff = (a - b)[np.ix_(rows, cols)]
    return float(np.max(np.abs(diff)))


def window_residual(lhs, rhs, row_windows, col_windows=None) -> float:
    """Max entry difference with an explicit ``(start, stop)`` window per component."""
    a, ra, ca = _as_blocks(lhs)
    b, rb, cb = _as_blocks(rhs)
    if (ra, ca) != (rb, cb):
        raise ShapeMismatch(f"shapes differ: {ra}x{ca} vs {rb}x{cb}")
    col_windows = row_windows if col_windows is None else col_windows

    def idx(dims, windows):
        if len(windows) != len(dims):
            raise ShapeMismatch("one window per component is required")
        off = np.concatenate([[0], np.cumsum(dims)]).astype(int)
        return np.concatenate([np.arange(o + max(lo, 0), o + min(hi, d))
                               for o, d, (lo, hi) in zip(off, dims, windows)]).astype(int)

    rows, cols = idx(ra, row_windows), idx(ca, col_windows)
    if rows.size == 0 or cols.size == 0:
        return 0.0
    return float(np.max(np.abs((a - b)[np.ix_(rows, cols)])))


def interior_equal(lhs, rhs, band=DEFAULT_BAND, tol: float = DEFAULT_TOL,
                   start: int = 0) -> tuple[float, bool]:
    """Compare two operators away from the truncation edge.

    Returns ``(residual, residual < tol)``.
    """
    res = band_residual(lhs, rhs, band, start)
    return res, bool(res < tol)


def expm_series(mat: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling and squaring of the Taylor series.

    Makes no diagonalizability assumption, which matters for the
    pseudo-Hermitian Hamiltonians.
    """
    mat = np.asarray(mat, dtype=complex)
    norm = np.linalg.norm(mat, 1)
    squarings = max(0, int(np.ceil(np.log2(norm / 0.25))) if norm > 0.25 else 0)
    x = mat / 2.0 ** squarings
    result = np.eye(mat.shape[0], dtype=complex)
    term = result.copy()
    for k in range(1, 40):
        term = term @ x / k
        result = result + term
        if np.max(np.abs(term)) < 1e-18 * max(1.0, np.max(np.abs(result))):
            break
    for _ in range(squarings):
        result = result @ result
    return result


def reference_exponential(H, t: float, hermitian: bool = True) -> BlockOperator:
    """``exp(-i t H)`` computed independently of any closed form."""
    H = BlockOperator._lift(H)
    if isinstance(H, np.ndarray):
        H = BlockOperator(H, [H.shape[0]], [H.shape[1]])
    if H.row_dims != H.col_dims:
        raise ShapeMismatch("Hamiltonian must be square with matching components")
    mat = H.dense
    if hermitian:
        if np.max(np.abs(mat - mat.conj().T), initial=0.0) > 1e-10:
            raise NotHermitian("operator is not Hermitian")
        herm = 0.5 * (mat + mat.conj().T)
        w, v = np.linalg.eigh(herm)
        out = (v * np.exp(-1j * t * w)) @ v.conj().T
    else:
        out = expm_series(-1j * t * mat)
    return BlockOperator(out, H.row_dims, H.col_dims, H.valid_band)
