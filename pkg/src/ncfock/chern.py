"""Projective-space projectors, the canonical connection, and the first Chern number.

The Veronese map in the chart ``U_0`` is ``z -> psi(z)`` with
``psi_j = sqrt(C(n, j)) z^j`` for ``j = 1..n``.  Pulling the canonical
connection of ``CP^n`` back along it multiplies the connection and the
curvature of ``CP^1`` by ``n``, so the first Chern number is ``n``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy.special import binom

from .errors import NotPseudoNormalized, ZeroVector
from .quadrature import QuadratureConfig, half_line_integral
from .veronese import signature_signs

__all__ = [
    "LocalPoint",
    "cp_projector",
    "chart_vector",
    "chart_projector",
    "cq_projector",
    "veronese_local",
    "connection_coefficient",
    "pullback_connection_coefficient",
    "curvature_density",
    "pullback_curvature_density",
    "chern_number",
]


class LocalPoint(NamedTuple):
    """A point of the chart ``U_0``; plain complex numbers are accepted too."""

    z: complex


def _z(point) -> complex:
    z = complex(point.z if isinstance(point, LocalPoint) else point)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError("chart coordinate must be finite")
    return z


def cp_projector(homogeneous, n: int | None = None) -> np.ndarray:
    """Rank-one projector onto the line through ``homogeneous`` in ``C^{n+1}``."""
    zeta = np.atleast_1d(np.asarray(homogeneous, dtype=complex))
    if n is not None and zeta.shape != (n + 1,):
        raise ValueError(f"expected {n + 1} homogeneous coordinates, got {zeta.shape}")
    norm2 = np.vdot(zeta, zeta).real
    if norm2 == 0:
        raise ZeroVector("the zero vector has no projective class")
    return np.outer(zeta, zeta.conj()) / norm2


def chart_vector(coords, chart: int) -> np.ndarray:
    """Homogeneous vector with a ``1`` in slot ``chart`` and ``coords`` elsewhere."""
    coords = np.atleast_1d(np.asarray(coords, dtype=complex))
    if not 0 <= chart <= len(coords):
        raise ValueError(f"chart index must lie in [0, {len(coords)}]")
    return np.insert(coords, chart, 1.0)


def chart_projector(coords, chart: int = 0) -> np.ndarray:
    """The projector written in the local coordinates of ``U_chart``."""
    return cp_projector(chart_vector(coords, chart))


def cq_projector(v, n: int | None = None, tol: float = 1e-10) -> np.ndarray:
    """``Q = v v^dagger J_n`` for ``v^dagger J_n v = 1``, with alternating ``J_n``."""
    v = np.atleast_1d(np.asarray(v, dtype=complex))
    n = len(v) - 1 if n is None else n
    if v.shape != (n + 1,):
        raise ValueError(f"expected a vector of length {n + 1}")
    signs = np.asarray(signature_signs(n), dtype=float)
    norm = np.sum(signs * np.abs(v) ** 2)
    if abs(norm - 1) > tol:
        raise NotPseudoNormalized(f"v^dagger J v = {norm:.6g}, not 1")
    return np.outer(v, v.conj() * signs)


def veronese_local(z, n: int) -> tuple[np.ndarray, np.ndarray]:
    """``psi(z)`` and its derivative ``dpsi/dz``, both of length ``n``."""
    z = _z(z)
    j = np.arange(1, n + 1)
    c = np.sqrt(binom(n, j))
    psi = c * z ** j
    dpsi = c * j * z ** (j - 1)
    return psi, dpsi


def connection_coefficient(z) -> complex:
    """The ``dz`` coefficient ``conj(z) / (1 + |z|^2)`` of the canonical connection."""
    z = _z(z)
    return z.conjugate() / (1 + abs(z) ** 2)


def pullback_connection_coefficient(z, n: int) -> complex:
    """``(1 + psi^dagger psi)^{-1} psi^dagger dpsi``, which should be ``n`` times the base value."""
    psi, dpsi = veronese_local(z, n)
    return complex(np.vdot(psi, dpsi) / (1 + np.vdot(psi, psi).real))


def curvature_density(z, n: int = 1) -> float:
    """``n / (1 + |z|^2)^2``, the curvature density against ``dx dy / pi``."""
    z = _z(z)
    return n / (1 + abs(z) ** 2) ** 2


def pullback_curvature_density(z, n: int) -> float:
    """Curvature of the pulled-back bundle computed from ``psi`` directly.

    Uses ``(|dpsi|^2 + sum_{i<j} |psi_i dpsi_j - psi_j dpsi_i|^2) / (1 + |psi|^2)^2``,
    which avoids the cancellation in ``|dpsi|^2 (1+|psi|^2) - |psi^dagger dpsi|^2``.
    """
    psi, dpsi = veronese_local(z, n)
    cross = np.outer(psi, dpsi) - np.outer(dpsi, psi)
    wedge = 0.5 * np.sum(np.abs(cross) ** 2)
    return float((np.vdot(dpsi, dpsi).real + wedge) / (1 + np.vdot(psi, psi).real) ** 2)


def chern_number(n: int, q: QuadratureConfig | None = None, pullback: bool = True) -> float:
    """``(1/2 pi i) int F_n`` over the plane, reduced to ``int_0^inf f(u) du`` with ``u = |z|^2``.

    With ``pullback`` the integrand is the curvature of the pulled-back
    bundle evaluated from ``psi``; otherwise the closed form ``n/(1+u)^2``.
    """
    if n < 1:
        raise ValueError("degree must be positive")
    if pullback:
        def f(u):
            return pullback_curvature_density(math.sqrt(u), n)
    else:
        def f(u):
            return n / (1 + u) ** 2
    return half_line_integral(f, q)
